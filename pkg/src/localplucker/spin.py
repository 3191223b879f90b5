"""Clifford-module model of the spin and half-spin representations.

The module is the exterior algebra of ``W = <e_1..e_n>`` with basis vectors
indexed by subsets of ``{1..n}`` (stored as bitmasks, bit ``i-1`` for ``i``).
``e_i`` acts by exterior multiplication, ``f_i`` by contraction, and in type B
the extra vector ``u`` by the parity involution.  With these unit-normalized
actions the relations read ``gamma(x) gamma(y) + gamma(y) gamma(x) = Q(x, y)``,
which keeps every structure constant rational and the subset basis
orthonormal for the compact form.  In type B this needs ``Q(u, u) = 2`` so
that the parity involution squares to ``Q(u, u) / 2 = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import matrices as M
from .curves import PolyVector, Translation, exp_const
from .exact import BiPoly, GaussianRational
from .lie import ChevalleyData, in_so

HALF = Fraction(1, 2)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def mask_to_subset(mask: int) -> Tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def subset_to_mask(subset) -> int:
    m = 0
    for i in subset:
        m |= 1 << (i - 1)
    return m


@dataclass
class SpinVector:
    """Sparse vector over the subset basis."""

    n: int
    coeffs: Dict[int, GaussianRational] = field(default_factory=dict)

    @classmethod
    def basis(cls, n: int, subset) -> "SpinVector":
        return cls(n, {subset_to_mask(subset): GaussianRational(1)})

    @classmethod
    def from_dense(cls, n: int, dense: Sequence) -> "SpinVector":
        return cls(n, {k: GaussianRational.coerce(c) for k, c in enumerate(dense) if c})

    def dense(self) -> List[GaussianRational]:
        out = [GaussianRational(0)] * (1 << self.n)
        for k, c in self.coeffs.items():
            out[k] = c
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def parities(self) -> set:
        return {_popcount(k) % 2 for k, c in self.coeffs.items() if c}

    def subsets(self) -> Dict[Tuple[int, ...], GaussianRational]:
        return {mask_to_subset(k): c for k, c in self.coeffs.items() if c}


class SpinRep:
    """Spin representation of so(Q) for a type B or D Chevalley realization."""

    def __init__(self, gens: ChevalleyData):
        if gens.root.family not in ("B", "D"):
            raise ValueError("spin representations exist only for types B and D")
        self.gens = gens
        self.family = gens.root.family
        self.n = gens.root.rank
        self.dim = 1 << self.n
        self._gamma_basis = [self._gamma_of_index(a) for a in range(gens.dim)]
        self.raising = [self.rho(x) for x in gens.raising]
        self.lowering = [self.rho(y) for y in gens.lowering]
        self.cartan_h = [self.rho(h) for h in gens.cartan_h]
        self.weight_ops = [self.rho(h) for h in gens.weight_basis]

    # -- Clifford generators ----------------------------------------------
    def _wedge(self, i: int) -> M.Matrix:
        m = M.zeros(self.dim)
        low = (1 << i) - 1
        for s in range(self.dim):
            if not s >> i & 1:
                m[s | 1 << i][s] = GaussianRational(-1 if _popcount(s & low) % 2 else 1)
        return m

    def _contract(self, i: int) -> M.Matrix:
        m = M.zeros(self.dim)
        low = (1 << i) - 1
        for s in range(self.dim):
            if s >> i & 1:
                m[s ^ 1 << i][s] = GaussianRational(-1 if _popcount(s & low) % 2 else 1)
        return m

    def _parity(self) -> M.Matrix:
        m = M.zeros(self.dim)
        for s in range(self.dim):
            m[s][s] = GaussianRational(-1 if _popcount(s) % 2 else 1)
        return m

    def _gamma_of_index(self, a: int) -> M.Matrix:
        n = self.n
        if a < n:
            return self._wedge(a)
        if a < 2 * n:
            return self._contract(a - n)
        return self._parity()

    def dual_index(self, a: int) -> int:
        """Index of the basis vector proportional to the Q-dual of ``a``."""
        n = self.n
        if a < n:
            return a + n
        if a < 2 * n:
            return a - n
        return a

    def dual_scale(self, a: int) -> GaussianRational:
        return 1 / self.gens.Q[a][self.dual_index(a)]

    def gamma(self, vec: Sequence) -> M.Matrix:
        """Clifford action of a vector given by its coordinates in V."""
        out = M.zeros(self.dim)
        for a, c in enumerate(vec):
            c = GaussianRational.coerce(c)
            if c:
                out = M.add(out, M.scale(self._gamma_basis[a], c))
        return out

    # -- Lie algebra embedding ----------------------------------------------
    def rho(self, x: M.Matrix) -> M.Matrix:
        """Image of ``x`` in so(Q) as a quadratic Clifford element.

        ``rho(x) = 1/2 sum_a gamma(x b_a) gamma(b^a)``, made traceless.  It
        satisfies ``[rho(x), gamma(v)] = gamma(x v)``.
        """
        Q = self.gens.Q
        if not in_so(x, Q):
            raise ValueError("matrix does not preserve the quadratic form")
        out = M.zeros(self.dim)
        d = self.gens.dim
        for a in range(d):
            col = [x[r][a] for r in range(d)]
            if not any(col):
                continue
            left = M.scale(self.gamma(col), self.dual_scale(a))
            out = M.add(out, M.matmul(left, self._gamma_basis[self.dual_index(a)]))
        out = M.scale(out, HALF)
        tr = M.trace(out)
        if tr:
            out = M.sub(out, M.scale(M.identity(self.dim), tr / self.dim))
        return out

    def translation_matrix(self, word: Translation) -> M.Matrix:
        g = M.identity(self.dim)
        for kind, i, t in word:
            gen = self.raising[i] if kind == "X" else self.lowering[i]
            g = M.matmul(g, exp_const(gen, t))
        return g

    def principal_lowering(self) -> M.Matrix:
        f = M.zeros(self.dim)
        for y in self.lowering:
            f = M.add(f, y)
        return f

    def weight_of(self, v: SpinVector) -> Optional[List[GaussianRational]]:
        """L-coordinates of ``v`` if it is a simultaneous eigenvector."""
        dense = v.dense()
        nz = next((k for k, c in enumerate(dense) if c), None)
        if nz is None:
            return None
        coords = []
        for h in self.weight_ops:
            hv = M.matvec(h, dense)
            lam = hv[nz] / dense[nz]
            if any(a != lam * b for a, b in zip(hv, dense)):
                return None
            coords.append(lam)
        return coords

    def annihilated(self, v: SpinVector) -> bool:
        dense = v.dense()
        return all(not any(M.matvec(x, dense)) for x in self.raising)


def clifford_action(rep: SpinRep, label) -> M.Matrix:
    """Action of ``("e", i)``, ``("f", i)`` (1-based) or ``("u",)``."""
    kind = label[0]
    n = rep.n
    if kind == "e" and 1 <= label[1] <= n:
        return rep._gamma_basis[label[1] - 1]
    if kind == "f" and 1 <= label[1] <= n:
        return rep._gamma_basis[n + label[1] - 1]
    if kind == "u" and rep.family == "B":
        return rep._gamma_basis[2 * n]
    raise ValueError(f"no basis vector {label!r} in type {rep.family}{n}")


def spin_embedding(rep: SpinRep, x: M.Matrix) -> M.Matrix:
    return rep.rho(x)


def declared_weight(module: str, n: int) -> List[Fraction]:
    """Highest weight in L-coordinates.  ``S+`` carries ``omega_n``
    (all coordinates 1/2), ``S-`` carries ``omega_{n-1}`` (last one -1/2)."""
    if module in ("S+", "spin"):
        return [HALF] * n
    if module == "S-":
        return [HALF] * (n - 1) + [-HALF]
    raise ValueError(f"unknown spin module {module!r}")


def highest_weight_vector(module: str, rep: SpinRep) -> SpinVector:
    """Basis vector of the given module killed by every raising operator and
    carrying the declared weight; both properties are re-verified."""
    if module == "spin" and rep.family != "B":
        raise ValueError("the full spin module is irreducible only in type B")
    if module in ("S+", "S-") and rep.family != "D":
        raise ValueError("half-spin modules belong to type D")
    target = declared_weight(module, rep.n)
    for mask in range(rep.dim):
        v = SpinVector(rep.n, {mask: GaussianRational(1)})
        if rep.annihilated(v) and rep.weight_of(v) == target:
            return v
    raise RuntimeError(f"no highest weight vector of weight {target} for {module}")


def half_spin_parity(module: str, n: int) -> int:
    """Parity of subsets spanning the module: ``S+`` contains ``{1..n}``."""
    return n % 2 if module == "S+" else (n - 1) % 2


def spin_curve(nilpotent: M.Matrix, v: SpinVector, translation: Optional[M.Matrix] = None) -> PolyVector:
    """``g0 exp(z N) v`` as a polynomial vector over the subset basis."""
    dense = v.dense()
    z = BiPoly.z()
    entries = [BiPoly.const(c) if c else BiPoly() for c in dense]
    term = dense
    j = 0
    while True:
        j += 1
        term = M.matvec(nilpotent, term)
        if not any(term):
            break
        if j > len(dense):
            raise ValueError("operator is not nilpotent")
        zj = z ** j * Fraction(1, math.factorial(j))
        entries = [e + zj * c if c else e for e, c in zip(entries, term)]
    if translation is not None:
        entries = M.matvec([[BiPoly.const(x) if x else BiPoly() for x in row] for row in translation], entries)
        entries = [e if isinstance(e, BiPoly) else BiPoly.const(e) for e in entries]
    return PolyVector(tuple(entries))
