"""Holomorphic curves as polynomial vectors, their Wronskian wedges, and
group-generated integral curves in flag varieties."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import matrices as M
from .exact import BiPoly, GaussianRational
from .lie import ChevalleyData


@dataclass(frozen=True)
class PolyVector:
    """A vector of polynomials in ``z``; the local lift of a curve."""

    entries: Tuple[BiPoly, ...]

    def __post_init__(self):
        ents = tuple(e if isinstance(e, BiPoly) else BiPoly.const(e) for e in self.entries)
        if not ents:
            raise ValueError("empty curve")
        if any(e.deg_w > 0 for e in ents):
            raise ValueError("curve entries must be polynomials in z alone")
        object.__setattr__(self, "entries", ents)

    @property
    def ambient_dim(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def derive(self) -> "PolyVector":
        return PolyVector(tuple(e.derive("z") for e in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def scale(self, u) -> "PolyVector":
        return PolyVector(tuple(e * u for e in self.entries))

    @property
    def degree(self) -> int:
        return max(e.deg_z for e in self.entries)


def poly_z(coeffs: Sequence) -> BiPoly:
    """Polynomial in ``z`` from ascending coefficients."""
    return BiPoly({(k, 0): c for k, c in enumerate(coeffs) if GaussianRational.coerce(c)})


# -- determinants -------------------------------------------------------------

def all_minors(rows: Sequence[Sequence[BiPoly]], cols: Optional[Sequence[int]] = None) -> Dict[Tuple[int, ...], BiPoly]:
    """All maximal minors of a k x m matrix, keyed by the chosen column tuple.

    Built row by row: the minor on columns ``S`` using rows ``0..r`` is a
    Laplace expansion along row ``r`` over minors of size ``r``.
    """
    k = len(rows)
    m = len(rows[0])
    cols = list(range(m)) if cols is None else list(cols)
    level: Dict[Tuple[int, ...], BiPoly] = {(): BiPoly.const(1)}
    for r in range(k):
        nxt = {}
        row = rows[r]
        for S in combinations(cols, r + 1):
            acc = BiPoly()
            for p, c in enumerate(S):
                x = row[c]
                if x.is_zero():
                    continue
                sub = level.get(S[:p] + S[p + 1:])
                if sub is None or sub.is_zero():
                    continue
                term = x * sub
                acc = acc + term if (r + p) % 2 == 0 else acc - term
            nxt[S] = acc
        level = nxt
    return level


def wronskian_wedge(v: PolyVector, k: int) -> PolyVector:
    """Plücker coordinates of the osculating k-plane: k x k minors of the
    matrix with rows ``v, v', ..., v^(k-1)``, in lexicographic column order."""
    if not 1 <= k <= v.ambient_dim:
        raise ValueError(f"wedge order {k} out of range 1..{v.ambient_dim}")
    rows = [v]
    for _ in range(k - 1):
        rows.append(rows[-1].derive())
    minors = all_minors([list(r) for r in rows])
    return PolyVector(tuple(minors[S] for S in combinations(range(v.ambient_dim), k)))


def nondegeneracy_check(v: PolyVector) -> bool:
    return not wronskian_wedge(v, v.ambient_dim)[0].is_zero()


def _bilinear(x: PolyVector, y: PolyVector, Q: M.Matrix) -> BiPoly:
    acc = BiPoly()
    for i, row in enumerate(Q):
        if x[i].is_zero():
            continue
        for j, q in enumerate(row):
            if q and not y[j].is_zero():
                acc = acc + x[i] * y[j] * q
    return acc


def gram_isotropy_check(v: PolyVector, Q: M.Matrix, m: int) -> bool:
    """True iff ``Q(v^(i), v^(j)) == 0`` for all ``0 <= i, j < m``."""
    if len(Q) != v.ambient_dim:
        raise ValueError("quadratic form does not match the curve dimension")
    ders = [v]
    for _ in range(m - 1):
        ders.append(ders[-1].derive())
    for i in range(m):
        for j in range(i, m):
            if not _bilinear(ders[i], ders[j], Q).is_zero():
                return False
    return True


def random_curve(ambient_dim: int, degree: int, seed: int, max_tries: int = 50) -> PolyVector:
    """Deterministic nondegenerate curve with small integer coefficients."""
    if degree < ambient_dim - 1:
        raise ValueError(f"degree {degree} too small for a nondegenerate curve in dimension {ambient_dim}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        v = PolyVector(tuple(poly_z([rng.randint(-3, 3) for _ in range(degree + 1)]) for _ in range(ambient_dim)))
        if not v.is_zero() and nondegeneracy_check(v):
            return v
    raise RuntimeError("retry budget exhausted drawing a nondegenerate curve")


# -- group curves -------------------------------------------------------------

def exp_nilpotent(m: M.Matrix, var: str = "z") -> M.Matrix:
    """``exp(var * m)`` as a matrix of polynomials; ``m`` must be nilpotent."""
    n = len(m)
    k = M.nilpotency_index(m)
    if not k:
        raise ValueError("matrix is not nilpotent")
    t = BiPoly.z() if var == "z" else BiPoly.w()
    out = M.to_poly(M.identity(n))
    power = M.identity(n)
    for j in range(1, k):
        power = M.matmul(power, m)
        coef = Fraction(1, math.factorial(j))
        tj = t ** j
        out = [[o + tj * (x * coef) if x else o for o, x in zip(ro, rp)] for ro, rp in zip(out, power)]
    return out


def exp_const(m: M.Matrix, t) -> M.Matrix:
    """``exp(t * m)`` for nilpotent ``m`` and an exact scalar ``t``."""
    n = len(m)
    k = M.nilpotency_index(m)
    if not k:
        raise ValueError("matrix is not nilpotent")
    t = GaussianRational.coerce(t)
    out = M.identity(n)
    power = M.identity(n)
    for j in range(1, k):
        power = M.matmul(power, M.scale(m, t))
        out = M.add(out, M.scale(power, Fraction(1, math.factorial(j))))
    return out


# A translation is a word in exp(t X_i), exp(s Y_i); it can be replayed in any
# representation by exponentiating the images of the generators there.
Translation = Tuple[Tuple[str, int, Fraction], ...]


def random_translation(rank: int, seed: int) -> Translation:
    rng = random.Random(10007 * seed + 17)
    word = []
    for i in range(rank):
        for kind in ("X", "Y"):
            num = rng.choice([-2, -1, 1, 2])
            den = rng.choice([1, 2, 3])
            word.append((kind, i, Fraction(num, den)))
    rng.shuffle(word)
    return tuple(word)


def translation_matrix(word: Translation, raising: Sequence[M.Matrix], lowering: Sequence[M.Matrix]) -> M.Matrix:
    n = len(raising[0])
    g = M.identity(n)
    for kind, i, t in word:
        gen = raising[i] if kind == "X" else lowering[i]
        g = M.matmul(g, exp_const(gen, t))
    return g


def group_curve(gens: ChevalleyData, translation: Translation = ()) -> M.Matrix:
    """``g(z) = g0 * exp(z f)`` with ``f`` the principal lowering nilpotent."""
    from .lie import principal_lowering

    g = exp_nilpotent(principal_lowering(gens))
    if translation:
        g0 = translation_matrix(translation, gens.raising, gens.lowering)
        g = M.to_poly(M.matmul(M.to_poly(g0), g))
    return g


def column(g: M.Matrix, j: int) -> PolyVector:
    return PolyVector(tuple(row[j] for row in g))


def flag_plucker(g: M.Matrix, cols: Sequence[int]) -> PolyVector:
    """Plücker coordinates of ``g`` applied to the wedge of the given basis
    columns: all maximal minors of the selected columns, rows lexicographic."""
    k = len(cols)
    rows_t = [[g[r][c] for r in range(len(g))] for c in cols]
    minors = all_minors(rows_t)
    return PolyVector(tuple(minors[S] for S in combinations(range(len(g)), k)))


def wedge_gram(gram: M.Matrix, k: int) -> M.Matrix:
    """Induced Gram matrix on the k-th exterior power of a diagonal Gram
    matrix, in the lexicographic order used by :func:`flag_plucker`."""
    d = len(gram)
    if any(gram[i][j] for i in range(d) for j in range(d) if i != j):
        raise ValueError("only diagonal Gram matrices are supported")
    weights = []
    for S in combinations(range(d), k):
        w = M.ONE
        for i in S:
            w = w * gram[i][i]
        weights.append(w)
    out = M.zeros(len(weights))
    for i, w in enumerate(weights):
        out[i][i] = w
    return out


def proportional(a: PolyVector, b: PolyVector) -> bool:
    """``a`` and ``b`` span the same line over rational functions of ``z``."""
    if a.ambient_dim != b.ambient_dim:
        return False
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    p = next(i for i, x in enumerate(b) if not x.is_zero())
    if a[p].is_zero():
        return False
    return all((a[i] * b[p] - a[p] * b[i]).is_zero() for i in range(a.ambient_dim))


def osculation_check(g: M.Matrix, k: int, flag: Optional[Sequence[int]] = None) -> bool:
    """Does the osculating k-plane of ``g(z) e_{flag[0]}`` equal ``g(z)`` applied
    to the k-th space of the base flag?"""
    flag = list(range(len(g))) if flag is None else list(flag)
    v = column(g, flag[0])
    return proportional(wronskian_wedge(v, k), flag_plucker(g, flag[:k]))


# -- curve-spec JSON ----------------------------------------------------------

def curve_to_spec(v: PolyVector) -> dict:
    return {
        "ambient_dim": v.ambient_dim,
        "entries": [[[k[0], str(c)] for k, c in e.items()] for e in v],
    }


def curve_from_spec(spec) -> PolyVector:
    """Parse ``{"ambient_dim": n, "entries": [[[deg, "coeff"], ...], ...]}``."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or "entries" not in spec or "ambient_dim" not in spec:
        raise ValueError("curve spec needs 'ambient_dim' and 'entries'")
    entries = spec["entries"]
    if len(entries) != spec["ambient_dim"]:
        raise ValueError("ambient_dim does not match the number of entries")
    polys = []
    for e in entries:
        terms = {}
        for item in e:
            deg, coef = item
            if not isinstance(deg, int) or deg < 0:
                raise ValueError(f"bad degree {deg!r}")
            c = GaussianRational.coerce(coef if isinstance(coef, str) else Fraction(coef))
            terms[(deg, 0)] = terms.get((deg, 0), GaussianRational(0)) + c
        polys.append(BiPoly(terms))
    v = PolyVector(tuple(polys))
    if v.is_zero():
        raise ValueError("curve is identically zero")
    return v
