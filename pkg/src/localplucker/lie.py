"""Root data and Chevalley generators for sl(n+1), so(2n+1) and so(2n).

Basis conventions for the orthogonal families: ``e_1..e_n`` occupy indices
``0..n-1`` and ``f_1..f_n`` indices ``n..2n-1`` with ``Q(e_i, f_i) = 1``; type B
appends one vector ``u`` at index ``2n`` with ``Q(u, u) = 2``.  The Hermitian
form invariant under the compact real form is then ``diag(1, ..., 1, 2)`` in
type B and the identity otherwise; lowering generators are the adjoints of
the raising ones with respect to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from . import matrices as M
from .exact import GaussianRational

MIN_RANK = {"A": 1, "B": 2, "D": 3}


def _check_rank(family: str, rank: int) -> None:
    if family not in MIN_RANK:
        raise ValueError(f"unsupported family {family!r}; expected one of A, B, D")
    if not isinstance(rank, int) or rank < MIN_RANK[family]:
        raise ValueError(f"unsupported rank {rank} for type {family} (minimum {MIN_RANK[family]})")


def cartan_matrix(family: str, rank: int) -> List[List[int]]:
    """Cartan matrix with ``C[i][j] = <alpha_i, alpha_j^vee>`` (0-based rows).

    For type B the long-short pair sits in row ``n-2``: ``C[n-2][n-1] = -2``.
    """
    _check_rank(family, rank)
    n = rank
    c = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]
    if family == "B":
        c[n - 2][n - 1] = -2
    elif family == "D":
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1
    return c


def defining_dim(family: str, rank: int) -> int:
    return {"A": rank + 1, "B": 2 * rank + 1, "D": 2 * rank}[family]


@dataclass(frozen=True)
class RootData:
    family: str
    rank: int
    cartan: List[List[int]] = field(compare=False)
    dim_V: int

    @classmethod
    def of(cls, family: str, rank: int) -> "RootData":
        return cls(family, rank, cartan_matrix(family, rank), defining_dim(family, rank))


@dataclass
class ChevalleyData:
    root: RootData
    raising: List[M.Matrix]
    lowering: List[M.Matrix]
    cartan_h: List[M.Matrix]
    Q: Optional[M.Matrix]
    # diagonal elements dual to the coordinate weights L_i
    weight_basis: List[M.Matrix]
    hermitian: M.Matrix = None

    @property
    def dim(self) -> int:
        return self.root.dim_V


def quadratic_form(family: str, rank: int) -> Optional[M.Matrix]:
    if family == "A":
        return None
    n = rank
    q = M.zeros(defining_dim(family, rank))
    for i in range(n):
        q[i][n + i] = q[n + i][i] = M.ONE
    if family == "B":
        q[2 * n][2 * n] = GaussianRational(2)
    return q


def hermitian_form(family: str, rank: int) -> M.Matrix:
    """Diagonal Gram matrix of the compact-form invariant inner product on V."""
    h = M.identity(defining_dim(family, rank))
    if family == "B":
        h[2 * rank][2 * rank] = GaussianRational(2)
    return h


def adjoint(x: M.Matrix, gram: M.Matrix) -> M.Matrix:
    """``G^-1 x^H G`` for a diagonal Gram matrix ``G``."""
    d = len(x)
    return [[x[j][i].conjugate() * gram[j][j] / gram[i][i] for j in range(d)] for i in range(d)]


def _generators(family: str, n: int):
    d = defining_dim(family, n)
    E = lambda i, j, c=1: M.unit(d, i, j, c)
    gram = hermitian_form(family, n)
    if family == "A":
        raising = [E(i, i + 1) for i in range(n)]
    else:
        raising = [M.sub(E(i, i + 1), E(n + i + 1, n + i)) for i in range(n - 1)]
        if family == "D":
            raising.append(M.sub(E(n - 2, 2 * n - 1), E(n - 1, 2 * n - 2)))
        else:
            # u -> 2 e_n, f_n -> -u
            raising.append(M.sub(E(n - 1, 2 * n, 2), E(2 * n, 2 * n - 1)))
    lowering = [adjoint(x, gram) for x in raising]
    return raising, lowering


def _weight_basis(family: str, n: int) -> List[M.Matrix]:
    d = defining_dim(family, n)
    if family == "A":
        return [M.unit(d, i, i) for i in range(n + 1)]
    return [M.sub(M.unit(d, i, i), M.unit(d, n + i, n + i)) for i in range(n)]


def in_so(x: M.Matrix, Q: M.Matrix) -> bool:
    """``x^T Q + Q x == 0``."""
    return M.is_zero(M.add(M.matmul(M.transpose(x), Q), M.matmul(Q, x)))


def verify_chevalley(data: ChevalleyData) -> List[str]:
    """Return a list of violated relations (empty when all hold)."""
    errs = []
    C = data.root.cartan
    X, Y, H = data.raising, data.lowering, data.cartan_h
    n = data.root.rank
    for i in range(n):
        for j in range(n):
            if not M.equal(M.bracket(H[i], X[j]), M.scale(X[j], C[j][i])):
                errs.append(f"[H_{i+1}, X_{j+1}] != C_{j+1}{i+1} X_{j+1}")
            if not M.equal(M.bracket(H[i], Y[j]), M.scale(Y[j], -C[j][i])):
                errs.append(f"[H_{i+1}, Y_{j+1}] != -C_{j+1}{i+1} Y_{j+1}")
            expected = H[i] if i == j else M.zeros(data.dim)
            if not M.equal(M.bracket(X[i], Y[j]), expected):
                errs.append(f"[X_{i+1}, Y_{j+1}] != delta H")
        # Y_i is a positive multiple of the adjoint of X_i
        xt, y = adjoint(X[i], data.hermitian), Y[i]
        ratio = None
        for r1, r2 in zip(xt, y):
            for a, b in zip(r1, r2):
                if a or b:
                    if not a or not b:
                        ratio = -1
                        break
                    q = b / a
                    ratio = q if ratio is None else (ratio if ratio == q else -1)
        if ratio is None or ratio == -1 or ratio.im or ratio.re <= 0:
            errs.append(f"Y_{i+1} is not a positive multiple of X_{i+1}^*")
    if data.Q is not None:
        for name, group in (("X", X), ("Y", Y), ("H", H)):
            for i, g in enumerate(group):
                if not in_so(g, data.Q):
                    errs.append(f"{name}_{i+1} not in so(Q)")
    return errs


def chevalley_generators(root: RootData) -> ChevalleyData:
    """Build and self-check the Chevalley generators of ``root``.

    ``[H_i, X_j] = C[j][i] X_j``, ``[X_i, Y_j] = delta_ij H_i``; raises
    ``RuntimeError`` if any relation fails.
    """
    _check_rank(root.family, root.rank)
    X, Y = _generators(root.family, root.rank)
    H = [M.bracket(x, y) for x, y in zip(X, Y)]
    data = ChevalleyData(
        root=root,
        raising=X,
        lowering=Y,
        cartan_h=H,
        Q=quadratic_form(root.family, root.rank),
        weight_basis=_weight_basis(root.family, root.rank),
        hermitian=hermitian_form(root.family, root.rank),
    )
    errs = verify_chevalley(data)
    if errs:
        raise RuntimeError("Chevalley relations failed: " + "; ".join(errs))
    return data


def principal_nilpotent(gens: ChevalleyData) -> M.Matrix:
    """``e = sum_i X_i``."""
    e = M.zeros(gens.dim)
    for x in gens.raising:
        e = M.add(e, x)
    return e


def principal_lowering(gens: ChevalleyData) -> M.Matrix:
    """``f = sum_i Y_i``; its orbit through the base flag is an integral curve."""
    f = M.zeros(gens.dim)
    for y in gens.lowering:
        f = M.add(f, y)
    return f


def defining_weights(gens: ChevalleyData) -> List[List[GaussianRational]]:
    """L-coordinates of every defining basis vector (diagonal action check).

    Raises ``ValueError`` if some weight-basis element is not diagonal.
    """
    d = gens.dim
    out = []
    for k in range(d):
        coords = []
        for h in gens.weight_basis:
            col = [h[r][k] for r in range(d)]
            if any(col[r] for r in range(d) if r != k):
                raise ValueError("weight basis element is not diagonal")
            coords.append(col[k])
        out.append(coords)
    return out
