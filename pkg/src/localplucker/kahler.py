"""Metric and curvature coefficients of pulled-back Fubini-Study forms.

Conventions: ``h`` is the squared norm of a lift, the metric coefficient is
``phi = d_z d_w log h`` and the curvature coefficient is
``theta = -d_z d_w log phi``.  Factors of ``2 pi`` and ``i/2`` are dropped
throughout; the Cartan identities are linear and homogeneous so they cancel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .curves import PolyVector
from .exact import BiPoly, GaussianRational, RatFn, ddbar_log, ratfn_residual


def norm_squared(c: PolyVector, gram=None) -> BiPoly:
    """``h(z, w) = sum_ij G_ij c_i(z) conj(c_j)(w)``, identity Gram by default."""
    if c.is_zero():
        raise ValueError("norm of the zero curve")
    conj = [e.conj() for e in c]
    h = BiPoly()
    if gram is None:
        for a, b in zip(c, conj):
            if not a.is_zero():
                h = h + a * b
    else:
        n = c.ambient_dim
        if len(gram) != n:
            raise ValueError("Gram matrix does not match the curve dimension")
        for i in range(n):
            for j in range(n):
                g = GaussianRational.coerce(gram[i][j])
                if g != GaussianRational.coerce(gram[j][i]).conjugate():
                    raise ValueError("Gram matrix is not Hermitian")
                if g and not c[i].is_zero() and not c[j].is_zero():
                    h = h + c[i] * conj[j] * g
    if h.is_zero():
        raise ValueError("norm squared vanishes identically")
    return h


def metric_coeff(h: BiPoly) -> RatFn:
    """``d_z d_w log h``; unchanged when ``h`` is multiplied by ``|u(z)|^2``."""
    if h.is_zero():
        raise ValueError("log of zero function")
    return ddbar_log(h)


def curvature_coeff(lam: RatFn) -> RatFn:
    """``-d_z d_w log lam``."""
    if isinstance(lam, BiPoly):
        lam = RatFn(lam)
    if lam.is_zero():
        raise ValueError("degenerate metric")
    return -ddbar_log(lam)


@dataclass
class FormVector:
    """Coefficients indexed by fundamental weight, with display labels."""

    entries: List[RatFn]
    labels: List[str]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i) -> RatFn:
        return self.entries[i]

    def permuted(self, perm: Sequence[int]) -> "FormVector":
        return FormVector([self.entries[p] for p in perm], [self.labels[p] for p in perm])


@dataclass
class RowCheck:
    row: int
    lhs: str
    rhs: str
    passed: bool
    residual: Optional[BiPoly] = None

    def to_json(self) -> dict:
        out = {"row": self.row, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}
        if self.residual is not None:
            out["residual"] = self.residual.to_triples()
        return out


@dataclass
class CheckResult:
    rows: List[RowCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self) -> list:
        return [r.to_json() for r in self.rows]


def linear_combination_label(coeffs: Sequence[int], labels: Sequence[str]) -> str:
    parts = []
    for c, lab in zip(coeffs, labels):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        parts.append(f"{sign}{mag}{lab}")
    if not parts:
        return "0"
    s = " ".join(parts)
    return s[1:] if s.startswith("+") else s


def combine(coeffs: Sequence[int], forms: Sequence[RatFn]) -> RatFn:
    acc = RatFn(BiPoly())
    for c, f in zip(coeffs, forms):
        if c:
            acc = acc + f * c
    return acc


def check_cartan_identity(theta: FormVector, C: Sequence[Sequence[int]], phi: FormVector) -> CheckResult:
    """Certify ``theta_k = sum_j C[k][j] phi_j`` row by row, exactly."""
    n = len(C)
    if len(theta) != n or len(phi) != n or any(len(row) != n for row in C):
        raise ValueError(f"dimension mismatch: theta {len(theta)}, phi {len(phi)}, C {n}x?")
    result = CheckResult()
    for k in range(n):
        rhs = combine(C[k], phi.entries)
        res = ratfn_residual(theta[k], rhs)
        ok = res.is_zero()
        result.rows.append(RowCheck(
            row=k + 1,
            lhs=theta.labels[k],
            rhs=linear_combination_label(C[k], phi.labels),
            passed=ok,
            residual=None if ok else res,
        ))
    return result
