"""Finite-difference oracle for metric coefficients.

The exact engine claims ``phi = d_z d_w log h``.  On the real locus
``w = conj(z)`` this equals ``(1/4) Laplacian log h``, which we estimate with a
five-point central stencil in the real coordinates of ``z``.  ``h`` is
evaluated exactly at rational sample points so that the only error left is
the stencil's truncation; the log-ratios are summed inside one ``log1p``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .exact import BiPoly, GaussianRational, RatFn

STEP = Fraction(1, 10_000)
REL_TOL = 1e-4
ABS_FLOOR = 1e-8
# sample points where |lambda| falls below this are resampled (ramification)
NEAR_ZERO = 1e-6
# ... or below this fraction of the median |lambda| over the requested points:
# the stencil error is absolute, so relative error blows up near a zero of lambda
NEAR_ZERO_FRACTION = 1e-2


def fd_metric(h: BiPoly, z0: GaussianRational, step: Fraction = STEP) -> float:
    """``(1/4) (d_xx + d_yy) log h`` at ``z0`` by central differences."""
    def val(z: GaussianRational) -> Fraction:
        v = h.evaluate_exact(z, z.conjugate())
        if v.im:
            raise ValueError("norm squared is not real on the real locus")
        return v.re

    h0 = val(z0)
    if h0 <= 0:
        raise ValueError("norm squared is not positive at the sample point")
    prod = Fraction(1)
    for dz in (GaussianRational(step), GaussianRational(-step), GaussianRational(0, step), GaussianRational(0, -step)):
        hk = val(z0 + dz)
        if hk <= 0:
            raise ValueError("norm squared is not positive near the sample point")
        prod *= hk / h0
    return math.log1p(float(prod - 1)) / (4 * float(step) ** 2)


def relative_residual(exact: float, approx: float) -> float:
    """``|exact - approx|`` relative to the oracle value ``approx``; the floor
    makes ``<= REL_TOL`` mean ``|diff| <= max(REL_TOL |approx|, ABS_FLOOR)``."""
    return abs(exact - approx) / max(abs(approx), ABS_FLOOR / REL_TOL)


def _rational(x: float, bits: int = 16) -> Fraction:
    return Fraction(round(x * (1 << bits)), 1 << bits)


def sample_points(count: int, seed: int, radius: float = 0.9) -> List[GaussianRational]:
    """Deterministic rational points in the disc of the given radius."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = radius * math.sqrt(rng.random())
        t = 2 * math.pi * rng.random()
        out.append(GaussianRational(_rational(r * math.cos(t)), _rational(r * math.sin(t))))
    return out


@dataclass
class CrossCheck:
    points: List[GaussianRational] = field(default_factory=list)
    exact: List[float] = field(default_factory=list)
    approx: List[float] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)

    @property
    def max_rel_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return bool(self.residuals) and self.max_rel_residual <= REL_TOL


def _exact_value(h: BiPoly, lam: RatFn, z0: GaussianRational) -> Optional[float]:
    try:
        v = lam.evaluate_exact(z0, z0.conjugate())
        hv = h.evaluate_exact(z0, z0.conjugate())
    except ZeroDivisionError:
        return None
    return float(v.re) if hv.re > 0 else None


def _usable(h: BiPoly, lam: RatFn, z0: GaussianRational, floor: float) -> Optional[float]:
    exact = _exact_value(h, lam, z0)
    if exact is None or (abs(exact) < floor and not lam.is_zero()):
        return None
    return exact


def ramification_floor(h: BiPoly, lam: RatFn, points: Sequence[GaussianRational]) -> float:
    """Threshold on ``|lam|`` below which a point counts as near a ramification point."""
    values = sorted(abs(v) for v in (_exact_value(h, lam, p) for p in points) if v is not None)
    if not values:
        return NEAR_ZERO
    return max(NEAR_ZERO, NEAR_ZERO_FRACTION * values[len(values) // 2])


def numeric_crosscheck(h: BiPoly, lam: RatFn, points: Sequence[GaussianRational],
                       seed: int = 0, max_resample: int = 20) -> CrossCheck:
    """Compare ``lam`` with the finite-difference metric of ``h`` at each point.

    Points where ``h`` or ``lam`` degenerate, or where ``lam`` is close to a
    ramification zero, are replaced by fresh draws; raises ``ValueError`` if
    no usable point can be found.
    """
    out = CrossCheck()
    rng = random.Random(seed ^ 0x5EED)
    floor = ramification_floor(h, lam, points)
    for z0 in points:
        exact = _usable(h, lam, z0, floor)
        tries = 0
        while exact is None and tries < max_resample:
            tries += 1
            z0 = sample_points(1, rng.randrange(1 << 30))[0]
            exact = _usable(h, lam, z0, floor)
        if exact is None:
            continue
        approx = fd_metric(h, z0)
        out.points.append(z0)
        out.exact.append(exact)
        out.approx.append(approx)
        out.residuals.append(relative_residual(exact, approx))
    if not out.points:
        raise ValueError("all sample points are degenerate")
    return out
