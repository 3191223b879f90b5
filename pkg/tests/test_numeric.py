import math

import pytest

from localplucker.exact import BiPoly, GaussianRational, RatFn
from localplucker.kahler import metric_coeff
from localplucker.numeric import (
    REL_TOL,
    fd_metric,
    numeric_crosscheck,
    ramification_floor,
    relative_residual,
    sample_points,
)

z, w = BiPoly.z(), BiPoly.w()
one = BiPoly.const(1)


def test_closed_form_a1():
    h = one + z * w
    lam = metric_coeff(h)
    assert lam.evaluate_exact(1, 1) == GaussianRational(1, 0) / 4
    assert relative_residual(0.25, fd_metric(h, GaussianRational(1))) <= REL_TOL


def test_closed_form_off_axis():
    h = one + z * w
    x = GaussianRational(1, 2) / 3
    exact = 1 / (1 + abs(complex(x)) ** 2) ** 2
    assert math.isclose(fd_metric(h, x), exact, rel_tol=1e-7)


def test_conic_wedge_ten_points():
    h = one + z * w * 4 + z ** 2 * w ** 2
    cc = numeric_crosscheck(h, metric_coeff(h), sample_points(10, 0))
    assert len(cc.points) == 10 and cc.passed


def test_factor_two_corruption_flagged():
    h = one + z * w * 4 + z ** 2 * w ** 2
    cc = numeric_crosscheck(h, metric_coeff(h) * 2, sample_points(10, 0))
    assert not cc.passed
    assert abs(cc.max_rel_residual - 1) < 1e-3


def test_sample_points_deterministic_and_in_disc():
    a, b = sample_points(10, 5), sample_points(10, 5)
    assert a == b
    assert all(abs(complex(p)) < 0.91 for p in a)


def test_resamples_at_ramification():
    # lambda vanishes at z = 0 for h = 1 + z^2 w^2
    h = one + z ** 2 * w ** 2
    lam = metric_coeff(h)
    cc = numeric_crosscheck(h, lam, [GaussianRational(0)])
    assert cc.points[0] != GaussianRational(0) and cc.passed


def test_all_points_degenerate():
    h = one + z * w
    with pytest.raises(ValueError, match="degenerate"):
        numeric_crosscheck(h, RatFn(one, one - z), [GaussianRational(1)], max_resample=0)


def test_points_near_ramification_are_resampled():
    # this curve's second metric coefficient nearly vanishes at one of the
    # seeded points (|lambda| ~ 4e-4 against a median ~ 1)
    from localplucker.scenario import ScenarioConfig, build_bundle

    b = build_bundle(ScenarioConfig("A", 2, "random", seed=2))
    h, lam = b.h["wedge2"], b.phi("wedge2")
    points = sample_points(10, 2)
    floor = ramification_floor(h, lam, points)
    assert 1e-3 < floor < 1e-1
    cc = numeric_crosscheck(h, lam, points, seed=2)
    assert len(cc.points) == 10 and cc.passed
    assert min(abs(v) for v in cc.exact) >= floor
