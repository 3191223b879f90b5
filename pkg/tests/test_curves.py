import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import zpolys
from localplucker import matrices as M
from localplucker.curves import (
    PolyVector,
    column,
    curve_from_spec,
    curve_to_spec,
    exp_nilpotent,
    flag_plucker,
    gram_isotropy_check,
    group_curve,
    nondegeneracy_check,
    osculation_check,
    poly_z,
    random_curve,
    random_translation,
    wronskian_wedge,
)
from localplucker.exact import BiPoly
from localplucker.lie import RootData, chevalley_generators

z = BiPoly.z()


def gens(family, rank):
    return chevalley_generators(RootData.of(family, rank))


def vec(*coeff_lists):
    return PolyVector(tuple(poly_z(c) for c in coeff_lists))


def is_identity(m):
    n = len(m)
    return all((m[i][j] - BiPoly.const(1 if i == j else 0)).is_zero() for i in range(n) for j in range(n))


def test_exp_of_unit():
    g = exp_nilpotent(M.unit(3, 0, 1))
    expected = M.to_poly(M.identity(3))
    expected[0][1] = z
    assert g == expected


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_exp_inverse_law(entries):
    m = M.zeros(4)
    it = iter(entries)
    for i in range(4):
        for j in range(i + 1, 4):
            m[i][j] = M.ONE * next(it)
    if M.is_zero(m):
        return
    prod = M.matmul(exp_nilpotent(m), exp_nilpotent(M.scale(m, -1)))
    assert is_identity(prod)


def test_exp_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        exp_nilpotent(M.identity(2))


def test_wronskian_examples():
    v = vec([1], [0, 1], [0, 0, 1])
    assert list(wronskian_wedge(v, 2)) == [poly_z([1]), poly_z([0, 2]), poly_z([0, 0, 1])]
    assert wronskian_wedge(v, 1) == v
    assert list(wronskian_wedge(v, 3)) == [BiPoly.const(2)]
    with pytest.raises(ValueError):
        wronskian_wedge(v, 4)
    with pytest.raises(ValueError):
        wronskian_wedge(v, 0)


def test_nondegeneracy_examples():
    assert nondegeneracy_check(vec([1], [0, 1], [0, 0, 1]))
    assert not nondegeneracy_check(vec([1], [0, 1], [0, 2]))
    v = vec([1], [0, 1], [0, 0, 0, 1])
    assert nondegeneracy_check(v)
    assert list(wronskian_wedge(v, 3)) == [poly_z([0, 6])]


@given(zpolys(2).filter(lambda u: not u.is_zero()), st.integers(1, 3))
def test_wedge_gauge_covariance(u, k):
    v = vec([1, 2], [0, 1, -1], [3, 0, 0, 1])
    lhs = wronskian_wedge(v.scale(u), k)
    rhs = wronskian_wedge(v, k).scale(u ** k)
    assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_principal_a_curve_top_wedge_constant(n):
    v = column(group_curve(gens("A", n)), 0)
    top = wronskian_wedge(v, n + 1)[0]
    assert top.is_constant() and not top.is_zero()


def test_random_curve_contract():
    a, b = random_curve(3, 2, 0), random_curve(3, 2, 0)
    assert a == b
    assert nondegeneracy_check(random_curve(3, 4, 1))
    with pytest.raises(ValueError):
        random_curve(4, 2, 5)
    for seed in range(5):
        v = random_curve(4, 5, seed)
        assert v.degree <= 5
        assert all(abs(c.re) <= 3 and not c.im for e in v for _, c in e.items())


def test_random_curve_budget():
    with pytest.raises(RuntimeError):
        random_curve(3, 2, 0, max_tries=0)


# -- isotropy and osculation ------------------------------------------------------

def test_isotropy_examples():
    g3 = gens("D", 3)
    v = column(group_curve(g3), 0)
    assert gram_isotropy_check(v, g3.Q, 2)
    # the osculating 3-plane contains e_3 + f_3 and is not isotropic
    assert not gram_isotropy_check(v, g3.Q, 3)
    assert gram_isotropy_check(v, g3.Q, 0)
    rng = random.Random(4)
    rv = PolyVector(tuple(poly_z([rng.randint(-3, 3) for _ in range(4)]) for _ in range(6)))
    assert not gram_isotropy_check(rv, g3.Q, 2)


@pytest.mark.parametrize("family,rank,top", [("A", 3, 4), ("D", 3, 2), ("D", 4, 3), ("B", 2, 2), ("B", 3, 3)])
def test_osculation_principal(family, rank, top):
    g = group_curve(gens(family, rank))
    for k in range(1, top + 1):
        assert osculation_check(g, k)


@pytest.mark.parametrize("family,rank,seed", [("D", 4, 1), ("B", 3, 2), ("A", 3, 3)])
def test_osculation_translated(family, rank, seed):
    data = gens(family, rank)
    g = group_curve(data, random_translation(rank, seed))
    top = {"A": rank + 1, "B": rank, "D": rank - 1}[family]
    assert all(osculation_check(g, k) for k in range(1, top + 1))
    if family != "A":
        assert gram_isotropy_check(column(g, 0), data.Q, top)


def test_osculation_b_extended_flag():
    g = group_curve(gens("B", 3))
    assert osculation_check(g, 4, [0, 1, 2, 6])


def test_osculation_d_middle_plane_is_not_in_flag():
    g = group_curve(gens("D", 3))
    assert not osculation_check(g, 3)
    assert not osculation_check(g, 3, [0, 1, 5])


def test_osculation_fails_on_generic_curve():
    rng = random.Random(11)
    g = [[poly_z([rng.randint(-2, 2) for _ in range(3)]) for _ in range(4)] for _ in range(4)]
    assert not all(osculation_check(g, k) for k in range(1, 4))


def test_flag_plucker_of_identity_columns():
    g = M.to_poly(M.identity(4))
    p = flag_plucker(g, [0, 1])
    assert [e.is_zero() for e in p] == [False] + [True] * 5


# -- curve files ----------------------------------------------------------------

def test_curve_spec_round_trip():
    v = PolyVector((poly_z([1, "1/2+1 i"]), poly_z([0, 0, -3])))
    spec = curve_to_spec(v)
    assert curve_from_spec(json.dumps(spec)) == v
    assert spec["entries"][0] == [[0, "1"], [1, "1/2+1 i"]]


@pytest.mark.parametrize("bad", [
    {"entries": [[[0, "1"]]]},
    {"ambient_dim": 2, "entries": [[[0, "1"]]]},
    {"ambient_dim": 1, "entries": [[[-1, "1"]]]},
    {"ambient_dim": 1, "entries": [[[0, "x"]]]},
    {"ambient_dim": 1, "entries": [[[0, "0"]]]},
    [1, 2],
])
def test_curve_spec_malformed(bad):
    with pytest.raises(ValueError):
        curve_from_spec(bad)
