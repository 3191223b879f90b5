from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from localplucker import matrices as M
from localplucker.exact import GaussianRational
from localplucker.kahler import norm_squared
from localplucker.lie import RootData, chevalley_generators, defining_weights
from localplucker.spin import (
    SpinRep,
    SpinVector,
    clifford_action,
    declared_weight,
    half_spin_parity,
    highest_weight_vector,
    spin_curve,
    spin_embedding,
)

HALF = Fraction(1, 2)
TYPES = [("B", 2), ("B", 3), ("B", 4), ("D", 3), ("D", 4)]
_cache = {}


def rep(family, rank):
    key = (family, rank)
    if key not in _cache:
        _cache[key] = SpinRep(chevalley_generators(RootData.of(family, rank)))
    return _cache[key]


def basis(n, *subset):
    return SpinVector.basis(n, subset).dense()


def test_clifford_examples():
    r = rep("D", 3)
    e1, f1 = clifford_action(r, ("e", 1)), clifford_action(r, ("f", 1))
    assert M.matvec(e1, basis(3)) == basis(3, 1)
    assert M.matvec(f1, basis(3, 1)) == basis(3)
    assert M.is_zero(M.matmul(e1, e1))
    with pytest.raises(ValueError):
        clifford_action(r, ("u",))
    with pytest.raises(ValueError):
        clifford_action(r, ("e", 4))


def test_wedge_sign():
    r = rep("D", 3)
    e1 = clifford_action(r, ("e", 1))
    # e_1 wedge e_2 = -(e_2 wedge e_1)
    assert M.matvec(e1, basis(3, 2)) == basis(3, 1, 2)
    e2 = clifford_action(r, ("e", 2))
    assert M.matvec(e2, basis(3, 1)) == [-x for x in basis(3, 1, 2)]


@pytest.mark.parametrize("family,rank", TYPES)
def test_clifford_relations(family, rank):
    r = rep(family, rank)
    Q = r.gens.Q
    d = r.gens.dim
    gam = [r.gamma([M.ONE if k == a else M.ZERO for k in range(d)]) for a in range(d)]
    for a in range(d):
        for b in range(a, d):
            anti = M.add(M.matmul(gam[a], gam[b]), M.matmul(gam[b], gam[a]))
            assert M.equal(anti, M.scale(M.identity(r.dim), Q[a][b]))


@pytest.mark.parametrize("family,rank", TYPES)
def test_homomorphism(family, rank):
    r = rep(family, rank)
    g = r.gens
    src = g.raising + g.lowering + g.cartan_h
    img = r.raising + r.lowering + r.cartan_h
    for x, rx in zip(src, img):
        for y, ry in zip(src, img):
            assert M.equal(spin_embedding(r, M.bracket(x, y)), M.bracket(rx, ry))


def _parity_preserving(m):
    n = len(m)
    par = [bin(i).count("1") % 2 for i in range(n)]
    return all(not m[i][j] for i in range(n) for j in range(n) if par[i] != par[j])


@pytest.mark.parametrize("rank", [3, 4])
def test_parity_preserved_in_type_d(rank):
    r = rep("D", rank)
    for m in r.raising + r.lowering + r.cartan_h:
        assert _parity_preserving(m)


@given(st.lists(st.integers(-2, 2), min_size=12, max_size=12))
def test_parity_preserved_on_random_elements(coeffs):
    r = rep("D", 4)
    g = r.gens
    x = M.zeros(g.dim)
    for c, m in zip(coeffs, g.raising + g.lowering + g.cartan_h):
        if c:
            x = M.add(x, M.scale(m, c))
    assert _parity_preserving(spin_embedding(r, x))


def test_type_b_mixes_parity():
    r = rep("B", 3)
    assert not _parity_preserving(r.raising[-1])


@pytest.mark.parametrize("family,rank", TYPES)
def test_compact_form_compatibility(family, rank):
    r = rep(family, rank)
    for x, y, h in zip(r.raising, r.lowering, r.cartan_h):
        assert M.equal(M.transpose(x), y)
        assert M.equal(M.transpose(h), h)


def test_rejects_non_orthogonal():
    r = rep("D", 3)
    with pytest.raises(ValueError):
        spin_embedding(r, M.unit(6, 0, 0))


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_b_highest_weight(rank):
    r = rep("B", rank)
    v = highest_weight_vector("spin", r)
    assert v.subsets() == {tuple(range(1, rank + 1)): 1}
    assert r.annihilated(v)
    assert r.weight_of(v) == [HALF] * rank


@pytest.mark.parametrize("rank", [3, 4])
def test_d_highest_weights(rank):
    r = rep("D", rank)
    vp, vm = highest_weight_vector("S+", r), highest_weight_vector("S-", r)
    wp, wm = r.weight_of(vp), r.weight_of(vm)
    assert wp[:-1] == wm[:-1] and wp[-1] == -wm[-1] == HALF
    assert vp.parities() == {half_spin_parity("S+", rank)}
    assert vm.parities() == {half_spin_parity("S-", rank)}
    assert declared_weight("S-", rank) == wm


@pytest.mark.parametrize("rank", [3, 4])
def test_last_weight_coordinate_on_empty_set(rank):
    r = rep("D", rank)
    empty = basis(rank)
    out = M.matvec(r.weight_ops[-1], empty)
    assert out == [x * -HALF for x in empty]


def test_highest_weight_module_mismatch():
    with pytest.raises(ValueError):
        highest_weight_vector("S+", rep("B", 2))
    with pytest.raises(ValueError):
        highest_weight_vector("spin", rep("D", 3))


def _defining_wedge_weight(r, k):
    wts = defining_weights(r.gens)
    return [sum((wts[i][j] for i in range(k)), GaussianRational(0)) for j in range(r.n)]


@pytest.mark.parametrize("rank", [3, 4])
def test_segre_and_veronese_weights(rank):
    r = rep("D", rank)
    vp, vm = highest_weight_vector("S+", r), highest_weight_vector("S-", r)
    wp, wm = r.weight_of(vp), r.weight_of(vm)
    # v+ (x) v- has weight w+ + w-, the weight of e_1 ^ ... ^ e_(n-1)
    assert [a + b for a, b in zip(wp, wm)] == _defining_wedge_weight(r, rank - 1)
    # v+ (x) v+ has weight 2 w+, the weight of e_1 ^ ... ^ e_n
    assert [a * 2 for a in wp] == _defining_wedge_weight(r, rank)
    # factors are killed by raising operators, so tensors are too (Leibniz)
    assert r.annihilated(vp) and r.annihilated(vm)


@pytest.mark.parametrize("rank", [2, 3, 4])
def test_odd_veronese_weight(rank):
    r = rep("B", rank)
    v = highest_weight_vector("spin", r)
    assert [a * 2 for a in r.weight_of(v)] == _defining_wedge_weight(r, rank)


@pytest.mark.parametrize("family,rank,module", [("D", 3, "S+"), ("D", 3, "S-"), ("D", 4, "S+"), ("B", 3, "spin")])
def test_spin_curve_basics(family, rank, module):
    r = rep(family, rank)
    v = highest_weight_vector(module, r)
    N = r.principal_lowering()
    s = spin_curve(N, v)
    assert [e.coeff(0) for e in s] == v.dense()
    assert s.degree < M.nilpotency_index(N)
    h = norm_squared(s)
    assert h.is_real_symmetric() and h.coeff(0, 0) == 1
