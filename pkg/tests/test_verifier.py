import json

import pytest

from localplucker.curves import curve_to_spec, poly_z, PolyVector
from localplucker.exact import BiPoly, RatFn, ratfn_equal
from localplucker.scenario import (
    ConfigError,
    ScenarioConfig,
    assemble_form_vector,
    build_bundle,
    d3_a3_comparison,
    match_multisets,
    run_scenario,
)

z, w = BiPoly.z(), BiPoly.w()
one = BiPoly.const(1)


def file_config(tmp_path, rank, *coeffs, **kw):
    path = tmp_path / "curve.json"
    v = PolyVector(tuple(poly_z(c) for c in coeffs))
    path.write_text(json.dumps(curve_to_spec(v)))
    return ScenarioConfig("A", rank, "file", curve_file=str(path), **kw)


def by_name(report):
    return {c.name: c for c in report.checks}


def test_a1_form_vector(tmp_path):
    phi, theta = assemble_form_vector(build_bundle(file_config(tmp_path, 1, [1], [0, 1])))
    h = one + z * w
    assert ratfn_equal(phi[0], RatFn(one, h * h))
    assert ratfn_equal(theta[0], RatFn(BiPoly.const(2), h * h))


def test_a2_rational_normal_curve_from_file(tmp_path):
    b = build_bundle(file_config(tmp_path, 2, [1], [0, 1], [0, 0, 1]))
    assert b.h["wedge1"] == one + z * w + z ** 2 * w ** 2
    assert b.h["wedge2"] == one + z * w * 4 + z ** 2 * w ** 2
    report, code = run_scenario(file_config(tmp_path, 2, [1], [0, 1], [0, 0, 1]))
    assert code == 0
    assert report.numeric["max_rel_residual"] <= 1e-4


def test_d3_form_vector_shape():
    phi, theta = assemble_form_vector(build_bundle(ScenarioConfig("D", 3)))
    assert len(phi) == len(theta) == 3
    assert phi.labels == ["phi1", "phi-", "phi+"]


def test_d3_lemmas_principal():
    report, code = run_scenario(ScenarioConfig("D", 3, checks=("lemmas",)))
    checks = by_name(report)
    assert code == 0
    assert checks["L1 half-spin sum"].passed
    # on the principal orbit the two half-spin metrics agree, so both sigmas fit
    assert checks["L2 doubling iso+"].sigma == "+-"


def test_d3_l2_picks_one_sigma_when_metrics_differ():
    report, code = run_scenario(ScenarioConfig("D", 3, "translated", seed=1, checks=("lemmas",)))
    checks = by_name(report)
    assert code == 0
    assert checks["L2 doubling iso+"].sigma == "+"
    assert checks["L2 doubling iso-"].sigma == "-"
    b = build_bundle(ScenarioConfig("D", 3, "translated", seed=1))
    assert not ratfn_equal(b.phi("half+"), b.phi("half-"))


def test_b2_spin_doubling():
    report, code = run_scenario(ScenarioConfig("B", 2, checks=("lemmas",)))
    assert code == 0 and by_name(report)["L3 spin doubling"].passed


def test_b2_orientation_recorded():
    report, code = run_scenario(ScenarioConfig("B", 2, checks=("cartan",)))
    assert code == 0
    assert report.conventions["transpose_passes"] is False
    assert report.conventions["cartan"] == [[2, -2], [-1, 2]]


def test_dynkin_swap_d4():
    report, code = run_scenario(ScenarioConfig("D", 4, checks=("cartan",)))
    assert code == 0 and by_name(report)["dynkin swap"].passed


def test_report_schema_and_determinism():
    cfg = ScenarioConfig("D", 3, "translated", seed=2, numeric_points=4)
    r1, c1 = run_scenario(cfg)
    r2, c2 = run_scenario(cfg)
    assert c1 == c2 == 0
    text = r1.render("json")
    assert text == r2.render("json")
    js = json.loads(text)
    assert set(js) == {"scenario", "conventions", "checks", "numeric"}
    assert set(js["numeric"]) >= {"max_rel_residual", "points"}
    assert all({"name", "pass"} <= set(c) for c in js["checks"])
    assert js["conventions"]["spin_labels"]["S+"]["subset"] == [1, 2, 3]


def test_text_render():
    report, _ = run_scenario(ScenarioConfig("A", 1, checks=("cartan",)))
    assert report.render("text").splitlines()[1].startswith("PASS cartan row 1")


@pytest.mark.parametrize("label", ["wedge1", "wedge2"])
def test_corruption_gives_residual_witness(label):
    report, code = run_scenario(ScenarioConfig("A", 2, checks=("cartan",), corrupt=label))
    assert code == 1
    failed = [c for c in report.checks if not c.passed]
    assert failed and all(c.residual is not None and not c.residual.is_zero() for c in failed)
    assert all("residual" in c for c in report.to_json()["checks"] if not c["pass"])


def test_numeric_failure_does_not_change_exit_code(monkeypatch):
    import localplucker.scenario as sc

    monkeypatch.setattr(sc, "REL_TOL", -1.0)
    report, code = run_scenario(ScenarioConfig("A", 1, checks=("numeric",)))
    assert not report.checks[-1].passed
    assert code == 0


@pytest.mark.parametrize("kw", [
    dict(family="D", rank=2),
    dict(family="B", rank=1),
    dict(family="E", rank=6),
    dict(family="B", rank=2, curve="file", curve_file="x.json"),
    dict(family="A", rank=2, curve="file"),
    dict(family="A", rank=2, checks=("cartan", "plots")),
    dict(family="A", rank=2, numeric_points=0),
    dict(family="A", rank=2, curve="sideways"),
])
def test_config_errors(kw):
    with pytest.raises(ConfigError):
        run_scenario(ScenarioConfig(**kw))


def test_bad_corrupt_label():
    with pytest.raises(ConfigError):
        run_scenario(ScenarioConfig("A", 2, corrupt="spin"))


def test_file_curve_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        run_scenario(ScenarioConfig("A", 2, "file", curve_file=str(bad)))
    with pytest.raises(ConfigError, match="dimension"):
        run_scenario(file_config(tmp_path, 3, [1], [0, 1]))
    with pytest.raises(ConfigError, match="degenerate"):
        run_scenario(file_config(tmp_path, 2, [1], [0, 1], [0, 2]))


def test_match_multisets():
    a, b = RatFn(one, one + z * w), RatFn(z * w)
    assert match_multisets([a, b], [b, a]) == [1, 0]
    assert match_multisets([a, a], [a, b]) is None


def test_d3_a3():
    out = d3_a3_comparison()
    assert out["pass"]
    assert sorted(out["matching"].values()) == ["theta1", "theta2", "theta3"]
