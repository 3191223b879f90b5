"""Verification scenarios: build a curve, assemble metric and curvature
vectors, certify the Cartan identity and the supporting lemmas, and cross-check
everything against the finite-difference oracle.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import matrices as M
from .curves import (
    PolyVector,
    column,
    curve_from_spec,
    flag_plucker,
    gram_isotropy_check,
    group_curve,
    nondegeneracy_check,
    osculation_check,
    random_curve,
    random_translation,
    wedge_gram,
    wronskian_wedge,
)
from .exact import BiPoly, RatFn, ratfn_residual
from .kahler import FormVector, check_cartan_identity, curvature_coeff, metric_coeff, norm_squared
from .lie import MIN_RANK, ChevalleyData, RootData, chevalley_generators
from .numeric import REL_TOL, numeric_crosscheck, sample_points
from .spin import SpinRep, highest_weight_vector, spin_curve

CHECKS = ("oscu", "cartan", "lemmas", "numeric")
CURVES = ("principal", "random", "translated", "file")
FORMATS = ("json", "text")


class ConfigError(ValueError):
    """Invalid scenario configuration or curve file (exit code 2)."""


@dataclass(frozen=True)
class ScenarioConfig:
    family: str
    rank: int
    curve: str = "principal"
    seed: int = 0
    curve_file: Optional[str] = None
    checks: Tuple[str, ...] = CHECKS
    numeric_points: int = 10
    fmt: str = "json"
    # label of one h-function to multiply by (1 + zw); negative control
    corrupt: Optional[str] = None
    degree: Optional[int] = None

    def validate(self) -> None:
        if self.family not in MIN_RANK:
            raise ConfigError(f"unknown family {self.family!r}; expected A, B or D")
        if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
            raise ConfigError(f"rank {self.rank} below the minimum {MIN_RANK[self.family]} for type {self.family}")
        if self.curve not in CURVES:
            raise ConfigError(f"unknown curve source {self.curve!r}")
        if self.curve == "file":
            if self.family != "A":
                raise ConfigError("curve files are accepted only for family A")
            if not self.curve_file:
                raise ConfigError("--curve file needs --curve-file")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}; expected a subset of {list(CHECKS)}")
        if self.numeric_points < 1:
            raise ConfigError("numeric point count must be positive")
        if self.fmt not in FORMATS:
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.degree is not None and self.degree < self.rank:
            raise ConfigError(f"degree {self.degree} too small for a curve in dimension {self.rank + 1}")

    def to_json(self) -> dict:
        out = asdict(self)
        out["checks"] = list(self.checks)
        return out


# -- curve data -----------------------------------------------------------------

@dataclass
class CurveBundle:
    """A base curve with its wedge and spin images and their squared norms.

    Labels: ``wedge{k}`` are Wronskian wedges of the base curve; in type D
    ``iso+``/``iso-`` are the two maximal isotropic planes through the
    osculating ``(n-1)``-plane and ``half+``/``half-`` the half-spin curves;
    in type B ``spin`` is the spin curve.
    """

    family: str
    rank: int
    base: PolyVector
    gens: ChevalleyData
    group: Optional[M.Matrix] = None
    curves: Dict[str, PolyVector] = field(default_factory=dict)
    h: Dict[str, BiPoly] = field(default_factory=dict)
    corrupted: Optional[str] = None
    _phi: Dict[str, RatFn] = field(default_factory=dict, repr=False)

    def phi(self, label: str) -> RatFn:
        if label not in self._phi:
            self._phi[label] = metric_coeff(self.h[label])
        return self._phi[label]


def _load_file_curve(path: str, rank: int) -> PolyVector:
    try:
        with open(path) as fh:
            v = curve_from_spec(json.load(fh))
    except (OSError, json.JSONDecodeError, ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"cannot read curve file {path}: {exc}") from exc
    if v.ambient_dim != rank + 1:
        raise ConfigError(f"curve file has ambient dimension {v.ambient_dim}, expected {rank + 1}")
    return v


def base_curve(config: ScenarioConfig, gens: ChevalleyData) -> Tuple[PolyVector, Optional[M.Matrix]]:
    n = config.rank
    if config.curve == "file":
        return _load_file_curve(config.curve_file, n), None
    if config.curve == "random" and config.family == "A":
        degree = config.degree if config.degree is not None else n + 2
        return random_curve(n + 1, degree, config.seed), None
    # B/D accept only group-generated curves; "random" means a random translate
    word = random_translation(n, config.seed) if config.curve != "principal" else ()
    g = group_curve(gens, word)
    return column(g, 0), g


def build_bundle(config: ScenarioConfig) -> CurveBundle:
    config.validate()
    fam, n = config.family, config.rank
    gens = chevalley_generators(RootData.of(fam, n))
    v, g = base_curve(config, gens)
    if not nondegeneracy_check(v) and fam == "A":
        raise ConfigError("curve is degenerate (its Wronskian vanishes)")
    b = CurveBundle(fam, n, v, gens, g)

    top = {"A": n, "B": n + 1, "D": n}[fam]
    for k in range(1, top + 1):
        b.curves[f"wedge{k}"] = wronskian_wedge(v, k)
    grams: Dict[str, Optional[M.Matrix]] = {}
    if fam == "B":
        for k in range(1, top + 1):
            grams[f"wedge{k}"] = wedge_gram(gens.hermitian, k)
    if fam in ("B", "D"):
        rep = SpinRep(gens)
        word = random_translation(n, config.seed) if config.curve != "principal" else ()
        g0 = rep.translation_matrix(word) if word else None
        N = rep.principal_lowering()
        if fam == "D":
            b.curves["iso+"] = flag_plucker(g, list(range(n)))
            b.curves["iso-"] = flag_plucker(g, list(range(n - 1)) + [2 * n - 1])
            for sign in "+-":
                b.curves[f"half{sign}"] = spin_curve(N, highest_weight_vector(f"S{sign}", rep), g0)
        else:
            b.curves["spin"] = spin_curve(N, highest_weight_vector("spin", rep), g0)

    for label, c in b.curves.items():
        b.h[label] = norm_squared(c, grams.get(label))
    if config.corrupt is not None:
        if config.corrupt not in b.h:
            raise ConfigError(f"cannot corrupt unknown function {config.corrupt!r}; have {sorted(b.h)}")
        b.h[config.corrupt] = b.h[config.corrupt] * (BiPoly.const(1) + BiPoly.z() * BiPoly.w())
        b.corrupted = config.corrupt
    return b


def form_labels(family: str, rank: int) -> Tuple[List[str], List[str]]:
    """(bundle labels, display labels) of the metric vector in weight order."""
    n = rank
    if family == "A":
        return [f"wedge{k}" for k in range(1, n + 1)], [f"phi{k}" for k in range(1, n + 1)]
    if family == "D":
        src = [f"wedge{k}" for k in range(1, n - 1)] + ["half-", "half+"]
        return src, [f"phi{k}" for k in range(1, n - 1)] + ["phi-", "phi+"]
    src = [f"wedge{k}" for k in range(1, n)] + ["spin"]
    return src, [f"phi{k}" for k in range(1, n)] + ["phi_spin"]


def assemble_form_vector(bundle: CurveBundle) -> Tuple[FormVector, FormVector]:
    src, labels = form_labels(bundle.family, bundle.rank)
    phi = FormVector([bundle.phi(s) for s in src], labels)
    theta = FormVector([curvature_coeff(p) for p in phi.entries], ["theta" + lab[3:] for lab in labels])
    return phi, theta


# -- checks ---------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    residual: Optional[BiPoly] = None
    sigma: Optional[str] = None
    note: Optional[str] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        for key in ("lhs", "rhs", "sigma", "note"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.residual is not None:
            out["residual"] = self.residual.to_triples()
        return out


def identity_check(name: str, a: RatFn, b: RatFn, lhs: str, rhs: str, **kw) -> Check:
    res = ratfn_residual(a, b)
    ok = res.is_zero()
    return Check(name, ok, lhs, rhs, None if ok else res, **kw)


def osculation_range(family: str, rank: int) -> int:
    """Largest k for which the osculating k-plane of an integral curve lies in
    the isotropic base flag (type D stops one short of the middle)."""
    return {"A": rank + 1, "B": rank, "D": rank - 1}[family]


def osculation_checks(bundle: CurveBundle) -> List[Check]:
    out = []
    fam, n = bundle.family, bundle.rank
    out.append(Check("nondegenerate", nondegeneracy_check(bundle.base) if fam == "A" else True,
                     note=None if fam == "A" else "span of the base curve checked through the wedges below"))
    if bundle.group is None:
        return out
    top = osculation_range(fam, n)
    for k in range(1, top + 1):
        out.append(Check(f"osculation k={k}", osculation_check(bundle.group, k)))
    if fam in ("B", "D"):
        Q = bundle.gens.Q
        out.append(Check(f"isotropy m={top}", gram_isotropy_check(bundle.base, Q, top)))
    if fam == "B":
        out.append(Check(f"osculation k={n + 1}", osculation_check(bundle.group, n + 1, list(range(n)) + [2 * n])))
    return out


def cartan_checks(bundle: CurveBundle, phi: FormVector, theta: FormVector) -> Tuple[List[Check], dict]:
    fam, n = bundle.family, bundle.rank
    C = bundle.gens.root.cartan
    out = []
    res = check_cartan_identity(theta, C, phi)
    for r in res.rows:
        out.append(Check(f"cartan row {r.row}", r.passed, r.lhs, r.rhs, r.residual))
    conventions = {"cartan": [list(row) for row in C]}
    if fam == "B":
        transposed = [list(col) for col in zip(*C)]
        conventions["cartan_orientation"] = "long-short entry -2 in row n-1"
        conventions["transpose_passes"] = check_cartan_identity(theta, transposed, phi).passed
    if fam == "D":
        # outer automorphism swapping the two spin nodes
        perm = list(range(n - 2)) + [n - 1, n - 2]
        Cp = [[C[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
        swapped = check_cartan_identity(theta.permuted(perm), Cp, phi.permuted(perm))
        witness = next((r.residual for r in swapped.rows if not r.passed), None)
        out.append(Check("dynkin swap", swapped.passed, residual=witness,
                         note="indices n-1 and n exchanged in C, phi and theta"))
    return out, conventions


def lemma_checks(bundle: CurveBundle, phi: FormVector, theta: FormVector) -> List[Check]:
    fam, n = bundle.family, bundle.rank
    out = []
    P = dict(zip(phi.labels, phi.entries))
    T = dict(zip(theta.labels, theta.entries))
    if fam == "D":
        hp, hm = bundle.h["half+"], bundle.h["half-"]
        out.append(identity_check("L1 half-spin sum", metric_coeff(hp * hm), bundle.phi(f"wedge{n - 1}"),
                                  "phi(h+ h-)", f"phi_wedge{n - 1}"))
        for plane in ("iso+", "iso-"):
            wedge = bundle.phi(plane)
            hits = {s: ratfn_residual(wedge, P[f"phi{s}"] * 2).is_zero() for s in "+-"}
            distinct = not ratfn_residual(P["phi+"], P["phi-"]).is_zero()
            ok = any(hits.values()) and (not distinct or sum(hits.values()) == 1)
            sigma = "".join(s for s in "+-" if hits[s]) or None
            res = None if ok else ratfn_residual(wedge, P["phi+"] * 2)
            out.append(Check(f"L2 doubling {plane}", ok, f"phi_{plane}", "2*phi_sigma", res, sigma=sigma))
    if fam == "B":
        out.append(identity_check("L3 spin doubling", bundle.phi(f"wedge{n}"), P["phi_spin"] * 2,
                                  f"phi_wedge{n}", "2*phi_spin"))
        out.append(identity_check("L3 descent", bundle.phi(f"wedge{n + 1}"), bundle.phi(f"wedge{n}"),
                                  f"phi_wedge{n + 1}", f"phi_wedge{n}"))
    if fam in ("B", "D"):
        out.extend(_spin_node_rows(bundle, P, T))
        out.extend(_classical_rows(bundle))
    out.extend(_metric_algebra(bundle))
    return out


def _spin_node_rows(bundle: CurveBundle, P: dict, T: dict) -> List[Check]:
    """Spin-node rows written out explicitly, independent of the Cartan matrix."""
    n = bundle.rank
    out = []
    if bundle.family == "D":
        prev = P.get(f"phi{n - 3}")
        rhs = P[f"phi{n - 2}"] * 2 - P["phi+"] - P["phi-"]
        label = f"2*phi{n - 2} - phi+ - phi-"
        if prev is not None:
            rhs = rhs - prev
            label = f"-phi{n - 3} + " + label
        out.append(identity_check(f"L4 row {n - 2}", T[f"theta{n - 2}"], rhs, f"theta{n - 2}", label))
        for s in "-+":
            out.append(identity_check(f"L4 row {s}", T[f"theta{s}"], P[f"phi{s}"] * 2 - P[f"phi{n - 2}"],
                                      f"theta{s}", f"-phi{n - 2} + 2*phi{s}"))
    else:
        prev = P.get(f"phi{n - 2}")
        rhs = P[f"phi{n - 1}"] * 2 - P["phi_spin"] * 2
        label = f"2*phi{n - 1} - 2*phi_spin"
        if prev is not None:
            rhs = rhs - prev
            label = f"-phi{n - 2} + " + label
        out.append(identity_check(f"L4 row {n - 1}", T[f"theta{n - 1}"], rhs, f"theta{n - 1}", label))
        out.append(identity_check("L4 row spin", T["theta_spin"], P["phi_spin"] * 2 - P[f"phi{n - 1}"],
                                  "theta_spin", f"-phi{n - 1} + 2*phi_spin"))
    return out


def _classical_rows(bundle: CurveBundle) -> List[Check]:
    """Rows of the projective-space identity for the base curve's own wedges,
    the relations the spin rows are pulled back from."""
    out = []
    ks = sorted(int(lab[5:]) for lab in bundle.h if lab.startswith("wedge"))
    phis = {k: bundle.phi(f"wedge{k}") for k in ks}
    for k in ks[:-1]:
        theta = curvature_coeff(phis[k])
        rhs = phis[k] * 2 - phis[k + 1]
        label = f"2*phi_wedge{k} - phi_wedge{k + 1}"
        if k > 1:
            rhs = rhs - phis[k - 1]
            label = f"-phi_wedge{k - 1} + " + label
        out.append(identity_check(f"L4 classical row {k}", theta, rhs, f"theta_wedge{k}", label))
    return out


def _metric_algebra(bundle: CurveBundle) -> List[Check]:
    out = []
    labels = list(bundle.h)
    for a, b in zip(labels, labels[1:]):
        ha, hb = bundle.h[a], bundle.h[b]
        out.append(identity_check(f"L5 product {a}*{b}", metric_coeff(ha * hb), bundle.phi(a) + bundle.phi(b),
                                  f"phi({a}*{b})", f"phi_{a} + phi_{b}"))
    for a in labels:
        out.append(identity_check(f"L5 square {a}", metric_coeff(bundle.h[a] ** 2), bundle.phi(a) * 2,
                                  f"phi({a}^2)", f"2*phi_{a}"))
    return out


def numeric_checks(bundle: CurveBundle, count: int, seed: int) -> Tuple[Check, dict]:
    points = sample_points(count, seed)
    per_fn = {}
    worst = 0.0
    used = []
    for label, h in bundle.h.items():
        cc = numeric_crosscheck(h, bundle.phi(label), points, seed=seed)
        per_fn[label] = cc.max_rel_residual
        worst = max(worst, cc.max_rel_residual)
        used = used or [[float(p.re), float(p.im)] for p in cc.points]
    stats = {"max_rel_residual": worst, "points": used, "per_function": per_fn, "tolerance": REL_TOL}
    return Check("numeric", worst <= REL_TOL, note=f"max relative residual {worst:.3e}"), stats


# -- orchestration ----------------------------------------------------------------

def conventions_record(bundle: CurveBundle) -> dict:
    fam, n = bundle.family, bundle.rank
    conv = {
        "h": "squared norm; phi = d_z d_w log h; theta = -d_z d_w log phi",
        "wedge_index": "wedge k uses v, v', ..., v^(k-1)",
        "bracket": "[H_i, X_j] = C[j][i] X_j",
    }
    if fam == "D":
        conv["spin_labels"] = {
            "S+": {"subset": list(range(1, n + 1)), "weight": "(1/2, ..., 1/2)"},
            "S-": {"subset": list(range(1, n)), "weight": "(1/2, ..., 1/2, -1/2)"},
        }
        conv["form_order"] = "phi_1..phi_(n-2), phi-, phi+"
    if fam == "B":
        conv["Q_uu"] = 2
        conv["hermitian_uu"] = 2
        conv["final_row"] = "read with metric coefficients phi in place of weights"
        conv["form_order"] = "phi_1..phi_(n-1), phi_spin"
    if fam in ("B", "D"):
        conv["bundle_pullback_lemma"] = "verified via consequence (spin-node rows)"
    return conv


@dataclass
class Report:
    scenario: dict
    conventions: dict
    checks: List[Check]
    numeric: Optional[dict] = None

    @property
    def exact_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.name != "numeric")

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "conventions": self.conventions,
            "checks": [c.to_json() for c in self.checks],
            "numeric": self.numeric,
        }

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2)
        s = self.scenario
        lines = [f"scenario {s['family']}{s['rank']} curve={s['curve']} seed={s['seed']}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            detail = f"  {c.lhs} = {c.rhs}" if c.lhs else ""
            if c.sigma:
                detail += f"  (sigma {c.sigma})"
            if c.note:
                detail += f"  [{c.note}]"
            lines.append(f"{mark} {c.name}{detail}")
            if c.residual is not None:
                lines.append(f"     residual: {c.residual.pretty()}")
        if self.numeric:
            lines.append(f"numeric max relative residual {self.numeric['max_rel_residual']:.3e}"
                         f" over {len(self.numeric['points'])} points")
        return "\n".join(lines)


def run_scenario(config: ScenarioConfig) -> Tuple[Report, int]:
    """Run the requested checks; exit code 0 iff every exact check passes."""
    bundle = build_bundle(config)
    checks: List[Check] = []
    conventions = conventions_record(bundle)
    numeric = None
    if "oscu" in config.checks:
        checks.extend(osculation_checks(bundle))
    phi = theta = None
    if "cartan" in config.checks or "lemmas" in config.checks:
        phi, theta = assemble_form_vector(bundle)
    if "cartan" in config.checks:
        cc, conv = cartan_checks(bundle, phi, theta)
        checks.extend(cc)
        conventions.update(conv)
    if "lemmas" in config.checks:
        checks.extend(lemma_checks(bundle, phi, theta))
    if "numeric" in config.checks:
        nc, numeric = numeric_checks(bundle, config.numeric_points, config.seed)
        checks.append(nc)
    report = Report(config.to_json(), conventions, checks, numeric)
    return report, 0 if report.exact_passed else 1


# -- cross-family comparison ----------------------------------------------------

def match_multisets(left: Sequence[RatFn], right: Sequence[RatFn]) -> Optional[List[int]]:
    """A bijection ``i -> perm[i]`` with ``left[i] == right[perm[i]]``, or None."""
    if len(left) != len(right):
        return None
    perm: List[int] = []

    def extend(i: int) -> bool:
        if i == len(left):
            return True
        for j in range(len(right)):
            if j not in perm and ratfn_residual(left[i], right[j]).is_zero():
                perm.append(j)
                if extend(i + 1):
                    return True
                perm.pop()
        return False

    return list(perm) if extend(0) else None


def d3_a3_comparison() -> dict:
    """Curvature vectors of the so(6) and sl(4) principal scenarios agree as
    multisets (so(6) = sl(4)); returns the index matching found."""
    _, th_d = assemble_form_vector(build_bundle(ScenarioConfig("D", 3)))
    _, th_a = assemble_form_vector(build_bundle(ScenarioConfig("A", 3)))
    perm = match_multisets(th_d.entries, th_a.entries)
    matching = None if perm is None else {th_d.labels[i]: th_a.labels[j] for i, j in enumerate(perm)}
    return {"pass": perm is not None, "matching": matching}
