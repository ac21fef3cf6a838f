"""Suite configuration, the check registry, deterministic execution and reports.

Every check returns a measured value and compares it against a threshold
(``<=`` unless the check says otherwise).  Identity tolerances are relative to
the magnitude of the largest term that cancels, so they are meaningful at
machine precision regardless of field amplitude.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import commutators as C
from . import flow as F
from . import grassmann as G
from . import littlewood_paley as lp
from . import manifold as M
from . import norms, spectral
from .errors import ConfigError, FracHarmError
from .io import save_field
from .spectral import PeriodicGrid

SUITES = ("identity", "lemmas", "estimates", "flow", "norms")
CONFIG_KEYS = ("suites", "n", "N", "grids", "seeds", "tolerances", "output_dir", "threads")
INF = math.inf


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple = SUITES
    n: int = 3
    N: int = 16
    grids: tuple = ()
    seeds: tuple = tuple(range(1, 21))
    tolerances: dict = field(default_factory=dict)
    output_dir: str = "reports"
    threads: int = 1

    @property
    def grid_list(self) -> list:
        return [PeriodicGrid(self.n, N) for N in (self.grids or (self.N,))]


def parse_config(text: str) -> SuiteConfig:
    """Parse JSON text into a :class:`SuiteConfig`; unknown keys are rejected."""
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    for key in raw:
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown configuration key {key!r} (allowed: {', '.join(CONFIG_KEYS)})")
    kw = {}
    if "suites" in raw:
        suites = raw["suites"]
        if not isinstance(suites, list) or not suites:
            raise ConfigError("key 'suites' must be a nonempty list")
        for s in suites:
            if s not in SUITES:
                raise ConfigError(f"key 'suites': unknown suite {s!r}")
        kw["suites"] = tuple(suites)
    for key in ("n", "N", "threads"):
        if key in raw:
            if not isinstance(raw[key], int) or isinstance(raw[key], bool):
                raise ConfigError(f"key {key!r} must be an integer")
            kw[key] = raw[key]
    if "grids" in raw:
        if not isinstance(raw["grids"], list) or not all(isinstance(g, int) for g in raw["grids"]):
            raise ConfigError("key 'grids' must be a list of integers")
        kw["grids"] = tuple(raw["grids"])
    if "seeds" in raw:
        if not isinstance(raw["seeds"], list) or not raw["seeds"] or not all(isinstance(s, int) for s in raw["seeds"]):
            raise ConfigError("key 'seeds' must be a nonempty list of integers")
        kw["seeds"] = tuple(raw["seeds"])
    if "tolerances" in raw:
        tol = raw["tolerances"]
        if not isinstance(tol, dict) or not all(isinstance(v, (int, float)) for v in tol.values()):
            raise ConfigError("key 'tolerances' must map check ids to numbers")
        unknown = [k for k in tol if k not in CHECK_IDS]
        if unknown:
            raise ConfigError(f"key 'tolerances': unknown check id {unknown[0]!r}")
        kw["tolerances"] = {k: float(v) for k, v in tol.items()}
    if "output_dir" in raw:
        if not isinstance(raw["output_dir"], str):
            raise ConfigError("key 'output_dir' must be a string")
        kw["output_dir"] = raw["output_dir"]
    cfg = SuiteConfig(**kw)
    try:
        cfg.grid_list
    except ValueError as exc:
        raise ConfigError(f"key 'n'/'N'/'grids': {exc}") from exc
    if cfg.threads < 1:
        raise ConfigError("key 'threads' must be positive")
    return cfg


@dataclass(frozen=True)
class CheckResult:
    check: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list
    wall_time: float = 0.0
    ratios: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed


@dataclass
class Context:
    config: SuiteConfig
    out_dir: Path | None = None
    ratios: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    @property
    def seeds(self):
        return self.config.seeds

    @property
    def grids(self):
        return self.config.grid_list


@dataclass(frozen=True)
class Check:
    suite: str
    id: str
    threshold: float
    run: object
    sense: str = "le"  # "le": value <= threshold; "ge": value >= threshold


def _rel(a, b) -> float:
    scale = max(float(np.abs(b).max()), 1e-300)
    return float(np.abs(np.asarray(a) - np.asarray(b)).max() / scale)


def _pair(grid, seed, s=None):
    s = grid.n / 2 if s is None else s
    return (spectral.gaussian_random_field(grid, s, 2 * seed),
            spectral.gaussian_random_field(grid, s, 2 * seed + 1))


# --------------------------------------------------------------------------
# identity suite
# --------------------------------------------------------------------------

def chk_partition_of_unity(ctx):
    return max(float(np.abs(lp.DyadicPartition(g).psi.sum(axis=0) - 1).max()) for g in ctx.grids)


def chk_paraproducts(ctx):
    worst = 0.0
    for g in ctx.grids:
        P = lp.DyadicPartition(g)
        for seed in ctx.seeds:
            f, h = _pair(g, seed, 1.0)
            total = sum(lp.paraproduct(P, f, h, k) for k in (1, 2, 3))
            worst = max(worst, _rel(total, f * h))
    return worst


def _const_check(op):
    def run(ctx):
        worst = 0.0
        for g in ctx.grids:
            for seed in ctx.seeds:
                _, u = _pair(g, seed)
                c = np.full(g.shape, 1.0 + 0.1 * seed)
                scale = np.abs(c * C.frac(g, u, g.n / 2)).max()
                worst = max(worst, float(np.abs(op(g, c, u)).max() / scale))
        return worst
    return run


def chk_T_star_minus_T(ctx):
    worst = 0.0
    for g in ctx.grids:
        for seed in ctx.seeds:
            Q, u = _pair(g, seed)
            lhs = C.op_T_star(g, Q, u) - C.op_T(g, Q, u)
            rhs = Q * C.frac(g, u, g.n / 2) - C.frac(g, Q * u, g.n / 2)
            worst = max(worst, _rel(lhs, rhs))
    return worst


def chk_T_star_duality(ctx):
    worst = 0.0
    for g in ctx.grids:
        for seed in ctx.seeds:
            Q, u = _pair(g, seed)
            h = spectral.gaussian_random_field(g, g.n / 2, 7919 + seed)
            a = spectral.inner(g, C.op_T_star(g, Q, u), h)
            b = spectral.inner(g, u, C.op_T_adjoint(g, Q, h))
            worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    return worst


def chk_T_star_paraproduct(ctx):
    worst = 0.0
    for g in ctx.grids:
        P = lp.DyadicPartition(g)
        for seed in ctx.seeds:
            Q, u = _pair(g, seed)
            worst = max(worst, _rel(C.op_T_star_paraproduct(P, Q, u)["total"], C.op_T_star(g, Q, u)))
    return worst


def _sphere_maps(ctx):
    for g in ctx.grids:
        for seed in ctx.seeds:
            yield g, M.random_sphere_map(g, 3, seed)


def chk_omega_antisymmetry(ctx):
    worst = 0.0
    for g, u in _sphere_maps(ctx):
        om, _, _ = C.omega_fields(g, M.projector_fields(g, u).PT)
        worst = max(worst, float(np.abs(om + om.swapaxes(0, 1)).max()))
    return worst


def chk_omega1_symmetry(ctx):
    worst = 0.0
    for g, u in _sphere_maps(ctx):
        _, om1, _ = C.omega_fields(g, M.projector_fields(g, u).PT)
        worst = max(worst, float(np.abs(om1 - om1.swapaxes(0, 1)).max()))
    return worst


def _rewrite(name):
    def run(ctx):
        worst = 0.0
        for g, u in _sphere_maps(ctx):
            PT = M.projector_fields(g, u).PT
            worst = max(worst, C.rewriting_identities(g, PT, C.L(g, u))[name])
        return worst
    return run


def chk_grassmann_projector(ctx):
    worst = 0.0
    for m in (3, 4, 5):
        for k in range(1, m):
            for seed in ctx.seeds:
                rng = np.random.default_rng([seed, m, k])
                Qm, _ = np.linalg.qr(rng.standard_normal((m, m)))
                v = rng.standard_normal(m)
                pt, pn = G.projector_from_frame(Qm[:k], Qm[k:], v)
                gram = Qm[:k].T @ Qm[:k]
                worst = max(worst, float(np.abs(pt - gram @ v).max()), float(np.abs(pn - v + gram @ v).max()))
    return worst


def chk_riesz_round_trip(ctx):
    worst = 0.0
    for g in ctx.grids:
        for seed in ctx.seeds:
            f = spectral.gaussian_random_field(g, 1.0, seed)
            worst = max(worst, _rel(spectral.riesz_contraction(g, spectral.riesz_transform(g, f)), f))
    return worst


def chk_critical_el(ctx):
    return max(F.el_residual(g, M.circle_map(g)) for g in ctx.grids)


def chk_critical_wedge(ctx):
    return max(M.wedge_residual(g, M.circle_map(g)) for g in ctx.grids)


def chk_circle_energy(ctx):
    return max(abs(F.energy(g, M.circle_map(g)) / (2 * math.pi) ** g.n - 1) for g in ctx.grids)


def chk_gradient(ctx):
    worst = 0.0
    for g in ctx.grids:
        for seed in ctx.seeds[:10]:
            u = M.random_sphere_map(g, 3, seed, s=g.n / 2 + 1)
            phi = np.stack([spectral.gaussian_random_field(g, g.n / 2 + 1, 31 * seed + i) for i in range(3)])
            exact, fd = F.directional_derivative(g, u, phi)
            worst = max(worst, abs(exact - fd) / abs(exact))
    return worst


# --------------------------------------------------------------------------
# lemma suite
# --------------------------------------------------------------------------

def lemma_fields(grid, count=50):
    """Fields for the lemma checks: regularities 0, 0.5, 1.5, 2.5 in rotation."""
    regs = (0.0, 0.5, 1.5, 2.5)
    return [spectral.gaussian_random_field(grid, regs[i % 4], 100 + i) for i in range(count)]


def chk_lemma_a1(ctx):
    worst = 0.0
    for g in ctx.grids:
        P = lp.DyadicPartition(g)
        worst = max(worst, max(lp.lemma_a1_ratio(P, f) for f in lemma_fields(g)))
    return worst


def chk_lemma_a1_majorant(ctx):
    """Measured ratio divided by the majorant constant max_j ||K_j*||_1."""
    worst = 0.0
    for g in ctx.grids:
        P = lp.DyadicPartition(g)
        c = lp.lemma_a1_constant(P)
        worst = max(worst, max(lp.lemma_a1_ratio(P, f) for f in lemma_fields(g)) / c)
    return worst


def chk_lemma_a2(ctx):
    worst = 0.0
    for g in ctx.grids:
        a = [lp.lemma_a2_check(lp.DyadicPartition(g), k) for k in range(3)]
        b = [lp.lemma_a2_check(lp.DyadicPartition(g.refined(2)), k) for k in range(3)]
        worst = max(worst, max(abs(x / y - 1) for x, y in zip(a, b)))
    return worst


def chk_lemma_a3(ctx):
    worst = 0.0
    for g in ctx.grids:
        P = lp.DyadicPartition(g)
        for f in lemma_fields(g, 10):
            for j in P.js:
                for k in range(3):
                    worst = max(worst, lp.lemma_a3_check(P, f, j, k))
    return worst


def chk_taylor_fixture(ctx):
    t = C.taylor_coefficients(1.5, 3).symbol_difference(np.array([0.1]), np.array([1.0]))
    return abs(float(t) - (1 - 0.9**1.5))


def chk_taylor_degree12(ctx):
    return C.taylor_max_error(1.5, 12, n=3, count=20, ratio=0.5)


def chk_refine_tangency(ctx):
    worst = INF
    for g in ctx.grids:
        for seed in ctx.seeds[:5]:
            a = M.tangency_residual(g, M.kinked_sphere_map(g, 3, seed))
            fine = g.refined(2)
            b = M.tangency_residual(fine, M.kinked_sphere_map(fine, 3, seed))
            worst = min(worst, a / b)
    return worst


def chk_refine_structure(ctx):
    worst = INF
    for g in ctx.grids:
        for seed in ctx.seeds[:5]:
            a = C.structure_residual(g, M.kinked_sphere_map(g, 3, seed))
            fine = g.refined(2)
            b = C.structure_residual(fine, M.kinked_sphere_map(fine, 3, seed))
            worst = min(worst, a / b)
    return worst


def chk_equiv(ctx):
    """Worst of max(r, 1/r) for the (equiv) ratio; must stay within 64."""
    worst = 1.0
    for g in ctx.grids:
        P = lp.DyadicPartition(g)
        for seed in ctx.seeds[:5]:
            r = lp.equiv_ratio(P, spectral.gaussian_random_field(g, 0.0, seed))
            worst = max(worst, r, 1 / r)
    return worst


# --------------------------------------------------------------------------
# estimates suite
# --------------------------------------------------------------------------

def _estimate_check(eid):
    def run(ctx):
        est = C.ESTIMATES[eid]
        if est.n == ctx.config.n:
            base = ctx.config.N
        else:
            base = C.DEFAULT_GRIDS[est.n][0]
        reports = C.estimate_ratio(eid, ctx.seeds, [base, 2 * base])
        ctx.ratios.extend(reports)
        s = C.summarize(reports)
        coarse, fine = s[base]["max"], s[2 * base]["max"]
        finite = all(math.isfinite(r.ratio) for r in reports)
        if not finite:
            return INF
        # the reported value is the largest of the three normalised gates
        return max(coarse / 1e3, fine / 1e3, (fine / coarse) / 2 if coarse > 0 else 0.0)
    return run


# --------------------------------------------------------------------------
# flow suite
# --------------------------------------------------------------------------

FLOW_FIXTURES = {
    "flow_n1": (F.FlowConfig(n=1, N=256, m=2, tau=1 / 128, max_iter=5000, tol=1e-6, seed=0), "abs"),
    "flow_n3": (F.FlowConfig(n=3, N=16, m=2, tau=1 / 512, max_iter=3000, tol=1e-3, seed=0, along_x1=True), "rel"),
}


def run_flow_fixture(name):
    cfg, mode = FLOW_FIXTURES[name]
    if mode == "rel":
        r0 = F.el_residual(cfg.grid, cfg.initial_map())
        cfg = replace(cfg, tol=cfg.tol * r0)
    state, trace = F.flow_run(cfg)
    return cfg, state, trace


def _flow_check(name):
    def run(ctx):
        cfg, state, trace = run_flow_fixture(name)
        e = np.array([row[1] for row in trace])
        monotone = bool(np.all(np.diff(e) <= 0))
        ctx.artifacts[name] = (cfg, state, trace)
        if not monotone:
            return INF
        return state.residual / cfg.tol if state.residual <= cfg.tol else 1.0 + state.residual / cfg.tol
    return run


# --------------------------------------------------------------------------
# norms suite
# --------------------------------------------------------------------------

def chk_lorentz_fixture(ctx):
    return abs(norms.lorentz_norm_values([4, 3, 2, 1], 1.0, 2, INF) - 3 * math.sqrt(2))


def chk_lorentz_lp(ctx):
    worst = 0.0
    for g in ctx.grids:
        for seed in ctx.seeds:
            f = spectral.gaussian_random_field(g, 0.5, seed)
            for p in (1.0, 2.0, 3.0):
                a, b = norms.lorentz_norm(g, f, p, p), norms.lp_norm(g, f, p)
                worst = max(worst, abs(a / b - 1))
    return worst


def embedding_constants(grid, seeds):
    c1 = c2 = 0.0
    P = lp.DyadicPartition(grid)
    for seed in seeds:
        f = spectral.gaussian_random_field(grid, grid.n / 2, seed)
        b, m, s = norms.besov_norm(P, f, 0, INF, INF), norms.bmo_norm(grid, f), norms.sobolev_norm(grid, f, grid.n / 2)
        c1, c2 = max(c1, b / m), max(c2, m / s)
    return c1, c2


def chk_embedding_chain(ctx):
    worst = 1.0
    for g in ctx.grids:
        a = embedding_constants(g, ctx.seeds)
        b = embedding_constants(g.refined(2), ctx.seeds)
        worst = max(worst, *(max(x / y, y / x) for x, y in zip(a, b)))
    return worst


HOLDER_EXPONENTS = ((2, 2, 2, 2), (2, 1, 2, INF), (4, 2, 4, 2), (2, INF, 2, INF), (3, 1, 6, 2))


def chk_lorentz_holder(ctx):
    worst = 0.0
    for g in ctx.grids:
        for seed in ctx.seeds:
            f, h = _pair(g, seed, 0.5)
            for ex in HOLDER_EXPONENTS:
                worst = max(worst, norms.lorentz_holder_check(g, f, h, ex))
    return worst


def chk_duality(ctx):
    worst = 0.0
    for g in ctx.grids:
        for seed in ctx.seeds:
            f, h = _pair(g, seed)
            pair = abs(spectral.inner(g, f, h))
            worst = max(worst, pair / (C.wdot(g, f, -g.n / 2, 2, 1) * C.wdot(g, h, g.n / 2, 2, INF)))
    return worst


def chk_bmo_cos(ctx):
    """Distance of BMO(cos x_1) from [0.3, 0.7] plus its refinement drift beyond 10%."""
    worst = 0.0
    for g in ctx.grids:
        a = norms.bmo_norm(g, np.cos(g.coordinates()[0]))
        fine = g.refined(2)
        b = norms.bmo_norm(fine, np.cos(fine.coordinates()[0]))
        out = max(0.0, 0.3 - a, a - 0.7)
        drift = max(0.0, abs(b / a - 1) - 0.1)
        worst = max(worst, out + drift)
    return worst


CHECKS = [
    Check("identity", "partition_of_unity", 1e-14, chk_partition_of_unity),
    Check("identity", "paraproduct_completeness", 1e-10, chk_paraproducts),
    Check("identity", "T_const", 1e-12, _const_check(C.op_T)),
    Check("identity", "T_star_const", 1e-12, _const_check(C.op_T_star)),
    Check("identity", "T_adjoint_const", 1e-12, _const_check(C.op_T_adjoint)),
    Check("identity", "T_star_minus_T", 1e-11, chk_T_star_minus_T),
    Check("identity", "T_star_duality", 1e-10, chk_T_star_duality),
    Check("identity", "T_star_paraproduct_split", 1e-10, chk_T_star_paraproduct),
    Check("identity", "omega_antisymmetry", 1e-12, chk_omega_antisymmetry),
    Check("identity", "omega1_symmetry", 1e-12, chk_omega1_symmetry),
    *[Check("identity", f"rewrite_{k}", 1e-11, _rewrite(k)) for k in ("pt", "pn", "TT", "TN", "NT", "NN")],
    Check("identity", "grassmann_projector", 1e-12, chk_grassmann_projector),
    Check("identity", "riesz_round_trip", 1e-12, chk_riesz_round_trip),
    Check("identity", "critical_el_residual", 1e-10, chk_critical_el),
    Check("identity", "critical_wedge_residual", 1e-10, chk_critical_wedge),
    Check("identity", "circle_energy", 1e-12, chk_circle_energy),
    Check("identity", "gradient_check", 1e-5, chk_gradient),
    Check("lemmas", "lemma_a1", 1.2, chk_lemma_a1),
    Check("lemmas", "lemma_a1_majorant", 1.0, chk_lemma_a1_majorant),
    Check("lemmas", "lemma_a2_stability", 0.02, chk_lemma_a2),
    Check("lemmas", "lemma_a3", 1 + 1e-6, chk_lemma_a3),
    Check("lemmas", "taylor_fixture", 3e-6, chk_taylor_fixture),
    Check("lemmas", "taylor_degree12", 1e-10, chk_taylor_degree12),
    Check("lemmas", "refinement_tangency", 3.0, chk_refine_tangency, "ge"),
    Check("lemmas", "refinement_structure", 1.5, chk_refine_structure, "ge"),
    Check("lemmas", "equiv_ratio", 64.0, chk_equiv),
    *[Check("estimates", f"estimate_{eid}", 1.0, _estimate_check(eid)) for eid in C.ESTIMATES],
    Check("flow", "flow_n1", 1.0, _flow_check("flow_n1")),
    Check("flow", "flow_n3", 1.0, _flow_check("flow_n3")),
    Check("norms", "lorentz_fixture", 1e-12, chk_lorentz_fixture),
    Check("norms", "lorentz_equals_lp", 1e-12, chk_lorentz_lp),
    Check("norms", "embedding_chain_stability", 2.0, chk_embedding_chain),
    Check("norms", "lorentz_holder", 4.0, chk_lorentz_holder),
    Check("norms", "duality_pairing", 4.0, chk_duality),
    Check("norms", "bmo_cos", 0.0, chk_bmo_cos),
]
CHECK_IDS = {c.id: c for c in CHECKS}


def _execute(check: Check, ctx: Context, tolerances: dict) -> CheckResult:
    thr = tolerances.get(check.id, check.threshold)
    try:
        value = float(check.run(ctx))
    except FracHarmError as exc:
        return CheckResult(check.id, False, float("nan"), thr, f"{type(exc).__name__}: {exc}")
    ok = value >= thr if check.sense == "ge" else value <= thr
    return CheckResult(check.id, bool(ok and math.isfinite(value)), value, thr, check.sense)


def run_suite(config: SuiteConfig) -> list:
    """Run every check of each requested suite; results ordered by registry order."""
    results = []
    for suite in config.suites:
        checks = [c for c in CHECKS if c.suite == suite]
        ctxs = [Context(config) for _ in checks]
        t0 = time.perf_counter()
        if config.threads > 1:
            with ThreadPoolExecutor(max_workers=config.threads) as pool:
                out = list(pool.map(lambda a: _execute(a[0], a[1], config.tolerances), zip(checks, ctxs)))
        else:
            out = [_execute(c, x, config.tolerances) for c, x in zip(checks, ctxs)]
        res = SuiteResult(suite, out, time.perf_counter() - t0)
        for x in ctxs:
            res.ratios.extend(x.ratios)
            res.artifacts.update(x.artifacts)
        res.ratios.sort(key=lambda r: (r.estimate, r.grid[1], r.seed))
        results.append(res)
    return results


def _csv_text(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_report(results, directory) -> list:
    """CSV per suite plus ``summary.json``; no timings, so reruns are byte-identical."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    summary = {}
    for res in results:
        rows = [[c.check, "pass" if c.passed else "fail", repr(c.value), repr(c.threshold), c.detail]
                for c in sorted(res.checks, key=lambda c: c.check)]
        p = d / f"{res.suite}.csv"
        p.write_text(_csv_text(["check", "status", "value", "threshold", "detail"], rows))
        written.append(p)
        entry = {"passed": res.passed, "failed": res.failed,
                 "failed_checks": [c.check for c in res.checks if not c.passed]}
        if res.ratios:
            p = d / "estimate_ratios.csv"
            p.write_text(_csv_text(["id", "seed", "N", "left", "right", "ratio"], [r.row() for r in res.ratios]))
            written.append(p)
            per = {}
            for r in res.ratios:
                per[r.estimate] = max(per.get(r.estimate, 0.0), r.ratio)
            entry["max_ratio"] = {k: per[k] for k in sorted(per)}
        for name, (cfg, state, trace) in sorted(res.artifacts.items()):
            p = d / f"{name}_trace.csv"
            p.write_text(_csv_text(["iter", "energy", "residual", "tau"],
                                   [[i, repr(e), repr(r), repr(t)] for i, e, r, t in trace]))
            written.append(p)
            written.extend(save_field(d / f"{name}_field", cfg.grid, state.u))
        summary[res.suite] = entry
    p = d / "summary.json"
    p.write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    written.append(p)
    return written
