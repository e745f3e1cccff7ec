"""Declarative Monte Carlo experiments and their reports.

An experiment is described by an :class:`ExperimentConfig` (usually parsed from
a small TOML document).  :func:`run_experiment` runs its replications and
returns a :class:`RunReport`.  Replication ``r`` draws only from the stream
keyed by ``(seed, r)``, and results are merged in replication order, so a
report does not depend on the thread count.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np
import tomli

from . import theory
from .distributions import DistributionSpec, Weibull, make_distribution, weibull
from .errors import ConfigError, InvalidParameter, ParseError, ResourceError, StableMatchError
from .matching import DIRECT_ENGINE_CAP, CostMatrix, generate_instance, greedy_stable_matching
from .recursion import (
    CostSequence,
    check_cuts,
    default_cuts,
    resample_coordinate,
    sample_exp_sequence,
    segment_costs,
    transform_sequence,
)
from .rng import stream
from .stats import EcdfSample, ks_statistic, ks_two_sample, normal_cdf, standardize, summarize

log = logging.getLogger(__name__)

EXPERIMENTS = (
    "typical_cost",
    "total_cost_lln",
    "variance_limit",
    "clt",
    "segments",
    "engine_equivalence",
    "gamma_table",
    "coupling_check",
)
ENGINES = ("recursion", "direct")
FORMATS = ("json", "csv")
THREADS_ENV = "STABLEMATCH_THREADS"
DEFAULT_GAMMA_GRID = (2.1, 2.25, 2.5, 2.75, 3.0, 3.5, 4.0, 5.0, 6.0, 7.0, 8.0)
METRICS_CSV_HEADER = ("experiment", "metric", "value")
GAMMA_CSV_HEADER = ("d", "gamma", "abs_error_estimate")
PLOT_CSV_HEADER = ("x", "ecdf", "limit_cdf")

# pass/fail thresholds used by --check
KS_TYPICAL = 0.03
KS_ENGINE = 0.035
KS_CLT = 0.05
LLN_TOL_WEIBULL = 0.03
LLN_TOL_COUPLED = 0.06
VARIANCE_TOL = 0.15
BULK_SHARE = (0.85, 1.15)


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


@dataclass
class ExperimentConfig:
    experiment: str
    n: int = 1000
    reps: int = 1000
    dist: DistributionSpec = field(default_factory=lambda: DistributionSpec("exponential"))
    engine: str = "recursion"
    seed: int = 0
    cuts: tuple[int, int] | None = None
    kappa_power: float = 4.0
    threads: int = 1
    output: str | None = None
    format: str = "json"
    d_grid: tuple[float, ...] = DEFAULT_GAMMA_GRID
    tol: float = 1e-8
    direct_cap: int = DIRECT_ENGINE_CAP

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "n": self.n,
            "reps": self.reps,
            "dist": self.dist.to_dict(),
            "engine": self.engine,
            "seed": self.seed,
            "cuts": None if self.cuts is None else list(self.cuts),
            "kappa_power": self.kappa_power,
            "output": self.output,
            "format": self.format,
            "d_grid": list(self.d_grid),
            "tol": self.tol,
        }


@dataclass
class RunReport:
    experiment: str
    config: dict
    metrics: dict
    checks: dict
    seed_lineage: dict
    table: list | None = None
    plot_data: list | None = None
    wall_time: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


# -- config parsing ---------------------------------------------------------

_TOML_LINE = re.compile(r"line (\d+)")


def _field(raw, name, conv, default=None, check=None, message=None):
    if name not in raw:
        return default
    value = raw[name]
    try:
        value = conv(value)
    except (TypeError, ValueError):
        raise ParseError(f"cannot interpret {value!r}", field=name) from None
    if check is not None and not check(value):
        raise ParseError(message or f"invalid value {value!r}", field=name)
    return value


def _as_int(v):
    if isinstance(v, bool):
        raise TypeError
    if isinstance(v, float):
        if not v.is_integer():
            raise ValueError
        return int(v)
    return int(v)


def _normalize_experiment(name: str) -> str:
    key = str(name).strip().lower().replace("-", "_")
    aliases = {
        "typicalcost": "typical_cost",
        "totalcostlln": "total_cost_lln",
        "lln": "total_cost_lln",
        "variancelimit": "variance_limit",
        "variance": "variance_limit",
        "enginequivalence": "engine_equivalence",
        "engineequivalence": "engine_equivalence",
        "gammatable": "gamma_table",
        "couplingcheck": "coupling_check",
    }
    key = aliases.get(key.replace("_", ""), key)
    if key not in EXPERIMENTS:
        raise ParseError(f"unknown experiment {name!r}; expected one of {', '.join(EXPERIMENTS)}", field="experiment")
    return key


def config_from_mapping(raw: Mapping[str, Any]) -> ExperimentConfig:
    raw = dict(raw)
    if "experiment" not in raw:
        raise ParseError("missing required key", field="experiment")
    experiment = _normalize_experiment(raw["experiment"])
    known = {"experiment", "n", "reps", "d", "dist", "engine", "seed", "cuts", "kappa_power",
             "threads", "output", "format", "d_grid", "tol", "direct_cap"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ParseError(f"unknown keys {unknown}", field=unknown[0])

    n = _field(raw, "n", _as_int, 1000, lambda v: v >= 1, "n must be a positive integer")
    reps = _field(raw, "reps", _as_int, 1000, lambda v: v >= 1, "reps must be a positive integer")
    seed = _field(raw, "seed", _as_int, 0, lambda v: 0 <= v < 2 ** 64, "seed must be a 64-bit unsigned integer")
    engine = _field(raw, "engine", lambda v: str(v).lower(), "recursion", lambda v: v in ENGINES,
                    f"engine must be one of {ENGINES}")
    threads = _field(raw, "threads", _as_int, None, lambda v: v >= 1, "threads must be >= 1")
    threads = default_threads() if threads is None else threads
    d_top = _field(raw, "d", float, None, lambda v: math.isfinite(v) and v > 0, "d must be positive")
    kappa_power = _field(raw, "kappa_power", float, 4.0, lambda v: v > 0, "kappa_power must be positive")
    tol = _field(raw, "tol", float, 1e-8, lambda v: v > 0, "tol must be positive")
    direct_cap = _field(raw, "direct_cap", _as_int, DIRECT_ENGINE_CAP, lambda v: v >= 1)

    output = raw.get("output")
    fmt = "json"
    if isinstance(output, Mapping):
        out_tab = dict(output)
        fmt = str(out_tab.pop("format", fmt)).lower()
        output = out_tab.pop("path", None)
        if out_tab:
            raise ParseError(f"unknown keys {sorted(out_tab)}", field="output")
    fmt = _field(raw, "format", lambda v: str(v).lower(), fmt)
    if fmt not in FORMATS:
        raise ParseError(f"format must be one of {FORMATS}", field="format")
    if output is not None and not isinstance(output, str):
        raise ParseError("output path must be a string", field="output")

    if "dist" in raw:
        dist_raw = raw["dist"]
        if isinstance(dist_raw, str):
            dist_raw = {"kind": dist_raw}
        if not isinstance(dist_raw, Mapping):
            raise ParseError("dist must be a table such as { kind = \"weibull\", d = 3.0 }", field="dist")
        dist_raw = dict(dist_raw)
        if d_top is not None and "d" not in dist_raw and str(dist_raw.get("kind", "")).lower() in ("weibull", "maxuniform"):
            dist_raw["d"] = d_top
        spec = DistributionSpec.from_mapping(dist_raw)
    elif d_top is not None:
        spec = DistributionSpec("weibull", d=d_top)
    else:
        spec = DistributionSpec("exponential")
    try:
        dist = make_distribution(spec)
    except InvalidParameter as exc:
        raise ParseError(str(exc), field="dist") from None
    if d_top is not None and not math.isclose(dist.d, d_top):
        raise ParseError(f"d={d_top} conflicts with the distribution's pseudo-dimension {dist.d}", field="d")

    cuts = None
    if "cuts" in raw:
        c = raw["cuts"]
        try:
            if isinstance(c, Mapping):
                cuts = (_as_int(c["lambda"]), _as_int(c["kappa"]))
            else:
                lam, kap = c
                cuts = (_as_int(lam), _as_int(kap))
        except (KeyError, TypeError, ValueError):
            raise ParseError("cuts must be { lambda = <int>, kappa = <int> }", field="cuts") from None
        try:
            check_cuts(n, *cuts)
        except StableMatchError as exc:
            raise ParseError(str(exc), field="cuts") from None
    elif n >= 3 and dist.d > 1:
        cuts = default_cuts(n, dist.d, kappa_power)

    d_grid = DEFAULT_GAMMA_GRID
    if "d_grid" in raw:
        try:
            d_grid = tuple(float(x) for x in raw["d_grid"])
        except (TypeError, ValueError):
            raise ParseError("d_grid must be a list of numbers", field="d_grid") from None
        if not d_grid or any(not x > 2 for x in d_grid):
            raise ParseError("every d in d_grid must exceed 2", field="d_grid")

    cfg = ExperimentConfig(
        experiment=experiment, n=n, reps=reps, dist=spec, engine=engine, seed=seed, cuts=cuts,
        kappa_power=kappa_power, threads=threads, output=output, format=fmt, d_grid=d_grid, tol=tol,
        direct_cap=direct_cap,
    )
    validate_config(cfg)
    return cfg


def parse_config(text: str) -> ExperimentConfig:
    """Parse a TOML experiment description, filling defaults and validating it."""
    try:
        raw = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = _TOML_LINE.search(str(exc))
        raise ParseError(str(exc), line=int(m.group(1)) if m else None) from None
    return config_from_mapping(raw)


def validate_config(cfg: ExperimentConfig) -> None:
    dist = make_distribution(cfg.dist)
    d = dist.d
    if cfg.engine == "direct" and cfg.n > cfg.direct_cap:
        raise ParseError(f"direct engine limited to n <= {cfg.direct_cap}", field="n")
    needs = {"total_cost_lln": 1.0, "variance_limit": 2.0, "clt": 2.0, "segments": 1.0}
    if cfg.experiment in needs and not d > needs[cfg.experiment]:
        raise ParseError(f"{cfg.experiment} needs pseudo-dimension d > {needs[cfg.experiment]:g}, got {d:g}", field="d")
    if cfg.experiment in ("variance_limit", "clt") and cfg.reps < 2:
        raise ParseError("variance estimates need reps >= 2", field="reps")
    if cfg.experiment == "segments":
        if cfg.n < 3:
            raise ParseError("segments needs n >= 3", field="n")
        if cfg.cuts is None:
            cfg.cuts = default_cuts(cfg.n, d, cfg.kappa_power)


# -- replication machinery --------------------------------------------------

def replicate(fn: Callable[[int, np.random.Generator], Any], reps: int, seed: int, threads: int = 1) -> list:
    """Run ``fn(r, stream(seed, r))`` for every replication; results in replication order."""
    if threads <= 1 or reps < 2:
        return [fn(r, stream(seed, r)) for r in range(reps)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: fn(r, stream(seed, r)), range(reps)))


def _matched_costs(cfg: ExperimentConfig, dist, rng) -> np.ndarray:
    if cfg.engine == "direct":
        m = generate_instance(cfg.n, dist, rng, cap=cfg.direct_cap)
        return np.sort(greedy_stable_matching(m).pair_costs)
    seq = sample_exp_sequence(cfg.n, rng)
    return transform_sequence(seq, dist).values


def _finite(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _ratio(a, b):
    return _finite(a / b) if b not in (0, None) else None


def _run_typical(cfg, dist):
    n, d = cfg.n, dist.d

    def one(r, rng):
        values = _matched_costs(cfg, dist, rng)
        return float(values[rng.integers(n)])

    costs = np.array(replicate(one, cfg.reps, cfg.seed, cfg.threads))
    scaled = n ** (1.0 / d) * costs
    sample = EcdfSample(scaled)
    ks = ks_statistic(sample, lambda x: theory.limit_cdf_typical(d, x, dist.a))
    s = summarize(scaled)
    metrics = {"ks_limit": ks, "mean_scaled": s.mean, "stderr_scaled": _finite(s.stderr)}
    if d > 1:
        ref = theory.moment_limit(1.0, d, dist.a)
        metrics.update({"moment_reference": ref, "moment_ratio": _ratio(s.mean, ref)})
    plot = [[float(x), float(e), float(f)] for x, e, f in
            zip(sample.values, np.arange(1, sample.count + 1) / sample.count,
                theory.limit_cdf_typical(d, sample.values, dist.a))]
    checks = {"ks_limit": ks <= KS_TYPICAL}
    return metrics, checks, None, plot


def _totals(cfg, dist):
    def one(r, rng):
        return math.fsum(_matched_costs(cfg, dist, rng))

    return np.array(replicate(one, cfg.reps, cfg.seed, cfg.threads))


def _run_lln(cfg, dist):
    d = dist.d
    scaled = _totals(cfg, dist) / cfg.n ** (1.0 - 1.0 / d)
    s = summarize(scaled)
    ref = theory.lln_constant(d, dist.a)
    ratio = s.mean / ref
    tol = LLN_TOL_WEIBULL if isinstance(dist, Weibull) else LLN_TOL_COUPLED
    metrics = {"mean_scaled": s.mean, "stderr_scaled": _finite(s.stderr), "reference": ref,
               "ratio": ratio, "tolerance": tol}
    return metrics, {"lln_ratio": abs(ratio - 1.0) <= tol}, None, None


def _clt_ks(totals):
    return ks_statistic(standardize(totals), normal_cdf)


def _run_variance(cfg, dist):
    d = dist.d
    totals = _totals(cfg, dist)
    s = summarize(totals)
    scaled_var = s.variance / cfg.n ** (1.0 - 2.0 / d)
    ref = theory.variance_constant(d, dist.a, tol=min(cfg.tol, 1e-10))
    ks = _clt_ks(totals)
    metrics = {"variance": s.variance, "variance_scaled": scaled_var, "reference": ref,
               "ratio": scaled_var / ref, "mean": s.mean, "ks_normal": ks}
    checks = {"variance_ratio": abs(scaled_var / ref - 1.0) <= VARIANCE_TOL, "ks_normal": ks <= KS_CLT}
    return metrics, checks, None, None


def _run_clt(cfg, dist):
    totals = _totals(cfg, dist)
    ks = _clt_ks(totals)
    s = summarize(totals)
    return {"ks_normal": ks, "mean": s.mean, "variance": s.variance}, {"ks_normal": ks <= KS_CLT}, None, None


def _run_segments(cfg, dist):
    lam, kap = cfg.cuts

    def one(r, rng):
        values = _matched_costs(cfg, dist, rng)
        split = segment_costs(CostSequence(base=values, increments=None, values=values, view="values"), lam, kap)
        return split.w1, split.w2, split.w3

    w = np.array(replicate(one, cfg.reps, cfg.seed, cfg.threads))
    total = w.sum(axis=1)
    var_total = float(np.var(total, ddof=1))
    var = [float(np.var(w[:, i], ddof=1)) for i in range(3)]
    share = var[1] / var_total
    metrics = {
        "lambda_n": lam, "kappa_n": kap, "m_n": cfg.n - kap,
        "var_w1": var[0], "var_w2": var[1], "var_w3": var[2], "var_total": var_total,
        "bulk_variance_share": share,
        "bulk_mean_share": float(w[:, 1].mean() / total.mean()),
    }
    return metrics, {"bulk_variance_share": BULK_SHARE[0] <= share <= BULK_SHARE[1]}, None, None


def _run_engine_equivalence(cfg, dist):
    if cfg.n > cfg.direct_cap:
        raise ResourceError(f"engine equivalence runs the direct engine; n={cfg.n} exceeds {cfg.direct_cap}")

    def one(r, rng):
        # rng is unused: each engine gets its own sub-stream of replication r
        direct = np.sort(greedy_stable_matching(generate_instance(cfg.n, dist, stream(cfg.seed, r, 0), cfg.direct_cap)).pair_costs)
        rec = transform_sequence(sample_exp_sequence(cfg.n, stream(cfg.seed, r, 1)), dist).values
        return direct[0], math.fsum(direct), rec[0], math.fsum(rec)

    out = np.array(replicate(one, cfg.reps, cfg.seed, cfg.threads))
    ks_y1 = ks_two_sample(out[:, 0], out[:, 2])
    ks_total = ks_two_sample(out[:, 1], out[:, 3])
    metrics = {
        "ks_y1": ks_y1, "ks_total": ks_total,
        "mean_y1_direct": float(out[:, 0].mean()), "mean_y1_recursion": float(out[:, 2].mean()),
        "mean_total_direct": float(out[:, 1].mean()), "mean_total_recursion": float(out[:, 3].mean()),
    }
    return metrics, {"ks_y1": ks_y1 <= KS_ENGINE, "ks_total": ks_total <= KS_ENGINE}, None, None


def _run_gamma_table(cfg, dist):
    rows = theory.gamma_table(sorted(cfg.d_grid), cfg.tol)
    values = [v for _, v, _ in rows]
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    finite = all(math.isfinite(v) and v > 0 for v in values)
    metrics = {"points": len(rows), "max_abs_error_estimate": max(e for _, _, e in rows)}
    table = [[d, v, e] for d, v, e in rows]
    return metrics, {"finite_positive": finite, "decreasing_in_d": decreasing}, table, None


def _run_coupling(cfg, dist):
    n, d = cfg.n, dist.d
    wei = weibull(d)
    scale = dist.a ** (-1.0 / d)

    if cfg.engine == "direct":
        def one(r, rng):
            y = rng.standard_exponential((n, n))
            a = greedy_stable_matching(CostMatrix(wei.quantile_couple(y))).partner
            b = greedy_stable_matching(CostMatrix(dist.quantile_couple(y))).partner
            return float(np.array_equal(a, b))

        agree = np.array(replicate(one, cfg.reps, cfg.seed, cfg.threads))
        metrics = {"matching_agreement": float(agree.mean())}
        return metrics, {"matchings_coincide": bool(agree.min() == 1.0)}, None, None

    def one(r, rng):
        seq = sample_exp_sequence(n, rng)
        tilde = transform_sequence(seq, wei).values * scale
        hat = transform_sequence(seq, dist).values
        u = rng.integers(n)
        ordered = bool(np.all(np.diff(hat) >= 0))
        return (n ** (1.0 / d) * abs(tilde[u] - hat[u]), math.fsum(hat) / math.fsum(tilde), float(ordered))

    out = np.array(replicate(one, cfg.reps, cfg.seed, cfg.threads))
    metrics = {
        "mean_scaled_typical_gap": float(out[:, 0].mean()),
        "mean_total_ratio": float(out[:, 1].mean()),
        "order_preserved_fraction": float(out[:, 2].mean()),
    }
    return metrics, {"order_preserved": bool(out[:, 2].min() == 1.0)}, None, None


_RUNNERS = {
    "typical_cost": _run_typical,
    "total_cost_lln": _run_lln,
    "variance_limit": _run_variance,
    "clt": _run_clt,
    "segments": _run_segments,
    "engine_equivalence": _run_engine_equivalence,
    "gamma_table": _run_gamma_table,
    "coupling_check": _run_coupling,
}


def run_experiment(cfg: ExperimentConfig) -> RunReport:
    validate_config(cfg)
    dist = make_distribution(cfg.dist)
    log.info("running %s: n=%d reps=%d dist=%s engine=%s seed=%d threads=%d",
             cfg.experiment, cfg.n, cfg.reps, dist, cfg.engine, cfg.seed, cfg.threads)
    t0 = time.perf_counter()
    metrics, checks, table, plot = _RUNNERS[cfg.experiment](cfg, dist)
    wall = time.perf_counter() - t0
    metrics = {k: (_finite(v) if isinstance(v, (float, np.floating)) else v) for k, v in metrics.items()}
    checks = {k: bool(v) for k, v in checks.items()}
    config = cfg.to_dict()
    config["dist_metadata"] = {"d": dist.d, "a": dist.a, "zeta": _finite(dist.zeta) if dist.zeta is not None else None}
    lineage = {"master_seed": cfg.seed, "generator": "philox4x64", "stream_key": "(seed, replication[, engine])",
               "replications": cfg.reps}
    log.info("%s finished in %.2fs", cfg.experiment, wall)
    return RunReport(cfg.experiment, config, metrics, checks, lineage, table, plot, wall)


# -- report emission --------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return "" if v is None else str(v)


def report_csv(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report.experiment == "gamma_table" and report.table is not None:
        w.writerow(GAMMA_CSV_HEADER)
        for row in report.table:
            w.writerow([_fmt(float(x)) for x in row])
        return buf.getvalue()
    w.writerow(METRICS_CSV_HEADER)
    for k, v in report.metrics.items():
        w.writerow([report.experiment, k, _fmt(v)])
    for k, v in report.checks.items():
        w.writerow([report.experiment, f"check_{k}", _fmt(v)])
    return buf.getvalue()


def plot_csv(report: RunReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PLOT_CSV_HEADER)
    for row in report.plot_data or []:
        w.writerow([_fmt(float(x)) for x in row])
    return buf.getvalue()


def emit_report(report: RunReport, format: str = "json", path=None) -> list[Path]:
    """Write the report; returns the files written.

    With ``path=None`` the report goes to standard output.  A typical-cost run
    also writes ``<stem>_plot.csv`` with ``(x, ecdf, limit_cdf)`` rows.
    """
    if format not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}")
    body = report.to_json() + "\n" if format == "json" else report_csv(report)
    if path is None:
        print(body, end="")
        return []
    path = Path(path)
    if path.suffix == "":
        path = path.with_suffix("." + format)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(body)
    written = [path]
    if report.plot_data:
        plot_path = path.with_name(path.stem + "_plot.csv")
        plot_path.write_text(plot_csv(report))
        written.append(plot_path)
    return written


# -- coupled-resampling decay -----------------------------------------------

def resampling_decay(n: int, d: float, js, reps: int, seed: int, cuts: tuple[int, int]) -> dict:
    """Estimate ``E[(W2 - W2^k)**2]`` for ``k = n + 1 - j`` over the given ``j`` values.

    ``W2`` is the bulk cost of the Weibull(d) sequence and ``W2^k`` the same
    sum after resampling the k-th increment.  Returns the estimates and the
    least-squares slope of their logarithm against ``log j``.
    """
    lam, kap = cuts
    check_cuts(n, lam, kap)
    m = n - kap
    js = np.asarray(sorted(set(int(j) for j in js)))
    ks = n + 1 - js
    if np.any(ks < 1) or np.any(ks > m):
        raise ConfigError(f"every k = n + 1 - j must lie in 1..m_n={m}")
    inv = 1.0 / d

    def one(r, rng):
        seq = sample_exp_sequence(n, rng)
        out = np.empty(len(ks))
        for i, k in enumerate(ks):
            alt = resample_coordinate(seq, int(k), rng)
            # only indices >= k move, so sum the differences there directly
            lo = max(int(k), lam) - 1
            out[i] = math.fsum(alt.base[lo:m] ** inv - seq.base[lo:m] ** inv) ** 2
        return out

    sq = np.array(replicate(one, reps, seed))
    mean_sq = sq.mean(axis=0)
    slope = float(np.polyfit(np.log(js), np.log(mean_sq), 1)[0])
    return {"j": js.tolist(), "k": ks.tolist(), "mean_sq_diff": mean_sq.tolist(), "slope": slope}
