"""Command-line front end: one subcommand per experiment.

Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
3 threshold failure when ``--check`` is given.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import tomli

from .errors import ConfigError, ParseError, ResourceError, StableMatchError
from .experiments import EXPERIMENTS, FORMATS, ENGINES, THREADS_ENV, config_from_mapping, emit_report, run_experiment

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_CHECK = 3

log = logging.getLogger("stablematch")


def parse_dist(text: str) -> dict:
    """``kind[:key=value,...]``, e.g. ``chisquared:k=6`` or ``weibull:d=3,scale=2``."""
    kind, _, rest = text.partition(":")
    out: dict = {"kind": kind.strip()}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise ParseError(f"expected key=value in {item!r}", field="dist")
        try:
            out[key.strip()] = int(value) if value.strip().lstrip("-").isdigit() else float(value)
        except ValueError:
            raise ParseError(f"non-numeric parameter {item!r}", field="dist") from None
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="TOML experiment file; flags given here override it")
    p.add_argument("--n", type=int, help="graph size")
    p.add_argument("--reps", type=int, help="number of replications")
    p.add_argument("--d", type=float, help="pseudo-dimension (Weibull shape when no --dist is given)")
    p.add_argument("--dist", type=str, help="edge-cost law, kind[:key=value,...]")
    p.add_argument("--engine", choices=ENGINES)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, help=f"worker threads (default from ${THREADS_ENV}, else 1)")
    p.add_argument("--out", type=str, help="output path; standard output when omitted")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--lambda", dest="lambda_n", type=int, help="override lambda_n")
    p.add_argument("--kappa", dest="kappa_n", type=int, help="override kappa_n")
    p.add_argument("--kappa-power", type=float, help="exponent of log n in the default kappa_n")
    p.add_argument("--d-grid", type=str, help="comma-separated d values (gamma-table)")
    p.add_argument("--tol", type=float, help="quadrature tolerance (gamma-table)")
    p.add_argument("--check", action="store_true", help="exit with status 3 when a threshold check fails")
    p.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
    p.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stablematch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more progress output on stderr")
    parser.add_argument("-q", "--quiet", action="store_true", help="only errors on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name.replace("_", "-"), help=f"run the {name.replace('_', ' ')} experiment")
        _add_common(p)
        p.set_defaults(experiment=name)
    p = sub.add_parser("run", help="run the experiment named in a config file")
    _add_common(p)
    p.set_defaults(experiment=None)
    return parser


def _load_config_file(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        return tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def config_from_args(args: argparse.Namespace):
    raw: dict = _load_config_file(args.config) if args.config else {}
    if args.experiment is not None:
        if "experiment" in raw and str(raw["experiment"]).replace("-", "_").lower() != args.experiment:
            raise ParseError(f"config names experiment {raw['experiment']!r} but the subcommand is {args.experiment!r}",
                             field="experiment")
        raw["experiment"] = args.experiment
    elif "experiment" not in raw:
        raise ParseError("'run' needs a config file naming the experiment", field="experiment")

    for key in ("n", "reps", "engine", "seed", "threads", "format", "kappa_power", "tol"):
        value = getattr(args, key)
        if value is not None:
            raw[key] = value
    if args.d is not None:
        raw["d"] = args.d
    if args.dist is not None:
        raw["dist"] = parse_dist(args.dist)
        if args.d is not None and raw["dist"]["kind"].lower() in ("weibull", "maxuniform", "max_uniform"):
            raw["dist"].setdefault("d", args.d)
    if args.out is not None:
        out = raw.get("output")
        if isinstance(out, dict):
            out["path"] = args.out
        else:
            raw["output"] = args.out
    if args.d_grid is not None:
        try:
            raw["d_grid"] = [float(x) for x in args.d_grid.split(",") if x.strip()]
        except ValueError:
            raise ParseError(f"bad --d-grid {args.d_grid!r}", field="d_grid") from None
    if args.lambda_n is not None or args.kappa_n is not None:
        cfg = config_from_mapping({k: v for k, v in raw.items() if k != "cuts"})
        lam, kap = cfg.cuts if cfg.cuts is not None else (None, None)
        lam = args.lambda_n if args.lambda_n is not None else lam
        kap = args.kappa_n if args.kappa_n is not None else kap
        if lam is None or kap is None:
            raise ParseError("both cut points are needed when no defaults apply", field="cuts")
        raw["cuts"] = {"lambda": lam, "kappa": kap}
    return config_from_mapping(raw)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.ERROR if args.quiet else (logging.DEBUG if args.verbose > 1 else logging.INFO)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        report = run_experiment(cfg)
        written = emit_report(report, cfg.format, cfg.output)
    except (ConfigError, ResourceError) as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except StableMatchError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILURE
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_FAILURE
    for path in written:
        log.info("wrote %s", path)
    for name, ok in report.checks.items():
        log.info("check %s: %s", name, "pass" if ok else "FAIL")
    if args.check and not report.passed:
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
