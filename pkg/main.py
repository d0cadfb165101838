"""
loewner-toolkit command line
============================
Subcommands:
  trace        driving CSV  -> trace CSV
  drive        curve CSV    -> driving CSV (from infinity or an interior viewpoint)
  metric       two curve CSVs -> distance as JSON
  sle-sample   SLE driving (or trace) CSV
  example      counterexample family member -> curve CSV
  analyze      harmonic measure and diagnostics, JSON on stdout
  converge     run a suite from a JSON experiment config
  report       re-emit a saved JSON report as csv, json or svg

Exit codes: 0 success, 2 verdicts differ from the expected ones, 1 error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from config.config import Config
from curves.curve import reverse
from curves.distances import hausdorff_distance, uniform_distance
from curves.io import read_curve_csv, write_curve_csv
from geometry.points import ComplexPoint

logger = logging.getLogger("loewner")

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2
DEFAULT_VARIANTS = {"figure_eight": "a"}


def _point(text: str | None) -> ComplexPoint | None:
    """Parse ``re,im`` or ``inf``."""
    if text is None:
        return None
    if text.strip().lower() in ("inf", "infinity"):
        return ComplexPoint.infinity()
    re, im = (float(v) for v in text.split(","))
    return ComplexPoint(re, im)


def _dump(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, default=float)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        print(text)


# =============================================================================
# COMMANDS
# =============================================================================

def cmd_trace(args) -> int:
    from loewner.io import read_driving
    from loewner.solve import solve_chordal_trace, solve_radial_trace

    W = read_driving(args.driving)
    trace = solve_radial_trace(W, args.n) if W.kind == "radial" else solve_chordal_trace(W, args.n)
    out = args.out or "trace.csv"
    write_curve_csv(trace, out)
    logger.info("trace with %d samples written to %s", len(trace), out)
    return EXIT_OK


def cmd_drive(args) -> int:
    from loewner.io import write_driving
    from loewner.unzip import unzip_chordal, unzip_radial_at

    c = read_curve_csv(args.curve, args.domain)
    x = _point(args.x)
    W = unzip_chordal(c) if x is None or x.at_infinity else unzip_radial_at(c, x)
    out = args.out or "driving.csv"
    write_driving(W, out, source=c)
    logger.info("driving function with %d samples written to %s", len(W), out)
    return EXIT_OK


def cmd_metric(args) -> int:
    from metrics.driving import d_cap_l, d_cap_r, d_locally_uniform

    c1 = read_curve_csv(args.curve1, args.domain)
    c2 = read_curve_csv(args.curve2, args.domain)
    x = _point(args.x) or ComplexPoint(0.0, 1.0)
    if args.metric == "d_cap_r":
        payload = d_cap_r(c1, c2, x).model_dump()
    elif args.metric == "d_cap_l":
        payload = d_cap_l(reverse(c1), reverse(c2), x).model_dump()
    elif args.metric == "d_f":
        payload = {"metric": "d_f", "value": d_locally_uniform(c1, c2, "forward")}
    elif args.metric == "d_b":
        payload = {"metric": "d_b", "value": d_locally_uniform(c1, c2, "backward")}
    elif args.metric == "d_strong":
        payload = {"metric": "d_strong", "value": uniform_distance(c1, c2)}
    else:
        payload = {"metric": "hausdorff", "value": hausdorff_distance(c1, c2)}
    _dump(payload, args.out)
    return EXIT_OK


def cmd_sle_sample(args) -> int:
    from loewner.io import write_driving
    from sle.config import SleConfig
    from sle.sampler import sample_chordal_driving, sample_radial_sle_kr, sample_sle_trace

    args.out = args.out or ("trace.csv" if args.trace else "driving.csv")
    cfg = SleConfig(kappa=args.kappa, rho=args.rho, T=args.T, dt=args.dt, seed=Config.rng_seed(args.seed))
    if args.trace:
        write_curve_csv(sample_sle_trace(cfg, viewpoint=_point(args.x)), args.out)
    elif args.radial:
        W, _ = sample_radial_sle_kr(cfg)
        write_driving(W, args.out)
    else:
        write_driving(sample_chordal_driving(cfg), args.out)
    logger.info("SLE sample (kappa=%.3g, seed=%d) written to %s", cfg.kappa, cfg.seed, args.out)
    return EXIT_OK


def cmd_example(args) -> int:
    from families.registry import generate, generate_canonical
    from families.spec import FamilySpec

    spec = FamilySpec(
        family=args.family, j=args.j, variant=args.variant or DEFAULT_VARIANTS.get(args.family, "plain"),
        depth=args.depth, height=args.height,
    )
    c = generate_canonical(spec) if args.canonical else generate(spec)
    args.out = args.out or f"{spec.family}_{spec.j}.csv"
    write_curve_csv(c, args.out)
    logger.info("%s j=%d (%s) with %d samples written to %s", spec.family, spec.j, spec.variant, len(c), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    from analysis import diagnostics, harmonic, montecarlo

    result: dict = {"op": args.op}
    if args.op == "hit":
        c = read_curve_csv(args.curve, args.domain)
        x = _point(args.x)
        result["conformal"] = harmonic.hitting_prob_conformal(c, x, args.s, args.t)
        if args.walkers:
            result["monte_carlo"] = montecarlo.hitting_prob_mc(
                c, x, args.s, args.t, walkers=args.walkers, step=args.step, seed=args.seed
            )
    elif args.op == "alpha":
        c = read_curve_csv(args.curve, args.domain)
        result["alpha"] = harmonic.alpha_left(c, _point(args.x), _point(args.z), _point(args.ref), side=args.side)
    elif args.op == "cara":
        from loewner.io import read_driving

        W1, W2 = read_driving(args.driving), read_driving(args.driving2)
        result["sup"] = diagnostics.caratheodory_sup(W1, W2, _point(args.x), args.t, args.eps)
    elif args.op == "tsep":
        c = read_curve_csv(args.curve, args.domain)
        result["diameter"] = diagnostics.time_separation_diag(c, args.t, args.eps)
    else:
        c = read_curve_csv(args.curve, args.domain)
        weights = [(_point(p), float(w)) for p, w in (item.split("@") for item in args.weights)]
        result["s"] = diagnostics.harmonic_param_s(c, weights, args.t)
    _dump(result, args.out)
    return EXIT_OK


def _emit_all(report, out: str | None, name: str) -> None:
    from harness.report import emit_report

    base = Path(out or Config.REPORT_DIR) / name
    for fmt in ("json", "csv", "svg"):
        emit_report(report, fmt, base.with_suffix(f".{fmt}"))


def cmd_converge(args) -> int:
    from harness.config import ExperimentConfig
    from harness.graphs import run_suite

    cfg = ExperimentConfig.load(args.config)
    update = {k: v for k, v in (("seed", args.seed), ("threads", args.threads)) if v is not None}
    if update:
        cfg = cfg.model_copy(update=update)
    report = run_suite(cfg)
    _emit_all(report, args.out or cfg.out, cfg.name)
    for v in report.verdicts:
        logger.info("%-10s x=%s %s", v.metric, v.x, v.verdict)
    mismatches = report.meta.get("mismatches") or []
    for m in mismatches:
        logger.warning("verdict mismatch: %s", m)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_report(args) -> int:
    from harness.report import emit_report, load_report

    report = load_report(args.report)
    out = args.out or str(Path(args.report).with_suffix(f".{args.format}"))
    emit_report(report, args.format, out)
    return EXIT_OK


# =============================================================================
# PARSER
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loewner", description="Loewner evolution toolkit")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--domain", default="half_plane", choices=["half_plane", "disc"])
        p.set_defaults(func=func)
        return p

    p = add("trace", cmd_trace, "solve the forward Loewner equation")
    p.add_argument("driving")
    p.add_argument("--n", type=int, default=None)

    p = add("drive", cmd_drive, "unzip a curve into its driving function")
    p.add_argument("curve")
    p.add_argument("--x", default=None, help="viewpoint re,im (default: infinity)")

    p = add("metric", cmd_metric, "distance between two curves")
    p.add_argument("curve1")
    p.add_argument("curve2")
    p.add_argument("--metric", default="d_cap_r",
                   choices=["d_cap_r", "d_cap_l", "d_f", "d_b", "d_strong", "hausdorff"])
    p.add_argument("--x", default=None)

    p = add("sle-sample", cmd_sle_sample, "sample an SLE driving function or trace")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--radial", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--x", default=None)

    p = add("example", cmd_example, "generate a counterexample family member")
    p.add_argument("--family", required=True,
                   choices=["ladder", "three_segment", "dyadic_loops", "hooks", "figure_eight",
                            "half_strip", "perturbed_semicircle"])
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--variant", default=None)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--height", type=float, default=None)
    p.add_argument("--canonical", action="store_true")

    p = add("analyze", cmd_analyze, "harmonic measure and curve diagnostics")
    p.add_argument("--op", required=True, choices=["hit", "alpha", "cara", "tsep", "sparam"])
    p.add_argument("--curve", default=None)
    p.add_argument("--driving", default=None)
    p.add_argument("--driving2", default=None)
    p.add_argument("--x", default=None)
    p.add_argument("--z", default=None)
    p.add_argument("--ref", default=None, help="reference point re,im on the left boundary")
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--side", default="left", choices=["left", "right"])
    p.add_argument("--walkers", type=int, default=0)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--weights", nargs="*", default=[], help="re,im@weight items")

    p = add("converge", cmd_converge, "run a suite from a JSON config")
    p.add_argument("config")

    p = add("report", cmd_report, "re-emit a saved report")
    p.add_argument("report")
    p.add_argument("--format", default="csv", choices=["csv", "json", "svg"])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    Config.configure_logging(args.log_level)
    try:
        return args.func(args)
    except Exception as exc:
        logger.error("%s failed: %s", args.command, exc)
        logger.debug("traceback", exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
