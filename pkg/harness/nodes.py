"""
Suite nodes
===========
Each class is one node of a suite pipeline. Nodes read the state, add
their results and hand the state on.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import ks_2samp, qmc
from tqdm import tqdm

from config.config import Config
from curves.curve import Curve, CurveError, resample, reverse
from curves.distances import hausdorff_distance, uniform_distance
from families.generators import figure_eight_limits
from families.registry import family_target, generate_canonical
from families.spec import FamilyError
from geometry.mobius import cayley_inv_array, cdist_array, viewpoint_transport
from geometry.points import ComplexPoint
from harness.config import ExperimentConfigError, UnderpoweredError
from harness.report import Report, ReportRow, SeriesVerdict, trend_verdict
from harness.state import ConvergenceState, LawState, RoundtripState
from loewner.solve import solve_chordal_trace
from loewner.types import DrivingFunction
from loewner.unzip import unzip_chordal, unzip_radial_at
from metrics.driving import d_cap_l, d_cap_r, d_locally_uniform, driving_distance
from sle.config import SleConfig
from sle.sampler import sample_chordal_driving, sample_radial_sle_kr, sample_sle_trace

logger = logging.getLogger(__name__)

X_METRICS = ("d_cap_r", "d_cap_l")
DEFAULT_LAW_VIEWPOINT = (0.3, 0.8)


# =============================================================================
# VIEWPOINTS
# =============================================================================

def _as_point(x: Tuple[float, float]) -> ComplexPoint:
    return ComplexPoint(float(x[0]), float(x[1]))


def _curve_tree(curves: Iterable[Curve]) -> Optional[cKDTree]:
    pts = [c.disc_points() for c in curves]
    if not pts:
        return None
    allp = np.concatenate(pts)
    return cKDTree(np.column_stack([allp.real, allp.imag]))


def default_viewpoint_grid(
    curves: Iterable[Curve],
    size: int | None = None,
    seed: int | None = None,
    min_dist: float | None = None,
) -> List[Tuple[float, float]]:
    """Quasi-random interior viewpoints at cdist >= min_dist from every curve.

    Points come from a scrambled Halton sequence on the Cayley disc and are
    mapped back to the half-plane.
    """
    size = size or Config.PSI_GRID_SIZE
    min_dist = Config.PSI_MIN_DIST if min_dist is None else min_dist
    tree = _curve_tree(curves)
    halton = qmc.Halton(d=2, scramble=True, seed=Config.rng_seed(seed))
    chosen: List[Tuple[float, float]] = []
    for _ in range(50):
        u = halton.random(4 * size)
        w = 0.9 * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
        if tree is not None:
            d, _ = tree.query(np.column_stack([w.real, w.imag]))
            w = w[d >= min_dist]
        z = cayley_inv_array(w)
        for p in z[np.isfinite(z) & (z.imag > 0)]:
            x = (float(p.real), float(p.imag))
            if x not in chosen:
                chosen.append(x)
            if len(chosen) == size:
                return chosen
    raise ExperimentConfigError(f"could not place {size} viewpoints at cdist >= {min_dist} from the curves")


def check_viewpoints(viewpoints: List[Tuple[float, float]], curves: Dict[int, Curve]) -> None:
    """Raise naming the viewpoint and the index of the first curve it lies on."""
    for x in viewpoints:
        z = complex(*x)
        for j, c in curves.items():
            gap = float(np.min(cdist_array(c.half_plane_points(), np.full(len(c), z))))
            if gap <= Config.OBSERVATION_TOL:
                raise ExperimentConfigError(f"viewpoint {x} lies on the curve for j={j}")


def forward_backward_gap(j: int, x: ComplexPoint | complex | None = None,
                         samples_per_unit: int | None = None) -> float:
    """Sup-norm gap between the drivings, seen from x, of the forward and backward figure-eight limits."""
    x = _as_point((0.3, 1.5)) if x is None else (x if isinstance(x, ComplexPoint) else ComplexPoint.from_complex(x))
    forward, backward = figure_eight_limits(j, samples_per_unit)
    return driving_distance(unzip_radial_at(forward, x), unzip_radial_at(backward, x)).sup_term


# =============================================================================
# CONVERGENCE NODES
# =============================================================================

class GenerateNode:
    """Builds the approximants and the target curve."""

    def generate(self, state: ConvergenceState) -> ConvergenceState:
        cfg = state["experiment"]
        curves, errors = {}, {}
        for j in cfg.j_range:
            try:
                curves[j] = generate_canonical(cfg.member(j))
            except (FamilyError, CurveError) as exc:
                logger.warning("family %s j=%d failed: %s", cfg.family.family, j, exc)
                errors[j] = str(exc)
        state["curves"] = curves
        state["curve_errors"] = errors
        state["target"] = family_target(cfg.member(cfg.j_range[-1]), cfg.reference_j)
        if cfg.family.family == "figure_eight":
            j_ref = cfg.reference_j or cfg.j_range[-1] + 4
            gap = forward_backward_gap(j_ref, samples_per_unit=cfg.family.samples_per_unit)
            state["extra_meta"] = {"forward_backward_gap": gap}
            logger.info("figure eight: forward/backward driving gap %.3f at j=%d", gap, j_ref)
        logger.info("generated %d of %d approximants of %s", len(curves), len(cfg.j_range), cfg.family.family)
        return state


class ViewpointNode:
    """Fixes the viewpoint grid and checks it against the curves."""

    def select(self, state: ConvergenceState) -> ConvergenceState:
        cfg = state["experiment"]
        curves = dict(state["curves"])
        if cfg.viewpoints is not None:
            check_viewpoints(cfg.viewpoints, {**curves, "target": state["target"]})
            state["viewpoints"] = list(cfg.viewpoints)
        else:
            state["viewpoints"] = default_viewpoint_grid(
                list(curves.values()) + [state["target"]], cfg.grid_size, cfg.seed
            )
        return state


class MeasureNode:
    """Evaluates every configured metric on every (j, x) cell."""

    def _global(self, metric: str, c: Curve, target: Curve) -> Tuple[float, Optional[float], Optional[float]]:
        if metric == "d_f":
            return d_locally_uniform(c, target, "forward"), None, None
        if metric == "d_b":
            return d_locally_uniform(c, target, "backward"), None, None
        if metric == "d_strong":
            return uniform_distance(c, target), None, None
        if metric == "hausdorff":
            return hausdorff_distance(c, target), None, None
        raise ValueError(f"unknown metric {metric!r}")

    def _local(self, metric: str, c: Curve, target: Curve, x: ComplexPoint):
        if metric == "d_cap_r":
            rep = d_cap_r(c, target, x)
        else:
            rep = d_cap_l(reverse(c), reverse(target), x)
        return rep.value, rep.cap_term, rep.sup_term

    def _cell(self, args) -> List[ReportRow]:
        j, x, c, target, metrics, cached = args
        rows = []
        for metric in metrics:
            try:
                if c is None:
                    raise FamilyError(cached.get("__curve__", "approximant missing"))
                if metric in X_METRICS:
                    value, cap, sup = self._local(metric, c, target, _as_point(x))
                else:
                    value, cap, sup = cached[metric]
                    if isinstance(value, Exception):
                        raise value
                rows.append(ReportRow(j=j, x=x, metric=metric, value=float(value), cap_term=cap, sup_term=sup))
            except Exception as exc:
                logger.debug("cell j=%d x=%s %s failed: %s", j, x, metric, exc)
                rows.append(ReportRow(j=j, x=x, metric=metric, error=f"{type(exc).__name__}: {exc}"))
        return rows

    def measure(self, state: ConvergenceState) -> ConvergenceState:
        cfg = state["experiment"]
        target = state["target"]
        cached: Dict[int, Dict[str, object]] = {}
        for j in cfg.j_range:
            cached[j] = {}
            c = state["curves"].get(j)
            if c is None:
                cached[j]["__curve__"] = state["curve_errors"].get(j, "approximant missing")
                continue
            for metric in cfg.metrics:
                if metric in X_METRICS:
                    continue
                try:
                    cached[j][metric] = self._global(metric, c, target)
                except Exception as exc:
                    cached[j][metric] = (exc, None, None)
        cells = [
            (j, x, state["curves"].get(j), target, cfg.metrics, cached[j])
            for j in cfg.j_range for x in state["viewpoints"]
        ]
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(tqdm(pool.map(self._cell, cells), total=len(cells), desc=cfg.name, leave=False))
        state["rows"] = [row for rows in results for row in rows]
        return state


class VerdictNode:
    """Tags every (metric, x) series and compares against the expected verdicts."""

    def verdict(self, state) -> dict:
        cfg = state["experiment"]
        rows = state["rows"]
        keys = []
        for r in rows:
            if (r.metric, r.x) not in keys:
                keys.append((r.metric, r.x))
        verdicts = []
        for metric, x in keys:
            series = sorted((r for r in rows if r.metric == metric and r.x == x), key=lambda r: r.j)
            values = [r.value for r in series]
            v, floor = trend_verdict(values)
            verdicts.append(SeriesVerdict(metric=metric, x=x, verdict=v, floor=floor, values=values))
        mismatches = [
            {"metric": v.metric, "x": v.x, "expected": cfg.expected[v.metric], "got": v.verdict}
            for v in verdicts if v.metric in cfg.expected and v.verdict != cfg.expected[v.metric]
        ]
        meta = {"mismatches": mismatches, "n_rows": len(rows)}
        meta.update(state.get("extra_meta", {}))
        state["report"] = Report(
            suite=cfg.suite, name=cfg.name, rows=rows, verdicts=verdicts,
            config=cfg.model_dump(mode="json"), meta=meta,
        )
        return state


# =============================================================================
# ROUNDTRIP NODES
# =============================================================================

def _test_driving(kind: str, T: float, n: int, kappa: float, seed: int) -> DrivingFunction:
    if kind == "zero":
        return DrivingFunction.from_callable(lambda t: 0.0, T, n)
    if kind == "linear":
        return DrivingFunction.from_callable(lambda t: t, T, n)
    if kind == "sine":
        return DrivingFunction.from_callable(lambda t: 0.5 * np.sin(2.0 * np.pi * t / T), T, n)
    return sample_chordal_driving(SleConfig(kappa=kappa, T=T, dt=T / n, seed=seed))


def _sup_error(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


class DrivingNode:
    """Builds the driving function under test and its fine-grid trace."""

    def prepare(self, state: RoundtripState) -> RoundtripState:
        cfg = state["experiment"]
        W = _test_driving(cfg.driving, cfg.T, cfg.n_ref, cfg.kappa, cfg.seed)
        state["driving"] = W
        state["reference"] = solve_chordal_trace(W)
        return state


class RoundtripNode:
    """Trace, round-trip and recovery errors across the step ladder."""

    def measure(self, state: RoundtripState) -> RoundtripState:
        cfg = state["experiment"]
        W = state["driving"]
        ref = state["reference"]
        rows: List[ReportRow] = []
        for n in tqdm(cfg.n_values, desc="roundtrip", leave=False):
            trace = solve_chordal_trace(W, n)
            if cfg.driving == "zero":
                expected = 2j * np.sqrt(trace.params * W.T)
            else:
                expected = np.interp(trace.params, ref.params, ref.points.real) + 1j * np.interp(
                    trace.params, ref.params, ref.points.imag
                )
            rows.append(ReportRow(j=n, metric="trace_error", value=_sup_error(trace.points, expected)))

            rep = driving_distance(W, unzip_chordal(trace), "roundtrip_error")
            rows.append(ReportRow(j=n, metric="roundtrip_error", value=rep.value,
                                  cap_term=rep.cap_term, sup_term=rep.sup_term))

            rep = driving_distance(W, unzip_chordal(resample(ref, n + 1)), "driving_error")
            rows.append(ReportRow(j=n, metric="driving_error", value=rep.value,
                                  cap_term=rep.cap_term, sup_term=rep.sup_term))
        state["rows"] = rows
        exps: Dict[str, Optional[float]] = {}
        for metric in ("trace_error", "roundtrip_error", "driving_error"):
            pts = [(r.j, r.value) for r in rows if r.metric == metric and r.value and r.value > 0]
            if len(pts) >= 2:
                n_arr, err = np.array(pts).T
                exps[metric] = float(np.polyfit(np.log(n_arr), np.log(err), 1)[0])
            else:
                exps[metric] = None
        state["exponents"] = exps
        state["extra_meta"] = {"exponents": exps}
        logger.info("roundtrip exponents: %s", exps)
        return state


# =============================================================================
# LAW NODES
# =============================================================================

def reversed_trace(c: Curve) -> Curve:
    """Trace run backwards and moved by z -> -1/z, with a vertical foot from the real line.

    The foot closes the gap left by the finite capacity of the forward trace.
    """
    hp = c.half_plane_points()[::-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        pts = np.where(hp == 0, complex(np.inf, 0.0), -1.0 / hp)
    pts = pts[np.isfinite(pts)]
    foot = complex(pts[0].real, 0.0)
    return Curve.from_points(np.concatenate(([foot], pts)))


class LawSampleNode:
    """Draws the two samples of viewpoint drivings to compare."""

    def _values(self, c: Curve, x: Tuple[float, float], times: List[float]) -> List[float]:
        return [float(v) for v in unzip_radial_at(c, _as_point(x))(np.asarray(times))]

    def sample(self, state: LawState) -> LawState:
        cfg = state["experiment"]
        if cfg.m < Config.LAW_MIN_SAMPLES:
            raise UnderpoweredError(f"m={cfg.m} samples is below the minimum of {Config.LAW_MIN_SAMPLES}")
        views = list(cfg.viewpoints or [DEFAULT_LAW_VIEWPOINT])
        a: Dict[Tuple[float, float], List[List[float]]] = {x: [] for x in views}
        b: Dict[Tuple[float, float], List[List[float]]] = {x: [] for x in views}
        base = SleConfig(kappa=cfg.kappa, T=cfg.T, dt=cfg.T / cfg.trace_steps, seed=cfg.seed)
        t_max = max(cfg.times)
        for k in tqdm(range(cfg.m), desc="law samples", leave=False):
            trace = sample_sle_trace(base.model_copy(update={"seed": cfg.seed + k}))
            for x in views:
                a[x].append(self._values(trace, x, cfg.times))
                if cfg.comparison == "reversal":
                    b[x].append(self._values(reversed_trace(trace), x, cfg.times))
                elif cfg.comparison == "radial":
                    frame = viewpoint_transport(_as_point(x))
                    w0 = float(np.angle(frame(ComplexPoint(0.0, 0.0)).to_complex()))
                    v0 = float(np.angle(frame(ComplexPoint.infinity()).to_complex()))
                    rc = SleConfig(kappa=cfg.kappa, rho=cfg.kappa - 6.0, w0=w0, v0=v0, T=1.01 * t_max,
                                   dt=t_max / 1000.0, seed=cfg.seed + cfg.m + k)
                    W, _ = sample_radial_sle_kr(rc)
                    b[x].append([float(v) for v in W(np.asarray(cfg.times))])
        if cfg.comparison == "self":
            half = cfg.m // 2
            b = {x: a[x][half:] for x in views}
            a = {x: a[x][:half] for x in views}
        state["viewpoints"] = views
        state["samples_a"] = a
        state["samples_b"] = b
        return state


class LawCompareNode:
    """Two-sample Kolmogorov–Smirnov test per viewpoint and time."""

    def compare(self, state: LawState) -> LawState:
        cfg = state["experiment"]
        rows: List[ReportRow] = []
        for x in state["viewpoints"]:
            a = np.asarray(state["samples_a"][x])
            b = np.asarray(state["samples_b"][x])
            for i, t in enumerate(cfg.times):
                res = ks_2samp(a[:, i], b[:, i])
                rows.append(ReportRow(j=i, x=x, metric="ks_distance", value=float(res.statistic),
                                      meta={"pvalue": float(res.pvalue), "t": t}))
        pvals = [r.meta["pvalue"] for r in rows]
        meta = {
            "max_ks": max((r.value for r in rows), default=None),
            "share_p_above_0.05": float(np.mean(np.array(pvals) > 0.05)) if pvals else None,
            "comparison": cfg.comparison,
            "mismatches": [],
        }
        if cfg.ks_tolerance is not None:
            meta["mismatches"] = [
                {"metric": r.metric, "x": r.x, "t": r.meta["t"], "expected": f"<= {cfg.ks_tolerance}", "got": r.value}
                for r in rows if r.value > cfg.ks_tolerance
            ]
        state["rows"] = rows
        state["report"] = Report(suite=cfg.suite, name=cfg.name, rows=rows,
                                 config=cfg.model_dump(mode="json"), meta=meta)
        logger.info("law check (%s): max KS %.3f", cfg.comparison, meta["max_ks"] or 0.0)
        return state
