from typing import Any, Dict, List, Optional, Tuple

from typing_extensions import TypedDict

from curves.curve import Curve
from harness.config import ExperimentConfig
from harness.report import Report, ReportRow


class ConvergenceState(TypedDict, total=False):
    """State for the deterministic convergence pipeline."""

    experiment: ExperimentConfig
    curves: Dict[int, Curve]            # j -> canonical approximant
    curve_errors: Dict[int, str]        # j -> generation failure
    target: Curve
    viewpoints: List[Tuple[float, float]]
    rows: List[ReportRow]
    extra_meta: Dict[str, Any]
    report: Report


class RoundtripState(TypedDict, total=False):
    """State for the zipper round-trip pipeline."""

    experiment: ExperimentConfig
    driving: Any                        # DrivingFunction under test
    reference: Curve                    # fine-grid trace
    rows: List[ReportRow]
    exponents: Dict[str, Optional[float]]
    extra_meta: Dict[str, Any]
    report: Report


class LawState(TypedDict, total=False):
    """State for the law-convergence pipeline."""

    experiment: ExperimentConfig
    viewpoints: List[Tuple[float, float]]
    samples_a: Dict[Tuple[float, float], List[List[float]]]   # x -> per-sample values at config.times
    samples_b: Dict[Tuple[float, float], List[List[float]]]
    rows: List[ReportRow]
    report: Report
