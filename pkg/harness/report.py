"""
Reports
=======
Rows of (index, viewpoint, metric, value) plus per-series trend verdicts.
Written as flat CSV, full JSON (config echo and code version included) or a
log-scale SVG plot per metric.
"""

from __future__ import annotations

import csv
import logging
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from config.config import Config
from harness.config import Verdict

logger = logging.getLogger(__name__)

CSV_FIELDS = ["j", "x_re", "x_im", "metric", "value", "cap_term", "sup_term", "error"]


def code_version() -> str:
    try:
        return version("loewner-toolkit")
    except PackageNotFoundError:
        return "0.1.0+local"


class ReportRow(BaseModel):
    j: int
    x: Optional[Tuple[float, float]] = None
    metric: str
    value: Optional[float] = None
    cap_term: Optional[float] = None
    sup_term: Optional[float] = None
    error: Optional[str] = None
    meta: Dict[str, Any] = Field(default_factory=dict)


class SeriesVerdict(BaseModel):
    metric: str
    x: Optional[Tuple[float, float]] = None
    verdict: Verdict
    floor: Optional[float] = None
    values: List[Optional[float]] = Field(default_factory=list)


class Report(BaseModel):
    suite: str
    name: str = "experiment"
    rows: List[ReportRow] = Field(default_factory=list)
    verdicts: List[SeriesVerdict] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)
    meta: Dict[str, Any] = Field(default_factory=dict)

    def series(self, metric: str, x: Optional[Tuple[float, float]] = None) -> List[Optional[float]]:
        rows = sorted((r for r in self.rows if r.metric == metric and r.x == x), key=lambda r: r.j)
        return [r.value for r in rows]

    def verdict_of(self, metric: str) -> List[Verdict]:
        return [v.verdict for v in self.verdicts if v.metric == metric]


def trend_verdict(values: Sequence[Optional[float]], window: int | None = None) -> Tuple[Verdict, Optional[float]]:
    """CONVERGING when the last ``window`` values strictly decrease and the last is below half the first.

    Anything else is STALLED with the series minimum as floor; a missing
    value makes the series ERROR.
    """
    window = window or Config.CONVERGING_WINDOW
    if not values or any(v is None or not np.isfinite(v) for v in values):
        return "ERROR", None
    vals = np.asarray(values, dtype=float)
    tail = vals[-window:]
    if len(vals) >= window and np.all(np.diff(tail) < 0) and vals[-1] < 0.5 * vals[0]:
        return "CONVERGING", float(vals[-1])
    return "STALLED", float(vals.min())


def _write_csv(r: Report, path: Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for row in r.rows:
            x_re, x_im = row.x if row.x is not None else ("", "")
            writer.writerow([
                row.j, repr(x_re) if x_re != "" else "", repr(x_im) if x_im != "" else "", row.metric,
                "" if row.value is None else repr(row.value),
                "" if row.cap_term is None else repr(row.cap_term),
                "" if row.sup_term is None else repr(row.sup_term),
                row.error or "",
            ])


def _write_svg(r: Report, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    metrics = sorted({row.metric for row in r.rows})
    fig, axes = plt.subplots(len(metrics) or 1, 1, figsize=(6, 3 * max(1, len(metrics))), squeeze=False)
    for ax, metric in zip(axes[:, 0], metrics):
        for x in sorted({row.x for row in r.rows if row.metric == metric}, key=lambda p: (p is None, p)):
            rows = sorted((row for row in r.rows if row.metric == metric and row.x == x and row.value), key=lambda q: q.j)
            if rows:
                ax.semilogy([q.j for q in rows], [q.value for q in rows], marker="o", lw=1,
                            label="" if x is None else f"x={x[0]:.2f}{x[1]:+.2f}i")
        ax.set_title(metric)
        ax.set_xlabel("j")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def emit_report(r: Report, fmt: Literal["csv", "json", "svg"], path: str | Path) -> Path:
    """Write the report; the parent directory is created if needed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        _write_csv(r, path)
    elif fmt == "json":
        path.write_text(r.model_dump_json(indent=2))
    elif fmt == "svg":
        _write_svg(r, path)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    logger.info("wrote %s report (%d rows) to %s", fmt, len(r.rows), path)
    return path


def load_report(path: str | Path) -> Report:
    return Report.model_validate_json(Path(path).read_text())
