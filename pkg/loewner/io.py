# loewner/io.py

import csv
import hashlib
import logging
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from curves.curve import Curve
from geometry.points import ComplexPoint
from loewner.types import DrivingFunction

logger = logging.getLogger(__name__)


class DrivingSidecar(BaseModel):
    """JSON metadata written next to a driving-function CSV."""

    kind: Literal["chordal", "radial"]
    T: float
    x: Optional[Tuple[float, float]] = None   # None: infinity
    source_hash: Optional[str] = None
    meta: Dict[str, Any] = Field(default_factory=dict)


def curve_hash(c: Curve) -> str:
    return hashlib.sha256(c.points.tobytes() + c.params.tobytes()).hexdigest()[:16]


def _json_safe(meta: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v.item() if isinstance(v, np.generic) else v for k, v in meta.items()}


def write_driving(W: DrivingFunction, path: str | Path, source: Curve | None = None) -> Path:
    """Write ``t,w`` rows and a ``.json`` sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "w"])
        for t, w in zip(W.times, W.values):
            writer.writerow([repr(float(t)), repr(float(w))])
    x = W.observation
    sidecar = DrivingSidecar(
        kind=W.kind,
        T=W.T,
        x=None if x is None or x.at_infinity else (x.re, x.im),
        source_hash=curve_hash(source) if source is not None else None,
        meta=_json_safe(W.meta),
    )
    path.with_suffix(".json").write_text(sidecar.model_dump_json(indent=2))
    logger.debug("wrote driving function (%d samples) to %s", len(W), path)
    return path


def read_driving(path: str | Path) -> DrivingFunction:
    path = Path(path)
    rows = []
    with path.open(newline="") as fh:
        for row in csv.reader(fh):
            if row and row[0].strip() != "t":
                rows.append((float(row[0]), float(row[1])))
    t, w = (np.array(col) for col in zip(*rows))
    side = path.with_suffix(".json")
    if not side.exists():
        return DrivingFunction(t, w)
    meta = DrivingSidecar.model_validate_json(side.read_text())
    x = None if meta.x is None else ComplexPoint(*meta.x)
    return DrivingFunction(t, w, meta.kind, x, dict(meta.meta, source_hash=meta.source_hash))
