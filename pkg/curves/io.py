# curves/io.py

import csv
import logging
from pathlib import Path

import numpy as np

from curves.curve import Curve, CurveError, Domain
from geometry.points import INF, is_inf

logger = logging.getLogger(__name__)


def write_curve_csv(c: Curve, path: str | Path) -> Path:
    """Write rows ``t,re,im``; the point at infinity is written as ``t,inf``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "re", "im"])
        for t, z in zip(c.params, c.points):
            if is_inf(z):
                writer.writerow([repr(float(t)), "inf"])
            else:
                writer.writerow([repr(float(t)), repr(float(z.real)), repr(float(z.imag))])
    logger.debug("wrote %d samples to %s", len(c), path)
    return path


def read_curve_csv(path: str | Path, domain: Domain = "half_plane") -> Curve:
    params, points = [], []
    with Path(path).open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].strip() == "t":
                continue
            try:
                params.append(float(row[0]))
                if row[1].strip().lower() == "inf":
                    points.append(INF)
                else:
                    points.append(complex(float(row[1]), float(row[2])))
            except (IndexError, ValueError) as e:
                raise CurveError(f"{path}:{lineno}: malformed curve row {row!r}") from e
    return Curve(np.array(points, dtype=complex), np.array(params), domain)
