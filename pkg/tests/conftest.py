from __future__ import annotations

import numpy as np
import pytest

from curves.curve import Curve, polyline
from loewner.types import DrivingFunction


@pytest.fixture
def vertical_slit():
    """Segment from 0 to i, 400 samples."""
    def make(h: float = 1.0, n: int = 400) -> Curve:
        t = np.linspace(0.0, 1.0, n + 1)
        return Curve(1j * h * t, t)
    return make


@pytest.fixture
def semicircle() -> Curve:
    """Upper unit semicircle from -1 to 1."""
    theta = np.linspace(np.pi, 0.0, 801)
    return Curve(np.exp(1j * theta), np.linspace(0.0, 1.0, 801))


@pytest.fixture
def bump() -> Curve:
    return polyline([-1.0, -0.5 + 0.8j, 0.5 + 0.8j, 1.0], 200)


@pytest.fixture
def zero_driving():
    def make(T: float = 1.0, n: int = 1000) -> DrivingFunction:
        return DrivingFunction.from_callable(lambda t: 0.0, T, n)
    return make
