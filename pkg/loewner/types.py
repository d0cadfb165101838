"""
Loewner data types
==================
Driving functions, elementary slit steps and composed chains.

A chain is ``post ∘ g_n ∘ ... ∘ g_1 ∘ pre`` where every ``g_k`` is an
elementary slit map. Chordal steps act on the half-plane; radial steps act
on the disc and fix the origin.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Optional

import numpy as np

from geometry.mobius import MobiusTransform
from geometry.points import ComplexPoint

logger = logging.getLogger(__name__)

Kind = Literal["chordal", "radial"]


class SwallowedError(RuntimeError):
    """A point was swallowed (filled in or hit) by the hull."""

    def __init__(self, message: str, step: int | None = None) -> None:
        super().__init__(message if step is None else f"{message} (step {step})")
        self.step = step


class ObservationPointError(ValueError):
    """The observation point lies on the curve."""


@dataclass(frozen=True, eq=False)
class DrivingFunction:
    times: np.ndarray
    values: np.ndarray
    kind: Kind = "chordal"
    observation: Optional[ComplexPoint] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float).ravel()
        v = np.asarray(self.values, dtype=float).ravel()
        if len(t) == 0 or len(t) != len(v):
            raise ValueError(f"need matching non-empty samples, got {len(t)} times and {len(v)} values")
        if t[0] != 0.0:
            raise ValueError("driving functions start at t = 0")
        if np.any(np.diff(t) <= 0):
            raise ValueError("driving times must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("driving values must be finite")
        if self.kind not in ("chordal", "radial"):
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, f, T: float, n: int, kind: Kind = "chordal", **kw) -> "DrivingFunction":
        t = np.linspace(0.0, T, n + 1)
        return cls(t, np.asarray([f(s) for s in t], dtype=float), kind, **kw)

    @property
    def T(self) -> float:
        return float(self.times[-1])

    @property
    def w0(self) -> float:
        return float(self.values[0])

    def __call__(self, t):
        """Linear interpolation; constant extension past T."""
        return np.interp(t, self.times, self.values)

    def __len__(self) -> int:
        return len(self.times)

    def shifted(self, delta: float) -> "DrivingFunction":
        return DrivingFunction(self.times, self.values + delta, self.kind, self.observation, dict(self.meta))

    def truncated(self, t_max: float) -> "DrivingFunction":
        if t_max >= self.T:
            return self
        keep = self.times < t_max
        t = np.append(self.times[keep], t_max)
        return DrivingFunction(t, self(t), self.kind, self.observation, dict(self.meta))


@dataclass(frozen=True)
class SlitStep:
    w: float
    dcap: float

    def __post_init__(self) -> None:
        if not self.dcap > 0:
            raise ValueError(f"capacity increment must be positive, got {self.dcap}")
        if not np.isfinite(self.w):
            raise ValueError("slit base must be finite")


@dataclass(frozen=True, eq=False)
class LoewnerChain:
    kind: Kind
    w: np.ndarray
    dcap: np.ndarray
    w0: float = 0.0
    pre: MobiusTransform = field(default_factory=MobiusTransform.identity)
    post: MobiusTransform = field(default_factory=MobiusTransform.identity)
    observation: Optional[ComplexPoint] = None
    weld_left: Optional[np.ndarray] = None   # per step, pushed to final coordinates
    weld_right: Optional[np.ndarray] = None
    sample_params: Optional[np.ndarray] = None  # curve parameter consumed by each step
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float).ravel()
        d = np.asarray(self.dcap, dtype=float).ravel()
        if len(w) != len(d):
            raise ValueError("steps need one base point per capacity increment")
        if np.any(d <= 0):
            raise ValueError("capacity increments must be positive")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "dcap", d)

    @classmethod
    def from_steps(cls, kind: Kind, steps, w0: float = 0.0, **kw) -> "LoewnerChain":
        steps = list(steps)
        return cls(kind, np.array([s.w for s in steps]), np.array([s.dcap for s in steps]), w0, **kw)

    def __len__(self) -> int:
        return len(self.w)

    @property
    def steps(self) -> tuple:
        return tuple(SlitStep(float(w), float(d)) for w, d in zip(self.w, self.dcap))

    @property
    def times(self) -> np.ndarray:
        """Capacity time reached after each step."""
        return np.cumsum(self.dcap)

    @property
    def T(self) -> float:
        return float(self.dcap.sum())

    @property
    def tip(self) -> float:
        """Driving value at the final time."""
        return float(self.w[-1]) if len(self.w) else self.w0

    def truncated(self, n: int) -> "LoewnerChain":
        """The first n steps; weld records are dropped."""
        return LoewnerChain(
            self.kind, self.w[:n], self.dcap[:n], self.w0, self.pre, self.post, self.observation,
            sample_params=None if self.sample_params is None else self.sample_params[:n],
        )

    def driving(self) -> DrivingFunction:
        """Piecewise-linear driving function through the step values.

        Steps too small to advance the floating-point clock are merged into
        the following one.
        """
        t = np.concatenate(([0.0], np.cumsum(self.dcap)))
        v = np.concatenate(([self.w0], self.w))
        keep = np.append(t[1:] > t[:-1], True)
        if not keep.all():
            logger.debug("merged %d sub-resolution steps", int((~keep).sum()))
        return DrivingFunction(
            t[keep], v[keep], self.kind, self.observation,
            {**self.meta, "n_steps": len(self.w)},
        )
