from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from config.config import Config


class SleConfig(BaseModel):
    """Parameters of an SLE driving process.

    ``w0``/``v0`` are the initial driving and force-point angles of the
    radial SLE(κ;ρ) system; the chordal sampler starts at ``w0``.
    """

    kappa: float = Field(ge=0.0)
    rho: float = 0.0
    w0: float = 0.0
    v0: float = float(np.pi)
    T: float = Field(default=1.0, gt=0.0)
    dt: Optional[float] = None   # defaults to SLE_DT_FRACTION * T
    seed: int = Field(default_factory=lambda: Config.DEFAULT_SEED, ge=0)

    @model_validator(mode="after")
    def _check_grid(self) -> "SleConfig":
        if self.dt is None:
            self.dt = Config.SLE_DT_FRACTION * self.T
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.T < self.dt:
            raise ValueError(f"T={self.T} shorter than one step dt={self.dt}")
        if abs(np.exp(1j * self.w0) - np.exp(1j * self.v0)) < Config.COLLISION_TOL:
            raise ValueError("driving point and force point coincide at t = 0")
        return self

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.T / self.dt)))

    def generator(self) -> np.random.Generator:
        """Counter-based Philox stream keyed by the seed."""
        return np.random.Generator(np.random.Philox(self.seed))
