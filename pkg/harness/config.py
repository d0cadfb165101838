from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from config.config import Config
from families.spec import FamilySpec

MetricName = Literal["d_cap_r", "d_cap_l", "d_f", "d_b", "d_strong", "hausdorff"]
Verdict = Literal["CONVERGING", "STALLED", "ERROR"]


class ExperimentConfigError(ValueError):
    """Experiment configuration that cannot be run (viewpoint on a curve, missing family)."""


class UnderpoweredError(ValueError):
    """Statistical suite asked to run with too few samples."""


class ExperimentConfig(BaseModel):
    """One suite run: what to generate, where to look from, what to measure."""

    suite: Literal["convergence", "roundtrip", "law"] = "convergence"
    name: str = "experiment"
    seed: int = Field(default_factory=lambda: Config.DEFAULT_SEED, ge=0)
    threads: int = Field(default_factory=lambda: Config.THREADS, ge=1)
    out: Optional[str] = None

    # convergence
    family: Optional[FamilySpec] = None
    j_range: List[int] = Field(default_factory=lambda: [1, 2, 3, 4, 5])
    reference_j: Optional[int] = None
    viewpoints: Optional[List[Tuple[float, float]]] = None
    grid_size: int = Field(default_factory=lambda: Config.PSI_GRID_SIZE, ge=1)
    metrics: List[MetricName] = Field(
        default_factory=lambda: ["d_cap_r", "d_cap_l", "d_f", "d_b", "d_strong", "hausdorff"]
    )
    expected: Dict[str, Verdict] = Field(default_factory=dict)

    # roundtrip
    driving: Literal["zero", "linear", "sine", "sle"] = "zero"
    kappa: float = Field(default=8.0 / 3.0, ge=0.0)
    T: float = Field(default=1.0, gt=0.0)
    n_values: List[int] = Field(default_factory=lambda: [250, 500, 1000, 2000])
    n_ref: int = 8000

    # law
    comparison: Literal["self", "radial", "reversal"] = "radial"
    m: int = 400
    trace_steps: int = 400
    times: List[float] = Field(default_factory=lambda: [0.05, 0.15])
    ks_tolerance: Optional[float] = Field(default=None, gt=0.0)

    @field_validator("j_range", "n_values")
    @classmethod
    def _increasing(cls, v: List[int]) -> List[int]:
        if not v or any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("index ranges must be non-empty and strictly increasing")
        return v

    @model_validator(mode="after")
    def _check(self) -> "ExperimentConfig":
        if self.suite == "convergence" and self.family is None:
            raise ValueError("a convergence suite needs a family")
        if self.viewpoints is not None:
            pts = np.array([complex(*p) for p in self.viewpoints])
            if np.any(pts.imag <= 0):
                raise ValueError("viewpoints must lie in the open upper half-plane")
            if len(set(self.viewpoints)) != len(self.viewpoints):
                raise ValueError("viewpoints must be pairwise distinct")
        return self

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        return cls.model_validate_json(Path(path).read_text())

    def member(self, j: int) -> FamilySpec:
        update = {"j": j}
        if self.family.family == "ladder" and self.family.height is None:
            update["height"] = Config.LADDER_HEIGHT
        return self.family.model_copy(update=update)
