from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from config.config import Config

FamilyName = Literal[
    "ladder",
    "three_segment",
    "dyadic_loops",
    "hooks",
    "figure_eight",
    "half_strip",
    "perturbed_semicircle",
]


class FamilyError(ValueError):
    """Invalid family parameters or a generated curve that fails its checks."""


class FamilySpec(BaseModel):
    """Selects one member of a curve family."""

    family: FamilyName
    j: int = Field(default=1, ge=0)
    variant: str = "plain"
    depth: int = Field(default=4, ge=1, le=12)
    loop_scale: float = Field(default=0.5, gt=0.0)
    samples_per_unit: Optional[int] = Field(default_factory=lambda: Config.SAMPLES_PER_UNIT)
    height: Optional[float] = None   # ladder truncation

    @model_validator(mode="after")
    def _check_variant(self) -> "FamilySpec":
        allowed = {
            "three_segment": {"plain", "doubled", "interweave"},
            "figure_eight": {"a", "b", "interweave"},
        }.get(self.family)
        if allowed is not None and self.variant not in allowed:
            raise ValueError(f"{self.family} variant must be one of {sorted(allowed)}")
        if self.family != "ladder" and self.j < 1:
            raise ValueError("family index j must be >= 1")
        return self
