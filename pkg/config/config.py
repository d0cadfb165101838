import logging
import os
from dotenv import load_dotenv

load_dotenv()


def _float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


def _int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


class Config:
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    DEFAULT_SEED = _int("DEFAULT_SEED", 0)

    # Numerical tolerances
    CDIST_TOL = _float("CDIST_TOL", 1e-10)
    IM_TOL = _float("IM_TOL", 1e-12)
    DET_TOL = _float("DET_TOL", 1e-14)
    # Radial contact threshold: a sample with |zeta| >= 1 - BOUNDARY_TOL touches the circle.
    # Its step capacity would be below about BOUNDARY_TOL**2 / 4, unresolvable against O(1) capacities.
    BOUNDARY_TOL = _float("BOUNDARY_TOL", 1e-7)
    SWALLOW_CRAD = _float("SWALLOW_CRAD", 1e-8)
    ENDPOINT_TOL = _float("ENDPOINT_TOL", 1e-9)
    OBSERVATION_TOL = _float("OBSERVATION_TOL", 1e-6)

    # Locally uniform driving distance
    DF_TAU = _float("DF_TAU", 0.25)
    DF_N = _int("DF_N", 8)

    # Viewpoint grid
    PSI_GRID_SIZE = _int("PSI_GRID_SIZE", 12)
    PSI_MIN_DIST = _float("PSI_MIN_DIST", 0.02)

    # SLE sampling
    SLE_DT_FRACTION = _float("SLE_DT_FRACTION", 1e-4)
    COLLISION_TOL = _float("COLLISION_TOL", 1e-6)

    # Families
    SAMPLES_PER_UNIT = _int("SAMPLES_PER_UNIT", 64)
    LADDER_HEIGHT = _float("LADDER_HEIGHT", 1.0)

    # Monte Carlo hitting
    MC_WALKERS = _int("MC_WALKERS", 100_000)
    MC_STEP = _float("MC_STEP", 0.02)
    MC_MAX_ITER = _int("MC_MAX_ITER", 50_000)

    # Harness
    CONVERGING_WINDOW = _int("CONVERGING_WINDOW", 4)
    LAW_MIN_SAMPLES = _int("LAW_MIN_SAMPLES", 50)
    THREADS = _int("THREADS", 1)
    REPORT_DIR = os.getenv("REPORT_DIR", "reports")

    _logging_ready = False

    @classmethod
    def configure_logging(cls, level: str | None = None) -> None:
        """Install the root log handler once."""
        if cls._logging_ready and level is None:
            return
        logging.basicConfig(
            level=getattr(logging, (level or cls.LOG_LEVEL).upper(), logging.INFO),
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            force=level is not None,
        )
        cls._logging_ready = True

    @classmethod
    def rng_seed(cls, seed: int | None) -> int:
        """Explicit seed, falling back to DEFAULT_SEED."""
        if seed is not None and seed < 0:
            raise RuntimeError(f"seed must be non-negative, got {seed}")
        return cls.DEFAULT_SEED if seed is None else seed
