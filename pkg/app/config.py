"""
config.py

The base settings file for the project. This file will be imported by any modules that require settings functionality.
All variables are loaded from the environment (prefixed with NORLUND_) or from the .env file in use.

Working precision is never ambient: every numerical entry point receives a `PrecisionConfig`, and the mpmath
contexts handed out here are private clones so the global `mpmath.mp` is never mutated.
"""
import os
from functools import lru_cache
from typing import Optional

import mpmath
from mpmath.ctx_mp import MPContext
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict

env = os.getenv("ENV", "dev")  # get environment


class Settings(BaseSettings):
    """ Application settings based on pydantic model """

    APP_NAME: str = "Norlund Asymptotics Workbench"
    APP_VERSION: str = "1.0.0"
    ENV: str = "dev"

    # numerics
    PRECISION: int = Field(60, ge=30)
    ORDER_MARGIN: int = Field(8, ge=3)
    EXCLUSION_EPS: PositiveFloat = 0.05
    STOKES_EPS: PositiveFloat = 1e-9
    STOKES_KMAX: PositiveInt = 30
    VERIFY_BRANCHES: bool = False

    # path tracer (double precision)
    PATH_TOL: PositiveFloat = 1e-10
    PATH_STEP: PositiveFloat = 1e-2
    PATH_MAX_LEN: PositiveFloat = 50.0

    JOBS: Optional[PositiveInt] = None
    LOG_LEVEL: str = "WARNING"
    REPORTS_DIRECTORY: str = "reports"

    model_config = SettingsConfigDict(env_file=".env", env_prefix="NORLUND_", extra="ignore")


# Using lru_cache to prevent settings from getting reinitialized on every call.
@lru_cache
def get_settings():
    _settings = Settings()
    return _settings


# initialize settings so it is available from config
settings = get_settings()


@lru_cache(maxsize=None)
def working_context(dps: int) -> MPContext:
    """ A private mpmath context fixed at `dps` decimal digits (round-to-nearest). """
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    return ctx


class PrecisionConfig(BaseModel):
    """
    Precision and tolerance knobs shared by the coefficient engine and the asymptotic evaluators.

    `dps` is the working decimal precision, `order_margin` the slack added to the 2K series order needed for A_K,
    `exclusion_eps` the distance from the segment [0, 1] below which evaluation is refused and `stokes_eps` the
    band around Re z = 1 that is treated as the Stokes line.
    """
    model_config = ConfigDict(frozen=True)

    dps: int = Field(default_factory=lambda: settings.PRECISION, ge=30)
    order_margin: int = Field(default_factory=lambda: settings.ORDER_MARGIN, ge=3)
    exclusion_eps: PositiveFloat = Field(default_factory=lambda: settings.EXCLUSION_EPS)
    stokes_eps: PositiveFloat = Field(default_factory=lambda: settings.STOKES_EPS)
    verify_branches: bool = Field(default_factory=lambda: settings.VERIFY_BRANCHES)

    @property
    def context(self) -> MPContext:
        return working_context(self.dps)

    @property
    def reference_context(self) -> MPContext:
        """ Context used when comparing against exact values: twice the working precision. """
        return working_context(2 * self.dps)

    def series_order(self, K: int) -> int:
        """ Truncation order of the series that carry A_0..A_K. """
        return 2 * K + self.order_margin

    def tolerance(self, slack: int = 10):
        """ 10^(slack - dps) in the working context; the threshold for 'numerically zero'. """
        ctx = self.context
        return ctx.mpf(10) ** (slack - self.dps)
