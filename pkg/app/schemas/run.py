from typing import Optional

from pydantic import Field, PositiveFloat, PositiveInt

from app.config import PrecisionConfig, settings
from app.core.utils.enums import OutputFormat
from app.schemas.base import BaseSchema


class RunConfig(BaseSchema):
    """ Options shared by all commands """
    precision: int = Field(default_factory=lambda: settings.PRECISION, ge=30)
    exclusion_eps: PositiveFloat = Field(default_factory=lambda: settings.EXCLUSION_EPS)
    format: OutputFormat = OutputFormat.JSON
    jobs: Optional[PositiveInt] = None
    out: Optional[str] = None

    @property
    def precision_config(self) -> PrecisionConfig:
        return PrecisionConfig(dps=self.precision, exclusion_eps=self.exclusion_eps)
