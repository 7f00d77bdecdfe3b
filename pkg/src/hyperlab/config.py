# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from enum import Enum
from os import getenv
from typing import Final

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveFloat,
    PositiveInt,
    field_validator,
    model_validator,
)
from tomli import loads

from hyperlab.errors import InvalidParameterError

# Take a look at the provided `hyperlab_example.toml` file for a detailed
# explanation

PRECISION_ENV: Final[str] = "HYPERLAB_PRECISION"
EXTENDED_DPS: Final[int] = 30


class Precision(str, Enum):
    DOUBLE = "double"
    EXTENDED = "extended"


def precision_from_env() -> Precision:
    value = getenv(PRECISION_ENV, Precision.DOUBLE.value)
    try:
        return Precision(value.strip().lower())
    except ValueError:
        raise InvalidParameterError(
            f"{PRECISION_ENV} has to be one of "
            + ", ".join(p.value for p in Precision)
            + f", got `{value}`"
        )


class Tolerances(BaseModel):
    replay: PositiveFloat = 1e-9
    # branch predicates of the classification, M scaled to unit max-entry
    predicate: PositiveFloat = 1e-12
    # predicates between `predicate` and this band are ambiguous
    unstable_band: PositiveFloat = 1e-6
    # 2x2 minors against the squared form when testing for rank one
    rank: PositiveFloat = 1e-9
    embedding: PositiveFloat = 1e-9
    orthogonality: PositiveFloat = 1e-8
    jacobi: PositiveFloat = 1e-10
    lambda_system: PositiveFloat = 1e-10

    model_config = ConfigDict(frozen=True, extra="forbid")

    @field_validator("unstable_band")
    @classmethod
    def check_band(cls, v: float) -> float:
        assert v < 1, "unstable_band has to be smaller than 1"
        return v

    @model_validator(mode="after")
    def check_order(self) -> "Tolerances":
        assert (
            self.predicate < self.unstable_band
        ), "predicate has to be smaller than unstable_band"
        return self

    def scaled(self, factor: float) -> "Tolerances":
        return Tolerances(
            **{name: value * factor for name, value in self.model_dump().items()}
        )


class SamplingConfig(BaseModel):
    chart_samples: PositiveInt = 10_000
    separation_samples: PositiveInt = 200
    classify_seeds: PositiveInt = 1_000
    seed: int = 0

    model_config = ConfigDict(frozen=True, extra="forbid")


class ContractionConfig(BaseModel):
    r_values: list[PositiveFloat] = Field(
        default=[1e2, 1e3, 1e4, 1e5, 1e6], min_length=2
    )
    flat_points: PositiveInt = Field(20, ge=1)
    # a fitted order may fall short of the expected one by this much, faster
    # decay always passes
    order_band: PositiveFloat = 0.15
    minimum_order: PositiveFloat = 0.9
    workers: PositiveInt = 4

    model_config = ConfigDict(frozen=True, extra="forbid")

    @field_validator("r_values")
    @classmethod
    def check_increasing(cls, v: list[float]) -> list[float]:
        assert all(a < b for a, b in zip(v, v[1:])), "r_values have to increase"
        return v


class Config(BaseModel):
    tolerances: Tolerances = Tolerances()
    sampling: SamplingConfig = SamplingConfig()
    contraction: ContractionConfig = ContractionConfig()

    model_config = ConfigDict(frozen=True, extra="forbid")


def load_config(text: str) -> Config:
    "Parses and validates a TOML document, raises `pydantic.ValidationError`"
    return Config.model_validate(loads(text))
