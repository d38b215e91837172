from enum import StrEnum
from fractions import Fraction
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from sympy import isprime

from errors import ConfigError

from .bessel_setup import BesselCase
from .rep_type import RepType
from .scalar import Symbol, to_fraction
from .tower import Window


class Command(StrEnum):
    CATALOG = "catalog"
    TOWER = "tower"
    SOLVE = "solve"
    VERIFY = "verify"
    ZETA = "zeta"


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    command: Command = Command.VERIFY
    rep_type: RepType | None = Field(default=None, alias="type")
    case: BesselCase | None = None
    m0: int = Field(default=0, ge=0)
    # symbol -> exact rational, e.g. {"r": "3", "alpha": "1/2"}
    params: dict[str, str] = Field(default_factory=dict)
    window: Window | None = None
    families: tuple[str, ...] | None = None
    eig_index: int = Field(default=0, ge=0, le=1)
    # Vb answers for its twist Vc
    xi_twist: bool = False
    # restricts the coset checks to one prime
    p: int | None = None
    seed: int = 0
    jobs: int = Field(default=1, ge=1)
    output: Path | None = None

    @field_validator("params", mode="before")
    @classmethod
    def stringify_params(cls, params):
        if isinstance(params, dict):
            return {name: str(value) for name, value in params.items()}
        return params

    @field_validator("params")
    @classmethod
    def validate_params(cls, params: dict[str, str]) -> dict[str, str]:
        known = {symbol.value for symbol in Symbol} - {Symbol.X.value, Symbol.Y.value, Symbol.SQRT_D.value}
        for name, value in params.items():
            if name not in known:
                raise ValueError(f"params: unknown symbol {name!r}")
            try:
                to_fraction(str(value))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"params: {name}={value!r} is not an exact rational") from exc
        return params

    @field_validator("window", mode="before")
    @classmethod
    def validate_window(cls, window):
        if window is None or isinstance(window, (Window, dict)):
            return window
        return Window.of(window)

    @field_validator("p")
    @classmethod
    def validate_p(cls, p: int | None) -> int | None:
        if p is None:
            return p
        if p == 2 or not isprime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        return p

    @classmethod
    def from_json(cls, text: str | bytes) -> "RunConfig":
        try:
            return cls.model_validate_json(text)
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path: Path) -> "RunConfig":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_json(text)

    def merged(self, **overrides) -> "RunConfig":
        """Apply CLI overrides; ``None`` leaves a field untouched."""
        data = self.model_dump(by_alias=True, exclude_none=True)
        data.update({key: value for key, value in overrides.items() if value is not None})
        try:
            return RunConfig.model_validate(data)
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc

    def specialization(self) -> dict[Symbol, Fraction]:
        return {Symbol(name): to_fraction(str(value)) for name, value in self.params.items()}
