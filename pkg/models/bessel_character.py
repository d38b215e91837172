from typing import Any, Mapping

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .bessel_setup import BesselCase
from .scalar import LAM_01, LAM_10, LAM_PI, LAM_PIL, Scalar, Symbol


class BesselCharacter(BaseModel):
    """The value data of a character Λ of L^×: its conductor m0 and its values at uniformizers."""

    model_config = ConfigDict(frozen=True)

    case: BesselCase
    m0: int = Field(default=0, ge=0)
    # Λ(ϖ)
    lam_pi: Scalar
    # Λ(ϖ_L), ramified only
    lam_piL: Scalar | None = None
    # Λ(ϖ,1) and Λ(1,ϖ), split only
    lam_10: Scalar | None = None
    lam_01: Scalar | None = None

    @model_validator(mode="after")
    def validate_case_values(self) -> "BesselCharacter":
        split_values = (self.lam_10, self.lam_01)
        match self.case:
            case BesselCase.SPLIT:
                if None in split_values:
                    raise ValueError("split character needs lam_10 and lam_01")
                if self.lam_10 * self.lam_01 != self.lam_pi:
                    raise ValueError("lam_10 * lam_01 must equal lam_pi")
                if self.lam_piL is not None:
                    raise ValueError("lam_piL is only defined in the ramified case")
            case BesselCase.RAMIFIED:
                if self.lam_piL is None:
                    raise ValueError("ramified character needs lam_piL")
                if self.lam_piL**2 != self.lam_pi:
                    raise ValueError("lam_piL^2 must equal lam_pi")
                if split_values != (None, None):
                    raise ValueError("lam_10, lam_01 are only defined in the split case")
            case BesselCase.INERT:
                if self.lam_piL is not None or split_values != (None, None):
                    raise ValueError("an inert character only carries lam_pi")
        return self

    @classmethod
    def generic(cls, case: BesselCase, m0: int = 0) -> "BesselCharacter":
        """Character with symbolic values, related only by the case identities."""
        match BesselCase(case):
            case BesselCase.SPLIT:
                return cls(case=case, m0=m0, lam_pi=LAM_10 * LAM_01, lam_10=LAM_10, lam_01=LAM_01)
            case BesselCase.RAMIFIED:
                return cls(case=case, m0=m0, lam_pi=LAM_PIL**2, lam_piL=LAM_PIL)
            case _:
                return cls(case=case, m0=m0, lam_pi=LAM_PI)

    @property
    def legendre(self) -> int:
        return self.case.legendre

    def values(self) -> dict[str, Scalar]:
        present = {"lam_pi": self.lam_pi, "lam_piL": self.lam_piL, "lam_10": self.lam_10, "lam_01": self.lam_01}
        return {name: value for name, value in present.items() if value is not None}

    def specialize(self, values: Mapping[Symbol | str, Any]) -> "BesselCharacter":
        return self.model_copy(update={name: value.specialize(values) for name, value in self.values().items()})

    def substitute(self, mapping: Mapping[Symbol | str, Scalar]) -> "BesselCharacter":
        return self.model_copy(update={name: value.substitute(mapping) for name, value in self.values().items()})
