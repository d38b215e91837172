from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .scalar import Scalar, Symbol

SwapMatrix = tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]


class RepType(StrEnum):
    """Iwahori-spherical, non-spherical representations with P1-fixed vectors."""

    IIA = "IIa"
    IIIA = "IIIa"
    IVB = "IVb"
    IVC = "IVc"
    VB = "Vb"
    VIA = "VIa"
    VIB = "VIb"

    @property
    def p1_dim(self) -> int:
        return 2 if self in (RepType.IIIA, RepType.IVB) else 1

    @property
    def params(self) -> frozenset[Symbol]:
        if self in (RepType.IIA, RepType.IIIA):
            return frozenset({Symbol.ALPHA, Symbol.GAMMA})
        return frozenset({Symbol.GAMMA})

    @property
    def omega_sign_matches_lambda(self) -> bool:
        """True for the types where λ = -q·ω."""
        return self in (RepType.IIA, RepType.IVC, RepType.VB, RepType.VIA)


class EigenvalueData(BaseModel):
    """Hecke eigenvalues on the P1-fixed space, paired in order, and the Atkin-Lehner action."""

    model_config = ConfigDict(frozen=True)

    lambdas: tuple[Scalar, ...]
    mus: tuple[Scalar, ...]
    # ω for 1-dim types, the swap matrix on (B1, B2) for 2-dim types
    eta_action: Scalar | SwapMatrix
    central_char_at_pi: Scalar

    @model_validator(mode="after")
    def validate_pairing(self) -> "EigenvalueData":
        if len(self.lambdas) != len(self.mus) or not self.lambdas:
            raise ValueError("lambdas and mus must pair up")
        if len(self.lambdas) == 1 and not isinstance(self.eta_action, Scalar):
            raise ValueError("1-dim types carry a scalar eta action")
        if len(self.lambdas) == 2 and isinstance(self.eta_action, Scalar):
            raise ValueError("2-dim types carry a 2x2 eta action")
        return self

    @property
    def dim(self) -> int:
        return len(self.lambdas)

    @property
    def omega(self) -> Scalar:
        if not isinstance(self.eta_action, Scalar):
            raise ValueError("omega is only defined for 1-dim types")
        return self.eta_action

    def pair(self, index: int) -> tuple[Scalar, Scalar]:
        return self.lambdas[index], self.mus[index]


class FixedVectorDims(BaseModel):
    """Dimensions of parahoric-fixed vectors, the conductor exponent and the ε-factor."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=0)
    p02: int = Field(ge=0)
    p2: int = Field(ge=0)
    p1: int = Field(ge=0)
    iwahori: int = Field(ge=0)
    conductor: int = Field(ge=0)
    epsilon: str
