from pydantic import BaseModel, ConfigDict, model_validator

from .scalar import ONE, R, X, Scalar, Symbol


class LFactor(BaseModel):
    """An L-factor 1/Q(X) or P(X)/Q(X) in X = q^-s, normalized so that Q(0) = 1."""

    model_config = ConfigDict(frozen=True)

    value: Scalar

    @model_validator(mode="after")
    def validate_normalized(self) -> "LFactor":
        _, denominator = self.value.split_in(Symbol.X)
        constant = denominator.get(0)
        if constant is None or not constant:
            raise ValueError("L-factor denominator must have a nonzero constant term in X")
        return self

    @property
    def denominator(self) -> Scalar:
        """Q(X), scaled so that Q(0) = 1."""
        _, denominator = self.value.split_in(Symbol.X)
        lead = denominator[0]
        return sum((c / lead * X**power for power, c in denominator.items()), Scalar(0))

    @property
    def numerator(self) -> Scalar:
        return self.value * self.denominator


class SplitCharCorrespondence(BaseModel):
    """Split Bessel character values attached to a complex exponent s.

    With Λ(diag(a,b,b,a)) = |a⁻¹b|^(-s+1/2) one gets Λ(ϖ,1) = q^(1/2-s) and
    Λ(1,ϖ) = q^(s-1/2); in X = q^-s and r = q^(1/2) these are r·X and 1/(r·X).
    """

    model_config = ConfigDict(frozen=True)

    s_value: str = "s"
    lam_10: Scalar
    lam_01: Scalar

    @classmethod
    def for_exponent(cls) -> "SplitCharCorrespondence":
        return cls(lam_10=R * X, lam_01=ONE / (R * X))

    @model_validator(mode="after")
    def validate_reciprocal(self) -> "SplitCharCorrespondence":
        if self.lam_10 * self.lam_01 != 1:
            raise ValueError("Λ is trivial on the center: lam_10 * lam_01 must be 1")
        return self
