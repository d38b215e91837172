"""
Scalar identities among zeta integrals of Siegel-averaged vectors in the split case.

Powers of q^s are written through X = q^-s and r = q^(1/2), so
q^(s-1/2) = r⁻¹X⁻¹, q^(-1/2-s) = r⁻¹X and q^(2s) = X⁻².
"""

import logging
from fractions import Fraction

from errors import DivisionByZero
from models import LFactor, Scalar, SplitCharCorrespondence
from models.scalar import GAMMA, ONE, R, Symbol, X

logger = logging.getLogger(__name__)

SAMPLE_X = (Fraction(1, 2), Fraction(1, 3), Fraction(2), Fraction(3), Fraction(-1, 5))


def _reduce_sign_square(value: Scalar) -> bool:
    """Whether ``value`` vanishes modulo γ² = 1."""
    numerator, _ = value.split_in(Symbol.GAMMA)
    even = sum((c for power, c in numerator.items() if power % 2 == 0), Scalar(0))
    odd = sum((c for power, c in numerator.items() if power % 2 == 1), Scalar(0))
    return not even and not odd


def _check_sign(gamma: Scalar) -> None:
    if gamma.is_constant and gamma not in (Scalar(1), Scalar(-1)):
        raise ValueError(f"gamma must be ±1 or symbolic with gamma^2 = 1, got {gamma}")


def via_l_factor(gamma: Scalar | int = GAMMA, r: Scalar = R) -> LFactor:
    """L(s, π) = 1/(1 - σ(ϖ)q^(-1/2-s))² for the VIa representation with σ² = 1."""
    gamma = Scalar.coerce(gamma)
    _check_sign(gamma)
    return LFactor(value=ONE / (ONE - gamma * X / r) ** 2)


def via_identity_sides(gamma: Scalar | int = GAMMA, l_factor: LFactor | None = None, r: Scalar = R) -> tuple[Scalar, Scalar]:
    """Both sides of (q-1)q^(2s)(L-1) + (1-q⁻¹)L = 2(q-1)σ(ϖ)q^(-1/2+s)·L."""
    gamma = Scalar.coerce(gamma)
    q = r**2
    L = (l_factor or via_l_factor(gamma, r)).value
    left = (q - 1) / X**2 * (L - 1) + (1 - ONE / q) * L
    right = 2 * (q - 1) * gamma / (r * X) * L
    return left, right


def verify_via_identity(gamma: Scalar | int = GAMMA, l_factor: LFactor | None = None, r: Scalar = R) -> bool:
    """Check the VIa Siegel-shadow zeta identity exactly; symbolic γ is reduced by γ² = 1."""
    gamma = Scalar.coerce(gamma)
    _check_sign(gamma)
    left, right = via_identity_sides(gamma, l_factor, r)
    difference = left - right
    holds = not difference if gamma.is_constant else _reduce_sign_square(difference)
    logger.info("VIa zeta identity at gamma = %s: %s", gamma, holds)
    return holds


def iia_siegelized_zeta(omega: Scalar | int, l_factor: LFactor, r: Scalar = R) -> Scalar:
    """(ω·q^(s-1/2) + 1)·L(s, π) for the Siegel average of the IIa paramodular newform."""
    return (Scalar.coerce(omega) / (r * X) + 1) * l_factor.value


def siegelized_factor(omega: Scalar | int, corr: SplitCharCorrespondence) -> Scalar:
    """ω·q^(s-1/2) + 1 with q^(s-1/2) read off as Λ(1,ϖ)."""
    return Scalar.coerce(omega) * corr.lam_01 + 1


def exceptional_case_predicate(omega: Scalar | int, corr: SplitCharCorrespondence) -> bool:
    """Λ(1,ϖ) = -ω, which for ω² = 1 is the vanishing of ω·q^(s-1/2) + 1."""
    omega = Scalar.coerce(omega)
    if omega**2 != 1:
        raise ValueError(f"omega must satisfy omega^2 = 1, got {omega}")
    exceptional = corr.lam_01 == -omega
    if exceptional != (not siegelized_factor(omega, corr)):
        raise AssertionError("Λ(1,ϖ) = -ω must coincide with ω·q^(s-1/2) + 1 = 0")
    return exceptional


def exceptional_siegelized_value(r: Scalar = R) -> Scalar:
    """Z(s, T_Si W0) on the exceptional locus: (1 - q⁻¹)⁻¹."""
    return ONE / (1 - ONE / r**2)


def shadow_sides(mutate: bool = False, l_factor: LFactor | None = None, r: Scalar = R) -> tuple[Scalar, Scalar]:
    """The substituted zeta integral and its closed form.

    Substitutes ∫W'(diag(a,a,1,1)s2s1)|a|^(s-3/2) = (q-1)q^(2s-1)(L-1) into
    Z(s, π(s2)T_Si W') = q·∫ + (1-q⁻¹)L and returns it with (q-1)q^(2s)(L-1) + (1-q⁻¹)L.
    ``mutate`` replaces the factor q^(2s-1) by q^(2s-2)·q², i.e. multiplies the integral by q.
    """
    q = r**2
    L = (l_factor or via_l_factor(GAMMA, r)).value
    integral = (q - 1) / (q * X**2) * (L - 1)
    if mutate:
        integral = integral * q
    substituted = q * integral + (1 - ONE / q) * L
    closed = (q - 1) / X**2 * (L - 1) + (1 - ONE / q) * L
    return substituted, closed


def shadow_constant_check(mutate: bool = False, r: Scalar = R) -> bool:
    """The normalization constants around the shadow vector agree, symbolically and at sample points."""
    substituted, closed = shadow_sides(mutate, r=r)
    if substituted != closed:
        logger.info("shadow constants disagree%s", " (mutated)" if mutate else "")
        return False
    evaluated = 0
    for x in SAMPLE_X:
        values = {Symbol.R: 3, Symbol.GAMMA: 1, Symbol.X: x}
        try:
            left, right = substituted.specialize(values), closed.specialize(values)
        except DivisionByZero:
            logger.debug("skipping X = %s, a pole of L(s)", x)
            continue
        if left != right:
            return False
        evaluated += 1
    return evaluated > 0
