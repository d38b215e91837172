"""
Static data for the seven non-spherical representation types with P1-fixed vectors.

Hecke and Atkin-Lehner eigenvalues, Satake restrictions, central characters,
parahoric fixed-vector dimensions and Bessel model existence. All formulas
are Scalars in r (q = r²), alpha = χ(ϖ) and gamma = σ(ϖ).
"""

import logging
from typing import Any

from errors import Inexpressible, RestrictionViolated
from models import BesselCase, BesselCharacter, EigenvalueData, FixedVectorDims, RepType, Scalar
from models.scalar import ALPHA, GAMMA, ONE, R, ZERO, Symbol

logger = logging.getLogger(__name__)

REPRESENTATIONS = {
    RepType.IIA: "χSt_GL(2) ⋊ σ",
    RepType.IIIA: "χ ⋊ σSt_GSp(2)",
    RepType.IVB: "L(ν², ν⁻¹σSt_GSp(2))",
    RepType.IVC: "L(ν^(3/2)St_GL(2), ν^(-3/2)σ)",
    RepType.VB: "L(ν^(1/2)ξSt_GL(2), ν^(-1/2)σ)",
    RepType.VIA: "τ(S, ν^(-1/2)σ)",
    RepType.VIB: "τ(T, ν^(-1/2)σ)",
}
VC_REPRESENTATION = "L(ν^(1/2)ξSt_GL(2), ξν^(-1/2)σ)"

FIXED_VECTORS = {
    RepType.IIA: FixedVectorDims(k=0, p02=1, p2=2, p1=1, iwahori=4, conductor=1, epsilon="-alpha*gamma"),
    RepType.IIIA: FixedVectorDims(k=0, p02=0, p2=1, p1=2, iwahori=4, conductor=2, epsilon="1"),
    RepType.IVB: FixedVectorDims(k=0, p02=0, p2=1, p1=2, iwahori=3, conductor=2, epsilon="1"),
    RepType.IVC: FixedVectorDims(k=0, p02=1, p2=2, p1=1, iwahori=3, conductor=1, epsilon="-gamma"),
    RepType.VB: FixedVectorDims(k=0, p02=1, p2=1, p1=1, iwahori=2, conductor=1, epsilon="gamma"),
    RepType.VIA: FixedVectorDims(k=0, p02=0, p2=1, p1=1, iwahori=3, conductor=2, epsilon="1"),
    RepType.VIB: FixedVectorDims(k=0, p02=0, p2=0, p1=1, iwahori=1, conductor=2, epsilon="1"),
}
VC_FIXED_VECTORS = FIXED_VECTORS[RepType.VB].model_copy(update={"epsilon": "-gamma"})

RESTRICTIONS = {
    RepType.IIA: ("alpha^2 != q", "alpha^2 != q^-1", "alpha != q^(3/2)", "alpha != q^(-3/2)"),
    RepType.IIIA: ("alpha != 1", "alpha != q^2", "alpha != q^-2"),
}

# Table of Bessel model existence, (split case, field cases)
EXISTENCE = {
    RepType.IIA: ("all Λ", "Λ ≠ (χσ)∘N"),
    RepType.IIIA: ("all Λ", "all Λ"),
    RepType.IVB: ("Λ = σ∘N", "Λ = σ∘N"),
    RepType.IVC: ("Λ(diag(a,b,b,a)) = ν(ab⁻¹)σ(ab) or ν(a⁻¹b)σ(ab)", "none"),
    RepType.VB: ("Λ = σ∘N", "Λ = σ∘N, Λ ≠ (ξσ)∘N"),
    RepType.VIA: ("all Λ", "Λ ≠ σ∘N"),
    RepType.VIB: ("none", "Λ = σ∘N"),
}
VC_EXISTENCE = ("Λ = (ξσ)∘N", "Λ ≠ σ∘N, Λ = (ξσ)∘N")


def _check_twist(t: RepType, xi_twist: bool) -> None:
    if xi_twist and t is not RepType.VB:
        raise ValueError(f"the ξ-twist is only defined for Vb, got {t}")


def _forbidden(t: RepType, r: Scalar) -> list[tuple[str, Scalar]]:
    q = r**2
    match t:
        case RepType.IIA:
            return [("alpha^2", q), ("alpha^2", ONE / q), ("alpha", q * r), ("alpha", ONE / (q * r))]
        case RepType.IIIA:
            return [("alpha", ONE), ("alpha", q**2), ("alpha", ONE / q**2)]
        case _:
            return []


def check_restrictions(t: RepType, alpha: Scalar = ALPHA, gamma: Scalar = GAMMA, r: Scalar = R) -> None:
    """Raise RestrictionViolated if the parameters hit an excluded value.

    Only exact coincidences are detected, so symbolic parameters pass unless they
    are literally one of the excluded expressions.
    """
    if not gamma:
        raise RestrictionViolated(f"{t}: gamma = σ(ϖ) must be nonzero")
    if Symbol.ALPHA in t.params and not alpha:
        raise RestrictionViolated(f"{t}: alpha = χ(ϖ) must be nonzero")
    for name, value in _forbidden(t, r):
        probe = alpha**2 if name == "alpha^2" else alpha
        if probe == value:
            raise RestrictionViolated(f"{t}: {name} = {value} is excluded")


def _eta_consistent(data: EigenvalueData) -> bool:
    if data.dim == 1:
        return data.omega**2 == data.central_char_at_pi
    (_, upper), (lower, _) = data.eta_action
    return upper * lower == data.central_char_at_pi


def central_character(t: RepType, alpha: Scalar = ALPHA, gamma: Scalar = GAMMA) -> Scalar:
    """The central character of the representation evaluated at ϖ."""
    match t:
        case RepType.IIA:
            return alpha**2 * gamma**2
        case RepType.IIIA:
            return alpha * gamma**2
        case _:
            return gamma**2


def eigenvalues(
    t: RepType,
    alpha: Scalar = ALPHA,
    gamma: Scalar = GAMMA,
    xi_twist: bool = False,
    r: Scalar = R,
) -> EigenvalueData:
    """Eigenvalues of T10, T01 and η on the P1-fixed vectors of a type.

    Args:
        t: Representation type.
        alpha: χ(ϖ), used by IIa and IIIa.
        gamma: σ(ϖ).
        xi_twist: For Vb, answer for the twist Vc instead.
        r: Square root of the residue field size.

    Returns:
        EigenvalueData with the (λ, μ) pairs in their standard order.

    Raises:
        RestrictionViolated: The parameters hit an excluded Satake value.
    """
    t = RepType(t)
    alpha, gamma, r = Scalar.coerce(alpha), Scalar.coerce(gamma), Scalar.coerce(r)
    _check_twist(t, xi_twist)
    check_restrictions(t, alpha, gamma, r)
    if xi_twist:
        gamma = -gamma
    q = r**2
    cc = central_character(t, alpha, gamma)
    match t:
        case RepType.IIA:
            data = EigenvalueData(
                lambdas=(alpha * gamma * q,),
                mus=(alpha**2 * gamma**2 * (alpha + ONE / alpha) * r**3,),
                eta_action=-alpha * gamma,
                central_char_at_pi=cc,
            )
        case RepType.IIIA:
            data = EigenvalueData(
                lambdas=(alpha * gamma * q, gamma * q),
                mus=(alpha * gamma**2 * (alpha * q + 1) * q, alpha * gamma**2 * (q / alpha + 1) * q),
                eta_action=((ZERO, gamma), (alpha * gamma, ZERO)),
                central_char_at_pi=cc,
            )
        case RepType.IVB:
            data = EigenvalueData(
                lambdas=(gamma, gamma * q**2),
                mus=(gamma**2 * (q + 1), gamma**2 * q * (q**3 + 1)),
                eta_action=((ZERO, gamma), (gamma, ZERO)),
                central_char_at_pi=cc,
            )
        case RepType.IVC:
            data = EigenvalueData(
                lambdas=(gamma * q,), mus=(gamma**2 * (q**3 + 1),), eta_action=-gamma, central_char_at_pi=cc
            )
        case RepType.VB:
            data = EigenvalueData(
                lambdas=(-gamma * q,), mus=(-(gamma**2) * q * (q + 1),), eta_action=gamma, central_char_at_pi=cc
            )
        case RepType.VIA:
            data = EigenvalueData(
                lambdas=(gamma * q,), mus=(gamma**2 * q * (q + 1),), eta_action=-gamma, central_char_at_pi=cc
            )
        case RepType.VIB:
            data = EigenvalueData(
                lambdas=(gamma * q,), mus=(gamma**2 * q * (q + 1),), eta_action=gamma, central_char_at_pi=cc
            )
    logger.debug("eigenvalues %s%s: λ=%s μ=%s", t, " (Vc)" if xi_twist else "", data.lambdas, data.mus)
    return data


def eta_consistent(t: RepType, xi_twist: bool = False) -> bool:
    """ω² (1-dim) or the product of the η swap entries (2-dim) equals the central character."""
    return _eta_consistent(eigenvalues(t, xi_twist=xi_twist))


def iiia_swap(value: Scalar) -> Scalar:
    """Apply γ → α⁻¹γ, then α → α⁻¹, i.e. (α, γ) ↦ (α⁻¹, αγ) simultaneously."""
    return Scalar.coerce(value).substitute({Symbol.ALPHA: ONE / ALPHA, Symbol.GAMMA: ALPHA * GAMMA})


def iiia_swap_exchanges_pairs() -> bool:
    data = eigenvalues(RepType.IIIA)
    first, second = data.pair(0), data.pair(1)
    swapped_first = tuple(iiia_swap(value) for value in first)
    swapped_second = tuple(iiia_swap(value) for value in second)
    return swapped_first == second and swapped_second == first


def central_char_compat(
    t: RepType,
    char: BesselCharacter,
    alpha: Scalar = ALPHA,
    gamma: Scalar = GAMMA,
    xi_twist: bool = False,
) -> bool:
    """Λ(ϖ) must equal the central character at ϖ for a Bessel model to exist."""
    _check_twist(RepType(t), xi_twist)
    sigma = -Scalar.coerce(gamma) if xi_twist else Scalar.coerce(gamma)
    return char.lam_pi == central_character(RepType(t), Scalar.coerce(alpha), sigma)


def _same(left: Scalar, right: Scalar) -> bool:
    """Exact comparison of character values that refuses to guess."""
    if left == right:
        return True
    if left.is_constant and right.is_constant:
        return False
    raise Inexpressible(f"cannot decide {left} = {right} from the stored character values")


def _is_norm_of(char: BesselCharacter, sigma: Scalar) -> bool:
    """Λ = σ'∘N for the unramified character σ' with σ'(ϖ) = sigma."""
    if char.m0 > 0:
        return False
    match char.case:
        case BesselCase.SPLIT:
            return _same(char.lam_10, sigma) and _same(char.lam_01, sigma)
        case BesselCase.RAMIFIED:
            return _same(char.lam_piL, sigma)
        case BesselCase.INERT:
            return _same(char.lam_pi, sigma**2)


def bessel_exists(
    t: RepType,
    char: BesselCharacter,
    sigma_at_pi: Scalar = GAMMA,
    chi_at_pi: Scalar = ALPHA,
    xi_twist: bool = False,
    r: Scalar = R,
) -> bool:
    """Whether the type admits a (Λ, θ)-Bessel model, decided on Λ's stored values.

    Raises:
        Inexpressible: Deciding needs an equality between values that are not
            both rational and not identical as expressions.
    """
    t = RepType(t)
    _check_twist(t, xi_twist)
    sigma, chi = Scalar.coerce(sigma_at_pi), Scalar.coerce(chi_at_pi)
    q = Scalar.coerce(r) ** 2
    split = char.case is BesselCase.SPLIT
    match t:
        case RepType.IIA:
            exists = split or not _is_norm_of(char, chi * sigma)
        case RepType.IIIA:
            exists = True
        case RepType.IVB:
            exists = _is_norm_of(char, sigma)
        case RepType.IVC:
            exists = split and char.m0 == 0 and (
                (_same(char.lam_10, sigma / q) and _same(char.lam_01, sigma * q))
                or (_same(char.lam_10, sigma * q) and _same(char.lam_01, sigma / q))
            )
        case RepType.VB:
            # (ξσ)∘N = σ∘N on an inert L, so the field condition is empty there
            if char.case is BesselCase.INERT:
                exists = False
            else:
                exists = _is_norm_of(char, -sigma if xi_twist else sigma)
        case RepType.VIA:
            exists = split or not _is_norm_of(char, sigma)
        case RepType.VIB:
            exists = not split and _is_norm_of(char, sigma)
    logger.debug("bessel_exists %s %s m0=%d -> %s", t, char.case, char.m0, exists)
    return exists


def fixed_vector_dims(t: RepType, xi_twist: bool = False) -> FixedVectorDims:
    _check_twist(RepType(t), xi_twist)
    return VC_FIXED_VECTORS if xi_twist else FIXED_VECTORS[RepType(t)]


def _text(value: Any) -> Any:
    if isinstance(value, Scalar):
        return value.to_text()
    if isinstance(value, tuple):
        return [_text(item) for item in value]
    return value


def _entry(t: RepType, xi_twist: bool = False) -> dict[str, Any]:
    data = eigenvalues(t, xi_twist=xi_twist)
    split, field = VC_EXISTENCE if xi_twist else EXISTENCE[t]
    one_dim = data.dim == 1
    return {
        "representation": VC_REPRESENTATION if xi_twist else REPRESENTATIONS[t],
        "p1_dim": data.dim,
        "params": sorted(symbol.value for symbol in t.params),
        "lambda": _text(data.lambdas[0] if one_dim else data.lambdas),
        "mu": _text(data.mus[0] if one_dim else data.mus),
        "eta": _text(data.eta_action),
        "central_char": data.central_char_at_pi.to_text(),
        "restrictions": list(RESTRICTIONS.get(t, ())),
        "existence": {"split": split, "field": field},
        "fixed_vectors": fixed_vector_dims(t, xi_twist).model_dump(),
    }


def emit_catalog() -> dict[str, Any]:
    """Every catalog table as a JSON-ready document; Vc is listed as the ξ-twist of Vb."""
    catalog = {t.value: _entry(t) for t in RepType}
    catalog["Vc"] = {**_entry(RepType.VB, xi_twist=True), "twist_of": RepType.VB.value}
    logger.info("catalog emitted: %d types", len(catalog))
    return catalog
