"""
Linear relations among tower values beyond the Hecke rows.

Two kinds of family live here. The ``s2_*`` families and ``onedim_main_shift``
follow from the T10 and T01 rows alone; an eigensystem assembled without them
must still satisfy them, which is how kernels are validated. The other
families encode consequences of the Atkin-Lehner action, which is never
applied directly, and are what an eigensystem is assembled from.
"""

import logging
import random
from typing import Callable, Iterable, Iterator

from models import BesselCase, BesselCharacter, LinearRow, RepType, RowOperator, Scalar, TowerIndex, TowerTag, Window
from models.scalar import ALPHA, GAMMA, ONE, Q, R
from models.tower import merge_terms

from .catalog_service import eigenvalues
from .tower_service import t01_row, t10_row, vanishes_at

logger = logging.getLogger(__name__)

E, S2, S12, S212, U0, U1, U2 = TowerTag

# (coefficient, l, m, tag)
Term = tuple[Scalar, int, int, TowerTag]
Family = Callable[["_Params", int, int], Iterable[list[Term]]]

HELD_OUT = ("s2_shift", "s2_origin", "s2_origin_conductor", "s2_shift_conductor", "onedim_main_shift")

CONSEQUENCE_IDS = ("s2_shift", "s2_origin")


class _Params:
    """Eigenvalues and character data one family instance is written in."""

    def __init__(
        self,
        t: RepType,
        char: BesselCharacter,
        eig_index: int,
        alpha: Scalar,
        gamma: Scalar,
        r: Scalar,
        xi_twist: bool,
    ) -> None:
        data = eigenvalues(t, alpha, gamma, xi_twist=xi_twist, r=r)
        self.t = t
        self.char = char
        self.q = r**2
        self.lam, self.mu = data.pair(eig_index)
        self.omega = data.omega if data.dim == 1 else None
        # the second IIIa eigenvector obeys the first one's relations at (α⁻¹, αγ)
        if t is RepType.IIIA and eig_index == 1:
            self.alpha, self.gamma = ONE / alpha, alpha * gamma
        else:
            self.alpha, self.gamma = alpha, gamma


def _s2_shift(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    m0 = p.char.m0
    if l < 0 or not (m >= max(m0, 1) or (m0 > 0 and m >= m0 - 1)):
        return
    q, lam_pi = p.q, p.char.lam_pi
    yield [
        (p.lam * lam_pi, l, m, S2),
        (-p.mu * q, l + 1, m, S2),
        (p.lam * q**3, l + 2, m, S2),
        (-(q**5) * (q - 1), l + 3, m, E),
        (q**3 * (q - 1), l + 1, m + 1, E),
    ]


def _s2_origin(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l != 0 or m < max(p.char.m0, 1):
        return
    q, lam_pi = p.q, p.char.lam_pi
    yield [
        (p.mu, 0, m, S2),
        (-(q**2) * p.lam, 1, m, S2),
        (-(lam_pi**2), 0, m - 1, S2),
        (-(q**2) * (q - 1), 0, m + 1, E),
        (q**4 * (q - 1), 2, m, E),
    ]


def _s2_origin_conductor(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    m0 = p.char.m0
    if m0 == 0 or l != 0 or m != m0:
        return
    q, lam_pi = p.q, p.char.lam_pi
    yield [
        (p.mu, 0, m0, S2),
        (-(q**2) * p.lam, 1, m0, S2),
        (-(lam_pi**2), 0, m0 - 1, S2),
        (-(q - 1) * (p.mu - p.lam**2) / q**2, 0, m0, E),
    ]


def _s2_shift_conductor(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    m0 = p.char.m0
    if m0 == 0 or l < 0 or m != m0 - 1:
        return
    q, lam_pi = p.q, p.char.lam_pi
    yield [
        (p.lam * lam_pi, l, m, S2),
        (-p.mu * q, l + 1, m, S2),
        (p.lam * q**3, l + 2, m, S2),
        (p.lam * (q - 1), l, m0, E),
    ]


def _onedim_main_shift(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0:
        return
    yield [(p.lam, l, m, E), (-(p.q**3), l + 1, m, E)]


def _onedim_s2_eta(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m < max(p.char.m0, 1):
        return
    q = p.q
    yield [(q - 1, l, m, E), (-(q**2), l, m, S2), (-q * p.omega, l + 1, m - 1, S2)]


def _onedim_inert_s2(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m != 0:
        return
    yield [(p.q * (p.q + 1), l, 0, S2), (-(p.q - 1), l, 0, E)]


def _vib_s2(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0:
        return
    yield [(p.q, l, m, S2), (ONE, l, m, E)]


def _vib_u(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < -1 or m != 0:
        return
    tags = (U0,) if p.char.case is BesselCase.RAMIFIED else (U1, U2)
    for tag in tags:
        yield [(p.q, l, 0, S212), (ONE, l, 0, tag)]


def _iiia_s212_shift(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < -1:
        return
    yield [(p.gamma, l, m, S212), (-(p.q**2), l + 1, m, S212)]


def _iiia_s12(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m < max(p.char.m0, 1):
        return
    q, ag = p.q, p.alpha * p.gamma
    yield [(-ag * q, l, m, S12), (q**2, l - 1, m + 1, S12), (ag * (q - 1), l, m, E)]


def _iiia_s2(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m < max(p.char.m0, 1):
        return
    q = p.q
    yield [(-p.gamma * q, l + 1, m - 1, S2), (q**2, l, m, S2), (q**2 * (q - 1), l, m, S212)]


def _iiia_sum(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m < max(p.char.m0, 1):
        return
    q = p.q
    yield [(q**3, l, m, S212), (q**2, l, m, S2), (q, l, m, S12), (ONE, l, m, E)]


def _iiia_inert_s2(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m != 0:
        return
    yield [(p.alpha * p.gamma * p.q, l, 0, S2), (-(p.q**2), l - 1, 1, S12)]


def _iiia_inert_s212(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m != 0:
        return
    yield [(p.alpha * p.gamma * p.q, l, 0, S212), (p.q + 1, l - 1, 1, S12)]


def _iiia_inert_s2_shift(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l < 0 or m != 0:
        return
    yield [(p.gamma, l, 0, S2), (-(p.q**2), l + 1, 0, S2)]


def _iiia_inert_chain(p: _Params, l: int, m: int) -> Iterator[list[Term]]:
    if l != 0 or m != 0:
        return
    q, a, g = p.q, p.alpha, p.gamma
    links: list[Term] = [
        (a * g**2 * (a * q + 1) * q, 0, 0, S2),
        (q**4, 0, 1, S12),
        (a * g * q**3, 1, 0, S2),
        (a * g**2 * q, 0, 0, S2),
    ]
    for left, right in zip(links, links[1:]):
        coefficient, l2, m2, w2 = right
        yield [left, (-coefficient, l2, m2, w2)]


FAMILIES: dict[str, Family] = {
    "s2_shift": _s2_shift,
    "s2_origin": _s2_origin,
    "s2_origin_conductor": _s2_origin_conductor,
    "s2_shift_conductor": _s2_shift_conductor,
    "onedim_main_shift": _onedim_main_shift,
    "onedim_s2_eta": _onedim_s2_eta,
    "onedim_inert_s2": _onedim_inert_s2,
    "vib_s2": _vib_s2,
    "vib_u": _vib_u,
    "iiia_s212_shift": _iiia_s212_shift,
    "iiia_s12": _iiia_s12,
    "iiia_s2": _iiia_s2,
    "iiia_sum": _iiia_sum,
    "iiia_inert_s2": _iiia_inert_s2,
    "iiia_inert_s212": _iiia_inert_s212,
    "iiia_inert_s2_shift": _iiia_inert_s2_shift,
    "iiia_inert_chain": _iiia_inert_chain,
}


def applicable_families(t: RepType, char: BesselCharacter) -> tuple[str, ...]:
    """Every family that holds for eigenvectors of type ``t`` with this character."""
    t = RepType(t)
    inert_unramified = char.case is BesselCase.INERT and char.m0 == 0
    ids = ["s2_shift", "s2_origin"]
    if char.m0 > 0:
        ids += ["s2_origin_conductor", "s2_shift_conductor"]
    if t.p1_dim == 1:
        ids.append("onedim_main_shift")
    if t.omega_sign_matches_lambda:
        ids.append("onedim_s2_eta")
        if inert_unramified:
            ids.append("onedim_inert_s2")
    if t is RepType.VIB:
        ids.append("vib_s2")
        if char.m0 == 0 and char.case is not BesselCase.INERT:
            ids.append("vib_u")
    if t is RepType.IIIA:
        ids += ["iiia_s212_shift", "iiia_s12", "iiia_s2", "iiia_sum"]
        if inert_unramified:
            ids += ["iiia_inert_s2", "iiia_inert_s212", "iiia_inert_s2_shift", "iiia_inert_chain"]
    return tuple(ids)


def default_families(t: RepType, char: BesselCharacter) -> tuple[str, ...]:
    """The Atkin-Lehner families an eigensystem is assembled from."""
    return tuple(family for family in applicable_families(t, char) if family not in HELD_OUT)


def held_out_families(t: RepType, char: BesselCharacter) -> tuple[str, ...]:
    return tuple(family for family in applicable_families(t, char) if family in HELD_OUT)


def _equation(family: str, terms: list[Term], m0: int) -> LinearRow | None:
    pairs = [
        (TowerIndex(l=l, m=m, w=w), coefficient)
        for coefficient, l, m, w in terms
        if coefficient and not vanishes_at(l, m, w, m0)
    ]
    merged = merge_terms(pairs)
    if not merged:
        return None
    return LinearRow(operator=RowOperator.CONSTRAINT, terms=merged, family=family, is_equation=True)


def _complete(row: LinearRow, window: Window) -> bool:
    return all(window.contains(index.l, index.m) for index in row.indices())


def constraint_rows(
    t: RepType,
    char: BesselCharacter,
    window: Window,
    eig_index: int = 0,
    families: Iterable[str] | None = None,
    alpha: Scalar = ALPHA,
    gamma: Scalar = GAMMA,
    r: Scalar = R,
    xi_twist: bool = False,
) -> list[LinearRow]:
    """All in-window instances of the selected constraint families.

    Args:
        t: Representation type.
        char: Bessel character data.
        window: Truncation; instances touching indices outside it are dropped.
        eig_index: Which (λ, μ) pair of a 2-dim type.
        families: Family ids; defaults to every applicable family.
        alpha: χ(ϖ).
        gamma: σ(ϖ).
        r: Square root of the residue field size.
        xi_twist: For Vb, use the Vc eigenvalues.

    Returns:
        Equation rows tagged with their family id.
    """
    t = RepType(t)
    applicable = applicable_families(t, char)
    selected = applicable if families is None else tuple(families)
    unknown = [family for family in selected if family not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown constraint families: {unknown}")
    params = _Params(t, char, eig_index, Scalar.coerce(alpha), Scalar.coerce(gamma), Scalar.coerce(r), xi_twist)
    rows: list[LinearRow] = []
    for family in selected:
        if family not in applicable:
            logger.warning("family %s does not apply to %s (%s, m0=%d); skipped", family, t, char.case, char.m0)
            continue
        builder = FAMILIES[family]
        count = 0
        for l in range(-1, window.l_max + 1):
            for m in range(window.m_max + 1):
                for terms in builder(params, l, m):
                    row = _equation(family, terms, char.m0)
                    if row is not None and _complete(row, window):
                        rows.append(row)
                        count += 1
        logger.debug("family %s: %d in-window instances", family, count)
    return rows


# consequence identities ----------------------------------------------------

# (factor, operator, l, m, tag): factor·(operator B)(h(l,m)tag), or a plain value when operator is None
Piece = tuple[Scalar, RowOperator | None, int, int, TowerTag]


def _consequence_pieces(identity: str, l: int, m: int, q: Scalar, lam_pi: Scalar) -> tuple[list[Piece], list[Piece]]:
    """Left side with eigenvalues replaced by operators, and the right side."""
    match identity:
        case "s2_shift":
            left = [
                (lam_pi, RowOperator.T10, l, m, S2),
                (-q, RowOperator.T01, l + 1, m, S2),
                (q**3, RowOperator.T10, l + 2, m, S2),
            ]
            right = [(q**5 * (q - 1), None, l + 3, m, E), (-(q**3) * (q - 1), None, l + 1, m + 1, E)]
        case "s2_origin":
            left = [
                (ONE, RowOperator.T01, 0, m, S2),
                (-(q**2), RowOperator.T10, 1, m, S2),
                (-(lam_pi**2), None, 0, m - 1, S2),
            ]
            right = [(q**2 * (q - 1), None, 0, m + 1, E), (-(q**4) * (q - 1), None, 2, m, E)]
        case _:
            raise ValueError(f"unknown consequence identity {identity!r}; expected one of {CONSEQUENCE_IDS}")
    return left, right


def _expand(pieces: list[Piece], char: BesselCharacter, r: Scalar) -> list[tuple[TowerIndex, Scalar]]:
    pairs = []
    for factor, operator, l, m, w in pieces:
        index = TowerIndex(l=l, m=m, w=w)
        if operator is None:
            if not vanishes_at(l, m, w, char.m0):
                pairs.append((index, factor))
            continue
        row = t10_row(index, char, r) if operator is RowOperator.T10 else t01_row(index, char, r)
        pairs.extend((term, factor * coefficient) for term, coefficient in row.terms)
    return pairs


def verify_consequence_identity(
    identity: str,
    mutate: tuple[int, Scalar] | None = None,
    r: Scalar = R,
) -> bool:
    """Check an s2 identity formally from the T10 and T01 rows on the generic branch.

    Every tower value is an independent unknown and Λ(ϖ) stays symbolic. The
    check runs over l in 0..2, m in 1..2 and m0 in {0, 1}.

    Args:
        identity: ``s2_shift`` or ``s2_origin``.
        mutate: ``(position, factor)`` multiplies one coefficient of the
            concatenated left and right sides by ``factor``.
        r: Square root of the residue field size.
    """
    q = Scalar.coerce(r) ** 2
    for m0 in (0, 1):
        char = BesselCharacter.generic(BesselCase.INERT, m0)
        for l in (0, 1, 2):
            for m in (1, 2):
                left, right = _consequence_pieces(identity, l, m, q, char.lam_pi)
                pieces = left + [(-factor, op, pl, pm, pw) for factor, op, pl, pm, pw in right]
                if mutate is not None:
                    position, scale = mutate
                    factor, op, pl, pm, pw = pieces[position % len(pieces)]
                    pieces[position % len(pieces)] = (factor * scale, op, pl, pm, pw)
                residual = merge_terms(_expand(pieces, char, r))
                if residual:
                    logger.debug("%s fails at l=%d m=%d m0=%d: %s", identity, l, m, m0, residual)
                    return False
    logger.info("consequence identity %s holds%s", identity, " (mutated)" if mutate else "")
    return True


def random_mutations(identity: str, count: int, seed: int) -> list[tuple[int, Scalar]]:
    """Seeded single-coefficient mutations for ``verify_consequence_identity``."""
    rng = random.Random(seed)
    size = sum(len(side) for side in _consequence_pieces(identity, 1, 1, Q, ONE))
    factors = [Q, ONE / Q, Scalar(2), Scalar(-1)]
    return [(rng.randrange(size), rng.choice(factors)) for _ in range(count)]
