"""
Tower-indexed values of P1-invariant Bessel functions and the Hecke operators on them.

A P1-invariant Bessel function is determined by its values on the double coset
representatives h(l,m)·w. The functions here encode which of those values are
forced to vanish, how T10 and T01 act on them, and the closed form of the
main tower B(h(l,m)).
"""

import logging
from typing import Iterator

from errors import CaseMismatch, OutOfStatedRange, UnsupportedIndex
from models import (
    BesselCase,
    BesselCharacter,
    LinearRow,
    RepType,
    RowOperator,
    Scalar,
    TowerIndex,
    TowerTag,
    TruncatedSeries,
    Window,
)
from models.scalar import ONE, R, ZERO, Symbol, Y
from models.series import series_expand
from models.tower import merge_terms

logger = logging.getLogger(__name__)

E, S2, S12, S212, U0, U1, U2 = TowerTag

CASE_TAGS = {
    BesselCase.INERT: (),
    BesselCase.RAMIFIED: (U0,),
    BesselCase.SPLIT: (U1, U2),
}


def vanishes_at(l: int, m: int, w: TowerTag, m0: int) -> bool:
    if w in (E, S2) and l < 0:
        return True
    if w in (S12, S212) and l < -1:
        return True
    if w in (E, S212) and m < m0:
        return True
    if w is S2 and m < m0 - 1:
        return True
    if w.is_u and m0 > 0:
        return True
    if w is U0 and l < -1:
        return True
    return w in (U1, U2) and l < 0


def vanishes(idx: TowerIndex, char: BesselCharacter) -> bool:
    """Whether every P1-invariant (Λ, θ)-Bessel function vanishes at ``idx``."""
    return vanishes_at(idx.l, idx.m, idx.w, char.m0)


def tags_for(case: BesselCase) -> tuple[TowerTag, ...]:
    return (E, S2, S12, S212, *CASE_TAGS[BesselCase(case)])


def index_set(char: BesselCharacter, window: Window) -> list[TowerIndex]:
    """In-window representatives that exist for the case and are not forced to vanish."""
    return [index for index in window.indices(tags_for(char.case)) if not vanishes(index, char)]


class _RowBuilder:
    """Collects the terms of one Hecke expansion, pruning forced zeros."""

    def __init__(self, target: TowerIndex, operator: RowOperator, char: BesselCharacter) -> None:
        self.target = target
        self.operator = operator
        self.char = char
        self.pairs: list[tuple[TowerIndex, Scalar]] = []
        self.unresolved = False

    def add(self, coefficient: Scalar | int, l: int, m: int, w: TowerTag) -> "_RowBuilder":
        coefficient = Scalar.coerce(coefficient)
        if not coefficient or vanishes_at(l, m, w, self.char.m0):
            return self
        if m < 0:
            # h(l,-1)s2 lies outside the representative set; the row cannot be used
            self.unresolved = True
            return self
        self.pairs.append((TowerIndex(l=l, m=m, w=w), coefficient))
        return self

    def build(self) -> LinearRow:
        row = LinearRow(
            target=self.target,
            operator=self.operator,
            terms=merge_terms(self.pairs),
            unresolved=self.unresolved,
        )
        logger.debug("%s", row.describe())
        return row


def _branch(m: int, char: BesselCharacter) -> str:
    if m < char.m0:
        return "low"
    if m >= max(char.m0, 1):
        return "generic"
    return char.case.value


def _check_u(idx: TowerIndex, char: BesselCharacter) -> None:
    if idx.w not in CASE_TAGS[char.case]:
        raise CaseMismatch(f"{idx.w} indices do not exist in the {char.case} case")
    if char.m0 > 0:
        raise OutOfStatedRange(f"{idx.w} rows need an unramified character, got m0 = {char.m0}")
    if idx.l < idx.w.min_l:
        raise OutOfStatedRange(f"no row is stated for {idx}")


def _u_pair(char: BesselCharacter, w: TowerTag) -> tuple[Scalar, Scalar]:
    """(own, other) values: U1 pairs with Λ(1,ϖ), U2 with Λ(ϖ,1)."""
    if w is U1:
        return char.lam_01, char.lam_10
    return char.lam_10, char.lam_01


def t10_row(idx: TowerIndex, char: BesselCharacter, r: Scalar = R) -> LinearRow:
    """The expansion of (T10 B)(idx) in tower values.

    Raises:
        OutOfStatedRange: No formula is stated at this index.
        CaseMismatch: A û index was requested for the wrong case.
    """
    q = Scalar.coerce(r) ** 2
    l, m, w = idx.l, idx.m, idx.w
    lam = char.lam_pi
    row = _RowBuilder(idx, RowOperator.T10, char)
    if w.is_u:
        _check_u(idx, char)
        if w is U0:
            if l == -1:
                return row.add(-(q**2), 0, 0, E).build()
            return row.add(q**2 * (q - 1), l + 1, 0, E).add(q**2, l - 1, 1, S12).build()
        own, _ = _u_pair(char, w)
        row.add(q**2 * (q - 1), l + 1, 0, E).add(q * (q - 1), l - 1, 1, S12)
        return row.add(q * own, l, 0, w).build()

    if l < 0:
        raise OutOfStatedRange(f"T10 rows are stated for l >= 0, got {idx}")
    branch = _branch(m, char)
    match w:
        case TowerTag.E:
            row.add(q**3, l + 1, m, E)
        case TowerTag.S2:
            row.add(q**2 * (q - 1), l + 1, m, E)
            match branch:
                case "low":
                    row.add(-q, l - 1, m + 1, S12)
                case "generic":
                    row.add(q * lam, l + 1, m - 1, S2).add(q * (q - 1), l - 1, m + 1, S12)
                case "inert":
                    row.add(q**2, l - 1, 1, S12)
                case "ramified":
                    row.add(q * char.lam_piL, l, 0, U0).add(q * (q - 1), l - 1, 1, S12)
                case "split":
                    row.add(q * char.lam_10, l, 0, U2).add(q * char.lam_01, l, 0, U1)
                    row.add(q * (q - 2), l - 1, 1, S12)
        case TowerTag.S12:
            row.add(q**2 * (q - 1), l + 1, m, E)
            match branch:
                case "low":
                    row.add(-q * lam, l + 1, m - 1, S2)
                case "generic":
                    row.add(q**2, l - 1, m + 1, S12)
                case "inert":
                    row.add(q * (q + 1), l - 1, 1, S12).add(-q * lam, l + 1, -1, S2)
                case "ramified":
                    row.add(q * char.lam_piL, l, 0, U0).add(q**2, l - 1, 1, S12)
                    row.add(-q * lam, l + 1, -1, S2)
                case "split":
                    row.add(q * char.lam_01, l, 0, U1).add(q * char.lam_10, l, 0, U2)
                    row.add(q * (q - 1), l - 1, 1, S12).add(-q * lam, l + 1, -1, S2)
        case TowerTag.S212:
            row.add(q**2 * (q - 1), l + 1, m, E).add(lam, l - 1, m, S212)
            match branch:
                case "low":
                    pass
                case "generic":
                    row.add(q * (q - 1), l - 1, m + 1, S12).add((q - 1) * lam, l + 1, m - 1, S2)
                case "inert":
                    row.add(q**2 - 1, l - 1, 1, S12)
                case "ramified":
                    row.add((q - 1) * char.lam_piL, l, 0, U0).add(q * (q - 1), l - 1, 1, S12)
                case "split":
                    row.add((q - 1) * char.lam_01, l, 0, U1).add((q - 1) * char.lam_10, l, 0, U2)
                    row.add((q - 1) ** 2, l - 1, 1, S12)
    return row.build()


def t01_row(idx: TowerIndex, char: BesselCharacter, r: Scalar = R) -> LinearRow:
    """The expansion of (T01 B)(idx) in tower values.

    Raises:
        UnsupportedIndex: ``idx`` is an s1s2 or s2s1s2 index, which has no stated formula.
        OutOfStatedRange: No formula is stated at this index.
        CaseMismatch: A û index was requested for the wrong case.
    """
    q = Scalar.coerce(r) ** 2
    l, m, w = idx.l, idx.m, idx.w
    lam = char.lam_pi
    if w in (S12, S212):
        raise UnsupportedIndex(f"no T01 formula is available at {idx}")
    row = _RowBuilder(idx, RowOperator.T01, char)

    if w is U0:
        _check_u(idx, char)
        lam_l = char.lam_piL
        if l == -1:
            return row.add(q**4, -1, 1, S12).add(-(q**2) * lam_l, 0, 0, E).build()
        if l == 0:
            row.add(q**4, 0, 1, S12).add(q**2 * (q - 1) * lam_l, 1, 0, E)
            return row.add(-q * lam, 0, 0, E).build()
        row.add(q**4, l, 1, S12).add(q * lam, l - 2, 1, S12)
        row.add(q**2 * (q - 1) * lam_l, l + 1, 0, E).add(lam * q * (q - 1), l, 0, E)
        return row.build()
    if w in (U1, U2):
        _check_u(idx, char)
        own, other = _u_pair(char, w)
        row.add(q**3 * own, l + 1, 0, w).add(q**3 * (q - 1), l, 1, S12)
        row.add(q**2 * (q - 1) * other, l + 1, 0, E)
        if l >= 1:
            row.add(lam * q * (q - 1), l, 0, E).add(lam * own, l - 1, 0, w)
            row.add((q - 1) * lam, l - 2, 1, S12)
        return row.build()

    if l < 0:
        raise OutOfStatedRange(f"T01 rows are stated for l >= 0, got {idx}")
    branch = _branch(m, char)
    if w is E:
        match branch:
            case "low":
                pass
            case "generic":
                row.add(q**3 * lam, l + 2, m - 1, E).add(q**4, l, m + 1, E)
            case "inert":
                row.add(q**3 * (q + 1), l, 1, E)
            case "ramified":
                row.add(q**3 * char.lam_piL, l + 1, 0, E).add(q**4, l, 1, E)
            case "split":
                row.add(q**3 * (char.lam_10 + char.lam_01), l + 1, 0, E).add(q**3 * (q - 1), l, 1, E)
        return row.build()

    match branch:
        case "low":
            row.add(-(q**3), l, m + 1, S12).add(-lam, l - 2, m + 1, S12)
        case "generic":
            row.add(q**3 * lam, l + 2, m - 1, S2).add(lam**2, l, m - 1, S2)
            row.add((q - 1) * lam, l - 2, m + 1, S12).add(q**3 * (q - 1), l, m + 1, S12)
        case "inert":
            row.add(q**4, l, 1, S12).add(q * lam, l - 2, 1, S12)
        case "ramified":
            row.add(q**3 * char.lam_piL, l + 1, 0, U0).add(lam * char.lam_piL, l - 1, 0, U0)
            row.add((q - 1) * lam, l - 2, 1, S12).add(q**3 * (q - 1), l, 1, S12)
        case "split":
            row.add(q**3 * char.lam_10, l + 1, 0, U2).add(q**3 * char.lam_01, l + 1, 0, U1)
            row.add(lam * char.lam_10, l - 1, 0, U2).add(lam * char.lam_01, l - 1, 0, U1)
            row.add(q**3 * (q - 2), l, 1, S12).add((q - 2) * lam, l - 2, 1, S12)
    row.add(q**2 * (q - 1), l, m + 1, E)
    if l == 0 and m == 0:
        row.add(char.legendre * q * lam, 0, 0, E)
    elif l >= 1:
        row.add(q * (q - 1) * lam, l, m, E)
    return row.build()


def hecke_rows(char: BesselCharacter, window: Window, r: Scalar = R) -> Iterator[LinearRow]:
    """Every stated T10 and T01 expansion at the in-window non-vanishing indices."""
    for index in index_set(char, window):
        try:
            yield t10_row(index, char, r)
        except OutOfStatedRange:
            pass
        if index.w in (S12, S212):
            continue
        try:
            yield t01_row(index, char, r)
        except OutOfStatedRange:
            pass


def kappa(case: BesselCase, char: BesselCharacter, lam: Scalar, mu: Scalar, r: Scalar = R) -> Scalar:
    """The numerator coefficient of the main tower generating function."""
    if BesselCase(case) is not char.case:
        raise CaseMismatch(f"character is {char.case}, asked for {case}")
    q = Scalar.coerce(r) ** 2
    if char.m0 > 0:
        return ZERO
    match char.case:
        case BesselCase.INERT:
            return mu / (q + 1)
        case BesselCase.RAMIFIED:
            return char.lam_piL * lam
        case BesselCase.SPLIT:
            return (q * lam * (char.lam_10 + char.lam_01) - mu) / (q - 1)


def main_tower_generating_function(char: BesselCharacter, lam: Scalar, mu: Scalar, r: Scalar = R) -> Scalar:
    """(1 - κq⁻⁴Y) / (1 - μq⁻⁴Y + λ²q⁻⁷Λ(ϖ)Y²), the series of Y^(-m0) Σ B(h(0,m)) Y^m."""
    q = Scalar.coerce(r) ** 2
    k = kappa(char.case, char, lam, mu, r)
    numerator = ONE - k / q**4 * Y
    denominator = ONE - mu / q**4 * Y + lam**2 / q**7 * char.lam_pi * Y**2
    return numerator / denominator


def main_tower_series(
    l: int,
    order: int,
    t: RepType,
    char: BesselCharacter,
    lam: Scalar,
    mu: Scalar,
    r: Scalar = R,
) -> TruncatedSeries:
    """Coefficients of Y^0..Y^order of Σ_m B(h(l,m)) Y^m, normalized by B(h(0,m0)) = 1.

    Args:
        l: Main tower column, l >= 0.
        order: Highest power of Y kept; at least m0.
        t: Representation type the eigenvalues belong to.
        char: Bessel character data.
        lam: T10 eigenvalue.
        mu: T01 eigenvalue.
        r: Square root of the residue field size.
    """
    if l < 0:
        raise ValueError(f"main tower columns start at l = 0, got {l}")
    if order < char.m0:
        raise ValueError(f"order {order} is below m0 = {char.m0}")
    q = Scalar.coerce(r) ** 2
    expansion = series_expand(main_tower_generating_function(char, lam, mu, r), Symbol.Y, order - char.m0)
    series = TruncatedSeries(Symbol.Y, [ZERO] * char.m0 + list(expansion.coeffs))
    logger.debug("main tower %s l=%d up to Y^%d", RepType(t), l, order)
    return series * (lam / q**3) ** l


def check_two_step_recursion(
    series: TruncatedSeries,
    lam: Scalar,
    mu: Scalar,
    lam_pi: Scalar,
    m0: int,
    r: Scalar = R,
) -> bool:
    """q⁴c[m+2] - μc[m+1] + λ²q⁻³Λ(ϖ)c[m] = 0 for m0 <= m <= order - 2."""
    q = Scalar.coerce(r) ** 2
    c = series.coeffs
    for m in range(m0, series.order - 1):
        if q**4 * c[m + 2] - mu * c[m + 1] + lam**2 / q**3 * lam_pi * c[m] != 0:
            logger.debug("two-step recursion fails at m = %d", m)
            return False
    return True


def check_l_shift(lower: TruncatedSeries, upper: TruncatedSeries, lam: Scalar, r: Scalar = R) -> bool:
    """B(h(l+1,m)) = λq⁻³·B(h(l,m)) coefficientwise."""
    q = Scalar.coerce(r) ** 2
    scale = lam / q**3
    return all(lower[k] * scale == upper[k] for k in range(min(lower.order, upper.order) + 1))
