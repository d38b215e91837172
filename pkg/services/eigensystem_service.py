"""
Truncated eigensystems for P1-invariant Bessel functions and their kernels.

An eigensystem collects, for one (λ, μ) pair, the eigen-substituted Hecke rows
λ·B(idx) = (T10 B)(idx) and μ·B(idx) = (T01 B)(idx) at every in-window index
together with the selected constraint families. Only complete rows enter,
i.e. rows whose every term is in-window. Its kernel models the common
eigenvectors restricted to the window.
"""

import logging
from typing import Iterable, Mapping

from errors import EmptyWindow, Inexpressible
from models import (
    BesselCharacter,
    DistinguishedValue,
    EigenSystem,
    KernelReport,
    LinearRow,
    RepType,
    Scalar,
    TowerIndex,
    TowerTable,
    TowerTag,
    Window,
)
from models.scalar import ALPHA, GAMMA, ONE, R, ZERO

from .catalog_service import bessel_exists, central_char_compat, eigenvalues
from .constraint_service import constraint_rows, default_families, held_out_families
from .linear_algebra import kernel
from .tower_service import CASE_TAGS, index_set, main_tower_series, t01_row, t10_row

logger = logging.getLogger(__name__)

Vector = tuple[Scalar, ...]


def _complete(row: LinearRow, window: Window) -> bool:
    if row.unresolved:
        return False
    indices = row.indices() | ({row.target} if row.target is not None else set())
    return all(window.contains(index.l, index.m) for index in indices)


def _existence_warnings(
    t: RepType, char: BesselCharacter, alpha: Scalar, gamma: Scalar, r: Scalar, xi_twist: bool
) -> list[str]:
    warnings = []
    if not central_char_compat(t, char, alpha, gamma, xi_twist):
        warnings.append(f"lam_pi = {char.lam_pi} differs from the central character at ϖ")
    try:
        if not bessel_exists(t, char, gamma, alpha, xi_twist, r):
            warnings.append(f"{t} has no Bessel model for this character")
    except Inexpressible as exc:
        warnings.append(f"Bessel model existence undecided: {exc}")
    return warnings


def assemble_eigensystem(
    t: RepType,
    eig_index: int,
    char: BesselCharacter,
    window: Window,
    families: Iterable[str] | None = None,
    alpha: Scalar = ALPHA,
    gamma: Scalar = GAMMA,
    r: Scalar = R,
    xi_twist: bool = False,
) -> EigenSystem:
    """Build the truncated homogeneous system for one eigen-pair.

    Args:
        t: Representation type.
        eig_index: Which (λ, μ) pair of a 2-dim type.
        char: Bessel character data.
        window: Truncation of the tower index set.
        families: Constraint family ids; defaults to the Atkin-Lehner families.
        alpha: χ(ϖ).
        gamma: σ(ϖ).
        r: Square root of the residue field size.
        xi_twist: For Vb, use the Vc eigenvalues.

    Raises:
        EmptyWindow: No index in the window survives the vanishing rules.
    """
    t = RepType(t)
    alpha, gamma, r = Scalar.coerce(alpha), Scalar.coerce(gamma), Scalar.coerce(r)
    data = eigenvalues(t, alpha, gamma, xi_twist=xi_twist, r=r)
    if eig_index >= data.dim:
        raise ValueError(f"{t} has {data.dim} eigen-pair(s), got eig_index {eig_index}")
    lam, mu = data.pair(eig_index)
    unknowns = tuple(sorted(index_set(char, window), key=lambda index: index.sort_key))
    if not unknowns:
        raise EmptyWindow(f"no non-vanishing index in window {window.as_tuple()} for m0 = {char.m0}")

    rows: list[LinearRow] = []
    for index in unknowns:
        candidates = [(t10_row(index, char, r), lam)] if index.l >= 0 or index.w.is_u else []
        if index.w not in (TowerTag.S12, TowerTag.S212):
            candidates.append((t01_row(index, char, r), mu))
        for row, eigenvalue in candidates:
            if _complete(row, window):
                equation = row.to_equation(eigenvalue)
                if equation.terms:
                    rows.append(equation)

    selected = tuple(default_families(t, char) if families is None else families)
    rows += constraint_rows(t, char, window, eig_index, selected, alpha, gamma, r, xi_twist)
    system = EigenSystem(
        rep_type=t,
        eig_index=eig_index,
        char=char,
        window=window,
        lam=lam,
        mu=mu,
        families=selected,
        unknowns=unknowns,
        rows=tuple(rows),
        warnings=tuple(_existence_warnings(t, char, alpha, gamma, r, xi_twist)),
    )
    logger.info(
        "assembled %s #%d %s m0=%d window=%s: %d unknowns, %d rows",
        t, eig_index, char.case, char.m0, window.as_tuple(), len(unknowns), len(rows),
    )
    return system


def _matrix(rows: Iterable[LinearRow], unknowns: tuple[TowerIndex, ...]) -> list[list[Scalar]]:
    column = {index: position for position, index in enumerate(unknowns)}
    matrix = []
    for row in rows:
        dense = [ZERO] * len(unknowns)
        for index, coefficient in row.terms:
            dense[column[index]] = coefficient
        matrix.append(dense)
    return matrix


def distinguished_indices(char: BesselCharacter) -> list[TowerIndex]:
    """B(h(0,m0)) and, in the split or ramified case, the û values at the origin."""
    extra = [TowerIndex(l=0, m=0, w=tag) for tag in CASE_TAGS[char.case]]
    return [TowerIndex(l=0, m=char.m0, w=TowerTag.E), *extra]


def _normalize(vector: Vector, positions: list[int]) -> Vector:
    for position in positions:
        if vector[position]:
            pivot = vector[position]
            return tuple(value / pivot for value in vector)
    for value in vector:
        if value:
            return tuple(entry / value for entry in vector)
    return vector


def _interior(system: EigenSystem) -> list[TowerIndex]:
    """Main tower indices two steps inside the window, with their s2 partners when vib_s2 ties them."""
    l_max, m_max = system.window.as_tuple()
    tags = (TowerTag.E, TowerTag.S2) if "vib_s2" in system.families else (TowerTag.E,)
    return [
        index
        for index in system.unknowns
        if index.w in tags and index.l >= 0 and index.l + 3 <= l_max and index.m + 2 <= m_max
    ]


def _vanishing_at(basis: list[Vector], position: int) -> list[Vector]:
    """A basis of the span of ``basis`` cut down to the vectors that vanish at ``position``."""
    if not basis:
        return []
    combinations = kernel([[vector[position] for vector in basis]], len(basis))
    return [
        tuple(sum((c * vector[i] for c, vector in zip(combination, basis)), ZERO) for i in range(len(basis[0])))
        for combination in combinations
    ]


def _distinguished(basis: list[Vector], position: int | None, label: str, interior: list[int]) -> DistinguishedValue:
    if position is None:
        return DistinguishedValue(index=label, attainable=False, forced_nonzero=False, identically_zero=True)
    attainable = any(vector[position] for vector in basis)
    # forced: the span reaches the interior, and its part vanishing at the index does not
    reaches_interior = any(vector[i] for vector in basis for i in interior)
    forced = (
        attainable
        and reaches_interior
        and not any(vector[i] for vector in _vanishing_at(basis, position) for i in interior)
    )
    return DistinguishedValue(index=label, attainable=attainable, forced_nonzero=forced, identically_zero=not attainable)


def _main_tower_matches(system: EigenSystem, basis: list[Vector], r: Scalar) -> bool:
    position = {index: i for i, index in enumerate(system.unknowns)}
    origin = TowerIndex(l=0, m=system.char.m0, w=TowerTag.E)
    if origin not in position:
        return True
    m_max = system.window.m_max
    interior = [index for index in _interior(system) if index.w is TowerTag.E]
    series = {
        l: main_tower_series(l, m_max, system.rep_type, system.char, system.lam, system.mu, r)
        for l in {index.l for index in interior}
    }
    for vector in basis:
        scale = vector[position[origin]]
        for index in interior:
            if vector[position[index]] != scale * series[index.l][index.m]:
                logger.debug("main tower mismatch at %s", index)
                return False
    return True


def solve_and_report(
    system: EigenSystem,
    alpha: Scalar = ALPHA,
    gamma: Scalar = GAMMA,
    r: Scalar = R,
    xi_twist: bool = False,
) -> KernelReport:
    """Kernel of the system, validated against the held-out families.

    The validated kernel is the subspace of the kernel that also satisfies every
    held-out family instance in the window. Distinguished values and the main
    tower comparison are computed on it.
    """
    unknowns = system.unknowns
    basis = [tuple(vector) for vector in kernel(system.matrix(), len(unknowns))]
    held_out = held_out_families(system.rep_type, system.char)
    validation = constraint_rows(
        system.rep_type, system.char, system.window, system.eig_index, held_out, alpha, gamma, r, xi_twist
    )
    if validation:
        validated = [tuple(vector) for vector in kernel(system.matrix() + _matrix(validation, unknowns), len(unknowns))]
    else:
        validated = basis

    position = {index: i for i, index in enumerate(unknowns)}
    anchors = distinguished_indices(system.char)
    anchor_positions = [position[index] for index in anchors if index in position]
    normalized = [_normalize(vector, anchor_positions) for vector in validated]
    interior = [position[index] for index in _interior(system)]
    distinguished = {
        str(index): _distinguished(normalized, position.get(index), str(index), interior) for index in anchors
    }
    matches = _main_tower_matches(system, normalized, Scalar.coerce(r))
    report = KernelReport(
        rep_type=system.rep_type,
        case=system.char.case.value,
        m0=system.char.m0,
        eig_index=system.eig_index,
        window=system.window.as_tuple(),
        unknowns=len(unknowns),
        equations=len(system.rows),
        dim=len(basis),
        validated_dim=len(validated),
        distinguished=distinguished,
        held_out_families=held_out,
        held_out_ok=len(validated) == len(basis),
        main_tower_matches_series=matches,
        basis=tuple(
            {str(index): value.to_text() for index, value in zip(unknowns, vector) if value} for vector in normalized
        ),
        warnings=system.warnings,
    )
    logger.info(
        "kernel %s #%d %s: dim %d, validated %d, B%s attainable=%s",
        system.rep_type, system.eig_index, system.char.case, report.dim, report.validated_dim,
        anchors[0], distinguished[str(anchors[0])].attainable,
    )
    return report


def satisfies(rows: Iterable[LinearRow], vector: Mapping[TowerIndex, Scalar]) -> bool:
    """Whether every equation row evaluates to zero on ``vector``."""
    return all(not row.evaluate(dict(vector)) for row in rows)


def kernel_vectors(system: EigenSystem) -> list[dict[TowerIndex, Scalar]]:
    """Kernel basis of ``system`` as index -> value maps."""
    return [dict(zip(system.unknowns, vector)) for vector in kernel(system.matrix(), len(system.unknowns))]


def main_tower_table(
    t: RepType,
    char: BesselCharacter,
    window: Window,
    eig_index: int = 0,
    alpha: Scalar = ALPHA,
    gamma: Scalar = GAMMA,
    r: Scalar = R,
    xi_twist: bool = False,
) -> TowerTable:
    """Closed-form main tower B(h(l,m)) on the window, normalized by B(h(0,m0)) = 1."""
    data = eigenvalues(t, alpha, gamma, xi_twist=xi_twist, r=r)
    lam, mu = data.pair(eig_index)
    values: dict[TowerIndex, Scalar] = {}
    for l in range(window.l_max + 1):
        series = main_tower_series(l, max(window.m_max, char.m0), t, char, lam, mu, r)
        for m in range(window.m_max + 1):
            values[TowerIndex(l=l, m=m, w=TowerTag.E)] = series[m]
    return TowerTable(window=window, char=char, values=values)


def kernel_table(system: EigenSystem, report: KernelReport, vector: int = 0) -> TowerTable:
    """One normalized validated kernel vector as a tower table."""
    if not report.basis:
        return TowerTable(window=system.window, char=system.char, values={})
    by_name = {str(index): index for index in system.unknowns}
    values = {by_name[name]: Scalar.parse(text) for name, text in report.basis[vector].items()}
    return TowerTable(window=system.window, char=system.char, values=values)



def _main_tower_part(system: EigenSystem, report: KernelReport) -> list[dict[TowerIndex, Scalar]]:
    tables = (kernel_table(system, report, position) for position in range(len(report.basis)))
    return [{index: value for index, value in table.values.items() if index.w is TowerTag.E} for table in tables]


def iiia_swap_exchanges_solutions(
    char: BesselCharacter,
    window: Window,
    alpha: Scalar,
    gamma: Scalar,
    r: Scalar = R,
) -> bool:
    """Each IIIa eigen-pair's kernel reappears as the other pair's kernel at (α⁻¹, αγ).

    Both systems are solved and validated; the normalized main towers of their
    validated kernels must agree and B(h(0,m0)) must be forced nonzero in both.
    """
    alpha, gamma, r = Scalar.coerce(alpha), Scalar.coerce(gamma), Scalar.coerce(r)
    swapped = (ONE / alpha, alpha * gamma)
    origin = str(TowerIndex(l=0, m=char.m0, w=TowerTag.E))
    for eig_index in (0, 1):
        towers = []
        for index, (a, g) in ((eig_index, (alpha, gamma)), (1 - eig_index, swapped)):
            system = assemble_eigensystem(RepType.IIIA, index, char, window, alpha=a, gamma=g, r=r)
            report = solve_and_report(system, a, g, r)
            if not report.distinguished[origin].forced_nonzero:
                logger.info("IIIa #%d at (α, γ) = (%s, %s): B%s not forced nonzero", index, a, g, origin)
                return False
            towers.append(_main_tower_part(system, report))
        if towers[0] != towers[1]:
            logger.info("IIIa #%d main tower differs from #%d after the swap", eig_index, 1 - eig_index)
            return False
    return True
