"""
Finite-residue checks of the GL2 and GSp4 group theory behind the Hecke formulas.

Everything here works with matrices over Z/p^k. Double coset statements about
GL2(o) are checked on their mod-p images, which is enough because Γ0(p) and
Γ^0(p) contain the principal congruence subgroup mod p and T(o), T(o)_m surject
onto their residue images.
"""

import logging
from fractions import Fraction
from itertools import product

from sympy import Matrix, Symbol as SympySymbol, factorint, isprime, legendre_symbol, multiplicity, simplify

from errors import (
    CaseMismatch,
    DegenerateD,
    InconsistentProbe,
    NotInvertible,
    NotSymplectic,
    UnsupportedPrime,
)
from models import (
    BesselCase,
    BesselCharacter,
    BesselSetup,
    CosetEntry,
    IntegrationProbe,
    PartitionReport,
    ResidueMatrix,
    Scalar,
    SplitTransfer,
    SubgroupSpec,
    SubgroupTag,
)
from models.scalar import ONE, ZERO, sqrt_d

logger = logging.getLogger(__name__)

Mat2 = tuple[int, int, int, int]

PART_CASES = {"i": BesselCase.INERT, "ii": BesselCase.RAMIFIED, "iii": BesselCase.SPLIT}

# (row, column) positions that must lie in p, per parahoric
_P_PATTERNS = {
    SubgroupTag.IWAHORI_I: ((0, 1), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)),
    SubgroupTag.SIEGEL_P1: ((2, 0), (2, 1), (3, 0), (3, 1)),
    SubgroupTag.KLINGEN_P2: ((0, 1), (2, 1), (3, 0), (3, 1), (3, 2)),
    SubgroupTag.PARAMODULAR_N: ((0, 1), (2, 1), (3, 0), (3, 1), (3, 2)),
}

J = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def classify(a: int, b: int, c: int, p: int) -> BesselSetup:
    """Case of L = F(sqrt d) for S = [[a, b/2], [b/2, c]] and the roots of c·u² + b·u + a mod p."""
    if p == 2 or not isprime(p):
        raise UnsupportedPrime(f"p must be an odd prime, got {p}")
    if c % p == 0:
        raise ValueError(f"c = {c} must be invertible mod {p}")
    d = b * b - 4 * a * c
    if d == 0:
        raise DegenerateD("d = b^2 - 4ac must be nonzero")
    if d % p == 0:
        if multiplicity(p, d) != 1:
            raise DegenerateD(f"ramified d = {d} must generate the discriminant, v_{p}(d) = 1")
        case = BesselCase.RAMIFIED
    elif legendre_symbol(d % p, p) == 1:
        case = BesselCase.SPLIT
    else:
        case = BesselCase.INERT
    roots = tuple(u for u in range(p) if (c * u * u + b * u + a) % p == 0)
    logger.debug("classified (%d, %d, %d) mod %d as %s, roots %s", a, b, c, p, case, roots)
    return BesselSetup(a=a, b=b, c=c, p=p, d=d, case=case, roots=roots)


# GL2(F_p) ---------------------------------------------------------------


def _mul(g: Mat2, h: Mat2, p: int) -> Mat2:
    a, b, c, d = g
    e, f, x, y = h
    return (a * e + b * x) % p, (a * f + b * y) % p, (c * e + d * x) % p, (c * f + d * y) % p


def _det(g: Mat2, p: int) -> int:
    return (g[0] * g[3] - g[1] * g[2]) % p


def _gl2(p: int) -> list[Mat2]:
    return [g for g in product(range(p), repeat=4) if _det(g, p)]


def _gamma_0(p: int) -> list[Mat2]:
    """Image of Γ0(p): lower-left entry in p."""
    return [g for g in _gl2(p) if g[2] == 0]


def _gamma_upper_0(p: int) -> list[Mat2]:
    """Image of Γ^0(p): upper-right entry in p."""
    return [g for g in _gl2(p) if g[1] == 0]


def _torus(setup: BesselSetup, m: int) -> list[Mat2]:
    p = setup.p
    if m >= 1:
        return [(x, u, 0, x) for x in range(1, p) for u in range(p)]
    (x00, x01), (x10, x11) = setup.xi
    elements = []
    for x, y in product(range(p), repeat=2):
        g = ((x + y * x00) % p, (y * x01) % p, (y * x10) % p, (x + y * x11) % p)
        if _det(g, p):
            elements.append(g)
    return elements


def _to_residue(g: Mat2, p: int) -> ResidueMatrix:
    return ResidueMatrix.of([[g[0], g[1]], [g[2], g[3]]], p)


def torus_residue(setup: BesselSetup, m: int) -> set[ResidueMatrix]:
    """Mod-p image of T(o) (m = 0) or of T(o)_m (m >= 1)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return {_to_residue(g, setup.p) for g in _torus(setup, m)}


def _double_coset(left: list[Mat2], rep: Mat2, right: list[Mat2], p: int) -> frozenset[Mat2]:
    rep_right = {_mul(rep, h, p) for h in right}
    return frozenset(_mul(t, g, p) for t in left for g in rep_right)


def _representatives(setup: BesselSetup) -> dict[str, Mat2]:
    """Named representatives: 1, w, n(u) = [[1, 0], [u, 1]] and products n(u)w."""
    p = setup.p
    w = (0, 1, 1, 0)
    reps = {"1": (1, 0, 0, 1), "w": w}
    names = {BesselCase.RAMIFIED: ("u0",), BesselCase.SPLIT: ("u1", "u2")}.get(setup.case, ())
    for name, root in zip(names, setup.roots):
        n = (1, 0, root % p, 1)
        reps[f"n({name})"] = n
        reps[f"n({name})w"] = _mul(n, w, p)
    return reps


def _decomposition_labels(part: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Representative labels of the Γ0 and Γ^0 versions of a decomposition."""
    match part:
        case "i":
            return ("w",), ("1",)
        case "ii":
            return ("n(u0)", "w"), ("n(u0)w", "1")
        case "iii":
            return ("n(u1)", "n(u2)", "w"), ("n(u1)w", "n(u2)w", "1")
        case "iv":
            return ("1", "w"), ("w", "1")
    raise ValueError(f"unknown decomposition part {part!r}")


def verify_gl2_decomposition(setup: BesselSetup, part: str, m: int = 0) -> PartitionReport:
    """Enumerate GL2(F_p) and check a double coset decomposition of GL2(o).

    Args:
        setup: Classified (a, b, c) data.
        part: ``i`` (inert), ``ii`` (ramified), ``iii`` (split) or ``iv`` (any case, m >= 1).
        m: Torus level; 0 for parts i-iii, positive for part iv.

    Returns:
        PartitionReport with the coset sizes of both the Γ0 and the Γ^0 version.
    """
    if part == "iv":
        if m < 1:
            raise CaseMismatch("part iv needs m >= 1")
    elif part not in PART_CASES:
        raise ValueError(f"unknown decomposition part {part!r}")
    elif PART_CASES[part] is not setup.case:
        raise CaseMismatch(f"part {part} is the {PART_CASES[part]} case, setup is {setup.case}")
    elif m != 0:
        raise CaseMismatch(f"part {part} is a statement about T(o), m must be 0")

    p = setup.p
    group = set(_gl2(p))
    torus = _torus(setup, m)
    reps = _representatives(setup)
    right_groups = {"gamma_0": _gamma_0(p), "gamma^0": _gamma_upper_0(p)}

    entries: list[CosetEntry] = []
    disjoint = covers = True
    cosets_by_label: dict[tuple[str, str], frozenset[Mat2]] = {}
    for level, labels in zip(right_groups, _decomposition_labels(part)):
        seen: set[Mat2] = set()
        for label in labels:
            coset = _double_coset(torus, reps[label], right_groups[level], p)
            cosets_by_label[level, label] = coset
            if seen & coset:
                disjoint = False
            seen |= coset
            entries.append(CosetEntry(rep=label, size=len(coset), level=level))
        if seen != group:
            covers = False

    gamma_0 = right_groups["gamma_0"]
    absorption = True
    if part in ("ii", "iii"):
        for label in _decomposition_labels(part)[0][:-1]:
            absorbed = _double_coset([(1, 0, 0, 1)], reps[label], gamma_0, p)
            absorption &= cosets_by_label["gamma_0", label] == absorbed
    elif part == "iv":
        absorption = cosets_by_label["gamma_0", "1"] == frozenset(gamma_0)

    report = PartitionReport(
        case=setup.case,
        part=part,
        p=p,
        m=m,
        group_order=len(group),
        cosets=tuple(entries),
        disjoint=disjoint,
        covers=covers,
        absorption=absorption,
    )
    logger.info("decomposition %s mod %d (%s): ok=%s", part, p, setup.case, report.ok)
    return report


# integration formula ----------------------------------------------------


def _check_probe_data(setup: BesselSetup, char: BesselCharacter) -> None:
    if char.case is not setup.case:
        raise CaseMismatch(f"character is {char.case}, setup is {setup.case}")
    if char.m0 != 0:
        raise CaseMismatch("residue-level integration needs an unramified character (m0 = 0)")


def _probe_function(setup: BesselSetup, m: int, probe: IntegrationProbe) -> dict[Mat2, Scalar]:
    """Propagate probe values along T(o)_m on the left and Γ0(p) or Γ^0(p) on the right."""
    p = setup.p
    reps = _representatives(setup)
    right = _gamma_0(p) if probe.level == "gamma_0" else _gamma_upper_0(p)
    torus = _torus(setup, m)
    values: dict[Mat2, Scalar] = {}
    for label, value in probe.values.items():
        if label not in reps:
            raise ValueError(f"unknown representative {label!r} for the {setup.case} case")
        for g in _double_coset(torus, reps[label], right, p):
            if g in values and values[g] != value:
                raise InconsistentProbe(f"probe assigns {values[g]} and {value} to {g}")
            values[g] = value
    return values


def brute_force_integral(
    setup: BesselSetup, m: int, char: BesselCharacter, probe: IntegrationProbe
) -> Scalar:
    """Average of the probe over GL2(F_p), by full enumeration."""
    _check_probe_data(setup, char)
    values = _probe_function(setup, m, probe)
    order = len(_gl2(setup.p))
    total = sum(values.values(), ZERO)
    return total / order


def integration_formula(
    setup: BesselSetup, m: int, char: BesselCharacter, probe: IntegrationProbe
) -> Scalar:
    """Closed form of the GL2(o) integral, evaluating the probe at the branch representatives."""
    _check_probe_data(setup, char)
    if m < char.m0:
        return ZERO
    values = _probe_function(setup, m, probe)
    reps = _representatives(setup)
    q = setup.p

    def f(label: str) -> Scalar:
        return values.get(reps[label], ZERO)

    if probe.level == "gamma_0":
        identity, far = "1", "w"
        ramified, split = ("n(u0)",), ("n(u1)", "n(u2)")
    else:
        identity, far = "w", "1"
        ramified, split = ("n(u0)w",), ("n(u1)w", "n(u2)w")

    if m >= 1:
        return (f(identity) + q * f(far)) / (q + 1)
    match setup.case:
        case BesselCase.INERT:
            return f(far)
        case BesselCase.RAMIFIED:
            return (f(ramified[0]) + q * f(far)) / (q + 1)
        case BesselCase.SPLIT:
            return (f(split[0]) + f(split[1]) + (q - 1) * f(far)) / (q + 1)


def branch_labels(setup: BesselSetup, m: int, level: str) -> tuple[str, ...]:
    """Representatives of the double cosets the integral sees, used to build indicator probes."""
    part = "iv" if m >= 1 else next(p for p, case in PART_CASES.items() if case is setup.case)
    gamma_0_labels, gamma_upper_labels = _decomposition_labels(part)
    return gamma_0_labels if level == "gamma_0" else gamma_upper_labels


# GSp4 -------------------------------------------------------------------


def _prime_of(modulus: int) -> tuple[int, int]:
    factors = factorint(modulus)
    if len(factors) != 1:
        raise ValueError(f"modulus {modulus} is not a prime power")
    (p, k), = factors.items()
    return p, k


def _valuation(value: Fraction, p: int) -> float:
    if value == 0:
        return float("inf")
    return multiplicity(p, abs(value.numerator)) - multiplicity(p, value.denominator)


def _symplectic_form(entries: list[list[Fraction]]) -> list[list[Fraction]]:
    """ᵗg J g."""
    size = range(4)
    jg = [[sum(Fraction(J[i][k]) * entries[k][j] for k in size) for j in size] for i in size]
    return [[sum(entries[k][i] * jg[k][j] for k in size) for j in size] for i in size]


def _multiplier(entries: list[list[Fraction]], p: int, precision: int) -> Fraction:
    """The multiplier μ with ᵗgJg ≡ μJ, to ``precision`` powers of p."""
    form = _symplectic_form(entries)
    mu = form[0][2]
    for i, j in product(range(4), repeat=2):
        if _valuation(form[i][j] - mu * J[i][j], p) < precision:
            raise NotSymplectic(f"ᵗgJg is not a multiple of J mod p^{precision}")
    return mu


def gsp4_membership(g: ResidueMatrix, sub: SubgroupSpec) -> bool:
    """Decide membership of a residue matrix in a compact subgroup.

    4x4 tags first check ᵗgJg = μ(g)J at the matrix modulus and return False when
    μ(g) is not a unit. For ``ParamodularN`` the (1, 3) entry is stored scaled by
    p^n and the modulus must be at least p^(n+1).
    """
    if g.n != sub.tag.dimension:
        raise ValueError(f"{sub.tag} expects {sub.tag.dimension}x{sub.tag.dimension} matrices")
    p, k = _prime_of(g.modulus)

    if g.n == 2:
        a, b, c, d = (x % p for row in g.entries for x in row)
        if (a * d - b * c) % p == 0:
            return False
        match sub.tag:
            case SubgroupTag.GL2_GAMMA0:
                return c == 0
            case SubgroupTag.GL2_GAMMA_UPPER0:
                return b == 0
            case SubgroupTag.TORUS_TO | SubgroupTag.TORUS_TOM:
                if sub.setup.p != p:
                    raise ValueError("torus setup and matrix use different primes")
                level = sub.m if sub.tag is SubgroupTag.TORUS_TOM else 0
                return (a, b, c, d) in set(_torus(sub.setup, level))

    entries = [[Fraction(x) for x in row] for row in g.entries]
    precision = k
    if sub.tag is SubgroupTag.PARAMODULAR_N:
        if k < sub.n + 1:
            raise ValueError(f"paramodular level {sub.n} needs modulus p^{sub.n + 1} or finer")
        entries[1][3] = entries[1][3] / p**sub.n
        precision = 1
    mu = _multiplier(entries, p, precision)
    if _valuation(mu, p) != 0:
        return False
    if sub.tag is SubgroupTag.PARAMODULAR_N:
        return all(g.entries[i][j] % p**sub.n == 0 for i, j in _P_PATTERNS[sub.tag])
    return all(g.entries[i][j] % p == 0 for i, j in _P_PATTERNS[sub.tag])


def s1(modulus: int) -> ResidueMatrix:
    return ResidueMatrix.of([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], modulus)


def s2(modulus: int) -> ResidueMatrix:
    return ResidueMatrix.of([[0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]], modulus)


def h(l: int, m: int, modulus: int) -> ResidueMatrix:
    """h(l, m) = diag(ϖ^(l+2m), ϖ^(l+m), 1, ϖ^m) with ϖ = p."""
    p, _ = _prime_of(modulus)
    exponents = (l + 2 * m, l + m, 0, m)
    if min(exponents) < 0:
        raise ValueError(f"h({l},{m}) is not integral")
    diagonal = [p**e for e in exponents]
    return ResidueMatrix.of([[diagonal[i] if i == j else 0 for j in range(4)] for i in range(4)], modulus)


def u_hat(u: int, modulus: int) -> ResidueMatrix:
    return ResidueMatrix.of([[1, 0, 0, 0], [u, 1, 0, 0], [0, 0, 1, -u], [0, 0, 0, 1]], modulus)


def eta(modulus: int) -> ResidueMatrix:
    p, _ = _prime_of(modulus)
    return ResidueMatrix.of([[0, 0, 0, -1], [0, 0, 1, 0], [0, p, 0, 0], [-p, 0, 0, 0]], modulus)


# matrix identities -------------------------------------------------------


def _lower_unipotent_identity(z, inverse, reduce) -> bool:
    lhs = Matrix([[1, 0], [z, 1]])
    upper = Matrix([[1, inverse], [0, 1]])
    rhs = upper * Matrix([[-inverse, 0], [0, -z]]) * Matrix([[0, 1], [-1, 0]]) * upper
    return all(reduce(entry) == 0 for entry in lhs - rhs)


def _eta_factorization() -> bool:
    varpi = SympySymbol("varpi")
    s1_matrix = Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    s2_matrix = Matrix([[0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]])
    eta_matrix = Matrix([[0, 0, 0, -1], [0, 0, 1, 0], [0, varpi, 0, 0], [-varpi, 0, 0, 0]])
    factored = s2_matrix * s1_matrix * s2_matrix * Matrix.diag(varpi, -varpi, 1, -1)
    return (eta_matrix - factored).is_zero_matrix


def verify_matrix_identities(z: int | Fraction | Scalar | str | None = None, p: int | None = None) -> bool:
    """Check [[1,0],[z,1]] = n⁺(1/z)·diag(-1/z, -z)·[[0,1],[-1,0]]·n⁺(1/z) and the η factorization.

    Args:
        z: Exact rational, a Scalar, or None for a free symbol.
        p: When given, ``z`` is an integer residue and the check runs mod p.
    """
    if z is None:
        symbol = SympySymbol("z")
        holds = _lower_unipotent_identity(symbol, 1 / symbol, simplify)
    elif p is not None:
        if int(z) % p == 0:
            raise NotInvertible(f"z = {z} is not invertible mod {p}")
        residue = int(z) % p
        holds = _lower_unipotent_identity(residue, pow(residue, -1, p), lambda entry: int(entry) % p)
    else:
        value = Scalar.coerce(z)
        if not value:
            raise NotInvertible("z must be nonzero")
        expr = value.as_expr()
        holds = _lower_unipotent_identity(expr, 1 / expr, simplify)
    return holds and _eta_factorization()


# change of models --------------------------------------------------------


def is_transfer(s: list[list[Scalar]], a: list[list[Scalar]], target: list[list[Scalar]], rho: Scalar = ONE) -> bool:
    """Whether target = rho · ᵗA S A exactly."""
    product_matrix = _transpose_product(s, a)
    return all(rho * product_matrix[i][j] == target[i][j] for i in range(2) for j in range(2))


def _transpose_product(s: list[list[Scalar]], a: list[list[Scalar]]) -> list[list[Scalar]]:
    sa = [[sum((s[i][k] * a[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
    return [[sum((a[k][i] * sa[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]


def build_split_transfer(setup: BesselSetup) -> SplitTransfer:
    """A = (1/sqrt d)·[[1, -2c], [-(b - sqrt d)/(2c), b + sqrt d]], which carries S to S' = [[0, 1/2], [1/2, 0]]."""
    if setup.d == 0:
        raise DegenerateD("split transfer needs d != 0")
    if setup.case is not BesselCase.SPLIT:
        raise CaseMismatch(f"split transfer needs a split setup, got {setup.case}")
    root = sqrt_d(setup.d)
    a, b, c = (Scalar(value) for value in (setup.a, setup.b, setup.c))
    scale = ONE / root
    matrix = [
        [scale, scale * (-2 * c)],
        [scale * (-(b - root) / (2 * c)), scale * (b + root)],
    ]
    s = [[a, b / 2], [b / 2, c]]
    half = Scalar(Fraction(1, 2))
    target = [[ZERO, half], [half, ZERO]]
    product_matrix = _transpose_product(s, matrix)
    verified = is_transfer(s, matrix, target, half)
    logger.info("split transfer for (%d, %d, %d): verified=%s", setup.a, setup.b, setup.c, verified)
    return SplitTransfer(
        matrix=tuple(tuple(row) for row in matrix),
        rho=half,
        product=tuple(tuple(row) for row in product_matrix),
        verified=verified,
    )
