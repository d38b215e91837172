"""
The default verification profile.

Every check is a module-level function ``check_*(check, seed, **kwargs)`` that
returns a CheckResult. ``registry()`` lists them with their arguments, and
``run_checks`` executes them sequentially or in a process pool. Results are
sorted by check id, so a report only depends on the seed.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product, repeat
from typing import Any, Callable, Iterator, NamedTuple

from pydantic import ValidationError
from sympy import multiplicity

from errors import BesselLabError, DegenerateD
from models import (
    BesselCase,
    BesselCharacter,
    BesselSetup,
    CheckResult,
    CheckStatus,
    IntegrationProbe,
    LFactor,
    RepType,
    ResidueMatrix,
    Scalar,
    SplitCharCorrespondence,
    SubgroupSpec,
    SubgroupTag,
    Symbol,
    TowerTag,
    VerificationReport,
    Window,
)
from models.scalar import ALPHA, GAMMA, ONE, R, X, Y
from models.series import series_expand

from .catalog_service import bessel_exists, eigenvalues, emit_catalog, eta_consistent, iiia_swap_exchanges_pairs
from .constraint_service import CONSEQUENCE_IDS, constraint_rows, random_mutations, verify_consequence_identity
from .coset_service import (
    branch_labels,
    brute_force_integral,
    build_split_transfer,
    classify,
    eta,
    gsp4_membership,
    h,
    integration_formula,
    s1,
    s2,
    u_hat,
    verify_gl2_decomposition,
    verify_matrix_identities,
)
from .eigensystem_service import (
    assemble_eigensystem,
    iiia_swap_exchanges_solutions,
    kernel_table,
    satisfies,
    solve_and_report,
)
from .tower_service import check_l_shift, check_two_step_recursion, main_tower_series
from .zeta_service import (
    exceptional_case_predicate,
    iia_siegelized_zeta,
    shadow_constant_check,
    siegelized_factor,
    verify_via_identity,
    via_l_factor,
)

logger = logging.getLogger(__name__)

PRIMES = (3, 5)
SERIES_CONDUCTORS = (0, 1, 2)
SERIES_EXTRA_ORDER = 10
MUTATIONS = 5
RANDOM_TRIALS = 20


class Check(NamedTuple):
    check_id: str
    reference: str
    func: Callable[..., CheckResult]
    kwargs: dict[str, Any] = {}


class KernelCase(NamedTuple):
    """One exact specialization for a kernel check; values are rational strings."""

    label: str
    rep_type: RepType
    case: BesselCase
    m0: int
    values: dict[str, str]
    alpha: str = "1"
    gamma: str = "1"
    eig_index: int = 0
    xi_twist: bool = False
    exceptional: bool = False

    def character(self) -> BesselCharacter:
        return BesselCharacter(
            case=self.case, m0=self.m0, **{name: Scalar.parse(value) for name, value in self.values.items()}
        )


# r = 3 throughout, so q = 9
KERNEL_R = "3"
KERNEL_CASES = (
    KernelCase("IIa.inert.m1", RepType.IIA, BesselCase.INERT, 1, {"lam_pi": "4"}, alpha="2"),
    KernelCase("IIa.ramified.m0", RepType.IIA, BesselCase.RAMIFIED, 0, {"lam_pi": "4", "lam_piL": "-2"}, alpha="2"),
    KernelCase("IIa.split.m0", RepType.IIA, BesselCase.SPLIT, 0, {"lam_pi": "4", "lam_10": "1", "lam_01": "4"}, alpha="2"),
    KernelCase("IIa.split.m0.trivial", RepType.IIA, BesselCase.SPLIT, 0, {"lam_pi": "1", "lam_10": "2", "lam_01": "1/2"}, alpha="-1"),
    KernelCase(
        "IIa.split.m0.exceptional",
        RepType.IIA,
        BesselCase.SPLIT,
        0,
        {"lam_pi": "1", "lam_10": "-1", "lam_01": "-1"},
        alpha="-1",
        exceptional=True,
    ),
    *(
        KernelCase(f"IIIa.{case.value}.m0.e{index}", RepType.IIIA, case, 0, values, alpha="4", eig_index=index)
        for case, values in (
            (BesselCase.INERT, {"lam_pi": "4"}),
            (BesselCase.RAMIFIED, {"lam_pi": "4", "lam_piL": "2"}),
            (BesselCase.SPLIT, {"lam_pi": "4", "lam_10": "1", "lam_01": "4"}),
        )
        for index in (0, 1)
    ),
    *(
        KernelCase(f"IVb.{case.value}.m0.e{index}", RepType.IVB, case, 0, values, eig_index=index)
        for case, values in (
            (BesselCase.INERT, {"lam_pi": "1"}),
            (BesselCase.RAMIFIED, {"lam_pi": "1", "lam_piL": "1"}),
            (BesselCase.SPLIT, {"lam_pi": "1", "lam_10": "1", "lam_01": "1"}),
        )
        for index in (0, 1)
    ),
    KernelCase("IVc.split.m0", RepType.IVC, BesselCase.SPLIT, 0, {"lam_pi": "1", "lam_10": "1/9", "lam_01": "9"}),
    KernelCase(
        "IVc.split.m0.negative",
        RepType.IVC,
        BesselCase.SPLIT,
        0,
        {"lam_pi": "1", "lam_10": "-9", "lam_01": "-1/9"},
        gamma="-1",
    ),
    KernelCase(
        "IVc.split.m0.swapped", RepType.IVC, BesselCase.SPLIT, 0, {"lam_pi": "1", "lam_10": "9", "lam_01": "1/9"}
    ),
    KernelCase("Vb.ramified.m0", RepType.VB, BesselCase.RAMIFIED, 0, {"lam_pi": "1", "lam_piL": "1"}),
    KernelCase("Vb.split.m0", RepType.VB, BesselCase.SPLIT, 0, {"lam_pi": "1", "lam_10": "1", "lam_01": "1"}),
    KernelCase(
        "Vb.split.m0.sigma2", RepType.VB, BesselCase.SPLIT, 0, {"lam_pi": "4", "lam_10": "2", "lam_01": "2"}, gamma="2"
    ),
    KernelCase(
        "Vc.ramified.m0", RepType.VB, BesselCase.RAMIFIED, 0, {"lam_pi": "1", "lam_piL": "-1"}, xi_twist=True
    ),
    KernelCase(
        "Vc.split.m0", RepType.VB, BesselCase.SPLIT, 0, {"lam_pi": "1", "lam_10": "-1", "lam_01": "-1"}, xi_twist=True
    ),
    KernelCase("VIa.inert.m1", RepType.VIA, BesselCase.INERT, 1, {"lam_pi": "1"}),
    KernelCase("VIa.ramified.m0", RepType.VIA, BesselCase.RAMIFIED, 0, {"lam_pi": "1", "lam_piL": "-1"}),
    KernelCase("VIa.split.m0", RepType.VIA, BesselCase.SPLIT, 0, {"lam_pi": "1", "lam_10": "2", "lam_01": "1/2"}),
    KernelCase("VIb.inert.m0", RepType.VIB, BesselCase.INERT, 0, {"lam_pi": "1"}),
    KernelCase("VIb.inert.m0.negative", RepType.VIB, BesselCase.INERT, 0, {"lam_pi": "1"}, gamma="-1"),
    KernelCase("VIb.ramified.m0", RepType.VIB, BesselCase.RAMIFIED, 0, {"lam_pi": "1", "lam_piL": "1"}),
)


def _outcome(check: Check, passed: bool, witness: Any = None, detail: str = "") -> CheckResult:
    status = CheckStatus.PASS if passed else CheckStatus.FAIL
    if not passed and witness is None:
        witness = {"check": check.check_id}
    return CheckResult(
        check_id=check.check_id, reference=check.reference, status=status, witness=witness, detail=detail
    )


# scalar -------------------------------------------------------------------


def _random_scalar(rng: random.Random, symbols: tuple[Scalar, ...] = (R, ALPHA, GAMMA)) -> Scalar:
    def poly() -> Scalar:
        value = Scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        for symbol in symbols:
            value += rng.randint(-3, 3) * symbol ** rng.randint(0, 2)
        return value

    numerator, denominator = poly(), poly()
    return numerator / denominator if denominator else numerator


def check_ring_axioms(check: Check, seed: int) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIALS):
        a, b, c = (_random_scalar(rng) for _ in range(3))
        laws = {
            "additive associativity": (a + b) + c == a + (b + c),
            "multiplicative associativity": (a * b) * c == a * (b * c),
            "additive commutativity": a + b == b + a,
            "multiplicative commutativity": a * b == b * a,
            "distributivity": a * (b + c) == a * b + a * c,
            "additive inverse": not a + (-a),
            "multiplicative inverse": not a or a * (ONE / a) == ONE,
            "canonical text": Scalar.parse(a.to_text()) == a,
        }
        broken = [law for law, holds in laws.items() if not holds]
        if broken:
            return _outcome(check, False, {"law": broken[0], "operands": [x.to_text() for x in (a, b, c)]})
    return _outcome(check, True, detail=f"{RANDOM_TRIALS} random triples")


def check_series_multiplicativity(check: Check, seed: int, order: int = 6) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIALS):
        f, g = (
            (ONE + _random_scalar(rng, (R,)) * Y) / (ONE + _random_scalar(rng, (R,)) * Y + rng.randint(-2, 2) * Y**2)
            for _ in range(2)
        )
        product_series = series_expand(f * g, Symbol.Y, order)
        if product_series != series_expand(f, Symbol.Y, order) * series_expand(g, Symbol.Y, order):
            return _outcome(check, False, {"f": f.to_text(), "g": g.to_text(), "order": order})
    return _outcome(check, True, detail=f"{RANDOM_TRIALS} random pairs to order {order}")


# coset --------------------------------------------------------------------


def _setups(p: int) -> Iterator[BesselSetup]:
    for a, b, c in product(range(p), range(p), range(1, p)):
        try:
            yield classify(a, b, c, p)
        except DegenerateD:
            continue


def _representative(p: int, case: BesselCase) -> BesselSetup:
    return next(setup for setup in _setups(p) if setup.case is case)


def _degenerate(d: int, p: int) -> bool:
    return d == 0 or (d % p == 0 and multiplicity(p, abs(d)) >= 2)


def check_classify(check: Check, seed: int, p: int) -> CheckResult:
    counts = {case: 0 for case in BesselCase}
    degenerate = 0
    # the grid never reaches p^2 | d with d != 0, so (p^2, 0, 1) is added
    for a, b, c in (*product(range(p), range(p), range(1, p)), (p * p, 0, 1)):
        expected = _degenerate(b * b - 4 * a * c, p)
        try:
            setup = classify(a, b, c, p)
        except DegenerateD:
            if not expected:
                return _outcome(check, False, {"abc": [a, b, c], "error": "DegenerateD"})
            degenerate += 1
            continue
        except ValidationError as exc:
            return _outcome(check, False, {"abc": [a, b, c], "error": str(exc)})
        if expected:
            return _outcome(check, False, {"abc": [a, b, c], "case": setup.case.value, "expected": "DegenerateD"})
        roots = [u for u in range(p) if (c * u * u + b * u + a) % p == 0]
        if len(roots) != setup.case.legendre + 1:
            return _outcome(check, False, {"abc": [a, b, c], "case": setup.case.value, "roots": roots})
        counts[setup.case] += 1
    if not all(counts.values()):
        return _outcome(check, False, {"counts": {case.value: n for case, n in counts.items()}})
    detail = ", ".join(f"{case.value} {n}" for case, n in counts.items())
    return _outcome(check, True, detail=f"{detail}, degenerate {degenerate}")


def check_decomposition(check: Check, seed: int, p: int, part: str, case: BesselCase) -> CheckResult:
    setup = _representative(p, case)
    report = verify_gl2_decomposition(setup, part, 1 if part == "iv" else 0)
    sizes = ", ".join(f"{entry.level}:{entry.rep}={entry.size}" for entry in report.cosets)
    witness = None if report.ok else report.model_dump(mode="json")
    return _outcome(check, report.ok, witness, detail=sizes)


def check_integral(check: Check, seed: int, p: int, case: BesselCase, m: int, level: str) -> CheckResult:
    setup = _representative(p, case)
    char = BesselCharacter.generic(case)
    labels = branch_labels(setup, m, level)
    probes = [IntegrationProbe(level=level, values={label: ONE}) for label in labels]
    probes.append(IntegrationProbe(level=level, values={label: Scalar(k + 2) for k, label in enumerate(labels)}))
    for probe in probes:
        brute = brute_force_integral(setup, m, char, probe)
        closed = integration_formula(setup, m, char, probe)
        if brute != closed:
            witness = {"probe": probe.model_dump(mode="json"), "brute_force": brute.to_text(), "formula": closed.to_text()}
            return _outcome(check, False, witness)
    return _outcome(check, True, detail=f"{len(probes)} probes")


def _membership_cases(p: int) -> list[tuple[str, ResidueMatrix, SubgroupSpec, bool]]:
    modulus = p**2
    siegel = SubgroupSpec(tag=SubgroupTag.SIEGEL_P1)
    iwahori = SubgroupSpec(tag=SubgroupTag.IWAHORI_I)
    klingen = SubgroupSpec(tag=SubgroupTag.KLINGEN_P2)
    paramodular = SubgroupSpec(tag=SubgroupTag.PARAMODULAR_N, n=1)
    levi = ResidueMatrix.of([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 1]], modulus)
    # (1, 3) entry stored scaled by p, i.e. the matrix entry is p⁻¹
    upper = ResidueMatrix.of([[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]], modulus)
    identity = ResidueMatrix.identity(4, modulus)
    return [
        ("identity in I", identity, iwahori, True),
        ("identity in P1", identity, siegel, True),
        ("identity in P2", identity, klingen, True),
        ("identity in K(p)", identity, paramodular, True),
        ("s1 in P1", s1(modulus), siegel, True),
        ("s1 in I", s1(modulus), iwahori, False),
        ("s2 in P1", s2(modulus), siegel, False),
        ("s2 in P2", s2(modulus), klingen, True),
        ("u_hat(1) in P1", u_hat(1, modulus), siegel, True),
        ("eta in P1", eta(modulus), siegel, False),
        ("h(1,0) in P1", h(1, 0, modulus), siegel, False),
        ("Levi unipotent in P1", levi, siegel, True),
        ("Levi unipotent in K(p)", levi, paramodular, False),
        ("p^-1 entry in K(p)", upper, paramodular, True),
    ]


def check_membership(check: Check, seed: int, p: int) -> CheckResult:
    cases = _membership_cases(p)
    for label, g, sub, expected in cases:
        if gsp4_membership(g, sub) != expected:
            return _outcome(check, False, {"case": label, "expected": expected})
    return _outcome(check, True, detail=f"{len(cases)} elements")


def check_matrix_identities(check: Check, seed: int, p: int) -> CheckResult:
    if not verify_matrix_identities():
        return _outcome(check, False, {"z": "symbolic"})
    if not verify_matrix_identities(Fraction(2, 3)):
        return _outcome(check, False, {"z": "2/3"})
    for z in range(1, p):
        if not verify_matrix_identities(z, p):
            return _outcome(check, False, {"z": z, "p": p})
    return _outcome(check, True)


def check_split_transfer(check: Check, seed: int, p: int) -> CheckResult:
    setups = [setup for setup in _setups(p) if setup.case is BesselCase.SPLIT]
    for setup in setups:
        transfer = build_split_transfer(setup)
        if not transfer.verified or transfer.rho != Fraction(1, 2):
            return _outcome(check, False, {"abc": [setup.a, setup.b, setup.c], "rho": transfer.rho.to_text()})
    return _outcome(check, True, detail=f"{len(setups)} split setups")


# catalog ------------------------------------------------------------------


def check_eta_consistency(check: Check, seed: int, rep_type: RepType, xi_twist: bool = False) -> CheckResult:
    holds = eta_consistent(rep_type, xi_twist)
    return _outcome(check, holds, None if holds else {"type": rep_type.value, "xi_twist": xi_twist})


def check_iiia_swap(check: Check, seed: int) -> CheckResult:
    holds = iiia_swap_exchanges_pairs()
    lambdas = [value.to_text() for value in eigenvalues(RepType.IIIA).lambdas]
    return _outcome(check, holds, None if holds else {"lambdas": lambdas})


def check_catalog_roundtrip(check: Check, seed: int) -> CheckResult:
    catalog = emit_catalog()
    for key, entry in catalog.items():
        xi_twist = key == "Vc"
        data = eigenvalues(RepType.VB if xi_twist else RepType(key), xi_twist=xi_twist)
        lambdas = entry["lambda"] if isinstance(entry["lambda"], list) else [entry["lambda"]]
        mus = entry["mu"] if isinstance(entry["mu"], list) else [entry["mu"]]
        parsed = tuple(Scalar.parse(text) for text in lambdas), tuple(Scalar.parse(text) for text in mus)
        if parsed != (data.lambdas, data.mus):
            return _outcome(check, False, {"type": key, "lambda": lambdas, "mu": mus})
    return _outcome(check, True, detail=f"{len(catalog)} entries")


def _existence_cases() -> list[tuple[str, RepType, BesselCharacter, dict[str, Any], bool]]:
    split_norm = BesselCharacter(case=BesselCase.SPLIT, lam_pi=GAMMA**2, lam_10=GAMMA, lam_01=GAMMA)
    split_other = BesselCharacter(case=BesselCase.SPLIT, lam_pi=ONE, lam_10=Scalar(2), lam_01=Scalar(Fraction(1, 2)))
    inert_norm = BesselCharacter(case=BesselCase.INERT, lam_pi=GAMMA**2)
    inert_iia = BesselCharacter(case=BesselCase.INERT, lam_pi=ALPHA**2 * GAMMA**2)
    ramified_twisted = BesselCharacter(case=BesselCase.RAMIFIED, lam_pi=ONE, lam_piL=-ONE)
    ivc_split = BesselCharacter(case=BesselCase.SPLIT, lam_pi=GAMMA**2, lam_10=GAMMA / R**2, lam_01=GAMMA * R**2)
    return [
        ("IIa split", RepType.IIA, split_other, {}, True),
        ("IIa inert Λ = (χσ)∘N", RepType.IIA, inert_iia, {}, False),
        ("IIIa any Λ", RepType.IIIA, split_other, {}, True),
        ("IVb Λ = σ∘N", RepType.IVB, split_norm, {}, True),
        ("IVb Λ ≠ σ∘N", RepType.IVB, split_other, {"sigma_at_pi": ONE}, False),
        ("IVc split", RepType.IVC, ivc_split, {}, True),
        ("IVc inert", RepType.IVC, inert_norm, {}, False),
        ("Vb inert", RepType.VB, inert_norm, {}, False),
        ("Vb ramified Λ = (ξσ)∘N", RepType.VB, ramified_twisted, {"sigma_at_pi": ONE}, False),
        ("Vc ramified Λ = (ξσ)∘N", RepType.VB, ramified_twisted, {"sigma_at_pi": ONE, "xi_twist": True}, True),
        ("VIa split", RepType.VIA, split_norm, {}, True),
        ("VIa inert Λ = σ∘N", RepType.VIA, inert_norm, {}, False),
        ("VIb split", RepType.VIB, split_norm, {}, False),
        ("VIb inert Λ = σ∘N", RepType.VIB, inert_norm, {}, True),
    ]


def check_existence(check: Check, seed: int) -> CheckResult:
    cases = _existence_cases()
    for label, t, char, kwargs, expected in cases:
        if bessel_exists(t, char, **kwargs) != expected:
            return _outcome(check, False, {"case": label, "expected": expected})
    return _outcome(check, True, detail=f"{len(cases)} rows")


# engine -------------------------------------------------------------------


def check_series(check: Check, seed: int, rep_type: RepType, case: BesselCase, m0: int) -> CheckResult:
    data = eigenvalues(rep_type)
    char = BesselCharacter.generic(case, m0)
    order = m0 + SERIES_EXTRA_ORDER
    for index in range(data.dim):
        lam, mu = data.pair(index)
        lower = main_tower_series(0, order, rep_type, char, lam, mu)
        upper = main_tower_series(1, order, rep_type, char, lam, mu)
        if not check_two_step_recursion(lower, lam, mu, char.lam_pi, m0):
            return _outcome(check, False, {"pair": index, "failure": "two-step recursion", "l": 0})
        if not check_two_step_recursion(upper, lam, mu, char.lam_pi, m0):
            return _outcome(check, False, {"pair": index, "failure": "two-step recursion", "l": 1})
        if not check_l_shift(lower, upper, lam):
            return _outcome(check, False, {"pair": index, "failure": "l-shift"})
    return _outcome(check, True, detail=f"order {order}")


def check_consequence(check: Check, seed: int, identity: str) -> CheckResult:
    if not verify_consequence_identity(identity):
        return _outcome(check, False, {"identity": identity, "mutation": None})
    for position, factor in random_mutations(identity, MUTATIONS, seed):
        if verify_consequence_identity(identity, (position, factor)):
            return _outcome(check, False, {"identity": identity, "mutation": [position, factor.to_text()]})
    return _outcome(check, True, detail=f"{MUTATIONS} mutations rejected")


def check_kernel(check: Check, seed: int, kernel_case: KernelCase) -> CheckResult:
    alpha, gamma, r = Scalar.parse(kernel_case.alpha), Scalar.parse(kernel_case.gamma), Scalar.parse(KERNEL_R)
    char = kernel_case.character()
    window = Window.default(kernel_case.m0)
    system = assemble_eigensystem(
        kernel_case.rep_type, kernel_case.eig_index, char, window, alpha=alpha, gamma=gamma, r=r, xi_twist=kernel_case.xi_twist
    )
    report = solve_and_report(system, alpha, gamma, r, kernel_case.xi_twist)
    flags = {name: value.model_dump() for name, value in report.distinguished.items()}
    witness = {
        "dim": report.dim,
        "validated_dim": report.validated_dim,
        "distinguished": flags,
        "main_tower_matches_series": report.main_tower_matches_series,
        "warnings": list(report.warnings),
    }
    origin = report.distinguished[f"(0,{kernel_case.m0},E)"]
    if kernel_case.exceptional:
        passed = (
            report.validated_dim > 0
            and origin.identically_zero
            and all(report.distinguished[f"(0,0,{tag.value})"].attainable for tag in (TowerTag.U1, TowerTag.U2))
        )
    else:
        passed = report.validated_dim > 0 and origin.forced_nonzero and report.main_tower_matches_series
    if passed and kernel_case.rep_type is RepType.VIB:
        rows = constraint_rows(kernel_case.rep_type, char, window, families=("vib_s2",), gamma=gamma, r=r)
        for position in range(len(report.basis)):
            if not satisfies(rows, kernel_table(system, report, position).values):
                witness["vib_s2_violated_by"] = position
                passed = False
    detail = f"dim {report.dim}, validated {report.validated_dim}, {report.unknowns} unknowns"
    return _outcome(check, passed, None if passed else witness, detail=detail)


def check_iiia_kernel_swap(check: Check, seed: int, kernel_case: KernelCase) -> CheckResult:
    alpha, gamma = Scalar.parse(kernel_case.alpha), Scalar.parse(kernel_case.gamma)
    window = Window.default(kernel_case.m0)
    holds = iiia_swap_exchanges_solutions(kernel_case.character(), window, alpha, gamma, Scalar.parse(KERNEL_R))
    witness = None if holds else {"case": kernel_case.label, "alpha": kernel_case.alpha, "gamma": kernel_case.gamma}
    return _outcome(check, holds, witness)


# zeta ---------------------------------------------------------------------


def check_via_identity(check: Check, seed: int, gamma: str | None) -> CheckResult:
    value = GAMMA if gamma is None else Scalar.parse(gamma)
    holds = verify_via_identity(value)
    return _outcome(check, holds, None if holds else {"gamma": gamma or "symbolic"})


def check_via_identity_mutated(check: Check, seed: int) -> CheckResult:
    wrong = LFactor(value=ONE / (ONE - GAMMA * X / R))
    rejected = not verify_via_identity(GAMMA, wrong)
    return _outcome(check, rejected, None if rejected else {"l_factor": wrong.value.to_text()})


def check_shadow_constants(check: Check, seed: int) -> CheckResult:
    holds = shadow_constant_check()
    rejected = not shadow_constant_check(mutate=True)
    return _outcome(check, holds and rejected, None if holds and rejected else {"holds": holds, "mutation_rejected": rejected})


def check_siegelized_locus(check: Check, seed: int) -> CheckResult:
    l_factor = via_l_factor(ONE)
    for omega in (1, -1):
        zeta = iia_siegelized_zeta(omega, l_factor)
        on_locus = zeta.specialize({Symbol.R: 3, Symbol.X: Fraction(-omega, 3)})
        off_locus = zeta.specialize({Symbol.R: 3, Symbol.X: 1})
        if on_locus or not off_locus:
            return _outcome(check, False, {"omega": omega, "on_locus": on_locus.to_text(), "off_locus": off_locus.to_text()})
    return _outcome(check, True)


def check_exceptional_agreement(check: Check, seed: int) -> CheckResult:
    compared = 0
    for kernel_case in KERNEL_CASES:
        if kernel_case.rep_type is not RepType.IIA or kernel_case.case is not BesselCase.SPLIT:
            continue
        data = eigenvalues(RepType.IIA, Scalar.parse(kernel_case.alpha), Scalar.parse(kernel_case.gamma))
        omega = data.omega
        if omega**2 != 1:
            continue
        corr = SplitCharCorrespondence(lam_10=kernel_case.values["lam_10"], lam_01=kernel_case.values["lam_01"])
        predicate = exceptional_case_predicate(omega, corr)
        if predicate != kernel_case.exceptional or predicate != (not siegelized_factor(omega, corr)):
            return _outcome(check, False, {"case": kernel_case.label, "predicate": predicate})
        compared += 1
    return _outcome(check, compared > 0, None if compared else {"compared": 0}, detail=f"{compared} IIa split cases")


# registry -----------------------------------------------------------------


def registry(primes: tuple[int, ...] = PRIMES) -> list[Check]:
    """Every check of the default profile, in no particular order."""
    checks = [
        Check("scalar.ring_axioms", "field axioms and canonical text of the scalar field", check_ring_axioms),
        Check("scalar.series_multiplicativity", "series expansion is multiplicative", check_series_multiplicativity),
        Check("catalog.iiia_swap", "(α, γ) ↦ (α⁻¹, αγ) exchanges the IIIa eigenvalue pairs", check_iiia_swap),
        Check("catalog.roundtrip", "catalog eigenvalues round-trip through the parser", check_catalog_roundtrip),
        Check("catalog.existence", "Bessel model existence table", check_existence),
        Check("zeta.via_identity.mutated", "VIa zeta identity rejects a wrong L-factor", check_via_identity_mutated),
        Check("zeta.shadow_constants", "shadow vector constants are consistent", check_shadow_constants),
        Check("zeta.siegelized_locus", "IIa siegelized zeta vanishes exactly on ω·q^(s-1/2) = -1", check_siegelized_locus),
        Check("zeta.exceptional_agreement", "exceptional IIa split locus agrees with the kernel configurations", check_exceptional_agreement),
    ]
    for label, gamma in (("plus", "1"), ("minus", "-1"), ("symbolic", None)):
        checks.append(Check(f"zeta.via_identity.{label}", "VIa zeta identity", check_via_identity, {"gamma": gamma}))
    for p in primes:
        checks += [
            Check(f"coset.classify.p{p}", "case of F(sqrt d) against the root count", check_classify, {"p": p}),
            Check(f"coset.membership.p{p}", "parahoric membership", check_membership, {"p": p}),
            Check(f"coset.identities.p{p}", "lower unipotent factorization and η = s2s1s2·diag", check_matrix_identities, {"p": p}),
            Check(f"coset.transfer.p{p}", "split change of model", check_split_transfer, {"p": p}),
        ]
        for part, case in (("i", BesselCase.INERT), ("ii", BesselCase.RAMIFIED), ("iii", BesselCase.SPLIT)):
            checks.append(
                Check(f"coset.decomposition.{part}.p{p}", "T(o)\\GL2(o) double cosets", check_decomposition, {"p": p, "part": part, "case": case})
            )
        for case in BesselCase:
            checks.append(
                Check(
                    f"coset.decomposition.iv.{case.value}.p{p}",
                    "T(o)_m\\GL2(o) double cosets, m >= 1",
                    check_decomposition,
                    {"p": p, "part": "iv", "case": case},
                )
            )
            for m, level in product((0, 1), ("gamma_0", "gamma^0")):
                checks.append(
                    Check(
                        f"coset.integral.{case.value}.m{m}.{level}.p{p}",
                        "GL2(o) integral of a T-equivariant function",
                        check_integral,
                        {"p": p, "case": case, "m": m, "level": level},
                    )
                )
    for t in RepType:
        checks.append(Check(f"catalog.eta.{t.value}", "Atkin-Lehner action against the central character", check_eta_consistency, {"rep_type": t}))
        for case, m0 in product(BesselCase, SERIES_CONDUCTORS):
            checks.append(
                Check(
                    f"engine.series.{t.value}.{case.value}.m{m0}",
                    "two-step recursion and l-shift of the main tower",
                    check_series,
                    {"rep_type": t, "case": case, "m0": m0},
                )
            )
    checks.append(Check("catalog.eta.Vc", "Atkin-Lehner action against the central character", check_eta_consistency, {"rep_type": RepType.VB, "xi_twist": True}))
    for identity in CONSEQUENCE_IDS:
        checks.append(Check(f"engine.consequence.{identity}", "s2 identity from the T10 and T01 rows", check_consequence, {"identity": identity}))
    for kernel_case in KERNEL_CASES:
        checks.append(
            Check(
                f"engine.kernel.{kernel_case.label}",
                "test vectors of the truncated eigensystem",
                check_kernel,
                {"kernel_case": kernel_case},
            )
        )
        if kernel_case.rep_type is RepType.IIIA and kernel_case.eig_index == 0:
            checks.append(
                Check(
                    f"engine.iiia_swap.{kernel_case.case.value}.m{kernel_case.m0}",
                    "(α, γ) ↦ (α⁻¹, αγ) exchanges the IIIa kernel solutions",
                    check_iiia_kernel_swap,
                    {"kernel_case": kernel_case},
                )
            )
    return checks


def execute(check: Check, seed: int) -> CheckResult:
    """Run one check; library errors become a failure carrying the error as witness."""
    logger.debug("running %s", check.check_id)
    try:
        result = check.func(check, seed, **check.kwargs)
    except (BesselLabError, ValueError) as exc:
        logger.warning("%s raised %s: %s", check.check_id, type(exc).__name__, exc)
        return _outcome(check, False, {"error": type(exc).__name__, "message": str(exc)})
    logger.debug("%s: %s", check.check_id, result.status)
    return result


def run_checks(
    seed: int = 0, jobs: int = 1, prefix: str | None = None, primes: tuple[int, ...] = PRIMES
) -> VerificationReport:
    """Run the selected checks and assemble a report sorted by check id.

    Args:
        seed: Seed for the randomized checks.
        jobs: Worker processes; 1 runs in-process.
        prefix: Only run checks whose id starts with this.
        primes: Primes for the coset checks.
    """
    checks = [check for check in registry(primes) if prefix is None or check.check_id.startswith(prefix)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(execute, checks, repeat(seed)))
    else:
        results = [execute(check, seed) for check in checks]
    report = VerificationReport(items=tuple(sorted(results, key=lambda item: item.check_id)))
    logger.info(
        "verification: %d passed, %d failed, %d skipped",
        report.count(CheckStatus.PASS), report.count(CheckStatus.FAIL), report.count(CheckStatus.SKIPPED),
    )
    return report
