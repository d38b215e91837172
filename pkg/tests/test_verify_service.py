"""
Tests for the verification profile: the registry, check execution and reports.
"""

from collections import Counter

from errors import DegenerateD
from models import CheckResult, CheckStatus, RepType, Scalar, VerificationReport
from services.catalog_service import bessel_exists, central_char_compat
from services.verify_service import KERNEL_CASES, KERNEL_R, Check, execute, registry, run_checks


def _failing_check(check: Check, seed: int) -> CheckResult:
    raise DegenerateD("d = 0")


def _passing_check(check: Check, seed: int, label: str) -> CheckResult:
    return CheckResult(check_id=check.check_id, reference=check.reference, status=CheckStatus.PASS, detail=label)


class TestRegistry:
    """Test suite for the check registry."""

    def test_ids_are_unique(self):
        """Test that no two checks share an id."""
        # Act
        ids = [check.check_id for check in registry()]

        # Assert
        assert len(ids) == len(set(ids))

    def test_primes_select_coset_checks(self):
        """Test that only the requested primes appear in coset check ids."""
        # Act
        ids = [check.check_id for check in registry((3,))]

        # Assert
        assert "coset.classify.p3" in ids
        assert not any(check_id.endswith(".p5") for check_id in ids)

    def test_every_kernel_case_registered(self):
        """Test that each kernel specialization has its own check."""
        # Act
        ids = {check.check_id for check in registry()}

        # Assert
        assert {f"engine.kernel.{kernel_case.label}" for kernel_case in KERNEL_CASES} <= ids

    def test_kernel_cases_build_characters(self):
        """Test that every kernel specialization is a valid character."""
        # Act & Assert
        for kernel_case in KERNEL_CASES:
            assert kernel_case.character().case is kernel_case.case


    def test_three_specializations_per_type(self):
        """Test that every type, Vc aside, is solved at three or more specializations."""
        # Act
        counts = Counter(kernel_case.rep_type for kernel_case in KERNEL_CASES if not kernel_case.xi_twist)

        # Assert
        assert set(counts) == set(RepType)
        assert min(counts.values()) >= 3

    def test_kernel_cases_admit_models(self):
        """Test that each specialization has a Bessel model and a compatible central character."""
        # Act & Assert
        for kernel_case in KERNEL_CASES:
            char = kernel_case.character()
            alpha, gamma = Scalar.parse(kernel_case.alpha), Scalar.parse(kernel_case.gamma)
            assert central_char_compat(kernel_case.rep_type, char, alpha, gamma, kernel_case.xi_twist), kernel_case.label
            assert bessel_exists(
                kernel_case.rep_type, char, gamma, alpha, kernel_case.xi_twist, Scalar.parse(KERNEL_R)
            ), kernel_case.label


class TestExecute:
    """Test suite for executing a single check."""

    def test_library_error_becomes_failure(self):
        """Test that a raised library error is reported with a witness."""
        # Arrange
        check = Check("sample.fail", "sample", _failing_check)

        # Act
        result = execute(check, seed=0)

        # Assert
        assert result.status is CheckStatus.FAIL
        assert result.witness == {"error": "DegenerateD", "message": "d = 0"}

    def test_kwargs_are_forwarded(self):
        """Test that registry arguments reach the check function."""
        # Arrange
        check = Check("sample.pass", "sample", _passing_check, {"label": "forwarded"})

        # Act
        result = execute(check, seed=0)

        # Assert
        assert result.passed
        assert result.detail == "forwarded"


class TestRunChecks:
    """Test suite for running selections of the profile."""

    def test_zeta_checks(self):
        """Test that every zeta check passes."""
        # Act
        report = run_checks(prefix="zeta.")

        # Assert
        assert report.ok
        assert report.count(CheckStatus.PASS) == 7
        exceptional = next(item for item in report.items if item.check_id == "zeta.exceptional_agreement")
        assert exceptional.detail == "2 IIa split cases"

    def test_catalog_checks(self):
        """Test the catalog checks, including η on Vc."""
        # Act
        report = run_checks(prefix="catalog.")

        # Assert
        assert report.ok
        assert len(report.items) == 11
        assert "catalog.eta.Vc" in {item.check_id for item in report.items}

    def test_consequence_checks(self):
        """Test that both s2 identities hold and reject their mutations."""
        # Act
        report = run_checks(seed=3, prefix="engine.consequence.")

        # Assert
        assert report.ok
        assert len(report.items) == 2

    def test_classify_check(self):
        """Test the classification check at p = 3."""
        # Act
        report = run_checks(prefix="coset.classify.", primes=(3,))

        # Assert
        assert [item.check_id for item in report.items] == ["coset.classify.p3"]
        assert report.ok
        # d = 0 at (0,0,1), (0,0,2), (1,2,1) and 9 | d at (9,0,1)
        assert report.items[0].detail.endswith("degenerate 4")

    def test_exceptional_kernel_has_no_origin_value(self):
        """Test that the exceptional IIa split kernel vanishes at B(1) but reaches both û values."""
        # Act
        report = run_checks(prefix="engine.kernel.IIa.split.m0.exceptional")

        # Assert
        assert [item.check_id for item in report.items] == ["engine.kernel.IIa.split.m0.exceptional"]
        assert report.ok

    def test_default_registry_passes(self):
        """Test that every check of the default profile passes."""
        # Act
        report = run_checks(seed=0, jobs=4)

        # Assert
        failed = [item.check_id for item in report.items if not item.passed]
        assert failed == []
        assert report.ok
        assert len(report.items) == len(registry())

    def test_items_sorted_by_id(self):
        """Test that a report lists its checks in id order."""
        # Act
        report = run_checks(prefix="zeta.")

        # Assert
        ids = [item.check_id for item in report.items]
        assert ids == sorted(ids)

    def test_report_fails_on_any_failure(self):
        """Test that one failed check makes the report not ok."""
        # Arrange
        items = (
            CheckResult(check_id="a", reference="", status=CheckStatus.PASS),
            CheckResult(check_id="b", reference="", status=CheckStatus.FAIL, witness={"x": 1}),
            CheckResult(check_id="c", reference="", status=CheckStatus.SKIPPED),
        )

        # Act
        report = VerificationReport(items=items)

        # Assert
        assert not report.ok
        assert report.count(CheckStatus.SKIPPED) == 1
