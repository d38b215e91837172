"""
Tests for eigensystem assembly, kernel reports and main tower tables.
"""

from fractions import Fraction

import pytest

from models import BesselCase, RepType, TowerIndex, Window
from services.constraint_service import constraint_rows
from services.eigensystem_service import (
    assemble_eigensystem,
    distinguished_indices,
    iiia_swap_exchanges_solutions,
    kernel_table,
    kernel_vectors,
    main_tower_table,
    satisfies,
    solve_and_report,
)

SPECIALIZED = {"alpha": 2, "gamma": 1, "r": 3}


@pytest.fixture
def origin_system(character_factory):
    """IIa with an inert Λ = (χσ)∘N in the smallest window, without constraint families."""
    char = character_factory(BesselCase.INERT, lam_pi=4)
    return assemble_eigensystem(RepType.IIA, 0, char, Window.of((0, 0)), families=(), **SPECIALIZED)


class TestAssembleEigensystem:
    """Test suite for assemble_eigensystem."""

    def test_smallest_window_has_no_complete_rows(self, origin_system):
        """Test that every Hecke row leaves window (0, 0)."""
        # Assert
        assert len(origin_system.unknowns) == 4
        assert origin_system.rows == ()
        assert origin_system.lam == 18
        assert origin_system.mu == 270

    def test_missing_model_is_warned(self, origin_system):
        """Test that IIa with Λ = (χσ)∘N carries a no-model warning."""
        # Assert
        assert any("no Bessel model" in warning for warning in origin_system.warnings)
        assert not any("central character" in warning for warning in origin_system.warnings)

    def test_central_character_mismatch_is_warned(self, character_factory):
        """Test the warning when Λ(ϖ) differs from the central character."""
        # Arrange
        char = character_factory(BesselCase.SPLIT, lam_10=1, lam_01=1)

        # Act
        system = assemble_eigensystem(RepType.IIA, 0, char, Window.of((0, 0)), families=(), **SPECIALIZED)

        # Assert
        assert any("central character" in warning for warning in system.warnings)

    def test_eig_index_out_of_range(self, character_factory):
        """Test that a 1-dim type has a single eigen-pair."""
        # Act & Assert
        with pytest.raises(ValueError):
            assemble_eigensystem(RepType.IIA, 1, character_factory(BesselCase.INERT), Window.of((1, 1)))

    def test_rows_are_equations_on_the_unknowns(self, character_factory):
        """Test that a larger window produces equations among its own unknowns."""
        # Arrange
        char = character_factory(BesselCase.SPLIT)

        # Act
        system = assemble_eigensystem(RepType.VIA, 0, char, Window.of((2, 2)))

        # Assert
        assert system.rows
        assert system.families == ("onedim_s2_eta",)
        unknowns = set(system.unknowns)
        for row in system.rows:
            assert row.is_equation
            assert row.indices() <= unknowns


class TestSolveAndReport:
    """Test suite for kernels and their reports."""

    def test_unconstrained_kernel(self, origin_system):
        """Test that an empty system has the whole window as its kernel."""
        # Act
        report = solve_and_report(origin_system, **SPECIALIZED)

        # Assert
        assert report.unknowns == 4
        assert report.equations == 0
        assert report.dim == 4
        assert report.validated_dim == 4
        assert report.held_out_ok
        assert report.main_tower_matches_series

    def test_distinguished_value(self, origin_system):
        """Test that B(h(0,0)) is attainable but not forced in a 4-dim kernel."""
        # Act
        report = solve_and_report(origin_system, **SPECIALIZED)

        # Assert
        value = report.distinguished["(0,0,E)"]
        assert value.attainable
        assert not value.forced_nonzero
        assert not value.identically_zero

    def test_origin_forced_on_interior(self, character_factory):
        """Test that VIb vectors vanishing at B(h(0,0)) vanish on the interior main and s2 towers."""
        # Arrange
        char = character_factory(BesselCase.INERT, lam_pi=1)
        specialized = {"alpha": 1, "gamma": 1, "r": 3}
        system = assemble_eigensystem(RepType.VIB, 0, char, Window.of((3, 2)), **specialized)

        # Act
        report = solve_and_report(system, **specialized)

        # Assert
        value = report.distinguished["(0,0,E)"]
        assert "vib_s2" in system.families
        assert value.attainable
        assert value.forced_nonzero
        assert not value.identically_zero

    def test_kernel_vectors_and_table(self, origin_system):
        """Test the kernel as index maps and as a tower table."""
        # Act
        vectors = kernel_vectors(origin_system)
        report = solve_and_report(origin_system, **SPECIALIZED)
        table = kernel_table(origin_system, report)

        # Assert
        assert len(vectors) == 4
        assert all(set(vector) == set(origin_system.unknowns) for vector in vectors)
        assert table.values
        assert set(table.values) <= set(origin_system.unknowns)


class TestMainTowerTable:
    """Test suite for the closed-form main tower."""

    def test_values(self, character_factory):
        """Test B(h(1,0)) = λq⁻³ and B(h(0,1)) = (μ - κ)q⁻⁴ for IIa at q = 9."""
        # Arrange
        char = character_factory(BesselCase.INERT, lam_pi=4)

        # Act
        table = main_tower_table(RepType.IIA, char, Window.of((1, 1)), **SPECIALIZED)

        # Assert
        assert table[TowerIndex.of(0, 0, "E")] == 1
        assert table[TowerIndex.of(1, 0, "E")] == Fraction(2, 81)
        assert table[TowerIndex.of(0, 1, "E")] == Fraction(1, 27)
        assert table.rows()[0] == (0, 0, "E", "1")

    def test_satisfies_main_shift(self, character_factory):
        """Test that the table satisfies λB(h(l,m)) = q³B(h(l+1,m))."""
        # Arrange
        char = character_factory(BesselCase.INERT, lam_pi=4)
        window = Window.of((1, 1))
        table = main_tower_table(RepType.IIA, char, window, **SPECIALIZED)

        # Act
        rows = constraint_rows(RepType.IIA, char, window, families=["onedim_main_shift"], **SPECIALIZED)

        # Assert
        assert len(rows) == 2
        assert satisfies(rows, table.values)
        assert not satisfies(rows, {index: value * 2 if index.l else value for index, value in table.values.items()})


class TestDistinguishedIndices:
    """Test suite for the anchor indices of a kernel report."""

    def test_split(self, character_factory):
        """Test that the split anchors add both û values."""
        # Act
        anchors = distinguished_indices(character_factory(BesselCase.SPLIT))

        # Assert
        assert [str(index) for index in anchors] == ["(0,0,E)", "(0,0,U1)", "(0,0,U2)"]

    def test_conductor(self, character_factory):
        """Test that the main anchor sits at m = m0."""
        # Act
        anchors = distinguished_indices(character_factory(BesselCase.INERT, m0=2))

        # Assert
        assert anchors == [TowerIndex.of(0, 2, "E")]


class TestIiiaSwapSolutions:
    """Test suite for the IIIa parameter swap on kernel solutions."""

    def test_swap_exchanges_kernels(self, character_factory):
        """Test that the two IIIa kernels trade places under (α, γ) ↦ (α⁻¹, αγ)."""
        # Arrange
        char = character_factory(BesselCase.INERT, lam_pi=4)

        # Act
        exchanged = iiia_swap_exchanges_solutions(char, Window.of((3, 2)), alpha=4, gamma=1, r=3)

        # Assert
        assert exchanged
