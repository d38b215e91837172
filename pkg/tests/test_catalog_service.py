"""
Tests for the representation catalog: eigenvalues, restrictions, Atkin-Lehner
consistency, fixed-vector data and Bessel model existence.
"""

from fractions import Fraction

import pytest

from errors import Inexpressible, RestrictionViolated
from models import BesselCase, RepType
from models.scalar import ALPHA, GAMMA, ONE, Q, R, Scalar
from services.catalog_service import (
    bessel_exists,
    central_char_compat,
    central_character,
    check_restrictions,
    eigenvalues,
    emit_catalog,
    eta_consistent,
    fixed_vector_dims,
    iiia_swap,
    iiia_swap_exchanges_pairs,
)


class TestEigenvalues:
    """Test suite for Hecke and Atkin-Lehner eigenvalues."""

    def test_iia_specialized(self):
        """Test λ = αγq and μ = α²γ²(α + α⁻¹)r³ at α = 2, γ = 1, r = 3."""
        # Act
        data = eigenvalues(RepType.IIA, alpha=2, gamma=1, r=3)

        # Assert
        assert data.pair(0) == (18, 270)
        assert data.omega == -2

    def test_iia_symbolic(self):
        """Test the generic IIa λ."""
        # Act
        data = eigenvalues(RepType.IIA)

        # Assert
        assert data.lambdas == (ALPHA * GAMMA * Q,)

    @pytest.mark.parametrize("t", [RepType.IIIA, RepType.IVB])
    def test_two_dimensional_types(self, t):
        """Test that IIIa and IVb carry two eigenvalue pairs and a swap matrix."""
        # Act
        data = eigenvalues(t)

        # Assert
        assert data.dim == 2
        assert t.p1_dim == 2
        with pytest.raises(ValueError):
            data.omega

    def test_vc_is_gamma_negated_vb(self):
        """Test that the ξ-twist replaces γ by -γ."""
        # Act
        vb = eigenvalues(RepType.VB)
        vc = eigenvalues(RepType.VB, xi_twist=True)

        # Assert
        assert vb.lambdas == (-GAMMA * Q,)
        assert vc.lambdas == (GAMMA * Q,)
        assert vc.omega == -GAMMA

    def test_twist_only_for_vb(self):
        """Test that the ξ-twist is refused for other types."""
        # Act & Assert
        with pytest.raises(ValueError):
            eigenvalues(RepType.IIA, xi_twist=True)

    @pytest.mark.parametrize("t", list(RepType))
    def test_lambda_sign_matches_omega(self, t):
        """Test λ = -qω on the types flagged so and λ = qω on VIb."""
        # Arrange
        data = eigenvalues(t)
        if data.dim == 2:
            pytest.skip("two-dimensional types have no scalar ω")

        # Act
        (lam,) = data.lambdas

        # Assert
        if t.omega_sign_matches_lambda:
            assert lam == -Q * data.omega
        else:
            assert lam == Q * data.omega


class TestRestrictions:
    """Test suite for the excluded Satake values."""

    def test_iia_alpha_q_three_halves(self):
        """Test that α = q^(3/2) is excluded for IIa."""
        # Act & Assert
        with pytest.raises(RestrictionViolated):
            check_restrictions(RepType.IIA, alpha=R**3)

    def test_iiia_alpha_one(self):
        """Test that α = 1 is excluded for IIIa."""
        # Act & Assert
        with pytest.raises(RestrictionViolated):
            eigenvalues(RepType.IIIA, alpha=1)

    def test_gamma_zero(self):
        """Test that σ(ϖ) must be a unit."""
        # Act & Assert
        with pytest.raises(RestrictionViolated):
            check_restrictions(RepType.VIA, gamma=0)

    def test_symbolic_parameters_pass(self):
        """Test that generic symbols never trip the exact checks."""
        # Act & Assert
        for t in RepType:
            check_restrictions(t)

    def test_alpha_ignored_for_single_parameter_types(self):
        """Test that α plays no role for IVb."""
        # Act & Assert
        check_restrictions(RepType.IVB, alpha=0)


class TestCentralCharacter:
    """Test suite for central characters and the η relation."""

    def test_values(self):
        """Test the central character at ϖ per type."""
        # Assert
        assert central_character(RepType.IIA) == ALPHA**2 * GAMMA**2
        assert central_character(RepType.IIIA) == ALPHA * GAMMA**2
        assert central_character(RepType.VIB) == GAMMA**2

    @pytest.mark.parametrize("t", list(RepType))
    def test_eta_squares_to_central_character(self, t):
        """Test that η² acts by the central character on every type."""
        # Act & Assert
        assert eta_consistent(t)

    def test_eta_consistent_on_vc(self):
        """Test the η relation on the ξ-twist of Vb."""
        # Act & Assert
        assert eta_consistent(RepType.VB, xi_twist=True)

    def test_compatible_character(self, character_factory):
        """Test Λ(ϖ) = α²γ² for IIa at α = 2, γ = 1."""
        # Arrange
        char = character_factory(BesselCase.INERT, lam_pi=4)

        # Act & Assert
        assert central_char_compat(RepType.IIA, char, alpha=2, gamma=1)
        assert not central_char_compat(RepType.IIIA, char, alpha=2, gamma=1)


class TestIiiaSwap:
    """Test suite for the (α, γ) ↦ (α⁻¹, αγ) symmetry of IIIa."""

    def test_swap_is_simultaneous(self):
        """Test that αγ maps to γ."""
        # Act & Assert
        assert iiia_swap(ALPHA * GAMMA) == GAMMA

    def test_swap_is_an_involution(self):
        """Test that applying the swap twice is the identity."""
        # Arrange
        value = ALPHA**2 * GAMMA + ONE / ALPHA

        # Act & Assert
        assert iiia_swap(iiia_swap(value)) == value

    def test_swap_exchanges_eigenvalue_pairs(self):
        """Test that the swap exchanges the two IIIa (λ, μ) pairs."""
        # Act & Assert
        assert iiia_swap_exchanges_pairs()


class TestBesselExists:
    """Test suite for Bessel model existence."""

    @pytest.mark.parametrize("case", list(BesselCase))
    def test_iiia_always(self, character_factory, case):
        """Test that IIIa has a model for every Λ."""
        # Act & Assert
        assert bessel_exists(RepType.IIIA, character_factory(case))

    def test_iia_split_always(self, character_factory):
        """Test that IIa has a model for every split Λ."""
        # Act & Assert
        assert bessel_exists(RepType.IIA, character_factory(BesselCase.SPLIT))

    def test_iia_inert_excludes_norm(self, character_factory):
        """Test that IIa has no model for Λ = (χσ)∘N on an inert L."""
        # Arrange
        norm = character_factory(BesselCase.INERT, lam_pi=4)
        other = character_factory(BesselCase.INERT, lam_pi=5)

        # Act & Assert
        assert not bessel_exists(RepType.IIA, norm, sigma_at_pi=1, chi_at_pi=2)
        assert bessel_exists(RepType.IIA, other, sigma_at_pi=1, chi_at_pi=2)

    def test_iia_ramified_conductor_is_not_a_norm(self, character_factory):
        """Test that a ramified Λ is never an unramified norm character."""
        # Arrange
        char = character_factory(BesselCase.INERT, m0=1)

        # Act & Assert
        assert bessel_exists(RepType.IIA, char)

    def test_undecidable_symbolic_values(self, character_factory):
        """Test that generic Λ(ϖ) against α²γ² cannot be decided."""
        # Act & Assert
        with pytest.raises(Inexpressible):
            bessel_exists(RepType.IIA, character_factory(BesselCase.INERT))

    def test_ivc_split_only(self, character_factory):
        """Test the IVc split condition Λ(ϖ,1) = q⁻¹σ(ϖ), Λ(1,ϖ) = qσ(ϖ)."""
        # Arrange
        good = character_factory(BesselCase.SPLIT, lam_10=Fraction(1, 9), lam_01=9)
        bad = character_factory(BesselCase.SPLIT, lam_10=1, lam_01=1)

        # Act & Assert
        assert bessel_exists(RepType.IVC, good, sigma_at_pi=1, r=3)
        assert not bessel_exists(RepType.IVC, bad, sigma_at_pi=1, r=3)
        assert not bessel_exists(RepType.IVC, character_factory(BesselCase.INERT))

    def test_vib_never_split(self, character_factory):
        """Test that VIb has no split Bessel model."""
        # Act & Assert
        assert not bessel_exists(RepType.VIB, character_factory(BesselCase.SPLIT))

    def test_vb_and_vc_ramified(self, character_factory):
        """Test that Vc needs Λ = (ξσ)∘N where Vb needs Λ = σ∘N."""
        # Arrange
        char = character_factory(BesselCase.RAMIFIED, lam_piL=-1)

        # Act & Assert
        assert not bessel_exists(RepType.VB, char, sigma_at_pi=1)
        assert bessel_exists(RepType.VB, char, sigma_at_pi=1, xi_twist=True)

    def test_vb_inert_has_no_model(self, character_factory):
        """Test that Vb has no inert Bessel model."""
        # Act & Assert
        assert not bessel_exists(RepType.VB, character_factory(BesselCase.INERT))


class TestCatalog:
    """Test suite for the emitted catalog document."""

    def test_all_types_listed(self):
        """Test that the seven types and Vc appear."""
        # Act
        catalog = emit_catalog()

        # Assert
        assert set(catalog) == {t.value for t in RepType} | {"Vc"}
        assert catalog["Vc"]["twist_of"] == "Vb"

    def test_entries_parse_back(self):
        """Test that scalar entries are canonical text."""
        # Act
        catalog = emit_catalog()

        # Assert
        assert Scalar.parse(catalog["IIa"]["lambda"]) == ALPHA * GAMMA * Q
        assert len(catalog["IIIa"]["lambda"]) == 2
        assert catalog["IIIa"]["p1_dim"] == 2

    def test_fixed_vectors(self):
        """Test the conductor exponents and the Vc ε-factor."""
        # Act
        catalog = emit_catalog()

        # Assert
        assert catalog["IIa"]["fixed_vectors"]["conductor"] == 1
        assert catalog["VIb"]["fixed_vectors"]["conductor"] == 2
        assert fixed_vector_dims(RepType.VB, xi_twist=True).epsilon == "-gamma"
        assert fixed_vector_dims(RepType.VB).epsilon == "gamma"
