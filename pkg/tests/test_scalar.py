"""
Tests for exact scalar arithmetic, canonical text and specialization.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import DivisionByZero
from models import Scalar, Symbol
from models.scalar import ALPHA, GAMMA, ONE, Q, R, ZERO, PolyOp, poly_arith, ratfunc_simplify, sqrt_d

small = st.integers(min_value=-6, max_value=6)
polynomials = st.builds(lambda a, b, c, d: a + b * R + c * ALPHA * R + d * GAMMA**2, small, small, small, small)


class TestScalarArithmetic:
    """Test suite for field operations on Scalars."""

    def test_additive_inverse(self):
        """Test that r^2 + (-r^2) is zero."""
        # Act
        result = poly_arith(PolyOp.ADD, Q, poly_arith(PolyOp.NEG, Q))

        # Assert
        assert result == ZERO
        assert not result

    def test_sqrt_d_squares_to_d(self):
        """Test that sqrt_d * sqrt_d folds to d."""
        # Arrange
        root = sqrt_d(-4)

        # Act
        result = root * root

        # Assert
        assert result == -4
        assert result.is_constant
        assert result.discriminant is None

    def test_difference_of_squares(self):
        """Test that (r + 1)(r - 1) expands to r^2 - 1."""
        # Act
        result = poly_arith(PolyOp.MUL, R + 1, R - 1)

        # Assert
        assert result == Q - 1

    def test_poly_arith_rejects_rational_functions(self):
        """Test that poly_arith only accepts polynomial operands."""
        # Act & Assert
        with pytest.raises(ValueError):
            poly_arith(PolyOp.ADD, ONE / R, ONE)

    def test_division_by_zero(self):
        """Test that dividing by an exact zero raises DivisionByZero."""
        # Act & Assert
        with pytest.raises(DivisionByZero):
            ONE / (R - R)

    def test_mixed_discriminants_rejected(self):
        """Test that scalars over different quadratic fields cannot be combined."""
        # Act & Assert
        with pytest.raises(ValueError):
            sqrt_d(2) + sqrt_d(3)

    def test_rationalized_denominator(self):
        """Test that 1/sqrt_d is stored as sqrt_d/d."""
        # Act
        result = ONE / sqrt_d(5)

        # Assert
        assert result == sqrt_d(5) / 5
        assert result.is_polynomial

    def test_perfect_square_discriminant_is_substituted(self):
        """Test that sqrt_d disappears when d is a rational square."""
        # Act
        result = sqrt_d(4) + 1

        # Assert
        assert result == 3
        assert result.discriminant is None

    def test_comparison_with_python_numbers(self):
        """Test that Scalars compare equal to ints and Fractions."""
        # Assert
        assert Scalar(Fraction(6, 4)) == Fraction(3, 2)
        assert Scalar(2) == 2
        assert Scalar(2) != 3

    @given(polynomials, polynomials, polynomials)
    def test_ring_axioms(self, a: Scalar, b: Scalar, c: Scalar):
        """Test associativity, commutativity and distributivity on random polynomials."""
        # Assert
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @given(polynomials.filter(bool))
    def test_multiplicative_inverse(self, a: Scalar):
        """Test that every nonzero scalar has an inverse."""
        # Assert
        assert a * (ONE / a) == ONE


class TestRatfuncSimplify:
    """Test suite for reduction to canonical form."""

    def test_polynomial_cancellation(self):
        """Test that (q^2 - 1)/(q - 1) reduces to q + 1."""
        # Act
        result = ratfunc_simplify(Q**2 - 1, Q - 1)

        # Assert
        assert result == Q + 1
        assert result.is_polynomial

    def test_common_symbol_cancels(self):
        """Test that (mu*Y)/mu reduces to Y."""
        # Arrange
        mu = Scalar.symbol(Symbol.LAM_01)
        y = Scalar.symbol(Symbol.Y)

        # Act
        result = ratfunc_simplify(mu * y, mu)

        # Assert
        assert result == y

    def test_product_over_expanded_product(self):
        """Test that (1 - r^4 X)(1 + r^4 X)/(1 - r^8 X^2) reduces to 1."""
        # Arrange
        x = Scalar.symbol(Symbol.X)

        # Act
        result = ratfunc_simplify((1 - R**4 * x) * (1 + R**4 * x), 1 - R**8 * x**2)

        # Assert
        assert result == ONE

    def test_zero_denominator(self):
        """Test that a zero denominator is rejected."""
        # Act & Assert
        with pytest.raises(DivisionByZero):
            ratfunc_simplify(R, 0)


class TestScalarText:
    """Test suite for the canonical text form and its parser."""

    def test_to_text(self):
        """Test the canonical text of a rational function."""
        # Arrange
        value = (3 * R**2 - 1) / (R + 1)

        # Act
        text = value.to_text()

        # Assert
        assert text == "(3*r^2 - 1)/(r + 1)"

    def test_parse(self):
        """Test parsing the canonical text form."""
        # Act
        value = Scalar.parse("(3*r^2 - 1)/(r + 1)")

        # Assert
        assert value == (3 * R**2 - 1) / (R + 1)

    def test_parse_rejects_unknown_names(self):
        """Test that a name outside the alphabet is a parse error."""
        # Act & Assert
        with pytest.raises(ValueError):
            Scalar.parse("t + 1")

    @given(polynomials, polynomials.filter(bool))
    def test_text_round_trip(self, numerator: Scalar, denominator: Scalar):
        """Test that parse(to_text(s)) == s."""
        # Arrange
        value = numerator / denominator

        # Act
        parsed = Scalar.parse(value.to_text())

        # Assert
        assert parsed == value


class TestScalarSpecialization:
    """Test suite for substituting values into scalars."""

    def test_specialize(self, specialization_factory):
        """Test replacing symbols by exact rationals."""
        # Arrange
        value = ALPHA * GAMMA * Q

        # Act
        result = value.specialize(specialization_factory())

        # Assert
        assert result == 18
        assert result.is_constant
        assert result.to_fraction() == Fraction(18)

    def test_specialize_by_name(self):
        """Test that symbol names are accepted as keys."""
        # Act
        result = (R**2 + 1).specialize({"r": Fraction(1, 2)})

        # Assert
        assert result == Fraction(5, 4)

    def test_specialize_at_pole(self):
        """Test that specializing onto a pole raises DivisionByZero."""
        # Act & Assert
        with pytest.raises(DivisionByZero):
            (ONE / (R - 3)).specialize({Symbol.R: 3})

    def test_substitute(self):
        """Test simultaneous substitution of scalars for symbols."""
        # Arrange
        value = ALPHA * GAMMA

        # Act
        result = value.substitute({Symbol.ALPHA: ONE / ALPHA, Symbol.GAMMA: ALPHA * GAMMA})

        # Assert
        assert result == GAMMA

    def test_split_in(self):
        """Test splitting numerator and denominator by powers of a symbol."""
        # Arrange
        value = (R * GAMMA**2 + 2) / (1 - GAMMA)

        # Act
        numerator, denominator = value.split_in(Symbol.GAMMA)

        # Assert
        assert set(numerator) == {0, 2}
        assert numerator[2] * denominator[1] == -R

    def test_to_fraction_requires_constant(self):
        """Test that to_fraction refuses symbolic scalars."""
        # Act & Assert
        with pytest.raises(ValueError):
            R.to_fraction()
