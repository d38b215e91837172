"""
Exact scalars: rational functions over QQ in a fixed ten-symbol alphabet.

All arithmetic is delegated to sympy's sparse fraction field. Two relations
are layered on top of it:

- ``q := r**2`` is implicit: formulas are written in ``r`` and ``Q`` is the
  module-level scalar ``R**2``.
- ``sqrt_d**2 := d`` is applied whenever a scalar carries a discriminant. Every
  numerator and denominator keeps ``sqrt_d`` at exponent 0 or 1, and
  denominators are rationalized, so the stored form is canonical.
"""

import logging
from enum import StrEnum
from fractions import Fraction
from math import isqrt
from typing import Any, Mapping

from pydantic_core import core_schema
from sympy import QQ
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement

from errors import DivisionByZero

logger = logging.getLogger(__name__)


class Symbol(StrEnum):
    R = "r"
    ALPHA = "alpha"
    GAMMA = "gamma"
    LAM_PI = "lam_pi"
    LAM_PIL = "lam_piL"
    LAM_10 = "lam_10"
    LAM_01 = "lam_01"
    SQRT_D = "sqrt_d"
    X = "X"
    Y = "Y"


FIELD, *_FIELD_GENERATORS = field([symbol.value for symbol in Symbol], QQ)
RING = FIELD.ring

_RING_GENERATORS = dict(zip(Symbol, RING.gens))
_SYMBOL_INDEX = {symbol: index for index, symbol in enumerate(Symbol)}
_SQRT_D = _SYMBOL_INDEX[Symbol.SQRT_D]
_PARSE_LOCALS = {str(sym): sym for sym in FIELD.symbols}
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def to_fraction(value: Any) -> Fraction:
    """Convert an int, Fraction, rational string or QQ element to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def _qq(value: Fraction) -> Any:
    return QQ(value.numerator, value.denominator)


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def _mentions_sqrt_d(poly: PolyElement) -> bool:
    return any(monom[_SQRT_D] for monom in poly.keys())


def _fold_radical(poly: PolyElement, d: Fraction) -> PolyElement:
    """Rewrite sqrt_d**2 -> d until every sqrt_d exponent is 0 or 1."""
    if not _mentions_sqrt_d(poly):
        return poly
    folded: dict[tuple[int, ...], Any] = {}
    for monom, coeff in poly.items():
        power, rest = divmod(monom[_SQRT_D], 2)
        key = monom[:_SQRT_D] + (rest,) + monom[_SQRT_D + 1 :]
        folded[key] = folded.get(key, QQ.zero) + coeff * _qq(d) ** power
    return RING.from_dict({k: v for k, v in folded.items() if v})


def _conjugate(poly: PolyElement) -> PolyElement:
    return RING.from_dict(
        {monom: -coeff if monom[_SQRT_D] else coeff for monom, coeff in poly.items()}
    )


def _reduce(value: FracElement, d: Fraction | None) -> FracElement:
    if d is None:
        return value
    numer, denom = value.numer, value.denom
    if not (_mentions_sqrt_d(numer) or _mentions_sqrt_d(denom)):
        return value
    root = _rational_sqrt(d)
    if root is not None:
        generator = _RING_GENERATORS[Symbol.SQRT_D]
        numer = numer.subs(generator, _qq(root))
        denom = denom.subs(generator, _qq(root))
        if not denom:
            raise DivisionByZero(f"denominator vanishes at sqrt_d = {root}")
        return FIELD.new(numer, denom)
    numer, denom = _fold_radical(numer, d), _fold_radical(denom, d)
    if _mentions_sqrt_d(denom):
        conjugate = _conjugate(denom)
        numer = _fold_radical(numer * conjugate, d)
        denom = _fold_radical(denom * conjugate, d)
    return FIELD.new(numer, denom)


def _merge_discriminants(left: Fraction | None, right: Fraction | None) -> Fraction | None:
    if left is None:
        return right
    if right is not None and right != left:
        raise ValueError(f"scalars carry different discriminants: {left} and {right}")
    return left


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _format_poly(poly: PolyElement) -> str:
    if not poly:
        return "0"
    pieces: list[tuple[bool, str]] = []
    for monom, coeff in poly.terms():
        value = to_fraction(coeff)
        factors = [
            symbol.value if power == 1 else f"{symbol.value}^{power}"
            for symbol, power in zip(Symbol, monom)
            if power
        ]
        magnitude = abs(value)
        if not factors:
            body = _format_rational(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_rational(magnitude), *factors])
        pieces.append((value < 0, body))
    negative, body = pieces[0]
    text = f"-{body}" if negative else body
    for negative, body in pieces[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text


class Scalar:
    """An immutable element of QQ(r, alpha, gamma, lam_*, sqrt_d, X, Y)."""

    __slots__ = ("_value", "_d")

    def __init__(self, value: "Scalar | FracElement | PolyElement | int | Fraction" = 0, d: Any = None) -> None:
        if isinstance(value, Scalar):
            d = value._d if d is None else d
            value = value._value
        elif isinstance(value, PolyElement):
            value = FIELD.new(value)
        elif isinstance(value, (int, Fraction)):
            value = FIELD.ground_new(_qq(Fraction(value)))
        elif not isinstance(value, FracElement):
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        discriminant = None if d is None else to_fraction(d)
        self._value = _reduce(value, discriminant)
        mentions = _mentions_sqrt_d(self._value.numer) or _mentions_sqrt_d(self._value.denom)
        self._d = discriminant if mentions else None

    # construction -------------------------------------------------------

    @classmethod
    def symbol(cls, symbol: Symbol, d: Any = None) -> "Scalar":
        return cls(_FIELD_GENERATORS[_SYMBOL_INDEX[Symbol(symbol)]], d)

    @classmethod
    def parse(cls, text: str, d: Any = None) -> "Scalar":
        """Parse the canonical text form, e.g. ``(3*r^2 - 1)/(r + 1)``."""
        try:
            expr = parse_expr(text, local_dict=dict(_PARSE_LOCALS), transformations=_TRANSFORMATIONS)
            value = FIELD.from_expr(expr)
        except (SyntaxError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a scalar expression: {text!r}") from exc
        return cls(value, d)

    @classmethod
    def coerce(cls, value: Any) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise ValueError(f"cannot interpret {value!r} as a scalar")

    @classmethod
    def __get_pydantic_core_schema__(cls, source_type: Any, handler: Any) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            cls.coerce,
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda value: value.to_text(), return_schema=core_schema.str_schema()
            ),
        )

    # inspection ---------------------------------------------------------

    @property
    def discriminant(self) -> Fraction | None:
        return self._d

    @property
    def value(self) -> FracElement:
        return self._value

    def _canonical(self) -> tuple[PolyElement, PolyElement]:
        numer, denom = self._value.numer, self._value.denom
        lead = denom.LC
        return numer.quo_ground(lead), denom.quo_ground(lead)

    @property
    def numerator(self) -> PolyElement:
        return self._canonical()[0]

    @property
    def denominator(self) -> PolyElement:
        return self._canonical()[1]

    @property
    def is_constant(self) -> bool:
        return self._value.numer.is_ground and self._value.denom.is_ground

    @property
    def is_polynomial(self) -> bool:
        return self._value.denom.is_ground

    @property
    def term_count(self) -> int:
        return len(self._value.numer) + len(self._value.denom)

    def symbols(self) -> set[Symbol]:
        present = set()
        for poly in (self._value.numer, self._value.denom):
            for monom in poly.keys():
                present.update(symbol for symbol, power in zip(Symbol, monom) if power)
        return present

    def to_fraction(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        numer, denom = self._canonical()
        return to_fraction(numer.LC) / to_fraction(denom.LC)

    def split_in(self, symbol: Symbol) -> tuple[dict[int, "Scalar"], dict[int, "Scalar"]]:
        """Coefficients of numerator and denominator as polynomials in ``symbol``."""
        index = _SYMBOL_INDEX[Symbol(symbol)]

        def split(poly: PolyElement) -> dict[int, Scalar]:
            buckets: dict[int, dict[tuple[int, ...], Any]] = {}
            for monom, coeff in poly.items():
                rest = monom[:index] + (0,) + monom[index + 1 :]
                buckets.setdefault(monom[index], {})[rest] = coeff
            return {power: Scalar(RING.from_dict(terms), self._d) for power, terms in buckets.items()}

        numer, denom = self._canonical()
        return split(numer), split(denom)

    # transformation -----------------------------------------------------

    def specialize(self, values: Mapping[Symbol | str, Any]) -> "Scalar":
        """Replace symbols by exact rationals."""
        if not values:
            return self
        numer, denom = self._value.numer, self._value.denom
        for symbol, raw in values.items():
            generator = _RING_GENERATORS[Symbol(symbol)]
            replacement = _qq(to_fraction(raw))
            numer = numer.subs(generator, replacement)
            denom = denom.subs(generator, replacement)
        if not denom:
            raise DivisionByZero(f"{self} has a pole at {dict(values)}")
        return Scalar(FIELD.new(numer, denom), self._d)

    def substitute(self, mapping: Mapping[Symbol | str, "Scalar"]) -> "Scalar":
        """Simultaneously replace symbols by scalars."""
        replacements = {
            FIELD.symbols[_SYMBOL_INDEX[Symbol(symbol)]]: Scalar.coerce(image)._value.as_expr()
            for symbol, image in mapping.items()
        }
        expr = self._value.as_expr().xreplace(replacements)
        try:
            value = FIELD.from_expr(expr)
        except ZeroDivisionError as exc:
            raise DivisionByZero(f"substitution {mapping} hits a pole of {self}") from exc
        return Scalar(value, self._d)

    def as_expr(self) -> Any:
        return self._value.as_expr()

    # text ---------------------------------------------------------------

    def to_text(self) -> str:
        numer, denom = self._canonical()
        if denom.is_ground:
            return _format_poly(numer)
        return f"({_format_poly(numer)})/({_format_poly(denom)})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()!r})"

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _operand(other: Any) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return None

    def _combine(self, other: "Scalar", value: FracElement) -> "Scalar":
        return Scalar(value, _merge_discriminants(self._d, other._d))

    def __add__(self, other: Any) -> "Scalar":
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        return self._combine(rhs, self._value + rhs._value)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        return self._combine(rhs, self._value - rhs._value)

    def __rsub__(self, other: Any) -> "Scalar":
        lhs = self._operand(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: Any) -> "Scalar":
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        return self._combine(rhs, self._value * rhs._value)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Scalar":
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        if not rhs:
            raise DivisionByZero(f"division of {self} by zero")
        return self._combine(rhs, self._value / rhs._value)

    def __rtruediv__(self, other: Any) -> "Scalar":
        lhs = self._operand(other)
        if lhs is None:
            return NotImplemented
        return lhs / self

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0 and not self:
            raise DivisionByZero("negative power of zero")
        return Scalar(self._value**exponent, self._d)

    def __neg__(self) -> "Scalar":
        return Scalar(-self._value, self._d)

    def __pos__(self) -> "Scalar":
        return self

    def __bool__(self) -> bool:
        return bool(self._value.numer)

    def __eq__(self, other: object) -> bool:
        rhs = self._operand(other)
        if rhs is None:
            return NotImplemented
        return not (self._value - rhs._value).numer

    def __hash__(self) -> int:
        numer, denom = self._canonical()
        return hash((numer, denom))


class PolyOp(StrEnum):
    ADD = "add"
    MUL = "mul"
    NEG = "neg"


def poly_arith(op: PolyOp, lhs: Scalar, rhs: Scalar | None = None) -> Scalar:
    """Ring operations restricted to polynomial operands."""
    operands = [lhs] if op is PolyOp.NEG else [lhs, rhs]
    for operand in operands:
        if operand is None or not operand.is_polynomial:
            raise ValueError(f"poly_arith expects polynomial operands, got {operand}")
    match PolyOp(op):
        case PolyOp.ADD:
            return lhs + rhs
        case PolyOp.MUL:
            return lhs * rhs
        case PolyOp.NEG:
            return -lhs


def ratfunc_simplify(numerator: Scalar | int, denominator: Scalar | int = 1) -> Scalar:
    """Reduce numerator/denominator to canonical form."""
    denominator = Scalar.coerce(denominator)
    if not denominator:
        raise DivisionByZero("rational function with zero denominator")
    return Scalar.coerce(numerator) / denominator


ZERO = Scalar(0)
ONE = Scalar(1)
R = Scalar.symbol(Symbol.R)
Q = R**2
ALPHA = Scalar.symbol(Symbol.ALPHA)
GAMMA = Scalar.symbol(Symbol.GAMMA)
LAM_PI = Scalar.symbol(Symbol.LAM_PI)
LAM_PIL = Scalar.symbol(Symbol.LAM_PIL)
LAM_10 = Scalar.symbol(Symbol.LAM_10)
LAM_01 = Scalar.symbol(Symbol.LAM_01)
X = Scalar.symbol(Symbol.X)
Y = Scalar.symbol(Symbol.Y)


def sqrt_d(d: Any) -> Scalar:
    return Scalar.symbol(Symbol.SQRT_D, d)
