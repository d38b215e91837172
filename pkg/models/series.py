from typing import Iterable, Sequence

from errors import NotExpandable

from .scalar import ZERO, Scalar, Symbol


class TruncatedSeries:
    """Coefficients 0..order of a formal power series in X or Y."""

    __slots__ = ("variable", "coeffs")

    def __init__(self, variable: Symbol, coeffs: Iterable[Scalar | int]) -> None:
        variable = Symbol(variable)
        if variable not in (Symbol.X, Symbol.Y):
            raise ValueError(f"series variable must be X or Y, got {variable}")
        self.variable = variable
        self.coeffs: tuple[Scalar, ...] = tuple(Scalar.coerce(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, index: int) -> Scalar:
        return self.coeffs[index]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "TruncatedSeries") -> int:
        if other.variable != self.variable:
            raise ValueError("series in different variables")
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = self._check(other)
        return TruncatedSeries(self.variable, (self[k] + other[k] for k in range(order + 1)))

    def __mul__(self, other: "TruncatedSeries | Scalar | int") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.variable, (c * other for c in self.coeffs))
        order = self._check(other)
        return TruncatedSeries(
            self.variable,
            (sum((self[j] * other[k - j] for j in range(k + 1)), ZERO) for k in range(order + 1)),
        )

    __rmul__ = __mul__

    def shifted(self, offset: int) -> "TruncatedSeries":
        """Multiply by variable**offset, keeping the same order."""
        padded = [ZERO] * offset + list(self.coeffs)
        return TruncatedSeries(self.variable, padded[: self.order + 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.variable == other.variable and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        body = ", ".join(c.to_text() for c in self.coeffs)
        return f"TruncatedSeries({self.variable.value}: [{body}])"


def _dense(coefficients: dict[int, Scalar], length: int) -> Sequence[Scalar]:
    return [coefficients.get(k, ZERO) for k in range(length)]


def series_expand(f: Scalar, variable: Symbol, order: int) -> TruncatedSeries:
    """Expand ``f`` as a power series in ``variable`` up to ``variable**order``.

    Args:
        f: Rational function to expand.
        variable: Series variable, X or Y.
        order: Highest power kept.

    Returns:
        TruncatedSeries with ``order + 1`` exact coefficients.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    numerator, denominator = f.split_in(variable)
    lead = denominator.get(0, ZERO)
    if not lead:
        raise NotExpandable(f"{f} has no invertible constant term in {Symbol(variable).value}")
    num = _dense(numerator, order + 1)
    den = _dense(denominator, order + 1)
    coeffs: list[Scalar] = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, k + 1):
            if den[j]:
                acc -= den[j] * coeffs[k - j]
        coeffs.append(acc / lead)
    return TruncatedSeries(variable, coeffs)
