from enum import StrEnum

from pydantic import BaseModel, ConfigDict, model_validator


class BesselCase(StrEnum):
    INERT = "inert"
    RAMIFIED = "ramified"
    SPLIT = "split"

    @property
    def legendre(self) -> int:
        """The value of the quadratic symbol (L/p) for this case."""
        return {BesselCase.INERT: -1, BesselCase.RAMIFIED: 0, BesselCase.SPLIT: 1}[self]


class BesselSetup(BaseModel):
    """The symmetric matrix S = [[a, b/2], [b/2, c]] and its quadratic algebra mod p."""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int
    p: int
    d: int
    case: BesselCase
    roots: tuple[int, ...] = ()

    @model_validator(mode="after")
    def validate_invariants(self) -> "BesselSetup":
        if self.d != self.b * self.b - 4 * self.a * self.c:
            raise ValueError("d must equal b^2 - 4ac")
        if self.c % self.p == 0:
            raise ValueError("c must be invertible mod p")
        if len(self.roots) != self.case.legendre + 1:
            raise ValueError(f"{self.case} setup needs {self.case.legendre + 1} roots")
        for u in self.roots:
            if (self.c * u * u + self.b * u + self.a) % self.p:
                raise ValueError(f"{u} is not a root of c*u^2 + b*u + a mod {self.p}")
        if self.case is BesselCase.SPLIT and len(set(self.roots)) != 2:
            raise ValueError("split roots must be distinct mod p")
        return self

    @property
    def xi(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """xi = [[b/2, c], [-a, -b/2]] reduced mod p."""
        half = pow(2, -1, self.p)
        p = self.p
        return ((self.b * half) % p, self.c % p), ((-self.a) % p, (-self.b * half) % p)
