from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .bessel_setup import BesselCase, BesselSetup
from .scalar import Scalar

Rows = tuple[tuple[int, ...], ...]
SubgroupLevel = Literal["gamma_0", "gamma^0"]


class ResidueMatrix(BaseModel):
    """A 2x2 or 4x4 integer matrix with entries reduced mod ``modulus``."""

    model_config = ConfigDict(frozen=True)

    entries: Rows
    modulus: int = Field(gt=1)

    @model_validator(mode="before")
    @classmethod
    def reduce_entries(cls, data: dict) -> dict:
        if isinstance(data, dict) and "entries" in data and "modulus" in data:
            modulus = data["modulus"]
            data = dict(data, entries=tuple(tuple(int(x) % modulus for x in row) for row in data["entries"]))
        return data

    @field_validator("entries")
    @classmethod
    def validate_shape(cls, entries: Rows) -> Rows:
        n = len(entries)
        if n not in (2, 4) or any(len(row) != n for row in entries):
            raise ValueError("entries must form a 2x2 or 4x4 matrix")
        return entries

    @classmethod
    def of(cls, rows: list[list[int]] | Rows, modulus: int) -> "ResidueMatrix":
        return cls(entries=tuple(tuple(row) for row in rows), modulus=modulus)

    @classmethod
    def identity(cls, n: int, modulus: int) -> "ResidueMatrix":
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)], modulus)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        if other.modulus != self.modulus or other.n != self.n:
            raise ValueError("matrices must share size and modulus")
        size = range(self.n)
        rows = [[sum(self.entries[i][k] * other.entries[k][j] for k in size) for j in size] for i in size]
        return ResidueMatrix.of(rows, self.modulus)

    def transpose(self) -> "ResidueMatrix":
        return ResidueMatrix.of(list(zip(*self.entries)), self.modulus)

    def scaled(self, factor: int) -> "ResidueMatrix":
        return ResidueMatrix.of([[factor * x for x in row] for row in self.entries], self.modulus)

    def reduced(self, modulus: int) -> "ResidueMatrix":
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return ResidueMatrix.of(self.entries, modulus)


class SubgroupTag(StrEnum):
    IWAHORI_I = "IwahoriI"
    SIEGEL_P1 = "SiegelP1"
    KLINGEN_P2 = "KlingenP2"
    PARAMODULAR_N = "ParamodularN"
    GL2_GAMMA0 = "GL2_Gamma0"
    GL2_GAMMA_UPPER0 = "GL2_Gamma_upper0"
    TORUS_TO = "TorusTO"
    TORUS_TOM = "TorusTOm"

    @property
    def dimension(self) -> int:
        if self in (SubgroupTag.IWAHORI_I, SubgroupTag.SIEGEL_P1, SubgroupTag.KLINGEN_P2, SubgroupTag.PARAMODULAR_N):
            return 4
        return 2


class SubgroupSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    tag: SubgroupTag
    # paramodular level exponent
    n: int = Field(default=1, ge=1)
    setup: BesselSetup | None = None
    m: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def validate_torus(self) -> "SubgroupSpec":
        if self.tag in (SubgroupTag.TORUS_TO, SubgroupTag.TORUS_TOM) and self.setup is None:
            raise ValueError(f"{self.tag} membership needs a BesselSetup")
        return self


class IntegrationProbe(BaseModel):
    """A test function on GL2(o), given by its values on named double coset representatives.

    Labels are products of ``1``, ``w`` and ``n(u0)``, ``n(u1)``, ``n(u2)``,
    e.g. ``n(u1)w``. Cosets with no label carry the value 0.
    """

    model_config = ConfigDict(frozen=True)

    level: SubgroupLevel
    values: dict[str, Scalar]


class CosetEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    rep: str
    size: int
    level: SubgroupLevel


class PartitionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    case: BesselCase
    part: Literal["i", "ii", "iii", "iv"]
    p: int
    m: int
    group_order: int
    cosets: tuple[CosetEntry, ...]
    disjoint: bool
    covers: bool
    absorption: bool

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covers and self.absorption


ScalarMatrix2 = tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]


class SplitTransfer(BaseModel):
    """Change of Bessel model A with S' = rho · ᵗA S A = [[0, 1/2], [1/2, 0]]."""

    model_config = ConfigDict(frozen=True)

    matrix: ScalarMatrix2
    rho: Scalar
    # ᵗA S A as computed
    product: ScalarMatrix2
    verified: bool
