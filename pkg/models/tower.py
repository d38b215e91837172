from enum import StrEnum
from typing import Iterable, Iterator

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .bessel_character import BesselCharacter
from .rep_type import RepType
from .scalar import ZERO, Scalar


class TowerTag(StrEnum):
    """Double coset representative h(l,m)·w of the P1-invariant Bessel function support."""

    E = "E"
    S2 = "S2"
    S12 = "S12"
    S212 = "S212"
    U0 = "U0"
    U1 = "U1"
    U2 = "U2"

    @property
    def is_u(self) -> bool:
        return self in (TowerTag.U0, TowerTag.U1, TowerTag.U2)

    @property
    def min_l(self) -> int:
        """Smallest l at which the tag is not forced to vanish."""
        return -1 if self in (TowerTag.S12, TowerTag.S212, TowerTag.U0) else 0

    @property
    def min_m(self) -> int:
        """h(l,0)s1s2 is not a double coset representative; the s1s2 tower starts at m = 1."""
        return 1 if self is TowerTag.S12 else 0


TAG_ORDER = {tag: position for position, tag in enumerate(TowerTag)}


class TowerIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    l: int
    m: int = Field(ge=0)
    w: TowerTag

    @model_validator(mode="after")
    def validate_u_level(self) -> "TowerIndex":
        if self.w.is_u and self.m != 0:
            raise ValueError(f"{self.w} indices only exist at m = 0")
        return self

    @classmethod
    def of(cls, l: int, m: int, w: TowerTag | str) -> "TowerIndex":
        return cls(l=l, m=m, w=TowerTag(w))

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return TAG_ORDER[self.w], self.l, self.m

    def __str__(self) -> str:
        return f"({self.l},{self.m},{self.w.value})"


class Window(BaseModel):
    """Truncation (L_max, M_max) of the tower index set."""

    model_config = ConfigDict(frozen=True)

    l_max: int = Field(ge=0)
    m_max: int = Field(ge=0)

    @classmethod
    def of(cls, value: "Window | tuple[int, int] | list[int]") -> "Window":
        if isinstance(value, Window):
            return value
        l_max, m_max = value
        return cls(l_max=l_max, m_max=m_max)

    @classmethod
    def default(cls, m0: int) -> "Window":
        return cls(l_max=6, m_max=m0 + 6)

    def contains(self, l: int, m: int) -> bool:
        return l <= self.l_max and 0 <= m <= self.m_max

    def indices(self, tags: Iterable[TowerTag] = TowerTag) -> Iterator[TowerIndex]:
        for tag in tags:
            m_range = range(1) if tag.is_u else range(tag.min_m, self.m_max + 1)
            for l in range(tag.min_l, self.l_max + 1):
                for m in m_range:
                    yield TowerIndex(l=l, m=m, w=tag)

    def as_tuple(self) -> tuple[int, int]:
        return self.l_max, self.m_max


class RowOperator(StrEnum):
    T10 = "T10"
    T01 = "T01"
    CONSTRAINT = "constraint"


Terms = tuple[tuple[TowerIndex, Scalar], ...]


def merge_terms(pairs: Iterable[tuple[TowerIndex, Scalar]]) -> Terms:
    """Collect coefficients per index, dropping zeros, in tower order."""
    merged: dict[TowerIndex, Scalar] = {}
    for index, coefficient in pairs:
        merged[index] = merged.get(index, ZERO) + coefficient
    return tuple(sorted(((i, c) for i, c in merged.items() if c), key=lambda pair: pair[0].sort_key))


class LinearRow(BaseModel):
    """A sparse linear expression in tower values.

    Hecke expansions read ``(T B)(target) = Σ terms``. Equations, which is what
    constraint families and eigen-substituted Hecke rows are, read
    ``Σ terms = 0``.
    """

    model_config = ConfigDict(frozen=True)

    target: TowerIndex | None = None
    operator: RowOperator
    terms: Terms = ()
    family: str | None = None
    is_equation: bool = False
    # the expansion referenced an index outside the tower index set
    unresolved: bool = False

    @model_validator(mode="after")
    def validate_terms(self) -> "LinearRow":
        if any(not coefficient for _, coefficient in self.terms):
            raise ValueError("row coefficients must be nonzero")
        if not self.is_equation and self.target is None:
            raise ValueError("an expansion row needs a target")
        return self

    def indices(self) -> set[TowerIndex]:
        return {index for index, _ in self.terms}

    def coefficient(self, index: TowerIndex) -> Scalar:
        for candidate, coefficient in self.terms:
            if candidate == index:
                return coefficient
        return ZERO

    def to_equation(self, eigenvalue: Scalar) -> "LinearRow":
        """``eigenvalue·B(target) - Σ terms = 0``."""
        if self.is_equation:
            return self
        pairs = [(self.target, eigenvalue), *((index, -c) for index, c in self.terms)]
        return self.model_copy(update={"terms": merge_terms(pairs), "is_equation": True})

    def evaluate(self, values: dict[TowerIndex, Scalar]) -> Scalar:
        return sum((c * values[index] for index, c in self.terms if index in values), ZERO)

    def specialize(self, values: dict) -> "LinearRow":
        pairs = [(index, c.specialize(values)) for index, c in self.terms]
        return self.model_copy(update={"terms": merge_terms(pairs)})

    def describe(self) -> str:
        body = " + ".join(f"({c.to_text()})*B{index}" for index, c in self.terms) or "0"
        if self.is_equation:
            return f"{body} = 0"
        return f"({self.operator.value} B){self.target} = {body}"


class EigenSystem(BaseModel):
    """Truncated homogeneous system whose kernel models the common eigenvectors."""

    model_config = ConfigDict(frozen=True)

    rep_type: RepType
    eig_index: int = Field(ge=0, le=1)
    char: BesselCharacter
    window: Window
    lam: Scalar
    mu: Scalar
    families: tuple[str, ...] = ()
    unknowns: tuple[TowerIndex, ...]
    rows: tuple[LinearRow, ...]
    kernel: tuple[tuple[Scalar, ...], ...] | None = None
    warnings: tuple[str, ...] = ()

    @model_validator(mode="after")
    def validate_homogeneous(self) -> "EigenSystem":
        known = set(self.unknowns)
        for row in self.rows:
            if not row.is_equation:
                raise ValueError("system rows must be equations")
            if not row.indices() <= known:
                raise ValueError(f"row {row.describe()} references unknowns outside the system")
        return self

    def matrix(self) -> list[list[Scalar]]:
        column = {index: position for position, index in enumerate(self.unknowns)}
        matrix = []
        for row in self.rows:
            dense = [ZERO] * len(self.unknowns)
            for index, coefficient in row.terms:
                dense[column[index]] = coefficient
            matrix.append(dense)
        return matrix


class TowerTable(BaseModel):
    """Finitely supported values of one Bessel function on the tower index set."""

    model_config = ConfigDict(frozen=True)

    window: Window
    char: BesselCharacter
    values: dict[TowerIndex, Scalar]

    def __getitem__(self, index: TowerIndex) -> Scalar:
        return self.values.get(index, ZERO)

    def rows(self) -> list[tuple[int, int, str, str]]:
        ordered = sorted(self.values.items(), key=lambda item: (item[0].l, item[0].m, TAG_ORDER[item[0].w]))
        return [(index.l, index.m, index.w.value, value.to_text()) for index, value in ordered]


class DistinguishedValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: str
    # some validated kernel vector is nonzero here
    attainable: bool
    # validated kernel vectors vanishing here also vanish on the window interior, which some vector reaches
    forced_nonzero: bool
    identically_zero: bool


class KernelReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    rep_type: RepType
    case: str
    m0: int
    eig_index: int
    window: tuple[int, int]
    unknowns: int
    equations: int
    dim: int
    validated_dim: int
    distinguished: dict[str, DistinguishedValue]
    held_out_families: tuple[str, ...]
    held_out_ok: bool
    main_tower_matches_series: bool
    basis: tuple[dict[str, str], ...]
    warnings: tuple[str, ...] = ()
