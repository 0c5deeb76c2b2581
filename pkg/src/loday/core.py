"""Z2-graded spaces, bilinear products as structure constants, and reports.

An algebra here is always a finite ordered basis with a parity per basis
element plus sparse structure-constant tables.  All values are immutable
after construction, so every operation downstream is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import SparseVector, frac

Scalar = Fraction

EVEN = 0
ODD = 1


class AlgebraError(ValueError):
    """Base error for algebra construction and validation."""


class MissingBarUnit(AlgebraError):
    pass


class OddDifferential(AlgebraError):
    pass


class DifferentialNotSquareZero(AlgebraError):
    pass


class DifferentialNotDerivation(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class InhomogeneousSubspace(AlgebraError):
    pass


class NotClosedSubspace(AlgebraError):
    pass


class CartanNotCommuting(AlgebraError):
    pass


class UnsupportedBlockSizes(AlgebraError):
    """Raised for equal block sizes, where the split trace degenerates."""


@dataclass(frozen=True)
class SuperSpace:
    """Finite ordered basis with a Z2 parity and a label per element."""

    name: str
    labels: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "parities", tuple(int(p) for p in self.parities))
        if len(self.labels) != len(self.parities):
            raise AlgebraError("labels and parities must have equal length")
        if not self.labels:
            raise AlgebraError("a SuperSpace needs a nonempty basis")
        if any(p not in (EVEN, ODD) for p in self.parities):
            raise AlgebraError("parities must be 0 or 1")
        if len(set(self.labels)) != len(self.labels):
            raise AlgebraError("basis labels must be unique")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def vector_parity(self, v: SparseVector) -> int | None:
        """Parity of a homogeneous vector; None for 0 or mixed vectors."""
        seen = {self.parities[i] for i in v.entries}
        if len(seen) == 1:
            return seen.pop()
        return None

    def parity_component(self, v: SparseVector, p: int) -> SparseVector:
        return SparseVector(self.dim, {i: c for i, c in v.entries.items() if self.parities[i] == p})

    def describe(self, v: SparseVector) -> str:
        if v.is_zero():
            return "0"
        parts = []
        for i, c in v.items():
            if c == 1:
                parts.append(self.labels[i])
            elif c == -1:
                parts.append(f"-{self.labels[i]}")
            else:
                parts.append(f"{c}*{self.labels[i]}")
        return " + ".join(parts).replace("+ -", "- ")


class BilinearMap:
    """Sparse structure constants of a bilinear map left x right -> out."""

    __slots__ = ("left", "right", "out", "constants")

    def __init__(
        self,
        left: SuperSpace,
        right: SuperSpace,
        out: SuperSpace,
        constants: Mapping[tuple[int, int], SparseVector],
    ):
        clean: dict[tuple[int, int], SparseVector] = {}
        for (i, j), v in constants.items():
            if not 0 <= i < left.dim or not 0 <= j < right.dim:
                raise AlgebraError(f"constant index ({i}, {j}) out of range")
            if v.dim != out.dim:
                raise AlgebraError("structure constant vector has wrong ambient dimension")
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "out", out)
        object.__setattr__(self, "constants", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BilinearMap is immutable")

    @staticmethod
    def zero(left: SuperSpace, right: SuperSpace | None = None, out: SuperSpace | None = None) -> "BilinearMap":
        return BilinearMap(left, right or left, out or left, {})

    @staticmethod
    def product(space: SuperSpace, constants: Mapping[tuple[int, int], SparseVector]) -> "BilinearMap":
        """A product on a single space (left = right = out)."""
        return BilinearMap(space, space, space, constants)

    def on_basis(self, i: int, j: int) -> SparseVector:
        v = self.constants.get((i, j))
        return v if v is not None else SparseVector.zero(self.out.dim)

    def apply(self, u: SparseVector, v: SparseVector) -> SparseVector:
        if u.dim != self.left.dim or v.dim != self.right.dim:
            raise AlgebraError("operand dimension mismatch")
        out = SparseVector.zero(self.out.dim)
        for i, a in u.entries.items():
            for j, b in v.entries.items():
                w = self.constants.get((i, j))
                if w is not None:
                    out = out.axpy(a * b, w)
        return out

    def apply_basis_left(self, i: int, v: SparseVector) -> SparseVector:
        out = SparseVector.zero(self.out.dim)
        for j, b in v.entries.items():
            w = self.constants.get((i, j))
            if w is not None:
                out = out.axpy(b, w)
        return out

    def apply_basis_right(self, u: SparseVector, j: int) -> SparseVector:
        out = SparseVector.zero(self.out.dim)
        for i, a in u.entries.items():
            w = self.constants.get((i, j))
            if w is not None:
                out = out.axpy(a, w)
        return out

    def is_zero(self) -> bool:
        return not self.constants

    def same_constants(self, other: "BilinearMap") -> bool:
        return self.constants == other.constants

    def parity_defect(self, shift: int = 0) -> list[tuple[int, int]]:
        """Pairs (i, j) whose output is not parity |i|+|j|+shift homogeneous."""
        bad = []
        for (i, j), v in sorted(self.constants.items()):
            want = (self.left.parities[i] + self.right.parities[j] + shift) % 2
            if any(self.out.parities[k] != want for k in v.entries):
                bad.append((i, j))
        return bad

    def __eq__(self, other):
        return (
            isinstance(other, BilinearMap)
            and self.left == other.left
            and self.right == other.right
            and self.out == other.out
            and self.constants == other.constants
        )

    def __repr__(self):
        return f"BilinearMap({self.left.name} x {self.right.name} -> {self.out.name}, {len(self.constants)} entries)"


BilinearProduct = BilinearMap


def _check_unit_vector(space: SuperSpace, v: SparseVector) -> None:
    if v.dim != space.dim:
        raise AlgebraError("bar-unit has wrong ambient dimension")
    if v.is_zero():
        raise AlgebraError("bar-unit must be nonzero")
    if space.vector_parity(v) != EVEN:
        raise AlgebraError("bar-unit must be even")


@dataclass(frozen=True)
class SuperDialgebra:
    """Carrier space with left (-|) and right (|-) products, optional bar-unit."""

    space: SuperSpace
    left: BilinearMap
    right: BilinearMap
    bar_unit: SparseVector | None = None

    def __post_init__(self):
        for prod in (self.left, self.right):
            if prod.left != self.space or prod.right != self.space or prod.out != self.space:
                raise AlgebraError("dialgebra products must live on the carrier space")
        if self.bar_unit is not None:
            _check_unit_vector(self.space, self.bar_unit)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def name(self) -> str:
        return self.space.name

    def is_unital(self) -> bool:
        return self.bar_unit is not None

    def products_coincide(self) -> bool:
        return self.left.same_constants(self.right)


@dataclass(frozen=True)
class LeibnizSuperalgebra:
    """Carrier space with a single bracket."""

    space: SuperSpace
    bracket: BilinearMap

    def __post_init__(self):
        b = self.bracket
        if b.left != self.space or b.right != self.space or b.out != self.space:
            raise AlgebraError("bracket must live on the carrier space")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def name(self) -> str:
        return self.space.name


Violation = tuple[tuple, SparseVector, SparseVector]


@dataclass(frozen=True)
class ViolationReport:
    """Deterministic record of identity failures.

    `violations` holds up to `max_violations` offending tuples in
    lexicographic index order together with the two sides that disagreed;
    `total_violations` counts all failures found.
    """

    identity_name: str
    violations: tuple[Violation, ...]
    checked_count: int
    total_violations: int

    @property
    def passed(self) -> bool:
        return self.total_violations == 0

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return (
            f"{self.identity_name}: {verdict} "
            f"({self.checked_count} checked, {self.total_violations} violations)"
        )

    def __repr__(self):
        return f"ViolationReport({self.summary()})"


def merge_reports(name: str, reports: Iterable[ViolationReport]) -> ViolationReport:
    reports = list(reports)
    violations: list[Violation] = []
    checked = 0
    total = 0
    for r in reports:
        violations.extend(r.violations)
        checked += r.checked_count
        total += r.total_violations
    violations.sort(key=lambda t: t[0])
    return ViolationReport(name, tuple(violations), checked, total)


def basis_vector(space: SuperSpace, label: str) -> SparseVector:
    idx = space.label_index()
    if label not in idx:
        raise AlgebraError(f"unknown basis label {label!r} in space {space.name!r}")
    return SparseVector.unit(space.dim, idx[label])


def vector_from_mapping(space: SuperSpace, coeffs: Mapping[str, object]) -> SparseVector:
    idx = space.label_index()
    ent: dict[int, Fraction] = {}
    for lab, c in coeffs.items():
        if lab not in idx:
            raise AlgebraError(f"unknown basis label {lab!r} in space {space.name!r}")
        ent[idx[lab]] = frac(c)
    return SparseVector(space.dim, ent)


def table_to_constants(
    space_left: SuperSpace,
    space_right: SuperSpace,
    space_out: SuperSpace,
    table: Mapping[tuple[str, str], Mapping[str, object]],
) -> dict[tuple[int, int], SparseVector]:
    """Structure constants from a label-keyed table."""
    il = space_left.label_index()
    ir = space_right.label_index()
    out: dict[tuple[int, int], SparseVector] = {}
    for (a, b), coeffs in table.items():
        key = (il[a], ir[b])
        if key in out:
            raise AlgebraError(f"duplicate table entry for ({a}, {b})")
        out[key] = vector_from_mapping(space_out, coeffs)
    return out
