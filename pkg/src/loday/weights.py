"""Cartan weight-space decompositions and root-grading certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .checks import check_leibniz, is_lie
from .constructions import Restriction, ad, restrict
from .core import (
    AlgebraError,
    CartanNotCommuting,
    LeibnizSuperalgebra,
    NotClosedSubspace,
)
from .linalg import (
    SparseVector,
    Subspace,
    char_poly,
    intersect,
    kernel,
    rational_roots,
    row_reduce,
)

Weight = tuple[Fraction, ...]


@dataclass(frozen=True)
class WeightDecomposition:
    """Simultaneous eigenspaces of the adjoint action of a commuting family.

    `weights` maps each realized weight (tuple of eigenvalues, one per Cartan
    element) to its subspace.  The decomposition is complete when the
    dimensions add up to the ambient dimension; rational-root extraction can
    miss irrational spectra, which is reported, not raised.
    """

    cartan_size: int
    ambient_dim: int
    weights: dict[Weight, Subspace]
    complete: bool
    diagnostic: str | None = None

    @property
    def zero_weight(self) -> Weight:
        return (Fraction(0),) * self.cartan_size

    def zero_space(self) -> Subspace:
        zero = self.weights.get(self.zero_weight)
        return zero if zero is not None else row_reduce([], self.ambient_dim)

    def nonzero_weights(self) -> list[Weight]:
        return sorted(w for w in self.weights if w != self.zero_weight)

    def total_dim(self) -> int:
        return sum(s.dim for s in self.weights.values())


def weight_decomposition(
    alg: LeibnizSuperalgebra, cartan: Sequence[SparseVector]
) -> WeightDecomposition:
    """Decompose `alg` into joint eigenspaces of ad h, h in `cartan`.

    Eigenvalue candidates per element come from the rational roots of the
    characteristic polynomial of ad h; spaces are refined one Cartan element
    at a time, intersecting with each eigenkernel.
    """
    cartan = list(cartan)
    for a, h in enumerate(cartan):
        for b, k in enumerate(cartan):
            if not alg.bracket.apply(h, k).is_zero():
                raise CartanNotCommuting(f"cartan elements {a} and {b} do not commute")
    n = alg.dim
    full = row_reduce([SparseVector.unit(n, i) for i in range(n)], n)
    spaces: dict[Weight, Subspace] = {(): full}
    for h in cartan:
        m = ad(alg, h)
        eigenvalues = [r for r, _ in rational_roots(char_poly(m))]
        refined: dict[Weight, Subspace] = {}
        for prefix, space in spaces.items():
            for lam in eigenvalues:
                eig = kernel(m.minus_scalar(lam))
                meet = intersect(space, eig)
                if meet.dim:
                    refined[prefix + (lam,)] = meet
        spaces = refined
    if not cartan:
        spaces = {(): full}
    total = sum(s.dim for s in spaces.values())
    complete = total == n
    diagnostic = None if complete else (
        f"joint rational eigenspaces span {total} of {n} dimensions"
    )
    return WeightDecomposition(len(cartan), n, dict(spaces), complete, diagnostic)


@dataclass(frozen=True)
class GradingCertificate:
    """Outcome of the three root-grading conditions.

    failures holds (condition name, witness description) pairs; the
    certificate is affirmative exactly when it is empty.
    """

    failures: tuple[tuple[str, str], ...]
    root_count: int
    zero_space_dim: int

    @property
    def is_graded(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        verdict = "graded" if self.is_graded else "NOT graded"
        return (
            f"{verdict}: {self.root_count} nonzero weights, "
            f"zero space dim {self.zero_space_dim}, {len(self.failures)} failures"
        )


def check_delta_graded(
    alg: LeibnizSuperalgebra,
    subalgebra: Subspace,
    cartan: Sequence[SparseVector],
    max_violations: int = 100,
) -> GradingCertificate:
    """Certify the root-system grading of `alg` over an embedded split
    simple subalgebra with Cartan family `cartan`.

    Condition 1: the subspace is bracket-closed and its restriction is a Lie
    superalgebra.  Condition 2: the weight decomposition of `alg` is complete
    and every nonzero weight of `alg` is a weight of the subalgebra.
    Condition 3: the zero space is spanned by brackets of opposite pairs.
    """
    cartan = list(cartan)
    for t, h in enumerate(cartan):
        if not subalgebra.contains(h):
            raise AlgebraError(f"cartan element {t} is not inside the subalgebra")

    failures: list[tuple[str, str]] = []
    sub_restriction: Restriction | None = None
    try:
        sub_restriction = restrict(alg, subalgebra)
    except (NotClosedSubspace, AlgebraError) as exc:
        failures.append(("subalgebra", str(exc)))

    decomposition = weight_decomposition(alg, cartan)
    root_count = len(decomposition.nonzero_weights())
    zero_dim = decomposition.zero_space().dim

    if sub_restriction is not None:
        g = sub_restriction.algebra
        rep = check_leibniz(g, max_violations=max_violations)
        if not rep.passed:
            failures.append(("subalgebra", f"restriction fails the Leibniz identity: {rep.summary()}"))
        rep = is_lie(g, max_violations=max_violations)
        if not rep.passed:
            failures.append(("subalgebra", f"restriction is not antisymmetric: {rep.summary()}"))

        if not decomposition.complete:
            failures.append(("weights", decomposition.diagnostic or "incomplete decomposition"))
        sub_cartan = [sub_restriction.to_sub(h) for h in cartan]
        sub_dec = weight_decomposition(g, sub_cartan)
        sub_roots = set(sub_dec.nonzero_weights())
        extra = [w for w in decomposition.nonzero_weights() if w not in sub_roots]
        for w in extra:
            failures.append(
                ("weights", f"weight {tuple(str(c) for c in w)} does not occur in the subalgebra")
            )

    opposite_brackets: list[SparseVector] = []
    for w in decomposition.nonzero_weights():
        neg = tuple(-c for c in w)
        space_w = decomposition.weights[w]
        space_neg = decomposition.weights.get(neg)
        if space_neg is None:
            continue
        for u in space_w.rows:
            for v in space_neg.rows:
                b = alg.bracket.apply(u, v)
                if b:
                    opposite_brackets.append(b)
    spanned = row_reduce(opposite_brackets, alg.dim)
    zero_space = decomposition.zero_space()
    if spanned != zero_space:
        missing = [row for row in zero_space.rows if not spanned.contains(row)]
        stray = [row for row in spanned.rows if not zero_space.contains(row)]
        detail = (
            f"opposite-pair brackets span dim {spanned.dim}, zero space has dim {zero_space.dim}"
        )
        if missing:
            detail += f"; {len(missing)} zero-space basis rows unreached"
        if stray:
            detail += f"; {len(stray)} spanned rows outside the zero space"
        failures.append(("zero_space", detail))

    return GradingCertificate(tuple(failures), root_count, zero_dim)
