"""Constructions and functors between dialgebras and Leibniz superalgebras.

Bracket functors, tensor and differential dialgebras, adjoint maps, ideal
closures and quotients, subalgebra restriction, derived subalgebras, centres.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .checks import check_leibniz, is_lie
from .core import (
    AlgebraError,
    BilinearMap,
    DifferentialNotDerivation,
    DifferentialNotSquareZero,
    InhomogeneousSubspace,
    LeibnizSuperalgebra,
    NotAnIdeal,
    NotClosedSubspace,
    OddDifferential,
    SuperDialgebra,
    SuperSpace,
)
from .linalg import LinearMap, SparseVector, Subspace, row_reduce

MINUS_ONE = Fraction(-1)
ONE = Fraction(1)


def _pair_sign(parities, i: int, j: int) -> Fraction:
    return MINUS_ONE if parities[i] and parities[j] else ONE


def to_leibniz(d: SuperDialgebra) -> LeibnizSuperalgebra:
    """Loday bracket [x, y] = x |- y - (-1)^{|x||y|} y -| x."""
    par = d.space.parities
    constants = {}
    for i in range(d.dim):
        for j in range(d.dim):
            v = d.right.on_basis(i, j).axpy(-_pair_sign(par, i, j), d.left.on_basis(j, i))
            if v:
                constants[(i, j)] = v
    return LeibnizSuperalgebra(d.space, BilinearMap.product(d.space, constants))


def to_right_leibniz(d: SuperDialgebra) -> LeibnizSuperalgebra:
    """Mirrored bracket [x, y] = x -| y - (-1)^{|x||y|} y |- x."""
    par = d.space.parities
    constants = {}
    for i in range(d.dim):
        for j in range(d.dim):
            v = d.left.on_basis(i, j).axpy(-_pair_sign(par, i, j), d.right.on_basis(j, i))
            if v:
                constants[(i, j)] = v
    return LeibnizSuperalgebra(d.space, BilinearMap.product(d.space, constants))


def _tensor_space(s1: SuperSpace, s2: SuperSpace, name: str | None = None) -> SuperSpace:
    labels = []
    parities = []
    for i, li in enumerate(s1.labels):
        for j, lj in enumerate(s2.labels):
            labels.append(f"{li}⊗{lj}")
            parities.append((s1.parities[i] + s2.parities[j]) % 2)
    return SuperSpace(name or f"{s1.name}⊗{s2.name}", tuple(labels), tuple(parities))


def _tensor_vector(u: SparseVector, v: SparseVector, dim2: int) -> SparseVector:
    ent = {}
    for a, ca in u.entries.items():
        for b, cb in v.entries.items():
            ent[a * dim2 + b] = ca * cb
    return SparseVector(u.dim * dim2, ent)


def tensor_dialgebras(d1: SuperDialgebra, d2: SuperDialgebra) -> SuperDialgebra:
    """Tensor product with the Koszul sign:

    (a ⊗ a') * (b ⊗ b') = (-1)^{|a'||b|} (a * b) ⊗ (a' * b'),  * in {-|, |-}.
    """
    space = _tensor_space(d1.space, d2.space)
    n2 = d2.dim

    def build(p1: BilinearMap, p2: BilinearMap) -> BilinearMap:
        constants = {}
        for (i, j), u in p1.constants.items():
            for (a, b), w in p2.constants.items():
                sign = _pair_sign((d2.space.parities[a], d1.space.parities[j]), 0, 1)
                vec = _tensor_vector(u, w, n2).scale(sign)
                key = (i * n2 + a, j * n2 + b)
                if key in constants:
                    vec = constants[key] + vec
                constants[key] = vec
        return BilinearMap.product(space, {k: v for k, v in constants.items() if v})

    unit = None
    if d1.bar_unit is not None and d2.bar_unit is not None:
        unit = _tensor_vector(d1.bar_unit, d2.bar_unit, n2)
    return SuperDialgebra(space, build(d1.left, d2.left), build(d1.right, d2.right), unit)


def differential_dialgebra(a: SuperDialgebra, d: LinearMap) -> SuperDialgebra:
    """Dialgebra x -| y = x (dy), x |- y = (dx) y on a differential algebra.

    The input must have coinciding products and d must be an even square-zero
    derivation; each requirement is validated, not trusted.
    """
    if not a.products_coincide():
        raise AlgebraError("differential dialgebra needs an associative input with -| = |-")
    n = a.dim
    if d.domain_dim != n or d.codomain_dim != n:
        raise AlgebraError("differential must be an endomorphism of the algebra")
    par = a.space.parities
    for j, col in enumerate(d.columns):
        if col and any(par[k] != par[j] for k in col.entries):
            raise OddDifferential(f"d is not parity-preserving on basis element {j}")
    if not d.compose(d).is_zero():
        raise DifferentialNotSquareZero("d∘d is nonzero")
    mult = a.left
    for i in range(n):
        for j in range(n):
            want = d.apply(mult.on_basis(i, j))
            got = mult.apply_basis_right(d.columns[i], j) + mult.apply_basis_left(i, d.columns[j])
            if want != got:
                raise DifferentialNotDerivation(f"derivation law fails on basis pair ({i}, {j})")
    left = {}
    right = {}
    for i in range(n):
        for j in range(n):
            lv = mult.apply_basis_left(i, d.columns[j])
            if lv:
                left[(i, j)] = lv
            rv = mult.apply_basis_right(d.columns[i], j)
            if rv:
                right[(i, j)] = rv
    space = SuperSpace(f"d({a.space.name})", a.space.labels, a.space.parities)
    return SuperDialgebra(space, BilinearMap.product(space, left), BilinearMap.product(space, right), None)


def ad(alg: LeibnizSuperalgebra, z: SparseVector) -> LinearMap:
    """Left adjoint map ad z : x -> [z, x]."""
    if z.dim != alg.dim:
        raise AlgebraError("ad argument dimension mismatch")
    cols = [alg.bracket.apply_basis_right(z, j) for j in range(alg.dim)]
    return LinearMap(alg.dim, alg.dim, cols)


def right_multiplication(alg: LeibnizSuperalgebra, z: SparseVector) -> LinearMap:
    """x -> [x, z]."""
    if z.dim != alg.dim:
        raise AlgebraError("argument dimension mismatch")
    cols = [alg.bracket.apply_basis_left(j, z) for j in range(alg.dim)]
    return LinearMap(alg.dim, alg.dim, cols)


def _require_lie(g: LeibnizSuperalgebra, who: str) -> None:
    if not (check_leibniz(g).passed and is_lie(g).passed):
        raise AlgebraError(f"{who} requires a Lie superalgebra input")


def leibniz_from_lie_square(g: LeibnizSuperalgebra) -> LeibnizSuperalgebra:
    """Leibniz structure on g ⊗ g for Lie g:

    [x⊗y, a⊗b] = [[x,y],a]⊗b + (-1)^{|a||b|} a⊗[[x,y],b].
    """
    _require_lie(g, "leibniz_from_lie_square")
    n = g.dim
    space = _tensor_space(g.space, g.space, f"{g.space.name}⊗{g.space.name}")
    par = g.space.parities
    constants = {}
    for i in range(n):
        for j in range(n):
            u = g.bracket.on_basis(i, j)
            if u.is_zero():
                continue
            for a in range(n):
                for b in range(n):
                    ent: dict[int, Fraction] = {}
                    first = g.bracket.apply_basis_right(u, a)
                    for t, c in first.entries.items():
                        ent[t * n + b] = ent.get(t * n + b, Fraction(0)) + c
                    second = g.bracket.apply_basis_right(u, b)
                    if second:
                        sgn = _pair_sign(par, a, b)
                        for t, c in second.entries.items():
                            key = a * n + t
                            s = ent.get(key, Fraction(0)) + sgn * c
                            if s:
                                ent[key] = s
                            else:
                                ent.pop(key, None)
                    vec = SparseVector(n * n, ent)
                    if vec:
                        constants[(i * n + j, a * n + b)] = vec
    return LeibnizSuperalgebra(space, BilinearMap.product(space, constants))


def lie_tensor_dialgebra(g: LeibnizSuperalgebra, d: SuperDialgebra) -> LeibnizSuperalgebra:
    """Current-algebra bracket on g ⊗ D:

    [x⊗a, y⊗b] = (-1)^{|a||y|} [x,y] ⊗ (a |- b).

    The Koszul sign is the identity whenever D is purely even, which recovers
    the plain current-algebra formula.
    """
    _require_lie(g, "lie_tensor_dialgebra")
    space = _tensor_space(g.space, d.space)
    nd = d.dim
    constants = {}
    for (i, j), u in g.bracket.constants.items():
        for (a, b), w in d.right.constants.items():
            sign = MINUS_ONE if d.space.parities[a] and g.space.parities[j] else ONE
            vec = _tensor_vector(u, w, nd).scale(sign)
            constants[(i * nd + a, j * nd + b)] = vec
    return LeibnizSuperalgebra(space, BilinearMap.product(space, constants))


def _product_list(alg) -> list[BilinearMap]:
    if isinstance(alg, SuperDialgebra):
        return [alg.left, alg.right]
    if isinstance(alg, LeibnizSuperalgebra):
        return [alg.bracket]
    raise AlgebraError(f"unsupported algebra kind {type(alg).__name__}")


def ideal_closure(alg, generators: Sequence[SparseVector]) -> Subspace:
    """Smallest subspace containing `generators` and closed under left and
    right multiplication by basis elements, for every product the structure
    carries.  Span fixpoint; terminates in at most dim rounds."""
    n = alg.dim
    products = _product_list(alg)
    span = row_reduce(list(generators), n)
    while True:
        new_vectors = list(span.rows)
        for row in span.rows:
            for p in products:
                for j in range(n):
                    v = p.apply_basis_right(row, j)
                    if v:
                        new_vectors.append(v)
                    w = p.apply_basis_left(j, row)
                    if w:
                        new_vectors.append(w)
        bigger = row_reduce(new_vectors, n)
        if bigger.dim == span.dim:
            return span
        span = bigger


def quotient_algebra(alg, ideal: Subspace):
    """Quotient by a parity-homogeneous two-sided ideal, on the complement
    basis given by the non-pivot coordinates of the ideal's RREF."""
    n = alg.dim
    space = alg.space
    if ideal.ambient_dim != n:
        raise AlgebraError("ideal lives in a different ambient space")
    for row in ideal.rows:
        if space.vector_parity(row) is None:
            raise InhomogeneousSubspace("ideal is not spanned by parity-homogeneous vectors")
    if ideal_closure(alg, ideal.rows) != ideal:
        raise NotAnIdeal("subspace is not closed under multiplication by the algebra")
    pivots = set(ideal.pivots)
    kept = [i for i in range(n) if i not in pivots]
    if not kept:
        raise AlgebraError("quotient is zero-dimensional")
    pos = {i: t for t, i in enumerate(kept)}
    qspace = SuperSpace(
        f"{space.name}/I",
        tuple(space.labels[i] for i in kept),
        tuple(space.parities[i] for i in kept),
    )

    def project(v: SparseVector) -> SparseVector:
        r = ideal.reduce(v)
        return SparseVector(len(kept), {pos[i]: c for i, c in r.entries.items()})

    def project_product(p: BilinearMap) -> BilinearMap:
        constants = {}
        for a, ia in enumerate(kept):
            for b, ib in enumerate(kept):
                v = project(p.on_basis(ia, ib))
                if v:
                    constants[(a, b)] = v
        return BilinearMap.product(qspace, constants)

    if isinstance(alg, SuperDialgebra):
        unit = project(alg.bar_unit) if alg.bar_unit is not None else None
        if unit is not None and unit.is_zero():
            unit = None
        return SuperDialgebra(qspace, project_product(alg.left), project_product(alg.right), unit)
    return LeibnizSuperalgebra(qspace, project_product(alg.bracket))


def antisymmetrizer_generators(alg: LeibnizSuperalgebra) -> list[SparseVector]:
    """[x, y] + (-1)^{|x||y|} [y, x] over homogeneous basis pairs."""
    par = alg.space.parities
    gens = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            v = alg.bracket.on_basis(i, j).axpy(_pair_sign(par, i, j), alg.bracket.on_basis(j, i))
            if v:
                gens.append(v)
    return gens


def lie_quotient(alg: LeibnizSuperalgebra) -> LeibnizSuperalgebra:
    """Maximal Lie quotient: kill the ideal generated by all symmetrized
    brackets.  The result always passes the antisymmetry check."""
    ideal = ideal_closure(alg, antisymmetrizer_generators(alg))
    return quotient_algebra(alg, ideal)


def associative_quotient(d: SuperDialgebra) -> SuperDialgebra:
    """Quotient dialgebra with -| = |-: kill the ideal generated by all
    product differences x -| y - x |- y."""
    gens = []
    for i in range(d.dim):
        for j in range(d.dim):
            v = d.left.on_basis(i, j) - d.right.on_basis(i, j)
            if v:
                gens.append(v)
    ideal = ideal_closure(d, gens)
    return quotient_algebra(d, ideal)


@dataclass(frozen=True)
class Restriction:
    """A subalgebra presented on an adapted (RREF) basis of a subspace."""

    algebra: LeibnizSuperalgebra
    subspace: Subspace

    def to_sub(self, v: SparseVector) -> SparseVector:
        return self.subspace.coords(v)

    def from_sub(self, w: SparseVector) -> SparseVector:
        return self.subspace.lift(w)


def restrict(alg: LeibnizSuperalgebra, sub: Subspace, name: str | None = None) -> Restriction:
    """Structure constants of `alg` on an adapted basis of `sub`.

    `sub` must be bracket-closed and spanned by parity-homogeneous vectors.
    """
    if sub.ambient_dim != alg.dim:
        raise AlgebraError("subspace lives in a different ambient space")
    if sub.dim == 0:
        raise AlgebraError("cannot restrict to the zero subspace")
    parities = []
    for row in sub.rows:
        p = alg.space.vector_parity(row)
        if p is None:
            raise InhomogeneousSubspace("subspace basis is not parity-homogeneous")
        parities.append(p)
    k = sub.dim
    constants = {}
    for a in range(k):
        for b in range(k):
            v = alg.bracket.apply(sub.rows[a], sub.rows[b])
            if v.is_zero():
                continue
            try:
                constants[(a, b)] = sub.coords(v)
            except Exception as exc:
                raise NotClosedSubspace(
                    f"bracket of adapted basis pair ({a}, {b}) leaves the subspace"
                ) from exc
    labels = tuple(f"s{t}" for t in range(k))
    space = SuperSpace(name or f"{alg.space.name}|sub", labels, tuple(parities))
    return Restriction(LeibnizSuperalgebra(space, BilinearMap.product(space, constants)), sub)


def derived_subalgebra(alg: LeibnizSuperalgebra) -> Subspace:
    """Span of all basis-pair brackets, with a one-round stability check."""
    span = row_reduce(list(alg.bracket.constants.values()), alg.dim)
    for row in span.rows:
        for j in range(alg.dim):
            if not span.contains(alg.bracket.apply_basis_right(row, j)):
                raise AlgebraError("derived span not stable under bracketing")
            if not span.contains(alg.bracket.apply_basis_left(j, row)):
                raise AlgebraError("derived span not stable under bracketing")
    return span


def centre(alg: LeibnizSuperalgebra) -> Subspace:
    """{z : [z, L] = 0 and [L, z] = 0}, computed as one kernel."""
    n = alg.dim
    cols = []
    for i in range(n):
        ent: dict[int, Fraction] = {}
        for j in range(n):
            left = alg.bracket.on_basis(i, j)
            for k, c in left.entries.items():
                ent[j * n + k] = c
            right = alg.bracket.on_basis(j, i)
            for k, c in right.entries.items():
                ent[n * n + j * n + k] = c
        cols.append(SparseVector(2 * n * n, ent))
    from .linalg import kernel as _kernel

    return _kernel(LinearMap(n, 2 * n * n, cols))


def proper_ideals_from_basis_seeds(alg: LeibnizSuperalgebra) -> list[tuple[int, Subspace]]:
    """Optional simplicity audit: ideals generated by single basis vectors.

    Returns every (seed index, ideal) whose closure is proper and nonzero.
    A clean result does not prove simplicity; a hit disproves it.
    """
    out = []
    for i in range(alg.dim):
        ideal = ideal_closure(alg, [SparseVector.unit(alg.dim, i)])
        if 0 < ideal.dim < alg.dim:
            out.append((i, ideal))
    return out
