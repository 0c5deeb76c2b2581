"""Concrete small algebras used across tests, fixtures and the CLI docs.

Every entry is built from first principles (explicit structure constants),
so the catalog doubles as the reference input set for the checker suite.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .constructions import differential_dialgebra, tensor_dialgebras
from .core import BilinearMap, SuperDialgebra, SuperSpace
from .linalg import LinearMap, SparseVector

ONE = Fraction(1)


def field_dialgebra() -> SuperDialgebra:
    """K itself: one even basis element, e*e = e, bar-unit e."""
    space = SuperSpace("K", ("1",), (0,))
    prod = BilinearMap.product(space, {(0, 0): SparseVector.unit(1, 0)})
    return SuperDialgebra(space, prod, prod, SparseVector.unit(1, 0))


def matrix_superalgebra(m: int, n: int) -> SuperDialgebra:
    """M(m|n)(K): matrix units E_ij, parity |i|+|j|, -| = |- = matrix product."""
    size = m + n
    if size < 1:
        raise ValueError("need at least a 1x1 matrix algebra")
    labels = []
    parities = []
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            labels.append(f"E{i}{j}")
            parities.append(((i > m) + (j > m)) % 2)
    space = SuperSpace(f"M({m}|{n})", tuple(labels), tuple(parities))

    def idx(i, j):
        return (i - 1) * size + (j - 1)

    constants = {}
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            for l in range(1, size + 1):
                constants[(idx(i, j), idx(j, l))] = SparseVector.unit(size * size, idx(i, l))
    prod = BilinearMap.product(space, constants)
    unit = SparseVector(size * size, {idx(i, i): ONE for i in range(1, size + 1)})
    return SuperDialgebra(space, prod, prod, unit)


def _monomial_label(subset: tuple[int, ...]) -> str:
    return "".join(f"th{g}" for g in subset) if subset else "1"


def grassmann(generators: int) -> SuperDialgebra:
    """Grassmann algebra on `generators` odd variables, -| = |-.

    Basis: monomials ordered by (degree, lexicographic index tuple); the
    product carries the Koszul sign of the interleaving permutation.
    """
    gens = list(range(1, generators + 1))
    basis = [()]
    for r in range(1, generators + 1):
        basis.extend(combinations(gens, r))
    index = {s: t for t, s in enumerate(sorted(basis, key=lambda s: (len(s), s)))}
    ordered = sorted(basis, key=lambda s: (len(s), s))
    labels = tuple(_monomial_label(s) for s in ordered)
    parities = tuple(len(s) % 2 for s in ordered)
    space = SuperSpace(f"Gr{generators}", labels, parities)
    dim = len(ordered)
    constants = {}
    for s in ordered:
        for t in ordered:
            if set(s) & set(t):
                continue
            inversions = sum(1 for a in s for b in t if a > b)
            merged = tuple(sorted(s + t))
            sign = -ONE if inversions % 2 else ONE
            constants[(index[s], index[t])] = SparseVector.unit(dim, index[merged], sign)
    prod = BilinearMap.product(space, constants)
    return SuperDialgebra(space, prod, prod, SparseVector.unit(dim, index[()]))


def grassmann_differential(generators: int = 2) -> LinearMap:
    """The square-zero even derivation th1 -> th2 (zero on other generators)."""
    if generators < 2:
        raise ValueError("the derivation th1 -> th2 needs at least two generators")
    a = grassmann(generators)
    index = a.space.label_index()
    dim = a.dim
    ordered = sorted(
        [()] + [s for r in range(1, generators + 1) for s in combinations(range(1, generators + 1), r)],
        key=lambda s: (len(s), s),
    )
    cols = []
    for s in ordered:
        if 1 not in s or 2 in s:
            cols.append(SparseVector.zero(dim))
            continue
        # replace th1 by th2 in place, then resort with a sign
        pos = s.index(1)
        replaced = list(s)
        replaced[pos] = 2
        inversions = 0
        out = sorted(replaced)
        # count transpositions of the bubble sort moving 2 into place
        seq = list(replaced)
        for a_ in range(len(seq)):
            for b_ in range(a_ + 1, len(seq)):
                if seq[a_] > seq[b_]:
                    inversions += 1
        sign = -ONE if inversions % 2 else ONE
        cols.append(SparseVector.unit(dim, index[_monomial_label(tuple(out))], sign))
    return LinearMap(dim, dim, cols)


def differential_grassmann(generators: int = 2) -> SuperDialgebra:
    """The differential dialgebra on the Grassmann algebra with d: th1 -> th2."""
    return differential_dialgebra(grassmann(generators), grassmann_differential(generators))


def double_dialgebra(b: SuperDialgebra) -> SuperDialgebra:
    """B ⋉ B: the algebra extended by its regular bimodule, with

    (a, m) -| (b, n) = (ab, mb)    (a, m) |- (b, n) = (ab, an).

    A unital associative dialgebra whose two products genuinely differ; its
    Loday bracket is not antisymmetric for noncommutative B.
    """
    if not b.products_coincide():
        raise ValueError("the base must be an associative algebra with -| = |-")
    if b.bar_unit is None:
        raise ValueError("the base must be unital")
    n = b.dim
    labels = tuple(b.space.labels) + tuple(f"{l}'" for l in b.space.labels)
    parities = tuple(b.space.parities) * 2
    space = SuperSpace(f"{b.name}⋉{b.name}", labels, parities)
    left = {}
    right = {}
    for (i, j), v in b.left.constants.items():
        both = SparseVector(2 * n, dict(v.entries))
        shifted = SparseVector(2 * n, {k + n: c for k, c in v.entries.items()})
        left[(i, j)] = both
        right[(i, j)] = both
        left[(i + n, j)] = shifted
        right[(i, j + n)] = shifted
    unit = SparseVector(2 * n, dict(b.bar_unit.entries))
    return SuperDialgebra(
        space, BilinearMap.product(space, left), BilinearMap.product(space, right), unit
    )


def truncated_polynomials(degree: int) -> SuperDialgebra:
    """K[t]/(t^degree), purely even, commutative, unital."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    labels = tuple("1" if k == 0 else ("t" if k == 1 else f"t{k}") for k in range(degree))
    space = SuperSpace(f"K[t]/(t^{degree})", labels, (0,) * degree)
    constants = {}
    for i in range(degree):
        for j in range(degree):
            if i + j < degree:
                constants[(i, j)] = SparseVector.unit(degree, i + j)
    prod = BilinearMap.product(space, constants)
    return SuperDialgebra(space, prod, prod, SparseVector.unit(degree, 0))


def dialgebra_catalog() -> list[tuple[str, SuperDialgebra]]:
    """The reference input set: associative fixtures, the differential
    dialgebra, and their tensor products."""
    k = field_dialgebra()
    m2 = matrix_superalgebra(2, 0)
    m3 = matrix_superalgebra(3, 0)
    gr2 = grassmann(2)
    dgr2 = differential_grassmann(2)
    return [
        ("K", k),
        ("M2", m2),
        ("M3", m3),
        ("Gr2", gr2),
        ("dGr2", dgr2),
        ("M2xdGr2", tensor_dialgebras(m2, dgr2)),
        ("M3xdGr2", tensor_dialgebras(m3, dgr2)),
        ("Gr2xdGr2", tensor_dialgebras(gr2, dgr2)),
        ("M2double", double_dialgebra(m2)),
    ]


def unital_catalog() -> list[tuple[str, SuperDialgebra]]:
    return [(name, d) for name, d in dialgebra_catalog() if d.bar_unit is not None]
