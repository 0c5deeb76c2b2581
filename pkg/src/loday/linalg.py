"""Exact sparse linear algebra over the rationals.

Sparse vectors, subspaces in reduced row-echelon form, linear maps,
characteristic polynomials and rational root extraction.  Coefficients are
`fractions.Fraction` throughout; no tolerance enters any comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class LinalgError(ValueError):
    """Base error for exact linear algebra operations."""


class DimensionMismatch(LinalgError):
    pass


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class SparseVector:
    """Immutable sparse vector: map from index to nonzero Fraction."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Mapping[int, Fraction] | None = None):
        if dim < 0:
            raise LinalgError("vector dimension must be nonnegative")
        clean: dict[int, Fraction] = {}
        if entries:
            for i, c in entries.items():
                c = frac(c)
                if c:
                    if not 0 <= i < dim:
                        raise LinalgError(f"index {i} out of range for dim {dim}")
                    clean[i] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SparseVector is immutable")

    @staticmethod
    def zero(dim: int) -> "SparseVector":
        return SparseVector(dim, None)

    @staticmethod
    def unit(dim: int, i: int, coeff: Fraction = ONE) -> "SparseVector":
        return SparseVector(dim, {i: coeff})

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries.get(i, ZERO)

    def items(self):
        return sorted(self.entries.items())

    def support(self):
        return sorted(self.entries)

    def leading_index(self) -> int:
        if not self.entries:
            raise LinalgError("zero vector has no leading index")
        return min(self.entries)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if self.dim != other.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")
        out = dict(self.entries)
        for i, c in other.entries.items():
            s = out.get(i, ZERO) + c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        v = SparseVector.__new__(SparseVector)
        object.__setattr__(v, "dim", self.dim)
        object.__setattr__(v, "entries", out)
        return v

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + other.scale(-ONE)

    def __neg__(self) -> "SparseVector":
        return self.scale(-ONE)

    def scale(self, c) -> "SparseVector":
        c = frac(c)
        v = SparseVector.__new__(SparseVector)
        object.__setattr__(v, "dim", self.dim)
        if not c:
            object.__setattr__(v, "entries", {})
        else:
            object.__setattr__(v, "entries", {i: a * c for i, a in self.entries.items()})
        return v

    def axpy(self, c: Fraction, other: "SparseVector") -> "SparseVector":
        """self + c * other."""
        if self.dim != other.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")
        if not c:
            return self
        out = dict(self.entries)
        for i, a in other.entries.items():
            s = out.get(i, ZERO) + c * a
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        v = SparseVector.__new__(SparseVector)
        object.__setattr__(v, "dim", self.dim)
        object.__setattr__(v, "entries", out)
        return v

    def restricted(self, indices: Iterable[int]) -> "SparseVector":
        keep = set(indices)
        return SparseVector(self.dim, {i: c for i, c in self.entries.items() if i in keep})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseVector)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self.entries.items())))

    def __repr__(self):
        body = ", ".join(f"{i}: {c}" for i, c in self.items())
        return f"SparseVector({self.dim}, {{{body}}})"


def _reduce_against(v: SparseVector, rows: dict[int, SparseVector]) -> SparseVector:
    """Eliminate all pivot coordinates of `rows` from v."""
    while v.entries:
        hit = [p for p in v.entries if p in rows]
        if not hit:
            break
        for p in hit:
            v = v.axpy(-v.entries[p], rows[p])
    return v


class Subspace:
    """Subspace of K^n held as a reduced row-echelon basis.

    Rows have leading coefficient 1, strictly increasing pivot columns, and
    pivot columns are zero in every other row.  Equality of subspaces is
    equality of these canonical bases.
    """

    __slots__ = ("ambient_dim", "rows", "pivots")

    def __init__(self, ambient_dim: int, rows: Sequence[SparseVector], pivots: Sequence[int]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: SparseVector) -> bool:
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(f"dim {v.dim} vs ambient {self.ambient_dim}")
        return self.reduce(v).is_zero()

    def reduce(self, v: SparseVector) -> SparseVector:
        """Remainder of v after eliminating all pivot coordinates."""
        row_of = {p: r for p, r in zip(self.pivots, self.rows)}
        return _reduce_against(v, row_of)

    def coords(self, v: SparseVector) -> SparseVector:
        """Coordinates of v over the RREF basis; error if v is outside."""
        cs = {t: v[p] for t, p in enumerate(self.pivots) if v[p]}
        rem = v
        for t, c in cs.items():
            rem = rem.axpy(-c, self.rows[t])
        if not rem.is_zero():
            raise LinalgError("vector is not in the subspace")
        return SparseVector(self.dim, cs)

    def lift(self, coords: SparseVector) -> SparseVector:
        if coords.dim != self.dim:
            raise DimensionMismatch(f"coords dim {coords.dim} vs basis size {self.dim}")
        v = SparseVector.zero(self.ambient_dim)
        for t, c in coords.entries.items():
            v = v.axpy(c, self.rows[t])
        return v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def row_reduce(vectors: Iterable[SparseVector], ambient_dim: int | None = None) -> Subspace:
    """RREF basis of the span of `vectors`.

    All vectors must share one ambient dimension; pass `ambient_dim` to allow
    an empty collection.
    """
    vectors = list(vectors)
    if ambient_dim is None:
        if not vectors:
            raise LinalgError("ambient_dim required for an empty vector collection")
        ambient_dim = vectors[0].dim
    rows: dict[int, SparseVector] = {}
    for v in vectors:
        if v.dim != ambient_dim:
            raise DimensionMismatch(f"dim {v.dim} vs {ambient_dim}")
        v = _reduce_against(v, rows)
        if v.is_zero():
            continue
        p = v.leading_index()
        v = v.scale(ONE / v.entries[p])
        for q, r in list(rows.items()):
            if p in r.entries:
                rows[q] = r.axpy(-r.entries[p], v)
        rows[p] = v
    pivots = sorted(rows)
    return Subspace(ambient_dim, [rows[p] for p in pivots], pivots)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient {a.ambient_dim} vs {b.ambient_dim}")
    return row_reduce(list(a.rows) + list(b.rows), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the Zassenhaus double-block elimination."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient {a.ambient_dim} vs {b.ambient_dim}")
    n = a.ambient_dim
    doubled = []
    for u in a.rows:
        ent = dict(u.entries)
        ent.update({i + n: c for i, c in u.entries.items()})
        doubled.append(SparseVector(2 * n, ent))
    for w in b.rows:
        doubled.append(SparseVector(2 * n, dict(w.entries)))
    big = row_reduce(doubled, 2 * n)
    inter = []
    for r in big.rows:
        if all(i >= n for i in r.entries):
            inter.append(SparseVector(n, {i - n: c for i, c in r.entries.items()}))
    return row_reduce(inter, n)


class LinearMap:
    """Linear map stored by columns (images of the domain basis)."""

    __slots__ = ("domain_dim", "codomain_dim", "columns")

    def __init__(self, domain_dim: int, codomain_dim: int, columns: Sequence[SparseVector]):
        if len(columns) != domain_dim:
            raise DimensionMismatch("one column per domain basis vector required")
        for col in columns:
            if col.dim != codomain_dim:
                raise DimensionMismatch("column dimension must equal codomain_dim")
        object.__setattr__(self, "domain_dim", domain_dim)
        object.__setattr__(self, "codomain_dim", codomain_dim)
        object.__setattr__(self, "columns", tuple(columns))

    def __setattr__(self, name, value):
        raise AttributeError("LinearMap is immutable")

    @staticmethod
    def zero(domain_dim: int, codomain_dim: int) -> "LinearMap":
        return LinearMap(domain_dim, codomain_dim, [SparseVector.zero(codomain_dim)] * domain_dim)

    @staticmethod
    def identity(dim: int) -> "LinearMap":
        return LinearMap(dim, dim, [SparseVector.unit(dim, i) for i in range(dim)])

    @staticmethod
    def from_function(domain_dim: int, codomain_dim: int, f: Callable[[int], SparseVector]) -> "LinearMap":
        return LinearMap(domain_dim, codomain_dim, [f(j) for j in range(domain_dim)])

    def apply(self, v: SparseVector) -> SparseVector:
        if v.dim != self.domain_dim:
            raise DimensionMismatch(f"dim {v.dim} vs domain {self.domain_dim}")
        out = SparseVector.zero(self.codomain_dim)
        for j, c in v.entries.items():
            out = out.axpy(c, self.columns[j])
        return out

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.codomain_dim != self.domain_dim:
            raise DimensionMismatch("composition dimension mismatch")
        return LinearMap(other.domain_dim, self.codomain_dim, [self.apply(c) for c in other.columns])

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if (self.domain_dim, self.codomain_dim) != (other.domain_dim, other.codomain_dim):
            raise DimensionMismatch("map shapes differ")
        return LinearMap(
            self.domain_dim, self.codomain_dim,
            [a + b for a, b in zip(self.columns, other.columns)],
        )

    def scale(self, c) -> "LinearMap":
        return LinearMap(self.domain_dim, self.codomain_dim, [col.scale(c) for col in self.columns])

    def minus_scalar(self, lam) -> "LinearMap":
        """self - lam * identity (square maps only)."""
        if self.domain_dim != self.codomain_dim:
            raise DimensionMismatch("square map required")
        lam = frac(lam)
        cols = [col.axpy(-lam, SparseVector.unit(self.codomain_dim, j)) for j, col in enumerate(self.columns)]
        return LinearMap(self.domain_dim, self.codomain_dim, cols)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.columns)

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and self.domain_dim == other.domain_dim
            and self.codomain_dim == other.codomain_dim
            and self.columns == other.columns
        )

    def __hash__(self):
        return hash((self.domain_dim, self.codomain_dim, self.columns))

    def __repr__(self):
        return f"LinearMap({self.domain_dim} -> {self.codomain_dim})"


def transpose_rows(m: LinearMap) -> list[SparseVector]:
    """Rows of the matrix of m, each a functional on the domain."""
    rows: dict[int, dict[int, Fraction]] = {}
    for j, col in enumerate(m.columns):
        for i, c in col.entries.items():
            rows.setdefault(i, {})[j] = c
    return [SparseVector(m.domain_dim, rows.get(i)) for i in range(m.codomain_dim)]


def kernel(m: LinearMap) -> Subspace:
    """Null space {v : m(v) = 0}, exact."""
    reduced = row_reduce(transpose_rows(m), m.domain_dim)
    pivot_set = set(reduced.pivots)
    basis = []
    for f in range(m.domain_dim):
        if f in pivot_set:
            continue
        ent = {f: ONE}
        for p, r in zip(reduced.pivots, reduced.rows):
            if f in r.entries:
                ent[p] = -r.entries[f]
        basis.append(SparseVector(m.domain_dim, ent))
    return row_reduce(basis, m.domain_dim)


def rank(m: LinearMap) -> int:
    return row_reduce(list(m.columns), m.codomain_dim).dim


# ---------------------------------------------------------------------------
# Characteristic polynomial and rational roots.
#
# Polynomials are lists of Fractions, index = degree.


def poly_normalize(p: Sequence[Fraction]) -> list[Fraction]:
    out = [frac(c) for c in p]
    while out and not out[-1]:
        out.pop()
    return out


def poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def char_poly(m: LinearMap) -> list[Fraction]:
    """Monic characteristic polynomial det(x*I - M), exact.

    The matrix is brought to upper Hessenberg form by similarity row/column
    operations, then the leading-minor recurrence assembles the polynomial.
    Near-diagonal inputs (the common case for commuting diagonalizable maps)
    cost O(n^2) coefficient operations.
    """
    if m.domain_dim != m.codomain_dim:
        raise DimensionMismatch("characteristic polynomial requires a square map")
    n = m.domain_dim
    if n == 0:
        return [ONE]
    h = [[m.columns[j][i] for j in range(n)] for i in range(n)]

    for j in range(n - 2):
        piv = None
        for r in range(j + 1, n):
            if h[r][j]:
                piv = r
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        for i in range(j + 2, n):
            if h[i][j]:
                t = h[i][j] / h[j + 1][j]
                hi, hj1 = h[i], h[j + 1]
                for c in range(j, n):
                    if hj1[c]:
                        hi[c] -= t * hj1[c]
                for row in h:
                    if row[i]:
                        row[j + 1] += t * row[i]

    # p[k] = char poly of the leading k x k block, by last-column expansion.
    polys: list[list[Fraction]] = [[ONE]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [ZERO] + prev
        hk = h[k - 1][k - 1]
        if hk:
            cur = [a - hk * b for a, b in zip(cur, prev + [ZERO])]
        prod = ONE
        for i in range(k - 1, 0, -1):
            prod *= h[i][i - 1]
            if not prod:
                break
            hik = h[i - 1][k - 1]
            if hik:
                coef = hik * prod
                pi = polys[i - 1]
                for d, c in enumerate(pi):
                    cur[d] -= coef * c
        polys.append(cur)
    return poly_normalize(polys[n])


def _divisors(n: int) -> list[int]:
    n = abs(n)
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for p, e in factors.items():
        divs = [v * p**i for v in divs for i in range(e + 1)]
    return sorted(divs)


def _synthetic_quotient(p: list[Fraction], r: Fraction) -> list[Fraction] | None:
    """Divide p by (x - r); None if the remainder is nonzero."""
    acc = ZERO
    out = [ZERO] * (len(p) - 1)
    for d in range(len(p) - 1, 0, -1):
        acc = acc * r + p[d]
        out[d - 1] = acc
    if acc * r + p[0]:
        return None
    return out


def rational_roots(p: Sequence[Fraction]) -> list[tuple[Fraction, int]]:
    """All rational roots of p with multiplicities, sorted by value.

    Uses the rational-root theorem on the integer-cleared polynomial; the sum
    of returned multiplicities is at most deg p.
    """
    p = poly_normalize(p)
    if not p:
        raise LinalgError("zero polynomial has no well-defined root set")
    val = 0
    while val < len(p) and not p[val]:
        val += 1
    roots: list[tuple[Fraction, int]] = []
    if val:
        roots.append((ZERO, val))
    q = p[val:]
    if len(q) <= 1:
        return sorted(roots)
    denlcm = 1
    for c in q:
        denlcm = denlcm * c.denominator // _gcd(denlcm, c.denominator)
    ints = [int(c * denlcm) for c in q]
    a0, ad = ints[0], ints[-1]
    cand: set[Fraction] = set()
    for r in _divisors(a0):
        for s in _divisors(ad):
            f = Fraction(r, s)
            cand.add(f)
            cand.add(-f)
    work = [frac(c) for c in q]
    for c in sorted(cand):
        if not poly_eval(work, c):
            mult = 0
            quo = _synthetic_quotient(work, c)
            while quo is not None:
                mult += 1
                work = quo
                if len(work) <= 1:
                    quo = None
                else:
                    quo = _synthetic_quotient(work, c)
            roots.append((c, mult))
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class SpanSolver:
    """Coordinate solver over a fixed (independent) generating list.

    Stores an RREF of the generators together with the change of basis, so
    membership tests and coordinates over the original generators are a
    single reduction.
    """

    def __init__(self, generators: Sequence[SparseVector], ambient_dim: int | None = None):
        generators = list(generators)
        if ambient_dim is None:
            if not generators:
                raise LinalgError("ambient_dim required for an empty generator list")
            ambient_dim = generators[0].dim
        self.ambient_dim = ambient_dim
        self.size = len(generators)
        n, m = ambient_dim, len(generators)
        augmented = []
        for t, g in enumerate(generators):
            if g.dim != n:
                raise DimensionMismatch(f"dim {g.dim} vs {n}")
            ent = dict(g.entries)
            ent[n + t] = ONE
            augmented.append(SparseVector(n + m, ent))
        rows: dict[int, SparseVector] = {}
        for v in augmented:
            while True:
                lead = min((i for i in v.entries if i < n), default=None)
                if lead is None or lead not in rows:
                    break
                v = v.axpy(-v.entries[lead], rows[lead])
            lead = min((i for i in v.entries if i < n), default=None)
            if lead is None:
                raise LinalgError("generators are linearly dependent")
            v = v.scale(ONE / v.entries[lead])
            for q, r in list(rows.items()):
                if lead in r.entries:
                    rows[q] = r.axpy(-r.entries[lead], v)
            rows[lead] = v
        self._rows = rows

    def solve(self, v: SparseVector) -> SparseVector | None:
        """Coefficients over the generators, or None if v is outside the span."""
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(f"dim {v.dim} vs {self.ambient_dim}")
        n = self.ambient_dim
        work = SparseVector(n + self.size, dict(v.entries))
        while True:
            lead = min((i for i in work.entries if i < n), default=None)
            if lead is None:
                break
            row = self._rows.get(lead)
            if row is None:
                return None
            work = work.axpy(-work.entries[lead], row)
        return SparseVector(self.size, {i - n: -c for i, c in work.entries.items()})

    def contains(self, v: SparseVector) -> bool:
        return self.solve(v) is not None
