"""Matrix Leibniz superalgebras over dialgebras.

gl(m,n,D) from structure constants, the derived special linear subalgebra,
supertrace, split Cartan bases, and the generator-relation checker for
elementary matrix symbols.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .checks import run_indexed_check
from .constructions import Restriction, derived_subalgebra, restrict
from .core import (
    AlgebraError,
    BilinearMap,
    LeibnizSuperalgebra,
    SuperDialgebra,
    SuperSpace,
    UnsupportedBlockSizes,
    ViolationReport,
)
from .linalg import SparseVector, Subspace, row_reduce

ONE = Fraction(1)
MINUS_ONE = Fraction(-1)


class NonUnitalCoefficients(UserWarning):
    """The coefficient dialgebra carries no bar-unit; the matrix algebra is
    still defined but the scalar copy gl(m,n,K)⊗1 is unavailable."""


@dataclass(frozen=True)
class GlBasis:
    """Index bookkeeping for the basis E_ij(a_k) of gl(m,n,D)."""

    m: int
    n: int
    coeff_dim: int

    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def dim(self) -> int:
        return self.size * self.size * self.coeff_dim

    def row_parity(self, i: int) -> int:
        return 0 if i <= self.m else 1

    def tau(self, i: int, j: int) -> int:
        return (self.row_parity(i) + self.row_parity(j)) % 2

    def index(self, i: int, j: int, k: int = 0) -> int:
        if not (1 <= i <= self.size and 1 <= j <= self.size and 0 <= k < self.coeff_dim):
            raise AlgebraError(f"matrix index ({i}, {j}, {k}) out of range")
        return ((i - 1) * self.size + (j - 1)) * self.coeff_dim + k

    def decode(self, t: int) -> tuple[int, int, int]:
        ij, k = divmod(t, self.coeff_dim)
        i, j = divmod(ij, self.size)
        return i + 1, j + 1, k


def _gl_space(glb: GlBasis, coeff: SuperSpace | None) -> SuperSpace:
    labels = []
    parities = []
    for i in range(1, glb.size + 1):
        for j in range(1, glb.size + 1):
            for k in range(glb.coeff_dim):
                if coeff is None or glb.coeff_dim == 1:
                    labels.append(f"E{i}{j}")
                else:
                    labels.append(f"E{i}{j}({coeff.labels[k]})")
                pk = 0 if coeff is None else coeff.parities[k]
                parities.append((glb.tau(i, j) + pk) % 2)
    cname = "K" if coeff is None else coeff.name
    return SuperSpace(f"gl({glb.m}|{glb.n},{cname})", tuple(labels), tuple(parities))


def matrix_dialgebra(d: SuperDialgebra, m: int, n: int) -> SuperDialgebra:
    """Matrices over the dialgebra D with entrywise products:

    E_ij(a) * E_kl(b) = δ_jk E_il(a * b),  * in {-|, |-},

    graded by |E_ij(a)| = τ_ij + |a|.  Bar-unit I(1) when D is unital.
    """
    if m + n < 1:
        raise AlgebraError("matrix dialgebra needs m+n >= 1")
    glb = GlBasis(m, n, d.dim)
    space = _gl_space(glb, d.space)
    size = glb.size
    dim = glb.dim

    def build(p: BilinearMap) -> BilinearMap:
        constants = {}
        for (s, t), prod in p.constants.items():
            for i in range(1, size + 1):
                for j in range(1, size + 1):
                    for l in range(1, size + 1):
                        ent = {glb.index(i, l, u): c for u, c in prod.entries.items()}
                        constants[(glb.index(i, j, s), glb.index(j, l, t))] = SparseVector(dim, ent)
        return BilinearMap.product(space, constants)

    unit = None
    if d.bar_unit is not None:
        ent = {}
        for k, c in d.bar_unit.entries.items():
            for i in range(1, size + 1):
                ent[glb.index(i, i, k)] = c
        unit = SparseVector(dim, ent)
    return SuperDialgebra(space, build(d.left), build(d.right), unit)


def build_gl(m: int, n: int, d: SuperDialgebra) -> LeibnizSuperalgebra:
    """General linear Leibniz superalgebra over the dialgebra D.

    This is the Loday bracket of the matrix dialgebra over D; on basis
    elements, with the generator parity |E_ij(a)| = τ_ij + |a|:

    [E_ij(a), E_kl(b)] = δ_jk E_il(a |- b)
                       - (-1)^{|E_ij(a)||E_kl(b)|} δ_il E_kj(b -| a)

    For purely even coefficients the sign reduces to the block-parity form,
    and for m = 1, n = 1, D = K one gets [E12, E21] = E11 + E22.
    """
    if m + n < 2:
        raise AlgebraError("gl(m,n,D) needs m+n >= 2")
    if d.bar_unit is None:
        warnings.warn(
            f"coefficient dialgebra {d.name!r} has no bar-unit", NonUnitalCoefficients, stacklevel=2
        )
    glb = GlBasis(m, n, d.dim)
    space = _gl_space(glb, d.space)
    size = glb.size
    dim = glb.dim
    dpar = d.space.parities
    constants: dict[tuple[int, int], SparseVector] = {}
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            tij = glb.tau(i, j)
            for k in range(1, size + 1):
                for l in range(1, size + 1):
                    tkl = glb.tau(k, l)
                    for s in range(d.dim):
                        for t in range(d.dim):
                            ent: dict[int, Fraction] = {}
                            if j == k:
                                prod = d.right.on_basis(s, t)
                                for u, c in prod.entries.items():
                                    idx = glb.index(i, l, u)
                                    ent[idx] = ent.get(idx, Fraction(0)) + c
                            if i == l:
                                prod = d.left.on_basis(t, s)
                                if prod:
                                    exp = ((tij + dpar[s]) * (tkl + dpar[t])) % 2
                                    sign = ONE if exp else MINUS_ONE
                                    for u, c in prod.entries.items():
                                        idx = glb.index(k, j, u)
                                        val = ent.get(idx, Fraction(0)) + sign * c
                                        if val:
                                            ent[idx] = val
                                        else:
                                            ent.pop(idx, None)
                            if ent:
                                constants[(glb.index(i, j, s), glb.index(k, l, t))] = SparseVector(dim, ent)
    return LeibnizSuperalgebra(space, BilinearMap.product(space, constants))


def supertrace(v: SparseVector, m: int, n: int) -> Fraction:
    """str of an element of gl(m,n,K): even-block trace minus odd-block trace."""
    glb = GlBasis(m, n, 1)
    if v.dim != glb.dim:
        raise AlgebraError(
            f"supertrace needs scalar coefficients: expected dim {glb.dim}, got {v.dim}"
        )
    out = Fraction(0)
    for t, c in v.entries.items():
        i, j, _ = glb.decode(t)
        if i == j:
            out += c if i <= m else -c
    return out


def gl_matmul(x: SparseVector, y: SparseVector, size: int) -> SparseVector:
    """Matrix product in gl(size)-coordinates over K."""
    dim = size * size
    if x.dim != dim or y.dim != dim:
        raise AlgebraError("gl_matmul operands must be scalar matrices of the given size")
    ent: dict[int, Fraction] = {}
    for a, ca in x.entries.items():
        i, j = divmod(a, size)
        for b, cb in y.entries.items():
            k, l = divmod(b, size)
            if j == k:
                idx = i * size + l
                s = ent.get(idx, Fraction(0)) + ca * cb
                if s:
                    ent[idx] = s
                else:
                    ent.pop(idx, None)
    return SparseVector(dim, ent)


def gl_identity(size: int) -> SparseVector:
    return SparseVector(size * size, {i * size + i: ONE for i in range(size)})


def cartan_of_sl(p: int, q: int) -> list[SparseVector]:
    """Split Cartan basis of sl(p,q,K) in gl(p,q,K)-coordinates.

    h_i = E_ii - E_{i+1,i+1} except h_p = E_pp + E_{p+1,p+1}; all supertraceless.
    """
    if p == q:
        raise UnsupportedBlockSizes(
            "equal blocks p = q are out of scope (the split trace form degenerates)"
        )
    if p + q < 2 or p < 1 or q < 0:
        raise AlgebraError("need p+q >= 2 with p >= 1, q >= 0")
    size = p + q
    dim = size * size
    out = []
    for i in range(1, size):
        ent = {(i - 1) * size + (i - 1): ONE}
        ent[i * size + i] = ONE if i == p else MINUS_ONE
        out.append(SparseVector(dim, ent))
    return out


@dataclass(frozen=True)
class MatrixSl:
    """sl(p,q,K) on the explicit basis (off-diagonal units, then Cartan)."""

    algebra: LeibnizSuperalgebra
    p: int
    q: int
    vectors: tuple[SparseVector, ...]  # basis in gl(p,q,K) coordinates
    cartan_indices: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.p + self.q

    def to_gl(self, v: SparseVector) -> SparseVector:
        out = SparseVector.zero(self.size * self.size)
        for t, c in v.entries.items():
            out = out.axpy(c, self.vectors[t])
        return out

    def cartan_sub(self) -> list[SparseVector]:
        return [SparseVector.unit(self.algebra.dim, t) for t in self.cartan_indices]

    def str_form(self, a: int, b: int) -> Fraction:
        x = gl_matmul(self.vectors[a], self.vectors[b], self.size)
        return supertrace(x, self.p, self.q)


def sl_algebra(p: int, q: int) -> MatrixSl:
    """Explicit-basis sl(p,q,K): labels E_ij for i != j and h_1..h_{p+q-1}."""
    if p == q:
        raise UnsupportedBlockSizes(
            "equal blocks p = q are out of scope (the split trace form degenerates)"
        )
    size = p + q
    glb = GlBasis(p, q, 1)
    labels: list[str] = []
    parities: list[int] = []
    vectors: list[SparseVector] = []
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if i == j:
                continue
            labels.append(f"E{i}{j}")
            parities.append(glb.tau(i, j))
            vectors.append(SparseVector.unit(size * size, glb.index(i, j)))
    cartan = cartan_of_sl(p, q)
    cartan_indices = []
    for t, h in enumerate(cartan, start=1):
        labels.append(f"h{t}")
        parities.append(0)
        cartan_indices.append(len(vectors))
        vectors.append(h)
    space = SuperSpace(f"sl({p}|{q})", tuple(labels), tuple(parities))
    from .linalg import SpanSolver

    solver = SpanSolver(vectors, size * size)
    constants = {}
    for a in range(len(vectors)):
        for b in range(len(vectors)):
            sign = MINUS_ONE if parities[a] and parities[b] else ONE
            br = gl_matmul(vectors[a], vectors[b], size).axpy(
                -sign, gl_matmul(vectors[b], vectors[a], size)
            )
            if br.is_zero():
                continue
            coords = solver.solve(br)
            if coords is None:
                raise AlgebraError("bracket left the special linear span")
            constants[(a, b)] = coords
    alg = LeibnizSuperalgebra(space, BilinearMap.product(space, constants))
    return MatrixSl(alg, p, q, tuple(vectors), tuple(cartan_indices))


@dataclass(frozen=True)
class SlOverDialgebra:
    """sl(p,q,D) realized as the derived subalgebra of gl(p,q,D)."""

    gl: LeibnizSuperalgebra
    restriction: Restriction
    glb: GlBasis
    p: int
    q: int
    coefficients: SuperDialgebra

    @property
    def algebra(self) -> LeibnizSuperalgebra:
        return self.restriction.algebra

    def unit_matrix_vector(self, i: int, j: int) -> SparseVector:
        """E_ij(1) in sl coordinates (requires a unital coefficient dialgebra)."""
        unit = self.coefficients.bar_unit
        if unit is None:
            raise AlgebraError("coefficient dialgebra has no bar-unit")
        amb = SparseVector.zero(self.gl.dim)
        for k, c in unit.entries.items():
            amb = amb.axpy(c, SparseVector.unit(self.gl.dim, self.glb.index(i, j, k)))
        return self.restriction.to_sub(amb)

    def scalar_copy(self) -> Subspace:
        """The subspace sl(p,q,K) ⊗ 1 in sl coordinates."""
        size = self.p + self.q
        vecs = [
            self.unit_matrix_vector(i, j)
            for i in range(1, size + 1)
            for j in range(1, size + 1)
            if i != j
        ]
        unit = self.coefficients.bar_unit
        for h in cartan_of_sl(self.p, self.q):
            amb = SparseVector.zero(self.gl.dim)
            for t, c in h.entries.items():
                i, j, _ = GlBasis(self.p, self.q, 1).decode(t)
                for k, ck in unit.entries.items():
                    amb = amb.axpy(c * ck, SparseVector.unit(self.gl.dim, self.glb.index(i, j, k)))
            vecs.append(self.restriction.to_sub(amb))
        return row_reduce(vecs, self.algebra.dim)

    def cartan_sub(self) -> list[SparseVector]:
        unit = self.coefficients.bar_unit
        if unit is None:
            raise AlgebraError("coefficient dialgebra has no bar-unit")
        out = []
        for h in cartan_of_sl(self.p, self.q):
            amb = SparseVector.zero(self.gl.dim)
            for t, c in h.entries.items():
                i, j, _ = GlBasis(self.p, self.q, 1).decode(t)
                for k, ck in unit.entries.items():
                    amb = amb.axpy(c * ck, SparseVector.unit(self.gl.dim, self.glb.index(i, j, k)))
            out.append(self.restriction.to_sub(amb))
        return out


def build_sl(p: int, q: int, d: SuperDialgebra) -> SlOverDialgebra:
    """sl(p,q,D) = [gl(p,q,D), gl(p,q,D)] on an adapted basis."""
    gl = build_gl(p, q, d)
    der = derived_subalgebra(gl)
    r = restrict(gl, der, name=f"sl({p}|{q},{d.name})")
    return SlOverDialgebra(gl, r, GlBasis(p, q, d.dim), p, q, d)


def check_steinberg_relations(
    alg: LeibnizSuperalgebra,
    v: Mapping[tuple[int, int, int], SparseVector],
    m: int,
    n: int,
    d: SuperDialgebra,
    max_violations: int = 100,
    workers: int = 1,
) -> ViolationReport:
    """Verify the elementary-matrix generator relations inside `alg`.

    `v` maps (i, j, coeff index) with 1 <= i != j <= m+n to elements of `alg`;
    the relations checked on basis coefficient pairs (a, b), with τ the full
    generator parity τ_ij + |a|, are

      [v_ij(a), v_kl(b)] = 0                                  (i != l, j != k)
      [v_ij(a), v_kl(b)] = v_il(a |- b)                       (i != l, j == k)
      [v_ij(a), v_kl(b)] = -(-1)^{τ(ij,a) τ(kl,b)} v_kj(b -| a)   (i == l, j != k)

    Linearity in the coefficient slot holds by construction since `v` is
    given on basis coefficients and extended linearly.
    """
    size = m + n
    if size < 3:
        raise AlgebraError("the mixed relations need m+n >= 3")
    glb = GlBasis(m, n, d.dim)
    pairs = [(i, j) for i in range(1, size + 1) for j in range(1, size + 1) if i != j]
    for (i, j) in pairs:
        for k in range(d.dim):
            if (i, j, k) not in v:
                raise AlgebraError(f"generator map misses v_{i}{j} at coefficient {k}")

    def expand(i: int, j: int, coeffs: SparseVector) -> SparseVector:
        out = SparseVector.zero(alg.dim)
        for k, c in coeffs.entries.items():
            out = out.axpy(c, v[(i, j, k)])
        return out

    npairs = len(pairs)
    total = npairs * npairs * d.dim * d.dim

    def evaluate(t: int):
        ab, st = divmod(t, d.dim * d.dim)
        s, u = divmod(st, d.dim)
        x, y = divmod(ab, npairs)
        i, j = pairs[x]
        k, l = pairs[y]
        if i == l and j == k:
            return None  # opposite pair: no relation imposed
        lhs = alg.bracket.apply(v[(i, j, s)], v[(k, l, u)])
        if i != l and j != k:
            rhs = SparseVector.zero(alg.dim)
        elif j == k:
            rhs = expand(i, l, d.right.on_basis(s, u))
        else:
            dpar = d.space.parities
            exp = ((glb.tau(i, j) + dpar[s]) * (glb.tau(k, l) + dpar[u])) % 2
            sign = MINUS_ONE if exp else ONE
            rhs = expand(k, j, d.left.on_basis(u, s)).scale(-sign)
        if lhs == rhs:
            return None
        return ((i, j, s, k, l, u), dict(lhs.entries), dict(rhs.entries))

    return run_indexed_check(
        f"steinberg[{alg.name}]", total, evaluate, alg.dim, max_violations, workers
    )
