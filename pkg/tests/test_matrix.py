"""gl/sl over dialgebras, supertrace, Cartan bases, generator relations."""

import random
import warnings
from fractions import Fraction

import pytest

from loday.catalog import differential_grassmann, field_dialgebra, grassmann
from loday.checks import check_graded, check_leibniz, is_lie
from loday.constructions import derived_subalgebra, restrict, to_leibniz
from loday.core import AlgebraError, UnsupportedBlockSizes
from loday.linalg import SparseVector
from loday.matrix import (
    GlBasis,
    NonUnitalCoefficients,
    build_gl,
    build_sl,
    cartan_of_sl,
    check_steinberg_relations,
    gl_identity,
    gl_matmul,
    matrix_dialgebra,
    sl_algebra,
    supertrace,
)

F = Fraction


def unit(dim, i, c=1):
    return SparseVector.unit(dim, i, F(c))


class TestBuildGl:
    def test_gl2_is_commutator_algebra(self):
        gl = build_gl(2, 0, field_dialgebra())
        idx = gl.space.label_index()
        v = gl.bracket.on_basis(idx["E12"], idx["E21"])
        assert v == unit(4, idx["E11"]) + unit(4, idx["E22"], -1)
        assert is_lie(gl).passed and check_leibniz(gl).passed

    def test_gl11_super_sign(self):
        gl = build_gl(1, 1, field_dialgebra())
        idx = gl.space.label_index()
        # tau(1,2) = tau(2,1) = 1 turns the minus into a plus
        v = gl.bracket.on_basis(idx["E12"], idx["E21"])
        assert v == unit(4, idx["E11"]) + unit(4, idx["E22"])
        assert is_lie(gl).passed

    def test_matches_matrix_dialgebra_functor(self):
        # dual route: the direct structure constants against the Loday
        # bracket of the entrywise matrix dialgebra.
        for d in (field_dialgebra(), grassmann(2), differential_grassmann(2)):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                gl = build_gl(2, 1, d)
                md = matrix_dialgebra(d, 2, 1)
            assert gl.bracket.constants == to_leibniz(md).bracket.constants

    def test_differential_coefficients(self):
        with pytest.warns(NonUnitalCoefficients):
            gl = build_gl(1, 1, differential_grassmann(2))
        assert gl.dim == 16
        assert check_leibniz(gl).passed
        assert check_graded(gl.bracket).passed

    def test_too_small(self):
        with pytest.raises(AlgebraError):
            build_gl(1, 0, field_dialgebra())


class TestSupertrace:
    def test_identity(self):
        assert supertrace(gl_identity(3), 2, 1) == 1
        assert supertrace(gl_identity(3), 3, 0) == 3

    def test_product_of_units(self):
        glb = GlBasis(2, 1, 1)
        e12 = unit(9, glb.index(1, 2))
        e21 = unit(9, glb.index(2, 1))
        assert supertrace(gl_matmul(e12, e21, 3), 2, 1) == 1

    def test_supersymmetry_random_pairs(self):
        # str(xy) = (-1)^{|x||y|} str(yx) for homogeneous x, y in gl(2,1)
        glb = GlBasis(2, 1, 1)
        rng = random.Random(7)
        units = [(i, j) for i in range(1, 4) for j in range(1, 4)]
        for _ in range(40):
            (i, j), (k, l) = rng.choice(units), rng.choice(units)
            x = unit(9, glb.index(i, j), rng.randint(1, 5))
            y = unit(9, glb.index(k, l), rng.randint(1, 5))
            sign = -1 if glb.tau(i, j) and glb.tau(k, l) else 1
            lhs = supertrace(gl_matmul(x, y, 3), 2, 1)
            rhs = sign * supertrace(gl_matmul(y, x, 3), 2, 1)
            assert lhs == rhs

    def test_rejects_nonscalar(self):
        with pytest.raises(AlgebraError):
            supertrace(SparseVector.zero(18), 2, 1)


class TestDerivedAndSl:
    def test_gl21_derived_dimension(self):
        gl = build_gl(2, 1, field_dialgebra())
        der = derived_subalgebra(gl)
        assert der.dim == 8
        for row in der.rows:
            assert supertrace(row, 2, 1) == 0

    def test_sl_of_gl2(self):
        gl = build_gl(2, 0, field_dialgebra())
        der = derived_subalgebra(gl)
        assert der.dim == 3
        r = restrict(gl, der)
        assert is_lie(r.algebra).passed

    def test_build_sl_with_differential_coefficients(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonUnitalCoefficients)
            sl = build_sl(2, 1, differential_grassmann(2))
        assert check_leibniz(sl.algebra).passed
        # the products of the differential dialgebra land in a 2-dimensional
        # subspace, so each off-diagonal block contributes 2, not dim D = 4
        glb = sl.glb
        for (i, j) in ((1, 2), (1, 3), (2, 3)):
            block = [t for t in range(sl.gl.dim) if glb.decode(t)[:2] == (i, j)]
            rows = [row.restricted(block) for row in sl.restriction.subspace.rows]
            from loday.linalg import row_reduce

            assert row_reduce([r for r in rows if r], sl.gl.dim).dim == 2


class TestCartan:
    def test_sl21_cartan_frozen(self):
        h = cartan_of_sl(2, 1)
        glb = GlBasis(2, 1, 1)
        assert h[0] == unit(9, glb.index(1, 1)) + unit(9, glb.index(2, 2), -1)
        assert h[1] == unit(9, glb.index(2, 2)) + unit(9, glb.index(3, 3))
        for v in h:
            assert supertrace(v, 2, 1) == 0

    def test_count_and_commutation(self):
        for (p, q) in ((2, 1), (3, 1), (3, 2), (2, 0)):
            h = cartan_of_sl(p, q)
            assert len(h) == p + q - 1
            for a in h:
                for b in h:
                    x = gl_matmul(a, b, p + q)
                    y = gl_matmul(b, a, p + q)
                    assert x == y

    def test_equal_blocks_rejected(self):
        with pytest.raises(UnsupportedBlockSizes):
            cartan_of_sl(2, 2)
        with pytest.raises(UnsupportedBlockSizes):
            sl_algebra(2, 2)


class TestSlAlgebra:
    def test_sl21_structure(self):
        sl = sl_algebra(2, 1)
        assert sl.algebra.dim == 8
        assert is_lie(sl.algebra).passed
        assert check_leibniz(sl.algebra).passed
        assert check_graded(sl.algebra.bracket).passed

    def test_sl2_matches_textbook(self):
        sl = sl_algebra(2, 0)
        idx = sl.algebra.space.label_index()
        h = sl.algebra.bracket.on_basis(idx["E12"], idx["E21"])
        # [e, f] = h1 = E11 - E22 in the chosen Cartan coordinates
        assert h == unit(3, idx["h1"])


class TestSteinberg:
    def _generator_map(self, sl):
        size = sl.p + sl.q
        v = {}
        for i in range(1, size + 1):
            for j in range(1, size + 1):
                if i == j:
                    continue
                for k in range(sl.coefficients.dim):
                    amb = SparseVector.unit(sl.gl.dim, sl.glb.index(i, j, k))
                    v[(i, j, k)] = sl.restriction.to_sub(amb)
        return v

    def test_elementary_matrices_satisfy_relations(self):
        for d in (field_dialgebra(), grassmann(2)):
            sl = build_sl(2, 1, d)
            v = self._generator_map(sl)
            rep = check_steinberg_relations(sl.algebra, v, 2, 1, d)
            assert rep.passed

    def test_zero_map_degenerate_pass(self):
        d = field_dialgebra()
        sl = build_sl(2, 1, d)
        v = {k: SparseVector.zero(sl.algebra.dim) for k in self._generator_map(sl)}
        assert check_steinberg_relations(sl.algebra, v, 2, 1, d).passed

    def test_negated_image_flagged(self):
        d = field_dialgebra()
        sl = build_sl(2, 1, d)
        v = self._generator_map(sl)
        v[(1, 2, 0)] = -v[(1, 2, 0)]
        rep = check_steinberg_relations(sl.algebra, v, 2, 1, d)
        assert not rep.passed
        assert rep.total_violations >= 1

    def test_small_size_rejected(self):
        d = field_dialgebra()
        gl = build_gl(1, 1, d)
        with pytest.raises(AlgebraError):
            check_steinberg_relations(gl, {}, 1, 1, d)
