"""Centre computations, central isogeny at desk scale, simplicity audit."""

from loday.catalog import grassmann, matrix_superalgebra
from loday.checks import check_leibniz
from loday.constructions import centre, proper_ideals_from_basis_seeds, to_leibniz
from loday.matrix import build_sl, sl_algebra
from loday.models import build_canonical_model
from loday.weights import weight_decomposition


class TestCentralIsogeny:
    def test_matrix_realization_matches_canonical_model(self):
        # the matrix realization over unital associative coordinates has
        # trivial centre and exactly the canonical model's dimensions and
        # root-space layout: the two are centrally isogenous in the most
        # direct way available at this scale.
        for a, model_dim, zero_dim in (
            (grassmann(2), 32, 8),
            (matrix_superalgebra(2, 0), 35, 11),
        ):
            sl = build_sl(2, 1, a)
            assert centre(sl.algebra).dim == 0
            model, data = build_canonical_model(a, 2, 1)
            assert model.dim == model_dim == sl.algebra.dim
            dec = weight_decomposition(sl.algebra, sl.cartan_sub())
            assert dec.zero_space().dim == zero_dim
            assert sorted(dec.weights[w].dim for w in dec.nonzero_weights()) == [a.dim] * 6
            assert check_leibniz(model).passed


class TestSimplicityAudit:
    def test_scalar_special_linear_audit_is_clean(self):
        alg = sl_algebra(2, 1).algebra
        assert proper_ideals_from_basis_seeds(alg) == []

    def test_general_linear_has_proper_ideals(self):
        alg = to_leibniz(matrix_superalgebra(2, 0))
        hits = proper_ideals_from_basis_seeds(alg)
        assert hits
        assert any(ideal.dim == 3 for _, ideal in hits)  # the traceless part

    def test_nonsimple_coefficients_break_simplicity(self):
        # over the Grassmann coefficients the span of E12(th1)'s closure is
        # a proper ideal (the coefficient algebra's maximal ideal tensors
        # in), so simplicity genuinely requires simple coefficients; this is
        # why the audit is informational rather than an invariant.
        alg = build_sl(2, 1, grassmann(2)).algebra
        hits = proper_ideals_from_basis_seeds(alg)
        assert hits
        assert {ideal.dim for _, ideal in hits} == {8, 16}
