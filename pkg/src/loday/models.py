"""Coordinatized models (g ⊗ A) ⊕ D and their condition checkers.

Two families are built and certified here: matrix-coordinate models over a
special linear grading algebra, with the supertrace and the symmetrized
traceless product splitting the coefficient multiplication, and
form-coordinate (current-algebra) models over an arbitrary Lie carrier with
an invariant form.  `extract_coordinates` inverts the matrix-coordinate
builder on root-graded inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .checks import check_ass, check_bar_unit, check_leibniz, is_lie, run_indexed_check
from .constructions import restrict
from .core import (
    AlgebraError,
    BilinearMap,
    LeibnizSuperalgebra,
    SuperDialgebra,
    SuperSpace,
    UnsupportedBlockSizes,
    ViolationReport,
    merge_reports,
)
from .linalg import LinearMap, SparseVector, SpanSolver, Subspace, kernel, row_reduce
from .matrix import GlBasis, MatrixSl, gl_identity, gl_matmul, sl_algebra, supertrace
from .weights import check_delta_graded, weight_decomposition

ONE = Fraction(1)
MINUS_ONE = Fraction(-1)
HALF = Fraction(1, 2)


def circ_and_bracket(d: SuperDialgebra) -> tuple[BilinearMap, BilinearMap]:
    """The symmetrized and antisymmetrized coefficient products:

    a ∘ b = a |- b + (-1)^{|a||b|} b -| a
    [a, b] = a |- b - (-1)^{|a||b|} b -| a

    so that a |- b = (a∘b + [a,b]) / 2 reconstructs the right product.
    """
    par = d.space.parities
    circ = {}
    br = {}
    for i in range(d.dim):
        for j in range(d.dim):
            sign = MINUS_ONE if par[i] and par[j] else ONE
            r = d.right.on_basis(i, j)
            l = d.left.on_basis(j, i)
            c = r.axpy(sign, l)
            b = r.axpy(-sign, l)
            if c:
                circ[(i, j)] = c
            if b:
                br[(i, j)] = b
    return (
        BilinearMap.product(d.space, circ),
        BilinearMap.product(d.space, br),
    )


def star_product(x: SparseVector, y: SparseVector, p: int, q: int) -> SparseVector:
    """x*y = xy + (-1)^{|x||y|} yx - (2/(p-q)) str(xy) I on gl(p,q,K).

    Operands must be block-homogeneous; the result is supertraceless and
    supersymmetric in its arguments.
    """
    if p == q:
        raise UnsupportedBlockSizes("the traceless projection divides by p - q")
    size = p + q
    glb = GlBasis(p, q, 1)

    def block_parity(v: SparseVector) -> int:
        seen = set()
        for t in v.entries:
            i, j, _ = glb.decode(t)
            seen.add(glb.tau(i, j))
        if len(seen) > 1:
            raise AlgebraError("star product needs block-homogeneous operands")
        return seen.pop() if seen else 0

    sign = MINUS_ONE if block_parity(x) and block_parity(y) else ONE
    xy = gl_matmul(x, y, size)
    out = xy.axpy(sign, gl_matmul(y, x, size))
    tr = supertrace(xy, p, q)
    if tr:
        out = out.axpy(-Fraction(2, p - q) * tr, gl_identity(size))
    return out


def _check_even_map(m: BilinearMap, what: str) -> None:
    bad = m.parity_defect()
    if bad:
        raise AlgebraError(f"{what} is not parity-even on pairs {bad[:4]}")


@dataclass(frozen=True)
class SlModelData:
    """Input data for the matrix-coordinate model (sl(p,q,K) ⊗ A) ⊕ D.

    `phi` is the left action D x A -> A, `form` the pairing A x A -> D, and
    `rho` the right action A x D -> A.  All three must be None exactly when
    the trivial summand D is absent.
    """

    p: int
    q: int
    coordinates: SuperDialgebra
    trivial_part: LeibnizSuperalgebra | None = None
    phi: BilinearMap | None = None
    form: BilinearMap | None = None
    rho: BilinearMap | None = None

    def __post_init__(self):
        if not (self.p > self.q >= 1):
            raise AlgebraError("matrix-coordinate models need p > q >= 1")
        a = self.coordinates
        if a.bar_unit is None:
            raise AlgebraError("the coordinate dialgebra must carry a bar-unit")
        d = self.trivial_part
        if d is None:
            if any(m is not None and not m.is_zero() for m in (self.phi, self.form, self.rho)):
                raise AlgebraError("phi/form/rho need a nonzero trivial summand")
            return
        phi, form, rho = self.phi, self.form, self.rho
        if phi is None or form is None or rho is None:
            raise AlgebraError("phi, form and rho are required when D is present")
        if (phi.left, phi.right, phi.out) != (d.space, a.space, a.space):
            raise AlgebraError("phi must map D x A -> A")
        if (form.left, form.right, form.out) != (a.space, a.space, d.space):
            raise AlgebraError("form must map A x A -> D")
        if (rho.left, rho.right, rho.out) != (a.space, d.space, a.space):
            raise AlgebraError("rho must map A x D -> A")
        _check_even_map(phi, "phi")
        _check_even_map(form, "form")
        _check_even_map(rho, "rho")
        for r in range(d.dim):
            if phi.apply_basis_left(r, a.bar_unit):
                raise AlgebraError("phi must annihilate the bar-unit")

    @property
    def trivial_dim(self) -> int:
        return self.trivial_part.dim if self.trivial_part is not None else 0


@dataclass(frozen=True)
class ConditionReport:
    """Named verdicts, one ViolationReport per condition."""

    verdicts: dict[str, ViolationReport]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def failing(self) -> list[str]:
        return sorted(name for name, v in self.verdicts.items() if not v.passed)

    def summary(self) -> str:
        flags = ", ".join(f"{k}={'ok' if v.passed else 'FAIL'}" for k, v in sorted(self.verdicts.items()))
        return f"{'pass' if self.passed else 'FAIL'} ({flags})"


def _model_space(g: MatrixSl, a: SuperSpace, d: SuperSpace | None, name: str) -> SuperSpace:
    labels = []
    parities = []
    gs = g.algebra.space
    for i, gl in enumerate(gs.labels):
        for k, al in enumerate(a.labels):
            labels.append(f"{gl}⊗{al}")
            parities.append((gs.parities[i] + a.parities[k]) % 2)
    if d is not None:
        for r, dl in enumerate(d.labels):
            labels.append(f"D:{dl}")
            parities.append(d.parities[r])
    return SuperSpace(name, tuple(labels), tuple(parities))


def build_sl_model(data: SlModelData) -> LeibnizSuperalgebra:
    """The model bracket, for f, g in sl(p,q,K), a, b in A, d, d' in D:

    [f⊗a, g⊗b] = (-1)^{|a||g|} ([f,g] ⊗ (a∘b)/2 + f*g ⊗ [a,b]/2
                                + str(fg) <a,b>)
    [d, f⊗a]   = (-1)^{|d||f|} f ⊗ phi(d)(a)
    [f⊗a, d]   = f ⊗ rho(a, d)
    [d, d']    = bracket of D
    """
    g = sl_algebra(data.p, data.q)
    a = data.coordinates
    d = data.trivial_part
    size = data.p + data.q
    dim_g, dim_a, dim_d = g.algebra.dim, a.dim, data.trivial_dim
    dim = dim_g * dim_a + dim_d
    space = _model_space(
        g, a.space, d.space if d is not None else None,
        f"L(sl({data.p}|{data.q}),{a.name})",
    )
    circ, abr = circ_and_bracket(a)
    gpar = g.algebra.space.parities
    apar = a.space.parities
    solver = SpanSolver(list(g.vectors), size * size)

    lie_coords: dict[tuple[int, int], SparseVector] = {}
    star_coords: dict[tuple[int, int], SparseVector] = {}
    str_values: dict[tuple[int, int], Fraction] = {}
    for x in range(dim_g):
        for y in range(dim_g):
            mx, my = g.vectors[x], g.vectors[y]
            xy = gl_matmul(mx, my, size)
            sgn = MINUS_ONE if gpar[x] and gpar[y] else ONE
            lie = xy.axpy(-sgn, gl_matmul(my, mx, size))
            star = xy.axpy(sgn, gl_matmul(my, mx, size))
            tr = supertrace(xy, data.p, data.q)
            if tr:
                star = star.axpy(-Fraction(2, data.p - data.q) * tr, gl_identity(size))
                str_values[(x, y)] = tr
            if lie:
                lie_coords[(x, y)] = solver.solve(lie)
            if star:
                star_coords[(x, y)] = solver.solve(star)

    constants: dict[tuple[int, int], SparseVector] = {}

    def put(i: int, j: int, ent: dict[int, Fraction]) -> None:
        clean = {k: c for k, c in ent.items() if c}
        if clean:
            constants[(i, j)] = SparseVector(dim, clean)

    for x in range(dim_g):
        for s in range(dim_a):
            row = x * dim_a + s
            for y in range(dim_g):
                outer_sign = MINUS_ONE if apar[s] and gpar[y] else ONE
                for t in range(dim_a):
                    ent: dict[int, Fraction] = {}
                    cvec = circ.on_basis(s, t)
                    if cvec:
                        lc = lie_coords.get((x, y))
                        if lc is not None:
                            for gi, gc in lc.entries.items():
                                for k, ac in cvec.entries.items():
                                    idx = gi * dim_a + k
                                    ent[idx] = ent.get(idx, Fraction(0)) + outer_sign * HALF * gc * ac
                    bvec = abr.on_basis(s, t)
                    if bvec:
                        sc = star_coords.get((x, y))
                        if sc is not None:
                            for gi, gc in sc.entries.items():
                                for k, ac in bvec.entries.items():
                                    idx = gi * dim_a + k
                                    v = ent.get(idx, Fraction(0)) + outer_sign * HALF * gc * ac
                                    if v:
                                        ent[idx] = v
                                    else:
                                        ent.pop(idx, None)
                    tr = str_values.get((x, y))
                    if tr and data.form is not None:
                        fv = data.form.on_basis(s, t)
                        for r, fc in fv.entries.items():
                            idx = dim_g * dim_a + r
                            v = ent.get(idx, Fraction(0)) + outer_sign * tr * fc
                            if v:
                                ent[idx] = v
                            else:
                                ent.pop(idx, None)
                    put(row, y * dim_a + t, ent)

    if d is not None:
        off = dim_g * dim_a
        dpar = d.space.parities
        for r in range(dim_d):
            for y in range(dim_g):
                sign = MINUS_ONE if dpar[r] and gpar[y] else ONE
                for t in range(dim_a):
                    img = data.phi.on_basis(r, t)
                    if img:
                        put(off + r, y * dim_a + t, {y * dim_a + k: sign * c for k, c in img.entries.items()})
        for x in range(dim_g):
            for s in range(dim_a):
                for r in range(dim_d):
                    img = data.rho.on_basis(s, r)
                    if img:
                        put(x * dim_a + s, off + r, {x * dim_a + k: c for k, c in img.entries.items()})
        for r in range(dim_d):
            for u in range(dim_d):
                img = d.bracket.on_basis(r, u)
                if img:
                    put(off + r, off + u, {off + k: c for k, c in img.entries.items()})

    return LeibnizSuperalgebra(space, BilinearMap.product(space, constants))


def _pairs_check(name, n1, n2, evaluate, dim_out, max_violations, workers=1):
    return run_indexed_check(name, n1 * n2, evaluate, dim_out, max_violations, workers)


def _phi_representation_report(
    d: LeibnizSuperalgebra,
    a: SuperDialgebra,
    phi: BilinearMap,
    products: Sequence[tuple[str, BilinearMap]],
    max_violations: int,
) -> ViolationReport:
    """D acts by superderivations: the representation law and the derivation
    law for each listed product, merged into one report."""
    nd, na = d.dim, a.dim
    dpar = d.space.parities
    apar = a.space.parities
    reports = []

    def rep_eval(t: int):
        ru, s = divmod(t, na)
        r, u = divmod(ru, nd)
        lhs = SparseVector.zero(na)
        for k, c in d.bracket.on_basis(r, u).entries.items():
            lhs = lhs.axpy(c, phi.on_basis(k, s))
        rhs = phi.apply_basis_left(r, phi.on_basis(u, s))
        sign = MINUS_ONE if dpar[r] and dpar[u] else ONE
        rhs = rhs.axpy(-sign, phi.apply_basis_left(u, phi.on_basis(r, s)))
        if lhs == rhs:
            return None
        return (("rep", r, u, s), dict(lhs.entries), dict(rhs.entries))

    reports.append(run_indexed_check("phi-representation", nd * nd * na, rep_eval, na, max_violations))

    for pname, prod in products:
        def der_eval(t: int, prod=prod, pname=pname):
            rs, u = divmod(t, na)
            r, s = divmod(rs, na)
            lhs = phi.apply_basis_left(r, prod.on_basis(s, u))
            rhs = prod.apply(phi.on_basis(r, s), SparseVector.unit(na, u))
            sign = MINUS_ONE if dpar[r] and apar[s] else ONE
            rhs = rhs.axpy(sign, prod.apply_basis_left(s, phi.on_basis(r, u)))
            if lhs == rhs:
                return None
            return ((f"der_{pname}", r, s, u), dict(lhs.entries), dict(rhs.entries))

        reports.append(
            run_indexed_check(f"phi-derivation-{pname}", nd * na * na, der_eval, na, max_violations)
        )
    return merge_reports("representation", reports)


def _invariance_report(
    d: LeibnizSuperalgebra,
    a: SuperDialgebra,
    phi: BilinearMap,
    form: BilinearMap,
    max_violations: int,
) -> ViolationReport:
    """[d, <a,b>] = <phi(d)a, b> + (-1)^{|d||a|} <a, phi(d)b>."""
    nd, na = d.dim, a.dim
    dpar = d.space.parities
    apar = a.space.parities

    def evaluate(t: int):
        rs, u = divmod(t, na)
        r, s = divmod(rs, na)
        lhs = SparseVector.zero(nd)
        fv = form.on_basis(s, u)
        for k, c in fv.entries.items():
            lhs = lhs.axpy(c, d.bracket.on_basis(r, k))
        rhs = form.apply(phi.on_basis(r, s), SparseVector.unit(na, u))
        sign = MINUS_ONE if dpar[r] and apar[s] else ONE
        rhs = rhs.axpy(sign, form.apply_basis_left(s, phi.on_basis(r, u)))
        if lhs == rhs:
            return None
        return ((r, s, u), dict(lhs.entries), dict(rhs.entries))

    return run_indexed_check("invariance", nd * na * na, evaluate, nd, max_violations)


def _zero_report(name: str) -> ViolationReport:
    return ViolationReport(name, (), 0, 0)


def check_sl_model_conditions(
    data: SlModelData, max_violations: int = 100
) -> ConditionReport:
    """The full condition set equivalent to the model being a Leibniz
    superalgebra: coefficient associativity, superderivation representation,
    form invariance, the two cyclic form identities, and the two inner-action
    identities tying phi and rho to the coefficient bracket through the form.
    """
    a = data.coordinates
    na = a.dim
    apar = a.space.parities
    circ, abr = circ_and_bracket(a)
    scale = Fraction(1, data.p - data.q)
    verdicts: dict[str, ViolationReport] = {}
    verdicts["associativity"] = check_ass(a, max_violations=max_violations)

    d = data.trivial_part
    if d is None:
        verdicts["representation"] = _zero_report("representation")
        verdicts["invariance"] = _zero_report("invariance")
        verdicts["form_cyclic"] = _zero_report("form_cyclic")
        verdicts["form_balanced"] = _zero_report("form_balanced")
    else:
        rep = _phi_representation_report(
            d, a, data.phi, (("circ", circ), ("bracket", abr)), max_violations
        )
        dleib = check_leibniz(d, max_violations=max_violations)
        tagged = ViolationReport(
            "d-leibniz",
            tuple((("d_leibniz",) + idx, l, r) for idx, l, r in dleib.violations),
            dleib.checked_count,
            dleib.total_violations,
        )
        verdicts["representation"] = merge_reports("representation", [tagged, rep])
        verdicts["invariance"] = _invariance_report(d, a, data.phi, data.form, max_violations)

        form = data.form

        def cyclic_eval(t: int):
            st, u = divmod(t, na)
            s, tt = divmod(st, na)
            lhs = form.apply(a.right.on_basis(s, tt), SparseVector.unit(na, u))
            rhs = form.apply_basis_left(s, a.right.on_basis(tt, u))
            sign = MINUS_ONE if apar[s] and (apar[tt] + apar[u]) % 2 else ONE
            rhs = rhs.axpy(sign, form.apply_basis_left(tt, a.left.on_basis(u, s)))
            if lhs == rhs:
                return None
            return ((s, tt, u), dict(lhs.entries), dict(rhs.entries))

        verdicts["form_cyclic"] = run_indexed_check(
            "form_cyclic", na**3, cyclic_eval, d.dim, max_violations
        )

        def balanced_eval(t: int):
            st, u = divmod(t, na)
            s, tt = divmod(st, na)
            lhs = form.apply(a.right.on_basis(s, tt), SparseVector.unit(na, u))
            rhs = form.apply(a.left.on_basis(s, tt), SparseVector.unit(na, u))
            if lhs == rhs:
                return None
            return ((s, tt, u), dict(lhs.entries), dict(rhs.entries))

        verdicts["form_balanced"] = run_indexed_check(
            "form_balanced", na**3, balanced_eval, d.dim, max_violations
        )

    def action_eval(t: int):
        st, u = divmod(t, na)
        s, tt = divmod(st, na)
        lhs = SparseVector.zero(na)
        if d is not None:
            for r, c in data.form.on_basis(s, tt).entries.items():
                lhs = lhs.axpy(c, data.phi.on_basis(r, u))
        rhs = abr.apply(abr.on_basis(s, tt), SparseVector.unit(na, u)).scale(scale)
        if lhs == rhs:
            return None
        return ((s, tt, u), dict(lhs.entries), dict(rhs.entries))

    verdicts["form_action_inner"] = run_indexed_check(
        "form_action_inner", na**3, action_eval, na, max_violations
    )

    def right_action_eval(t: int):
        st, u = divmod(t, na)
        s, tt = divmod(st, na)
        lhs = SparseVector.zero(na)
        if d is not None:
            for r, c in data.form.on_basis(tt, u).entries.items():
                lhs = lhs.axpy(c, data.rho.on_basis(s, r))
        rhs = abr.apply_basis_left(s, abr.on_basis(tt, u)).scale(scale)
        if lhs == rhs:
            return None
        return ((s, tt, u), dict(lhs.entries), dict(rhs.entries))

    verdicts["form_right_action_inner"] = run_indexed_check(
        "form_right_action_inner", na**3, right_action_eval, na, max_violations
    )

    return ConditionReport(verdicts)


def build_canonical_model(
    a: SuperDialgebra, p: int, q: int
) -> tuple[LeibnizSuperalgebra, SlModelData]:
    """The canonical model over an associative unital coordinate dialgebra:
    the trivial summand is the span of the inner derivations by coefficient
    brackets, the form is (inner derivation)/(p-q), and the right action is
    the coefficient bracket against a chosen preimage.
    """
    if a.bar_unit is None:
        raise AlgebraError("the coordinate dialgebra must carry a bar-unit")
    rep = check_ass(a)
    if not rep.passed:
        raise AlgebraError(f"coordinate dialgebra is not associative: {rep.summary()}")
    _, abr = circ_and_bracket(a)
    na = a.dim
    scale = Fraction(1, p - q)

    bracket_vectors: list[SparseVector] = []
    for s in range(na):
        for t in range(na):
            v = abr.on_basis(s, t)
            if v:
                bracket_vectors.append(v)
    wab = row_reduce(bracket_vectors, na)

    def operator_vector(w: SparseVector) -> SparseVector:
        ent: dict[int, Fraction] = {}
        for k in range(na):
            img = abr.apply_basis_right(w, k)
            for o, c in img.entries.items():
                ent[o * na + k] = c
        return SparseVector(na * na, ent)

    op_vectors = [operator_vector(w) for w in wab.rows]
    dspan = row_reduce([v for v in op_vectors if v], na * na)
    nd = dspan.dim
    if nd == 0:
        data = SlModelData(p, q, a)
        return build_sl_model(data), data

    end_parities = tuple(
        (a.space.parities[t // na] + a.space.parities[t % na]) % 2 for t in range(na * na)
    )
    dpar = []
    for row in dspan.rows:
        seen = {end_parities[t] for t in row.entries}
        if len(seen) != 1:
            raise AlgebraError("inner-derivation span has an inhomogeneous basis")
        dpar.append(seen.pop())
    dspace = SuperSpace(f"ad[{a.name},{a.name}]", tuple(f"d{r}" for r in range(nd)), tuple(dpar))

    def compose(u: SparseVector, v: SparseVector) -> SparseVector:
        ent: dict[int, Fraction] = {}
        for t1, c1 in u.entries.items():
            o1, i1 = divmod(t1, na)
            for t2, c2 in v.entries.items():
                o2, i2 = divmod(t2, na)
                if i1 == o2:
                    idx = o1 * na + i2
                    s = ent.get(idx, Fraction(0)) + c1 * c2
                    if s:
                        ent[idx] = s
                    else:
                        ent.pop(idx, None)
        return SparseVector(na * na, ent)

    d_constants = {}
    for r in range(nd):
        for u in range(nd):
            sign = MINUS_ONE if dpar[r] and dpar[u] else ONE
            comm = compose(dspan.rows[r], dspan.rows[u]).axpy(
                -sign, compose(dspan.rows[u], dspan.rows[r])
            )
            if comm:
                d_constants[(r, u)] = dspan.coords(comm)
    d_algebra = LeibnizSuperalgebra(dspace, BilinearMap.product(dspace, d_constants))

    phi_constants = {}
    for r in range(nd):
        row = dspan.rows[r]
        for k in range(na):
            col = SparseVector(na, {t // na: c for t, c in row.entries.items() if t % na == k})
            if col:
                phi_constants[(r, k)] = col
    phi = BilinearMap(dspace, a.space, a.space, phi_constants)

    form_constants = {}
    for s in range(na):
        for t in range(na):
            w = abr.on_basis(s, t)
            if w.is_zero():
                continue
            opv = operator_vector(w)
            coords = dspan.coords(opv).scale(scale)
            if coords:
                form_constants[(s, t)] = coords
    form = BilinearMap(a.space, a.space, dspace, form_constants)

    # preimages: w_r in [A,A] with ad(w_r) equal to the r-th operator basis
    # row.  ad may have a kernel on [A,A], so solve over an independent
    # subset of the operator images and keep track of which bracket vectors
    # produced them; any preimage choice is legitimate here.
    indep_ops: list[SparseVector] = []
    indep_idx: list[int] = []
    seen = row_reduce([], na * na)
    for t, ov in enumerate(op_vectors):
        if ov and not seen.contains(ov):
            indep_ops.append(ov)
            indep_idx.append(t)
            seen = row_reduce(indep_ops, na * na)
    op_solver = SpanSolver(indep_ops, na * na)
    preimages = []
    for r in range(nd):
        coeffs = op_solver.solve(dspan.rows[r])
        if coeffs is None:
            raise AlgebraError("operator basis escaped the inner-derivation span")
        w = SparseVector.zero(na)
        for t, c in coeffs.entries.items():
            w = w.axpy(c, wab.rows[indep_idx[t]])
        preimages.append(w)
    rho_constants = {}
    for s in range(na):
        for r in range(nd):
            img = abr.apply_basis_left(s, preimages[r])
            if img:
                rho_constants[(s, r)] = img
    rho = BilinearMap(a.space, dspace, a.space, rho_constants)

    data = SlModelData(p, q, a, d_algebra, phi, form, rho)
    return build_sl_model(data), data


# ---------------------------------------------------------------------------
# form-coordinate (current-algebra) models


@dataclass(frozen=True)
class KappaModelData:
    """Input data for the current-algebra model (g ⊗ A) ⊕ D over an
    invariant form kappa on a Lie carrier g."""

    carrier: LeibnizSuperalgebra
    kappa: Mapping[tuple[int, int], Fraction]
    coordinates: SuperDialgebra
    trivial_part: LeibnizSuperalgebra | None = None
    phi: BilinearMap | None = None
    form: BilinearMap | None = None
    central: bool = False

    def __post_init__(self):
        g = self.carrier
        if not (check_leibniz(g).passed and is_lie(g).passed):
            raise AlgebraError("the carrier must be a Lie superalgebra")
        _validate_kappa(g, self.kappa)
        if self.coordinates.bar_unit is None:
            raise AlgebraError("the coordinate dialgebra must carry a bar-unit")
        d = self.trivial_part
        if d is None:
            if any(m is not None and not m.is_zero() for m in (self.phi, self.form)):
                raise AlgebraError("phi/form need a nonzero trivial summand")
            return
        if self.phi is None or self.form is None:
            raise AlgebraError("phi and form are required when D is present")
        a = self.coordinates
        if (self.phi.left, self.phi.right, self.phi.out) != (d.space, a.space, a.space):
            raise AlgebraError("phi must map D x A -> A")
        if (self.form.left, self.form.right, self.form.out) != (a.space, a.space, d.space):
            raise AlgebraError("form must map A x A -> D")
        _check_even_map(self.phi, "phi")
        _check_even_map(self.form, "form")
        if self.central:
            if not self.phi.is_zero():
                raise AlgebraError("a central trivial summand cannot act: phi must vanish")
            if not d.bracket.is_zero():
                raise AlgebraError("a central trivial summand must be abelian")

    @property
    def trivial_dim(self) -> int:
        return self.trivial_part.dim if self.trivial_part is not None else 0


def _validate_kappa(g: LeibnizSuperalgebra, kappa: Mapping[tuple[int, int], Fraction]) -> None:
    n = g.dim
    par = g.space.parities
    gram = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in kappa.items():
        if not (0 <= i < n and 0 <= j < n):
            raise AlgebraError("kappa index out of range")
        gram[i][j] = Fraction(c)
    for i in range(n):
        for j in range(n):
            if gram[i][j] and (par[i] + par[j]) % 2:
                raise AlgebraError("kappa must be even")
            sign = MINUS_ONE if par[i] and par[j] else ONE
            if gram[i][j] != sign * gram[j][i]:
                raise AlgebraError("kappa must be supersymmetric")
    rows = [SparseVector(n, {j: gram[i][j] for j in range(n) if gram[i][j]}) for i in range(n)]
    if row_reduce(rows, n).dim != n:
        raise AlgebraError("kappa must be nondegenerate")

    def pair(v: SparseVector, j: int) -> Fraction:
        return sum((c * gram[i][j] for i, c in v.entries.items()), Fraction(0))

    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = pair(g.bracket.on_basis(i, j), k)
                rhs = sum(
                    (gram[i][t] * c for t, c in g.bracket.on_basis(j, k).entries.items()),
                    Fraction(0),
                )
                if lhs != rhs:
                    raise AlgebraError("kappa must be invariant under the bracket")


def supertrace_form(g: MatrixSl) -> dict[tuple[int, int], Fraction]:
    """kappa(x, y) = str(xy) on an explicit-basis special linear algebra."""
    out = {}
    for a in range(g.algebra.dim):
        for b in range(g.algebra.dim):
            v = g.str_form(a, b)
            if v:
                out[(a, b)] = v
    return out


def build_kappa_model(data: KappaModelData) -> LeibnizSuperalgebra:
    """The current-algebra bracket

    [f⊗a, g⊗b] = (-1)^{|a||g|} ([f,g] ⊗ (a |- b) + kappa(f,g) <a,b>)

    with [d, f⊗a] = (-1)^{|d||f|} f ⊗ phi(d)(a) and [f⊗a, d] = 0; the central
    variant instead makes every bracket with the trivial summand vanish.
    """
    g = data.carrier
    a = data.coordinates
    d = data.trivial_part
    dim_g, dim_a, dim_d = g.dim, a.dim, data.trivial_dim
    dim = dim_g * dim_a + dim_d
    gspace = g.space
    labels = [f"{gl}⊗{al}" for gl in gspace.labels for al in a.space.labels]
    parities = [
        (gspace.parities[i] + a.space.parities[k]) % 2
        for i in range(dim_g)
        for k in range(dim_a)
    ]
    if d is not None:
        labels += [f"D:{dl}" for dl in d.space.labels]
        parities += list(d.space.parities)
    space = SuperSpace(f"L({g.name},{a.name})", tuple(labels), tuple(parities))
    gpar = gspace.parities
    apar = a.space.parities
    kappa = data.kappa
    constants: dict[tuple[int, int], SparseVector] = {}

    def put(i, j, ent):
        clean = {k: c for k, c in ent.items() if c}
        if clean:
            constants[(i, j)] = SparseVector(dim, clean)

    for x in range(dim_g):
        for s in range(dim_a):
            for y in range(dim_g):
                sign = MINUS_ONE if apar[s] and gpar[y] else ONE
                for t in range(dim_a):
                    ent: dict[int, Fraction] = {}
                    prod = a.right.on_basis(s, t)
                    if prod:
                        for gi, gc in g.bracket.on_basis(x, y).entries.items():
                            for k, ac in prod.entries.items():
                                idx = gi * dim_a + k
                                ent[idx] = ent.get(idx, Fraction(0)) + sign * gc * ac
                    kv = kappa.get((x, y))
                    if kv and d is not None and data.form is not None:
                        for r, fc in data.form.on_basis(s, t).entries.items():
                            idx = dim_g * dim_a + r
                            v = ent.get(idx, Fraction(0)) + sign * kv * fc
                            if v:
                                ent[idx] = v
                            else:
                                ent.pop(idx, None)
                    put(x * dim_a + s, y * dim_a + t, ent)

    if d is not None and not data.central:
        off = dim_g * dim_a
        dparities = d.space.parities
        for r in range(dim_d):
            for y in range(dim_g):
                sign = MINUS_ONE if dparities[r] and gpar[y] else ONE
                for t in range(dim_a):
                    img = data.phi.on_basis(r, t)
                    if img:
                        put(off + r, y * dim_a + t, {y * dim_a + k: sign * c for k, c in img.entries.items()})
        for r in range(dim_d):
            for u in range(dim_d):
                img = d.bracket.on_basis(r, u)
                if img:
                    put(off + r, off + u, {off + k: c for k, c in img.entries.items()})

    return LeibnizSuperalgebra(space, BilinearMap.product(space, constants))


def check_kappa_conditions(data: KappaModelData, max_violations: int = 100) -> ConditionReport:
    """Condition set for the current-algebra model:

    coordinate_algebra: A associative, supercommutative, with a lawful unit;
    representation: phi acts by superderivations and kills the form's image;
    invariance: [d, <a,b>] = <phi(d)a, b> + (-1)^{|d||a|} <a, phi(d)b>;
    form_identities: the cyclic and balanced form identities.
    """
    a = data.coordinates
    na = a.dim
    apar = a.space.parities
    verdicts: dict[str, ViolationReport] = {}

    ass = check_ass(a, max_violations=max_violations)
    unit_rep = check_bar_unit(a, max_violations=max_violations)

    def supercomm_eval(t: int):
        s, u = divmod(t, na)
        lhs = a.right.on_basis(s, u)
        sign = MINUS_ONE if apar[s] and apar[u] else ONE
        rhs = a.left.on_basis(u, s).scale(sign)
        if lhs == rhs:
            return None
        return (("supercomm", s, u), dict(lhs.entries), dict(rhs.entries))

    supercomm = run_indexed_check("supercommutative", na * na, supercomm_eval, na, max_violations)
    tagged_ass = ViolationReport(
        "associative",
        tuple((("ass",) + idx, l, r) for idx, l, r in ass.violations),
        ass.checked_count,
        ass.total_violations,
    )
    tagged_unit = ViolationReport(
        "unital",
        tuple((("unit",) + idx, l, r) for idx, l, r in unit_rep.violations),
        unit_rep.checked_count,
        unit_rep.total_violations,
    )
    verdicts["coordinate_algebra"] = merge_reports(
        "coordinate_algebra", [tagged_ass, supercomm, tagged_unit]
    )

    d = data.trivial_part
    if d is None:
        verdicts["representation"] = _zero_report("representation")
        verdicts["invariance"] = _zero_report("invariance")
        verdicts["form_identities"] = _zero_report("form_identities")
        return ConditionReport(verdicts)

    rep = _phi_representation_report(
        d, a, data.phi, (("left", a.left), ("right", a.right)), max_violations
    )

    def kernel_eval(t: int):
        s, u = divmod(t, na)
        fv = data.form.on_basis(s, u)
        bad: dict[int, Fraction] = {}
        for r, c in fv.entries.items():
            for k in range(na):
                col = data.phi.on_basis(r, k)
                for o, cc in col.entries.items():
                    idx = k * na + o
                    v = bad.get(idx, Fraction(0)) + c * cc
                    if v:
                        bad[idx] = v
                    else:
                        bad.pop(idx, None)
        if not bad:
            return None
        return (("kernel", s, u), bad, {})

    kern = run_indexed_check("phi-kills-form", na * na, kernel_eval, na * na, max_violations)
    verdicts["representation"] = merge_reports("representation", [rep, kern])

    verdicts["invariance"] = _invariance_report(d, a, data.phi, data.form, max_violations)

    form = data.form

    def identities_eval(t: int):
        which, rest = divmod(t, na**3)
        st, u = divmod(rest, na)
        s, tt = divmod(st, na)
        if which == 0:
            lhs = form.apply(a.right.on_basis(s, tt), SparseVector.unit(na, u))
            rhs = form.apply_basis_left(s, a.right.on_basis(tt, u))
            sign = MINUS_ONE if apar[s] and (apar[tt] + apar[u]) % 2 else ONE
            rhs = rhs.axpy(sign, form.apply_basis_left(tt, a.left.on_basis(u, s)))
        else:
            lhs = form.apply(a.right.on_basis(s, tt), SparseVector.unit(na, u))
            rhs = form.apply(a.left.on_basis(s, tt), SparseVector.unit(na, u))
        if lhs == rhs:
            return None
        return ((which, s, tt, u), dict(lhs.entries), dict(rhs.entries))

    verdicts["form_identities"] = run_indexed_check(
        "form_identities", 2 * na**3, identities_eval, d.dim, max_violations
    )
    return ConditionReport(verdicts)


# ---------------------------------------------------------------------------
# coordinate extraction from a root-graded algebra


def _match_block_sizes(size: int, observed: set) -> tuple[int, dict]:
    """Find block sizes (p, q) whose standard Cartan family produces exactly
    the observed nonzero weights; returns p and the weight -> (i, j) map."""
    from .matrix import cartan_of_sl

    for cand_p in range(size - 1, 0, -1):
        cand_q = size - cand_p
        if cand_p == cand_q or cand_q < 0:
            continue
        try:
            hs = cartan_of_sl(cand_p, cand_q)
        except AlgebraError:
            continue
        diags = []
        for h in hs:
            diags.append([h[(i - 1) * size + (i - 1)] for i in range(1, size + 1)])
        expect: dict[tuple, tuple[int, int]] = {}
        ok = True
        for i in range(1, size + 1):
            for j in range(1, size + 1):
                if i == j:
                    continue
                w = tuple(diags[t][i - 1] - diags[t][j - 1] for t in range(len(hs)))
                if w in expect:
                    ok = False
                    break
                expect[w] = (i, j)
            if not ok:
                break
        if ok and set(expect) == observed:
            return cand_p, expect
    raise AlgebraError("the Cartan family does not present a special linear root system")


def extract_coordinates(
    alg: LeibnizSuperalgebra, g_embed: Subspace, cartan: Sequence[SparseVector]
) -> SlModelData:
    """Recover coordinate data from a root-graded algebra.

    Requires the grading certificate to pass and the Cartan family to be
    listed in the standard order (diagonal differences, with the sign flip at
    the block boundary).  The unit of the coordinate dialgebra is the
    coordinate of the embedded root vector for the (1,2) position, and the
    returned data rebuilds `alg`'s structure constants exactly on the chosen
    adapted bases.
    """
    cartan = list(cartan)
    cert = check_delta_graded(alg, g_embed, cartan)
    if not cert.is_graded:
        raise AlgebraError(f"input is not root-graded: {cert.summary()}")
    r = restrict(alg, g_embed)
    g = r.algebra
    sub_cartan = [r.to_sub(h) for h in cartan]
    gdec = weight_decomposition(g, sub_cartan)
    size = len(cartan) + 1
    observed = set(gdec.nonzero_weights())
    p, root_of = _match_block_sizes(size, observed)
    q = size - p
    if not p > q >= 1:
        raise AlgebraError(f"matched blocks ({p}, {q}) are outside the supported range")
    weight_of = {pos: w for w, pos in root_of.items()}
    glb = GlBasis(p, q, 1)

    for w in observed:
        if gdec.weights[w].dim != 1:
            raise AlgebraError("embedded subalgebra has a repeated root")

    x_sub: dict[tuple[int, int], SparseVector] = {}
    for i in range(1, size):
        v = gdec.weights[weight_of[(i, i + 1)]].rows[0]
        u0 = gdec.weights[weight_of[(i + 1, i)]].rows[0]
        w = g.bracket.apply(v, u0)
        h = sub_cartan[i - 1]
        pivot = h.leading_index()
        lam = w[pivot] / h.entries[pivot]
        if not lam or w != h.scale(lam):
            raise AlgebraError(f"root pair ({i}, {i + 1}) does not close onto its coroot")
        x_sub[(i, i + 1)] = v
        x_sub[(i + 1, i)] = u0.scale(ONE / lam)
    for dist in range(2, size):
        for i in range(1, size + 1):
            j = i + dist
            if j <= size:
                x_sub[(i, j)] = g.bracket.apply(x_sub[(i, j - 1)], x_sub[(j - 1, j)])
            j = i - dist
            if j >= 1:
                x_sub[(i, j)] = g.bracket.apply(x_sub[(i, j + 1)], x_sub[(j + 1, j)])
    x_amb = {pos: r.from_sub(v) for pos, v in x_sub.items()}

    ldec = weight_decomposition(alg, cartan)
    a_space_sub = ldec.weights.get(weight_of[(1, 2)])
    if a_space_sub is None:
        raise AlgebraError("the (1,2) root space of the ambient algebra is empty")
    dim_a = a_space_sub.dim
    for w in ldec.nonzero_weights():
        if ldec.weights[w].dim != dim_a:
            raise AlgebraError(
                "nonzero weight spaces have unequal dimensions; "
                "the module decomposition is not adjoint copies plus trivials"
            )

    tau12 = glb.tau(1, 2)
    tau23 = glb.tau(2, 3)
    apar = tuple(
        (alg.space.vector_parity(row) + tau12) % 2 if alg.space.vector_parity(row) is not None
        else _raise_inhomogeneous()
        for row in a_space_sub.rows
    )
    a_space = SuperSpace("A", tuple(f"a{k}" for k in range(dim_a)), apar)

    iota12 = list(a_space_sub.rows)
    iota13 = [alg.bracket.apply(x_amb[(2, 3)], v).scale(MINUS_ONE) for v in iota12]
    iota23 = [alg.bracket.apply(x_amb[(2, 1)], v) for v in iota13]
    iota21 = [alg.bracket.apply(x_amb[(3, 1)], v) for v in iota23]
    solver13 = SpanSolver(iota13, alg.dim)

    right_constants = {}
    left_constants = {}
    for s in range(dim_a):
        sign_s23 = MINUS_ONE if apar[s] and tau23 else ONE
        for t in range(dim_a):
            prod = alg.bracket.apply(iota12[s], iota23[t]).scale(sign_s23)
            coords = solver13.solve(prod)
            if coords is None:
                raise AlgebraError("right product left its root space")
            if coords:
                right_constants[(s, t)] = coords
            exp = (apar[t] * tau12 + apar[t] * apar[s]) % 2
            sign = ONE if exp else MINUS_ONE
            prod = alg.bracket.apply(iota23[t], iota12[s]).scale(sign)
            coords = solver13.solve(prod)
            if coords is None:
                raise AlgebraError("left product left its root space")
            if coords:
                left_constants[(s, t)] = coords
    unit_coords = a_space_sub.coords(x_amb[(1, 2)])
    a_dialgebra = SuperDialgebra(
        a_space,
        BilinearMap.product(a_space, left_constants),
        BilinearMap.product(a_space, right_constants),
        unit_coords,
    )

    # split off the trivial summand: the g-module generated by the nonzero
    # weight spaces versus the left-centralizer of the embedded subalgebra
    zero_space = ldec.zero_space()
    generated = []
    for w in ldec.nonzero_weights():
        for row in ldec.weights[w].rows:
            generated.append(row)
            for v in g_embed.rows:
                b = alg.bracket.apply(v, row)
                if b:
                    generated.append(b)
    z_part = row_reduce(generated, alg.dim)

    l0 = zero_space
    cols = []
    for row in l0.rows:
        ent: dict[int, Fraction] = {}
        for gi, v in enumerate(g_embed.rows):
            b = alg.bracket.apply(v, row)
            for k, c in b.entries.items():
                ent[gi * alg.dim + k] = c
        cols.append(SparseVector(len(g_embed.rows) * alg.dim, ent))
    ker = kernel(LinearMap(l0.dim, len(g_embed.rows) * alg.dim, cols))
    d_rows = [l0.lift(c) for c in ker.rows]
    d_space_sub = row_reduce(d_rows, alg.dim)

    if z_part.dim + d_space_sub.dim != alg.dim:
        raise AlgebraError(
            "decomposition mismatch: adjoint copies and trivial part do not fill the algebra"
        )
    if l0.dim != (size - 1) * dim_a + d_space_sub.dim:
        raise AlgebraError("decomposition mismatch: zero weight space has unexpected dimension")

    if d_space_sub.dim == 0:
        return SlModelData(p, q, a_dialgebra)

    d_restriction = restrict(alg, d_space_sub, name="D")
    d_algebra = d_restriction.algebra
    nd = d_algebra.dim
    dpar = d_algebra.space.parities

    phi_constants = {}
    rho_constants = {}
    for rr in range(nd):
        drow = d_space_sub.rows[rr]
        sign = MINUS_ONE if dpar[rr] and tau12 else ONE
        for s in range(dim_a):
            img = alg.bracket.apply(drow, iota12[s]).scale(sign)
            coords = a_space_sub.coords(img)
            if coords:
                phi_constants[(rr, s)] = coords
            img = alg.bracket.apply(iota12[s], drow)
            coords = a_space_sub.coords(img)
            if coords:
                rho_constants[(s, rr)] = coords
    phi = BilinearMap(d_algebra.space, a_space, a_space, phi_constants)
    rho = BilinearMap(a_space, d_algebra.space, a_space, rho_constants)

    zd_solver = SpanSolver(list(z_part.rows) + list(d_space_sub.rows), alg.dim)
    form_constants = {}
    for s in range(dim_a):
        sign = MINUS_ONE if apar[s] and tau12 else ONE
        for t in range(dim_a):
            prod = alg.bracket.apply(iota12[s], iota21[t]).scale(sign)
            coords = zd_solver.solve(prod)
            if coords is None:
                raise AlgebraError("opposite-root product escaped the decomposition")
            dpart = {k - z_part.dim: c for k, c in coords.entries.items() if k >= z_part.dim}
            if dpart:
                form_constants[(s, t)] = SparseVector(nd, dpart)
    form = BilinearMap(a_space, a_space, d_algebra.space, form_constants)

    return SlModelData(p, q, a_dialgebra, d_algebra, phi, form, rho)


def _raise_inhomogeneous():
    raise AlgebraError("a root-space basis vector is parity-inhomogeneous")


def sl_model_scalar_copy(
    data: SlModelData,
) -> tuple[Subspace, list[SparseVector]]:
    """The embedded copy sl(p,q,K) ⊗ 1 inside the built model, together with
    its Cartan family, both in model coordinates."""
    g = sl_algebra(data.p, data.q)
    dim_a = data.coordinates.dim
    dim = g.algebra.dim * dim_a + data.trivial_dim
    unit = data.coordinates.bar_unit

    def embed(x: int) -> SparseVector:
        return SparseVector(dim, {x * dim_a + k: c for k, c in unit.entries.items()})

    rows = [embed(x) for x in range(g.algebra.dim)]
    cartan = [embed(t) for t in g.cartan_indices]
    return row_reduce(rows, dim), cartan
