"""Axiom and identity checkers.

Every checker walks a finite index cube (basis pairs or triples), compares
two exactly-computed sides and returns a :class:`ViolationReport`.  The walk
can be partitioned across worker threads; chunks are contiguous index ranges
whose results are concatenated, so the report never depends on the schedule.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

from .core import (
    AlgebraError,
    BilinearMap,
    LeibnizSuperalgebra,
    MissingBarUnit,
    SuperDialgebra,
    ViolationReport,
)
from .linalg import LinearMap, SparseVector

DEFAULT_MAX_VIOLATIONS = 100

_ZERO: dict[int, Fraction] = {}


def _axpy(out: dict[int, Fraction], c: Fraction, src: dict[int, Fraction]) -> None:
    for k, v in src.items():
        s = out.get(k)
        s = c * v if s is None else s + c * v
        if s:
            out[k] = s
        else:
            del out[k]


def _mul_left(c, i: int, v: dict[int, Fraction]) -> dict[int, Fraction]:
    """product of basis element i with vector v (raw constants dict)."""
    out: dict[int, Fraction] = {}
    for j, b in v.items():
        w = c.get((i, j))
        if w is not None:
            _axpy(out, b, w)
    return out


def _mul_right(c, v: dict[int, Fraction], j: int) -> dict[int, Fraction]:
    """product of vector v with basis element j (raw constants dict)."""
    out: dict[int, Fraction] = {}
    for i, a in v.items():
        w = c.get((i, j))
        if w is not None:
            _axpy(out, a, w)
    return out


def _raw(product: BilinearMap) -> dict[tuple[int, int], dict[int, Fraction]]:
    return {key: dict(v.entries) for key, v in product.constants.items()}


def run_indexed_check(
    name: str,
    total: int,
    evaluate: Callable[[int], tuple[tuple, dict, dict] | None],
    dim_out: int,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """Evaluate `evaluate` on 0..total-1, collecting mismatches.

    `evaluate` returns None on success or (index_tuple, lhs, rhs) raw dicts on
    failure.  Work is split into contiguous chunks when workers > 1; chunk
    results are concatenated in order, so output is schedule-independent.
    """

    def scan(lo: int, hi: int) -> list:
        found = []
        for t in range(lo, hi):
            bad = evaluate(t)
            if bad is not None:
                found.append(bad)
        return found

    if workers <= 1 or total < 2048:
        raw_violations = scan(0, total)
    else:
        nchunks = min(workers * 4, max(1, total // 512))
        step = (total + nchunks - 1) // nchunks
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw_violations = []
            for part in pool.map(lambda b: scan(*b), bounds):
                raw_violations.extend(part)

    stored = tuple(
        (idx, SparseVector(dim_out, lhs), SparseVector(dim_out, rhs))
        for idx, lhs, rhs in raw_violations[:max_violations]
    )
    return ViolationReport(name, stored, total, len(raw_violations))


def check_graded(
    product: BilinearMap,
    shift: int = 0,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """Outputs of basis products must sit in the parity-|i|+|j|+shift part."""
    nl, nr = product.left.dim, product.right.dim
    pl, pr, po = product.left.parities, product.right.parities, product.out.parities
    constants = product.constants

    def evaluate(t: int):
        i, j = divmod(t, nr)
        v = constants.get((i, j))
        if v is None:
            return None
        want = (pl[i] + pr[j] + shift) % 2
        good = {k: c for k, c in v.entries.items() if po[k] == want}
        if len(good) == len(v.entries):
            return None
        return ((i, j), dict(v.entries), good)

    return run_indexed_check(
        f"graded[{product.out.name}]", nl * nr, evaluate, product.out.dim, max_violations, workers
    )


def check_ass(
    d: SuperDialgebra,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """The five associativity axioms of a dialgebra, on all basis triples.

    Axioms, numbered as checked:
      1: (a -| b) -| c = a -| (b -| c)
      2: (a -| b) -| c = a -| (b |- c)
      3: (a |- b) -| c = a |- (b -| c)
      4: (a |- b) |- c = a |- (b |- c)
      5: (a |- b) |- c = (a -| b) |- c
    """
    n = d.dim
    lc = _raw(d.left)
    rc = _raw(d.right)

    def evaluate(t: int):
        ax, rest = divmod(t, n * n * n)
        ij, k = divmod(rest, n)
        i, j = divmod(ij, n)
        ax += 1
        if ax == 1:
            lhs = _mul_right(lc, lc.get((i, j), _ZERO), k)
            rhs = _mul_left(lc, i, lc.get((j, k), _ZERO))
        elif ax == 2:
            lhs = _mul_right(lc, lc.get((i, j), _ZERO), k)
            rhs = _mul_left(lc, i, rc.get((j, k), _ZERO))
        elif ax == 3:
            lhs = _mul_right(lc, rc.get((i, j), _ZERO), k)
            rhs = _mul_left(rc, i, lc.get((j, k), _ZERO))
        elif ax == 4:
            lhs = _mul_right(rc, rc.get((i, j), _ZERO), k)
            rhs = _mul_left(rc, i, rc.get((j, k), _ZERO))
        else:
            lhs = _mul_right(rc, rc.get((i, j), _ZERO), k)
            rhs = _mul_right(rc, lc.get((i, j), _ZERO), k)
        if lhs == rhs:
            return None
        return ((ax, i, j, k), lhs, rhs)

    return run_indexed_check(
        f"associativity[{d.name}]", 5 * n**3, evaluate, n, max_violations, workers
    )


def check_bar_unit(
    d: SuperDialgebra,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """1 |- a = a and a -| 1 = a on every basis element."""
    if d.bar_unit is None:
        raise MissingBarUnit(f"dialgebra {d.name!r} carries no bar-unit")
    n = d.dim
    unit = d.bar_unit

    def evaluate(t: int):
        side, a = divmod(t, n)
        e = SparseVector.unit(n, a)
        if side == 0:
            got = d.right.apply(unit, e)
        else:
            got = d.left.apply(e, unit)
        if got == e:
            return None
        return ((side, a), dict(got.entries), {a: Fraction(1)})

    return run_indexed_check(f"bar-unit[{d.name}]", 2 * n, evaluate, n, max_violations, workers)


def check_leibniz(
    alg: LeibnizSuperalgebra,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """Left Leibniz superidentity on all homogeneous basis triples:

    [[a, b], c] = [a, [b, c]] - (-1)^{|a||b|} [b, [a, c]]
    """
    n = alg.dim
    c = _raw(alg.bracket)
    par = alg.space.parities

    def evaluate(t: int):
        ij, k = divmod(t, n)
        i, j = divmod(ij, n)
        lhs = _mul_right(c, c.get((i, j), _ZERO), k)
        rhs = _mul_left(c, i, c.get((j, k), _ZERO))
        inner = _mul_left(c, j, c.get((i, k), _ZERO))
        if inner:
            sign = Fraction(-1) if par[i] and par[j] else Fraction(1)
            _axpy(rhs, -sign, inner)
        if lhs == rhs:
            return None
        return ((i, j, k), lhs, rhs)

    return run_indexed_check(f"leibniz[{alg.name}]", n**3, evaluate, n, max_violations, workers)


def check_right_leibniz(
    alg: LeibnizSuperalgebra,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """Right Leibniz superidentity:

    [a, [b, c]] = [[a, b], c] - (-1)^{|b||c|} [[a, c], b]
    """
    n = alg.dim
    c = _raw(alg.bracket)
    par = alg.space.parities

    def evaluate(t: int):
        ij, k = divmod(t, n)
        i, j = divmod(ij, n)
        lhs = _mul_left(c, i, c.get((j, k), _ZERO))
        rhs = _mul_right(c, c.get((i, j), _ZERO), k)
        inner = _mul_right(c, c.get((i, k), _ZERO), j)
        if inner:
            sign = Fraction(-1) if par[j] and par[k] else Fraction(1)
            _axpy(rhs, -sign, inner)
        if lhs == rhs:
            return None
        return ((i, j, k), lhs, rhs)

    return run_indexed_check(
        f"right-leibniz[{alg.name}]", n**3, evaluate, n, max_violations, workers
    )


def is_lie(
    alg: LeibnizSuperalgebra,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """Graded antisymmetry [a,b] + (-1)^{|a||b|}[b,a] = 0 on basis pairs.

    Combine with :func:`check_leibniz` for a full Lie-superalgebra verdict.
    """
    n = alg.dim
    c = _raw(alg.bracket)
    par = alg.space.parities

    def evaluate(t: int):
        i, j = divmod(t, n)
        lhs = dict(c.get((i, j), _ZERO))
        rev = c.get((j, i))
        if rev:
            sign = Fraction(-1) if par[i] and par[j] else Fraction(1)
            _axpy(lhs, sign, rev)
        if not lhs:
            return None
        return ((i, j), lhs, {})

    return run_indexed_check(f"antisymmetry[{alg.name}]", n * n, evaluate, n, max_violations, workers)


def check_superderivation(
    alg: LeibnizSuperalgebra,
    mu: LinearMap,
    degree: int,
    max_violations: int = DEFAULT_MAX_VIOLATIONS,
    workers: int = 1,
) -> ViolationReport:
    """mu([a,b]) = [mu(a), b] + (-1)^{degree |a|} [a, mu(b)].

    Basis images of mu must shift parity by `degree`; offenders are reported
    as grading violations with single-index tuples before the pair scan.
    """
    n = alg.dim
    if mu.domain_dim != n or mu.codomain_dim != n:
        raise AlgebraError(
            f"endomorphism of dimension {n} expected, got {mu.domain_dim}->{mu.codomain_dim}"
        )
    c = _raw(alg.bracket)
    par = alg.space.parities
    cols = [dict(col.entries) for col in mu.columns]

    def evaluate(t: int):
        if t < n:
            want = (par[t] + degree) % 2
            img = cols[t]
            good = {k: v for k, v in img.items() if par[k] == want}
            if len(good) == len(img):
                return None
            return ((t,), dict(img), good)
        t -= n
        i, j = divmod(t, n)
        lhs: dict[int, Fraction] = {}
        br = c.get((i, j))
        if br:
            for k, v in br.items():
                _axpy(lhs, v, cols[k])
        rhs = _mul_right(c, cols[i], j)
        second = _mul_left(c, i, cols[j])
        if second:
            sign = Fraction(-1) if degree and par[i] else Fraction(1)
            _axpy(rhs, sign, second)
        if lhs == rhs:
            return None
        return ((i, j), lhs, rhs)

    return run_indexed_check(
        f"superderivation[{alg.name}]", n + n * n, evaluate, n, max_violations, workers
    )
