"""File formats: algebra definitions, data bundles, reports.

Everything is UTF-8 JSON.  Scalars travel as exact "p/q" or integer strings;
no floats cross any interface.  Serialization sorts keys and table rows so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
import re
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .checks import check_graded
from .core import (
    BilinearMap,
    LeibnizSuperalgebra,
    SuperDialgebra,
    SuperSpace,
    ViolationReport,
)
from .linalg import LinearMap, SparseVector
from .models import ConditionReport, KappaModelData, SlModelData, supertrace_form
from .weights import GradingCertificate, WeightDecomposition

SCALAR_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ParseError(ValueError):
    """Malformed input file; the message carries file and position details."""


class GradingWarning(UserWarning):
    """A loaded product is not parity-graded; kept as given, not fixed."""


def parse_scalar(text: Any, where: str) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not SCALAR_RE.match(text.strip()):
        raise ParseError(f"{where}: malformed scalar {text!r} (expected 'p/q' or an integer)")
    s = text.strip()
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ParseError(f"{where}: zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def scalar_str(c: Fraction) -> str:
    return str(c)


def _load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _space_from_doc(doc: Mapping, where: str) -> SuperSpace:
    basis = doc.get("basis")
    if not isinstance(basis, list) or not basis:
        raise ParseError(f"{where}: 'basis' must be a nonempty list")
    labels = []
    parities = []
    for row in basis:
        if not isinstance(row, dict) or "label" not in row or "parity" not in row:
            raise ParseError(f"{where}: each basis row needs 'label' and 'parity'")
        labels.append(str(row["label"]))
        if row["parity"] not in (0, 1):
            raise ParseError(f"{where}: parity must be 0 or 1, got {row['parity']!r}")
        parities.append(int(row["parity"]))
    if len(set(labels)) != len(labels):
        dup = sorted({l for l in labels if labels.count(l) > 1})
        raise ParseError(f"{where}: duplicate basis labels {dup}")
    name = str(doc.get("name", "algebra"))
    return SuperSpace(name, tuple(labels), tuple(parities))


def _table_to_map(
    table: Any,
    left: SuperSpace,
    right: SuperSpace,
    out: SuperSpace,
    where: str,
) -> BilinearMap:
    if table is None:
        table = []
    if not isinstance(table, list):
        raise ParseError(f"{where}: a product table must be a list of entries")
    il, ir, io_ = left.label_index(), right.label_index(), out.label_index()
    constants: dict[tuple[int, int], SparseVector] = {}
    for row in table:
        if not (isinstance(row, list) and len(row) == 3 and isinstance(row[2], dict)):
            raise ParseError(f"{where}: table entries are [left, right, {{out: scalar}}]")
        a, b, coeffs = row
        if a not in il:
            raise ParseError(f"{where}: unknown label {a!r}")
        if b not in ir:
            raise ParseError(f"{where}: unknown label {b!r}")
        key = (il[a], ir[b])
        if key in constants:
            raise ParseError(f"{where}: duplicate entry for ({a}, {b})")
        ent = {}
        for lab, c in coeffs.items():
            if lab not in io_:
                raise ParseError(f"{where}: unknown label {lab!r}")
            ent[io_[lab]] = parse_scalar(c, where)
        constants[key] = SparseVector(out.dim, ent)
    return BilinearMap(left, right, out, constants)


def parse_algebra(path: str | Path) -> SuperDialgebra | LeibnizSuperalgebra:
    """Load a dialgebra or Leibniz superalgebra definition.

    Grading of the products is checked and reported through a
    GradingWarning; the algebra is returned as written either way.
    """
    path = Path(path)
    doc = _load_json(path)
    where = str(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    kind = doc.get("kind")
    if kind not in ("dialgebra", "leibniz"):
        raise ParseError(f"{where}: 'kind' must be 'dialgebra' or 'leibniz'")
    space = _space_from_doc(doc, where)
    products = doc.get("products")
    if not isinstance(products, dict):
        raise ParseError(f"{where}: 'products' must be an object")
    alg: SuperDialgebra | LeibnizSuperalgebra
    if kind == "dialgebra":
        left = _table_to_map(products.get("left"), space, space, space, where)
        right = _table_to_map(products.get("right"), space, space, space, where)
        unit = None
        if doc.get("unit") is not None:
            idx = space.label_index()
            u = doc["unit"]
            if isinstance(u, dict):
                ent = {}
                for lab, c in u.items():
                    if lab not in idx:
                        raise ParseError(f"{where}: unknown unit label {lab!r}")
                    ent[idx[lab]] = parse_scalar(c, where)
                unit = SparseVector(space.dim, ent)
            else:
                lab = str(u)
                if lab not in idx:
                    raise ParseError(f"{where}: unknown unit label {lab!r}")
                unit = SparseVector.unit(space.dim, idx[lab])
        alg = SuperDialgebra(space, left, right, unit)
        graded = [check_graded(left), check_graded(right)]
    else:
        bracket = _table_to_map(products.get("bracket"), space, space, space, where)
        alg = LeibnizSuperalgebra(space, bracket)
        graded = [check_graded(bracket)]
    for rep in graded:
        if not rep.passed:
            warnings.warn(
                f"{where}: product is not parity-graded ({rep.total_violations} basis pairs)",
                GradingWarning,
                stacklevel=2,
            )
    return alg


def vector_dict(space: SuperSpace, v: SparseVector) -> dict[str, str]:
    return {space.labels[i]: scalar_str(c) for i, c in v.items()}


def _map_table(m: BilinearMap) -> list:
    rows = []
    for (i, j) in sorted(m.constants):
        rows.append(
            [m.left.labels[i], m.right.labels[j], vector_dict(m.out, m.constants[(i, j)])]
        )
    return rows


def serialize_algebra(alg: SuperDialgebra | LeibnizSuperalgebra) -> dict:
    space = alg.space
    doc: dict[str, Any] = {
        "name": space.name,
        "basis": [
            {"label": lab, "parity": par} for lab, par in zip(space.labels, space.parities)
        ],
    }
    if isinstance(alg, SuperDialgebra):
        doc["kind"] = "dialgebra"
        doc["products"] = {"left": _map_table(alg.left), "right": _map_table(alg.right)}
        if alg.bar_unit is not None:
            items = alg.bar_unit.items()
            if len(items) == 1 and items[0][1] == 1:
                doc["unit"] = space.labels[items[0][0]]
            else:
                doc["unit"] = vector_dict(space, alg.bar_unit)
    else:
        doc["kind"] = "leibniz"
        doc["products"] = {"bracket": _map_table(alg.bracket)}
    return doc


def parse_linear_map(path: str | Path, space: SuperSpace) -> LinearMap:
    """Columns of an endomorphism, keyed by basis labels; omitted = zero."""
    doc = _load_json(path)
    where = str(path)
    if not isinstance(doc, dict) or not isinstance(doc.get("columns"), dict):
        raise ParseError(f"{where}: expected an object with a 'columns' map")
    idx = space.label_index()
    cols = [SparseVector.zero(space.dim) for _ in range(space.dim)]
    for lab, coeffs in doc["columns"].items():
        if lab not in idx:
            raise ParseError(f"{where}: unknown label {lab!r}")
        ent = {}
        for to_lab, c in coeffs.items():
            if to_lab not in idx:
                raise ParseError(f"{where}: unknown label {to_lab!r}")
            ent[idx[to_lab]] = parse_scalar(c, where)
        cols[idx[lab]] = SparseVector(space.dim, ent)
    return LinearMap(space.dim, space.dim, cols)


def parse_vectors(path: str | Path, space: SuperSpace) -> list[SparseVector]:
    doc = _load_json(path)
    where = str(path)
    if not isinstance(doc, dict) or not isinstance(doc.get("vectors"), list):
        raise ParseError(f"{where}: expected an object with a 'vectors' list")
    idx = space.label_index()
    out = []
    for coeffs in doc["vectors"]:
        if not isinstance(coeffs, dict):
            raise ParseError(f"{where}: each vector is a label -> scalar object")
        ent = {}
        for lab, c in coeffs.items():
            if lab not in idx:
                raise ParseError(f"{where}: unknown label {lab!r}")
            ent[idx[lab]] = parse_scalar(c, where)
        out.append(SparseVector(space.dim, ent))
    return out


def _resolve(base: Path, ref: str) -> Path:
    p = Path(ref)
    return p if p.is_absolute() else base / p


def _load_algebra_ref(base: Path, ref: Any, where: str, want: str):
    if not isinstance(ref, str):
        raise ParseError(f"{where}: expected a file reference, got {ref!r}")
    alg = parse_algebra(_resolve(base, ref))
    if want == "dialgebra" and not isinstance(alg, SuperDialgebra):
        raise ParseError(f"{where}: {ref} must define a dialgebra")
    if want == "leibniz" and not isinstance(alg, LeibnizSuperalgebra):
        raise ParseError(f"{where}: {ref} must define a Leibniz superalgebra")
    return alg


def load_sl_model_bundle(path: str | Path) -> SlModelData:
    path = Path(path)
    doc = _load_json(path)
    where = str(path)
    if not isinstance(doc, dict) or doc.get("kind") != "sl-model":
        raise ParseError(f"{where}: expected kind 'sl-model'")
    base = path.parent
    p, q = int(doc.get("p", 0)), int(doc.get("q", 0))
    a = _load_algebra_ref(base, doc.get("coordinates"), where, "dialgebra")
    trivial = doc.get("trivial")
    if trivial is None:
        return SlModelData(p, q, a)
    d = _load_algebra_ref(base, trivial, where, "leibniz")
    phi = _table_to_map(doc.get("phi"), d.space, a.space, a.space, where)
    form = _table_to_map(doc.get("form"), a.space, a.space, d.space, where)
    rho = _table_to_map(doc.get("rho"), a.space, d.space, a.space, where)
    return SlModelData(p, q, a, d, phi, form, rho)


def load_kappa_model_bundle(path: str | Path) -> KappaModelData:
    path = Path(path)
    doc = _load_json(path)
    where = str(path)
    if not isinstance(doc, dict) or doc.get("kind") != "kappa-model":
        raise ParseError(f"{where}: expected kind 'kappa-model'")
    base = path.parent
    carrier_ref = doc.get("carrier")
    if isinstance(carrier_ref, dict) and "sl" in carrier_ref:
        from .matrix import sl_algebra

        p_, q_ = carrier_ref["sl"]
        msl = sl_algebra(int(p_), int(q_))
        carrier = msl.algebra
        default_kappa = supertrace_form(msl)
    else:
        carrier = _load_algebra_ref(base, carrier_ref, where, "leibniz")
        default_kappa = None
    kappa_doc = doc.get("kappa", "supertrace")
    if kappa_doc == "supertrace":
        if default_kappa is None:
            raise ParseError(f"{where}: 'supertrace' kappa needs a carrier of the form {{'sl': [p, q]}}")
        kappa = default_kappa
    else:
        idx = carrier.space.label_index()
        kappa = {}
        for row in kappa_doc:
            if not (isinstance(row, list) and len(row) == 3):
                raise ParseError(f"{where}: kappa entries are [x, y, scalar]")
            x, y, c = row
            if x not in idx or y not in idx:
                raise ParseError(f"{where}: unknown kappa label in {row!r}")
            kappa[(idx[x], idx[y])] = parse_scalar(c, where)
    a = _load_algebra_ref(base, doc.get("coordinates"), where, "dialgebra")
    trivial = doc.get("trivial")
    central = bool(doc.get("central", False))
    if trivial is None:
        return KappaModelData(carrier, kappa, a, central=central)
    d = _load_algebra_ref(base, trivial, where, "leibniz")
    phi = _table_to_map(doc.get("phi"), d.space, a.space, a.space, where)
    form = _table_to_map(doc.get("form"), a.space, a.space, d.space, where)
    return KappaModelData(carrier, kappa, a, d, phi, form, central=central)


def parse_generator_map(path: str | Path, alg_space: SuperSpace):
    """Steinberg generator map: coefficient dialgebra ref plus entries
    [[i, j, coeff_label, {algebra_label: scalar}], ...]."""
    path = Path(path)
    doc = _load_json(path)
    where = str(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    d = _load_algebra_ref(path.parent, doc.get("dialgebra"), where, "dialgebra")
    didx = d.space.label_index()
    aidx = alg_space.label_index()
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise ParseError(f"{where}: 'entries' must be a list")
    v = {}
    for row in entries:
        if not (isinstance(row, list) and len(row) == 4):
            raise ParseError(f"{where}: entries are [i, j, coeff, {{label: scalar}}]")
        i, j, coeff_lab, coeffs = row
        if coeff_lab not in didx:
            raise ParseError(f"{where}: unknown coefficient label {coeff_lab!r}")
        ent = {}
        for lab, c in coeffs.items():
            if lab not in aidx:
                raise ParseError(f"{where}: unknown label {lab!r}")
            ent[aidx[lab]] = parse_scalar(c, where)
        v[(int(i), int(j), didx[coeff_lab])] = SparseVector(alg_space.dim, ent)
    return d, v


# ---------------------------------------------------------------------------
# report serialization


def violation_report_dict(rep: ViolationReport, space: SuperSpace | None = None) -> dict:
    def render(vec: SparseVector) -> dict:
        if space is not None and vec.dim == space.dim:
            return vector_dict(space, vec)
        return {str(i): scalar_str(c) for i, c in vec.items()}

    return {
        "identity": rep.identity_name,
        "passed": rep.passed,
        "checked": rep.checked_count,
        "violation_count": rep.total_violations,
        "violations": [
            {"index": list(idx), "lhs": render(lhs), "rhs": render(rhs)}
            for idx, lhs, rhs in rep.violations
        ],
    }


def certificate_dict(cert: GradingCertificate) -> dict:
    return {
        "is_graded": cert.is_graded,
        "root_count": cert.root_count,
        "zero_space_dim": cert.zero_space_dim,
        "failures": [{"condition": name, "detail": detail} for name, detail in cert.failures],
    }


def condition_report_dict(rep: ConditionReport, spaces: Mapping[str, SuperSpace] | None = None) -> dict:
    spaces = spaces or {}
    return {
        "passed": rep.passed,
        "conditions": {
            name: violation_report_dict(v, spaces.get(name))
            for name, v in sorted(rep.verdicts.items())
        },
    }


def decomposition_dict(dec: WeightDecomposition, space: SuperSpace) -> dict:
    weights = []
    for w in sorted(dec.weights):
        sub = dec.weights[w]
        weights.append(
            {
                "weight": [scalar_str(c) for c in w],
                "dim": sub.dim,
                "basis": [vector_dict(space, row) for row in sub.rows],
            }
        )
    return {
        "cartan_size": dec.cartan_size,
        "ambient_dim": dec.ambient_dim,
        "complete": dec.complete,
        "diagnostic": dec.diagnostic,
        "weight_count": len(weights),
        "weights": weights,
    }


def dump_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
