"""Batch front door: load algebra files, run checkers and builders, emit
deterministic reports.

Exit codes: 0 = pass, 1 = a checker reported failures, 2 = bad input or an
internal error.  With --canonical the volatile timing field is omitted, so
two runs on the same inputs are byte-identical regardless of --parallel.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import io as lio
from .checks import (
    check_ass,
    check_bar_unit,
    check_graded,
    check_leibniz,
    is_lie,
)
from .constructions import differential_dialgebra, tensor_dialgebras
from .core import AlgebraError, LeibnizSuperalgebra, SuperDialgebra, merge_reports
from .linalg import LinalgError
from .matrix import build_gl, build_sl, check_steinberg_relations
from .models import (
    build_canonical_model,
    build_kappa_model,
    build_sl_model,
    check_kappa_conditions,
    check_sl_model_conditions,
)
from .weights import check_delta_graded, weight_decomposition


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", metavar="PATH", help="write the report to a file instead of stdout")
    parser.add_argument(
        "--format", choices=("text", "structured"), default="text", help="report format"
    )
    parser.add_argument(
        "--max-violations", type=int, default=100, metavar="N", help="cap stored violations"
    )
    parser.add_argument(
        "--parallel",
        type=int,
        default=0,
        metavar="N",
        help="worker threads for checkers (default: all cores)",
    )
    parser.add_argument(
        "--canonical",
        action="store_true",
        help="omit timing so identical inputs give byte-identical output",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loday",
        description="structure-constant checks and constructions for super "
        "dialgebras and Leibniz superalgebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run an axiom or identity checker")
    p_check.add_argument(
        "what", choices=("ass", "leibniz", "lie", "graded", "barunit"), help="which identity"
    )
    p_check.add_argument("file", help="algebra definition file")
    _common_flags(p_check)

    p_build = sub.add_parser("build", help="construct an algebra and print its definition")
    bsub = p_build.add_subparsers(dest="what", required=True)
    for name, args in (
        ("gl", ["m", "n", "file"]),
        ("sl", ["m", "n", "file"]),
        ("diff", ["file", "dmap"]),
        ("tensor", ["file", "file2"]),
        ("canonical", ["p", "q", "file"]),
        ("model-a", ["bundle"]),
        ("model-kappa", ["bundle"]),
    ):
        bp = bsub.add_parser(name)
        for a in args:
            if a in ("m", "n", "p", "q"):
                bp.add_argument(a, type=int)
            else:
                bp.add_argument(a)
        _common_flags(bp)

    p_dec = sub.add_parser("decompose", help="weight decomposition along a Cartan family")
    p_dec.add_argument("file")
    p_dec.add_argument("--cartan", required=True, help="comma-separated basis labels")
    _common_flags(p_dec)

    p_grade = sub.add_parser("grade-check", help="root-grading certificate")
    p_grade.add_argument("file")
    p_grade.add_argument("--subalg", required=True, help="vectors file spanning the subalgebra")
    p_grade.add_argument("--cartan", required=True, help="comma-separated basis labels")
    _common_flags(p_grade)

    p_cond = sub.add_parser("conditions", help="model condition suites")
    p_cond.add_argument("which", choices=("thm41", "lemma51"))
    p_cond.add_argument("bundle")
    _common_flags(p_cond)

    p_st = sub.add_parser("steinberg-check", help="elementary generator relations")
    p_st.add_argument("m", type=int)
    p_st.add_argument("n", type=int)
    p_st.add_argument("file")
    p_st.add_argument("--map", required=True, dest="map_file", help="generator map file")
    _common_flags(p_st)

    return parser


def _workers(args) -> int:
    return args.parallel if args.parallel and args.parallel > 0 else (os.cpu_count() or 1)


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_violation_report(rep_dict: dict) -> str:
    lines = [
        f"identity: {rep_dict['identity']}",
        f"checked: {rep_dict['checked']}",
        f"violations: {rep_dict['violation_count']}",
    ]
    for v in rep_dict["violations"]:
        idx = ",".join(str(x) for x in v["index"])
        lhs = " ".join(f"{k}:{c}" for k, c in sorted(v["lhs"].items())) or "0"
        rhs = " ".join(f"{k}:{c}" for k, c in sorted(v["rhs"].items())) or "0"
        lines.append(f"  at ({idx}): lhs = {lhs} | rhs = {rhs}")
    return "\n".join(lines) + "\n"


def _render_generic(doc, indent=0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        out = []
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)):
                out.append(f"{pad}{k}:")
                out.append(_render_generic(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {v}")
        return "\n".join(out)
    if isinstance(doc, list):
        out = []
        for v in doc:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                out.append(_render_generic(v, indent + 1))
            else:
                out.append(f"{pad}- {v}")
        return "\n".join(out) if out else f"{pad}(empty)"
    return f"{pad}{doc}"


def _finish(args, status: str, report_doc: dict, started: float, text_body: str | None = None) -> int:
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if args.format == "structured":
        envelope = {"status": status, "report": report_doc}
        if not args.canonical:
            envelope["timing_ms"] = round(elapsed_ms, 3)
        _emit(args, lio.dump_json(envelope))
    else:
        body = text_body if text_body is not None else _render_generic(report_doc) + "\n"
        head = f"status: {status}\n"
        tail = "" if args.canonical else f"timing_ms: {elapsed_ms:.3f}\n"
        _emit(args, head + body + tail)
    return 0 if status == "pass" else 1


def _need_dialgebra(alg, where: str) -> SuperDialgebra:
    if not isinstance(alg, SuperDialgebra):
        raise AlgebraError(f"{where}: a dialgebra definition is required")
    return alg


def _need_leibniz(alg, where: str) -> LeibnizSuperalgebra:
    if not isinstance(alg, LeibnizSuperalgebra):
        raise AlgebraError(f"{where}: a Leibniz algebra definition is required")
    return alg


def _cmd_check(args) -> int:
    started = time.perf_counter()
    alg = lio.parse_algebra(args.file)
    workers = _workers(args)
    cap = args.max_violations
    if args.what == "ass":
        rep = check_ass(_need_dialgebra(alg, args.file), cap, workers)
    elif args.what == "leibniz":
        rep = check_leibniz(_need_leibniz(alg, args.file), cap, workers)
    elif args.what == "lie":
        rep = is_lie(_need_leibniz(alg, args.file), cap, workers)
    elif args.what == "barunit":
        rep = check_bar_unit(_need_dialgebra(alg, args.file), cap, workers)
    else:  # graded
        if isinstance(alg, SuperDialgebra):
            rep = merge_reports(
                "graded",
                [check_graded(alg.left, 0, cap, workers), check_graded(alg.right, 0, cap, workers)],
            )
        else:
            rep = check_graded(alg.bracket, 0, cap, workers)
    doc = lio.violation_report_dict(rep, alg.space)
    status = "pass" if rep.passed else "fail"
    return _finish(args, status, doc, started, _render_violation_report(doc))


def _cmd_build(args) -> int:
    if args.what == "gl":
        alg = build_gl(args.m, args.n, _need_dialgebra(lio.parse_algebra(args.file), args.file))
        doc = lio.serialize_algebra(alg)
    elif args.what == "sl":
        built = build_sl(args.m, args.n, _need_dialgebra(lio.parse_algebra(args.file), args.file))
        doc = lio.serialize_algebra(built.algebra)
    elif args.what == "diff":
        base = _need_dialgebra(lio.parse_algebra(args.file), args.file)
        dmap = lio.parse_linear_map(args.dmap, base.space)
        doc = lio.serialize_algebra(differential_dialgebra(base, dmap))
    elif args.what == "tensor":
        t = tensor_dialgebras(
            _need_dialgebra(lio.parse_algebra(args.file), args.file),
            _need_dialgebra(lio.parse_algebra(args.file2), args.file2),
        )
        doc = lio.serialize_algebra(t)
    elif args.what == "canonical":
        model, _ = build_canonical_model(
            _need_dialgebra(lio.parse_algebra(args.file), args.file), args.p, args.q
        )
        doc = lio.serialize_algebra(model)
    elif args.what == "model-a":
        doc = lio.serialize_algebra(build_sl_model(lio.load_sl_model_bundle(args.bundle)))
    else:  # model-kappa
        doc = lio.serialize_algebra(build_kappa_model(lio.load_kappa_model_bundle(args.bundle)))
    _emit(args, lio.dump_json(doc))
    return 0


def _cartan_vectors(alg, labels_arg: str):
    from .core import basis_vector

    return [basis_vector(alg.space, lab.strip()) for lab in labels_arg.split(",") if lab.strip()]


def _cmd_decompose(args) -> int:
    started = time.perf_counter()
    alg = _need_leibniz(lio.parse_algebra(args.file), args.file)
    cartan = _cartan_vectors(alg, args.cartan)
    dec = weight_decomposition(alg, cartan)
    doc = lio.decomposition_dict(dec, alg.space)
    return _finish(args, "pass" if dec.complete else "fail", doc, started)


def _cmd_grade_check(args) -> int:
    started = time.perf_counter()
    alg = _need_leibniz(lio.parse_algebra(args.file), args.file)
    from .linalg import row_reduce

    vectors = lio.parse_vectors(args.subalg, alg.space)
    sub = row_reduce(vectors, alg.dim)
    cartan = _cartan_vectors(alg, args.cartan)
    cert = check_delta_graded(alg, sub, cartan, args.max_violations)
    doc = lio.certificate_dict(cert)
    return _finish(args, "pass" if cert.is_graded else "fail", doc, started)


def _cmd_conditions(args) -> int:
    started = time.perf_counter()
    if args.which == "thm41":
        data = lio.load_sl_model_bundle(args.bundle)
        rep = check_sl_model_conditions(data, args.max_violations)
    else:
        data = lio.load_kappa_model_bundle(args.bundle)
        rep = check_kappa_conditions(data, args.max_violations)
    doc = lio.condition_report_dict(rep)
    return _finish(args, "pass" if rep.passed else "fail", doc, started)


def _cmd_steinberg(args) -> int:
    started = time.perf_counter()
    alg = _need_leibniz(lio.parse_algebra(args.file), args.file)
    d, v = lio.parse_generator_map(args.map_file, alg.space)
    rep = check_steinberg_relations(
        alg, v, args.m, args.n, d, args.max_violations, _workers(args)
    )
    doc = lio.violation_report_dict(rep, alg.space)
    return _finish(args, "pass" if rep.passed else "fail", doc, started, _render_violation_report(doc))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "build":
            return _cmd_build(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        if args.command == "grade-check":
            return _cmd_grade_check(args)
        if args.command == "conditions":
            return _cmd_conditions(args)
        if args.command == "steinberg-check":
            return _cmd_steinberg(args)
        parser.error(f"unknown command {args.command!r}")
    except (AlgebraError, LinalgError, lio.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
