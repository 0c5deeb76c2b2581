#!/usr/bin/env python3
"""Regenerate the shipped fixtures tree (algebra files, bundles, golden
reports).  Run from the repository root:

    python3 tools/gen_fixtures.py
"""

from __future__ import annotations

import sys
import warnings
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from loday import cli  # noqa: E402
from loday import io as lio  # noqa: E402
from loday.catalog import (  # noqa: E402
    differential_grassmann,
    double_dialgebra,
    field_dialgebra,
    grassmann,
    matrix_superalgebra,
    truncated_polynomials,
)
from loday.constructions import tensor_dialgebras, to_leibniz  # noqa: E402
from loday.matrix import NonUnitalCoefficients, build_gl, sl_algebra  # noqa: E402
from loday.models import build_canonical_model  # noqa: E402

FIX = ROOT / "fixtures"


def write_json(path: Path, doc) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(lio.dump_json(doc), encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def write_algebras() -> None:
    alg_dir = FIX / "algebras"
    entries = {
        "k.alg": field_dialgebra(),
        "m2_K.alg": matrix_superalgebra(2, 0),
        "m3_K.alg": matrix_superalgebra(3, 0),
        "grassmann1.alg": grassmann(1),
        "grassmann2.alg": grassmann(2),
        "diff_grassmann2.alg": differential_grassmann(2),
        "m2_diff.alg": tensor_dialgebras(matrix_superalgebra(2, 0), differential_grassmann(2)),
        "truncpoly3.alg": truncated_polynomials(3),
        "m2_double.alg": double_dialgebra(matrix_superalgebra(2, 0)),
    }
    entries["m2_diff_loday.alg"] = to_leibniz(entries["m2_diff.alg"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonUnitalCoefficients)
        entries["gl_1_1_K.alg"] = build_gl(1, 1, field_dialgebra())
        entries["gl_2_1_K.alg"] = build_gl(2, 1, field_dialgebra())
    entries["sl_2_1_K.alg"] = sl_algebra(2, 1).algebra
    for name, alg in entries.items():
        write_json(alg_dir / name, lio.serialize_algebra(alg))

    # one-dimensional abelian trivial summand for the kappa bundles
    write_json(
        alg_dir / "z1.alg",
        {
            "kind": "leibniz",
            "name": "Z",
            "basis": [{"label": "z", "parity": 0}],
            "products": {"bracket": []},
        },
    )


def write_vectors_and_maps() -> None:
    sl = sl_algebra(2, 1).algebra
    write_json(
        FIX / "vectors" / "sl_2_1_full.vectors.json",
        {"vectors": [{lab: "1"} for lab in sl.space.labels]},
    )
    write_json(
        FIX / "maps" / "grassmann2_d.map.json",
        {"columns": {"th1": {"th2": "1"}}},
    )
    size = 3
    entries = []
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if i != j:
                entries.append([i, j, "1", {f"E{i}{j}": "1"}])
    write_json(
        FIX / "maps" / "steinberg_sl21_K.map.json",
        {"dialgebra": "../algebras/k.alg", "entries": entries},
    )


def _table(m) -> list:
    return lio._map_table(m)


def write_bundles() -> None:
    bdir = FIX / "bundles"
    write_json(
        bdir / "model_a_grassmann2.json",
        {
            "kind": "sl-model",
            "p": 2,
            "q": 1,
            "coordinates": "../algebras/grassmann2.alg",
            "trivial": None,
        },
    )
    _, data = build_canonical_model(matrix_superalgebra(2, 0), 2, 1)
    write_json(FIX / "algebras" / "ad_m2.alg", lio.serialize_algebra(data.trivial_part))
    write_json(
        bdir / "model_a_m2.json",
        {
            "kind": "sl-model",
            "p": 2,
            "q": 1,
            "coordinates": "../algebras/m2_K.alg",
            "trivial": "../algebras/ad_m2.alg",
            "phi": _table(data.phi),
            "form": _table(data.form),
            "rho": _table(data.rho),
        },
    )
    write_json(
        bdir / "model_kappa_grassmann1.json",
        {
            "kind": "kappa-model",
            "carrier": {"sl": [2, 1]},
            "kappa": "supertrace",
            "coordinates": "../algebras/grassmann1.alg",
            "trivial": None,
        },
    )
    write_json(
        bdir / "model_kappa_central.json",
        {
            "kind": "kappa-model",
            "carrier": {"sl": [2, 1]},
            "kappa": "supertrace",
            "coordinates": "../algebras/truncpoly3.alg",
            "trivial": "../algebras/z1.alg",
            "phi": [],
            "form": [["t", "t", {"z": "1"}], ["t2", "1", {"z": "2"}]],
            "central": True,
        },
    )


GOLDEN_COMMANDS = [
    {
        "name": "check_leibniz_gl21",
        "argv": ["check", "leibniz", "fixtures/algebras/gl_2_1_K.alg", "--format", "structured"],
        "expect_exit": 0,
    },
    {
        "name": "check_leibniz_gl11_text",
        "argv": ["check", "leibniz", "fixtures/algebras/gl_1_1_K.alg", "--format", "text"],
        "expect_exit": 0,
    },
    {
        "name": "check_lie_m2_diff",
        "argv": [
            "check", "lie", "fixtures/algebras/m2_diff_loday.alg",
            "--format", "structured", "--max-violations", "3",
        ],
        "expect_exit": 1,
    },
    {
        "name": "check_ass_diff_grassmann2",
        "argv": ["check", "ass", "fixtures/algebras/diff_grassmann2.alg", "--format", "structured"],
        "expect_exit": 0,
    },
    {
        "name": "decompose_sl21",
        "argv": [
            "decompose", "fixtures/algebras/sl_2_1_K.alg", "--cartan", "h1,h2",
            "--format", "structured",
        ],
        "expect_exit": 0,
    },
    {
        "name": "grade_check_sl21",
        "argv": [
            "grade-check", "fixtures/algebras/sl_2_1_K.alg",
            "--subalg", "fixtures/vectors/sl_2_1_full.vectors.json",
            "--cartan", "h1,h2", "--format", "structured",
        ],
        "expect_exit": 0,
    },
    {
        "name": "conditions_thm41_grassmann2",
        "argv": [
            "conditions", "thm41", "fixtures/bundles/model_a_grassmann2.json",
            "--format", "structured",
        ],
        "expect_exit": 0,
    },
    {
        "name": "conditions_thm41_m2",
        "argv": ["conditions", "thm41", "fixtures/bundles/model_a_m2.json", "--format", "structured"],
        "expect_exit": 0,
    },
    {
        "name": "conditions_lemma51_central",
        "argv": [
            "conditions", "lemma51", "fixtures/bundles/model_kappa_central.json",
            "--format", "structured",
        ],
        "expect_exit": 0,
    },
    {
        "name": "steinberg_sl21",
        "argv": [
            "steinberg-check", "2", "1", "fixtures/algebras/sl_2_1_K.alg",
            "--map", "fixtures/maps/steinberg_sl21_K.map.json", "--format", "structured",
        ],
        "expect_exit": 0,
    },
    {
        "name": "build_gl11",
        "argv": ["build", "gl", "1", "1", "fixtures/algebras/k.alg"],
        "expect_exit": 0,
    },
    {
        "name": "build_tensor_m2_diff",
        "argv": [
            "build", "tensor", "fixtures/algebras/m2_K.alg",
            "fixtures/algebras/diff_grassmann2.alg",
        ],
        "expect_exit": 0,
    },
    {
        "name": "build_diff_grassmann2",
        "argv": [
            "build", "diff", "fixtures/algebras/grassmann2.alg",
            "fixtures/maps/grassmann2_d.map.json",
        ],
        "expect_exit": 0,
    },
    {
        "name": "build_model_kappa_grassmann1",
        "argv": ["build", "model-kappa", "fixtures/bundles/model_kappa_grassmann1.json"],
        "expect_exit": 0,
    },
    {
        "name": "build_canonical_grassmann2",
        "argv": ["build", "canonical", "2", "1", "fixtures/algebras/grassmann2.alg"],
        "expect_exit": 0,
    },
    {
        "name": "build_model_a_m2",
        "argv": ["build", "model-a", "fixtures/bundles/model_a_m2.json"],
        "expect_exit": 0,
    },
    {
        "name": "check_graded_m2_diff",
        "argv": ["check", "graded", "fixtures/algebras/m2_diff.alg", "--format", "structured"],
        "expect_exit": 0,
    },
]


def write_golden() -> None:
    gdir = FIX / "golden"
    gdir.mkdir(parents=True, exist_ok=True)
    manifest = []
    import os

    os.chdir(ROOT)
    for spec in GOLDEN_COMMANDS:
        ext = "txt" if "text" in spec["argv"] else "json"
        out = gdir / f"{spec['name']}.{ext}"
        argv = spec["argv"] + ["--canonical", "--out", str(out)]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code = cli.main(argv)
        if code != spec["expect_exit"]:
            raise SystemExit(
                f"{spec['name']}: exit {code}, expected {spec['expect_exit']}"
            )
        print(f"wrote {out.relative_to(ROOT)} (exit {code})")
        manifest.append(
            {
                "name": spec["name"],
                "argv": spec["argv"] + ["--canonical"],
                "expect_exit": spec["expect_exit"],
                "file": f"fixtures/golden/{spec['name']}.{ext}",
            }
        )
    write_json(gdir / "manifest.json", manifest)


def main() -> None:
    write_algebras()
    write_vectors_and_maps()
    write_bundles()
    write_golden()


if __name__ == "__main__":
    main()
