"""File formats, CLI behaviour, determinism against the golden tree."""

import json
import warnings
from pathlib import Path

import pytest

from loday import cli
from loday import io as lio
from loday.catalog import grassmann, matrix_superalgebra
from loday.core import LeibnizSuperalgebra, SuperDialgebra

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


def run_cli(argv, tmp_path, name="out"):
    out = tmp_path / name
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        code = cli.main([str(a) for a in argv] + ["--out", str(out)])
    return code, out.read_text(encoding="utf-8") if out.exists() else None


class TestParsing:
    def test_roundtrip_dialgebra(self, tmp_path):
        d = grassmann(2)
        doc = lio.serialize_algebra(d)
        path = tmp_path / "gr2.alg"
        path.write_text(lio.dump_json(doc), encoding="utf-8")
        loaded = lio.parse_algebra(path)
        assert isinstance(loaded, SuperDialgebra)
        assert loaded.left.constants == d.left.constants
        assert loaded.right.constants == d.right.constants
        assert loaded.bar_unit == d.bar_unit

    def test_matrix_unit_roundtrip(self, tmp_path):
        d = matrix_superalgebra(2, 0)
        path = tmp_path / "m2.alg"
        path.write_text(lio.dump_json(lio.serialize_algebra(d)), encoding="utf-8")
        loaded = lio.parse_algebra(path)
        assert loaded.bar_unit == d.bar_unit

    def test_one_dimensional_even_loads(self, tmp_path):
        path = tmp_path / "triv.alg"
        path.write_text(
            json.dumps(
                {
                    "kind": "leibniz",
                    "name": "triv",
                    "basis": [{"label": "e", "parity": 0}],
                    "products": {"bracket": []},
                }
            ),
            encoding="utf-8",
        )
        alg = lio.parse_algebra(path)
        assert isinstance(alg, LeibnizSuperalgebra)
        assert alg.dim == 1

    def test_zero_denominator_rejected(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text(
            json.dumps(
                {
                    "kind": "leibniz",
                    "name": "bad",
                    "basis": [{"label": "e", "parity": 0}],
                    "products": {"bracket": [["e", "e", {"e": "1/0"}]]},
                }
            ),
            encoding="utf-8",
        )
        with pytest.raises(lio.ParseError):
            lio.parse_algebra(path)

    def test_float_scalar_rejected(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text(
            json.dumps(
                {
                    "kind": "leibniz",
                    "name": "bad",
                    "basis": [{"label": "e", "parity": 0}],
                    "products": {"bracket": [["e", "e", {"e": "1.5"}]]},
                }
            ),
            encoding="utf-8",
        )
        with pytest.raises(lio.ParseError):
            lio.parse_algebra(path)

    def test_duplicate_label_rejected(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text(
            json.dumps(
                {
                    "kind": "leibniz",
                    "name": "bad",
                    "basis": [{"label": "e", "parity": 0}, {"label": "e", "parity": 1}],
                    "products": {"bracket": []},
                }
            ),
            encoding="utf-8",
        )
        with pytest.raises(lio.ParseError):
            lio.parse_algebra(path)

    def test_unknown_label_rejected(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text(
            json.dumps(
                {
                    "kind": "leibniz",
                    "name": "bad",
                    "basis": [{"label": "e", "parity": 0}],
                    "products": {"bracket": [["e", "x", {"e": "1"}]]},
                }
            ),
            encoding="utf-8",
        )
        with pytest.raises(lio.ParseError):
            lio.parse_algebra(path)

    def test_json_position_in_errors(self, tmp_path):
        path = tmp_path / "bad.alg"
        path.write_text('{"kind": "leibniz",', encoding="utf-8")
        with pytest.raises(lio.ParseError) as err:
            lio.parse_algebra(path)
        assert "line" in str(err.value)

    def test_ungraded_product_warns(self, tmp_path):
        path = tmp_path / "warn.alg"
        path.write_text(
            json.dumps(
                {
                    "kind": "leibniz",
                    "name": "warn",
                    "basis": [{"label": "x", "parity": 0}, {"label": "y", "parity": 1}],
                    "products": {"bracket": [["x", "x", {"y": "1"}]]},
                }
            ),
            encoding="utf-8",
        )
        with pytest.warns(lio.GradingWarning):
            lio.parse_algebra(path)


class TestCliBehaviour:
    def test_check_leibniz_pass(self, tmp_path):
        code, _ = run_cli(
            ["check", "leibniz", FIX / "algebras" / "gl_2_1_K.alg"], tmp_path
        )
        assert code == 0

    def test_check_lie_failure_exit_code(self, tmp_path):
        code, text = run_cli(
            ["check", "lie", FIX / "algebras" / "m2_diff_loday.alg"], tmp_path
        )
        assert code == 1
        assert "violations" in text

    def test_missing_unit_is_an_error(self, tmp_path):
        code, _ = run_cli(
            ["check", "barunit", FIX / "algebras" / "diff_grassmann2.alg"], tmp_path
        )
        assert code == 2

    def test_barunit_pass(self, tmp_path):
        code, _ = run_cli(
            ["check", "barunit", FIX / "algebras" / "grassmann2.alg"], tmp_path
        )
        assert code == 0

    def test_unknown_subcommand_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code != 0

    def test_build_sl_emits_loadable_file(self, tmp_path):
        code, text = run_cli(
            ["build", "sl", "2", "1", FIX / "algebras" / "grassmann2.alg"], tmp_path
        )
        assert code == 0
        path = tmp_path / "sl.alg"
        path.write_text(text, encoding="utf-8")
        alg = lio.parse_algebra(path)
        assert alg.dim == 32
        code, _ = run_cli(["check", "leibniz", path], tmp_path, "out2")
        assert code == 0

    def test_build_model_a_bundle(self, tmp_path):
        code, text = run_cli(
            ["build", "model-a", FIX / "bundles" / "model_a_m2.json"], tmp_path
        )
        assert code == 0
        path = tmp_path / "model.alg"
        path.write_text(text, encoding="utf-8")
        code, _ = run_cli(["check", "leibniz", path], tmp_path, "out2")
        assert code == 0

    def test_conditions_lemma51_kappa_default(self, tmp_path):
        code, _ = run_cli(
            ["conditions", "lemma51", FIX / "bundles" / "model_kappa_grassmann1.json"],
            tmp_path,
        )
        assert code == 0

    def test_decompose_reports_weights(self, tmp_path):
        code, text = run_cli(
            [
                "decompose",
                FIX / "algebras" / "sl_2_1_K.alg",
                "--cartan",
                "h1,h2",
                "--format",
                "structured",
                "--canonical",
            ],
            tmp_path,
        )
        assert code == 0
        doc = json.loads(text)
        nonzero = [w for w in doc["report"]["weights"] if any(c != "0" for c in w["weight"])]
        assert len(nonzero) == 6


class TestGoldenDeterminism:
    def _manifest(self):
        return json.loads((FIX / "golden" / "manifest.json").read_text(encoding="utf-8"))

    @pytest.mark.parametrize("workers", ["1", "8"])
    def test_byte_identical_outputs(self, tmp_path, workers, monkeypatch):
        monkeypatch.chdir(ROOT)
        for spec in self._manifest():
            out = tmp_path / f"{spec['name']}.{workers}"
            argv = spec["argv"] + ["--parallel", workers, "--out", str(out)]
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                code = cli.main(argv)
            assert code == spec["expect_exit"], spec["name"]
            golden = (ROOT / spec["file"]).read_bytes()
            assert out.read_bytes() == golden, spec["name"]
