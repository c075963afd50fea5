import json
import os
import subprocess
import sys

import pytest

from vpvlab.cli import main

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "..", "src", "vpvlab",
                           "report_schema.json")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


class TestVerifyCommand:
    def test_single_entry_pass(self, capsys):
        code, out, _ = run_cli(["verify", "--id", "14.05", "--caps", "12"], capsys)
        assert code == 0
        report = json.loads(out.strip())
        assert report["id"] == "14.05" and report["verdict"] == "pass"

    def test_unknown_entry_is_config_error(self, capsys):
        code, _, err = run_cli(["verify", "--id", "bogus"], capsys)
        assert code == 2
        assert "unknown entry" in err

    def test_missing_selection_is_config_error(self, capsys):
        code, _, _ = run_cli(["verify"], capsys)
        assert code == 2

    def test_reports_validate_against_schema(self, capsys):
        if jsonschema is None:
            pytest.skip("jsonschema unavailable")
        code, out, _ = run_cli(
            ["verify", "--id", "13.02", "--id", "13.18"], capsys)
        assert code == 0
        with open(SCHEMA_PATH, encoding="utf-8") as handle:
            schema = json.load(handle)
        for line in out.strip().splitlines():
            jsonschema.validate(json.loads(line), schema)

    def test_failing_probe_gives_exit_one_when_selected(self, capsys):
        code, out, _ = run_cli(["verify", "--id", "16.57g-printed"], capsys)
        # probes are excluded from --all but explicit selection surfaces them
        report = json.loads(out.strip())
        assert report["verdict"] == "fail"
        assert code == 0  # expected == errata-probe, so it does not gate

    def test_csv_report_format(self, capsys):
        code, out, _ = run_cli(
            ["verify", "--id", "13.02", "--format", "csv"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("id,caps,mode,verdict")
        assert lines[1].startswith("13.02,8;8,exact,pass")

    def test_custom_identity_document(self, tmp_path, capsys):
        doc = {
            "id": "custom-quadrant",
            "mode": "exact",
            "caps": [4, 4],
            "lhs": {
                "region": {"arity": 2, "lower": [1, 1], "order": "none",
                           "coprime": True, "base_powers": None},
                "weight": {"sign": -1, "direction": -1, "powers": ["0", "-1"]},
                "mapping": [0, 1],
                "vars": ["y", "z"],
            },
            "rhs": {"op": "pow",
                    "base": {"op": "div_unit",
                             "num": {"op": "const", "value": "1"},
                             "den": {"op": "unit_binomial", "sign": -1,
                                     "scalar": "1", "exps": {"z": 1}}},
                    "exponent": {"op": "div_unit",
                                 "num": {"op": "mono", "exps": {"y": 1}},
                                 "den": {"op": "unit_binomial", "sign": -1,
                                         "scalar": "1", "exps": {"y": 1}}}},
        }
        path = tmp_path / "custom.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_cli(["verify", "--custom", str(path)], capsys)
        assert code == 0
        assert json.loads(out.strip())["verdict"] == "pass"

    def test_parallel_matches_sequential(self, tmp_path, capsys):
        ids = ["13.02", "13.03", "13.24", "14.02", "14.05", "16.57b"]
        args = ["verify"] + [x for i in ids for x in ("--id", i)]
        seq = tmp_path / "seq.jsonl"
        par = tmp_path / "par.jsonl"
        code1, _, _ = run_cli(args + ["--out", str(seq), "--jobs", "1"], capsys)
        code2, _, _ = run_cli(args + ["--out", str(par), "--jobs", "4"], capsys)
        assert code1 == code2 == 0

        def strip_timing(path):
            rows = []
            for line in path.read_text().splitlines():
                doc = json.loads(line)
                doc.pop("wall_time_s")
                rows.append(doc)
            return rows

        assert strip_timing(seq) == strip_timing(par)


class TestGridCommand:
    def test_club2_golden(self, tmp_path, capsys):
        out_path = tmp_path / "club2.csv"
        code, _, _ = run_cli(
            ["grid", "club2", "--caps", "8,8", "--out", str(out_path)], capsys)
        assert code == 0
        golden = open(os.path.join(GOLDEN, "club2_9x9.csv"),
                      encoding="utf-8").read()
        assert out_path.read_text() == golden

    def test_spade2_trivial(self, capsys):
        code, out, _ = run_cli(["grid", "spade2", "--caps", "0,0"], capsys)
        assert code == 0
        assert out.strip().splitlines()[1] == "0,1"

    def test_beta2_golden(self, tmp_path, capsys):
        out_path = tmp_path / "beta2.csv"
        code, _, _ = run_cli(
            ["grid", "beta2", "--caps", "13,13", "--out", str(out_path)], capsys)
        assert code == 0
        golden = open(os.path.join(GOLDEN, "beta2_13x13.csv"),
                      encoding="utf-8").read()
        assert out_path.read_text() == golden

    def test_weighted_grid_exact_rationals(self, capsys):
        code, out, _ = run_cli(["grid", "weighted-8.14", "--caps", "9,13"],
                               capsys)
        assert code == 0
        assert "-13/480" in out

    def test_unknown_grid(self, capsys):
        code, _, err = run_cli(["grid", "nope", "--caps", "4,4"], capsys)
        assert code == 2
        assert "unknown grid" in err

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            ["grid", "spade2", "--caps", "2,2", "--format", "json"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["axes"] == ["y", "z"]
        assert {"e": [1, 1], "v": "2"} in doc["cells"]


class TestExpandCommand:
    def test_entry_rhs(self, capsys):
        code, out, _ = run_cli(
            ["expand", "--entry", "13.02", "--side", "rhs", "--caps", "4,4"],
            capsys)
        assert code == 0
        doc = json.loads(out)
        assert {"e": [2, 3], "n": "5", "d": "6"} in doc["terms"]

    def test_constant_expansion(self, tmp_path, capsys):
        spec = {"vars": ["z"], "caps": [3],
                "rhs": {"op": "const", "value": "1"}}
        path = tmp_path / "one.json"
        path.write_text(json.dumps(spec))
        code, out, _ = run_cli(["expand", "--spec", str(path)], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["terms"] == [{"e": [0], "n": "1", "d": "1"}]

    def test_approx_diagonal_entry(self, capsys):
        code, out, _ = run_cli(
            ["expand", "--entry", "13.18", "--side", "lhs", "--caps", "4"],
            capsys)
        assert code == 0
        doc = json.loads(out)
        coeff = {tuple(t["e"]): t["v"] for t in doc["terms"]}
        assert coeff[(3,)] == pytest.approx(2 ** 0.5, abs=1e-9)

    def test_custom_product_spec(self, tmp_path, capsys):
        spec = {
            "lhs": {
                "region": {"arity": 2, "lower": [1, 1], "order": "none",
                           "coprime": True, "base_powers": None},
                "weight": {"sign": -1, "direction": -1, "powers": ["0", "-1"]},
                "mapping": [0, 1],
                "vars": ["y", "z"],
            },
            "caps": [3, 3],
        }
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        code, out, _ = run_cli(["expand", "--spec", str(path)], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["vars"] == ["y", "z"]

    def test_missing_input_is_config_error(self, capsys):
        code, _, _ = run_cli(["expand"], capsys)
        assert code == 2


class TestInstalledEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "vpvlab", "verify", "--id", "11.06a"],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0
        assert json.loads(proc.stdout.strip())["verdict"] == "pass"

    def test_env_var_jobs(self):
        env = dict(os.environ, VPV_LAB_JOBS="2")
        proc = subprocess.run(
            [sys.executable, "-m", "vpvlab", "verify", "--id", "13.02",
             "--id", "13.03"],
            capture_output=True, text=True, timeout=240, env=env)
        assert proc.returncode == 0
        lines = proc.stdout.strip().splitlines()
        assert [json.loads(line)["id"] for line in lines] == ["13.02", "13.03"]
