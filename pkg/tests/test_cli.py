import json
import subprocess
import sys

import jsonschema
import pytest

from almostabelian import cli
from almostabelian.cli import main
from almostabelian.model import ComplexModel
from almostabelian.partitions import Partition
from almostabelian.records import EXPORT_SCHEMA, ExportRecord, compact_equations
from almostabelian.model import structure_equations


def run_cli(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


class TestEnumerate:
    def test_dim_six(self, capsys):
        code, out, _ = run_cli(["enumerate", "--dim", "6"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 3
        ms = {line.split()[0] for line in lines}
        assert ms == {"m=[2,2,1]", "m=[3,2]", "m=[2,1,1,1]"}

    def test_dim_four(self, capsys):
        code, out, _ = run_cli(["enumerate", "--dim", "4"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1
        assert lines[0].startswith("m=[2,1] q=[1] j=2 eps=1 step=2")

    def test_odd_dim_usage_error(self, capsys):
        code, _, err = run_cli(["enumerate", "--dim", "3"], capsys)
        assert code == 1
        assert "even integer" in err

    def test_too_small(self, capsys):
        code, _, _ = run_cli(["enumerate", "--dim", "2"], capsys)
        assert code == 1

    def test_deterministic(self, capsys):
        _, first, _ = run_cli(["enumerate", "--dim", "8"], capsys)
        _, second, _ = run_cli(["enumerate", "--dim", "8"], capsys)
        assert first == second


class TestClassify:
    def test_no_structure(self, capsys):
        code, out, _ = run_cli(["classify", "--jordan", "3"], capsys)
        assert code == 2
        assert "no complex structure" in out

    def test_heisenberg(self, capsys):
        code, out, _ = run_cli(["classify", "--jordan", "2,1"], capsys)
        assert code == 0
        assert "q=[1] j=2" in out

    def test_three_two_any_order(self, capsys):
        code, out, _ = run_cli(["classify", "--jordan", "2,3"], capsys)
        assert code == 0
        assert "q=[2] j=3" in out

    def test_abelian_type(self, capsys):
        code, _, _ = run_cli(["classify", "--jordan", "1,1,1"], capsys)
        assert code == 2

    def test_even_sum_rejected(self, capsys):
        code, _, _ = run_cli(["classify", "--jordan", "2,2"], capsys)
        assert code == 1

    def test_parse_error(self, capsys):
        code, _, _ = run_cli(["classify", "--jordan", "2,x"], capsys)
        assert code == 1


class TestInvariants:
    def test_single_block_n2_text(self, capsys):
        code, out, _ = run_cli(["invariants", "--q", "2", "--j", "3"], capsys)
        assert code == 0
        assert "betti: 1 3 6 8 6 3 1" in out
        # h^{1,1} = 3 sits in row p=1, column q=1
        grid_lines = out.split("cols q=0..3):\n")[1].splitlines()
        assert grid_lines[1].split() == ["1", "3", "3", "1"]
        assert "symmetry=n/a" in out

    def test_heisenberg_plus_r3_json(self, capsys):
        code, out, _ = run_cli(
            ["invariants", "--q", "1,1", "--j", "2", "--format", "json"], capsys
        )
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, EXPORT_SCHEMA)
        assert data["hodge"][1][0] == 2
        assert data["hodge"][0][1] == 3
        assert data["source"] == "closed-form"
        assert data["checks"]["symmetry"] is None

    def test_symmetric_model_checks(self, capsys):
        code, out, _ = run_cli(
            ["invariants", "--q", "2,2", "--j", "1", "--format", "json"], capsys
        )
        assert code == 0
        data = json.loads(out)
        assert data["epsilon"] == 0
        assert data["checks"]["symmetry"] is True

    def test_oracle_source_agrees(self, capsys):
        code, closed_out, _ = run_cli(
            ["invariants", "--q", "1,1", "--j", "2", "--format", "json"], capsys
        )
        assert code == 0
        code, oracle_out, _ = run_cli(
            ["invariants", "--q", "1,1", "--j", "2", "--format", "json", "--oracle"], capsys
        )
        assert code == 0
        closed = json.loads(closed_out)
        oracle = json.loads(oracle_out)
        jsonschema.validate(oracle, EXPORT_SCHEMA)
        assert oracle["source"] == "oracle"
        assert oracle["betti"] == closed["betti"]
        assert oracle["hodge"] == closed["hodge"]

    def test_invalid_overlap(self, capsys):
        code, _, err = run_cli(["invariants", "--q", "2", "--j", "5"], capsys)
        assert code == 1
        assert "needs a part" in err

    def test_abelian_rejected(self, capsys):
        code, _, _ = run_cli(["invariants", "--q", "1,1", "--j", "1"], capsys)
        assert code == 1

    def test_output_flag(self, capsys, tmp_path):
        target = tmp_path / "record.json"
        code, out, _ = run_cli(
            ["invariants", "--q", "2", "--j", "3", "--format", "json", "--output", str(target)],
            capsys,
        )
        assert code == 0 and out == ""
        data = json.loads(target.read_text())
        jsonschema.validate(data, EXPORT_SCHEMA)

    def test_byte_determinism(self, capsys):
        args = ["invariants", "--q", "2,1", "--j", "2", "--format", "json"]
        _, first, _ = run_cli(args, capsys)
        _, second, _ = run_cli(args, capsys)
        assert first == second


class TestExport:
    def test_heisenberg_salamon(self, capsys):
        code, out, _ = run_cli(["export", "--q", "1", "--j", "2", "--format", "salamon"], capsys)
        assert code == 0
        assert out == "(0, 11b)\n"

    def test_chain_salamon(self, capsys):
        code, out, _ = run_cli(["export", "--q", "2", "--j", "1", "--format", "salamon"], capsys)
        assert code == 0
        assert out == "(0, 0, 12+1b2)\n"

    def test_json_round_trip(self, capsys):
        code, out, _ = run_cli(["export", "--q", "2", "--j", "3", "--format", "json"], capsys)
        assert code == 0
        data = json.loads(out)
        jsonschema.validate(data, EXPORT_SCHEMA)
        record = ExportRecord.from_json(out)
        model = record.model()
        assert model == ComplexModel(2, Partition([2]), 3)
        assert ExportRecord.for_model(model) == record
        assert record.to_json() == out

    def test_rules_content(self, capsys):
        code, out, _ = run_cli(["export", "--q", "1", "--j", "2", "--format", "json"], capsys)
        assert code == 0
        data = json.loads(out)
        eqs = {item["gen"]: item["d"] for item in data["equations"]}
        assert eqs["alpha"] == []
        assert eqs["beta0_1"] == [{"coef": 1, "factors": ["alpha", "alpha_bar"]}]

    def test_invalid_model(self, capsys):
        code, _, _ = run_cli(["export", "--q", "2", "--j", "5", "--format", "json"], capsys)
        assert code == 1


class TestVerify:
    def test_small_sweep_passes(self, capsys):
        code, out, _ = run_cli(["verify", "--max-dim", "6"], capsys)
        assert code == 0
        assert "result: PASS" in out
        assert "models checked: 4" in out
        assert "0 failed" in out and "failed" in out

    def test_dim8_model_count(self, capsys):
        code, out, _ = run_cli(["verify", "--max-dim", "8"], capsys)
        assert code == 0
        assert "models checked: 10" in out

    def test_usage_error(self, capsys):
        code, _, _ = run_cli(["verify", "--max-dim", "2"], capsys)
        assert code == 1

    def test_worker_pool_path_matches(self, capsys, monkeypatch):
        _, sequential, _ = run_cli(["verify", "--max-dim", "6"], capsys)
        monkeypatch.setattr(cli, "_worker_count", lambda: 2)
        _, pooled, _ = run_cli(["verify", "--max-dim", "6"], capsys)
        assert pooled == sequential

    def test_worker_env_cap(self, monkeypatch):
        monkeypatch.setenv(cli.WORKERS_ENV, "banana")
        assert cli._worker_count() == 1
        monkeypatch.setenv(cli.WORKERS_ENV, "0")
        assert cli._worker_count() == 1


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "almostabelian", "classify", "--jordan", "3,2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "q=[2] j=3" in proc.stdout

    def test_module_invocation_negative(self):
        proc = subprocess.run(
            [sys.executable, "-m", "almostabelian", "classify", "--jordan", "5"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2


class TestRecords:
    def test_compact_notation_two_digit_indices(self):
        q = Partition([5, 5])
        model = ComplexModel(10, q, 6)
        text = compact_equations(structure_equations(model))
        assert text.startswith("(0, 11b,")
        assert "(10)" in text or "(11)" in text

    def test_from_dict_defaults_source(self):
        model = ComplexModel(1, Partition([1]), 2)
        record = ExportRecord.for_model(model)
        data = record.to_dict()
        del data["source"]
        assert ExportRecord.from_dict(data).source == "closed-form"
