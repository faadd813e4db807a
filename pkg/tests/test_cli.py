import csv
import io
import json
import subprocess
import sys

import pytest

from depminer import __version__
from depminer.__main__ import build_parser, int_list, run
from depminer.mining.reporter import RULE_COLUMNS


def test_cli_smoke():
    result = subprocess.run(
        [sys.executable, "-m", "depminer", "--help"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "usage" in result.stdout.lower()
    for command in ("mine", "oracle", "check-axioms", "bounds"):
        assert command in result.stdout


def rows(text, delimiter=","):
    return list(csv.reader(io.StringIO(text), delimiter=delimiter))


class TestParser:
    def test_mine_defaults(self):
        args = build_parser().parse_args(["mine", "--data", "x.dat", "--top-k", "3"])
        assert args.measure == "chi2"
        assert args.mode == "pos"
        assert args.max_size == 3
        assert args.threads == 1
        assert args.format == "csv"
        assert args.log_base == "e"
        assert not args.no_negated_consequents
        assert args.row_sets == "bitmap"

    def test_int_list(self):
        assert int_list("20,50, 100") == [20, 50, 100]

    def test_version(self, capsys):
        assert run(["--version"]) == 0
        assert capsys.readouterr().out.strip() == f"depminer {__version__}"


class TestMine:
    def test_top_k(self, toy_fimi, capsys):
        assert run(["mine", "--data", str(toy_fimi), "--top-k", "2", "--max-size", "2"]) == 0
        captured = capsys.readouterr()
        table = rows(captured.out)
        assert table[0] == RULE_COLUMNS
        assert [(r[0], r[1], r[2]) for r in table[1:]] == [("1", "2", "1"), ("2", "1", "1")]
        assert table[1][-1] == "6.66666666667"
        assert "rules_emitted=2" in captured.err
        assert "nodes_generated=" in captured.err

    def test_csv_input_and_tsv_output(self, toy_csv, capsys):
        assert run(["mine", "--data", str(toy_csv), "--min-value", "3.84", "--format", "tsv"]) == 0
        table = rows(capsys.readouterr().out, delimiter="\t")
        assert table[0] == RULE_COLUMNS
        assert table[1][:3] == ["a", "x", "1"]

    def test_output_file_and_stats_json(self, toy_fimi, tmp_path, capsys):
        out = tmp_path / "rules.csv"
        stats = tmp_path / "stats.json"
        code = run(
            ["mine", "--data", str(toy_fimi), "--top-k", "5", "-o", str(out), "--stats-json", str(stats)]
        )
        assert code == 0
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "rules_emitted" not in captured.err
        assert len(rows(out.read_text())) == 6
        assert json.loads(stats.read_text())["rules_emitted"] == 5

    def test_threads_do_not_change_output(self, toy_fimi, capsys):
        base = ["mine", "--data", str(toy_fimi), "--min-value", "0.5", "--mode", "both", "--measure", "mi"]
        assert run(base) == 0
        serial = capsys.readouterr().out
        assert run(base + ["--threads", "4"]) == 0
        assert capsys.readouterr().out == serial

    def test_negated_consequent_restriction(self, toy_fimi, capsys):
        assert run(["mine", "--data", str(toy_fimi), "--top-k", "3", "--consequent", "!2"]) == 0
        table = rows(capsys.readouterr().out)[1:]
        assert table
        assert all(r[1] == "2" and r[2] == "0" for r in table)

    def test_no_negated_consequents(self, toy_fimi, capsys):
        assert run(["mine", "--data", str(toy_fimi), "--top-k", "50", "--no-negated-consequents"]) == 0
        assert all(r[2] == "1" for r in rows(capsys.readouterr().out)[1:])

    @pytest.mark.parametrize("data", ["toy_fimi", "toy_csv"])
    def test_row_set_representation_does_not_change_output(self, data, request, capsys):
        path = str(request.getfixturevalue(data))
        base = ["mine", "--data", path, "--min-value", "0.5", "--mode", "both", "--max-size", "3"]
        assert run(base) == 0
        bitmap = capsys.readouterr().out
        assert run(base + ["--row-sets", "tidlist"]) == 0
        assert capsys.readouterr().out == bitmap

    def test_log_base_two(self, toy_fimi, capsys):
        base = ["mine", "--data", str(toy_fimi), "--top-k", "1", "--measure", "mi"]
        run(base)
        nats = float(rows(capsys.readouterr().out)[1][-1])
        run(base + ["--log-base", "2"])
        bits = float(rows(capsys.readouterr().out)[1][-1])
        assert bits == pytest.approx(nats / 0.6931471805599453, rel=1e-9)


class TestExitCodes:
    def test_positive_only_measure_in_negative_mode(self, toy_fimi, capsys):
        assert run(["mine", "--data", str(toy_fimi), "--measure", "z1", "--mode", "neg", "--top-k", "5"]) == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err.strip() == "depminer: error: z1 does not support negative dependencies"

    @pytest.mark.parametrize(
        "goal",
        [["--min-value", "1", "--top-k", "3"], []],
        ids=["both", "neither"],
    )
    def test_goal_is_required_exactly_once(self, toy_fimi, capsys, goal):
        assert run(["mine", "--data", str(toy_fimi)] + goal) == 1
        assert capsys.readouterr().err.startswith("depminer: error:")

    def test_unknown_consequent(self, toy_fimi, capsys):
        assert run(["mine", "--data", str(toy_fimi), "--top-k", "1", "--consequent", "9"]) == 1
        assert "unknown consequent attribute" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert run(["mine", "--data", str(tmp_path / "missing.dat"), "--top-k", "1"]) == 2
        assert "No such file or directory" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.dat"
        path.write_text("1 2\n3 x\n")
        assert run(["mine", "--data", str(path), "--top-k", "1"]) == 2
        assert "line 2" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "name, raw, line",
        [("bad.dat", b"1 2\n\xff\xfe 3\n", 2), ("bad.csv", b"a,\xff\n1,0\n", 1)],
    )
    def test_undecodable_input(self, tmp_path, capsys, name, raw, line):
        path = tmp_path / name
        path.write_bytes(raw)
        assert run(["mine", "--data", str(path), "--top-k", "1"]) == 2
        err = capsys.readouterr().err
        assert err.startswith(f"depminer: error: line {line}: ")
        assert "not valid utf-8" in err

    def test_unknown_row_set_representation(self, toy_fimi, capsys):
        assert run(["mine", "--data", str(toy_fimi), "--top-k", "1", "--row-sets", "roaring"]) == 1

    def test_unknown_format(self, tmp_path, capsys):
        assert run(["mine", "--data", str(tmp_path / "data.txt"), "--top-k", "1"]) == 1
        assert "--input-format" in capsys.readouterr().err

    def test_unknown_command(self, capsys):
        assert run(["explain"]) == 1
        assert capsys.readouterr().err.startswith("depminer: error:")

    def test_invalid_log_level(self, toy_fimi, monkeypatch, capsys):
        monkeypatch.setenv("DEPMINER_LOG", "verbose")
        assert run(["mine", "--data", str(toy_fimi), "--top-k", "1"]) == 1
        assert "DEPMINER_LOG" in capsys.readouterr().err

    def test_oracle_guard_rail(self, toy_fimi, capsys):
        assert run(["oracle", "--data", str(toy_fimi), "--top-k", "1", "--max-size", "7"]) == 1
        assert "antecedent size 7" in capsys.readouterr().err


class TestOracle:
    def test_oracle_prints_rules(self, toy_fimi, capsys):
        assert run(["oracle", "--data", str(toy_fimi), "--top-k", "2"]) == 0
        table = rows(capsys.readouterr().out)
        assert table[0] == RULE_COLUMNS
        assert len(table) == 3

    def test_compare(self, toy_fimi, capsys):
        assert run(["oracle", "--data", str(toy_fimi), "--min-value", "1", "--mode", "both", "--compare"]) == 0
        out = capsys.readouterr().out
        assert "missing: 0" in out
        assert "verdict: pass" in out


class TestCheckAxioms:
    def test_table(self, capsys):
        assert run(["check-axioms", "--measure", "mi", "--n", "12,20"]) == 0
        out = capsys.readouterr().out
        assert "Axiom check: mi" in out
        assert "verdict: pass" in out

    def test_markdown_probe_and_csv(self, tmp_path, capsys):
        path = tmp_path / "violations.csv"
        code = run(
            ["check-axioms", "--measure", "j", "--n", "10", "--ma", "2,5", "--probe", "-o", "markdown", "--csv", str(path)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("# Axiom Check: j")
        assert "## Opposite-side probe" in out
        assert len(rows(path.read_text())) == 1

    def test_cap(self, capsys):
        assert run(["check-axioms", "--measure", "chi2", "--n", "500"]) == 1
        assert "verifier cap of 200" in capsys.readouterr().err

    def test_bad_n_list(self, capsys):
        assert run(["check-axioms", "--measure", "chi2", "--n", "a,b"]) == 1

    def test_consequent_counts_out_of_range(self, capsys):
        assert run(["check-axioms", "--measure", "chi2", "--n", "20", "--ma", "30,40"]) == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "none of the m_a values [30, 40]" in captured.err


class TestBounds:
    def test_print(self, capsys):
        assert run(["bounds", "--measure", "chi2", "--mx", "6", "--mxa", "2", "--ma", "5", "--n", "10"]) == 0
        out = capsys.readouterr().out
        assert "positive (best n_xa = 5)" in out
        assert "negative (best n_xa = 1)" in out

    def test_lattice_csv(self, tmp_path, capsys):
        path = tmp_path / "lattice.csv"
        code = run(
            ["bounds", "--measure", "z2", "--mx", "4", "--mxa", "4", "--ma", "5", "--n", "10", "--lattice-csv", str(path)]
        )
        assert code == 0
        assert "negative" not in capsys.readouterr().out
        assert len(rows(path.read_text())) == 35

    def test_inconsistent_counts(self, capsys):
        assert run(["bounds", "--measure", "chi2", "--mx", "4", "--mxa", "5", "--ma", "5", "--n", "10"]) == 1
        assert "inconsistent counts" in capsys.readouterr().err

    def test_leverage_instead_of_joint_count(self, capsys):
        assert run(["bounds", "--measure", "chi2", "--mx", "4", "--delta", "0.2", "--ma", "5", "--n", "10"]) == 0
        assert "at (4, 4, 5, 10)" in capsys.readouterr().out

    def test_non_integral_leverage(self, capsys):
        assert run(["bounds", "--measure", "chi2", "--mx", "4", "--delta", "0.33", "--ma", "5", "--n", "10"]) == 1
        assert "not an integer count" in capsys.readouterr().err

    @pytest.mark.parametrize("joint", [["--mxa", "4", "--delta", "0.2"], []], ids=["both", "neither"])
    def test_joint_count_given_exactly_once(self, capsys, joint):
        assert run(["bounds", "--measure", "chi2", "--mx", "4", "--ma", "5", "--n", "10"] + joint) == 1
        assert capsys.readouterr().err.startswith("depminer: error:")
