import csv
import io
import json
import math

import pytest

from eacount.cli import main
from eacount.ea import random_element, apply
from eacount.functions import FuncTable, make_rng, write_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_classes(capsys):
    code, out, _ = run(capsys, "count-classes", "--q", "2", "--n", "1", "--m", "1")
    assert code == 0
    assert "class_count: 2" in out.splitlines()


def test_count_classes_csv(capsys):
    code, out, _ = run(capsys, "count-classes", "--n", "2", "--m", "2", "--method", "conjugacy",
                       "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["q", "n", "m", "method", "gamma_order", "class_count", "naive_num",
                       "naive_den", "ratio_decimal"]
    assert rows[1][:6] == ["2", "2", "2", "conjugacy", "576", "5"]
    assert rows[1][8] == "11.25000000000000000000"


def test_bounds_grid(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "4", "--m", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 16
    last = rows[-1]
    assert (last["n"], last["m"]) == ("4", "4")
    exponent = float(last["ea_collision_bound"].removeprefix("2^"))
    assert math.isclose(exponent, math.log2(322560**2) - 64, abs_tol=1e-11)


def test_stab_sample_byte_identical(capsys):
    argv = ["stab-sample", "--q", "2", "--n", "2", "--m", "2", "--trials", "100", "--seed", "7"]
    first = run(capsys, *argv)
    second = run(capsys, *argv, "--threads", "4")
    assert first[0] == 0 and first[1] == second[1]


def test_json_output(capsys):
    code, out, _ = run(capsys, "collision", "--exact", "--n", "1", "--m", "1", "--format", "structured")
    doc = json.loads(out)
    assert doc["collision_prob"] == "1/2"


def test_collision_mc(capsys):
    code, out, _ = run(capsys, "collision", "--mc", "--n", "1", "--m", "1", "--trials", "500",
                       "--seed", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["trials"] == 500 and doc["exact"] == "1/2"


def test_files_and_checks(capsys, tmp_path):
    rng = make_rng(9)
    F = FuncTable(2, 1, 2, (0, 3))
    G = apply(random_element(rng, 2, 1, 2), F)
    write_table(F, tmp_path / "f.sbox.json")
    write_table(G, tmp_path / "g.sbox.json")
    code, out, _ = run(capsys, "ea-check", "--f", str(tmp_path / "f.sbox.json"),
                       "--g", str(tmp_path / "g.sbox.json"), "--format", "json")
    assert code == 0 and json.loads(out)["equivalent"] is True
    code, out, _ = run(capsys, "ccz-check", "--f", str(tmp_path / "f.sbox.json"),
                       "--g", str(tmp_path / "g.sbox.json"), "--format", "json")
    assert json.loads(out)["equivalent"] is True
    code, out, _ = run(capsys, "stabilizer", "--input", str(tmp_path / "f.sbox.json"), "--list")
    assert code == 0 and "stabilizer_size:" in out


def test_fix_count_flags_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "fix-count", "--n", "1", "--m", "2", "--Q", "0,1,1,0", "--oracle",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["fix_count"] == 4 == doc["bruteforce"]
    g = random_element(make_rng(4), 2, 2, 2)
    (tmp_path / "g.json").write_text(g.dumps())
    code, out, _ = run(capsys, "fix-count", "--element", str(tmp_path / "g.json"), "--oracle",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["fix_count"] == doc["bruteforce"]


def test_fix_count_all(capsys):
    code, out, _ = run(capsys, "fix-count-all", "--n", "2", "--m", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["elements"] == 576 and doc["oracle_mismatches"] == 0
    assert doc["bound_violations"] == 0 and doc["burnside_sum"] == 5 * 576


def test_other_subcommands(capsys):
    assert run(capsys, "group-order", "--n", "3", "--m", "3")[0] == 0
    code, out, _ = run(capsys, "orbit-census", "--n", "1", "--m", "1", "--format", "csv")
    assert out.splitlines() == ["orbit_id,size,stabilizer_size,representative_table",
                                "0,2,2,0 0", "1,2,2,1 0"]
    code, out, _ = run(capsys, "stab-census", "--n", "2", "--m", "1", "--format", "json")
    assert json.loads(out)["census_cross_check"] is True
    code, out, _ = run(capsys, "relative-error", "--n", "1", "--m", "1")
    assert "abs_ratio_minus_one: 1" in out


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--format", "csv")
    assert code == 0 and out.count("PASS") == 4


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "count-classes", "--n", "4", "--m", "4")[0] == 2
    assert run(capsys, "count-classes", "--bogus")[0] == 1
    assert run(capsys, "collision", "--mc", "--trials", "3")[0] == 1
    (tmp_path / "bad.json").write_text('{"q": 2, "n": 1, "m": 1, "table": [0]}')
    code, _, err = run(capsys, "stabilizer", "--input", str(tmp_path / "bad.json"))
    assert code == 1 and "table length" in err


def test_budget_flag(capsys):
    assert run(capsys, "count-classes", "--n", "2", "--m", "2", "--group-budget", "100")[0] == 2
    assert run(capsys, "count-classes", "--n", "2", "--m", "2")[0] == 0
