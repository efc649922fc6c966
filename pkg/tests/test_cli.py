import subprocess
import sys

import pytest

from ofdmim.cli import main

LINE_0000 = "+1.000000000000+0.000000000000j,+1.000000000000+0.000000000000j,0,0"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_map_golden(capsys):
    code, out, _ = run(capsys, "map", "--n", "4", "--k", "2", "--m-ary", "2", "--bits", "0000")
    assert code == 0
    assert out == LINE_0000 + "\n"


@pytest.mark.parametrize("backend", ["baseline", "pt", "lut"])
def test_map_backends_identical(capsys, backend):
    code, out, _ = run(capsys, "map", "--n", "8", "--k", "4", "--m-ary", "4", "--backend", backend, "--bits", "10101011001110")
    assert code == 0
    assert out.count(",") == 7
    assert out.strip().split(",").count("0") == 4
    ref = main(["map", "--n", "8", "--k", "4", "--m-ary", "4", "--bits", "10101011001110"])
    assert ref == 0 and capsys.readouterr().out == out


def test_map_wrong_length(capsys):
    code, out, err = run(capsys, "map", "--n", "4", "--k", "2", "--bits", "000")
    assert code == 3
    assert out == ""
    assert "4" in err


def test_map_domain_errors(capsys):
    assert run(capsys, "map", "--n", "4", "--k", "5", "--bits", "0")[0] == 3
    assert run(capsys, "map", "--n", "64", "--k", "32", "--backend", "lut", "--bits", "0" * 92)[0] == 3
    assert run(capsys, "map", "--n", "4", "--k", "2", "--m-ary", "8", "--bits", "000000")[0] == 3


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "map", "--n", "4")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "bench", "--backends", "fast")[0] == 2
    assert run(capsys, "bench", "--n-list", "8,x")[0] == 2


def test_demap_roundtrip(capsys):
    code, out, _ = run(capsys, "demap", "--n", "4", "--k", "2", "--m-ary", "2", f"--symbol={LINE_0000}")
    assert (code, out) == (0, "0000\n")
    code, line, _ = run(capsys, "map", "--n", "8", "--k", "4", "--m-ary", "4", "--bits", "11010011100101")
    code, out, _ = run(capsys, "demap", "--n", "8", "--k", "4", "--m-ary", "4", f"--symbol={line.strip()}")
    assert (code, out) == (0, "11010011100101\n")


def test_demap_bad_symbol(capsys):
    assert run(capsys, "demap", "--n", "4", "--k", "2", "--symbol=0,0,0,0")[0] == 3
    assert run(capsys, "demap", "--n", "4", "--k", "2", "--symbol=1,x,0,0")[0] == 3


def test_table_row(capsys):
    code, out, _ = run(capsys, "table", "--n", "8", "--k", "4", "--row", "6")
    assert code == 0
    assert out == "6,15,20,15\n"
    code, out, _ = run(capsys, "table", "--n", "5", "--k", "2")
    assert out.splitlines() == ["0,0", "1,0", "2,1", "3,3", "4,6"]
    assert run(capsys, "table", "--n", "5", "--k", "2", "--row", "5")[0] == 3


def test_bench_single_row(capsys):
    code, out, _ = run(capsys, "bench", "--n-list", "8", "--backends", "pt", "--m-ary-list", "2", "--trials", "10", "--seed", "7")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "n,k,m_ary,backend,trials,mean_map_time_s,throughput_bits_per_s,pt_entries,lut_entries"
    f = row.split(",")
    assert f[:5] == ["8", "4", "2", "pt", "10"]
    assert f[7:] == ["32", "64"]


def test_bench_lut_capped(capsys):
    code, out, _ = run(capsys, "bench", "--backends", "lut", "--n-list", "64", "--lut-cap", "16777216", "--trials", "1")
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert row[3] == "lut" and row[-1] == "NA"


def test_asymptotics(capsys):
    code, out, _ = run(capsys, "asymptotics", "--n-list", "4,64")
    assert code == 0
    rows = [r.split(",") for r in out.strip().splitlines()[1:]]
    assert [r[:3] for r in rows] == [["4", "2", "3.0"], ["64", "60", "61.0"]]
    assert float(rows[0][3]) == pytest.approx(2 / 3)
    assert float(rows[1][3]) == pytest.approx(60 / 61)


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "ofdmim", "map", "--n", "12", "--k", "6", "--m-ary", "4", "--bits", "1" * 21]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and a.count(",") == 11
    demap = subprocess.run(
        [sys.executable, "-m", "ofdmim", "demap", "--n", "12", "--k", "6", "--m-ary", "4"],
        input=a, capture_output=True, text=True, check=True,
    )
    assert demap.stdout == "1" * 21 + "\n"
