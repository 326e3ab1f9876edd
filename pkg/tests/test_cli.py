import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from zetaforge.algebra import QPoly, RatFn
from zetaforge.cli import main

from conftest import DATA

V = DATA / "varieties"
C = DATA / "covers"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_examples(capsys):
    assert run(capsys, "count", "--kind", "weil", "--variety", V / "p1.json", "--p", 3, "--m", 1,
               "--n", 1, "--no-cache")[:2] == (0, "4\n")
    assert run(capsys, "count", "--kind", "igusa", "--variety", V / "fat_point.json", "--p", 3,
               "--n", 1, "--no-cache")[:2] == (0, "3\n")
    assert run(capsys, "count", "--kind", "serre", "--variety", V / "fat_point.json", "--p", 3,
               "--n", 1, "--no-cache")[:2] == (0, "1\n")


def test_series_commands(capsys):
    code, out, _ = run(capsys, "zeta", "--variety", V / "p1.json", "--p", 2, "--no-cache")
    assert code == 0
    assert "rational: (1) / (1 - 3*T + 2*T^2)" in out and "shape: {(0,1), (1,1)}" in out
    assert out.startswith("0\t1/1\n1\t3/1\n2\t7/1\n")
    code, out, _ = run(capsys, "igusa", "--variety", V / "fat_point.json", "--p", 3, "--no-cache")
    assert code == 0 and "rational: (1 + 3*T) / (1 - 3*T^2)" in out and "shape: {(1,2)}" in out
    code, out, _ = run(capsys, "serre", "--variety", V / "fat_point.json", "--p", 3, "--no-cache")
    assert code == 0 and "rational: (1) / (1 - T)" in out and "shape: {(0,1)}" in out


def test_kapranov(capsys):
    code, out, _ = run(capsys, "kapranov", "--variety", V / "p1.json", "--q", 3, "--no-cache")
    assert code == 0 and "genus: 0" in out and "functional equation: holds" in out
    code, out, _ = run(capsys, "kapranov", "--variety", V / "elliptic.json", "--q", 5,
                       "--no-cache")
    assert code == 0 and "genus: 1" in out and "functional equation: holds" in out
    code, out, _ = run(capsys, "kapranov", "--variety", V / "two_points.json", "--q", 3,
                       "--no-cache")
    assert code == 2 and "mismatch" in out


def test_groth(capsys):
    code, out, _ = run(capsys, "groth", "--cover", C / "power3.json", "--spec", "count:7",
                       "--spec", "euler", "--spec", "hodge")
    assert code == 0
    assert out.splitlines() == ["table 1\tL - 1", "result\t(L - 1)/3", "count:7\t2",
                                "euler\t0", "hodge\t(uv - 1)/3"]
    code, out, _ = run(capsys, "groth", "--expr", "'Y' + L", "--spec", "count:4",
                       "--assign", "Y=3")
    assert code == 0 and "count:4\t7" in out
    code, _, err = run(capsys, "groth", "--expr", "'Y' + L", "--spec", "euler")
    assert code == 4 and "Y" in err


@pytest.mark.parametrize("argv, code", [
    (["count", "--kind", "weil", "--variety", "nope.json", "--p", "3", "--n", "1"], 4),
    (["count", "--kind", "weil", "--variety", V / "p1.json", "--p", "4", "--n", "1"], 4),
    (["count", "--kind", "igusa", "--variety", V / "p1.json", "--p", "3", "--n", "1"], 4),
    (["zeta", "--variety", V / "p1.json", "--q", "6"], 4),
    (["zeta", "--variety", V / "p1.json", "--p", "3", "--workers", "0"], 4),
    (["count", "--kind", "igusa", "--variety", V / "conic.json", "--p", "3", "--n", "1"], 4),
    (["count", "--kind", "weil", "--variety", V / "elliptic.json", "--p", "7", "--n", "3",
      "--budget", "100"], 3),
    (["serre", "--variety", V / "fat_point.json", "--p", "3", "--order", "3",
      "--stab-window", "13"], 3),
    (["zeta", "--variety", V / "fat_point.json", "--p", "3", "--order", "2"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert main([str(a) for a in argv] + ["--no-cache"]) == code


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "igusa", "--variety", V / "fat_point.json", "--p", 3, "--no-cache",
                       "--output", "json")
    rep = json.loads(out)
    assert code == 0
    assert [Fraction(c) for _, c in rep["series"]] == [1, 3, 3, 9, 9, 27, 27, 81, 81, 243, 243]
    f = RatFn(QPoly([int(c) for c in rep["ratfn"]["numer"]]),
              QPoly([int(c) for c in rep["ratfn"]["denom"]]))
    assert f == RatFn([1, 3], [1, 0, -3])
    assert rep["shape"] == [["1", "2"]] and rep["guard"] == "7"

    code, out, _ = run(capsys, "zeta", "--variety", V / "elliptic.json", "--q", 5, "--no-cache",
                       "--output", "json")
    rep = json.loads(out)
    assert [int(c) for c in rep["counts"]][:3] == [9, 27, 108]
    assert all(isinstance(c, str) for c in rep["counts"])


def test_workers_and_cache_give_identical_bytes(tmp_path, capsys):
    base = ["zeta", "--variety", V / "elliptic.json", "--q", 5, "--order", 5, "--output", "json"]
    outs = []
    for w in (1, 2, 7):
        outs.append(run(capsys, *base, "--workers", w, "--no-cache")[1])
    outs.append(run(capsys, *base, "--cache-dir", tmp_path)[1])
    outs.append(run(capsys, *base, "--cache-dir", tmp_path, "--workers", 7)[1])
    assert len(set(outs)) == 1
    assert list(tmp_path.iterdir())


def test_env_overrides_cache_dir(tmp_path):
    env = dict(os.environ, ZETAFORGE_CACHE=str(tmp_path / "envcache"))
    subprocess.run([sys.executable, "-m", "zetaforge", "count", "--kind", "igusa", "--variety",
                    str(V / "fat_point.json"), "--p", "3", "--n", "2",
                    "--cache-dir", str(tmp_path / "flag")],
                   env=env, check=True, capture_output=True)
    files = list((tmp_path / "envcache").iterdir())
    assert len(files) == 1 and files[0].name.endswith(".igusa.p3.tsv")
    assert not (tmp_path / "flag").exists()
    assert files[0].read_text().splitlines() == ["0\t1\t-", "1\t3\t-", "2\t3\t-"]
