import csv
import io
import subprocess
import sys

import pytest

from cliquecover import cli
from cliquecover.cover import is_cover, read_cover
from cliquecover.graph import read_edge_list

from .conftest import G6_EDGES

NON_TIMING = ["instance", "status", "algorithm", "policy", "n", "m", "d", "cover_size", "nontrivial_size",
              "weight", "ccs_max", "ccs_tsi", "nodes", "k_found"]


@pytest.fixture
def g6_file(tmp_path):
    p = tmp_path / "g6.txt"
    p.write_text("".join(f"{u} {v}\n" for u, v in G6_EDGES))
    return p


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("algo", ["basic", "ccsg", "ccsd", "cfpt", "mfpt", "amin", "oracle"])
def test_cover_every_algorithm(g6_file, tmp_path, capsys, algo):
    out = tmp_path / "c.txt"
    assert cli.main(["cover", str(g6_file), "--algo", algo, "--out", str(out)]) == cli.EXIT_OK
    g = read_edge_list(g6_file)
    assert is_cover(g, read_cover(out, g))
    row = rows(capsys.readouterr().out)[0]
    assert row["status"] == "OK" and row["algorithm"] == algo and row["d"] == "3"
    if algo in ("cfpt", "mfpt", "oracle", "amin", "ccsg"):
        assert row["cover_size"] == "3"


def test_cover_ccsd_stats_file(g6_file, tmp_path):
    stats = tmp_path / "runs.csv"
    for _ in range(2):
        cli.main(["cover", str(g6_file), "--algo", "ccsd", "--stats", str(stats)])
    got = rows(stats.read_text())
    assert len(got) == 2
    assert int(got[0]["cover_size"]) <= 4 and got[0]["d"] == "3"


def test_cover_mfpt_header(g6_file, tmp_path):
    out = tmp_path / "c.txt"
    cli.main(["cover", str(g6_file), "--algo", "mfpt", "--out", str(out)])
    assert out.read_text().splitlines()[0] == "# cliques=3 weight=10"


def test_decision_mode(g6_file, capsys):
    assert cli.main(["cover", str(g6_file), "--algo", "cfpt", "--k", "2"]) == cli.EXIT_NONE
    assert rows(capsys.readouterr().out)[0]["status"] == "NONE"
    assert cli.main(["cover", str(g6_file), "--algo", "mfpt", "--k", "3"]) == cli.EXIT_OK


def test_empty_file(tmp_path):
    g = tmp_path / "empty.txt"
    g.write_text("")
    out = tmp_path / "c.txt"
    assert cli.main(["cover", str(g), "--algo", "mfpt", "--out", str(out)]) == cli.EXIT_OK
    assert out.read_text() == "# cliques=0 weight=0\n"


def test_invalid_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n2 two\n")
    assert cli.main(["cover", str(bad)]) == cli.EXIT_INVALID
    assert "non-integer" in capsys.readouterr().err
    assert cli.main(["cover", str(tmp_path / "missing.txt")]) == cli.EXIT_INVALID


def test_unknown_algorithm(g6_file):
    assert cli.main(["cover", str(g6_file), "--algo", "gfpt"]) == cli.EXIT_INVALID


def test_timeout_exit(g6_file, capsys):
    assert cli.main(["cover", str(g6_file), "--algo", "mfpt", "--time-limit-ms", "0"]) == cli.EXIT_TIMEOUT
    assert rows(capsys.readouterr().out)[0]["status"] == "TIMEOUT"


def test_gen_reproducible(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    cli.main(["gen", "--n", "30", "--p", "0.2", "--seed", "4", "--out", str(a)])
    cli.main(["gen", "--n", "30", "--p", "0.2", "--seed", "4", "--out", str(b)])
    assert a.read_text() == b.read_text()
    assert a.read_text().startswith("# G(n=30, p=0.2) seed=4")


def test_verify(g6_file, tmp_path, capsys):
    good = tmp_path / "good.txt"
    good.write_text("# cliques=3 weight=10\n1 3 5\n2 3 4\n3 4 5 6\n")
    assert cli.main(["verify", str(g6_file), str(good)]) == cli.EXIT_OK
    partial = tmp_path / "partial.txt"
    partial.write_text("1 3 5\n2 3 4\n")
    assert cli.main(["verify", str(g6_file), str(partial)]) == cli.EXIT_NONE
    broken = tmp_path / "broken.txt"
    broken.write_text("1 2 3\n")
    assert cli.main(["verify", str(g6_file), str(broken)]) == cli.EXIT_INVALID
    assert "non-edge (1, 2)" in capsys.readouterr().err


def test_stats(g6_file, tmp_path, capsys):
    tree = tmp_path / "tree.txt"
    tree.write_text("1 2\n2 3\n")
    cli.main(["stats", str(g6_file), str(tree)])
    got = rows(capsys.readouterr().out)
    assert got[0] == {"graph": "g6.txt", "n": "6", "m": "10", "d": "3", "max_degree": "5", "trivial": "0"}
    assert got[1]["trivial"] == "2"


def test_cliques_listing(g6_file, capsys):
    cli.main(["cliques", str(g6_file)])
    assert capsys.readouterr().out.splitlines() == ["1 3 5", "2 3 4", "3 4 5 6"]


def test_hidden_oracle(g6_file, capsys):
    assert "oracle" not in cli.build_parser().format_help()
    cli.main(["oracle", str(g6_file), "--weight"])
    assert capsys.readouterr().out.strip() == "min_size=3 min_weight=10"


def test_ensemble_agreement_with_oracle(tmp_path):
    out = tmp_path / "runs.csv"
    cli.main(["ensemble", "--n", "10", "--p", "0.4", "--count", "50", "--seed", "100",
              "--algo", "cfpt,mfpt,oracle", "--baseline", "oracle", "--out", str(out)])
    got = rows(out.read_text())
    assert len(got) == 150
    by = {}
    for r in got:
        by.setdefault(r["instance"], {})[r["algorithm"]] = r["cover_size"]
    assert all(len(set(v.values())) == 1 for v in by.values())
    summary = rows((tmp_path / "runs_summary.csv").read_text())
    agree = {r["algorithm"]: float(r["value"]) for r in summary if r["metric"] == "size_agreement"}
    assert agree == {"cfpt": 1.0, "mfpt": 1.0}


def test_ensemble_greedy_ratio(tmp_path):
    out = tmp_path / "runs.csv"
    cli.main(["ensemble", "--n", "30", "--p", "0.2", "--count", "32", "--algo", "ccsg,mfpt",
              "--baseline", "mfpt", "--out", str(out)])
    summary = rows((tmp_path / "runs_summary.csv").read_text())
    ratio = [float(r["value"]) for r in summary if r["metric"] == "gmean_size_ratio"][0]
    assert 1.0 <= ratio <= 1.15


def test_ensemble_zero_time_limit(tmp_path):
    out = tmp_path / "runs.csv"
    cli.main(["ensemble", "--n", "12", "--p", "0.3", "--count", "4", "--algo", "ccsg,mfpt",
              "--time-limit-ms", "0", "--out", str(out)])
    assert {r["status"] for r in rows(out.read_text())} == {"TIMEOUT"}
    summary = rows((tmp_path / "runs_summary.csv").read_text())
    rates = [float(r["value"]) for r in summary if r["metric"] == "completion_rate"]
    assert rates == [0.0, 0.0]


def test_ensemble_reproducible_and_parallel(tmp_path):
    outs = []
    for i, workers in enumerate(("1", "2")):
        out = tmp_path / f"runs{i}.csv"
        cli.main(["ensemble", "--n", "20", "--p", "0.3", "--count", "6", "--algo", "ccsg,ccsd,mfpt",
                  "--select", "random", "--workers", workers, "--out", str(out)])
        outs.append([{k: r[k] for k in NON_TIMING} for r in rows(out.read_text())])
    assert outs[0] == outs[1]


def test_ensemble_from_files(g6_file, capsys):
    cli.main(["ensemble", str(g6_file), "--algo", "ccsd,mfpt", "--baseline", "mfpt"])
    text = capsys.readouterr().out
    runs, summary = text.split("\n\n")
    assert [r["cover_size"] for r in rows(runs)] == ["3", "3"]
    assert "relative_reduction_pct" in summary


def test_module_entry_point(g6_file):
    res = subprocess.run([sys.executable, "-m", "cliquecover", "stats", str(g6_file)],
                         capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[1].startswith("g6.txt,6,10,3")
