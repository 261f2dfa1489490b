"""Command-line behaviour: exit codes, dispatch, reports, file outputs."""

import json
import shutil
import subprocess
import sys

import pytest

from swapreach.cli import main
from swapreach.core import parse_certificate, parse_instance

from conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- solve -----------------------------------------------------------------------


def test_solve_dispatches_to_the_exhaustive_search_on_cycles(capsys):
    code, out, _ = run(capsys, "solve", str(DATA / "intro.txt"))
    assert code == 0
    assert "algorithm: oracle" in out
    assert "decision: yes" in out
    assert "2 swaps" in out


def test_solve_dispatches_to_short_list_solver(capsys):
    code, out, _ = run(capsys, "solve", str(DATA / "short_lists.txt"))
    assert code == 0
    assert "algorithm: len3" in out
    assert "(4,3) (3,2) (2,1) (4,5) (5,6) (6,1)" in out


def test_solve_dispatches_to_path_solver(capsys):
    code, out, _ = run(capsys, "solve", str(DATA / "path_five.txt"), "--trace")
    assert code == 0
    assert "algorithm: path" in out
    assert "trace |" in out


def test_solve_reports_no_with_exit_one(capsys, tmp_path):
    f = tmp_path / "inert.txt"
    f.write_text(
        "agents: 3\nobjects: a b c\ngraph: path\nassign: 1=a 2=b 3=c\n"
        "pref 1: c a\ntarget: agent=1 object=c\n"
    )
    code, out, _ = run(capsys, "solve", str(f))
    assert code == 1
    assert "decision: no" in out
    assert "certificate: none" in out


def test_solve_reports_unknown_when_the_budget_runs_out(capsys, tmp_path):
    from swapreach.core import serialize_instance
    from swapreach.generators import chain_instance

    f = tmp_path / "chain.txt"
    f.write_text(serialize_instance(chain_instance(12)))
    code, out, _ = run(
        capsys, "solve", str(f), "--algo", "oracle", "--max-states", "2"
    )
    assert code == 2
    assert "decision: unknown" in out


def test_solve_json_report(capsys):
    code, out, _ = run(capsys, "solve", str(DATA / "path_five.txt"), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["algorithm"] == "path"
    assert report["decision"] == "yes"
    assert report["swaps"] == 4
    assert report["certificate"] == [[1, 2], [2, 3], [4, 5], [3, 4]]
    assert report["counters"]["total_ops"] > 0


def test_solve_writes_certificates(capsys, tmp_path):
    cert_file = tmp_path / "walk.cert"
    code, out, _ = run(
        capsys, "solve", str(DATA / "intro.txt"), "--cert", str(cert_file)
    )
    assert code == 0
    assert str(cert_file) in out
    assert parse_certificate(cert_file.read_text()) == ((2, 3), (1, 2))
    code, _, _ = run(
        capsys, "verify", str(DATA / "intro.txt"), str(cert_file)
    )
    assert code == 0


def test_forced_algo_mismatch_suggests_valid_choices(capsys):
    code, _, err = run(capsys, "solve", str(DATA / "intro.txt"), "--algo", "len3")
    assert code == 4
    assert "--algo oracle" in err
    code, _, err = run(capsys, "solve", str(DATA / "path_five.txt"), "--algo", "len3")
    assert code == 4
    assert "--algo path" in err


def test_parse_errors_exit_three_with_line_numbers(capsys, tmp_path):
    f = tmp_path / "broken.txt"
    f.write_text("agents: 2\nobjects: a b\nedges: 1+2\nassign: 1=a 2=b\ntarget: agent=1 object=b\n")
    code, _, err = run(capsys, "solve", str(f))
    assert code == 3
    assert "line 3" in err
    code, _, err = run(capsys, "solve", str(tmp_path / "missing.txt"))
    assert code == 3


def test_batch_solving_orders_by_file_name(capsys, tmp_path):
    for name in ("b_cycle.txt", "a_path.txt", "c_lists.txt"):
        src = {
            "b_cycle.txt": "intro.txt",
            "a_path.txt": "path_five.txt",
            "c_lists.txt": "short_lists.txt",
        }[name]
        shutil.copy(DATA / src, tmp_path / name)
    code, out, _ = run(capsys, "solve", "--input-dir", str(tmp_path), "--json")
    assert code == 0
    reports = json.loads(out)
    assert [r["file"] for r in reports] == ["a_path.txt", "b_cycle.txt", "c_lists.txt"]
    assert [r["algorithm"] for r in reports] == ["path", "oracle", "len3"]
    assert all(r["decision"] == "yes" for r in reports)


# -- verify ---------------------------------------------------------------------


def test_verify_rejects_bad_walks(capsys, tmp_path):
    bad = tmp_path / "bad.cert"
    bad.write_text("1 4\n")
    code, out, _ = run(capsys, "verify", str(DATA / "intro.txt"), str(bad))
    assert code == 1
    assert "not-adjacent" in out


def test_verify_json(capsys, tmp_path):
    cert = tmp_path / "walk.cert"
    cert.write_text("3 2\n2 1\n")
    code, out, _ = run(capsys, "verify", str(DATA / "intro.txt"), str(cert), "--json")
    assert code == 0
    assert json.loads(out)["valid"] is True


# -- oracle ----------------------------------------------------------------------


def test_oracle_subcommand_reports_states(capsys):
    code, out, _ = run(capsys, "oracle", str(DATA / "path_five.txt"))
    assert code == 0
    assert "algorithm: oracle" in out
    assert "states=" in out


# -- gen -------------------------------------------------------------------------


def test_gen_clique_matches_golden_output(capsys):
    code, out, _ = run(capsys, "gen", "sat-clique", "--cnf", str(DATA / "example1.cnf"))
    assert code == 0
    assert out == (DATA / "example1.txt").read_text()


def test_gen_random_round_trips(capsys, tmp_path):
    out_file = tmp_path / "inst.txt"
    code, _, _ = run(
        capsys, "gen", "random", "--kind", "cycle", "--n", "8", "--seed", "3",
        "-o", str(out_file),
    )
    assert code == 0
    inst = parse_instance(out_file.read_text())
    assert inst.n == 8 and inst.is_cycle()
    code, _, _ = run(capsys, "solve", str(out_file))
    assert code in (0, 1)


def test_gen_rejects_malformed_cnf(capsys, tmp_path):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 2\n1 0\n-1 0\n")  # 1 occurs 0 times positively... 1 neg
    code, _, err = run(capsys, "gen", "sat-caterpillar", "--cnf", str(bad))
    assert code == 3
    assert "positively" in err


# -- twosat ----------------------------------------------------------------------


def test_twosat_exit_codes(capsys, tmp_path):
    sat = tmp_path / "sat.cnf"
    sat.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
    code, out, _ = run(capsys, "twosat", str(sat))
    assert code == 0 and "satisfiable: yes" in out
    unsat = tmp_path / "unsat.cnf"
    unsat.write_text("p cnf 1 2\n1 0\n-1 0\n")
    code, out, _ = run(capsys, "twosat", str(unsat))
    assert code == 1 and "satisfiable: no" in out
    wide = tmp_path / "wide.cnf"
    wide.write_text("p cnf 3 1\n1 2 3 0\n")
    code, _, err = run(capsys, "twosat", str(wide))
    assert code == 3
    assert "two literals" in err


# -- bench -----------------------------------------------------------------------


def test_bench_writes_csv_and_png(capsys, tmp_path):
    code, out, _ = run(
        capsys, "bench", "--kind", "chain", "--algo", "len3",
        "--sizes", "10,20", "--out-dir", str(tmp_path),
    )
    assert code == 0
    csv_file = tmp_path / "bench_chain.csv"
    png_file = tmp_path / "bench_chain.png"
    assert csv_file.exists() and png_file.exists()
    lines = csv_file.read_text().strip().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("kind,n,edges,algorithm,decision,time_s,ops")
    assert png_file.stat().st_size > 1000
    assert "n=" in out


# -- entry point -----------------------------------------------------------------


def test_module_entry_point_shows_help():
    proc = subprocess.run(
        [sys.executable, "-m", "swapreach.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "solve" in proc.stdout and "bench" in proc.stdout
