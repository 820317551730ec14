"""Command line interface: exit codes, output formats and byte stability."""

import json
import subprocess
import sys

import pytest

from qcactus.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_braid_suite_passes(capsys):
    code, out, _ = run(["--suite", "braid", "--k", "2", "--n", "3"], capsys)
    assert code == 0
    assert out.startswith("# qcactus report")
    assert out.rstrip().endswith("status=PASS")


def test_cactus_suite_on_a3(capsys):
    code, out, _ = run(["--suite", "cactus", "--type", "A", "--rank", "3", "--weight", "0,1,0"], capsys)
    assert code == 0 and "failures=0" in out


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "nonsense"])
    assert exc.value.code == 2
    assert run([], capsys)[0] == 2
    code, _, err = run(["--suite", "crystal-axioms", "--type", "A"], capsys)
    assert code == 2 and "--rank" in err
    code, _, err = run(["--suite", "zigzag", "--format", "dot"], capsys)
    assert code == 2 and "DOT" in err
    assert run(["--suite", "kl", "--max-sn", "7"], capsys)[0] == 2
    assert run(["--tableau", "1,2/4,3"], capsys)[0] == 2


def test_dot_crystal(capsys):
    code, out, _ = run(["--suite", "crystal-axioms", "--type", "A", "--rank", "2", "--weight", "1,0",
                        "--format", "dot"], capsys)
    assert code == 0
    assert out.lstrip().startswith("digraph")
    assert out.count("->") == 2
    nodes = [ln for ln in out.splitlines() if "[" in ln and "->" not in ln and "=" in ln
             and not ln.strip().startswith(("node", "edge", "graph"))]
    assert len(nodes) == 3


def test_kl_tsv_for_s3(capsys):
    code, out, _ = run(["--suite", "kl", "--n", "3", "--format", "tsv"], capsys)
    assert code == 0
    rows = [ln.split("\t") for ln in out.strip().splitlines()]
    header, body = rows[0], rows[1:]
    assert len(header) >= 3 and body
    # every KL polynomial of S3 is 1
    assert {r[-1] for r in body} == {"1"}


def test_tsv_report(capsys):
    code, out, _ = run(["--suite", "tableaux", "--n", "4", "--format", "tsv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["suite", "report", "identity", "parameters", "status", "detail"]
    assert all(ln.split("\t")[4] == "pass" for ln in lines[1:])


def test_json_report(capsys):
    code, out, _ = run(["--suite", "crystal-axioms", "--type", "A", "--rank", "2", "--format", "json"], capsys)
    body = json.loads(out)
    assert code == 0 and body["suite"] == "crystal-axioms"
    assert body["summary"]["failures"] == 0 and body["summary"]["checks"] > 0
    assert len(body["reports"]) == body["summary"]["reports"]


def test_tableau_query(capsys):
    code, out, _ = run(["--tableau", "1,2,4/3,5"], capsys)
    body = json.loads(out)
    assert code == 0 and body["shape"] == [3, 2]
    assert body["xi_I"] == body["evacuation"]
    assert body["xi_J*xi_I"] == body["promotion"]
    assert body["xi_I*xi_J"] == body["demotion"]


def test_out_file_and_determinism(tmp_path):
    argv = ["--suite", "w0-chevalley", "--k", "3", "--n", "2", "--format", "json"]
    paths = []
    for k in range(2):
        p = tmp_path / f"r{k}.json"
        assert main(argv + ["--out", str(p)]) == 0
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_installed_entry_point():
    out = subprocess.run([sys.executable, "-m", "qcactus.cli", "--version"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.startswith("qcactus ")
