import json
import logging
import subprocess
import sys

import pytest

from arrango import cli
from arrango.arrangement import A_2n_1, A_4n1_1, refl_C
from arrango.chambers import chamber_graph
from arrango.io import parse_arrangement
from arrango.lattice import build_lattice, s_value


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_json_is_stable_and_sorted(capsys):
    code, out, _ = run(capsys, "--json", "info", "@refl_C:3")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert out.strip() == json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
    # per-verb flag is equivalent
    code, out2, _ = run(capsys, "info", "--json", "@refl_C:3")
    assert out2 == out


def test_info_matches_library(capsys):
    A = A_2n_1(5)
    _, doc = run_json(capsys, "info", "@A_2n_1:5")
    assert doc["hyperplanes"] == len(A) and doc["rank"] == 3
    assert doc["s"] == s_value(A)
    assert doc["charpoly"] == str(build_lattice(A).char_poly)


def test_chambers_matches_library(capsys):
    G = chamber_graph(A_4n1_1(2))
    _, doc = run_json(capsys, "chambers", "@A_4n1_1:2")
    assert doc["count"] == len(G) == 48
    assert [c["walls"] for c in doc["chambers"]] == [list(K.walls) for K in G.chambers]


def test_gallery(capsys):
    _, doc = run_json(capsys, "chambers", "@braid_A:3", "--gallery", "0,1,2")
    assert len(doc["gallery"]) == 4
    code, _, err = run(capsys, "chambers", "@braid_A:3", "--gallery", "0,0")
    assert code == 2 and "error" in err


def test_coxeter_verb(capsys):
    code, doc = run_json(capsys, "coxeter", "@A_2n_1:3", "--closure", "--diagram")
    assert code == 0 and doc["crystallographic"]
    assert doc["closure"]["consistent"] and len(doc["closure"]["roots"]) == 12
    assert len(doc["diagram"]["classes"]) == 1
    _, doc = run_json(capsys, "coxeter", "@A_2n_1:5")
    assert not doc["crystallographic"]
    assert any(c["cartan"] is None for c in doc["chambers"])


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "iso", "@A_4n1_1:2", "@refl_C:3")[0] == 0
    assert run(capsys, "iso", "@A_2n_1:4", "@refl_C:3")[0] == 1
    assert run(capsys, "info", "@nosuch:1")[0] == 2
    assert run(capsys, "info", "@A_2n_1")[0] == 2
    assert run(capsys, "info", str(tmp_path / "missing.arr"))[0] == 2
    bad = tmp_path / "bad.arr"
    bad.write_text("dim 2\nfield QQ\n1 0 0\n")
    code, _, err = run(capsys, "info", str(bad))
    assert code == 2 and "3:1" in err
    assert run(capsys, "check", "nosuch")[0] == 2
    assert run(capsys, "check", "lattice-A91")[0] == 0
    assert run(capsys, "plot", "@braid_A:4")[0] == 2


def test_check_failure_exit(capsys):
    code, out, _ = run(capsys, "check", "restriction-bound")
    assert code == 1 and out.startswith("FAIL restriction-bound")


def test_gen_round_trip(capsys, tmp_path):
    path = tmp_path / "a.arr"
    assert run(capsys, "gen", "A_2n_1", "4", "-o", str(path))[0] == 0
    assert parse_arrangement(path.read_text()) == A_2n_1(4)
    code, doc = run_json(capsys, "classify", str(path))
    assert doc["identified"] == "A(8,1) = A(2n,1), n=4"


def test_classify(capsys):
    _, doc = run_json(capsys, "classify", "@A_4n1_1:2")
    assert doc["crystallographic"] and doc["supersolvable"] and doc["s"] == 0
    assert doc["identified"] == "A(9,1) = A(4m+1,1), m=2"
    _, doc = run_json(capsys, "classify", "@generic:3,5")
    assert doc["identified"] is None and doc["s"] != 0


def test_dedup_warning(capsys, caplog, tmp_path):
    p = tmp_path / "d.arr"
    p.write_text("dim 2\nfield QQ\n1 0\n0 1\n2 0\n")
    with caplog.at_level(logging.WARNING):
        code, out, _ = run(capsys, "info", str(p))
    assert code == 0 and "proportional" in caplog.text and "2 hyperplanes" in out


@pytest.mark.parametrize("ref,lines,ideal", [("@A_2n_1:3", 6, False), ("@A_4n1_1:2", 8, True)])
def test_plot(capsys, ref, lines, ideal):
    _, svg, _ = run(capsys, "plot", ref)
    _, again, _ = run(capsys, "plot", ref)
    assert svg == again
    assert svg.count('class="hyperplane"') == lines
    assert ('class="ideal"' in svg) == ideal


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "arrango", "charpoly", "@refl_C:3"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "(t-1)*(t-3)*(t-5)"
