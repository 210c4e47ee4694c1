import json
import subprocess
import sys

import pytest

from picard_omega import cli, corpus, serialize
from picard_omega.acceptance import broken_unit_table
from picard_omega.chain import ChainComplex
from picard_omega.core import FgAbGroup
from picard_omega.pic import from_pic, p_of


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="input.json"):
        path = tmp_path / name
        path.write_text(serialize.dumps(obj) if not isinstance(obj, str) else obj)
        return str(path)
    return _write


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_descent_both_on_identity_example(write, capsys):
    path = write(serialize.presheaf_to_json(corpus.counterexample_identity()))
    code, out, _ = run(["descent", "--both", "--input", path, "--format", "json"], capsys)
    report = json.loads(out)
    assert code == 0
    assert report["cech"] == report["omega"] == "pass"
    assert report["levelwise_sheaf"] is False


def test_descent_failure_exit_code(write, capsys):
    path = write(serialize.presheaf_to_json(corpus.counterexample_shifted()))
    code, out, _ = run(["descent", "--cech", "--input", path], capsys)
    assert code == 1 and "cech: fail" in out


def test_nerve_compare(write, capsys):
    path = write(serialize.complex_to_json(ChainComplex.concentrated(FgAbGroup.cyclic(2), 1)))
    code, out, _ = run(["nerve", "--compare", "--n", "2", "--input", path, "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["counts"]["2"] == {"dk": 4, "enumerate": 4}


def test_nerve_via_both_routes(write, capsys):
    path = write(serialize.complex_to_json(corpus.finite_corpus()["Z3-id->Z3"]))
    _, a, _ = run(["nerve", "--via", "dk", "--n", "2", "-i", path, "--format", "json"], capsys)
    _, b, _ = run(["nerve", "--via", "enumerate", "--n", "2", "-i", path, "--format", "json"], capsys)
    assert json.loads(a)["counts"] == json.loads(b)["counts"]


def test_malformed_json(write, capsys):
    code, _, err = run(["homology", "--input", write("{not json")], capsys)
    assert code == 2 and "input error" in err
    code, _, _ = run(["homology", "--input", "/nonexistent/file.json"], capsys)
    assert code == 2


def test_wrong_kind(write, capsys):
    path = write(serialize.complex_to_json(corpus.finite_corpus()["Z2[0]"]))
    code, _, _ = run(["descent", "--input", path], capsys)
    assert code == 2


def test_validate_each_kind(write, capsys):
    objs = [serialize.complex_to_json(corpus.finite_corpus()["Z4-2->Z4"]),
            serialize.chain_map_to_json(corpus.quotient_example()),
            serialize.omega_to_json(from_pic(p_of(corpus.finite_corpus()["Z2[1]"]))),
            serialize.simplicial_to_json(corpus.constant_simplicial(FgAbGroup.cyclic(3), 2)),
            serialize.presheaf_to_json(corpus.counterexample_identity())]
    for k, obj in enumerate(objs):
        code, out, _ = run(["validate", "-i", write(obj, f"{k}.json")], capsys)
        assert code == 0 and "status: pass" in out


def test_validate_rejects_broken_table(write, capsys):
    code, out, _ = run(["validate", "-i", write(serialize.omega_to_json(broken_unit_table()))], capsys)
    assert code == 1 and "1b" in out


def test_homology_and_reports_are_deterministic(write, capsys):
    path = write(serialize.complex_to_json(corpus.integer_corpus()["Z+Z2[1]"]))
    first = run(["homology", "-i", path], capsys)
    second = run(["homology", "-i", path], capsys)
    assert first == second
    assert "1: Z/2 + Z" in first[1]


def test_quasi_iso_and_roundtrip(write, capsys):
    code, out, _ = run(["quasi-iso", "-i", write(serialize.chain_map_to_json(corpus.quotient_example())),
                        "--format", "json"], capsys)
    report = json.loads(out)
    # reduction mod 2 kills the class of 2 in H_1
    assert code == 1 and report["quasi_iso"] is False and report["equivalence"] is False
    path = write(serialize.complex_to_json(corpus.finite_corpus()["Z2,Z2,Z2 d=0"]), "c.json")
    a = run(["roundtrip-pq", "-i", path, "--seed", "4"], capsys)
    assert a[0] == 0 and a == run(["roundtrip-pq", "-i", path, "--seed", "4"], capsys)


def test_oriental_and_nmax(capsys):
    code, out, _ = run(["oriental", "--n", "2", "--format", "json"], capsys)
    report = json.loads(out)
    assert code == 0 and report["atoms"] == 7 and report["top_cells_not_identities"] == 1
    code, _, err = run(["oriental", "--n", "3", "--nmax", "2"], capsys)
    assert code == 2 and "TooLarge" in err


def test_cech_cohomology_and_deloop(write, capsys):
    circle = corpus.constant_presheaf(corpus.circle_site(), ChainComplex.concentrated(FgAbGroup.free(1), 0))
    code, out, _ = run(["cech-cohomology", "-i", write(serialize.presheaf_to_json(circle)), "--tower",
                        "--format", "json"], capsys)
    groups = json.loads(out)["cohomology"]["X <- {U1, U2, U3}"]
    assert code == 0 and groups == {"0": "Z", "1": "Z", "2": "0"}
    code, out, _ = run(["deloop-check", "-i", write(serialize.complex_to_json(corpus.finite_corpus()["Z2[0]"]),
                                                    "c.json")], capsys)
    assert code == 0 and "acyclic: yes" in out


def test_acceptance_subset(capsys):
    code, out, err = run(["acceptance", "--only", "5", "11"], capsys)
    assert code == 0
    assert err.count("[PASS]") == 2


def test_module_entry_point(write):
    path = write(serialize.complex_to_json(corpus.finite_corpus()["Z3[1]"]))
    proc = subprocess.run([sys.executable, "-m", "picard_omega", "homology", "-i", path],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1: Z/3" in proc.stdout


def test_disagreement_exit_code(write, capsys, monkeypatch):
    monkeypatch.setattr(cli, "equivalence_check", lambda f: True)
    path = write(serialize.chain_map_to_json(corpus.quotient_example()))
    code, out, err = run(["quasi-iso", "-i", path], capsys)
    assert code == 3 and out == "" and "internal inconsistency" in err
