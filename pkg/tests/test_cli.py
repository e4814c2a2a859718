import json

import pytest

from qsym.cli import main
from qsym.fixtures import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# happy paths
# ---------------------------------------------------------------------------


def test_spectra(capsys):
    code, report, err = run_json(capsys, "spectra", "--n", "5")
    assert code == 0
    assert report["pass"] is True
    assert {lvl["lambda"]: lvl["multiplicity"] for lvl in report["levels"]} == {
        5: 1, 1: 10, -3: 5,
    }
    assert "PASS" in err


def test_autos_by_fixture_name(capsys):
    code, report, _ = run_json(capsys, "autos", "--graph", "k4.json")
    assert code == 0
    assert report["count"] == 24


def test_autos_by_n(capsys):
    code, report, _ = run_json(capsys, "autos", "--n", "3")
    assert code == 0
    assert report["count"] == 24


def test_autos_by_path(capsys, tmp_path):
    target = tmp_path / "graph.json"
    target.write_text(fixture_path("c5").read_text())
    code, report, _ = run_json(capsys, "autos", "--graph", str(target))
    assert code == 0
    assert report["count"] == 10


def test_disjoint_found(capsys):
    code, report, _ = run_json(capsys, "disjoint", "--graph", "clebsch.json")
    assert code == 0
    assert report["found"] is True
    assert sorted(report["orders"]) == [2, 2]


def test_disjoint_none_on_c5(capsys):
    code, report, _ = run_json(capsys, "disjoint", "--graph", "c5.json")
    assert code == 0
    assert report["found"] is False and report["sigma"] is None


def test_witness(capsys):
    code, report, _ = run_json(capsys, "witness", "--graph", "clebsch.json", "--seed", "42")
    assert code == 0
    assert report["witness"]["pass"] is True
    assert report["witness"]["noncomm_certificate"] > 0.01
    assert report["recovery"]["pass"] is True
    assert report["seed"] == 42


def test_so_points(capsys):
    code, report, _ = run_json(capsys, "so-points", "--n", "3")
    assert code == 0
    assert report["count"] == 24
    assert report["bijective_onto_automorphism_group"] is True
    assert len(report["points"]) == 24


def test_so_check(capsys):
    code, report, _ = run_json(capsys, "so-check", "--n", "3", "--samples", "20")
    assert code == 0
    relations = [c["relation"] for c in report["checks"]]
    assert "lemma_SO" in relations and "lemma_sumzero" in relations and "lemma_P" in relations
    assert all(c["pass"] for c in report["checks"])


def test_twist_check(capsys):
    code, report, _ = run_json(capsys, "twist-check", "--m", "1", "--samples", "50", "--seed", "42")
    assert code == 0
    assert [r["relation"] for r in report["relations"]] == ["7.1", "7.2", "7.3", "7.4", "7.5"]
    assert all(r["pass"] for r in report["relations"])


# ---------------------------------------------------------------------------
# exit-code contract
# ---------------------------------------------------------------------------


def test_exit_1_on_failed_check(capsys):
    code, report, err = run_json(capsys, "spectra", "--n", "5", "--tol", "1e-30")
    assert code == 1
    assert report["pass"] is False
    assert "FAIL" in err


def test_exit_1_on_witness_with_impossible_tol(capsys):
    code, report, _ = run_json(capsys, "witness", "--graph", "k4.json", "--tol", "1e-18")
    assert code == 1
    assert report["witness"]["pass"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ("autos", "--graph", "no_such_file.json"),
        ("autos",),  # neither subject
        ("autos", "--n", "3", "--graph", "k4.json"),  # both subjects
        ("witness", "--graph", "c5.json"),  # no disjoint pair
        ("spectra", "--n", "1"),  # invalid n
        ("so-points", "--n", "4"),  # even n
        ("so-check", "--n", "7"),  # capacity
        ("twist-check", "--m", "3"),  # unsupported m
    ],
)
def test_exit_2_on_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error:" in err


def test_exit_2_on_malformed_graph_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "edges": [[0, 0]]}')
    code, _, err = run(capsys, "autos", "--graph", str(bad))
    assert code == 2
    assert "loop" in err


def test_exit_2_on_unparseable_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "autos", "--graph", str(bad))
    assert code == 2


def test_capacity_is_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "autos", "--n", "7")  # 64 vertices > bound
    assert code == 2


# ---------------------------------------------------------------------------
# determinism and seeds
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ("spectra", "--n", "5"),
        ("autos", "--graph", "clebsch.json"),
        ("disjoint", "--graph", "clebsch.json"),
        ("witness", "--graph", "clebsch.json", "--seed", "42"),
        ("so-points", "--n", "3"),
        ("so-check", "--n", "3", "--samples", "20", "--seed", "42"),
        ("twist-check", "--m", "1", "--samples", "50", "--seed", "42"),
    ],
)
def test_byte_identical_reruns(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2
    assert out1 == out2


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("QSYM_SEED", "7")
    _, report, _ = run_json(capsys, "witness", "--graph", "k4.json")
    assert report["seed"] == 7
    # explicit flag wins over the environment
    _, report, _ = run_json(capsys, "witness", "--graph", "k4.json", "--seed", "3")
    assert report["seed"] == 3


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("QSYM_SEED", "many")
    code, _, err = run(capsys, "witness", "--graph", "k4.json")
    assert code == 2
    assert "QSYM_SEED" in err
