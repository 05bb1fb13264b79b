"""Command-line interface: exit codes, determinism, JSON round-trips."""

import json

import pytest

from ratimm.bundles import complex_projective_plane, sphere_manifold
from ratimm.cli import main
from ratimm.io import serialize_manifold


@pytest.fixture
def s2_file(tmp_path):
    path = tmp_path / "s2.manifold"
    path.write_text(serialize_manifold(sphere_manifold(2)))
    return str(path)


@pytest.fixture
def s3_file(tmp_path):
    path = tmp_path / "s3.manifold"
    path.write_text(serialize_manifold(sphere_manifold(3)))
    return str(path)


@pytest.fixture
def cp2_file(tmp_path):
    path = tmp_path / "cp2.manifold"
    path.write_text(serialize_manifold(complex_projective_plane()))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_stiefel_table(capsys):
    code, out, _ = run(capsys, "stiefel", "--m", "2", "--k", "3",
                       "--max-degree", "8")
    assert code == 0
    assert "x2" in out and "degree 7" in out
    assert "nonzero degrees: [0, 7]" in out


def test_stiefel_betti_support_2_2(capsys):
    code, out, _ = run(capsys, "stiefel", "--m", "2", "--k", "2",
                       "--max-degree", "6")
    assert code == 0 and "nonzero degrees: [0, 2, 3, 5]" in out


def test_stiefel_invalid_k_exits_2(capsys):
    code, out, err = run(capsys, "stiefel", "--m", "2", "--k", "1")
    assert code == 2
    assert "error:" in err and err.count("\n") == 1


def test_immersion_resolved_exit_0(capsys, s2_file):
    code, out, _ = run(capsys, "immersion", "--manifold", s2_file, "--k", "3",
                       "--max-degree", "15")
    assert code == 0
    assert "growth: finite" in out


def test_immersion_hypothesis_failure_exit_3(capsys, cp2_file):
    code, out, _ = run(capsys, "immersion", "--manifold", cp2_file, "--k", "2")
    assert code == 3
    assert "hypotheses failed" in out  # report still printed


def test_immersion_symbolic_exit_4(capsys, s2_file):
    code, out, _ = run(capsys, "immersion", "--manifold", s2_file, "--k", "2")
    assert code == 4
    assert "series (EM part only)" in out


def test_immersion_json_round_trip(capsys, s3_file):
    code, out, _ = run(capsys, "immersion", "--manifold", s3_file, "--k", "2",
                       "--format", "json", "--max-degree", "12")
    assert code == 0
    payload = json.loads(out)
    assert json.loads(json.dumps(payload)) == payload
    assert payload["growth"] == "polynomial(0)"
    assert payload["series"][:6] == [1, 0, 1, 0, 1, 0]


def test_framed_model_command(capsys, cp2_file):
    code, out, _ = run(capsys, "framed-model", "--manifold", cp2_file,
                       "--k", "2", "--max-degree", "10")
    assert code == 0
    assert "e2^2 + 3*aa" in out


def test_map_sphere_even(capsys, s2_file):
    code, out, _ = run(capsys, "map-sphere", "--manifold", s2_file, "--k", "2",
                       "--max-degree", "10")
    assert code == 0
    assert "null component" in out


def test_map_sphere_odd_lists_factors(capsys, s2_file):
    code, out, _ = run(capsys, "map-sphere", "--manifold", s2_file, "--k", "7",
                       "--max-degree", "14")
    assert code == 0
    assert "K(Q,5)" in out and "K(Q,7)" in out


def test_cohomology_command(capsys, tmp_path):
    path = tmp_path / "s2.cdga"
    path.write_text("kind: free\nlabel: S2\ngenerator: e2 2\n"
                    "generator: x3 3\nd: x3 = e2^2\n")
    code, out, _ = run(capsys, "cohomology", str(path), "--max-degree", "6")
    assert code == 0
    assert "1   0   1   0   0   0   0" in out


def test_cohomology_bad_file_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.cdga"
    path.write_text("kind: free\ngenerator: e2\n")
    code, _, err = run(capsys, "cohomology", str(path))
    assert code == 2 and "line 2" in err


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "immersion", "--manifold", "/nonexistent", "--k", "3")
    assert code == 2


def test_byte_determinism(capsys, s3_file):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "immersion", "--manifold", s3_file,
                           "--k", "2", "--format", "json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_out_flag_writes_file(tmp_path, capsys, s2_file):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "immersion", "--manifold", s2_file, "--k", "3",
                       "--format", "json", "--out", str(out_path))
    assert code == 0 and out == ""
    payload = json.loads(out_path.read_text())
    assert payload["growth"] == "finite"


def test_verify_core_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "core")
    assert code == 0
    assert "non-canonical" in out
    assert "failures: 0" in out
