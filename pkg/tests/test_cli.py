import json
import subprocess
import sys

import numpy as np
import pytest

from qteleport.cli import main
from qteleport.linalg import Ket, ket_to_json, matrix_to_json

from conftest import random_complex, random_unitary

X = np.array([[0, 1], [1, 0]])
Y = np.array([[0, 1], [-1, 0]])
Z = np.diag([1, -1])


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return _write


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def circle_json(cup, cap):
    return {
        "matrices": {"A": matrix_to_json(cup), "B": matrix_to_json(cap)},
        "slices": [[{"g": "cup", "m": "A"}], [{"g": "cap", "m": "B"}]],
    }


def test_diagram_circle(write, capsys):
    code, out, _ = run(["diagram-eval", write("d.json", circle(np.eye(2)))], capsys)
    assert code == 0
    assert out.strip() == '{"amplitude":[2.0,0.0]}'


def circle(m):
    return circle_json(m, m)


def test_diagram_zigzag(write, capsys):
    a = np.array([[1, 2], [3, 5]])
    d = {
        "matrices": {"A": matrix_to_json(a), "B": matrix_to_json(np.linalg.inv(a))},
        "slices": [[{"g": "id"}, {"g": "cup", "m": "A"}], [{"g": "cap", "m": "B"}, {"g": "id"}]],
    }
    code, out, _ = run(["diagram-eval", write("z.json", d)], capsys)
    obj = json.loads(out)
    assert code == 0 and (obj["rows"], obj["cols"]) == (2, 2)
    entries = np.array([complex(*e) for e in obj["entries"]]).reshape(2, 2)
    assert np.max(np.abs(entries - np.eye(2))) < 1e-10


def test_diagram_bad_arity(write, capsys):
    d = {"matrices": {"A": matrix_to_json(np.eye(2))},
         "slices": [[{"g": "cup", "m": "A"}], [{"g": "id"}]]}
    code, out, err = run(["diagram-eval", write("bad.json", d)], capsys)
    assert code == 2 and out == ""
    assert "slice 1" in err


def test_missing_file_is_io_error(tmp_path, capsys):
    code, _, _ = run(["diagram-eval", str(tmp_path / "nope.json")], capsys)
    assert code == 3


def test_parse_error(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert run(["diagram-eval", str(p)], capsys)[0] == 2
    p.write_text('{"rows": 1, "cols": 1, "entries": [[NaN, 0]]}')
    assert run(["basis-check", str(p)], capsys)[0] == 2


def test_teleport_identity(write, capsys):
    args = ["teleport", "--psi", write("psi.json", ket_to_json(Ket([1, 0]))),
            "--gate", write("g.json", matrix_to_json(np.eye(2))), "--seed", "7", "--verify"]
    code, out, _ = run(args, capsys)
    assert code == 0
    obj = json.loads(out)
    bob = np.array([complex(*e) for e in obj["bob_corrected"]["amplitudes"]])
    assert abs(abs(bob[0]) - 1) < 1e-10 and obj["seed"] == 7


def test_teleport_x_random_psi(write, capsys, rng):
    psi = Ket(random_complex(rng, 2))
    args = ["teleport", "--psi", write("psi.json", ket_to_json(psi)),
            "--gate", write("g.json", matrix_to_json(X)), "--seed", "1", "--verify"]
    code, out, _ = run(args, capsys)
    assert code == 0
    bob = np.array([complex(*e) for e in json.loads(out)["bob_corrected"]["amplitudes"]])
    want = X @ psi.normalized().amplitudes
    assert abs(abs(np.vdot(want, bob)) - 1) < 1e-10


def test_teleport_non_unitary(write, capsys):
    args = ["teleport", "--psi", write("psi.json", ket_to_json(Ket([1, 0]))),
            "--gate", write("g.json", matrix_to_json([[1, 1], [0, 1]])), "--seed", "1"]
    assert run(args, capsys)[0] == 2


def test_teleport_requires_seed(write, capsys):
    args = ["teleport", "--psi", write("psi.json", ket_to_json(Ket([1, 0]))),
            "--gate", write("g.json", matrix_to_json(np.eye(2)))]
    assert run(args, capsys)[0] == 2


def test_trace_identity(write, capsys):
    code, out, _ = run(["trace", "--gate", write("g.json", matrix_to_json(np.eye(4))),
                        "--shots", "100", "--seed", "4"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["estimate"] == 4.0 and obj["successes"] == 100


def test_trace_z(write, capsys):
    code, out, _ = run(["trace", "--gate", write("g.json", matrix_to_json(Z)),
                        "--shots", "100", "--seed", "4"], capsys)
    assert code == 0 and json.loads(out)["estimate"] == 0.0


def test_trace_random_unitary_within_three_sigma(write, capsys, rng):
    u = random_unitary(rng, 2)
    code, out, _ = run(["trace", "--gate", write("g.json", matrix_to_json(u)),
                        "--shots", "100000", "--seed", "12"], capsys)
    obj = json.loads(out)
    assert code == 0
    assert abs(obj["estimate"] - obj["exact_abs_trace"]) <= 3 * obj["std_error"]


def test_trace_requires_shots(write, capsys):
    assert run(["trace", "--gate", write("g.json", matrix_to_json(Z)), "--seed", "1"], capsys)[0] == 2


@pytest.mark.parametrize("m,expected", [
    (np.eye(2), True),
    ([[1, 0], [0, 0]], False),
    (2 * Y, True),
])
def test_basis_check(write, capsys, m, expected):
    code, out, _ = run(["basis-check", write("m.json", matrix_to_json(m))], capsys)
    assert code == 0
    assert json.loads(out) == {"orthogonal": expected, "scaled_special_unitary": expected}


def test_basis_check_shape(write, capsys):
    assert run(["basis-check", write("m.json", matrix_to_json(np.eye(4)))], capsys)[0] == 2


def test_entangle_check(write, capsys):
    code, out, _ = run(["entangle-check", write("k.json", ket_to_json(Ket([1, 0, 0, 1])))], capsys)
    assert code == 0 and json.loads(out)["entangled"] is True
    code, out, _ = run(["entangle-check", write("k.json", ket_to_json(Ket([1, 0, 0, 0])))], capsys)
    assert code == 0 and json.loads(out)["entangled"] is False
    assert run(["entangle-check", write("k.json", ket_to_json(Ket([1, 0])))], capsys)[0] == 2


def test_output_file(write, tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(["diagram-eval", write("d.json", circle(np.eye(2))), "--output", str(dest)], capsys)
    assert code == 0 and out == ""
    assert json.loads(dest.read_text()) == {"amplitude": [2.0, 0.0]}
    assert run(["diagram-eval", write("d.json", circle(np.eye(2))),
                "--output", str(tmp_path / "missing" / "x.json")], capsys)[0] == 3


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "qteleport", "diagram-eval", write("d.json", circle(np.eye(2)))],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == '{"amplitude":[2.0,0.0]}'


def test_floats_round_trip(write, capsys, rng):
    u = random_unitary(rng, 2)
    code, out, _ = run(["teleport", "--psi", write("p.json", ket_to_json(Ket([0.6, 0.8j]))),
                        "--gate", write("g.json", matrix_to_json(u)), "--seed", "3"], capsys)
    gate = json.loads(out)["gate"]
    back = np.array([complex(*e) for e in gate["entries"]]).reshape(2, 2)
    assert np.array_equal(back, u)
