import json
import subprocess
import sys

import numpy as np
import pytest

from veronese_lab import PointConfig, classify
from veronese_lab.cli import main
from veronese_lab.constructions import plane_pair_config, random_real_quadric, real_quadric_cloud
from veronese_lab.jsonio import config_points, dump_config, load_config

from conftest import F7


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


# six points of x0*x2 - x1^2, one given with a rational coordinate
CONIC6 = {
    "r": 2,
    "field": "rational",
    "points": [["1", "0", "0"], ["1", "1", "1"], ["1", "2", "4"], ["1", "-1", "1"], ["2", "1", "1/2"], ["0", "0", "1"]],
}


def test_classify_conic(tmp_path, capsys):
    code, rep = run(capsys, "classify", "--degree", "2", write(tmp_path, "c.json", CONIC6))
    assert code == 0
    assert rep["result"]["verdict"] == "Smooth" and rep["result"]["kernel_dim"] == 1
    assert rep["schema_version"] == 1 and rep["command"] == "classify"
    assert rep["input_digest"].startswith("sha256:")
    assert rep["result"]["hypersurface"]["monomial_order"].startswith("graded-lex")


def test_membership_trivial(tmp_path, capsys):
    data = dict(CONIC6, points=CONIC6["points"][:5])
    code, rep = run(capsys, "membership", "--degree", "2", "--m", "1", write(tmp_path, "m.json", data))
    assert code == 0 and rep["result"]["trivially_member"] and rep["result"]["member"]


def test_membership_with_minor_cap(tmp_path, capsys):
    code, rep = run(capsys, "membership", "-d", "2", "--cap-minors", "1000", write(tmp_path, "m.json", CONIC6))
    assert code == 0 and rep["result"]["minors_vanish"] is True and rep["result"]["member"]
    code, rep = run(capsys, "membership", "-d", "2", "--cap-minors", "0", write(tmp_path, "m.json", CONIC6))
    assert code == 2 and "cap" in rep["error"]["message"]


def test_regularity_collinear(tmp_path, capsys):
    data = {"r": 2, "points": [[1, k, 0] for k in range(4)]}
    code, rep = run(capsys, "regularity", write(tmp_path, "r.json", data))
    assert code == 0 and rep["result"]["regularity"] == 4


def test_interpolate(tmp_path, capsys):
    data = dict(CONIC6, points=CONIC6["points"][:5])
    code, rep = run(capsys, "interpolate", "-d", "2", write(tmp_path, "i.json", data))
    assert code == 0 and rep["result"]["m"] == 1 and rep["result"]["local_recovery_agrees"]
    coeffs = {tuple(c["exponent"]): c["coeff"] for c in rep["result"]["forms"][0]["coefficients"]}
    assert coeffs[(1, 0, 1)] == "1" and coeffs[(0, 2, 0)] == "-1"


def test_secants(tmp_path, capsys):
    data = {"r": 2, "points": [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0], [1, 1, 1]]}
    code, rep = run(capsys, "secants", write(tmp_path, "s.json", data))
    assert code == 0 and rep["result"]["max_secant"] == 4 and rep["result"]["k_generality"] == 1


def test_special_classifiers(tmp_path, capsys, rng):
    cfg = plane_pair_config([1, 1, 1, 1], (6, 4), rng)
    path = write(tmp_path, "q.json", dump_config(cfg))
    code, rep = run(capsys, "classify-quadric3", path)
    assert code == 0 and rep["result"]["verdict"] == "Singular" and rep["result"]["quadric_rank"] == 2
    code, rep = run(capsys, "classify-plane", "-d", "2", write(tmp_path, "p.json", CONIC6))
    assert code == 0 and rep["result"]["verdict"] == "Smooth"


def test_fit_and_minimal_degree(tmp_path, capsys, rng):
    pts = real_quadric_cloud(random_real_quadric(2, rng), 20, rng)
    path = write(tmp_path, "f.json", {"field": "float", "points": pts.tolist()})
    code, rep = run(capsys, "fit", "-d", "2", path)
    assert code == 0 and rep["result"]["residual"] < 1e-10
    code, rep = run(capsys, "minimal-degree", "--dmax", "3", path)
    assert code == 0 and rep["result"]["degree"] == 2 and rep["result"]["found"]


def test_fit_homogenize(tmp_path, capsys):
    data = {"field": "float", "homogenize": True, "points": [[t, t * t] for t in np.linspace(-2, 2, 9)]}
    code, rep = run(capsys, "minimal-degree", "--dmax", "3", write(tmp_path, "a.json", data))
    assert code == 0 and rep["result"]["degree"] == 2


def test_multidegree(capsys):
    code, rep = run(capsys, "multidegree-check", "--r", "2", "-d", "2", "--n", "6", "--trials", "20", "--seed", "42")
    assert code == 0 and rep["result"]["ok"] and rep["result"]["passes"] == 20
    assert rep["result"]["field"] == "fp:1000003"


def test_exit_code_invalid_input(tmp_path, capsys):
    bad_row = {"r": 2, "points": [[1, 0, 0], [1, 0]]}
    code, rep = run(capsys, "classify", "-d", "2", write(tmp_path, "b.json", bad_row))
    assert code == 2 and "points[1]" in rep["error"]["message"]
    code, rep = run(capsys, "classify", "-d", "2", write(tmp_path, "j.json", "{not json"))
    assert code == 2 and "malformed" in rep["error"]["message"]
    code, rep = run(capsys, "classify", "-d", "2", "--field", "fp:12", write(tmp_path, "c.json", CONIC6))
    assert code == 2
    floats = {"r": 2, "points": [[1.5, 0, 1]]}
    code, rep = run(capsys, "classify", "-d", "2", write(tmp_path, "x.json", floats))
    assert code == 2
    code, rep = run(capsys, "classify", write(tmp_path, "c.json", CONIC6))
    assert code == 2 and "--degree" in rep["error"]["message"]


def test_exit_code_precondition(tmp_path, capsys):
    code, rep = run(capsys, "classify-plane", "-d", "2", "--field", "fp:1000003", write(tmp_path, "c.json", CONIC6))
    assert code == 3 and "char 0" in rep["error"]["message"]
    code, rep = run(capsys, "membership", "-d", "2", "--m", "6", write(tmp_path, "c.json", CONIC6))
    assert code == 3 and "empty variety" in rep["error"]["message"]
    code, rep = run(capsys, "multidegree-check", "--r", "2", "-d", "2", "--n", "6", "--trials", "1", "--seed", "0",
                    "--field", "fp:101")
    assert code == 3 and "field too small" in rep["error"]["message"]


def test_batch(tmp_path, capsys):
    d = tmp_path / "batch"
    d.mkdir()
    for i in range(3):
        write(d, f"ok{i}.json", CONIC6)
    code, rep = run(capsys, "classify", "-d", "2", "--batch", str(d))
    assert code == 0 and rep["summary"] == {"files": 3, "succeeded": 3, "failed": 0}
    assert [e["file"] for e in rep["reports"]] == ["ok0.json", "ok1.json", "ok2.json"]

    write(d, "ok1.json", "[1, 2")
    code, rep = run(capsys, "classify", "-d", "2", "--batch", str(d))
    assert code != 0 and rep["summary"]["failed"] == 1
    assert "error" in rep["reports"][1]["report"] and "result" in rep["reports"][0]["report"]

    empty = tmp_path / "empty"
    empty.mkdir()
    code, rep = run(capsys, "classify", "-d", "2", "--batch", str(empty))
    assert code == 0 and rep["summary"] == {"files": 0, "succeeded": 0, "failed": 0}


def test_batch_threads_deterministic(tmp_path, capsys, monkeypatch):
    d = tmp_path / "batch"
    d.mkdir()
    for i in range(6):
        rows = CONIC6["points"][: 3 + i % 4]
        write(d, f"f{i}.json", dict(CONIC6, points=rows))
    outputs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("VERONESE_LAB_THREADS", threads)
        _, rep = run(capsys, "classify", "-d", "2", "--batch", str(d))
        for e in rep["reports"]:
            e["report"].pop("timing_seconds")
        outputs.append(rep)
    assert outputs[0] == outputs[1]


def test_determinism_modulo_timing(tmp_path, capsys):
    path = write(tmp_path, "c.json", CONIC6)
    texts = []
    for _ in range(2):
        out = tmp_path / "out.json"
        assert main(["classify", "-d", "2", path, "--out", str(out)]) == 0
        rep = json.loads(out.read_text())
        rep.pop("timing_seconds")
        texts.append(json.dumps(rep, sort_keys=True))
    assert texts[0] == texts[1]


def test_round_trip(rng):
    cfg = plane_pair_config([1, 2], (6, 4), rng)
    data = json.loads(json.dumps(dump_config(cfg)))
    back = config_points(load_config(data))
    assert back == cfg
    assert classify(back, 2) == classify(cfg, 2)


def test_round_trip_fp():
    cfg = PointConfig.from_rows([(1, 2, 3), (0, 1, 5)], F7)
    data = json.loads(json.dumps(dump_config(cfg)))
    assert config_points(load_config(data)) == cfg


def test_stdin_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "veronese_lab", "classify", "--degree", "2", "-"],
        input=json.dumps(CONIC6).encode(), capture_output=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["verdict"] == "Smooth"


def test_unreadable_input(tmp_path, capsys):
    assert main(["classify", "-d", "2", str(tmp_path / "missing.json")]) == 2


@pytest.mark.parametrize("key,value", [("r", 0), ("d", "two"), ("homogenize", "yes"), ("bogus", 1)])
def test_config_field_validation(tmp_path, capsys, key, value):
    data = dict(CONIC6, **{key: value})
    code, rep = run(capsys, "classify", "-d", "2", write(tmp_path, "v.json", data))
    assert code == 2
