"""End-to-end command tests, run in process through ``main``."""

import json
import math

import pytest

from holostar.cli import main

PI = math.pi


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("HOLOSTAR_TOLERANCE_SCALE", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def write_circuit(tmp_path, gates, n_register=2, auxiliary_state=0):
    path = tmp_path / "circuit.json"
    path.write_text(json.dumps({"n_register": n_register,
                                "auxiliary_state": auxiliary_state,
                                "gates": gates}))
    return str(path)


ENT_GATE = {"k": 0, "l": 1, "theta": PI / 2}


def test_synth1q_document(capsys):
    doc = run_json(capsys, "synth1q", "--theta", str(PI / 2), "--dphi", str(PI / 2))
    assert doc["command"] == "synth1q"
    segs = doc["schedule"]["segments"]
    assert [s["kind"] for s in segs] == ["field"] * 3
    assert [s["area"] for s in segs] == pytest.approx([PI / 2, PI, PI / 2])
    assert doc["synthesis_distance"] < 1e-12
    # the axis lies on the equator at phi = 0, so the target is i * sigma_x
    assert doc["target_matrix"][0][1] == pytest.approx([0.0, 1.0], abs=1e-15)
    assert doc["target_matrix"][1][0] == pytest.approx([0.0, 1.0], abs=1e-15)
    assert doc["target_matrix"][0][0] == pytest.approx([0.0, 0.0], abs=1e-15)


def test_synth2q_document(capsys):
    doc = run_json(capsys, "synth2q", "--theta", str(PI / 2))
    assert doc["command"] == "synth2q"
    assert doc["schedule"]["segments"][0]["area"] == pytest.approx(math.tau)
    assert doc["off_block_residual"] < 1e-12
    assert doc["entangling_power"] == pytest.approx(2 / 9, abs=1e-10)
    assert doc["entangling_power_formula"] == pytest.approx(2 / 9)
    assert len(doc["u0"]) == 4 and len(doc["u1"]) == 4


def test_phase_report(capsys):
    doc = run_json(capsys, "phase-report", "--theta", "1.0", "--phi", "0.5",
                   "--dphi", str(PI / 3))
    assert doc["geometric_phase"] == pytest.approx(PI / 3, abs=1e-6)
    assert doc["total_phase"] == pytest.approx(PI / 3, abs=1e-6)
    assert abs(doc["dynamical_phase"]) < 1e-6
    assert doc["orthogonal_geometric_phase"] == pytest.approx(-PI / 3, abs=1e-6)
    assert doc["max_integrand"] < 1e-9
    assert doc["cyclicity_deviation"] < 1e-10


def test_ep_sweep_json(capsys):
    doc = run_json(capsys, "ep-sweep", "--grid", "5")
    rows = doc["rows"]
    assert len(rows) == 5
    assert rows[0]["theta"] == 0.0 and rows[0]["ep_computed"] == pytest.approx(0.0, abs=1e-12)
    assert rows[2]["ep_formula"] == pytest.approx(2 / 9)
    assert all(r["abs_diff"] <= 1e-10 for r in rows)


def test_ep_sweep_csv(capsys):
    code, out, err = run(capsys, "ep-sweep", "--grid", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "theta,ep_computed,ep_formula,abs_diff"
    assert len(lines) == 4
    theta, ep, law, diff = (float(x) for x in lines[2].split(","))
    assert theta == pytest.approx(PI / 2)
    assert ep == pytest.approx(2 / 9, abs=1e-10)


def test_ep_sweep_rejects_tiny_grid(capsys):
    code, out, err = run(capsys, "ep-sweep", "--grid", "1")
    assert code == 2 and "grid" in err


def test_simulate_entangling_gate(capsys, tmp_path):
    path = write_circuit(tmp_path, [ENT_GATE])
    doc = run_json(capsys, "simulate", "--circuit", path, "--input", "10")
    assert doc["aux_match_probability"] == pytest.approx(1.0, abs=1e-12)
    assert doc["ideal_fidelity"] == pytest.approx(1.0, abs=1e-12)
    # |10> maps to -|01>
    amps = doc["register_state"]
    assert amps[1] == pytest.approx([-1.0, 0.0], abs=1e-12)
    for i in (0, 2, 3):
        assert amps[i] == pytest.approx([0.0, 0.0], abs=1e-12)


def test_simulate_input_validation(capsys, tmp_path):
    path = write_circuit(tmp_path, [ENT_GATE])
    code, out, err = run(capsys, "simulate", "--circuit", path, "--input", "101")
    assert code == 2 and "2-bit" in err
    code, out, err = run(capsys, "simulate", "--circuit", path, "--input", "1x")
    assert code == 2


def test_simulate_shots_are_seeded(capsys, tmp_path):
    path = write_circuit(tmp_path, [ENT_GATE])
    argv = ("simulate", "--circuit", path, "--shots", "250", "--seed", "7")
    first = run_json(capsys, *argv)["shots"]
    second = run_json(capsys, *argv)["shots"]
    assert first == second
    assert first["requested"] == 250
    assert first["aux_matches"] == 250  # restoration is deterministic here


def test_simulate_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "simulate", "--circuit", str(tmp_path / "nope.json"))
    assert code == 2


def test_verify_synthesized_schedule(capsys, tmp_path):
    out_path = str(tmp_path / "sched.json")
    assert main(["synth1q", "--theta", "1.1", "--phi", "0.4", "--dphi", "-0.9",
                 "--out", out_path]) == 0
    capsys.readouterr()
    doc = run_json(capsys, "verify", out_path)
    assert doc["passed"] is True
    names = [c["name"] for c in doc["checks"]]
    assert names == ["synthesis_distance", "max_integrand", "cyclicity_deviation"]


def test_verify_circuit_document(capsys, tmp_path):
    path = write_circuit(tmp_path, [
        {"qubit": 0, "theta": PI / 2, "phi": 0.0, "dphi": PI / 4},
        ENT_GATE,
    ])
    doc = run_json(capsys, "verify", path)
    assert doc["kind"] == "circuit" and doc["passed"] is True
    names = {c["name"] for c in doc["checks"]}
    assert names == {"aux_restoration_deficit", "infidelity"}


def test_verify_half_area_coupling_fails(capsys, tmp_path):
    path = tmp_path / "half.json"
    path.write_text(json.dumps({"n_register": 2, "segments": [
        {"kind": "coupling", "pair": [0, 1], "mix_theta": PI / 2,
         "shape": "constant", "duration": 1.0, "area": PI},
    ]}))
    code, out, err = run(capsys, "verify", str(path))
    assert code == 1
    doc = json.loads(out)
    assert doc["passed"] is False
    (check,) = doc["checks"]
    assert check["name"] == "off_block_residual" and not check["pass"]
    assert check["value"] == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_verify_unparseable_document(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("not json at all")
    code, out, err = run(capsys, "verify", str(path))
    assert code == 2


def test_verify_needs_a_source(capsys):
    code, out, err = run(capsys, "verify")
    assert code == 2 and "random-circuits" in err


def test_verify_random_circuits(capsys):
    doc = run_json(capsys, "verify", "--random-circuits", "3", "--n-register", "2",
                   "--gates", "4", "--seed", "11")
    assert doc["kind"] == "random-circuits"
    assert doc["passed"] is True
    assert sorted({c["circuit"] for c in doc["checks"]}) == [0, 1, 2]


def test_tolerance_override_is_reported(capsys, tmp_path):
    out_path = str(tmp_path / "sched.json")
    main(["synth1q", "--theta", "0.7", "--dphi", "0.3", "--out", out_path])
    capsys.readouterr()
    doc = run_json(capsys, "verify", out_path, "--tol", "synthesis_distance=1e-3")
    (check,) = [c for c in doc["checks"] if c["name"] == "synthesis_distance"]
    assert check["tolerance"] == 1e-3


def test_tolerance_override_rejects_garbage(capsys, tmp_path):
    code, out, err = run(capsys, "verify", "--random-circuits", "1",
                         "--tol", "no_such_tolerance=1")
    assert code == 2
    code, out, err = run(capsys, "verify", "--random-circuits", "1",
                         "--tol", "off_block")
    assert code == 2 and "NAME=VALUE" in err
    code, out, err = run(capsys, "verify", "--random-circuits", "1",
                         "--tol", "off_block=abc")
    assert code == 2


def test_env_scale_is_applied(capsys, tmp_path, monkeypatch):
    out_path = str(tmp_path / "sched.json")
    main(["synth1q", "--theta", "0.7", "--dphi", "0.3", "--out", out_path])
    capsys.readouterr()
    monkeypatch.setenv("HOLOSTAR_TOLERANCE_SCALE", "100")
    doc = run_json(capsys, "verify", out_path)
    (check,) = [c for c in doc["checks"] if c["name"] == "synthesis_distance"]
    assert check["tolerance"] == pytest.approx(1e-7)


def test_env_scale_below_one_is_an_error(capsys, monkeypatch):
    monkeypatch.setenv("HOLOSTAR_TOLERANCE_SCALE", "0.5")
    code, out, err = run(capsys, "verify", "--random-circuits", "1")
    assert code == 2
    monkeypatch.setenv("HOLOSTAR_TOLERANCE_SCALE", "abc")
    code, out, err = run(capsys, "verify", "--random-circuits", "1")
    assert code == 2


def test_out_writes_file_not_stdout(capsys, tmp_path):
    out_path = tmp_path / "doc.json"
    code, out, err = run(capsys, "synth2q", "--theta", "0.5", "--out", str(out_path))
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["command"] == "synth2q"


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["synth1q", "--theta", "1.0", "--dphi", "0.1", "--format", "csv"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_stdin_document(capsys, tmp_path, monkeypatch):
    import io

    text = json.dumps({"n_register": 2, "auxiliary_state": 0, "gates": [ENT_GATE]})
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    doc = run_json(capsys, "verify", "-")
    assert doc["passed"] is True
