#!/usr/bin/env python3
"""
Command-line tests.

Drives effect_algebra.py as a subprocess on the bundled documents and on
throwaway documents, checking exit codes (0 true, 1 false, 2 input
error), the versioned JSON report and the transaction log.
"""

import sys
import os
import json
import subprocess
import tempfile

import pytest

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
LAUNCHER = os.path.join(PROJECT_ROOT, "effect_algebra.py")
DOCUMENTS = os.path.join(PROJECT_ROOT, "documents")


def run_cli(*args, env=None):
    """Run the launcher and return the completed process."""
    environment = dict(os.environ, EA_COLOR="never")
    if env:
        environment.update(env)
    return subprocess.run([sys.executable, LAUNCHER, *args], capture_output=True, text=True,
                          cwd=PROJECT_ROOT, env=environment, timeout=300)


def run_json(*args):
    proc = run_cli(*args, "--format", "json")
    return proc, json.loads(proc.stdout)


def doc(name):
    return os.path.join(DOCUMENTS, name)


def write_document(directory, text):
    path = os.path.join(directory, "doc.json")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return path


def test_ic_decide():
    print("\n" + "="*60)
    print("TEST: ic decide")
    print("="*60)

    proc, report = run_json("ic", "decide", doc("complementary_not_ic.json"), "f", "g")
    print(proc.stdout)
    assert proc.returncode == 1
    assert report["version"] == 1
    assert report["command"] == "ic decide"
    assert report["verdict"] is False
    assert report["witness"]["rank"] == 3
    assert report["witness"]["verified"] is True
    assert len(report["witness"]["mu"]) == 4

    proc, report = run_json("ic", "decide", doc("ic_pairs.json"), "f", "g")
    assert proc.returncode == 0
    assert report["verdict"] is True


def test_complementarity_commands():
    proc, report = run_json("ic", "complementary", doc("complementary_not_ic.json"), "f", "g")
    assert proc.returncode == 0
    assert report["witness"]["refinement"] == "{{1}, {2}, {3}, {4}}"

    proc, report = run_json("ic", "complementary", doc("ic_pairs.json"), "f", "h")
    assert proc.returncode == 1
    assert report["witness"]["mu"] == ["1", "0", "0"]

    proc = run_cli("ic", "strong-complementary", doc("strongly_complementary.json"), "f", "g")
    assert proc.returncode == 0
    proc = run_cli("ic", "strong-complementary", doc("ic_pairs.json"), "f", "g")
    assert proc.returncode == 1


def test_ic_sweep():
    proc, report = run_json("ic", "sweep", "3")
    assert proc.returncode == 0
    assert report["witness"]["partitions"] == 5
    assert report["witness"]["pairs"] == 25
    assert report["witness"]["strong_not_ic"] == []
    assert "ic_not_strongly_complementary" in report["witness"]

    proc = run_cli("ic", "sweep", "9")
    assert proc.returncode == 2
    assert "between 1 and 6" in proc.stderr


def test_check_effect():
    proc, report = run_json("check", "effect", doc("classical_effects.json"), "bad")
    assert proc.returncode == 1
    assert report["witness"]["coordinates"] == ["3/2", "0"]

    proc = run_cli("check", "effect", doc("classical_effects.json"), "a")
    assert proc.returncode == 0
    assert "verdict   TRUE" in proc.stdout

    assert run_cli("check", "sharp", doc("classical_effects.json"), "d1").returncode == 0
    assert run_cli("check", "strong", doc("classical_effects.json"), "p").returncode == 1
    assert run_cli("check", "strong", doc("qubit_effects.json"), "projector").returncode == 0
    assert run_cli("check", "effect", doc("qubit_effects.json"), "phase").returncode == 0


def test_csea_commands():
    proc, report = run_json("csea", "separated", doc("separated_pair.json"), "F1", "F2")
    assert proc.returncode == 0
    assert report["witness"]["meet_dim"] == 1

    proc, report = run_json("csea", "join", doc("separated_pair.json"), "F1", "F2")
    assert proc.returncode == 0
    assert report["witness"]["dim"] == 3

    proc, report = run_json("csea", "build", doc("separated_pair.json"), "F1")
    assert report["witness"]["generators"] == ["e1", "e2"]
    assert report["witness"]["unit_coefficients"] == ["1", "1"]

    proc = run_cli("csea", "contains", doc("separated_pair.json"), "F1", "e3")
    assert proc.returncode == 1

    proc, report = run_json("csea", "build", doc("classical_effects.json"), "half")
    assert proc.returncode == 1
    assert "unit" in report["witness"]["reason"]


def test_obs_commands():
    path = doc("classical_effects.json")
    proc, report = run_json("obs", "dist", path, "A", "mu")
    assert proc.returncode == 0
    assert report["witness"]["distribution"] == {"1": "1/8", "2": "7/8"}

    proc, report = run_json("obs", "postprocess", path, "delta", "B")
    assert proc.returncode == 0
    assert report["witness"]["channel"] == [["1/2", "1/2"], ["1/3", "2/3"]]

    proc, report = run_json("obs", "postprocess", path, "W", "delta")
    assert proc.returncode == 1
    assert report["witness"]["offending"] == {"x": "1", "y": "1", "value": "4/3"}

    proc, report = run_json("obs", "apply", path, "nu", "delta")
    assert proc.returncode == 0
    assert report["witness"]["effects"]["1"] == ["1", "1/2"]

    proc = run_cli("obs", "validate", path, "short")
    assert proc.returncode == 1

    proc, report = run_json("obs", "coexist", path, "S", "p", "q")
    assert proc.returncode == 0
    assert report["witness"]["c"] == ["1/4", "1/4"]

    proc, report = run_json("obs", "iso", path, "S", "p")
    assert proc.returncode == 0
    assert report["witness"]["J(a)"] == ["1/2", "1/4"]
    assert report["witness"]["J(a')"] == ["1/2", "3/4"]


def test_quantum_commands():
    proc, report = run_json("q", "decompose", doc("block_generators.json"), "F")
    assert proc.returncode == 0
    assert report["witness"]["ranks"] == [1, 1, 1]
    assert report["witness"]["q_rank"] == 2
    for name in ("orthogonality", "sum", "q_idempotent", "reconstruction", "annihilation"):
        assert report["residuals"][name] <= 1e-9

    proc, report = run_json("q", "noncommutative", doc("qubit_effects.json"), "alpha", "beta")
    assert proc.returncode == 0
    assert report["witness"]["strong"] == [False, False, False]

    proc, report = run_json("q", "blocks", doc("qubit_effects.json"), "b", "c", "d")
    assert proc.returncode == 0
    assert report["witness"]["commutative"] is False

    proc, report = run_json("q", "strongify", doc("commuting.json"), "mixed")
    assert proc.returncode == 0
    assert len(report["witness"]["generators"]) == 2

    proc, report = run_json("q", "spectrum", doc("qubit_effects.json"), "alpha")
    assert report["witness"]["spectrum"] == pytest.approx([0.4, 0.8])


def test_hypothesis_violations_are_input_errors():
    proc = run_cli("q", "noncommutative", doc("qubit_effects.json"), "alpha", "half")
    assert proc.returncode == 2
    assert "commute" in proc.stderr

    proc = run_cli("q", "strongify", doc("commuting.json"), "noncommuting")
    assert proc.returncode == 2

    proc = run_cli("q", "decompose", doc("block_generators.json"), "G")
    assert proc.returncode == 2
    assert "no subalgebra named 'G'" in proc.stderr


def test_document_errors():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_document(tmp, '{"base": {"kind": "classical", "n": 2},\n "effects": {"a": [1, }')
        proc = run_cli("check", "effect", path, "a")
        assert proc.returncode == 2
        assert f"{path}:2:" in proc.stderr

        path = write_document(tmp, '{"base": {"kind": "classical", "n": 2}, '
                                   '"effects": {"a": [1, 0], "a": [0, 1]}}')
        proc = run_cli("check", "effect", path, "a")
        assert proc.returncode == 2
        assert "duplicate key" in proc.stderr

        path = write_document(tmp, '{"base": {"kind": "classical", "n": 2}, '
                                   '"effects": {"a": [1, 0, 0]}}')
        proc = run_cli("check", "effect", path, "a")
        assert proc.returncode == 2
        assert "effects.a" in proc.stderr

        path = write_document(tmp, '{"base": {"kind": "simplex", "n": 2}}')
        proc, report = run_json("check", "effect", path, "a")
        assert proc.returncode == 2
        assert report["verdict"] is None
        assert "base.kind" in report["error"]

    proc = run_cli("check", "effect", os.path.join(DOCUMENTS, "missing.json"), "a")
    assert proc.returncode == 2
    assert "cannot read document" in proc.stderr


def test_default_arguments():
    """Without names, ic uses every random variable and q uses the only subalgebra."""
    proc, report = run_json("ic", "decide", doc("complementary_not_ic.json"))
    assert proc.returncode == 1
    assert report["witness"]["rank"] == 3
    assert report["witness"]["verified"] is True

    proc = run_cli("ic", "complementary", doc("complementary_not_ic.json"))
    assert proc.returncode == 0

    proc, report = run_json("q", "decompose", doc("block_generators.json"), "--tol", "1e-9")
    assert proc.returncode == 0
    assert report["witness"]["q_rank"] == 2

    proc = run_cli("q", "strongify", doc("commuting.json"))
    assert proc.returncode == 2
    assert "name one of the subalgebras" in proc.stderr

    with tempfile.TemporaryDirectory() as tmp:
        path = write_document(tmp, '{"base": {"kind": "quantum", "dim": 2}, '
                                   '"effects": {"p": [[1, 0], [0, 0]], "q": [[0, 0], [0, 1]]}}')
        proc, report = run_json("q", "decompose", path)
        assert proc.returncode == 0
        assert report["witness"]["ranks"] == [1, 1]

        path = write_document(tmp, '{"base": {"kind": "classical", "n": 2}}')
        proc = run_cli("ic", "decide", path)
        assert proc.returncode == 2
        assert "no random variables" in proc.stderr


def test_example_actions():
    proc, report = run_json("q", "example6", doc("qubit_effects.json"), "alpha", "beta")
    assert proc.returncode == 0
    assert report["witness"]["strong"] == [False, False, False]

    proc, report = run_json("q", "example7", doc("qubit_effects.json"), "b", "c", "d")
    assert proc.returncode == 0
    assert report["witness"]["commutative"] is False
    assert report["witness"]["ranks"] == [1, 1, 1]


def test_observable_list_shorthand():
    with tempfile.TemporaryDirectory() as tmp:
        path = write_document(tmp, '{"base": {"kind": "classical", "n": 2}, '
                                   '"effects": {"a": ["1/2", 0], "b": ["1/2", 1]}, '
                                   '"states": {"mu": ["1/4", "3/4"]}, '
                                   '"observables": {"A": ["a", "b"]}}')
        proc, report = run_json("obs", "dist", path, "A", "mu")
        assert proc.returncode == 0
        assert report["witness"]["distribution"] == {"1": "1/8", "2": "7/8"}


def test_random_variable_values_rejected():
    with tempfile.TemporaryDirectory() as tmp:
        log_path = os.path.join(tmp, "session.log")
        path = write_document(tmp, '{"base": {"kind": "classical", "n": 2}, '
                                   '"random_variables": {"f": [{"x": 1}, 2]}}')
        proc = run_cli("--log", log_path, "ic", "decide", path, "f")
        assert proc.returncode == 2
        assert "random_variables.f[0]" in proc.stderr
        assert "Traceback" not in proc.stderr
        with open(log_path, encoding="utf-8") as handle:
            assert "Session ended:" in handle.read()

        path = write_document(tmp, '{"base": {"kind": "classical", "n": 3}, '
                                   '"random_variables": {"f": [[1, 2], [1, 2], "z"]}}')
        proc, report = run_json("ic", "decide", path, "f")
        assert proc.returncode == 1
        assert report["witness"]["rank"] == 2


def test_tolerance_flag():
    proc = run_cli("q", "decompose", doc("block_generators.json"), "F", "--tol", "1e-6")
    assert proc.returncode == 0
    proc = run_cli("q", "decompose", doc("block_generators.json"), "F", "--tol", "0.5")
    assert proc.returncode == 2
    assert "tolerance out of range" in proc.stderr

    with tempfile.TemporaryDirectory() as tmp:
        log_path = os.path.join(tmp, "session.log")
        proc = run_cli("--log", log_path, "q", "decompose", doc("block_generators.json"),
                       "--tol", "0.5")
        assert proc.returncode == 2
        with open(log_path, encoding="utf-8") as handle:
            assert "Session ended:" in handle.read()


def test_transaction_log_and_debug():
    """--log appends a session banner and IN/OUT lines; --debug writes to stderr."""
    with tempfile.TemporaryDirectory() as tmp:
        log_path = os.path.join(tmp, "session.log")
        proc = run_cli("--debug", "--log", log_path, "ic", "decide",
                       doc("complementary_not_ic.json"), "f", "g")
        assert proc.returncode == 1
        assert "DEBUG: command ic decide" in proc.stderr

        with open(log_path, encoding="utf-8") as handle:
            log = handle.read()
        print(log)
        assert "=" * 60 in log
        assert "Session started:" in log
        assert "] IN : --debug --log" in log
        assert "] OUT: verdict   FALSE" in log
        assert "Session ended:" in log


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
