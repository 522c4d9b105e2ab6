import json
import subprocess
import sys

import pytest

from affine_crystal.cli import SELFTESTS, main

GW_ARGS = [
    "gw-invariant", "--u", "1,2,4,7,3,5,6", "--w", "3,1,5,4,2,6,7",
    "--v", "4,2,5,7,1,3,6", "--d", "0,0,0,0,0,0",
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_stanley(capsys):
    code, out, _ = run(capsys, "expand-stanley", "--word", "3,4,1,2", "--n", "5")
    assert code == 0
    data = json.loads(out)
    assert data["coefficients"] == {"2,2": 1, "2,1,1": 1}
    assert data["method"] == "crystal" and data["hypotheses_met"] is True


def test_expand_stanley_methods_agree(capsys):
    outs = []
    for method in ("crystal", "alternating"):
        _, out, _ = run(capsys, "expand-stanley", "--window", "4,3,2,1", "--method", method)
        outs.append(json.loads(out)["coefficients"])
    assert outs[0] == outs[1] == {"3,2,1": 1}


def test_monomial_basis(capsys):
    _, out, _ = run(capsys, "expand-stanley", "--window", "4,3,2,1", "--basis", "m")
    assert json.loads(out)["coefficients"]["1,1,1,1,1,1"] == 16


def test_crystal_graph_dot(capsys):
    code, out, _ = run(capsys, "crystal-graph", "--word", "3,4,1,2", "--n", "5", "--format", "dot")
    assert code == 0
    lines = [line for line in out.splitlines() if "label=" in line]
    assert sum("->" in line for line in lines) == 8
    assert sum("->" not in line for line in lines) == 9


def test_crystal_graph_json(capsys):
    _, out, _ = run(capsys, "crystal-graph", "--word", "3,4,1,2", "--n", "5")
    data = json.loads(out)
    assert len(data["vertices"]) == 9 and len(data["edges"]) == 8
    assert data["highest_weights"] == {"2,2": 1, "2,1,1": 1}


def test_highest_weights(capsys):
    _, out, _ = run(capsys, "highest-weights", "--word", "3,4,1,2", "--n", "5")
    assert json.loads(out)["vertices"] == ["()(31)(42)", "(1)(3)(42)"]


def test_gw_invariant(capsys):
    code, out, _ = run(capsys, *GW_ARGS)
    data = json.loads(out)
    assert code == 0 and data["value"] == 1
    assert data["mu"] == "3,3,2" and data["r"] == 4


def test_lr_and_fusion(capsys):
    _, out, _ = run(capsys, "lr-coeff", "--mu", "1", "--w-shape", "1", "--v-shape", "2", "--n", "4")
    assert json.loads(out)["value"] == 1
    _, out, _ = run(capsys, "fusion", "--lam", "1", "--mu", "1", "--nu", "2", "--ell", "2", "--n", "4")
    assert json.loads(out)["value"] == 1


def test_positroid_and_counts(capsys):
    _, out, _ = run(capsys, "positroid", "--window", "2,5,4,7", "--r", "2", "--n", "4")
    assert json.loads(out)["coefficients"] == {"2": 1, "1,1": 1}
    _, out, _ = run(capsys, "count-factorizations", "--word", "3,4,1,2", "--n", "5", "--weight", "2,2,0")
    assert json.loads(out)["count"] == 1


def test_verify_commands(capsys):
    _, out, _ = run(capsys, "verify-stembridge", "--word", "3,4,1,2", "--n", "5")
    assert json.loads(out)["passed"] is True
    _, out, _ = run(capsys, "verify-involution", "--word", "3,4,1,2", "--n", "5", "--mu", "2,1,1")
    data = json.loads(out)
    assert data["passed"] is True and data["signed_sum"] == 1


def test_hypothesis_fallback(capsys):
    code, out, err = run(capsys, "expand-stanley", "--word", "0,1,2", "--n", "3")
    data = json.loads(out)
    assert code == 0 and data["hypotheses_met"] is False
    assert data["coefficients"] == {"1,1,1": 1}
    assert "note:" in err


def test_domain_errors_exit_1(capsys):
    code, out, err = run(capsys, "fusion", "--lam", "1", "--mu", "1", "--nu", "1", "--ell", "2", "--n", "4")
    assert code == 1 and out == "" and err.startswith("error: NotDivisible")
    code, _, err = run(capsys, "lr-coeff", "--mu", "1", "--w", "2,1,3", "--v", "1,2,3")
    assert code == 1 and "NotGrassmannian" in err


def test_usage_errors_exit_2(capsys):
    for argv in (["bogus"], ["expand-stanley", "--window", "1,1,3"], ["gw-invariant", "--u", "1,2"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
        capsys.readouterr()


def test_deterministic(capsys):
    first = run(capsys, "crystal-graph", "--word", "6,2,3,4,3,1,2,0", "--n", "7", "--format", "dot")
    second = run(capsys, "crystal-graph", "--word", "6,2,3,4,3,1,2,0", "--n", "7", "--format", "dot")
    assert first == second


@pytest.mark.parametrize("command", sorted(SELFTESTS))
def test_selftests(capsys, command):
    code, out, _ = run(capsys, command, "--selftest")
    assert code == 0 and json.loads(out)["passed"] is True


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "affine_crystal", *GW_ARGS], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 1
