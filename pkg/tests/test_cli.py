import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from finite_heat.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def schema(name):
    return json.loads(resources.files("finite_heat").joinpath("schemas", name).read_text())


def strip_seconds(report):
    for entry in report["checks"].values():
        entry.pop("seconds", None)
    return report


class TestTheta:
    def test_tau2(self):
        assert run("theta", "--k", "2") == (0, "x^3/3 - s3\n")

    def test_tau0(self):
        assert run("theta", "--k", "0") == (0, "1\n")

    def test_substitution(self):
        assert run("theta", "--k", "2", "--set", "s3=0") == (0, "x^3/3\n")

    def test_rational_value(self):
        assert run("theta", "--k", "2", "--set", "s3=1/2") == (0, "x^3/3 - 1/2\n")

    def test_json_has_potential(self):
        code, text = run("theta", "--k", "1", "--format", "json")
        assert code == 0
        assert json.loads(text)["potential"] == "-2/x^2"


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            ["theta", "--k", "99"],
            ["theta"],
            ["theta", "--k", "1", "--set", "q=1"],
            ["verify", "--k", "99"],
            ["verify", "--k", "1", "--checks", "nope"],
            ["flow", "--k", "1", "--j", "2"],
            ["gn", "--n", "3", "--orders", "4"],
            ["bogus"],
        ],
    )
    def test_exit_2(self, argv, capsys):
        assert run(*argv)[0] == 2


class TestHadamard:
    def test_cell1(self):
        code, text = run("hadamard", "--k", "1", "--orders", "3")
        assert code == 0
        assert text.splitlines() == ["H_1 = -2/(x*y)", "H_2 = 0", "H_3 = 0", "termination_index = 2"]

    def test_cell0(self):
        code, text = run("hadamard", "--k", "0", "--orders", "2")
        assert code == 0
        assert text.splitlines() == ["H_1 = 0", "H_2 = 0", "termination_index = 1"]

    def test_json_schema(self):
        code, text = run("hadamard", "--k", "2", "--orders", "4", "--format", "json")
        assert code == 0
        report = json.loads(text)
        jsonschema.validate(report, schema("hadamard_report.json"))
        assert report["termination_index"] == 3
        assert report["coefficients"][0] == "1"
        assert report["coefficients"][3] == "0"
        assert set(report["certificates"].values()) == {"pass"}

    def test_json_nonterminating(self):
        code, text = run("hadamard", "--u", "x", "--orders", "2", "--format", "json")
        report = json.loads(text)
        jsonschema.validate(report, schema("hadamard_report.json"))
        assert report["termination_index"] is None
        assert report["certificates"]["finite_kernel"] == "skipped"

    def test_obstruction(self, capsys):
        assert run("hadamard", "--u", "1/x", "--orders", "2")[0] == 3
        assert "obstruction" in capsys.readouterr().err

    def test_deterministic(self):
        argv = ("hadamard", "--k", "2", "--orders", "4", "--format", "json")
        assert run(*argv)[1] == run(*argv)[1]


class TestOtherCommands:
    def test_potential(self):
        assert run("potential", "--k", "1") == (0, "-2/x^2\n")

    def test_gn(self):
        code, text = run("gn", "--n", "1", "--orders", "2")
        assert code == 0
        assert text.splitlines() == ["beta_0 = 1", "beta_1 = -1/2", "beta_2 = 1/8", "lemma = pass"]

    def test_flow_generic(self):
        assert run("flow", "--j", "3", "--u", "u0") == (0, "3*u0*u1/2 + u3/4\n")

    def test_flow_cell(self):
        assert run("flow", "--k", "1", "--j", "3") == (0, "0\n")

    def test_bc(self):
        code, text = run("bc", "--k", "1")
        assert code == 0
        assert text.splitlines()[1] == "M = d^3 + (-3/x^2)*d + (3/x^3)"


class TestVerify:
    def test_cell1(self):
        code, text = run("verify", "--k", "1")
        assert code == 0
        assert text.splitlines()[-1] == "overall: pass"

    def test_subset_json(self):
        code, text = run("verify", "--k", "2", "--checks", "bc,hadamard", "--format", "json")
        assert code == 0
        report = json.loads(text)
        jsonschema.validate(report, schema("verify_report.json"))
        assert sorted(report["checks"]) == ["bc", "hadamard"]
        assert report["status"] == "pass"

    def test_deterministic_modulo_timing(self):
        argv = ("verify", "--k", "1", "--format", "json")
        first = strip_seconds(json.loads(run(*argv)[1]))
        second = strip_seconds(json.loads(run(*argv)[1]))
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_failure_exit_1(self):
        code, text = run("verify", "--k", "2", "--checks", "bc", "--depth", "3")
        assert code == 1
        assert "first failure: bc" in text

    def test_constants(self):
        code, text = run("verify", "--k", "2", "--set", "s3=2", "--checks", "hadamard,residue", "--format", "json")
        assert code == 0
        assert json.loads(text)["constants"] == {"s3": "2"}


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "finite_heat", "theta", "--k", "1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "x\n"


@pytest.mark.slow
def test_verify_cell3():
    code, text = run("verify", "--k", "3")
    assert code == 0, text
