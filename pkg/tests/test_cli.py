"""End-to-end tests of the command line."""
import json

import mpmath
import pytest

from modreg.app import run
from modreg.core.lfunc import lambda_H_closed_form


def qexp(capsys, *args) -> tuple[int, str]:
    """Run ``modreg qexp`` and return the exit code and stdout."""
    code = run(["qexp", *args])
    return code, capsys.readouterr().out


def lambda_value(capsys, *args) -> tuple[int, dict]:
    """Run ``modreg lambda`` and return the exit code and the JSON record."""
    code = run(["lambda", *args])
    return code, json.loads(capsys.readouterr().out)


def verify(capsys, *args) -> tuple[int, str]:
    """Run ``modreg verify`` and return the exit code and stdout."""
    code = run(["verify", *args])
    return code, capsys.readouterr().out


def test_qexp_weight_one_G(capsys):
    code, out = qexp(capsys, "G", "1", "0", "2", "5", "--terms", "10")
    lines = out.splitlines()
    assert code == 0
    header = json.loads(lines[0])
    assert header["family"] == "G" and header["level"] == 25 and header["truncation"] == "10"
    assert lines[1] == "0/1 1/10"
    assert len(lines) == 11


def test_qexp_H_header_and_terms(capsys):
    code, out = qexp(capsys, "H", "3", "1", "2", "5", "--terms", "5")
    lines = out.splitlines()
    assert code == 0
    assert json.loads(lines[0])["weight"] == 3
    assert len(lines) == 6


def test_qexp_to_file(capsys, tmp_path):
    target = tmp_path / "g.txt"
    code, out = qexp(capsys, "G", "3", "1", "1", "5", "--terms", "4", "--out", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 5


def test_qexp_rejects_weight_two_G_with_a_zero(capsys):
    code, out = qexp(capsys, "G", "2", "0", "1", "5")
    assert code == 2
    record = json.loads(out)
    assert record["error"] == "InvalidSpec"
    assert record["schema"] == 1


def test_lambda_of_H(capsys):
    code, record = lambda_value(capsys, "H", "3", "1", "2", "5", "--s", "4")
    assert code == 0
    expected = lambda_H_closed_form(3, 1, 2, 5, 4).value
    assert abs(complex(record["value_re"], record["value_im"]) - complex(expected)) < 1e-8
    assert record["regularized"] is False
    assert record["series_spec"] == [{"family": "H", "k": 3, "a": 1, "b": 2, "N": 5}]


def test_lambda_complex_point(capsys):
    code, record = lambda_value(capsys, "H", "3", "2", "0", "5", "--s", "1.5+1i")
    assert code == 0
    assert record["s"] == [1.5, 1.0]


def test_lambda_star_at_zero(capsys):
    code, record = lambda_value(capsys, "G", "3", "1", "0", "5", "--s", "0", "--star")
    assert code == 0
    assert record["regularized"] is True
    assert record["pole_subtractions"][0]["at"] == "0"


def test_lambda_pole(capsys):
    code, record = lambda_value(capsys, "G", "1", "1", "0", "5", "--s", "0")
    assert code == 3
    assert record["error"] == "PoleAt0"


@pytest.mark.parametrize("args", [["E", "3", "1", "1", "5", "--s", "4"], ["G", "3", "1", "0", "5", "--s", "abc"]])
def test_lambda_invalid(capsys, args):
    code, record = lambda_value(capsys, *args)
    assert code == 2
    assert record["error"] == "InvalidSpec"


def test_lambda_of_product(capsys):
    code, record = lambda_value(
        capsys, "G", "1", "1", "0", "3", "--times", "G", "1", "0", "1", "3", "--s", "1.5", "--terms", "150"
    )
    assert code == 0
    assert len(record["series_spec"]) == 2


def test_verify_fibers(capsys):
    code, out = verify(capsys, "fibers")
    report = json.loads(out)
    assert code == 0
    assert report["passed"] is True
    assert report["suite"] == "fibers"
    ids = [check["id"] for check in report["checks"]]
    assert ids == sorted(ids)
    assert all(check["residual"] == 0 for check in report["checks"])


@pytest.mark.parametrize(
    "args",
    [
        ["hurwitz"],
        ["atkin_lehner"],
        ["slash"],
        ["cancellation", "--k1", "0", "--k2", "0", "--N", "3"],
        ["theorem", "--k1", "0", "--k2", "0", "--N", "3"],
        pytest.param(["fourier"], marks=pytest.mark.slow),
        pytest.param(["rz"], marks=pytest.mark.slow),
        pytest.param(["rankin"], marks=pytest.mark.slow),
        pytest.param(["preswap"], marks=pytest.mark.slow),
        pytest.param(["all"], marks=pytest.mark.slow),
    ],
)
def test_verify_suite_passes(capsys, args):
    code, out = verify(capsys, *args)
    report = json.loads(out)
    assert report["suite"] == args[0]
    assert report["checks"]
    assert report["passed"] is True
    assert code == 0


def test_verify_formats(capsys):
    code, out = verify(capsys, "fibers", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("id,identity,residual,tolerance,passed")
    code, out = verify(capsys, "fibers", "--format", "TEXT")
    assert code == 0
    assert out.splitlines()[-2].startswith("fibers: ")


def test_verify_is_deterministic(capsys):
    first = verify(capsys, "cancellation", "--k1", "0", "--k2", "1", "--N", "5")
    second = verify(capsys, "cancellation", "--k1", "0", "--k2", "1", "--N", "5")
    assert first == second
    assert first[0] == 0


def test_verify_fails_on_tight_tolerance(capsys):
    code, out = verify(capsys, "hurwitz", "--tol", "1e-300")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_bad_environment(capsys, monkeypatch):
    monkeypatch.setenv("MODREG_TERMS", "-5")
    code, out = qexp(capsys, "G", "1", "0", "2", "5")
    assert code == 2
    assert "truncation" in json.loads(out)["detail"]


def test_flags_override_environment(capsys, monkeypatch):
    monkeypatch.setenv("MODREG_TERMS", "-5")
    code, out = qexp(capsys, "G", "1", "0", "2", "5", "--terms", "3")
    assert code == 0
    assert len(out.splitlines()) == 4


def test_precision_flag_sets_working_precision(capsys):
    with mpmath.workprec(53):
        qexp(capsys, "G", "1", "0", "2", "5", "--terms", "2", "--prec", "200")
        assert mpmath.mp.prec == 200
