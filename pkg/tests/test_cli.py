import json

import pytest

from sievecraft import cli


def _run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_density_poly(capsys):
    code, out, err = _run(capsys, "density", "--poly", "x", "--B", "100")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "sievecraft/1"
    assert data["lower"] <= 6 / 3.14159265**2 <= data["upper"]
    assert data["status"] == "ok"


def test_density_form(capsys):
    code, out, _ = _run(capsys, "density", "--form", "x^3 + 2*z^3", "--B", "50", "--coprime")
    assert code == 0
    data = json.loads(out)
    assert data["coprime"] is True
    assert 0 < data["lower"] <= data["upper"] < 1


def test_census_poly(capsys):
    code, out, _ = _run(capsys, "census", "--poly", "x", "--N", "100")
    assert code == 0
    data = json.loads(out)
    assert data["observed"] == 61


def test_census_form(capsys):
    code, out, _ = _run(capsys, "census", "--form", "x*z", "--N", "10")
    assert code == 0
    assert json.loads(out)["observed"] == 132


def test_delta(capsys):
    code, out, _ = _run(capsys, "delta", "--poly", "x^3 + 2", "--N", "100")
    assert code == 0
    assert json.loads(out)["count"] == 2
    code, out, _ = _run(capsys, "delta", "--form", "x^3 + 2*z^3", "--N", "30")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 14
    assert data["profile"] == {"31": 8, "43": 4, "71": 2}


def test_twists(capsys):
    code, out, _ = _run(capsys, "twists", "--form", "x^3 + 2*z^3", "--N", "15")
    assert code == 0
    assert out.startswith("d,S_d\n")
    assert "\n3,3\n" in out


def test_tables(capsys):
    code, out, _ = _run(capsys, "tables")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 17
    assert lines[0].startswith("group,order,")
    code, out, _ = _run(capsys, "tables", "--alpha", "0.5")
    assert code == 0
    assert len(out.strip().split("\n")) == 17


def test_avgprod(capsys):
    code, out, _ = _run(capsys, "avgprod", "--poly", "x", "--N", "10000")
    assert code == 0
    data = json.loads(out)
    assert abs(data["empirical_re"] - 0.6079) < 0.01
    assert data["predicted_lo"] <= data["empirical_re"] + data["delta_term"]
    code, out, _ = _run(
        capsys, "avgprod", "--poly", "x", "--N", "5000", "--progression", "1,3"
    )
    assert code == 0
    assert abs(json.loads(out)["empirical_re"] - 0.228) < 0.01


def test_sievecheck(capsys):
    code, out, _ = _run(capsys, "sievecheck", "--seed", "1", "--count", "20")
    assert code == 0
    data = json.loads(out)
    assert data["violations"] == 0
    assert data["checks"] > 0


def test_splitting(capsys):
    code, out, _ = _run(capsys, "splitting", "--poly", "x^3 - 2", "--p", "31")
    assert code == 0
    assert json.loads(out)["type"] == [1, 1, 1]


def test_determinism(capsys):
    a = _run(capsys, "census", "--poly", "x^3 + 2", "--N", "2000")
    b = _run(capsys, "census", "--poly", "x^3 + 2", "--N", "2000")
    ja, jb = json.loads(a[1]), json.loads(b[1])
    ja.pop("seconds", None), jb.pop("seconds", None)
    assert ja == jb


def test_exit_usage(capsys):
    assert _run(capsys, "density")[0] == 64  # missing --poly/--form
    assert _run(capsys, "nonsense")[0] == 64
    assert _run(capsys)[0] == 64


def test_exit_domain(capsys):
    # square-full polynomial: domain error
    code, _, err = _run(capsys, "density", "--poly", "x^2 - 2*x + 1")
    assert code == 2
    assert "error" in err
    # unparsable polynomial
    assert _run(capsys, "census", "--poly", "x +", "--N", "10")[0] == 2
    # ramified prime for splitting
    assert _run(capsys, "splitting", "--poly", "x^3 - 2", "--p", "3")[0] == 2


def test_exit_resource(capsys):
    code, _, err = _run(capsys, "census", "--poly", "x^9 + 1", "--N", "10000000")
    assert code == 3
    assert "resource" in err


def test_digits_rounding(capsys):
    code, out, _ = _run(capsys, "--digits", "3", "density", "--poly", "x", "--B", "100")
    assert code == 0
    data = json.loads(out)
    assert data["lower"] == round(data["lower"], 3)


def test_console_script_entry():
    with pytest.raises(SystemExit) as exc:
        cli.main()
    assert exc.value.code == 64  # no argv supplied under pytest
