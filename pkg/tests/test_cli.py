import json

import pytest

from qmsurf.cli import main

from conftest import fixture_path

CURVE = fixture_path("qm_disc6_curve.json")
I_ACT = '[[["0","0"],["1","0"]],[["6","0"],["0","0"]]]'
J_ACT = '[[["0","1"],["0","0"]],[["0","0"],["0","-1"]]]'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_algebra_info_json(capsys):
    code, out = run(capsys, "algebra", "info", "--json", "--", "6", "-3")
    assert code == 0
    data = json.loads(out)
    assert data["discriminant"] == 6
    assert data["ramified_primes"] == [2, 3]
    assert data["pi_principal"] == 1


def test_algebra_pi(capsys):
    for D, expected in ((6, 1), (10, 1), (14, 2), (22, 1)):
        code, out = run(capsys, "algebra", "pi", "--json", str(D))
        assert code == 0
        assert json.loads(out)["pi"] == expected


def test_algebra_hilbert(capsys):
    code, out = run(capsys, "algebra", "hilbert", "--json", "--",
                    "6", "-3", "2")
    assert code == 0
    assert json.loads(out)["hilbert"] == -1


def test_order_check(capsys):
    basis = json.dumps([["1", "0", "0", "0"], ["0", "1/2", "0", "1/6"],
                        ["1/2", "0", "1/2", "0"], ["0", "0", "0", "1/3"]])
    code, out = run(capsys, "order", "check", "--json", "--basis", basis,
                    "--", "6", "-3")
    assert code == 0
    data = json.loads(out)
    assert data["valid"] and data["maximal"] and data["discriminant"] == 6


def test_curve_igusa_json(capsys):
    code, out = run(capsys, "curve", "igusa", "--json", "--curve", CURVE)
    assert code == 0
    data = json.loads(out)
    assert data["recognized"]
    assert data["absolute"][1] == "846901248"


def test_curve_richelot_json(capsys):
    code, out = run(capsys, "curve", "richelot", "--json", "--curve", CURVE)
    assert code == 0
    data = json.loads(out)
    exact = [g for g in data["groupings"] if g.get("exact")]
    assert len(exact) == 1
    assert exact[0]["pairs"] == [[0, 2], [1, 5], [3, 4]]
    assert exact[0]["delta"] == "2/3"
    assert exact[0]["self_isogenous"] is True


def test_curve_periods(capsys):
    code, out = run(capsys, "curve", "periods", "--json", "--curve", CURVE,
                    "--precision", "40")
    assert code == 0
    data = json.loads(out)
    assert len(data["period_matrix"]) == 2
    assert float(data["riemann_residual"]) < 1e-30


def test_endo_detect(capsys):
    code, out = run(capsys, "endo", "detect", "--json", "--curve", CURVE,
                    "--i-action", I_ACT, "--j-action", J_ACT,
                    "--precision", "40")
    assert code == 0
    data = json.loads(out)
    assert data["order_discriminant"] == 6
    assert data["maximal"] is True


def test_polarize_search(capsys):
    code, out = run(capsys, "polarize", "search", "--json", "--curve", CURVE,
                    "--i-action", I_ACT, "--j-action", J_ACT,
                    "--precision", "40", "--expect-principal")
    assert code == 0
    data = json.loads(out)
    assert data["classes"] == 1
    assert data["form_type"] == [1, 2]


def test_input_error_exit_code(capsys):
    code = main(["curve", "igusa", "--curve", "/does/not/exist.json"])
    assert code == 2


def test_low_precision_rejected(capsys):
    code = main(["curve", "igusa", "--curve", CURVE, "--precision", "5"])
    assert code == 2


def test_bad_json_action(capsys):
    code = main(["endo", "detect", "--curve", CURVE,
                 "--i-action", "not json", "--j-action", J_ACT])
    assert code == 2
