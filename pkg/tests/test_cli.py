"""End-to-end command-line tests driven through cli.main."""

import io
import json
import random

import pytest

from cqca import LaurentPoly, identity, local_f, shear_g, shift
from cqca.cli import PolyParseError, main, parse_poly, render_poly


def write_matrix(tmp_path, s, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps(s.to_json_dict()))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- polynomial surface syntax ---------------------------------------------------


def test_parse_poly_examples():
    assert parse_poly("1 + u + u^-1", 2).terms == {(0,): 1, (1,): 1, (-1,): 1}
    assert parse_poly("2u^3 + 3", 5).terms == {(3,): 2, (0,): 3}
    assert parse_poly("u + u", 2).is_zero()


def test_parse_poly_negative_coefficients_reduce():
    assert parse_poly("3 - u", 2) == parse_poly("1 + u", 2)
    assert parse_poly("-1", 5) == LaurentPoly.constant(5, 1, 4)


def test_parse_poly_two_variables():
    poly = parse_poly("1 + 2u1u2^-1", 3, d=2)
    assert poly.terms == {(0, 0): 1, (1, -1): 2}
    assert parse_poly("u2^2", 3, d=2).terms == {(0, 2): 1}


def test_parse_poly_rejects_bad_syntax():
    with pytest.raises(PolyParseError):
        parse_poly("", 2)
    with pytest.raises(PolyParseError):
        parse_poly("u ** 2", 2)
    with pytest.raises(PolyParseError):
        parse_poly("u2", 2)  # indexed variables need d >= 2
    with pytest.raises(PolyParseError):
        parse_poly("u3 + 1", 3, d=2)
    with pytest.raises(PolyParseError):
        parse_poly("u^9999999999", 2)
    err = None
    try:
        parse_poly("1 + @", 2)
    except PolyParseError as exc:
        err = exc
    assert err is not None and err.offset == 4


def test_render_parse_round_trip_fuzz():
    rng = random.Random(77)
    for _ in range(1000):
        p = rng.choice((2, 3, 5))
        d = rng.choice((1, 1, 2))
        terms = {}
        for _ in range(rng.randrange(6)):
            e = tuple(rng.randrange(-5, 6) for _ in range(d))
            terms[e] = rng.randrange(p)
        poly = LaurentPoly(p, d, terms)
        assert parse_poly(render_poly(poly), p, d) == poly


# -- verify / classify --------------------------------------------------------------


def test_verify_accepts_shear(tmp_path, capsys):
    path = write_matrix(tmp_path, shear_g(2, 1, 1))
    code, out, _ = run(capsys, ["verify", path])
    assert code == 0
    assert json.loads(out) == {"symplectic": True}


def test_verify_rejects_non_symplectic(tmp_path, capsys):
    s = identity(2, 1)
    bad = {"p": 2, "d": 1, "entries": [["1", "u"], ["0", "1"]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, ["verify", str(path)])
    assert code == 1
    report = json.loads(out)
    assert report["symplectic"] is False
    assert "reason" in report


def test_classify_reports_shift_and_core(tmp_path, capsys):
    s = shift(2, 1, 2) @ shear_g(2, 1, 1)
    path = write_matrix(tmp_path, s)
    code, out, _ = run(capsys, ["classify", path])
    assert code == 0
    report = json.loads(out)
    assert report["symplectic"] is True
    assert report["shift"] == [2]
    assert report["core"] == shear_g(2, 1, 1).to_json_dict()


def test_classify_identity(tmp_path, capsys):
    path = write_matrix(tmp_path, identity(3, 1))
    code, out, _ = run(capsys, ["classify", path])
    assert code == 0
    assert json.loads(out)["shift"] == [0]


def test_flag_cross_check(tmp_path, capsys):
    path = write_matrix(tmp_path, identity(2, 1))
    code, _, err = run(capsys, ["verify", "--p", "3", path])
    assert code == 2
    assert "disagrees" in err
    code, _, err = run(capsys, ["verify", "--d", "2", path])
    assert code == 2


def test_matrix_on_stdin(tmp_path, capsys, monkeypatch):
    payload = json.dumps(identity(2, 1).to_json_dict())
    monkeypatch.setattr("sys.stdin", io.StringIO(payload))
    code, out, _ = run(capsys, ["verify", "-"])
    assert code == 0
    assert json.loads(out)["symplectic"] is True


def test_malformed_inputs_exit_two(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    assert run(capsys, ["verify", missing])[0] == 2

    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    assert run(capsys, ["verify", str(garbled)])[0] == 2

    short = tmp_path / "short.json"
    short.write_text(json.dumps({"p": 2, "entries": []}))
    assert run(capsys, ["verify", str(short)])[0] == 2

    bad_poly = tmp_path / "badpoly.json"
    bad_poly.write_text(json.dumps({"p": 2, "d": 1, "entries": [["1", "@"], ["0", "1"]]}))
    assert run(capsys, ["verify", str(bad_poly)])[0] == 2


# -- compose / invert / factor --------------------------------------------------------


def test_compose_multiplies(tmp_path, capsys):
    left = write_matrix(tmp_path, shear_g(3, 1, 1), "l.json")
    right = write_matrix(tmp_path, shear_g(3, 1, 1), "r.json")
    code, out, _ = run(capsys, ["compose", left, right])
    assert code == 0
    assert json.loads(out) == shear_g(3, 1, 2).to_json_dict()


def test_compose_rejects_mixed_rings(tmp_path, capsys):
    left = write_matrix(tmp_path, identity(2, 1), "l.json")
    right = write_matrix(tmp_path, identity(3, 1), "r.json")
    code, _, err = run(capsys, ["compose", left, right])
    assert code == 2
    assert "disagree" in err


def test_invert_then_compose_gives_identity(tmp_path, capsys):
    s = shift(3, 1, 1) @ shear_g(3, 2, 2) @ local_f(3, 2)
    path = write_matrix(tmp_path, s)
    code, out, _ = run(capsys, ["invert", path])
    assert code == 0
    inverse_path = tmp_path / "inv.json"
    inverse_path.write_text(out)
    code, out, _ = run(capsys, ["compose", path, str(inverse_path)])
    assert code == 0
    assert json.loads(out) == identity(3, 1).to_json_dict()


def test_factor_echoes_input_matrix(tmp_path, capsys):
    s = shift(2, 1, 1) @ shear_g(2, 2, 1) @ local_f(2, 1)
    path = write_matrix(tmp_path, s)
    code, out, _ = run(capsys, ["factor", path])
    assert code == 0
    report = json.loads(out)
    assert report["matrix"] == s.to_json_dict()
    assert report["word"][0] == {"shift": 1}
    for letter in report["word"][1:]:
        assert set(letter) <= {"g", "ug", "f"}


def test_factor_rejects_non_symplectic(tmp_path, capsys):
    bad = {"p": 2, "d": 1, "entries": [["1", "u"], ["0", "1"]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, ["factor", str(path)])
    assert code == 1


# -- recipe ---------------------------------------------------------------------------


def test_recipe_default_factorization(capsys):
    code, out, _ = run(capsys, ["recipe", "--p", "2", "--f", "1 + u + u^-1", "--h", "1"])
    assert code == 0
    assert json.loads(out) == {
        "p": 2,
        "d": 1,
        "entries": [["u^-1 + 1 + u", "u^-1 + u"], ["1", "1"]],
    }


def test_recipe_rejects_non_palindrome(capsys):
    code, _, err = run(capsys, ["recipe", "--p", "2", "--f", "u", "--h", "1"])
    assert code == 1
    assert "palindrome" in err


def test_recipe_rejects_wrong_completion(capsys):
    code, _, err = run(
        capsys,
        ["recipe", "--p", "3", "--f", "1", "--h", "1", "--fp", "1", "--hp", "1"],
    )
    assert code == 1


# -- evolve ---------------------------------------------------------------------------


def test_evolve_shift_track(tmp_path, capsys):
    path = write_matrix(tmp_path, shift(2, 1, 1))
    code, out, _ = run(capsys, ["evolve", path, "--plus", "1", "--steps", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,x,plus,minus"
    assert lines[1:] == ["0,0,1,0", "1,1,1,0", "2,2,1,0", "3,3,1,0"]


def test_evolve_shear_one_step_rows(tmp_path, capsys):
    path = write_matrix(tmp_path, shear_g(2, 1, 1))
    code, out, _ = run(capsys, ["evolve", path, "--plus", "1", "--steps", "1"])
    assert code == 0
    rows = {tuple(line.split(",")) for line in out.strip().splitlines()[1:]}
    assert rows == {
        ("0", "0", "1", "0"),
        ("1", "-1", "0", "1"),
        ("1", "0", "1", "0"),
        ("1", "1", "0", "1"),
    }


def test_evolve_local_support_never_grows(tmp_path, capsys):
    path = write_matrix(tmp_path, local_f(3, 2))
    code, out, _ = run(
        capsys,
        ["evolve", path, "--plus", "1", "--minus", "u", "--steps", "6"],
    )
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        _, x, _, _ = line.split(",")
        assert x in ("0", "1")


def test_evolve_ascii_render(tmp_path, capsys):
    path = write_matrix(tmp_path, shear_g(2, 1, 1))
    code, out, _ = run(
        capsys,
        ["evolve", path, "--plus", "1", "--steps", "2", "--format", "ascii"],
    )
    assert code == 0
    assert out.splitlines() == ["  +  ", " -+- ", "  +  "]


def test_evolve_ascii_cap_falls_back_to_csv(tmp_path, capsys):
    path = write_matrix(tmp_path, shift(2, 1, 1))
    code, out, err = run(
        capsys,
        ["evolve", path, "--plus", "1", "--steps", "110", "--format", "ascii"],
    )
    assert code == 0
    assert "falling back to csv" in err
    assert out.splitlines()[0] == "t,x,plus,minus"


def test_evolve_pgm_bytes(tmp_path, capsys):
    path = write_matrix(tmp_path, shear_g(2, 1, 1))
    out_path = tmp_path / "trace.pgm"
    code, _, _ = run(
        capsys,
        [
            "evolve",
            path,
            "--plus",
            "1",
            "--steps",
            "1",
            "--format",
            "pgm",
            "--out",
            str(out_path),
        ],
    )
    assert code == 0
    data = out_path.read_bytes()
    assert data == b"P5 3 2 255\n" + bytes([0, 96, 0, 160, 96, 160])


def test_evolve_rejects_non_symplectic(tmp_path, capsys):
    bad = {"p": 2, "d": 1, "entries": [["1", "u"], ["0", "1"]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, _ = run(capsys, ["evolve", str(path), "--plus", "1"])
    assert code == 1


def test_evolve_rejects_negative_steps(tmp_path, capsys):
    path = write_matrix(tmp_path, identity(2, 1))
    code, _, _ = run(capsys, ["evolve", path, "--plus", "1", "--steps", "-1"])
    assert code == 2


# -- phase / selftest -------------------------------------------------------------------


def test_phase_identity_zero_exponents(tmp_path, capsys):
    path = write_matrix(tmp_path, identity(2, 1))
    code, out, _ = run(capsys, ["phase", path])
    assert code == 0
    assert json.loads(out) == {"order": 4, "gen_plus": 0, "gen_minus": 0}


def test_phase_shear_validates(tmp_path, capsys):
    path = write_matrix(tmp_path, shear_g(2, 1, 1))
    code, out, _ = run(capsys, ["phase", path])
    assert code == 0
    report = json.loads(out)
    assert report["order"] == 4
    assert report["gen_plus"] % 2 == 0 and report["gen_minus"] % 2 == 0


def test_phase_odd_characteristic(tmp_path, capsys):
    path = write_matrix(tmp_path, local_f(3, 1))
    code, out, _ = run(capsys, ["phase", path])
    assert code == 0
    assert json.loads(out)["order"] == 3


def test_selftest_small_window(capsys):
    code, out, _ = run(capsys, ["selftest", "--p", "2", "--sites", "3"])
    assert code == 0
    reports = [json.loads(line) for line in out.strip().splitlines()]
    assert [r["check"] for r in reports] == [
        "unitarity",
        "weyl_relation",
        "commutation",
        "order_condition",
        "clifford_action",
    ]
    assert all(r["pass"] for r in reports)
