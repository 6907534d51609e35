import math

import pytest

from graphheat.cli import CliError, _select_pairs, main

P3_TEXT = """\
graph 3
v 0 1.0 0.0
v 1 1.0 0.0
v 2 1.0 0.0
e 0 1 1.0
e 1 2 1.0
"""

TWO_EDGES_TEXT = """\
graph 4
v 0 1.0 0.0
v 1 1.0 0.0
v 2 1.0 0.0
v 3 1.0 0.0
e 0 1 1.0
e 2 3 1.0
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows(out):
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def test_distance_on_path_file(tmp_path, capsys):
    path = tmp_path / "p3.txt"
    path.write_text(P3_TEXT)
    code, out, _ = run(capsys, "distance", "--input", str(path))
    assert code == 0
    header, body = rows(out)
    assert header == ["x", "y", "d_E", "d_L", "status"]
    assert body == [
        ["0", "1", "1", "1", "ok"],
        ["0", "2", "2", "2", "ok"],
        ["1", "2", "1", "1", "ok"],
    ]


def test_distance_disconnected_consistent(tmp_path, capsys):
    path = tmp_path / "two.txt"
    path.write_text(TWO_EDGES_TEXT)
    code, out, _ = run(capsys, "distance", "--input", str(path), "--cutoff", "10")
    assert code == 0
    _, body = rows(out)
    row = next(r for r in body if r[0] == "0" and r[1] == "3")
    assert row[2] == "inf"
    assert row[3] == ">10"
    assert row[4] == "ok"


def test_distance_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("graph 2\nv 0 1 0\nv 1 1 0\ne 0 oops 1\n")
    code, _, err = run(capsys, "distance", "--input", str(path))
    assert code == 2
    assert "line 4" in err


def test_verify_edge_graph_all_pass(capsys):
    code, out, err = run(capsys, "verify", "--gen", "path:2")
    assert code == 0
    header, body = rows(out)
    assert header == ["which", "x", "y", "d", "t", "n", "lhs", "rhs", "margin", "passed"]
    assert body  # one pair, four checks per grid time
    assert all(r[-1] == "true" for r in body)
    assert "checks passed" in err


def test_verify_random_graph(capsys):
    code, out, _ = run(capsys, "verify", "--gen", "random:15:0.3:42")
    assert code == 0
    _, body = rows(out)
    assert body
    assert all(r[-1] == "true" for r in body)


def test_verify_empty_pair_selection(capsys):
    code, out, _ = run(capsys, "verify", "--gen", "path:1")
    assert code == 0
    header, body = rows(out)
    assert body == []


def test_exponent_fits(capsys):
    code, out, _ = run(capsys, "exponent", "--gen", "path:3")
    assert code == 0
    header, body = rows(out)
    assert header == ["x", "y", "group", "slope", "d_E", "abs_error", "max_residual"]
    fits = {(r[0], r[1]): float(r[3]) for r in body}
    assert abs(fits[("0", "1")] - 1) < 0.01
    assert abs(fits[("0", "2")] - 2) < 0.01
    assert abs(fits[("1", "2")] - 1) < 0.01


def test_exponent_long_path_pair(capsys):
    code, out, _ = run(capsys, "exponent", "--gen", "path:6", "--pairs", "0,5")
    assert code == 0
    _, body = rows(out)
    assert len(body) == 1
    assert abs(float(body[0][3]) - 5) < 0.02


def test_exponent_wave_matches_heat(capsys):
    code_h, out_h, _ = run(capsys, "exponent", "--gen", "path:3", "--group", "heat")
    code_w, out_w, _ = run(capsys, "exponent", "--gen", "path:3", "--group", "wave")
    assert code_h == 0 and code_w == 0
    _, body_h = rows(out_h)
    _, body_w = rows(out_w)
    for rh, rw in zip(body_h, body_w):
        assert abs(float(rh[3]) - float(rw[3])) < 0.05


def test_heat_sweep_matches_closed_form(capsys):
    code, out, _ = run(capsys, "heat", "--gen", "path:2", "--pairs", "0,1")
    assert code == 0
    header, body = rows(out)
    assert header == ["x", "y", "t", "value", "leading", "bound", "method"]
    saw_zero_row = False
    for row in body:
        t = float(row[2])
        value = float(row[3])
        if t == 0.0:
            saw_zero_row = True
            assert value == 0.0  # off-diagonal point masses at t = 0
        else:
            closed = -math.expm1(-2.0 * t) / 2.0
            assert abs(value - closed) <= 1e-12 * closed
        # leading column is t^d |moment| / d! = t for this pair
        assert math.isclose(float(row[4]), t, rel_tol=1e-12, abs_tol=0.0) or t == 0.0
    assert saw_zero_row


def test_heat_sweep_diagonal_t0_row(capsys):
    code, out, _ = run(capsys, "heat", "--gen", "path:2", "--pairs", "0,0")
    assert code == 0
    _, body = rows(out)
    zero_row = next(r for r in body if float(r[2]) == 0.0)
    assert float(zero_row[3]) == 1.0  # m(0) = 1


def test_wave_sweep_reports_modulus(capsys):
    code, out, _ = run(capsys, "wave", "--gen", "path:2", "--pairs", "0,1")
    assert code == 0
    _, body = rows(out)
    for row in body:
        t = float(row[2])
        assert abs(float(row[3]) - abs(math.sin(t))) <= 1e-12


def test_moments_subcommand(capsys):
    code, out, _ = run(capsys, "moments", "--gen", "path:2", "--pairs", "0,1", "--nmax", "2")
    assert code == 0
    header, body = rows(out)
    assert header == ["x", "y", "n", "moment", "d_L"]
    assert [r[3] for r in body] == ["0.0", "-1.0", "-2.0"]
    assert all(r[4] == "1" for r in body)


def test_moments_disconnected_label(capsys):
    code, out, _ = run(capsys, "moments", "--gen", "random:4:0.0:1", "--pairs", "0,3",
                       "--nmax", "3")
    assert code == 0
    _, body = rows(out)
    assert all(r[4] == ">3" for r in body)


def test_output_deterministic(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    for dest in (a, b):
        code = main(["verify", "--gen", "random:8:0.4:7", "--out", str(dest)])
        capsys.readouterr()
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_generator_reproducible(capsys):
    _, out1, _ = run(capsys, "moments", "--gen", "random:10:0.4:7", "--pairs", "0,9")
    _, out2, _ = run(capsys, "moments", "--gen", "random:10:0.4:7", "--pairs", "0,9")
    assert out1 == out2


def test_pair_list_parsing(capsys):
    code, out, _ = run(capsys, "distance", "--gen", "path:4", "--pairs", "0,3;1,2")
    assert code == 0
    _, body = rows(out)
    assert [(r[0], r[1]) for r in body] == [("0", "3"), ("1", "2")]


def test_sample_requires_seed(capsys):
    code, _, err = run(capsys, "distance", "--gen", "path:4", "--pairs", "sample:2")
    assert code == 2
    assert "seed" in err


def test_sample_with_seed(capsys):
    code, out, _ = run(capsys, "distance", "--gen", "path:5", "--pairs", "sample:3",
                       "--seed", "1")
    assert code == 0
    _, body = rows(out)
    assert len(body) == 3


def test_bad_generator_spec(capsys):
    code, _, err = run(capsys, "verify", "--gen", "pentagon:5")
    assert code == 2
    assert "generator spec" in err


def test_missing_source(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2
    assert "--input" in err


def test_bad_pair_vertex(capsys):
    code, _, err = run(capsys, "distance", "--gen", "path:3", "--pairs", "0,9")
    assert code == 2
    assert "unknown vertex" in err


def test_grid_validation(capsys):
    code, _, err = run(capsys, "verify", "--gen", "path:2", "--count", "2")
    assert code == 2
    assert "--count" in err


def test_all_pairs_cap_samples_with_seed():
    from graphheat import path_graph
    g = path_graph(150)  # 11175 pairs, above the 10000 cap
    with pytest.raises(CliError):
        _select_pairs(g, "all", None)
    pairs = _select_pairs(g, "all", 3)
    assert len(pairs) == 10000
    assert pairs == sorted(pairs)
    assert pairs == _select_pairs(g, "all", 3)  # seeded, reproducible
