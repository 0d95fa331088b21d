from __future__ import annotations

from mathrepro.runner import Environment, run_line, run_script


def run(lines, env=None):
    env = env or Environment()
    out = []
    for line in lines:
        printed, _ = run_line(line, env)
        out.append(printed)
    return out


def test_integer_arithmetic():
    assert run(["1 + 2 * 3", "2 ^ 10", "-3 ^ 2", "7 - 10"]) == [["7"], ["1024"], ["-9"], ["-3"]]


def test_field_and_polynomials():
    out = run(
        [
            "F = GF(7, 2)",
            "o = gen(F)",
            "R, x, y = polynomial_ring(F, [\"x\", \"y\"])",
            "x^2 + (o + 1)*y + 3",
            "inv(o)",
            "o^48",
            "F(10)",
        ]
    )
    assert out == [
        ["GF(7^2)"],
        ["o"],
        ["(GF(7^2)[x, y], x, y)"],
        ["x^2 + (o + 1)*y + 3"],
        ["6*o"],
        ["1"],
        ["3"],
    ]


def test_silent_and_multi_statement():
    assert run(["a = 2; b = 3", "a * b;", "a = 5; a"]) == [["3"], [], ["5"]]


def test_matrix_and_snf():
    out = run(["m = matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])", "snf(m)", "snf_generic(m)"])
    assert out[1] == out[2] == ["[ 2  0  0]", "[ 0  6  0]", "[ 0  0 12]"]


def test_errors_are_single_lines():
    env = Environment()
    assert run_line("zz", env) == (["error: undefined variable 'zz'"], "error: undefined variable 'zz'")
    assert run_line("1 +", env)[1].startswith("error: ")
    run_line("F = GF(5); G = GF(5)", env)
    assert run_line("inv(F(0))", env)[1] == "error: division by zero"
    assert run_line("GF(4)", env)[1] == "error: NotPrime: 4 is not prime"
    assert run_line("a, b = 1", env)[1] == "error: cannot unpack 1 value into 2 names"
    assert run_line('1 + "s"', env)[1] == "error: unsupported operand types for +: integer and string"
    assert run_line("F(1) + G(1)", env)[1].startswith("error: ParentMismatch: ")


def test_save_load_in_workdir(tmp_path):
    env = Environment(tmp_path)
    run(['F = GF(5)', 'R, t = polynomial_ring(F, ["t"])', 'save("p.mrdi", t^2 + 1)'], env)
    assert (tmp_path / "p.mrdi").is_file()
    assert run(['q = load("p.mrdi")', "q + t"], env) == [["t^2 + 1"], ["t^2 + t + 1"]]
    assert run_line('load("nope.mrdi")', env)[1] == "error: cannot read 'nope.mrdi': No such file or directory"


def test_script_stops_at_first_error():
    out, err = run_script("x = 1\n\n# comment\n>> x + 1\nboom\nx + 2\n", Environment())
    assert out == ["1", "2"]
    assert err == "error: undefined variable 'boom'"


def test_versioninfo_builtin():
    (lines, err) = run_line("versioninfo()", Environment())
    assert err is None and lines[0].startswith("mathrepro version ")
