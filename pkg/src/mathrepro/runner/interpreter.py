"""Evaluation of mini-language statements over the kernel and mrdi session."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable

from mathrepro.env import collect_versioninfo
from mathrepro.env.versioninfo import EnvironmentReport
from mathrepro.errors import InterpreterError, MathReproError, UndefinedVariable
from mathrepro.kernel import (
    Field,
    FieldElement,
    IntMatrix,
    Polynomial,
    PolynomialRing,
    make_finite_field,
    polynomial_ring,
    snf_euclidean,
    snf_integer,
)
from mathrepro.mrdi import Session, load_file, save_file
from mathrepro.runner.parser import (
    Assign,
    BinOp,
    Call,
    Expr,
    ExprStmt,
    Int,
    ListExpr,
    Name,
    Neg,
    Statement,
    Str,
    parse_line,
)

_ARITH = (int, FieldElement, Polynomial)


class Environment:
    """Variable bindings plus the mrdi session that ``load`` fills."""

    def __init__(self, workdir: str | Path | None = None, session: Session | None = None):
        self.bindings: dict[str, Any] = {}
        self.session = session if session is not None else Session()
        self.workdir = Path(workdir) if workdir is not None else Path.cwd()
        self.last_error: BaseException | None = None

    def resolve_path(self, path: str) -> Path:
        p = Path(path)
        return p if p.is_absolute() else self.workdir / p


def show(value: Any) -> str:
    """Deterministic printed form of an interpreter value."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, tuple):
        return "(" + ", ".join(show(v) for v in value) + ")"
    if isinstance(value, list):
        return "[" + ", ".join(show(v) for v in value) + "]"
    if isinstance(value, EnvironmentReport):
        return value.format()
    return repr(value)


def format_error(exc: BaseException) -> str:
    if isinstance(exc, InterpreterError):
        return f"error: {exc}"
    if isinstance(exc, ZeroDivisionError):
        return "error: division by zero"
    return f"error: {type(exc).__name__}: {exc}"


# builtins


def _arity(name: str, args: tuple, *counts: int) -> None:
    if len(args) not in counts:
        want = " or ".join(str(c) for c in counts)
        raise InterpreterError(f"{name} expects {want} argument{'s' if counts != (1,) else ''}, got {len(args)}")


def _want(name: str, value: Any, kind: type | tuple[type, ...], what: str) -> Any:
    if isinstance(value, bool) or not isinstance(value, kind):
        raise InterpreterError(f"{name}: expected {what}, got {_typename(value)}")
    return value


def _typename(value: Any) -> str:
    return {
        int: "integer",
        str: "string",
        list: "list",
        tuple: "tuple",
        type(None): "nothing",
    }.get(type(value), type(value).__name__)


def _gf(env, *args):
    _arity("GF", args, 1, 2)
    p = _want("GF", args[0], int, "an integer")
    n = _want("GF", args[1], int, "an integer") if len(args) == 2 else 1
    return make_finite_field(p, n)


def _polynomial_ring(env, *args):
    _arity("polynomial_ring", args, 2)
    field = _want("polynomial_ring", args[0], Field, "a field")
    names = _want("polynomial_ring", args[1], list, "a list of variable names")
    for n in names:
        _want("polynomial_ring", n, str, "a string")
    ring, gens = polynomial_ring(field, names)
    return (ring, *gens)


def _gen(env, *args):
    _arity("gen", args, 1)
    return _want("gen", args[0], Field, "a field").gen()


def _inv(env, *args):
    _arity("inv", args, 1)
    return _want("inv", args[0], FieldElement, "a field element").inverse()


def _matrix(env, *args):
    _arity("matrix", args, 1)
    rows = _want("matrix", args[0], list, "a list of rows")
    for r in rows:
        _want("matrix", r, list, "a list of rows")
        for e in r:
            _want("matrix", e, int, "integer entries")
    return IntMatrix.from_rows(rows)


def _snf(env, *args):
    _arity("snf", args, 1)
    return snf_integer(_want("snf", args[0], IntMatrix, "a matrix"))


def _snf_generic(env, *args):
    _arity("snf_generic", args, 1)
    return snf_euclidean(_want("snf_generic", args[0], IntMatrix, "a matrix"))


def _rewrite_path(exc: Exception, full: Path, shown: str) -> str:
    return str(exc).replace(str(full), shown)


def _save(env, *args):
    _arity("save", args, 2)
    path = _want("save", args[0], str, "a file name")
    full = env.resolve_path(path)
    try:
        save_file(full, args[1], env.session)
    except OSError as exc:
        raise InterpreterError(f"cannot write '{path}': {exc.strerror}") from exc
    except MathReproError as exc:
        raise InterpreterError(f"{type(exc).__name__}: {_rewrite_path(exc, full, path)}") from exc
    return None


def _load(env, *args):
    _arity("load", args, 1)
    path = _want("load", args[0], str, "a file name")
    full = env.resolve_path(path)
    try:
        return load_file(full, env.session)
    except OSError as exc:
        raise InterpreterError(f"cannot read '{path}': {exc.strerror}") from exc
    except MathReproError as exc:
        raise InterpreterError(f"{type(exc).__name__}: {_rewrite_path(exc, full, path)}") from exc


def _versioninfo(env, *args):
    _arity("versioninfo", args, 0, 1)
    level = _want("versioninfo", args[0], str, "a string") if args else "brief"
    try:
        return collect_versioninfo(level)
    except ValueError as exc:
        raise InterpreterError(str(exc)) from exc


BUILTINS: dict[str, Callable[..., Any]] = {
    "GF": _gf,
    "gen": _gen,
    "inv": _inv,
    "load": _load,
    "matrix": _matrix,
    "polynomial_ring": _polynomial_ring,
    "save": _save,
    "snf": _snf,
    "snf_generic": _snf_generic,
    "versioninfo": _versioninfo,
}


# evaluation


def _arith(op: str, a: Any, b: Any) -> Any:
    if not isinstance(a, _ARITH) or not isinstance(b, _ARITH) or isinstance(a, bool) or isinstance(b, bool):
        raise InterpreterError(f"unsupported operand types for {op}: {_typename(a)} and {_typename(b)}")
    if op == "^":
        if not isinstance(b, int):
            raise InterpreterError(f"exponent must be an integer, got {_typename(b)}")
        if b < 0 and not isinstance(a, FieldElement):
            raise InterpreterError(f"negative exponent {b} for {_typename(a)}")
        return a**b
    # Python int + Polynomial goes through __radd__ on the polynomial
    result = {"+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b}[op]()
    if result is NotImplemented:
        raise InterpreterError(f"unsupported operand types for {op}: {_typename(a)} and {_typename(b)}")
    return result


def evaluate(expr: Expr, env: Environment) -> Any:
    if isinstance(expr, Int):
        return expr.value
    if isinstance(expr, Str):
        return expr.value
    if isinstance(expr, Name):
        if expr.id not in env.bindings:
            raise UndefinedVariable(expr.id)
        return env.bindings[expr.id]
    if isinstance(expr, Neg):
        v = evaluate(expr.operand, env)
        if not isinstance(v, _ARITH) or isinstance(v, bool):
            raise InterpreterError(f"cannot negate {_typename(v)}")
        return -v
    if isinstance(expr, BinOp):
        return _arith(expr.op, evaluate(expr.left, env), evaluate(expr.right, env))
    if isinstance(expr, ListExpr):
        return [evaluate(e, env) for e in expr.items]
    if isinstance(expr, Call):
        args = tuple(evaluate(a, env) for a in expr.args)
        if expr.func in env.bindings:
            target = env.bindings[expr.func]
            if isinstance(target, (Field, PolynomialRing)):
                _arity(expr.func, args, 1)
                return target(args[0])
            raise InterpreterError(f"'{expr.func}' is not callable")
        if expr.func not in BUILTINS:
            raise UndefinedVariable(expr.func)
        return BUILTINS[expr.func](env, *args)
    raise InterpreterError(f"cannot evaluate {expr!r}")


def eval_statement(stmt: Statement, env: Environment, silent: bool = False) -> list[str]:
    """Run one statement and return the lines it prints."""
    if isinstance(stmt, Assign):
        value = evaluate(stmt.value, env)
        if len(stmt.targets) == 1:
            env.bindings[stmt.targets[0]] = value
        else:
            if not isinstance(value, (tuple, list)) or len(value) != len(stmt.targets):
                n = len(value) if isinstance(value, (tuple, list)) else 1
                raise InterpreterError(f"cannot unpack {n} value{'s' if n != 1 else ''} into {len(stmt.targets)} names")
            for name, v in zip(stmt.targets, value):
                env.bindings[name] = v
    elif isinstance(stmt, ExprStmt):
        value = evaluate(stmt.value, env)
    else:
        raise InterpreterError(f"unknown statement {stmt!r}")
    if silent or value is None:
        return []
    return show(value).split("\n")


def run_line(src: str, env: Environment) -> tuple[list[str], str | None]:
    """Evaluate one input line.

    Returns the printed lines and, when evaluation failed, the error line
    (which is then also the only printed line).
    """
    try:
        lines: list[str] = []
        for ps in parse_line(src):
            lines = eval_statement(ps.stmt, env, ps.silent)
        return lines, None
    except (MathReproError, ZeroDivisionError, ValueError, TypeError) as exc:
        env.last_error = exc
        msg = format_error(exc)
        return [msg], msg


def run_script(text: str, env: Environment) -> tuple[list[str], str | None]:
    """Run a file of statements; stops at the first error."""
    out: list[str] = []
    for raw in text.splitlines():
        line = raw[3:] if raw.startswith(">> ") else raw
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        lines, err = run_line(line, env)
        if err is not None:
            return out, err
        out += lines
    return out, None
