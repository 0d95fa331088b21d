"""Command-line entry point.

Exit codes: 0 success, 1 verification failure (or a failed evaluation),
2 usage error, 3 I/O or file-format error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from mathrepro import __version__
from mathrepro.errors import MathReproError, MissingLabel, MrdiError, UnresolvableDependency, UnterminatedBlock
from mathrepro.kernel import IntMatrix, snf_euclidean, snf_integer

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False))


def _err(message: str) -> None:
    print(message, file=sys.stderr)


# eval / save / show


def cmd_eval(args) -> int:
    from mathrepro.runner import Environment, run_script

    text = Path(args.script).read_text(encoding="utf-8")
    env = Environment(args.workdir)
    lines, err = run_script(text, env)
    for line in lines:
        print(line)
    if err is None:
        return EXIT_OK
    _err(err)
    cause = env.last_error.__cause__ if env.last_error is not None else None
    return EXIT_IO if isinstance(cause, (OSError, MrdiError)) else EXIT_FAIL


def cmd_save(args) -> int:
    from mathrepro.mrdi import save_file
    from mathrepro.runner import Environment, run_script
    from mathrepro.runner.interpreter import evaluate, format_error
    from mathrepro.runner.parser import ExprStmt, parse_line

    env = Environment(args.workdir)
    if args.script:
        _, err = run_script(Path(args.script).read_text(encoding="utf-8"), env)
        if err is not None:
            _err(err)
            return EXIT_FAIL
    try:
        stmts = parse_line(args.expression)
        if len(stmts) != 1 or not isinstance(stmts[0].stmt, ExprStmt):
            raise UsageError("save takes a single expression")
        value = evaluate(stmts[0].stmt.value, env)
    except (MathReproError, ZeroDivisionError, TypeError) as exc:
        _err(format_error(exc))
        return EXIT_FAIL
    save_file(args.output, value, env.session)
    return EXIT_OK


def _type_name(t) -> str:
    return t if isinstance(t, str) else t.get("name", "?")


def cmd_show(args) -> int:
    from mathrepro.mrdi import Session, load_file, read_document
    from mathrepro.runner import show

    doc = read_document(args.file)
    obj = load_file(args.file, Session())
    if args.json:
        _dump_json(
            {
                "format": doc.get("_format"),
                "refs": sorted(doc.get("_refs", {})),
                "type": _type_name(doc.get("_type")),
                "value": show(obj),
            }
        )
    else:
        print(show(obj))
    return EXIT_OK


def cmd_validate(args) -> int:
    from mathrepro.mrdi import read_document, validate

    doc = read_document(args.file)
    violations = validate(doc)
    if args.json:
        _dump_json(
            {
                "file": str(args.file),
                "valid": not violations,
                "violations": [{"kind": v.kind, "message": v.message, "path": v.path} for v in violations],
            }
        )
    else:
        for v in violations:
            print(v)
        print(f"{args.file}: {'valid' if not violations else f'{len(violations)} violation(s)'}")
    return EXIT_FAIL if violations else EXIT_OK


def cmd_upgrade(args) -> int:
    from mathrepro.mrdi import canonical_bytes, read_document, upgrade

    doc = read_document(args.file)
    if not isinstance(doc, dict):
        raise MrdiError(f"{args.file}: document must be a JSON object")
    out = canonical_bytes(upgrade(doc, args.to)) + b"\n"
    if args.output:
        Path(args.output).write_bytes(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return EXIT_OK


# snf


def read_matrix_file(path: str | os.PathLike) -> IntMatrix:
    rows = []
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise MathReproError(f"{path}:{n}: entries must be decimal integers") from None
    if not rows:
        raise MathReproError(f"{path}: no matrix rows")
    try:
        return IntMatrix.from_rows(rows)
    except MathReproError as exc:
        raise MathReproError(f"{path}: {exc}") from None


def cmd_snf(args) -> int:
    m = read_matrix_file(args.matrix)
    d = snf_euclidean(m) if args.generic else snf_integer(m)
    if args.json:
        _dump_json({"algorithm": "euclidean" if args.generic else "integer", "diagonal": d.diagonal_entries(), "snf": d.rows()})
    else:
        print(repr(d))
    return EXIT_OK


# environment


def cmd_versioninfo(args) -> int:
    from mathrepro.env import MANIFEST_FILE, collect_versioninfo, read_manifest

    manifest = None
    if args.full:
        path = Path(args.manifest) if args.manifest else Path(MANIFEST_FILE)
        if args.manifest or path.is_file():
            manifest = read_manifest(path)
    report = collect_versioninfo("full" if args.full else "brief", manifest)
    if args.json:
        _dump_json(report.to_dict())
    else:
        print(report.format())
    return EXIT_OK


def cmd_hash_tree(args) -> int:
    from mathrepro.env import tree_hash

    print(tree_hash(args.dir))
    return EXIT_OK


def _registry(args) -> Path:
    from mathrepro.env import REGISTRY_ENV, default_registry

    reg = Path(args.registry) if args.registry else default_registry()
    if reg is None:
        raise UsageError(f"no registry given: pass --registry or set {REGISTRY_ENV}")
    if not reg.is_dir():
        raise FileNotFoundError(f"registry {reg} is not a directory")
    return reg


def cmd_env_write_manifest(args) -> int:
    from mathrepro.env import MANIFEST_FILE, read_project, write_manifest, write_manifest_file

    registry = _registry(args)
    project_path = Path(args.project)
    project = read_project(project_path)
    try:
        manifest = write_manifest(project, registry)
    except UnresolvableDependency as exc:
        _err(f"error: {exc}")
        return EXIT_FAIL
    out = Path(args.output) if args.output else project_path.parent / MANIFEST_FILE
    write_manifest_file(out, manifest)
    print(f"wrote {out} ({len(manifest)} entries)")
    return EXIT_OK


def cmd_env_verify(args) -> int:
    from mathrepro.env import read_manifest, verify_manifest

    registry = _registry(args)
    manifest = read_manifest(args.manifest)
    found = verify_manifest(manifest, registry)
    if args.json:
        _dump_json(
            {
                "clean": not found,
                "discrepancies": [{"detail": d.detail, "kind": d.kind, "name": d.name} for d in found],
                "entries": len(manifest),
            }
        )
    else:
        for d in found:
            print(d)
        print(f"{len(manifest)} entries, {len(found)} discrepancies")
    return EXIT_FAIL if found else EXIT_OK


# doctest


def cmd_doctest(args) -> int:
    from mathrepro.runner import check_document, fix_document

    prelude = Path(args.prelude).read_text(encoding="utf-8") if args.prelude else None
    docs = []
    for path in args.documents:
        text = Path(path).read_bytes()
        report = check_document(text, prelude)
        if args.action == "fix":
            fixed = fix_document(text, report)
            if fixed.encode("utf-8") != text:
                Path(path).write_text(fixed, encoding="utf-8")
            report = check_document(fixed, prelude)
        docs.append((path, report))

    totals = {"blocks": 0, "passed": 0, "failed": 0, "errored": 0}
    for _, report in docs:
        for k, v in report.totals.items():
            totals[k] += v
    if args.json:
        _dump_json(
            {
                "action": args.action,
                "documents": [dict(path=str(p), **r.to_dict()) for p, r in docs],
                "totals": totals,
            }
        )
    else:
        for path, report in docs:
            for res in report.results:
                if res.status == "pass":
                    continue
                print(f"{path}:{res.block.line}: {res.status.upper()} [{res.block.label}]")
                if res.message:
                    print(f"  {res.message}")
                for d in res.diffs:
                    print(f"  {d}")
        summary = f"{totals['blocks']} blocks, {totals['passed']} passed"
        if totals["failed"]:
            summary += f", {totals['failed']} failed"
        if totals["errored"]:
            summary += f", {totals['errored']} errored"
        print(summary)
    return EXIT_OK if totals["passed"] == totals["blocks"] else EXIT_FAIL


# dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mathrepro", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mathrepro {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("eval", help="run a script of mini-language statements")
    p.add_argument("script")
    p.add_argument("--workdir", default=None, help="directory for relative save/load paths (default: cwd)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("save", help="evaluate an expression and save it as .mrdi")
    p.add_argument("output")
    p.add_argument("expression")
    p.add_argument("--script", help="statements to run before evaluating the expression")
    p.add_argument("--workdir", default=None)
    p.set_defaults(func=cmd_save)

    p = sub.add_parser("show", help="load a .mrdi file and print its value")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("validate", help="check a .mrdi file for violations")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("upgrade", help="upgrade a .mrdi file to a newer format version")
    p.add_argument("file")
    p.add_argument("--to", type=int, required=True, dest="to")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_upgrade)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix file")
    p.add_argument("matrix")
    p.add_argument("--generic", action="store_true", help="use the generic Euclidean-domain algorithm")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("versioninfo", help="print tool, OS, CPU and dependency versions")
    p.add_argument("--full", action="store_true")
    p.add_argument("--manifest", help="manifest to list (default: ./Manifest.toml if present)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_versioninfo)

    p = sub.add_parser("hash-tree", help="tree hash of a directory")
    p.add_argument("dir")
    p.set_defaults(func=cmd_hash_tree)

    p = sub.add_parser("env", help="project/manifest pinning")
    env_sub = p.add_subparsers(dest="env_command", required=True, metavar="ACTION")
    q = env_sub.add_parser("write-manifest", help="resolve Project.toml into Manifest.toml")
    q.add_argument("--project", default="Project.toml")
    q.add_argument("--registry")
    q.add_argument("--output")
    q.set_defaults(func=cmd_env_write_manifest)
    q = env_sub.add_parser("verify", help="check a manifest against the registry")
    q.add_argument("--manifest", default="Manifest.toml")
    q.add_argument("--registry")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_env_verify)

    p = sub.add_parser("doctest", help="check or fix REPL blocks in documents")
    p.add_argument("action", choices=["check", "fix"])
    p.add_argument("documents", nargs="+")
    p.add_argument("--prelude", help="statements run before each label's first block")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_doctest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _err(f"mathrepro: error: {exc}")
        return EXIT_USAGE
    except (UnterminatedBlock, MissingLabel) as exc:
        _err(f"error: {exc}")
        return EXIT_IO
    except (OSError, MathReproError, ValueError, UnicodeDecodeError) as exc:
        _err(f"error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
