"""Extract labeled REPL blocks from documents, replay them, and fix drift.

Two block syntaxes are recognised::

    ```repl label=chapter1          \\begin{repltest}{chapter1}
    >> x = 1 + 1                    >> x = 1 + 1
    2                               2
    ```                             \\end{repltest}

Blocks sharing a label share one interpreter environment, in document order;
different labels never see each other's variables or files.
"""

from __future__ import annotations

import hashlib
import re
import tempfile
import time
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import zip_longest
from pathlib import Path

from mathrepro.errors import MissingLabel, StaleReport, UnterminatedBlock
from mathrepro.runner.interpreter import Environment, run_line, run_script

PROMPT = b">> "

_MD_OPEN = re.compile(rb"```repl(?![A-Za-z0-9_-])(.*)$")
_MD_LABEL = re.compile(rb"\s+label=(\S+)\s*$")
_MD_FENCE = re.compile(rb"```")
_TEX_OPEN = re.compile(rb"\\begin\{repltest\}(?:\{([^}]*)\})?")
_TEX_CLOSE = re.compile(rb"\s*\\end\{repltest\}")


@dataclass(frozen=True)
class Entry:
    input: str
    expected: tuple[str, ...]
    line: int  # 1-based line of the prompt
    output_span: tuple[int, int]  # byte offsets of the expected-output lines


@dataclass(frozen=True)
class DoctestBlock:
    label: str
    line: int  # 1-based line of the opening fence
    source_span: tuple[int, int]  # byte offsets of the block body
    entries: tuple[Entry, ...]
    document_digest: str = ""


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _as_bytes(document: str | bytes) -> bytes:
    return document.encode("utf-8") if isinstance(document, str) else document


def _strip_eol(line: bytes) -> bytes:
    return line.rstrip(b"\r\n")


def _parse_body(lines: list[tuple[int, int, bytes]]) -> tuple[Entry, ...]:
    """``lines`` are (lineno, offset, raw bytes) of the block body."""
    entries = []
    i = 0
    while i < len(lines):
        lineno, offset, raw = lines[i]
        text = _strip_eol(raw)
        if not (text.startswith(PROMPT) or text == PROMPT.rstrip()):
            i += 1  # text before the first prompt is not part of any entry
            continue
        j = i + 1
        while j < len(lines) and not (
            _strip_eol(lines[j][2]).startswith(PROMPT) or _strip_eol(lines[j][2]) == PROMPT.rstrip()
        ):
            j += 1
        out = lines[i + 1:j]
        # trailing blank lines separate entries; they are not expected output
        k = len(out)
        while k and not _strip_eol(out[k - 1][2]).strip():
            k -= 1
        start = offset + len(raw)
        end = out[k - 1][1] + len(out[k - 1][2]) if k else start
        expected = tuple(_strip_eol(r).decode("utf-8") for _, _, r in out[:k])
        entries.append(Entry(text[len(PROMPT):].decode("utf-8"), expected, lineno, (start, end)))
        i = j
    return tuple(entries)


def extract_blocks(document: str | bytes) -> list[DoctestBlock]:
    data = _as_bytes(document)
    digest = _digest(data)
    lines = []
    offset = 0
    for n, raw in enumerate(data.splitlines(keepends=True), start=1):
        lines.append((n, offset, raw))
        offset += len(raw)

    blocks = []
    i = 0
    while i < len(lines):
        lineno, off, raw = lines[i]
        text = _strip_eol(raw)
        md = _MD_OPEN.match(text)
        tex = _TEX_OPEN.match(text)
        if md:
            lm = _MD_LABEL.match(md.group(1))
            if not lm:
                raise MissingLabel(lineno)
            label = lm.group(1).decode("utf-8")
            is_close = lambda t: t.strip() == b"```"
        elif tex:
            if not tex.group(1) or not tex.group(1).strip():
                raise MissingLabel(lineno)
            label = tex.group(1).strip().decode("utf-8")
            is_close = lambda t: _TEX_CLOSE.match(t) is not None
        elif _MD_FENCE.match(text):
            # some other fenced code block: skip to its closing fence
            j = i + 1
            while j < len(lines) and _strip_eol(lines[j][2]).strip() != b"```":
                j += 1
            if j == len(lines):
                raise UnterminatedBlock(lineno)
            i = j + 1
            continue
        else:
            i += 1
            continue
        j = i + 1
        while j < len(lines) and not is_close(_strip_eol(lines[j][2])):
            j += 1
        if j == len(lines):
            raise UnterminatedBlock(lineno)
        body = lines[i + 1:j]
        span = (off + len(raw), lines[j][1])
        blocks.append(DoctestBlock(label, lineno, span, _parse_body(body), digest))
        i = j + 1
    return blocks


# running


@dataclass(frozen=True)
class LineDiff:
    line: int  # 1-based document line of the expected line (or where it would go)
    expected: str | None
    actual: str | None

    def __str__(self) -> str:
        return f"line {self.line}: expected {self.expected!r}, got {self.actual!r}"


@dataclass(frozen=True)
class EntryResult:
    entry: Entry
    actual: tuple[str, ...]
    ok: bool
    error: str | None = None


@dataclass(frozen=True)
class BlockResult:
    block: DoctestBlock
    status: str  # pass | fail | error
    entries: tuple[EntryResult, ...]
    diffs: tuple[LineDiff, ...] = ()
    message: str | None = None

    def to_dict(self) -> dict:
        return {
            "diffs": [{"actual": d.actual, "expected": d.expected, "line": d.line} for d in self.diffs],
            "label": self.block.label,
            "line": self.block.line,
            "message": self.message,
            "status": self.status,
        }


@dataclass
class RunReport:
    results: list[BlockResult] = field(default_factory=list)
    elapsed: float = 0.0
    document_digest: str = ""

    @property
    def totals(self) -> dict[str, int]:
        counts = {"blocks": len(self.results), "passed": 0, "failed": 0, "errored": 0}
        for r in self.results:
            counts[{"pass": "passed", "fail": "failed", "error": "errored"}[r.status]] += 1
        return counts

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def to_dict(self, *, include_elapsed: bool = True) -> dict:
        out = {"blocks": [r.to_dict() for r in self.results], "totals": self.totals}
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _normalize(lines) -> list[str]:
    out = [line.rstrip() for line in lines]
    while out and not out[-1]:
        out.pop()
    return out


def _diffs(entry: Entry, actual: list[str]) -> list[LineDiff]:
    exp = _normalize(entry.expected)
    out = []
    for k, (e, a) in enumerate(zip_longest(exp, actual)):
        if e != a:
            out.append(LineDiff(entry.line + 1 + k, e, a))
    return out


def _run_label(blocks: list[DoctestBlock], prelude: str | None, workdir: Path) -> list[BlockResult]:
    env = Environment(workdir)
    results = []
    prelude_error = None
    if prelude:
        _, prelude_error = run_script(prelude, env)
    for block in blocks:
        if prelude_error is not None:
            results.append(BlockResult(block, "error", (), (), f"prelude failed: {prelude_error}"))
            continue
        entry_results = []
        diffs: list[LineDiff] = []
        message = None
        for entry in block.entries:
            actual, err = run_line(entry.input, env)
            actual = _normalize(actual)
            d = _diffs(entry, actual)
            entry_results.append(EntryResult(entry, tuple(actual), not d, err))
            diffs += d
            if d and err is not None and message is None:
                message = err
        status = "error" if message is not None else "fail" if diffs else "pass"
        results.append(BlockResult(block, status, tuple(entry_results), tuple(diffs), message))
    return results


def run_blocks(blocks: list[DoctestBlock], prelude: str | None = None) -> RunReport:
    """Replay blocks; one fresh environment and scratch directory per label.

    An evaluation error whose message matches the expected output passes;
    otherwise the block is reported as ``error``.
    """
    t0 = time.perf_counter()
    groups: dict[str, list[tuple[int, DoctestBlock]]] = defaultdict(list)
    for pos, b in enumerate(blocks):
        groups[b.label].append((pos, b))
    placed: dict[int, BlockResult] = {}
    for label, members in groups.items():
        with tempfile.TemporaryDirectory(prefix="mathrepro-") as tmp:
            for (pos, _), res in zip(members, _run_label([b for _, b in members], prelude, Path(tmp))):
                placed[pos] = res
    digest = blocks[0].document_digest if blocks else ""
    return RunReport([placed[i] for i in range(len(blocks))], time.perf_counter() - t0, digest)


def check_document(document: str | bytes, prelude: str | None = None) -> RunReport:
    data = _as_bytes(document)
    report = run_blocks(extract_blocks(data), prelude)
    report.document_digest = _digest(data)
    return report


def fix_document(document: str | bytes, report: RunReport) -> str:
    """Replace the expected output of every failing entry with the actual output."""
    data = _as_bytes(document)
    if report.document_digest and _digest(data) != report.document_digest:
        raise StaleReport("document changed since the report was produced")
    edits = []
    for res in report.results:
        for er in res.entries:
            if not er.ok:
                text = "".join(line + "\n" for line in er.actual).encode("utf-8")
                edits.append((er.entry.output_span, text))
    out = data
    for (start, end), text in sorted(edits, reverse=True):
        out = out[:start] + text + out[end:]
    return out.decode("utf-8")
