from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

from mathrepro.errors import MissingLabel, StaleReport, UnterminatedBlock
from mathrepro.runner import check_document, extract_blocks, fix_document

CORPUS = Path(__file__).parent / "fixtures" / "doctest"
EXPECTED = json.loads((CORPUS / "expected.json").read_text())


def _prelude(name):
    spec = EXPECTED[name]
    return (CORPUS / spec["prelude"]).read_text() if "prelude" in spec else None


def _counts(name):
    return {k: v for k, v in EXPECTED[name].items() if k != "prelude"}


def test_corpus_size():
    assert len(EXPECTED) >= 10


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_expected_counts(name):
    report = check_document((CORPUS / name).read_bytes(), _prelude(name))
    assert report.totals == _counts(name)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fix_then_check_is_clean_and_idempotent(name):
    data = (CORPUS / name).read_bytes()
    prelude = _prelude(name)
    fixed = fix_document(data, check_document(data, prelude))
    report = check_document(fixed, prelude)
    assert report.ok, [r.to_dict() for r in report.results if r.status != "pass"]
    assert fix_document(fixed, report) == fixed
    if _counts(name)["passed"] == _counts(name)["blocks"]:
        assert fixed.encode() == data


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fix_only_touches_output_spans(name):
    data = (CORPUS / name).read_bytes()
    report = check_document(data, _prelude(name))
    fixed = fix_document(data, report).encode()
    spans = [er.entry.output_span for r in report.results for er in r.entries if not er.ok]
    # bytes between the rewritten spans must come through unchanged
    pos_in, pos_out = 0, 0
    for start, end in sorted(spans):
        chunk = data[pos_in:start]
        assert fixed[pos_out:pos_out + len(chunk)] == chunk
        pos_out += len(chunk)
        new = next(er.actual for r in report.results for er in r.entries if er.entry.output_span == (start, end))
        pos_out += len("".join(line + "\n" for line in new).encode())
        pos_in = end
    assert fixed[pos_out:] == data[pos_in:]


def test_drift_diff_points_at_line():
    report = check_document((CORPUS / "drifted.md").read_bytes())
    (bad,) = [r for r in report.results if r.status == "fail"]
    assert [(d.line, d.expected, d.actual) for d in bad.diffs] == [(10, "4", "3")]


def test_error_block_reports_message():
    report = check_document((CORPUS / "erroring.md").read_bytes())
    (bad,) = [r for r in report.results if r.status == "error"]
    assert bad.message == "error: undefined variable 'undefined_thing'"
    assert bad.block.label == "bad"


def test_prelude_is_needed():
    report = check_document((CORPUS / "prelude_using.md").read_bytes())
    assert report.totals["passed"] == 0


def test_failing_prelude_errors_every_block():
    report = check_document((CORPUS / "passing_basic.md").read_bytes(), "nope + 1")
    assert report.totals == {"blocks": 2, "passed": 0, "failed": 0, "errored": 2}
    assert report.results[0].message.startswith("prelude failed")


def test_blocks_and_entries():
    blocks = extract_blocks((CORPUS / "multi_label.md").read_bytes())
    assert [b.label for b in blocks] == ["alpha", "beta", "alpha", "beta"]
    assert [len(b.entries) for b in blocks] == [1, 2, 1, 1]
    assert blocks[1].entries[0].input == "a"
    assert blocks[1].entries[0].expected == ("error: undefined variable 'a'",)
    assert blocks[0].line == 1


def test_latex_blocks():
    blocks = extract_blocks((CORPUS / "latex.tex").read_bytes())
    assert [b.label for b in blocks] == ["tex", "tex"]
    assert len(blocks[0].entries[0].expected) == 3


def test_unterminated_and_unlabeled():
    with pytest.raises(UnterminatedBlock) as info:
        extract_blocks("text\n```repl label=x\n>> 1\n1\n")
    assert info.value.line == 2
    with pytest.raises(MissingLabel):
        extract_blocks("```repl\n>> 1\n1\n```\n")
    with pytest.raises(MissingLabel):
        extract_blocks("\\begin{repltest}\n>> 1\n\\end{repltest}\n")


def test_stale_report_rejected():
    data = (CORPUS / "drifted.md").read_bytes()
    report = check_document(data)
    with pytest.raises(StaleReport):
        fix_document(data + b"\nmore\n", report)


def test_labels_get_separate_scratch_dirs(tmp_path):
    # save_load.md's "fresh" label cannot see files the "io" label wrote
    shutil.copy(CORPUS / "save_load.md", tmp_path)
    report = check_document((tmp_path / "save_load.md").read_bytes())
    assert report.ok
    assert not list(tmp_path.glob("*.mrdi"))


def test_report_json():
    report = check_document((CORPUS / "drifted.md").read_bytes())
    d = report.to_dict(include_elapsed=False)
    assert json.loads(json.dumps(d, sort_keys=True)) == d
    assert d["totals"]["failed"] == 1
