"""Doctest replay: a mini REPL language, block extraction, check and fix."""

from mathrepro.runner.doctest import (
    BlockResult,
    DoctestBlock,
    Entry,
    EntryResult,
    LineDiff,
    RunReport,
    check_document,
    extract_blocks,
    fix_document,
    run_blocks,
)
from mathrepro.runner.interpreter import Environment, eval_statement, run_line, run_script, show
from mathrepro.runner.parser import parse_line

__all__ = [
    "BlockResult",
    "DoctestBlock",
    "Entry",
    "EntryResult",
    "Environment",
    "LineDiff",
    "RunReport",
    "check_document",
    "eval_statement",
    "extract_blocks",
    "fix_document",
    "parse_line",
    "run_blocks",
    "run_line",
    "run_script",
    "show",
]
