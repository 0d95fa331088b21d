"""Semantic versions and compatibility bounds.

A bound string is a comma separated list of clauses that must all hold::

    ">=1.0, <1.1"     "1.2" (caret: >=1.2.0, <2.0.0)     "~1.2.3"     "=0.4.1"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering

_VERSION = re.compile(r"(0|[1-9][0-9]*)(?:\.(0|[1-9][0-9]*))?(?:\.(0|[1-9][0-9]*))?\Z")
_CLAUSE = re.compile(r"\s*(>=|<=|==|>|<|=|\^|~|≥|≤)?\s*(\S+)\s*\Z")


@total_ordering
@dataclass(frozen=True)
class Version:
    major: int
    minor: int = 0
    patch: int = 0

    @classmethod
    def parse(cls, text: str, *, strict: bool = True) -> Version:
        """Parse ``X.Y.Z``; with ``strict=False`` ``X`` and ``X.Y`` are padded."""
        v, _ = cls._parse(text)
        if strict and text.count(".") != 2:
            raise ValueError(f"version {text!r} is not of the form MAJOR.MINOR.PATCH")
        return v

    @classmethod
    def _parse(cls, text: str) -> tuple[Version, int]:
        m = _VERSION.match(text.strip()) if isinstance(text, str) else None
        if m is None:
            raise ValueError(f"invalid version {text!r}")
        parts = [int(g) for g in m.groups() if g is not None]
        return cls(*parts), len(parts)

    def _key(self) -> tuple[int, int, int]:
        return (self.major, self.minor, self.patch)

    def __lt__(self, other: Version) -> bool:
        return self._key() < other._key()

    def __str__(self) -> str:
        return f"{self.major}.{self.minor}.{self.patch}"


def is_semver(text: str) -> bool:
    try:
        Version.parse(text)
    except ValueError:
        return False
    return True


def _caret_upper(v: Version, ncomp: int) -> Version:
    if v.major > 0 or ncomp == 1:
        return Version(v.major + 1)
    if v.minor > 0 or ncomp == 2:
        return Version(0, v.minor + 1)
    return Version(0, 0, v.patch + 1)


@dataclass(frozen=True)
class Bound:
    """Intersection of half-open intervals, kept as (op, version) clauses."""

    text: str
    clauses: tuple[tuple[str, Version], ...]

    @classmethod
    def parse(cls, text: str) -> Bound:
        clauses: list[tuple[str, Version]] = []
        for raw in text.split(","):
            m = _CLAUSE.match(raw)
            if m is None or not raw.strip():
                raise ValueError(f"invalid compat clause {raw!r} in {text!r}")
            op, vtext = m.group(1) or "^", m.group(2)
            v, ncomp = Version._parse(vtext)
            op = {"≥": ">=", "≤": "<=", "==": "="}.get(op, op)
            if op == "^":
                clauses += [(">=", v), ("<", _caret_upper(v, ncomp))]
            elif op == "~":
                upper = Version(v.major + 1) if ncomp == 1 else Version(v.major, v.minor + 1)
                clauses += [(">=", v), ("<", upper)]
            else:
                clauses.append((op, v))
        return cls(text, tuple(clauses))

    def allows(self, v: Version) -> bool:
        for op, w in self.clauses:
            ok = {
                ">=": v >= w,
                ">": v > w,
                "<=": v <= w,
                "<": v < w,
                "=": v == w,
            }[op]
            if not ok:
                return False
        return True

    def __str__(self) -> str:
        return self.text
