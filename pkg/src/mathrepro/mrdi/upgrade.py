"""Format versioning: chains of single-step upgrade scripts."""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Callable

from mathrepro.errors import MalformedPayload, MissingUpgradePath
from mathrepro.mrdi.document import CURRENT_FORMAT_VERSION, validate


@dataclass(frozen=True)
class UpgradeScript:
    from_version: int
    transform: Callable[[dict], dict]
    description: str = ""

    @property
    def to_version(self) -> int:
        return self.from_version + 1


class UpgradeRegistry:
    def __init__(self, current: int = CURRENT_FORMAT_VERSION) -> None:
        self.current = current
        self._scripts: dict[int, UpgradeScript] = {}

    def register(self, script: UpgradeScript) -> UpgradeScript:
        if script.from_version in self._scripts:
            raise ValueError(f"an upgrade from format {script.from_version} is already registered")
        self._scripts[script.from_version] = script
        return script

    def chain(self, start: int, target: int) -> list[UpgradeScript]:
        if start > target:
            raise MissingUpgradePath(f"cannot downgrade from format {start} to {target}", (target, start))
        out = []
        for v in range(start, target):
            if v not in self._scripts:
                raise MissingUpgradePath(f"no upgrade script from format {v} to {v + 1}", (v, v + 1))
            out.append(self._scripts[v])
        return out

    def upgrade(self, doc: dict, target: int | None = None) -> dict:
        """Upgraded copy of ``doc``; the input is never modified."""
        target = self.current if target is None else target
        start = doc.get("_format")
        if isinstance(start, bool) or not isinstance(start, int):
            raise MalformedPayload("format version must be an integer", "/_format")
        out = copy.deepcopy(doc)
        for script in self.chain(start, target):
            out = script.transform(out)
            out["_format"] = script.to_version
        if start != target and target == CURRENT_FORMAT_VERSION and self.current == CURRENT_FORMAT_VERSION:
            problems = validate(out)
            if problems:
                raise MalformedPayload(f"upgraded document is invalid: {problems[0]}", problems[0].path)
        return out


UPGRADES = UpgradeRegistry()


def register_upgrade(script: UpgradeScript) -> UpgradeScript:
    return UPGRADES.register(script)


def upgrade(doc: dict, target: int = CURRENT_FORMAT_VERSION) -> dict:
    return UPGRADES.upgrade(doc, target)


def _fragments(doc: dict):
    yield doc
    refs = doc.get("_refs")
    if isinstance(refs, dict):
        yield from (f for f in refs.values() if isinstance(f, dict))


def _type_name(t) -> str | None:
    return t if isinstance(t, str) else t.get("name") if isinstance(t, dict) else None


def _v1_rename_polynomial_terms(doc: dict) -> dict:
    for frag in _fragments(doc):
        data = frag.get("data")
        if _type_name(frag.get("_type")) == "Polynomial" and isinstance(data, dict) and "polynomial" in data:
            data["terms"] = data.pop("polynomial")
    return doc


register_upgrade(
    UpgradeScript(1, _v1_rename_polynomial_terms, "polynomial payload key 'polynomial' renamed to 'terms'")
)
