"""Canonical byte form of document trees and content-derived object ids."""

from __future__ import annotations

import hashlib
import json
import re
import uuid
from typing import Any

UUID_RE = re.compile(r"[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}\Z")


def canonical_bytes(doc: Any) -> bytes:
    """Sorted keys at every level, no whitespace, UTF-8, no line feeds."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False).encode(
        "utf-8"
    )


def object_id(fragment: Any) -> str:
    """UUIDv8 built from the leading 128 bits of SHA-256 over the canonical bytes."""
    raw = bytearray(hashlib.sha256(canonical_bytes(fragment)).digest()[:16])
    raw[6] = (raw[6] & 0x0F) | 0x80
    raw[8] = (raw[8] & 0x3F) | 0x80
    return str(uuid.UUID(bytes=bytes(raw)))


def is_uuid(value: Any) -> bool:
    return isinstance(value, str) and UUID_RE.match(value) is not None


def mentioned_uuids(tree: Any) -> set[str]:
    """Every string in ``tree`` (keys included) shaped like a UUID."""
    found: set[str] = set()
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            if is_uuid(node):
                found.add(node)
        elif isinstance(node, dict):
            stack.extend(node.keys())
            stack.extend(node.values())
        elif isinstance(node, list):
            stack.extend(node)
    return found


def _reject_duplicates(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def parse_json(text: str | bytes) -> Any:
    """Strict JSON parse: duplicate keys and NaN/Infinity are errors."""

    def _no_constants(name: str) -> Any:
        raise ValueError(f"non-finite number {name}")

    return json.loads(text, object_pairs_hook=_reject_duplicates, parse_constant=_no_constants)
