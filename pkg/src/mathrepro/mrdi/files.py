from __future__ import annotations

import os
from pathlib import Path
from typing import Any

from mathrepro.errors import MalformedPayload
from mathrepro.mrdi.canonical import canonical_bytes, parse_json
from mathrepro.mrdi.document import CURRENT_FORMAT_VERSION, Session, load, save
from mathrepro.mrdi.upgrade import upgrade

PathLike = str | os.PathLike


def write_document(path: PathLike, doc: dict) -> None:
    Path(path).write_bytes(canonical_bytes(doc) + b"\n")


def read_document(path: PathLike) -> Any:
    """Parsed document tree; malformed text raises MalformedPayload."""
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedPayload(f"{path}: not UTF-8 ({exc.reason})") from exc
    try:
        return parse_json(text)
    except ValueError as exc:
        raise MalformedPayload(f"{path}: invalid JSON ({exc})") from exc


def save_file(path: PathLike, obj: Any, session: Session | None = None) -> dict:
    doc = save(obj, session)
    write_document(path, doc)
    return doc


def load_file(path: PathLike, session: Session, *, auto_upgrade: bool = True) -> Any:
    doc = read_document(path)
    if auto_upgrade and isinstance(doc, dict):
        fmt = doc.get("_format")
        if isinstance(fmt, int) and not isinstance(fmt, bool) and fmt < CURRENT_FORMAT_VERSION:
            doc = upgrade(doc, CURRENT_FORMAT_VERSION)
    return load(doc, session)
