"""Content hash of a directory tree.

A file hashes as SHA-256 of ``b"blob\\n" + contents``.  A directory hashes as
SHA-256 of its record: one line ``"<entry-hash> <name>\\n"`` per entry, sorted
by name.  Symlinks and directories without any files below them are left
out, and only names and contents matter (no modes, no timestamps).
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

_CHUNK = 1 << 16


def _file_digest(path: Path) -> str:
    h = hashlib.sha256(b"blob\n")
    try:
        with open(path, "rb") as fh:
            for chunk in iter(lambda: fh.read(_CHUNK), b""):
                h.update(chunk)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot read {path}: {exc.strerror}", str(path)) from exc
    return h.hexdigest()


def _dir_record(path: Path, exclude: frozenset[str]) -> bytes:
    try:
        entries = sorted(os.scandir(path), key=lambda e: e.name)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot list {path}: {exc.strerror}", str(path)) from exc
    lines = []
    for entry in entries:
        if entry.is_symlink() or entry.name in exclude:
            continue
        if entry.is_dir(follow_symlinks=False):
            record = _dir_record(Path(entry.path), exclude)
            if not record:
                continue
            digest = hashlib.sha256(record).hexdigest()
        elif entry.is_file(follow_symlinks=False):
            digest = _file_digest(Path(entry.path))
        else:
            continue
        lines.append(f"{digest} {entry.name}\n")
    return "".join(lines).encode("utf-8")


def tree_hash(dir_path: str | os.PathLike, exclude: frozenset[str] = frozenset()) -> str:
    """Hex digest of ``dir_path``; entries named in ``exclude`` are skipped at every level."""
    path = Path(dir_path)
    if not path.is_dir():
        raise NotADirectoryError(f"not a directory: {path}")
    return hashlib.sha256(_dir_record(path, frozenset(exclude))).hexdigest()
