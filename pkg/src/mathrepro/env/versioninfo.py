"""Probe of tool version, operating system, CPU, memory and pinned dependencies.

Anything that cannot be determined is reported as ``"unknown"``.
"""

from __future__ import annotations

import os
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from mathrepro import __version__
from mathrepro.env.manifest import DependencySpec, ManifestFile
from mathrepro.env.treehash import tree_hash

UNKNOWN = "unknown"


@dataclass(frozen=True)
class EnvironmentReport:
    tool_version: str
    build_id: str
    os: tuple[str, str, str]
    cpu: tuple[str, int | str]
    memory_total: int | str
    dependencies: tuple[DependencySpec, ...] = field(default_factory=tuple)
    timestamp: str = ""
    verbosity: str = "brief"

    def to_dict(self) -> dict:
        return {
            "build_id": self.build_id,
            "cpu": {"logical_cores": self.cpu[1], "model": self.cpu[0]},
            "dependencies": [dict(name=d.name, **d.to_dict()) for d in self.dependencies],
            "memory_total": self.memory_total,
            "os": {"architecture": self.os[2], "kernel": self.os[0], "kernel_version": self.os[1]},
            "timestamp": self.timestamp,
            "tool_version": self.tool_version,
            "verbosity": self.verbosity,
        }

    def format(self) -> str:
        lines = [
            f"mathrepro version {self.tool_version}",
            f"Build: {self.build_id}",
            f"OS: {self.os[0]} {self.os[1]} ({self.os[2]})",
            f"CPU: {self.cpu[0]} ({self.cpu[1]} logical cores)",
        ]
        if self.verbosity == "full":
            lines.append(f"Memory: {self.memory_total}" + (" bytes" if isinstance(self.memory_total, int) else ""))
            lines.append("Dependencies:")
            if not self.dependencies:
                lines.append("  (none)")
            for d in self.dependencies:
                lines.append(f"  {d.name} {d.version} [{d.uuid}]" + (f" {d.tree_hash}" if d.tree_hash else ""))
        lines.append(f"Timestamp: {self.timestamp}")
        return "\n".join(lines)


def _or_unknown(value: str | None) -> str:
    return value.strip() if value and value.strip() else UNKNOWN


def probe_os() -> tuple[str, str, str]:
    try:
        uname = platform.uname()
    except Exception:
        return (UNKNOWN, UNKNOWN, UNKNOWN)
    return (_or_unknown(uname.system), _or_unknown(uname.release), _or_unknown(uname.machine))


def probe_cpu(cpuinfo: str | os.PathLike = "/proc/cpuinfo") -> tuple[str, int | str]:
    model = None
    try:
        with open(cpuinfo, encoding="utf-8", errors="replace") as fh:
            for line in fh:
                key, _, value = line.partition(":")
                if key.strip() in ("model name", "Model", "cpu model", "Processor"):
                    model = value.strip()
                    break
    except OSError:
        pass
    if not model:
        model = platform.processor()
    cores = os.cpu_count()
    return (_or_unknown(model), cores if cores else UNKNOWN)


def probe_memory(meminfo: str | os.PathLike = "/proc/meminfo") -> int | str:
    try:
        with open(meminfo, encoding="utf-8") as fh:
            for line in fh:
                if line.startswith("MemTotal:"):
                    fields = line.split()
                    return int(fields[1]) * 1024 if len(fields) > 2 and fields[2] == "kB" else int(fields[1])
    except (OSError, ValueError, IndexError):
        pass
    try:
        return os.sysconf("SC_PAGE_SIZE") * os.sysconf("SC_PHYS_PAGES")
    except (AttributeError, ValueError, OSError):
        return UNKNOWN


def build_id() -> str:
    """Tree hash of the installed package sources."""
    try:
        return tree_hash(Path(__file__).resolve().parent.parent, exclude=frozenset({"__pycache__"}))
    except OSError:
        return UNKNOWN


def collect_versioninfo(verbosity: str = "brief", manifest: ManifestFile | None = None) -> EnvironmentReport:
    if verbosity not in ("brief", "full"):
        raise ValueError(f"verbosity must be 'brief' or 'full', got {verbosity!r}")
    full = verbosity == "full"
    deps: tuple[DependencySpec, ...] = ()
    if full and manifest is not None:
        deps = tuple(sorted(manifest.entries, key=lambda d: d.name))
    return EnvironmentReport(
        tool_version=__version__,
        build_id=build_id(),
        os=probe_os(),
        cpu=probe_cpu(),
        memory_total=probe_memory() if full else UNKNOWN,
        dependencies=deps,
        timestamp=datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
        verbosity=verbosity,
    )
