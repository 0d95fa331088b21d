"""Project/Manifest pinning against a local package registry.

Registry layout::

    <registry>/<name>/<version>/Project.toml   # name, uuid, version, [deps], [compat]
    <registry>/<name>/<version>/...            # payload

``write_manifest`` resolves a project's dependencies to the largest versions
allowed by every compat bound in play (no backtracking), and pins each with
the tree hash of its folder.  ``verify_manifest`` re-checks those pins.
"""

from __future__ import annotations

import os
import sys
import uuid as _uuid
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from mathrepro.env.semver import Bound, Version
from mathrepro.env.treehash import tree_hash
from mathrepro.errors import RegistryError, UnresolvableDependency

REGISTRY_ENV = "MATHREPRO_REGISTRY"
PROJECT_FILE = "Project.toml"
MANIFEST_FILE = "Manifest.toml"
MANIFEST_FORMAT = "1.0"

_MAX_ROUNDS = 100


def default_registry() -> Path | None:
    value = os.environ.get(REGISTRY_ENV)
    return Path(value) if value else None


def _check_uuid(value: str, what: str) -> str:
    try:
        return str(_uuid.UUID(value))
    except (ValueError, AttributeError, TypeError):
        raise ValueError(f"{what}: invalid UUID {value!r}") from None


@dataclass(frozen=True)
class ProjectFile:
    name: str | None = None
    uuid: str | None = None
    version: str | None = None
    deps: Mapping[str, str] = field(default_factory=dict)
    compat: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict, source: str = "project") -> ProjectFile:
        deps = dict(data.get("deps", {}))
        for name, u in deps.items():
            _check_uuid(u, f"{source}: dependency {name}")
        compat = {k: str(v) for k, v in data.get("compat", {}).items()}
        for name, text in compat.items():
            Bound.parse(text)
        version = data.get("version")
        if version is not None:
            Version.parse(version)
        return cls(data.get("name"), data.get("uuid"), version, deps, compat)

    def to_dict(self) -> dict:
        out: dict = {}
        for key in ("name", "uuid", "version"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        out["compat"] = dict(sorted(self.compat.items()))
        out["deps"] = dict(sorted(self.deps.items()))
        return dict(sorted(out.items()))


def read_project(path: str | os.PathLike) -> ProjectFile:
    path = Path(path)
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ValueError(f"{path}: {exc}") from exc
    return ProjectFile.from_dict(data, str(path))


def write_project(path: str | os.PathLike, project: ProjectFile) -> None:
    Path(path).write_text(tomli_w.dumps(project.to_dict()), encoding="utf-8")


@dataclass(frozen=True)
class DependencySpec:
    name: str
    uuid: str
    version: str
    tree_hash: str | None = None
    deps: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("dependency name must be nonempty")
        Version.parse(self.version)

    def to_dict(self) -> dict:
        out = {"deps": list(self.deps), "uuid": self.uuid, "version": self.version}
        if self.tree_hash is not None:
            out["tree_hash"] = self.tree_hash
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class ManifestFile:
    entries: tuple[DependencySpec, ...] = ()

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, name: str) -> DependencySpec | None:
        return next((e for e in self.entries if e.name == name), None)

    def to_toml(self) -> str:
        doc = {
            "deps": {e.name: e.to_dict() for e in sorted(self.entries, key=lambda e: e.name)},
            "manifest_format": MANIFEST_FORMAT,
        }
        return tomli_w.dumps(doc)

    @classmethod
    def from_toml(cls, text: str) -> ManifestFile:
        data = tomllib.loads(text)
        entries = []
        for name, e in sorted(data.get("deps", {}).items()):
            entries.append(
                DependencySpec(name, e["uuid"], e["version"], e.get("tree_hash"), tuple(e.get("deps", ())))
            )
        return cls(tuple(entries))


def read_manifest(path: str | os.PathLike) -> ManifestFile:
    return ManifestFile.from_toml(Path(path).read_text(encoding="utf-8"))


def write_manifest_file(path: str | os.PathLike, manifest: ManifestFile) -> None:
    Path(path).write_text(manifest.to_toml(), encoding="utf-8")


# registry access


def package_dir(registry: str | os.PathLike, name: str, version: str) -> Path:
    return Path(registry) / name / version


def available_versions(registry: str | os.PathLike, name: str) -> list[Version]:
    root = Path(registry) / name
    if not root.is_dir():
        return []
    out = []
    for child in root.iterdir():
        if child.is_dir() and (child / PROJECT_FILE).is_file():
            try:
                out.append(Version.parse(child.name))
            except ValueError:
                continue
    return sorted(out)


def add_package(
    registry: str | os.PathLike,
    name: str,
    version: str,
    uuid: str,
    deps: Mapping[str, str] | None = None,
    compat: Mapping[str, str] | None = None,
    files: Mapping[str, str | bytes] | None = None,
) -> Path:
    """Create ``<registry>/<name>/<version>/`` with a Project file and payload."""
    folder = package_dir(registry, name, version)
    folder.mkdir(parents=True, exist_ok=False)
    write_project(folder / PROJECT_FILE, ProjectFile(name, uuid, version, dict(deps or {}), dict(compat or {})))
    for rel, content in (files or {}).items():
        target = folder / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(content, bytes):
            target.write_bytes(content)
        else:
            target.write_text(content, encoding="utf-8")
    return folder


# resolution


def _package_project(registry: Path, name: str, version: Version) -> ProjectFile:
    return read_project(package_dir(registry, name, str(version)) / PROJECT_FILE)


def resolve(project: ProjectFile, registry: str | os.PathLike) -> dict[str, tuple[Version, ProjectFile]]:
    """Pick one version per reachable package.

    Each round collects the compat bounds imposed by the project and by the
    packages chosen in the previous round, then takes the largest allowed
    version of every required package, until the choice stops changing.
    """
    registry = Path(registry)
    chosen: dict[str, tuple[Version, ProjectFile]] = {}
    for _ in range(_MAX_ROUNDS):
        required: dict[str, str] = {}
        bounds: dict[str, list[tuple[str, Bound]]] = defaultdict(list)
        queue = [(project.name or "project", project)]
        seen: set[str] = set()
        while queue:
            origin, proj = queue.pop()
            for dep, dep_uuid in sorted(proj.deps.items()):
                if required.setdefault(dep, dep_uuid) != dep_uuid:
                    raise RegistryError(f"{dep} is required with two different UUIDs")
                if dep in proj.compat:
                    bounds[dep].append((origin, Bound.parse(proj.compat[dep])))
                if dep in chosen and dep not in seen:
                    seen.add(dep)
                    queue.append((dep, chosen[dep][1]))

        new: dict[str, tuple[Version, ProjectFile]] = {}
        for dep in sorted(required):
            versions = available_versions(registry, dep)
            if not versions:
                raise UnresolvableDependency(dep, [], f"cannot resolve {dep}: not found in registry {registry}")
            ok = [v for v in versions if all(b.allows(v) for _, b in bounds[dep])]
            if not ok:
                texts = [f"{b} (from {origin})" for origin, b in bounds[dep]]
                raise UnresolvableDependency(dep, texts)
            best = ok[-1]
            if dep in chosen and chosen[dep][0] == best:
                new[dep] = chosen[dep]
                continue
            proj = _package_project(registry, dep, best)
            if proj.uuid != required[dep]:
                raise RegistryError(f"{dep} {best} in the registry has UUID {proj.uuid}, expected {required[dep]}")
            new[dep] = (best, proj)
        if {k: v for k, (v, _) in new.items()} == {k: v for k, (v, _) in chosen.items()}:
            return new
        chosen = new
    raise UnresolvableDependency("<project>", [], "dependency resolution did not converge")


def write_manifest(project: ProjectFile, registry: str | os.PathLike) -> ManifestFile:
    resolved = resolve(project, registry)
    entries = []
    for name in sorted(resolved):
        version, proj = resolved[name]
        folder = package_dir(registry, name, str(version))
        entries.append(
            DependencySpec(name, proj.uuid, str(version), tree_hash(folder), tuple(sorted(proj.deps)))
        )
    return ManifestFile(tuple(entries))


# verification


@dataclass(frozen=True)
class Discrepancy:
    kind: str  # Missing | VersionChanged | ContentChanged
    name: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.name}: {self.detail}"


def verify_manifest(manifest: ManifestFile, registry: str | os.PathLike) -> list[Discrepancy]:
    out = []
    for entry in manifest:
        folder = package_dir(registry, entry.name, entry.version)
        project_path = folder / PROJECT_FILE
        if not folder.is_dir():
            out.append(Discrepancy("Missing", entry.name, f"{folder} does not exist"))
            continue
        try:
            proj = read_project(project_path)
        except (OSError, ValueError) as exc:
            out.append(Discrepancy("Missing", entry.name, f"cannot read {project_path}: {exc}"))
            continue
        if proj.version != entry.version or proj.uuid != entry.uuid:
            out.append(
                Discrepancy(
                    "VersionChanged",
                    entry.name,
                    f"pinned {entry.version} [{entry.uuid}], found {proj.version} [{proj.uuid}]",
                )
            )
            continue
        if entry.tree_hash is not None:
            actual = tree_hash(folder)
            if actual != entry.tree_hash:
                out.append(Discrepancy("ContentChanged", entry.name, f"tree hash {actual} != pinned {entry.tree_hash}"))
    return out
