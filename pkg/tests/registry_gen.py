"""Build a small local package registry for pinning tests."""

from __future__ import annotations

import random
import uuid
from pathlib import Path

from mathrepro.env import ProjectFile, add_package, write_project


def _uuid(rng: random.Random) -> str:
    return str(uuid.UUID(int=rng.getrandbits(128), version=4))


def build_registry(root: Path, seed: int = 0, npackages: int = 6) -> tuple[Path, ProjectFile]:
    """Packages ``pkg0..pkgN`` with a few versions each; later packages depend on earlier ones.

    Returns the registry path and a project depending on the last two packages.
    """
    rng = random.Random(seed)
    registry = root / "registry"
    ids = {f"pkg{i}": _uuid(rng) for i in range(npackages)}
    for i in range(npackages):
        name = f"pkg{i}"
        for minor in range(rng.randint(1, 3)):
            for patch in range(rng.randint(1, 2)):
                version = f"1.{minor}.{patch}"
                deps = {f"pkg{j}": ids[f"pkg{j}"] for j in range(i) if rng.random() < 0.4}
                compat = {d: "1" for d in deps}
                files = {
                    "src/main.txt": f"{name} {version}\n" + "".join(rng.choice("abcdef") for _ in range(200)),
                    "data/blob.bin": bytes(rng.getrandbits(8) for _ in range(64)),
                }
                add_package(registry, name, version, ids[name], deps, compat, files)
    top = {f"pkg{npackages - 1}": ids[f"pkg{npackages - 1}"], f"pkg{npackages - 2}": ids[f"pkg{npackages - 2}"]}
    project = ProjectFile("app", _uuid(rng), "0.1.0", top, {})
    (root / "app").mkdir()
    write_project(root / "app" / "Project.toml", project)
    return registry, project
