"""Environment capture: version probe, tree hashes, project/manifest pinning."""

from mathrepro.env.manifest import (
    MANIFEST_FILE,
    PROJECT_FILE,
    REGISTRY_ENV,
    DependencySpec,
    Discrepancy,
    ManifestFile,
    ProjectFile,
    add_package,
    default_registry,
    read_manifest,
    read_project,
    resolve,
    verify_manifest,
    write_manifest,
    write_manifest_file,
    write_project,
)
from mathrepro.env.semver import Bound, Version
from mathrepro.env.treehash import tree_hash
from mathrepro.env.versioninfo import EnvironmentReport, collect_versioninfo

__all__ = [
    "MANIFEST_FILE",
    "PROJECT_FILE",
    "REGISTRY_ENV",
    "Bound",
    "DependencySpec",
    "Discrepancy",
    "EnvironmentReport",
    "ManifestFile",
    "ProjectFile",
    "Version",
    "add_package",
    "collect_versioninfo",
    "default_registry",
    "read_manifest",
    "read_project",
    "resolve",
    "tree_hash",
    "verify_manifest",
    "write_manifest",
    "write_manifest_file",
    "write_project",
]
