"""The mrdi serialization format: self-describing JSON documents with UUID-addressed parents."""

from mathrepro.mrdi.canonical import canonical_bytes, object_id, parse_json
from mathrepro.mrdi.document import CURRENT_FORMAT_VERSION, Session, load, save, validate
from mathrepro.mrdi.files import load_file, read_document, save_file, write_document
from mathrepro.mrdi.types import NAMESPACE, REGISTRY, TypeSpec, Violation
from mathrepro.mrdi.upgrade import UPGRADES, UpgradeRegistry, UpgradeScript, register_upgrade, upgrade

__all__ = [
    "CURRENT_FORMAT_VERSION",
    "NAMESPACE",
    "REGISTRY",
    "Session",
    "TypeSpec",
    "UPGRADES",
    "UpgradeRegistry",
    "UpgradeScript",
    "Violation",
    "canonical_bytes",
    "load",
    "load_file",
    "object_id",
    "parse_json",
    "read_document",
    "register_upgrade",
    "save",
    "save_file",
    "upgrade",
    "validate",
    "write_document",
]
