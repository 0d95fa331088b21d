"""Saving kernel objects to mrdi document trees and loading them back.

A document is a plain ``dict``::

    {"_format": 2,
     "_ns": {"name": "mathrepro", "version": "0.1.0"},
     "_type": "Polynomial" | {"name": "Polynomial", "params": "<ring uuid>"},
     "data": ...,
     "_refs": {"<uuid>": {"_type": ..., "data": ...}, ...}}

``_refs`` holds every parent object reachable from the value, flat and
keyed by content-derived UUIDs.  A :class:`Session` maps those UUIDs to live
parents, so objects loaded from different files into one session share
parent instances and can be combined.
"""

from __future__ import annotations

from typing import Any, Iterator

from mathrepro.errors import (
    MalformedPayload,
    UnknownNamespace,
    UnknownType,
    UpgradeRequired,
    VersionTooNew,
)
from mathrepro.mrdi.canonical import is_uuid, mentioned_uuids, object_id
from mathrepro.mrdi.types import (
    NAMESPACE,
    NAMESPACE_VERSION,
    NAMESPACES,
    REGISTRY,
    TypeRegistry,
    TypeSpec,
    Violation,
)

CURRENT_FORMAT_VERSION = 2

TOP_KEYS = {"_format", "_ns", "_type", "data", "_refs"}
FRAGMENT_KEYS = {"_type", "data"}


class Session:
    """Maps object ids to live parent instances.  Single owner; not thread safe."""

    def __init__(self) -> None:
        self._objects: dict[str, Any] = {}
        self.log: list[str] = []
        self.warnings: list[str] = []

    def __contains__(self, uid: str) -> bool:
        return uid in self._objects

    def __getitem__(self, uid: str) -> Any:
        return self._objects[uid]

    def __len__(self) -> int:
        return len(self._objects)

    def __iter__(self) -> Iterator[str]:
        return iter(self._objects)

    def register(self, uid: str, obj: Any) -> Any:
        """Bind ``uid`` to ``obj`` unless already bound; returns the bound instance."""
        if uid not in self._objects:
            self._objects[uid] = obj
            self.log.append(uid)
        return self._objects[uid]


def _parent_types() -> tuple[type, ...]:
    types: list[type] = []
    for spec in [REGISTRY.for_name(n) for n in REGISTRY.names()]:
        types.extend(spec.parent_type)
    return tuple(set(types))


def save(obj: Any, session: Session | None = None, registry: TypeRegistry = REGISTRY) -> dict:
    """Document for ``obj`` with a transitively closed ``_refs`` table.

    With a ``session``, the parents written out are registered there so that
    loading the file back in the same session yields the original instances.
    """
    refs: dict[str, dict] = {}
    memo: dict[int, str] = {}

    def ref(parent: Any) -> str:
        key = id(parent)
        if key not in memo:
            frag = fragment(parent)
            uid = object_id(frag)
            refs[uid] = frag
            memo[key] = uid
            if session is not None:
                session.register(uid, parent)
        return memo[key]

    def fragment(value: Any) -> dict:
        spec = registry.for_object(value)
        if spec.has_parent:
            t: Any = {"name": spec.name, "params": ref(getattr(value, spec.parent_attr))}
        else:
            t = spec.name
        return {"_type": t, "data": spec.encode(value)}

    top = fragment(obj)
    if session is not None and isinstance(obj, _parent_types()):
        session.register(object_id(top), obj)
    return {
        "_format": CURRENT_FORMAT_VERSION,
        "_ns": {"name": NAMESPACE, "version": NAMESPACE_VERSION},
        "_type": top["_type"],
        "data": top["data"],
        "_refs": refs,
    }


# validation


def _type_parts(t: Any) -> tuple[str | None, Any]:
    if isinstance(t, str):
        return t, None
    if isinstance(t, dict) and isinstance(t.get("name"), str):
        return t["name"], t.get("params")
    return None, None


def _check_type(t: Any, path: str, registry: TypeRegistry) -> tuple[TypeSpec | None, list[Violation]]:
    name, params = _type_parts(t)
    if name is None:
        return None, [Violation("SchemaViolation", path, "type must be a string or an object with 'name'")]
    if isinstance(t, dict):
        extra = set(t) - {"name", "params"}
        if extra:
            return None, [Violation("SchemaViolation", f"{path}/{sorted(extra)[0]}", "unknown key in type descriptor")]
    spec = registry.for_name(name)
    if spec is None:
        return None, [Violation("RegistryViolation", path, f"unknown type '{name}'")]
    if spec.has_parent and not is_uuid(params):
        return None, [Violation("SchemaViolation", path, f"type '{name}' needs a parent UUID in 'params'")]
    if not spec.has_parent and params is not None:
        return None, [Violation("SchemaViolation", f"{path}/params", f"type '{name}' takes no parameters")]
    return spec, []


def _uuid_paths(tree: Any, path: str) -> Iterator[tuple[str, str]]:
    if isinstance(tree, str):
        if is_uuid(tree):
            yield path, tree
    elif isinstance(tree, dict):
        for k in sorted(tree):
            if is_uuid(k):
                yield f"{path}/{k}", k
            yield from _uuid_paths(tree[k], f"{path}/{k}")
    elif isinstance(tree, list):
        for i, v in enumerate(tree):
            yield from _uuid_paths(v, f"{path}/{i}")


def _structural_violations(doc: Any, registry_map: dict[str, TypeRegistry] = NAMESPACES) -> list[Violation]:
    if not isinstance(doc, dict):
        return [Violation("SchemaViolation", "", "document must be a JSON object")]
    out: list[Violation] = []
    out += [Violation("SchemaViolation", f"/{k}", f"missing key '{k}'") for k in sorted(TOP_KEYS - doc.keys())]
    out += [Violation("SchemaViolation", f"/{k}", f"unknown key '{k}'") for k in sorted(doc.keys() - TOP_KEYS)]
    if out:
        return out

    fmt = doc["_format"]
    current = True
    if isinstance(fmt, bool) or not isinstance(fmt, int) or fmt < 1:
        out.append(Violation("SchemaViolation", "/_format", "format version must be a positive integer"))
        current = False
    elif fmt != CURRENT_FORMAT_VERSION:
        out.append(Violation("VersionViolation", "/_format", f"format {fmt}, current is {CURRENT_FORMAT_VERSION}"))
        current = False

    ns = doc["_ns"]
    registry: TypeRegistry | None = None
    if not isinstance(ns, dict) or set(ns) != {"name", "version"} or not all(isinstance(v, str) for v in ns.values()):
        out.append(Violation("SchemaViolation", "/_ns", "namespace must be an object with string 'name' and 'version'"))
    elif ns["name"] not in registry_map:
        out.append(Violation("NamespaceViolation", "/_ns/name", f"unknown namespace '{ns['name']}'"))
    else:
        registry = registry_map[ns["name"]]

    refs = doc["_refs"]
    if not isinstance(refs, dict):
        out.append(Violation("SchemaViolation", "/_refs", "refs must be an object keyed by UUID"))
        refs = {}

    # closure: UUIDs used anywhere must be defined in _refs
    used = list(_uuid_paths(doc["_type"], "/_type")) + list(_uuid_paths(doc["data"], "/data"))
    for uid, frag in sorted(refs.items()):
        if not is_uuid(uid):
            out.append(Violation("SchemaViolation", f"/_refs/{uid}", "refs key is not a lowercase UUID"))
        used += _uuid_paths(frag, f"/_refs/{uid}")
    for path, uid in used:
        if uid not in refs:
            out.append(Violation("ClosureViolation", path, f"UUID {uid} is not defined in _refs"))

    # acyclicity of the parent graph
    edges = {uid: sorted(mentioned_uuids(frag) & refs.keys()) for uid, frag in refs.items()}
    state: dict[str, int] = {}

    def visit(uid: str) -> None:
        state[uid] = 1
        for nxt in edges[uid]:
            if state.get(nxt) == 1:
                out.append(Violation("CycleViolation", f"/_refs/{uid}", f"reference cycle through {nxt}"))
            elif nxt not in state:
                visit(nxt)
        state[uid] = 2

    for uid in sorted(edges):
        if uid not in state:
            visit(uid)

    if registry is None or not current:
        return out

    # registry and payload schema
    entries = [("", doc)] + [(f"/_refs/{uid}", frag) for uid, frag in sorted(refs.items())]
    for base, frag in entries:
        if base and (not isinstance(frag, dict) or set(frag) != FRAGMENT_KEYS):
            out.append(Violation("SchemaViolation", base, "ref fragment must have exactly '_type' and 'data'"))
            continue
        spec, vs = _check_type(frag["_type"], f"{base}/_type", registry)
        out += vs
        if spec is None:
            continue
        out += spec.check(frag["data"], f"{base}/data")
        if spec.has_parent:
            puid = _type_parts(frag["_type"])[1]
            pfrag = refs.get(puid)
            if isinstance(pfrag, dict):
                pspec = registry.for_name(_type_parts(pfrag.get("_type"))[0] or "")
                if pspec is not None and pspec.pytype not in spec.parent_type:
                    out.append(Violation("SchemaViolation", f"{base}/_type/params", f"{pspec.name} cannot be the parent of {spec.name}"))
    return out


def validate(doc: Any) -> list[Violation]:
    """All closure, cycle, registry and schema violations; [] for a loadable document."""
    out = _structural_violations(doc)
    if not out:
        try:
            _decode(doc, Session(), NAMESPACES[doc["_ns"]["name"]])
        except MalformedPayload as exc:
            out.append(Violation("SchemaViolation", exc.path, str(exc)))
    return out


# loading


def _decode(doc: dict, session: Session, registry: TypeRegistry) -> Any:
    refs = doc["_refs"]
    parent_types = _parent_types()

    def resolve(uid: str, expected: tuple[type, ...], path: str) -> Any:
        if uid in session:
            obj = session[uid]
        else:
            obj = decode_fragment(refs[uid], f"/_refs/{uid}")
            obj = session.register(uid, obj)
        if not isinstance(obj, expected):
            raise MalformedPayload(f"parent {uid} is a {type(obj).__name__}", path)
        return obj

    def decode_fragment(frag: dict, base: str) -> Any:
        name, params = _type_parts(frag["_type"])
        spec = registry.for_name(name)
        parent = resolve(params, spec.parent_type, f"{base}/_type/params") if spec.has_parent else None
        return spec.decode(frag["data"], parent, f"{base}/data")

    top = {"_type": doc["_type"], "data": doc["data"]}
    obj = decode_fragment(top, "")
    if isinstance(obj, parent_types):
        obj = session.register(object_id(top), obj)
    return obj


def load(doc: Any, session: Session) -> Any:
    """Live object for ``doc``; parents already in ``session`` are reused."""
    if not isinstance(doc, dict):
        raise MalformedPayload("document must be a JSON object", "")
    fmt = doc.get("_format")
    if isinstance(fmt, int) and not isinstance(fmt, bool):
        if fmt > CURRENT_FORMAT_VERSION:
            raise VersionTooNew(f"document format {fmt} is newer than supported format {CURRENT_FORMAT_VERSION}")
        if fmt < CURRENT_FORMAT_VERSION:
            raise UpgradeRequired(f"document format {fmt} must be upgraded to {CURRENT_FORMAT_VERSION} before loading")
    ns = doc.get("_ns")
    if isinstance(ns, dict) and isinstance(ns.get("name"), str):
        if ns["name"] not in NAMESPACES:
            raise UnknownNamespace(f"unknown namespace '{ns['name']}'")
        if ns.get("version") != NAMESPACE_VERSION:
            session.warnings.append(
                f"document written with {ns['name']} {ns.get('version')}, loading with {NAMESPACE_VERSION}"
            )
    violations = _structural_violations(doc)
    for v in violations:
        if v.kind == "RegistryViolation":
            raise UnknownType(v.message)
    if violations:
        v = violations[0]
        raise MalformedPayload(f"{v.kind}: {v.message}", v.path)
    return _decode(doc, session, NAMESPACES[doc["_ns"]["name"]])
