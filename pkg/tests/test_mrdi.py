from __future__ import annotations

import copy
import hashlib
import json
import random
import uuid
from pathlib import Path

import pytest

from gen_values import random_values
from mathrepro.errors import (
    MalformedPayload,
    ParentMismatch,
    UnknownNamespace,
    UnknownType,
    UnregisteredType,
    UpgradeRequired,
    VersionTooNew,
)
from mathrepro.kernel import IntMatrix, make_finite_field, polynomial_ring
from mathrepro.mrdi import (
    CURRENT_FORMAT_VERSION,
    Session,
    canonical_bytes,
    load,
    load_file,
    object_id,
    parse_json,
    read_document,
    save,
    save_file,
    validate,
)
from mathrepro.runner import show

GOLDEN = Path(__file__).parent / "fixtures" / "mrdi" / "golden"


@pytest.fixture
def gf49_ring():
    F = make_finite_field(7, 2)
    R, (x, y) = polynomial_ring(F, ["x", "y"])
    return F, R, x, y


def _kinds(doc):
    return [v.kind for v in validate(doc)]


def test_matrix_document_by_hand():
    doc = save(IntMatrix.identity(2))
    assert canonical_bytes(doc) == (
        b'{"_format":2,"_ns":{"name":"mathrepro","version":"0.1.0"},"_refs":{},"_type":"IntMatrix",'
        b'"data":{"entries":["1","0","0","1"],"ncols":"2","nrows":"2"}}'
    )


def test_object_id_is_uuid8_of_sha256():
    frag = {"_type": "PrimeField", "data": {"p": "7"}}
    digest = hashlib.sha256(b'{"_type":"PrimeField","data":{"p":"7"}}').hexdigest()
    uid = uuid.UUID(object_id(frag))
    assert uid.version == 8
    assert uid.variant == uuid.RFC_4122
    h = uid.hex
    # everything except the version nibble and the two variant bits is hash material
    assert h[:12] == digest[:12] and h[13:16] == digest[13:16] and h[17:] == digest[17:32]


def test_polynomial_document_has_ring_and_field_refs(gf49_ring):
    F, R, x, y = gf49_ring
    doc = save(x**2 + (F.gen() + 1) * y + 3)
    assert len(doc["_refs"]) == 2
    ring_id = doc["_type"]["params"]
    assert doc["_refs"][ring_id]["_type"]["name"] == "PolynomialRing"
    field_id = doc["_refs"][ring_id]["_type"]["params"]
    assert doc["_refs"][field_id] == {"_type": "FiniteField", "data": {"p": "7", "defining_poly": ["1", "0", "1"]}}
    assert doc["_format"] == CURRENT_FORMAT_VERSION
    assert validate(doc) == []


def test_numbers_are_decimal_strings():
    doc = save(-(10**40))
    assert doc["data"] == "-" + "1" + "0" * 40
    assert load(doc, Session()) == -(10**40)


def test_save_is_deterministic_and_shares_parent_ids(gf49_ring):
    F, R, x, y = gf49_ring
    a, b = save(x + 1), save(y**3)
    assert canonical_bytes(save(x + 1)) == canonical_bytes(a)
    assert a["_refs"] == b["_refs"]
    # a structurally equal ring built separately gets the same id
    R2, (x2, _) = polynomial_ring(make_finite_field(7, 2), ["x", "y"])
    assert save(x2 + 1) == a


def test_roundtrip_all_types():
    values = random_values(seed=7, count=240)
    assert {type(v).__name__ for v in values} >= {
        "int", "PrimeField", "FiniteField", "FieldElement", "PolynomialRing", "Polynomial", "IntMatrix",
    }
    for v in values:
        doc = save(v)
        assert validate(doc) == []
        back = load(json.loads(json.dumps(doc)), Session())
        assert back == v
        assert canonical_bytes(save(back)) == canonical_bytes(doc)


def test_same_session_shares_parents(tmp_path, gf49_ring):
    F, R, x, y = gf49_ring
    save_file(tmp_path / "p.mrdi", x**2 + y)
    save_file(tmp_path / "q.mrdi", F.gen() * y + 1)
    s = Session()
    p = load_file(tmp_path / "p.mrdi", s)
    q = load_file(tmp_path / "q.mrdi", s)
    assert p.parent is q.parent
    assert p + q == x**2 + (F.gen() + 1) * y + 1


def test_separate_sessions_do_not_mix(tmp_path, gf49_ring):
    _, _, x, y = gf49_ring
    save_file(tmp_path / "p.mrdi", x)
    save_file(tmp_path / "q.mrdi", y)
    p = load_file(tmp_path / "p.mrdi", Session())
    q = load_file(tmp_path / "q.mrdi", Session())
    with pytest.raises(ParentMismatch):
        p + q


def test_save_with_session_then_load_returns_original_parent(gf49_ring):
    F, R, x, _ = gf49_ring
    s = Session()
    doc = save(x, s)
    assert load(doc, s).parent is R
    assert load(save(R, s), s) is R


def test_loaded_parent_is_field_of_loaded_element(gf49_ring):
    F, R, x, _ = gf49_ring
    s = Session()
    ring = load(save(R), s)
    elem = load(save(F.gen()), s)
    assert elem.parent is ring.coefficient_field


@pytest.mark.parametrize("name", sorted(p.stem for p in GOLDEN.glob("*.mrdi")))
def test_golden_files(name, tmp_path):
    path = GOLDEN / f"{name}.mrdi"
    obj = load_file(path, Session())
    assert show(obj) + "\n" == (GOLDEN / f"{name}.txt").read_text()
    save_file(tmp_path / "again.mrdi", obj)
    assert (tmp_path / "again.mrdi").read_bytes() == path.read_bytes()


def test_unregistered_type_rejected_on_save():
    with pytest.raises(UnregisteredType):
        save(1.5)
    with pytest.raises(UnregisteredType):
        save([1, 2])


def test_closure_violation(gf49_ring):
    _, _, x, _ = gf49_ring
    doc = save(x)
    ring_id = doc["_type"]["params"]
    field_id = doc["_refs"][ring_id]["_type"]["params"]
    del doc["_refs"][field_id]
    vs = validate(doc)
    assert [v.kind for v in vs] == ["ClosureViolation"]
    assert vs[0].path == f"/_refs/{ring_id}/_type/params"
    with pytest.raises(MalformedPayload):
        load(doc, Session())


def test_cycle_violation(gf49_ring):
    _, _, x, _ = gf49_ring
    doc = save(x)
    ring_id = doc["_type"]["params"]
    field_id = doc["_refs"][ring_id]["_type"]["params"]
    doc["_refs"][field_id]["_type"] = {"name": "FiniteField", "params": ring_id}
    assert "CycleViolation" in _kinds(doc)


def test_unknown_keys_rejected():
    doc = save(IntMatrix.identity(2))
    doc["data"]["comment"] = "hello"
    assert _kinds(doc) == ["SchemaViolation"]
    doc = save(5)
    doc["extra"] = 1
    vs = validate(doc)
    assert [(v.kind, v.path) for v in vs] == [("SchemaViolation", "/extra")]


@pytest.mark.parametrize(
    "mutate,kind",
    [
        (lambda d: d["data"].update(p="8"), "SchemaViolation"),
        (lambda d: d["data"].update(p="07"), "SchemaViolation"),
        (lambda d: d["data"].update(p=7), "SchemaViolation"),
        (lambda d: d.update(_type="Quaternion"), "RegistryViolation"),
        (lambda d: d["_ns"].update(name="elsewhere"), "NamespaceViolation"),
        (lambda d: d.update(_format=1), "VersionViolation"),
    ],
)
def test_violation_kinds(mutate, kind):
    doc = save(make_finite_field(7))
    mutate(doc)
    assert kind in _kinds(doc)


def test_polynomial_payload_checks(gf49_ring):
    _, _, x, y = gf49_ring
    good = save(x + y)
    dup = copy.deepcopy(good)
    dup["data"]["terms"][1][0] = dup["data"]["terms"][0][0]
    assert _kinds(dup) == ["SchemaViolation"]
    zero = copy.deepcopy(good)
    zero["data"]["terms"][0][1] = ["0", "0"]
    assert _kinds(zero) == ["SchemaViolation"]
    short = copy.deepcopy(good)
    short["data"]["terms"][0][0] = ["1"]
    assert _kinds(short) == ["SchemaViolation"]


def test_load_errors():
    doc = save(make_finite_field(7))
    with pytest.raises(VersionTooNew):
        load(dict(doc, _format=CURRENT_FORMAT_VERSION + 1), Session())
    with pytest.raises(UpgradeRequired):
        load(dict(doc, _format=1), Session())
    with pytest.raises(UnknownNamespace):
        load(dict(doc, _ns={"name": "other", "version": "1"}), Session())
    with pytest.raises(UnknownType):
        load(dict(doc, _type="Quaternion"), Session())
    with pytest.raises(MalformedPayload):
        load([1, 2], Session())


def test_namespace_version_mismatch_warns():
    doc = save(make_finite_field(7))
    doc["_ns"]["version"] = "0.0.9"
    s = Session()
    assert load(doc, s) == make_finite_field(7)
    assert len(s.warnings) == 1


def test_truncated_file_is_malformed(tmp_path):
    path = tmp_path / "p.mrdi"
    save_file(path, IntMatrix.identity(3))
    raw = path.read_bytes()
    path.write_bytes(raw[: len(raw) // 2])
    with pytest.raises(MalformedPayload):
        load_file(path, Session())
    path.write_bytes(b"\xff\xfe")
    with pytest.raises(MalformedPayload):
        read_document(path)


def test_file_is_canonical_with_trailing_newline(tmp_path):
    path = tmp_path / "m.mrdi"
    doc = save_file(path, IntMatrix.identity(1))
    assert path.read_bytes() == canonical_bytes(doc) + b"\n"


def test_strict_json_parsing():
    with pytest.raises(ValueError):
        parse_json('{"a": 1, "a": 2}')
    with pytest.raises(ValueError):
        parse_json('{"a": NaN}')


def test_random_structural_damage_never_crashes():
    rng = random.Random(1)
    base = save(random_values(3, 5)[4])
    for _ in range(200):
        doc = copy.deepcopy(base)
        frag = rng.choice([doc] + list(doc["_refs"].values()))
        key = rng.choice(list(frag.keys()))
        frag[key] = rng.choice([None, 3, "x", [], {}, "5f0e5c7e-0000-8000-8000-000000000000"])
        vs = validate(doc)
        if vs:
            with pytest.raises((MalformedPayload, UnknownType, UnknownNamespace, UpgradeRequired, VersionTooNew)):
                load(doc, Session())
