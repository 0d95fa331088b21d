"""Type registry: how each kernel type maps to and from a payload tree.

Payload numbers are decimal strings.  Every registered type supplies a strict
schema check (unknown keys are violations), an encoder and a decoder.  Types
with a parent name the attribute holding it; the parent travels in ``_refs``
and its UUID is the type descriptor's ``params``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable

from mathrepro import __version__
from mathrepro.errors import MalformedPayload, MathReproError, UnregisteredType
from mathrepro.kernel import (
    Field,
    FieldElement,
    FiniteField,
    IntMatrix,
    Polynomial,
    PolynomialRing,
    PrimeField,
)

NAMESPACE = "mathrepro"
NAMESPACE_VERSION = __version__

DECIMAL = re.compile(r"(0|-?[1-9][0-9]*)\Z")


@dataclass(frozen=True)
class Violation:
    """One failed check; ``path`` is a JSON pointer into the document."""

    kind: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} at '{self.path}': {self.message}"


@dataclass(frozen=True)
class TypeSpec:
    name: str
    pytype: type
    check: Callable[[Any, str], list[Violation]]
    encode: Callable[[Any], Any]
    decode: Callable[[Any, Any, str], Any]
    parent_attr: str | None = None
    parent_type: tuple[type, ...] = ()

    @property
    def has_parent(self) -> bool:
        return self.parent_attr is not None


class TypeRegistry:
    def __init__(self) -> None:
        self._by_name: dict[str, TypeSpec] = {}
        self._by_type: dict[type, TypeSpec] = {}

    def register(self, spec: TypeSpec) -> TypeSpec:
        self._by_name[spec.name] = spec
        self._by_type[spec.pytype] = spec
        return spec

    def for_object(self, obj: Any) -> TypeSpec:
        spec = self._by_type.get(type(obj))
        if spec is None:
            raise UnregisteredType(f"no mrdi encoding registered for {type(obj).__name__}")
        return spec

    def for_name(self, name: str) -> TypeSpec | None:
        return self._by_name.get(name)

    def names(self) -> list[str]:
        return sorted(self._by_name)


REGISTRY = TypeRegistry()
NAMESPACES: dict[str, TypeRegistry] = {NAMESPACE: REGISTRY}


# schema helpers


def _schema(path: str, message: str) -> Violation:
    return Violation("SchemaViolation", path, message)


def check_decimal(value: Any, path: str, *, minimum: int | None = None) -> list[Violation]:
    if not isinstance(value, str) or not DECIMAL.match(value):
        return [_schema(path, f"expected a decimal integer string, got {value!r}")]
    if minimum is not None and int(value) < minimum:
        return [_schema(path, f"expected a value >= {minimum}, got {value}")]
    return []


def check_decimal_list(value: Any, path: str, *, minimum: int | None = None) -> list[Violation]:
    if not isinstance(value, list):
        return [_schema(path, f"expected an array, got {type(value).__name__}")]
    out: list[Violation] = []
    for i, v in enumerate(value):
        out += check_decimal(v, f"{path}/{i}", minimum=minimum)
    return out


def check_object(value: Any, path: str, keys: set[str]) -> list[Violation]:
    if not isinstance(value, dict):
        return [_schema(path, f"expected an object, got {type(value).__name__}")]
    out = [_schema(f"{path}/{k}", f"missing key '{k}'") for k in sorted(keys - value.keys())]
    out += [_schema(f"{path}/{k}", f"unknown key '{k}'") for k in sorted(value.keys() - keys)]
    return out


def _build(path: str, factory: Callable[[], Any]) -> Any:
    try:
        return factory()
    except MathReproError as exc:
        raise MalformedPayload(str(exc), path) from exc


# Integer


def _check_integer(data, path):
    return check_decimal(data, path)


REGISTRY.register(
    TypeSpec("Integer", int, _check_integer, encode=str, decode=lambda data, parent, path: int(data))
)


# PrimeField / FiniteField


def _check_prime_field(data, path):
    out = check_object(data, path, {"p"})
    return out or check_decimal(data["p"], f"{path}/p", minimum=2)


REGISTRY.register(
    TypeSpec(
        "PrimeField",
        PrimeField,
        _check_prime_field,
        encode=lambda F: {"p": str(F.p)},
        decode=lambda data, parent, path: _build(f"{path}/p", lambda: PrimeField(int(data["p"]))),
    )
)


def _check_finite_field(data, path):
    out = check_object(data, path, {"p", "defining_poly"})
    if out:
        return out
    out = check_decimal(data["p"], f"{path}/p", minimum=2)
    out += check_decimal_list(data["defining_poly"], f"{path}/defining_poly", minimum=0)
    if not out and len(data["defining_poly"]) < 2:
        out.append(_schema(f"{path}/defining_poly", "defining polynomial must have degree >= 1"))
    return out


def _decode_finite_field(data, parent, path):
    p = int(data["p"])
    coeffs = [int(c) for c in data["defining_poly"]]
    if any(c >= p for c in coeffs):
        raise MalformedPayload(f"coefficient not reduced modulo {p}", f"{path}/defining_poly")
    return _build(f"{path}/defining_poly", lambda: FiniteField(p, len(coeffs) - 1, coeffs))


REGISTRY.register(
    TypeSpec(
        "FiniteField",
        FiniteField,
        _check_finite_field,
        encode=lambda F: {"p": str(F.p), "defining_poly": [str(c) for c in F.defining_poly]},
        decode=_decode_finite_field,
    )
)


# FieldElement


def _decode_coeffs(data, field: Field, path: str) -> FieldElement:
    if len(data) != field.degree:
        raise MalformedPayload(f"expected {field.degree} coefficients, got {len(data)}", path)
    coeffs = [int(c) for c in data]
    for i, c in enumerate(coeffs):
        if not 0 <= c < field.p:
            raise MalformedPayload(f"coefficient {c} not in [0, {field.p})", f"{path}/{i}")
    return field(coeffs)


REGISTRY.register(
    TypeSpec(
        "FieldElement",
        FieldElement,
        lambda data, path: check_decimal_list(data, path, minimum=0),
        encode=lambda a: [str(c) for c in a.coeffs],
        decode=lambda data, parent, path: _decode_coeffs(data, parent, path),
        parent_attr="parent",
        parent_type=(PrimeField, FiniteField),
    )
)


# PolynomialRing


def _check_ring(data, path):
    out = check_object(data, path, {"symbols"})
    if out:
        return out
    syms = data["symbols"]
    if not isinstance(syms, list) or not all(isinstance(s, str) for s in syms):
        return [_schema(f"{path}/symbols", "expected an array of strings")]
    return []


REGISTRY.register(
    TypeSpec(
        "PolynomialRing",
        PolynomialRing,
        _check_ring,
        encode=lambda R: {"symbols": list(R.variable_names)},
        decode=lambda data, parent, path: _build(f"{path}/symbols", lambda: PolynomialRing(parent, data["symbols"])),
        parent_attr="coefficient_field",
        parent_type=(PrimeField, FiniteField),
    )
)


# Polynomial

TERMS_KEY = "terms"


def _check_polynomial(data, path):
    out = check_object(data, path, {TERMS_KEY})
    if out:
        return out
    terms = data[TERMS_KEY]
    tpath = f"{path}/{TERMS_KEY}"
    if not isinstance(terms, list):
        return [_schema(tpath, "expected an array of [exponents, coefficient] pairs")]
    for i, term in enumerate(terms):
        if not isinstance(term, list) or len(term) != 2:
            out.append(_schema(f"{tpath}/{i}", "expected an [exponents, coefficient] pair"))
            continue
        out += check_decimal_list(term[0], f"{tpath}/{i}/0", minimum=0)
        out += check_decimal_list(term[1], f"{tpath}/{i}/1", minimum=0)
    return out


def _encode_polynomial(f: Polynomial):
    return {TERMS_KEY: [[[str(e) for e in exp], [str(c) for c in coeff.coeffs]] for exp, coeff in f.sorted_terms()]}


def _decode_polynomial(data, ring: PolynomialRing, path: str) -> Polynomial:
    terms = {}
    tpath = f"{path}/{TERMS_KEY}"
    for i, (exp, coeff) in enumerate(data[TERMS_KEY]):
        exp = tuple(int(e) for e in exp)
        if len(exp) != ring.nvars:
            raise MalformedPayload(f"exponent vector of length {len(exp)} in a ring with {ring.nvars} variables", f"{tpath}/{i}/0")
        if exp in terms:
            raise MalformedPayload("repeated monomial", f"{tpath}/{i}/0")
        c = _decode_coeffs(coeff, ring.coefficient_field, f"{tpath}/{i}/1")
        if c.is_zero():
            raise MalformedPayload("stored coefficient is zero", f"{tpath}/{i}/1")
        terms[exp] = c
    return ring.from_terms(terms)


REGISTRY.register(
    TypeSpec(
        "Polynomial",
        Polynomial,
        _check_polynomial,
        encode=_encode_polynomial,
        decode=_decode_polynomial,
        parent_attr="parent",
        parent_type=(PolynomialRing,),
    )
)


# IntMatrix


def _check_matrix(data, path):
    out = check_object(data, path, {"nrows", "ncols", "entries"})
    if out:
        return out
    out = check_decimal(data["nrows"], f"{path}/nrows", minimum=1)
    out += check_decimal(data["ncols"], f"{path}/ncols", minimum=1)
    out += check_decimal_list(data["entries"], f"{path}/entries")
    if not out and len(data["entries"]) != int(data["nrows"]) * int(data["ncols"]):
        out.append(_schema(f"{path}/entries", "entry count does not match nrows * ncols"))
    return out


REGISTRY.register(
    TypeSpec(
        "IntMatrix",
        IntMatrix,
        _check_matrix,
        encode=lambda m: {"nrows": str(m.nrows), "ncols": str(m.ncols), "entries": [str(e) for e in m.entries]},
        decode=lambda data, parent, path: IntMatrix(int(data["nrows"]), int(data["ncols"]), [int(e) for e in data["entries"]]),
    )
)
