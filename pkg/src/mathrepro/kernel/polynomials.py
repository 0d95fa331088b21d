"""Sparse multivariate polynomials over a finite field."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from mathrepro.errors import DuplicateVariable, InvalidIdentifier, InvalidInput, ParentMismatch
from mathrepro.kernel.fields import Field, FieldElement

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Exponent = tuple[int, ...]


class PolynomialRing:
    """``field[names...]`` with lexicographic monomial order.

    Two rings are ``==`` when they are structurally equal, but arithmetic
    requires the very same instance.
    """

    __slots__ = ("coefficient_field", "variable_names")

    monomial_order = "lex"

    def __init__(self, coefficient_field: Field, variable_names: Sequence[str]):
        if not isinstance(coefficient_field, Field):
            raise InvalidInput(f"coefficient ring must be a finite field, got {coefficient_field!r}")
        names = tuple(variable_names)
        for name in names:
            if not isinstance(name, str) or not IDENTIFIER.match(name):
                raise InvalidIdentifier(f"invalid variable name {name!r}")
        seen = set()
        for name in names:
            if name in seen:
                raise DuplicateVariable(f"variable {name!r} appears twice")
            seen.add(name)
        self.coefficient_field = coefficient_field
        self.variable_names = names

    @property
    def nvars(self) -> int:
        return len(self.variable_names)

    def gens(self) -> list[Polynomial]:
        one = self.coefficient_field.one()
        out = []
        for i in range(self.nvars):
            exp = tuple(1 if j == i else 0 for j in range(self.nvars))
            out.append(Polynomial(self, {exp: one}))
        return out

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self(1)

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.parent is not self:
                raise ParentMismatch(f"cannot coerce element of {value.parent} into {self}")
            return value
        c = self.coefficient_field(value)
        if c.is_zero():
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def from_terms(self, terms: Mapping[Exponent, FieldElement | int] | Iterable[tuple[Exponent, FieldElement | int]]) -> Polynomial:
        """Build a polynomial, summing repeated monomials and dropping zeros."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, FieldElement] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise InvalidInput(f"bad exponent vector {exp} for {self.nvars} variables")
            c = self.coefficient_field(c)
            acc[exp] = acc[exp] + c if exp in acc else c
        return Polynomial(self, {e: c for e, c in acc.items() if not c.is_zero()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolynomialRing):
            return NotImplemented
        return self.variable_names == other.variable_names and self.coefficient_field == other.coefficient_field

    def __hash__(self) -> int:
        return hash((self.coefficient_field, self.variable_names))

    def __repr__(self) -> str:
        return f"{self.coefficient_field!r}[{', '.join(self.variable_names)}]"


def polynomial_ring(field: Field, names: Sequence[str]) -> tuple[PolynomialRing, list[Polynomial]]:
    ring = PolynomialRing(field, names)
    return ring, ring.gens()


class Polynomial:
    __slots__ = ("parent", "terms")

    parent: PolynomialRing
    terms: Mapping[Exponent, FieldElement]

    def __init__(self, parent: PolynomialRing, terms: dict[Exponent, FieldElement]):
        # trusted constructor: callers guarantee no zero coefficients
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.parent is not self.parent:
                raise ParentMismatch(f"polynomials in {self.parent} and {other.parent} do not share a parent ring")
            return other
        if isinstance(other, FieldElement):
            if other.parent is not self.parent.coefficient_field:
                raise ParentMismatch(f"element of {other.parent} is not a coefficient of {self.parent}")
            return self.parent(other)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.parent(other)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Exponent, FieldElement]]:
        """Terms in descending lexicographic order of exponent vectors."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out[exp] + c if exp in out else c
            if s.is_zero():
                out.pop(exp, None)
            else:
                out[exp] = s
        return Polynomial(self.parent, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.parent, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                out[exp] = out[exp] + prod if exp in out else prod
        return Polynomial(self.parent, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise InvalidInput("negative powers of polynomials are not defined")
        result = self.parent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, *point) -> FieldElement:
        """Evaluate at a point of the coefficient field."""
        field = self.parent.coefficient_field
        if len(point) != self.parent.nvars:
            raise InvalidInput(f"expected {self.parent.nvars} values, got {len(point)}")
        values = [field(v) for v in point]
        total = field.zero()
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.parent == other.parent and dict(self.terms) == dict(other.terms)
        if isinstance(other, int) and not isinstance(other, bool):
            return self == self.parent(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.parent, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = self.parent.variable_names
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
            )
            cs = repr(c)
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append(mono)
            elif " + " in cs:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)
