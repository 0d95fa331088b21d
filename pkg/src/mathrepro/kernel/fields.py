"""Prime fields GF(p) and extension fields GF(p^n).

Elements of GF(p^n) are residue vectors ``(c_0, ..., c_{n-1})`` standing for
``c_0 + c_1*o + ... + c_{n-1}*o^(n-1)`` where ``o`` is a root of the field's
defining polynomial.  Parents are compared by identity when doing arithmetic;
``==`` on fields is structural.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from mathrepro.errors import InvalidInput, NotPrime, ParentMismatch

GENERATOR_NAME = "o"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# Dense univariate polynomials over GF(p), coefficient lists low -> high with
# no trailing zeros.  The zero polynomial is [].


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    _trim(rem)
    inv_lead = pow(b[-1], -1, p)
    quo = [0] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] * inv_lead % p
        quo[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * y) % p
        _trim(rem)
    return _trim(quo), rem


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    ``f`` of degree n is irreducible iff gcd(f, x^(p^k) - x) = 1 for every
    k <= n/2.
    """
    f = _trim([c % p for c in poly])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = _poly_powmod(h, p, f, p)
        if len(_poly_gcd(f, _poly_sub(h, x, p), p)) > 1:
            return False
    return True


def _poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, p), mod, p)[1]
        base = _poly_divmod(_poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree ``n``.

    Tuples ``(c_{n-1}, ..., c_0)`` are scanned in ascending order; the result
    is returned low -> high, including the leading 1.
    """
    for tail in itertools.product(range(p), repeat=n):
        poly = tuple(reversed(tail)) + (1,)
        if poly[0] == 0 and n > 1:
            continue
        if is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {n} over GF({p})")


class Field:
    """Common arithmetic for GF(p) and GF(p^n)."""

    __slots__ = ("p", "degree", "defining_poly", "order")

    p: int
    degree: int
    defining_poly: tuple[int, ...]
    order: int

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value: int | FieldElement | Sequence[int]) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.parent is not self:
                raise ParentMismatch(f"cannot coerce element of {value.parent} into {self}")
            return value
        if isinstance(value, bool):
            raise InvalidInput("booleans are not field elements")
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.degree - 1))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) != self.degree:
            raise InvalidInput(f"expected {self.degree} coefficients, got {len(coeffs)}")
        return FieldElement(self, tuple(c % self.p for c in coeffs))

    def zero(self) -> FieldElement:
        return self(0)

    def one(self) -> FieldElement:
        return self(1)

    def gen(self) -> FieldElement:
        """Root ``o`` of the defining polynomial; 1 for prime fields."""
        if self.degree == 1:
            return self.one()
        return FieldElement(self, (0, 1) + (0,) * (self.degree - 2))

    def elements(self) -> Iterator[FieldElement]:
        for coeffs in itertools.product(range(self.p), repeat=self.degree):
            yield FieldElement(self, tuple(reversed(coeffs)))

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        if self.degree == 1:
            return (a[0] * b[0] % self.p,)
        prod = _poly_mul(_trim(list(a)), _trim(list(b)), self.p)
        rem = _poly_divmod(prod, self.defining_poly, self.p)[1]
        return tuple(rem) + (0,) * (self.degree - len(rem))

    def _inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        if self.degree == 1:
            return (pow(a[0], -1, self.p),)
        # extended Euclid in GF(p)[x]: s*a + t*f = 1
        r0, r1 = list(self.defining_poly), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _poly_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, self.p), self.p)
        inv_lead = pow(r0[0], -1, self.p)
        s = [c * inv_lead % self.p for c in s0]
        s = _poly_divmod(s, self.defining_poly, self.p)[1]
        return tuple(s) + (0,) * (self.degree - len(s))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return type(self) is type(other) and self.p == other.p and self.defining_poly == other.defining_poly

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.p, self.defining_poly))


class PrimeField(Field):
    __slots__ = ()

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int):
            raise InvalidInput(f"field characteristic must be an integer, got {p!r}")
        if p < 2:
            raise InvalidInput(f"field characteristic must be >= 2, got {p}")
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.degree = 1
        self.defining_poly = (0, 1)
        self.order = p

    def __repr__(self) -> str:
        return f"GF({self.p})"


class FiniteField(Field):
    __slots__ = ()

    def __init__(self, p: int, n: int, defining_poly: Sequence[int] | None = None):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InvalidInput(f"degree must be a positive integer, got {n!r}")
        PrimeField(p)  # validates p
        if defining_poly is None:
            poly = least_irreducible(p, n)
        else:
            poly = tuple(int(c) % p for c in defining_poly)
            if len(poly) != n + 1 or poly[-1] != 1:
                raise InvalidInput(f"defining polynomial must be monic of degree {n}")
            if not is_irreducible(poly, p):
                raise InvalidInput(f"defining polynomial {_format_poly(poly, 'x')} is reducible over GF({p})")
        self.p = p
        self.degree = n
        self.defining_poly = poly
        self.order = p**n

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"


def make_prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def make_finite_field(p: int, n: int = 1) -> Field:
    """GF(p^n) with the canonical (least irreducible) defining polynomial.

    ``n == 1`` returns a :class:`PrimeField`.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInput(f"degree must be a positive integer, got {n!r}")
    if n == 1:
        return PrimeField(p)
    return FiniteField(p, n)


def _format_poly(coeffs: Sequence[int], var: str) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


class FieldElement:
    __slots__ = ("parent", "coeffs")

    parent: Field
    coeffs: tuple[int, ...]

    def __init__(self, parent: Field, coeffs: tuple[int, ...]):
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.parent is not self.parent:
                raise ParentMismatch(f"elements of {self.parent} and {other.parent} do not share a parent")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.parent(other)
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.parent.p
        return FieldElement(self.parent, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        p = self.parent.p
        return FieldElement(self.parent, tuple(-a % p for a in self.coeffs))

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
        return FieldElement(self.parent, self.parent._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        return FieldElement(self.parent, self.parent._inv(self.coeffs))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> FieldElement:
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        result = self.parent.one()
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.parent == other.parent and self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coeffs == self.parent(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.parent, self.coeffs))

    def __repr__(self) -> str:
        return _format_poly(self.coeffs, GENERATOR_NAME)
