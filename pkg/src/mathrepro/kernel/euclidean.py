"""Euclidean domains as plain objects exposing division with remainder.

The generic Smith form only talks to a domain through this interface, so any
ring supplying ``divmod``, ``norm`` and ``canonical`` can be plugged in.
"""

from __future__ import annotations

from typing import Any, Sequence

from mathrepro.kernel import fields as _f


class EuclideanDomain:
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def divmod(self, a, b) -> tuple[Any, Any]:
        """``(q, r)`` with ``a = q*b + r`` and ``r`` zero or of smaller norm."""
        raise NotImplementedError

    def norm(self, a) -> int:
        raise NotImplementedError

    def canonical(self, a):
        """The distinguished associate of ``a`` (e.g. |a| for integers)."""
        raise NotImplementedError

    def divides(self, a, b) -> bool:
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.divmod(b, a)[1])

    def xgcd(self, a, b) -> tuple[Any, Any, Any]:
        """``(g, s, t)`` with ``s*a + t*b = g``, g a gcd of a and b."""
        r0, r1 = a, b
        s0, s1 = self.one(), self.zero()
        t0, t1 = self.zero(), self.one()
        while not self.is_zero(r1):
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        return r0, s0, t0


class IntegerRing(EuclideanDomain):
    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def is_zero(self, a: int) -> bool:
        return a == 0

    def add(self, a: int, b: int) -> int:
        return a + b

    def sub(self, a: int, b: int) -> int:
        return a - b

    def mul(self, a: int, b: int) -> int:
        return a * b

    def divmod(self, a: int, b: int) -> tuple[int, int]:
        return divmod(a, b)

    def norm(self, a: int) -> int:
        return abs(a)

    def canonical(self, a: int) -> int:
        return abs(a)

    def __repr__(self) -> str:
        return "ZZ"


ZZ = IntegerRing()


class UnivariatePolynomials(EuclideanDomain):
    """GF(p)[t] with elements as coefficient tuples, low degree first."""

    def __init__(self, p: int):
        _f.PrimeField(p)
        self.p = p

    def zero(self) -> tuple[int, ...]:
        return ()

    def one(self) -> tuple[int, ...]:
        return (1,)

    def is_zero(self, a) -> bool:
        return not a

    def element(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return tuple(_f._trim([c % self.p for c in coeffs]))

    def add(self, a, b):
        return self.sub(a, tuple(-c for c in b))

    def sub(self, a, b):
        return tuple(_f._poly_sub(a, b, self.p))

    def mul(self, a, b):
        return tuple(_f._poly_mul(a, b, self.p))

    def divmod(self, a, b):
        q, r = _f._poly_divmod(a, b, self.p)
        return tuple(q), tuple(r)

    def norm(self, a) -> int:
        return len(a) - 1 if a else -1

    def canonical(self, a):
        if not a:
            return a
        inv = pow(a[-1], -1, self.p)
        return tuple(c * inv % self.p for c in a)

    def __repr__(self) -> str:
        return f"GF({self.p})[t]"
