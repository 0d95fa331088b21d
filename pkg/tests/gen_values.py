"""Random values of every serializable kernel type.

Run as a script it prints one SHA-256 over the canonical bytes of all
generated documents, so two interpreter processes can be compared.
"""

from __future__ import annotations

import hashlib
import random
import sys

from mathrepro.kernel import IntMatrix, PolynomialRing, make_finite_field
from mathrepro.mrdi import canonical_bytes, save

FIELD_SPECS = [(2, 1), (3, 1), (7, 1), (101, 1), (2, 3), (3, 2), (7, 2), (5, 3)]
NAMES = ["x", "y", "z", "t"]


def random_field(rng: random.Random):
    return make_finite_field(*rng.choice(FIELD_SPECS))


def random_element(rng: random.Random, field=None):
    field = field or random_field(rng)
    return field([rng.randrange(field.p) for _ in range(field.degree)])


def random_ring(rng: random.Random, field=None) -> PolynomialRing:
    field = field or random_field(rng)
    return PolynomialRing(field, NAMES[: rng.randint(1, 3)])


def random_polynomial(rng: random.Random, ring=None, nterms: int = 5, max_exp: int = 4):
    ring = ring or random_ring(rng)
    f = ring.coefficient_field
    terms = [
        (
            tuple(rng.randint(0, max_exp) for _ in range(ring.nvars)),
            f([rng.randrange(f.p) for _ in range(f.degree)]),
        )
        for _ in range(rng.randint(0, nterms))
    ]
    return ring.from_terms(terms)


def random_matrix(rng: random.Random, max_dim: int = 6, bound: int = 20) -> IntMatrix:
    r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return IntMatrix.from_rows([[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)])


def random_integer(rng: random.Random) -> int:
    return rng.choice([0, 1, -1, rng.randint(-10**6, 10**6), rng.randint(-10**40, 10**40)])


MAKERS = [random_integer, random_field, random_element, random_ring, random_polynomial, random_matrix]


def random_values(seed: int, count: int) -> list:
    rng = random.Random(seed)
    return [MAKERS[i % len(MAKERS)](rng) for i in range(count)]


def digest(seed: int, count: int) -> str:
    h = hashlib.sha256()
    for v in random_values(seed, count):
        h.update(canonical_bytes(save(v)))
        h.update(b"\n")
    return h.hexdigest()


if __name__ == "__main__":
    print(digest(int(sys.argv[1]), int(sys.argv[2])))
