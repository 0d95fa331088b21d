"""Exact arithmetic kernel: finite fields, polynomial rings, integer matrices, Smith forms."""

from mathrepro.kernel.euclidean import ZZ, EuclideanDomain, IntegerRing, UnivariatePolynomials
from mathrepro.kernel.fields import (
    Field,
    FieldElement,
    FiniteField,
    PrimeField,
    is_irreducible,
    least_irreducible,
    make_finite_field,
    make_prime_field,
)
from mathrepro.kernel.matrix import IntMatrix
from mathrepro.kernel.polynomials import Polynomial, PolynomialRing, polynomial_ring
from mathrepro.kernel.snf import smith_form, snf_euclidean, snf_integer


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_pow(a: Polynomial, k: int) -> Polynomial:
    return a**k


__all__ = [
    "ZZ",
    "EuclideanDomain",
    "Field",
    "FieldElement",
    "FiniteField",
    "IntMatrix",
    "IntegerRing",
    "Polynomial",
    "PolynomialRing",
    "PrimeField",
    "UnivariatePolynomials",
    "is_irreducible",
    "least_irreducible",
    "make_finite_field",
    "make_prime_field",
    "poly_add",
    "poly_mul",
    "poly_pow",
    "polynomial_ring",
    "smith_form",
    "snf_euclidean",
    "snf_integer",
]
