"""Two independent Smith normal form implementations.

``snf_integer`` pivots on the entry of least absolute value and reduces by
floor division.  ``smith_form`` is the generic textbook version over any
:class:`EuclideanDomain`, clearing rows and columns with Bezout transforms;
``snf_euclidean`` runs it over the integers.  Keeping the two apart lets each
certify the other.
"""

from __future__ import annotations

from typing import Any, Sequence

from mathrepro.kernel.euclidean import ZZ, EuclideanDomain
from mathrepro.kernel.matrix import IntMatrix


def _swap_rows(a: list[list], i: int, k: int) -> None:
    a[i], a[k] = a[k], a[i]


def _swap_cols(a: list[list], j: int, k: int) -> None:
    for row in a:
        row[j], row[k] = row[k], row[j]


def snf_integer(m: IntMatrix) -> IntMatrix:
    a = m.rows()
    nr, nc = m.shape
    for t in range(min(nr, nc)):
        while True:
            cand = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not cand:
                return IntMatrix.diagonal([a[i][i] for i in range(min(nr, nc))], nr, nc)
            _, i, j = min(cand)
            _swap_rows(a, t, i)
            _swap_cols(a, t, j)
            piv = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, nc):
                q = a[t][j] // piv
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            if any(a[i][t] for i in range(t + 1, nr)) or any(a[t][j] for j in range(t + 1, nc)):
                continue
            bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
    return IntMatrix.diagonal([a[i][i] for i in range(min(nr, nc))], nr, nc)


def _bezout(x, y, R: EuclideanDomain) -> tuple[Any, Any, Any, Any]:
    """``(s, u, alpha, beta)`` such that [[s, u], [-beta, alpha]] is unimodular
    and maps (x, y) to (gcd, 0)."""
    q, r = R.divmod(y, x)
    if R.is_zero(r):
        # plain elimination leaves the pivot line untouched
        return R.one(), R.zero(), R.one(), q
    g, s, u = R.xgcd(x, y)
    return s, u, R.divmod(x, g)[0], R.divmod(y, g)[0]


def _bezout_rows(a: list[list], t: int, i: int, col: int, R: EuclideanDomain) -> None:
    s, u, alpha, beta = _bezout(a[t][col], a[i][col], R)
    row_t, row_i = a[t], a[i]
    a[t] = [R.add(R.mul(s, p), R.mul(u, q)) for p, q in zip(row_t, row_i)]
    a[i] = [R.sub(R.mul(alpha, q), R.mul(beta, p)) for p, q in zip(row_t, row_i)]


def _bezout_cols(a: list[list], t: int, j: int, row: int, R: EuclideanDomain) -> None:
    s, u, alpha, beta = _bezout(a[row][t], a[row][j], R)
    for r in a:
        p, q = r[t], r[j]
        r[t] = R.add(R.mul(s, p), R.mul(u, q))
        r[j] = R.sub(R.mul(alpha, q), R.mul(beta, p))


def smith_form(rows: Sequence[Sequence[Any]], R: EuclideanDomain) -> list[Any]:
    """Invariant factors (the diagonal, length min(rows, cols)) over ``R``."""
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    k = min(nr, nc)
    for t in range(k):
        loc = next(((i, j) for j in range(t, nc) for i in range(t, nr) if not R.is_zero(a[i][j])), None)
        if loc is None:
            break
        _swap_rows(a, t, loc[0])
        _swap_cols(a, t, loc[1])
        while True:
            for i in range(t + 1, nr):
                if not R.is_zero(a[i][t]):
                    _bezout_rows(a, t, i, t, R)
            for j in range(t + 1, nc):
                if not R.is_zero(a[t][j]):
                    _bezout_cols(a, t, j, t, R)
            if all(R.is_zero(a[i][t]) for i in range(t + 1, nr)):
                break
    diag = [a[i][i] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            g = R.xgcd(diag[i], diag[j])[0]
            if R.is_zero(g):
                continue
            diag[i], diag[j] = g, R.mul(diag[i], R.divmod(diag[j], g)[0])
    return [R.canonical(d) for d in diag]


def snf_euclidean(m: IntMatrix, domain: EuclideanDomain = ZZ) -> IntMatrix:
    return IntMatrix.diagonal(smith_form(m.rows(), domain), m.nrows, m.ncols)
