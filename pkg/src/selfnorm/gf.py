"""Small finite-field helpers: GF(p) matrices and GF(p^e) element tables."""

from __future__ import annotations

import itertools
from functools import lru_cache

Matrix = tuple[tuple[int, ...], ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q = p**e``, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mult_order(a: int, n: int) -> int:
    """Multiplicative order of ``a`` modulo ``n`` (0 if not a unit)."""
    a %= n
    if n == 1:
        return 1
    from math import gcd

    if gcd(a, n) != 1:
        return 0
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
    return k


def elements_of_order(q: int, n: int) -> list[int]:
    """Residues in ``1..n-1`` of multiplicative order exactly ``q`` mod ``n``, ascending."""
    return [a for a in range(1, n) if mult_order(a, n) == q]


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    k = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(k)) for i in range(k))


def identity(k: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def mat_pow(a: Matrix, e: int, p: int) -> Matrix:
    out = identity(len(a))
    while e:
        if e & 1:
            out = mat_mul(out, a, p)
        a = mat_mul(a, a, p)
        e >>= 1
    return out


def mat_order(a: Matrix, p: int, limit: int = 10**6) -> int:
    one = identity(len(a))
    x, k = a, 1
    while x != one:
        x = mat_mul(x, a, p)
        k += 1
        if k > limit:
            raise ValueError("matrix is not invertible")
    return k


def det(a: Matrix, p: int) -> int:
    k = len(a)
    if k == 1:
        return a[0][0] % p
    total = 0
    for j in range(k):
        minor = tuple(tuple(row[c] for c in range(k) if c != j) for row in a[1:])
        total += (-1) ** j * a[0][j] * det(minor, p)
    return total % p


def has_eigenvalue_one(a: Matrix, p: int) -> bool:
    k = len(a)
    shifted = tuple(tuple((a[i][j] - (i == j)) % p for j in range(k)) for i in range(k))
    return det(shifted, p) == 0


def mat_vec(a: Matrix, v: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(sum(a[i][j] * v[j] for j in range(len(v))) % p for i in range(len(a)))


def diag(values, p: int) -> Matrix:
    vals = [v % p for v in values]
    return tuple(tuple(vals[i] if i == j else 0 for j in range(len(vals))) for i in range(len(vals)))


def companion(coeffs: tuple[int, ...], p: int) -> Matrix:
    """Companion matrix of the monic ``x^k + c[k-1] x^(k-1) + ... + c[0]``.

    ``coeffs`` is ``(c[0], ..., c[k-1])``.
    """
    k = len(coeffs)
    rows = []
    for i in range(k):
        row = [0] * k
        if i > 0:
            row[i - 1] = 1
        row[k - 1] = (-coeffs[i]) % p
        rows.append(tuple(row))
    return tuple(rows)


def poly_has_root(coeffs: tuple[int, ...], p: int) -> bool:
    k = len(coeffs)
    for x in range(p):
        val = pow(x, k, p) + sum(c * pow(x, i, p) for i, c in enumerate(coeffs))
        if val % p == 0:
            return True
    return False


def irreducible_factor_of_order(p: int, k: int, q: int) -> tuple[int, ...]:
    """Least monic irreducible degree-``k`` factor of ``x^q - 1`` over GF(p), k in {2, 3}.

    Candidates are ordered lexicographically by ``(c[k-1], ..., c[0])``.
    Returns the coefficient tuple ``(c[0], ..., c[k-1])``.
    """
    if k not in (2, 3):
        raise ValueError("only degrees 2 and 3 are supported")
    for high_first in itertools.product(range(p), repeat=k):
        coeffs = tuple(reversed(high_first))
        if coeffs[0] == 0 or poly_has_root(coeffs, p):
            continue
        if mat_pow(companion(coeffs, p), q, p) == identity(k):
            return coeffs
    raise ValueError(f"x^{q}-1 has no irreducible factor of degree {k} over GF({p})")


@lru_cache(maxsize=None)
def field_tables(q: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Addition and multiplication tables of GF(q), elements encoded as 0..q-1.

    For ``q = p^e`` an element is the base-``p`` digit vector of its code,
    read as polynomial coefficients modulo the least monic irreducible of
    degree ``e``.
    """
    pe = prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    p, e = pe
    if e == 1:
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
        return add, mul
    modulus = _least_irreducible(p, e)

    def digits(x: int) -> list[int]:
        return [(x // p**i) % p for i in range(e)]

    def code(ds: list[int]) -> int:
        return sum(d * p**i for i, d in enumerate(ds))

    def pmul(a: list[int], b: list[int]) -> list[int]:
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * e - 2, e - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, m in enumerate(modulus):
                    prod[deg - e + i] = (prod[deg - e + i] - c * m) % p
        return prod[:e]

    add = tuple(tuple(code([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)) for a in range(q))
    mul = tuple(tuple(code(pmul(digits(a), digits(b))) for b in range(q)) for a in range(q))
    return add, mul


def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
    # degree <= 3 only needs a root test
    if e > 3:
        raise ValueError("extension degree above 3 is not supported")
    for high_first in itertools.product(range(p), repeat=e):
        coeffs = tuple(reversed(high_first))
        if not poly_has_root(coeffs, p):
            return coeffs
    raise AssertionError("unreachable")
