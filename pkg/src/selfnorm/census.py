"""D(G) and relative counts, closed-form Frobenius counts, bounds, small-D classification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf
from .group import Group, Subgroup
from .lattice import DEFAULT_MAX_SUBGROUPS, SubgroupClassRecord, _check, conjugacy_classes_of_subgroups
from .structure import (
    center,
    derived_length,
    frobenius_decomposition,
    is_abelian,
)

__all__ = [
    "BUCKETS",
    "CensusReport",
    "ClassificationVerdict",
    "FormulaError",
    "FROB2_CASES",
    "FROB3_CASES",
    "census",
    "classify_small",
    "formula_frob1",
    "formula_frob2",
    "formula_frob3",
    "nilpotent_bounds",
    "pgroup_bounds",
    "product_lower_bound",
    "relative_census",
    "solvable_dl_bound",
]


class FormulaError(ValueError):
    """Parameters outside a counting formula's hypotheses."""


@dataclass(frozen=True)
class CensusReport:
    group_order: int
    d_value: int
    class_records: tuple[SubgroupClassRecord, ...]
    total_subgroup_classes: int
    total_subgroups: int


def census(G: Group, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> CensusReport:
    """Classes of nontrivial subgroups that are not self-normalizing.

    ``G`` itself never qualifies since ``N_G(G) = G``.
    """
    records = conjugacy_classes_of_subgroups(G, max_subgroups)
    counted = tuple(r for r in records if r.order > 1 and not r.self_normalizing)
    return CensusReport(
        group_order=G.order,
        d_value=len(counted),
        class_records=counted,
        total_subgroup_classes=len(records),
        total_subgroups=sum(r.class_size for r in records),
    )


def relative_census(G: Group, N: Subgroup) -> int:
    """G-classes of nontrivial non-self-normalizing subgroups properly inside ``N``.

    A class counts when one of its members lies properly in ``N``.
    """
    _check(G, N)
    total = 0
    for rec in census(G).class_records:
        if rec.order >= N.order:
            continue
        if any(b & ~N.bits == 0 for b in rec.conjugates):
            total += 1
    return total


# -- closed forms -----------------------------------------------------------------

FROB2_CASES = ("irreducible", "homogeneous", "split-distinct")
FROB3_CASES = ("irreducible", "homogeneous", "mixed-dims", "three-components")

_CASE_ALIASES = {
    "homogeneous-scalar": "homogeneous",
    "split-repeated": "homogeneous",
}


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise FormulaError(f"{what} is not an integer ({value})")
    return int(value)


def _check_pq(p: int, q: int) -> None:
    if not gf.is_prime(p) or not gf.is_prime(q) or p == q:
        raise FormulaError(f"p={p}, q={q} must be distinct primes")


def formula_frob1(n: int, m: int) -> int:
    """Frobenius ``C_{p^n} x| C_{q^m}``."""
    if n < 1 or m < 1:
        raise FormulaError("n and m must be positive")
    return (n + 1) * m - 1


def formula_frob2(p: int, q: int, case: str) -> int:
    """Frobenius ``(C_p x C_p) x| C_q``."""
    _check_pq(p, q)
    case = _CASE_ALIASES.get(case, case)
    split = (p - 1) % q == 0
    if case == "irreducible":
        if split:
            raise FormulaError(f"q={q} divides p-1={p - 1}; the module is not irreducible")
        return _integral(Fraction(p + 1, q) + 1, "(p+1)/q + 1")
    if not split:
        raise FormulaError(f"case {case!r} needs q | p-1")
    if case == "homogeneous":
        return p + 2
    if case == "split-distinct":
        return _integral(Fraction(p - 1, q) + 3, "(p-1)/q + 3")
    raise FormulaError(f"unknown case {case!r}")


def formula_frob3(p: int, q: int, case: str) -> int:
    """Frobenius ``(C_p)^3 x| C_q``."""
    _check_pq(p, q)
    case = _CASE_ALIASES.get(case, case)
    split = (p - 1) % q == 0
    if case == "irreducible":
        if split:
            raise FormulaError(f"q={q} divides p-1={p - 1}; the module is not irreducible")
        return _integral(Fraction(2 * (p * p + p + 1), q) + 1, "2(p^2+p+1)/q + 1")
    if not split:
        raise FormulaError(f"case {case!r} needs q | p-1")
    if case == "homogeneous":
        return 2 * p * p + 2 * p + 3
    if case == "mixed-dims":
        return _integral(Fraction(2 * (p * p - 1), q) + 2 * p + 5, "2(p^2-1)/q + 2p + 5")
    if case == "three-components":
        return _integral(Fraction(2 * (p * p + p - 2), q) + 7, "2(p^2+p-2)/q + 7")
    raise FormulaError(f"unknown case {case!r}")


# -- bounds -----------------------------------------------------------------------


def product_lower_bound(dH: int, dK: int) -> int:
    if dH < 0 or dK < 0:
        raise ValueError("census values are non-negative")
    return (dH + 2) * (dK + 2) - 2


def _floor_log2(x: Fraction) -> int:
    """Largest ``e`` with ``2^e <= x``, for ``x >= 1``."""
    e = 0
    while Fraction(2) ** (e + 1) <= x:
        e += 1
    return e


def pgroup_bounds(n: int) -> tuple[int, int]:
    """``(max class, max derived length)`` for a p-group with ``D = n > 1``."""
    if n < 2:
        raise ValueError("p-group bounds need n >= 2")
    # class <= n/2; dl <= log2(n/2) + 1, i.e. 2^dl <= n
    return n // 2, _floor_log2(Fraction(n))


def nilpotent_bounds(n: int, k: int) -> tuple[int, int]:
    """``(max class, max derived length)`` for a noncyclic nilpotent group, ``k`` primes."""
    if k < 1:
        raise ValueError("k must be positive")
    value = Fraction(n + 2 - 2**k, 2**k)
    if value < 1:
        raise ValueError(f"n={n} is too small for a noncyclic nilpotent group with {k} primes")
    return int(value), _floor_log2(value) + 1


def solvable_dl_bound(n: int) -> int:
    """``min(n - 1, floor(3 log2(n+1) + 9))`` in exact arithmetic."""
    if n < 3:
        raise ValueError("the derived-length bound needs n >= 3")
    # d <= 3 log2(n+1) + 9  <=>  2^(d-9) <= (n+1)^3
    log_bound = 9 + _floor_log2(Fraction((n + 1) ** 3))
    return min(n - 1, log_bound)


# -- classification ---------------------------------------------------------------

BUCKETS = {
    "D0-trivial": 0,
    "D0-prime": 0,
    "D1-cyclic-p2": 1,
    "D1-frobenius-pq": 1,
    "D2-(1)": 2,
    "D2-(2)": 2,
    "D2-(3)": 2,
    "D2-(4)": 2,
    "D3-(1)": 3,
    "D3-(2)": 3,
    "D3-(3)": 3,
    "D3-(4)": 3,
    "D3-(5)": 3,
    "D3-(6)": 3,
    "D3-(7)": 3,
    "D3-(8)": 3,
    "D4-A5": 4,
    "D4-SL23": 4,
    "not-covered": None,
}


@dataclass(frozen=True)
class ClassificationVerdict:
    bucket: str
    predicted_d: int | None


def _verdict(bucket: str) -> ClassificationVerdict:
    return ClassificationVerdict(bucket, BUCKETS[bucket])


def _prime_power(n: int) -> tuple[int, int] | None:
    f = gf.factorize(n)
    if len(f) != 1:
        return None
    ((p, e),) = f.items()
    return p, e


def _subgroup_is_cyclic(G: Group, H: Subgroup) -> bool:
    return bool(np.any(G.element_orders[H.indices] == H.order))


def _subgroup_exponent_is(G: Group, H: Subgroup, e: int) -> bool:
    return int(np.lcm.reduce(G.element_orders[H.indices])) == e


def _subgroup_abelian(G: Group, H: Subgroup) -> bool:
    gens = H.generators
    return all(G.mul(a, b) == G.mul(b, a) for a in gens for b in gens)


def classify_small(G: Group) -> ClassificationVerdict:
    """Match ``G`` against the case lists for small ``D``, most specific first.

    Order of tests: trivial, prime, cyclic ``p^2``, cyclic ``p^3``/``p^4``,
    Klein four, cyclic ``pq``, Frobenius shapes, A4 / A5 / SL(2,3)
    fingerprints, the ``C_p x| C_{q^2}`` central extension, then not-covered.
    """
    n = G.order
    if n == 1:
        return _verdict("D0-trivial")
    f = gf.factorize(n)
    cyclic = bool(np.any(G.element_orders == n))
    pp = _prime_power(n)
    if pp is not None and pp[1] == 1:
        return _verdict("D0-prime")
    if cyclic and pp is not None:
        return _verdict({2: "D1-cyclic-p2", 3: "D2-(1)", 4: "D3-(1)"}.get(pp[1], "not-covered"))
    if n == 4 and not cyclic:
        return _verdict("D3-(2)")
    if cyclic and len(f) == 2 and all(e == 1 for e in f.values()):
        return _verdict("D2-(2)")
    if cyclic or is_abelian(G):
        return _verdict("not-covered")

    fd = frobenius_decomposition(G)
    if fd is not None:
        bucket = _frobenius_bucket(G, fd.kernel, fd.complement)
        if bucket is not None:
            return _verdict(bucket)

    if n == 12 and fd is not None and fd.kernel_order == 4 and fd.complement_order == 3:
        return _verdict("D2-(4)")
    dl = derived_length(G)
    if n == 60 and dl is None:
        return _verdict("D4-A5")
    zorder = center(G).order
    if n == 24 and dl == 3 and zorder == 2:
        return _verdict("D4-SL23")
    if len(f) == 2:
        (a, ea), (b, eb) = sorted(f.items(), key=lambda t: t[1])
        # order p q^2 with q | p - 1, |Z| = q and a cyclic Sylow q-subgroup
        if ea == 1 and eb == 2 and (a - 1) % b == 0 and zorder == b and np.any(G.element_orders == b * b):
            return _verdict("D3-(8)")
    return _verdict("not-covered")


def _frobenius_bucket(G: Group, K: Subgroup, H: Subgroup) -> str | None:
    kf = gf.factorize(K.order)
    hp = _prime_power(H.order)
    if hp is None or not _subgroup_is_cyclic(G, H):
        return None
    q, m = hp
    if len(kf) == 1:
        ((p, e),) = kf.items()
        if _subgroup_is_cyclic(G, K):
            if m == 1:
                return {1: "D1-frobenius-pq", 2: "D2-(3)", 3: "D3-(3)"}.get(e)
            if m == 2 and e == 1:
                return "D3-(5)"
            return None
        if m != 1 or not _subgroup_abelian(G, K) or not _subgroup_exponent_is(G, K, p):
            return None
        if e == 2 and p == 2 and q == 3:
            return "D2-(4)"
        if e == 2 and q != 2 and p == 2 * q - 1:
            return "D3-(4)"
        if e == 3 and q == p * p + p + 1:
            return "D3-(7)"
        return None
    if len(kf) == 2 and all(v == 1 for v in kf.values()) and m == 1 and _subgroup_is_cyclic(G, K):
        return "D3-(6)"
    return None
