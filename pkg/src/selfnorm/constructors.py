"""Permutation representations of the group families used throughout.

All choices are deterministic: multipliers and eigenvalues are the smallest
residues of the required multiplicative order, and irreducible modules use
the companion matrix of the least irreducible factor of ``x^q - 1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from . import gf
from .group import DEFAULT_MAX_ORDER, Group, enumerate_group
from .perm import Permutation

__all__ = [
    "ConstructionError",
    "FrobeniusSpec",
    "MODULE_KINDS",
    "ModuleStructure",
    "PRESETS",
    "alt",
    "central_extension_example",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "frobenius_elem_abelian",
    "frobenius_metacyclic",
    "matrix_of_order",
    "metacyclic_multiplier",
    "preset",
    "psl2",
    "resolve_group",
    "sl2_3",
    "sym",
]


class ConstructionError(ValueError):
    """Requested parameters do not describe a constructible group."""


MODULE_KINDS = (
    "irreducible",
    "homogeneous-scalar",
    "split-distinct",
    "split-repeated",
    "mixed-dims",
    "three-components",
)


def _build(degree: int, gens: Sequence[Permutation], max_order: int) -> Group:
    return enumerate_group(degree, gens, max_order=max_order)


def _perm(images0: Sequence[int]) -> Permutation:
    return Permutation(images0)


# -- standard families ----------------------------------------------------------


def cyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """``C_n`` generated by an ``n``-cycle on ``n`` points."""
    if n < 1:
        raise ConstructionError("cyclic order must be positive")
    return _build(n, [_perm([(i + 1) % n for i in range(n)])], max_order)


def dihedral(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Dihedral group of order ``2n`` acting on an ``n``-gon.

    ``n = 1`` gives ``C_2`` on two points and ``n = 2`` gives the Klein group
    on four points, since the polygon action is not faithful there.
    """
    if n < 1:
        raise ConstructionError("dihedral parameter must be positive")
    if n == 1:
        return cyclic(2, max_order)
    if n == 2:
        return _build(4, [_perm([1, 0, 3, 2]), _perm([2, 3, 0, 1])], max_order)
    rot = _perm([(i + 1) % n for i in range(n)])
    ref = _perm([(-i) % n for i in range(n)])
    return _build(n, [rot, ref], max_order)


def dicyclic(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Dicyclic group ``<a, x | a^2n = 1, x^2 = a^n, a^x = a^-1>`` of order ``4n``.

    Acts regularly by right multiplication; the element ``a^i x^j`` is point
    ``2i + j``.
    """
    if n < 1:
        raise ConstructionError("dicyclic parameter must be positive")
    m = 2 * n

    def mul(e, f):
        (i, j), (k, l) = e, f
        i = (i + (k if j == 0 else -k)) % m
        if j and l:
            return ((i + n) % m, 0)
        return (i, j ^ l)

    elems = [(i, j) for i in range(m) for j in (0, 1)]
    pos = {e: 2 * e[0] + e[1] for e in elems}
    gens = [_perm([pos[mul(e, g)] for e in elems]) for g in ((1, 0), (0, 1))]
    return _build(2 * m, gens, max_order)


def sym(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if n < 1:
        raise ConstructionError("degree must be positive")
    if n == 1:
        return cyclic(1, max_order)
    gens = [Permutation.from_cycles(n, [range(1, n + 1)]), Permutation.from_cycles(n, [(1, 2)])]
    return _build(n, gens, max_order)


def alt(n: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Alternating group generated by the 3-cycles ``(1 2 i)``."""
    if n < 1:
        raise ConstructionError("degree must be positive")
    gens = [Permutation.from_cycles(n, [(1, 2, i)]) for i in range(3, n + 1)]
    return _build(n, gens or [Permutation.identity(n)], max_order)


def direct_product(A: Group, B: Group, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """``A x B`` acting on the disjoint union of their point sets."""
    da, db = A.degree, B.degree
    gens = []
    for g in A.generators:
        gens.append(_perm(list(g.images) + list(range(da, da + db))))
    for g in B.generators:
        gens.append(_perm(list(range(da)) + [da + x for x in g.images]))
    return _build(da + db, gens, max_order)


# -- Frobenius groups -------------------------------------------------------------


@dataclass(frozen=True)
class ModuleStructure:
    """How the complement acts on an elementary abelian kernel.

    ``data`` holds the eigenvalues of a diagonal action, or the coefficients
    ``(c0, ..., c_{k-1})`` of the companion polynomial for an irreducible one.
    """

    kind: str
    data: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in MODULE_KINDS:
            raise ConstructionError(f"unknown module kind {self.kind!r}")


@dataclass(frozen=True)
class FrobeniusSpec:
    kernel_kind: str  # "cyclic" or "elementary-abelian"
    p: int
    exponent: int  # n for C_{p^n}, k for C_p^k
    q: int
    m: int = 1
    multiplier: int | None = None
    matrix: gf.Matrix | None = field(default=None, compare=False)
    module: ModuleStructure | None = None

    @property
    def kernel_order(self) -> int:
        return self.p**self.exponent

    @property
    def complement_order(self) -> int:
        return self.q**self.m

    @property
    def order(self) -> int:
        return self.kernel_order * self.complement_order


def _check_primes(p: int, q: int) -> None:
    if not gf.is_prime(p) or not gf.is_prime(q):
        raise ConstructionError(f"p={p} and q={q} must both be prime")
    if p == q:
        raise ConstructionError("p and q must be distinct")


def metacyclic_multiplier(p: int, n: int, q: int, m: int) -> int:
    """Least ``r`` of multiplicative order ``q^m`` mod ``p^n`` acting without fixed points."""
    _check_primes(p, q)
    if n < 1 or m < 1:
        raise ConstructionError("exponents must be positive")
    mod, target = p**n, q**m
    if (p - 1) % target:
        raise ConstructionError(f"no element of order {target} acts fixed-point-freely on C_{p}^{n}")
    for r in range(2, mod):
        if gf.mult_order(r, mod) == target and gf.mult_order(r, p) == target:
            return r
    raise ConstructionError(f"no multiplier of order {target} mod {mod}")


def frobenius_metacyclic(p: int, n: int, q: int, m: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """``C_{p^n} x| C_{q^m}`` as affine maps ``x -> r^j x + t`` on ``Z/p^n``."""
    r = metacyclic_multiplier(p, n, q, m)
    mod = p**n
    trans = _perm([(x + 1) % mod for x in range(mod)])
    mult = _perm([(r * x) % mod for x in range(mod)])
    return _build(mod, [trans, mult], max_order)


def _needs_split(p: int, q: int, kind: str) -> None:
    if (p - 1) % q:
        raise ConstructionError(f"{kind} module needs q | p-1 (p={p}, q={q})")


def matrix_of_order(p: int, k: int, q: int, kind: str | None = None) -> gf.Matrix:
    """A ``k x k`` matrix over GF(p) of order ``q`` with the requested decomposition."""
    _check_primes(p, q)
    if k < 1:
        raise ConstructionError("dimension must be positive")
    if kind is None:
        if k != 1:
            raise ConstructionError("module kind is required for k > 1")
        kind = "homogeneous-scalar"
    if kind not in MODULE_KINDS:
        raise ConstructionError(f"unknown module kind {kind!r}")
    lambdas = gf.elements_of_order(q, p)
    if kind == "irreducible":
        if k == 1:
            if not lambdas:
                raise ConstructionError(f"no element of order {q} in GF({p})*")
            return gf.diag([lambdas[0]], p)
        if (p - 1) % q == 0:
            raise ConstructionError(f"x^{q}-1 splits over GF({p}); no irreducible {k}-dim module")
        try:
            coeffs = gf.irreducible_factor_of_order(p, k, q)
        except ValueError as exc:
            raise ConstructionError(str(exc)) from None
        return gf.companion(coeffs, p)
    _needs_split(p, q, kind)
    if kind in ("homogeneous-scalar", "split-repeated"):
        return gf.diag([lambdas[0]] * k, p)
    if kind == "split-distinct" or kind == "three-components":
        if kind == "three-components" and k != 3:
            raise ConstructionError("three-components needs k = 3")
        if len(lambdas) < k:
            raise ConstructionError(f"need {k} distinct eigenvalues of order {q} in GF({p})")
        return gf.diag(lambdas[:k], p)
    # mixed-dims: one line and one 2-dim homogeneous block
    if k != 3:
        raise ConstructionError("mixed-dims needs k = 3")
    if len(lambdas) < 2:
        raise ConstructionError(f"need 2 distinct eigenvalues of order {q} in GF({p})")
    return gf.diag([lambdas[0], lambdas[1], lambdas[1]], p)


def _vec_index(v: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(v))


def frobenius_elem_abelian(
    p: int, k: int, q: int, module: ModuleStructure | str, max_order: int = DEFAULT_MAX_ORDER
) -> Group:
    """``C_p^k x| C_q`` acting on the ``p^k`` vectors by ``v -> Mv + t``."""
    kind = module.kind if isinstance(module, ModuleStructure) else module
    M = matrix_of_order(p, k, q, kind)
    if gf.mat_order(M, p) != q:
        raise ConstructionError("module matrix does not have order q")
    power = M
    for _ in range(q - 1):
        if gf.has_eigenvalue_one(power, p):
            raise ConstructionError("module action has fixed points")
        power = gf.mat_mul(power, M, p)
    vecs = list(itertools.product(range(p), repeat=k))
    vecs = [tuple(reversed(v)) for v in vecs]  # index order: first coordinate fastest
    npts = len(vecs)
    gens = []
    for i in range(k):
        gens.append(
            _perm([_vec_index(tuple((c + (j == i)) % p for j, c in enumerate(v)), p) for v in vecs])
        )
    gens.append(_perm([_vec_index(gf.mat_vec(M, v, p), p) for v in vecs]))
    return _build(npts, gens, max_order)


def frobenius_from_spec(spec: FrobeniusSpec, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    if spec.kernel_kind == "cyclic":
        return frobenius_metacyclic(spec.p, spec.exponent, spec.q, spec.m, max_order)
    if spec.kernel_kind == "elementary-abelian":
        if spec.m != 1:
            raise ConstructionError("elementary abelian kernels take a complement of prime order")
        if spec.module is None:
            raise ConstructionError("module structure required")
        return frobenius_elem_abelian(spec.p, spec.exponent, spec.q, spec.module, max_order)
    raise ConstructionError(f"unknown kernel kind {spec.kernel_kind!r}")


def central_extension_example(p: int, q: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """``C_p x| C_{q^2}`` whose center is the subgroup of order ``q``.

    The generator ``h`` of ``C_{q^2}`` multiplies ``Z/p`` by an element of
    order ``q`` and also runs a ``q^2``-cycle on extra points, so ``h^q`` is
    central but not the identity. Degree ``p + q^2``.
    """
    _check_primes(p, q)
    if (p - 1) % q:
        raise ConstructionError(f"q={q} does not divide p-1={p - 1}")
    lam = gf.elements_of_order(q, p)[0]
    qq = q * q
    deg = p + qq
    trans = _perm([(x + 1) % p for x in range(p)] + list(range(p, deg)))
    h = _perm([(lam * x) % p for x in range(p)] + [p + (i + 1) % qq for i in range(qq)])
    return _build(deg, [trans, h], max_order)


# -- presets ----------------------------------------------------------------------


def psl2(q: int, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """``PSL(2, q)`` on the ``q + 1`` points of the projective line."""
    pe = gf.prime_power(q)
    if pe is None:
        raise ConstructionError(f"{q} is not a prime power")
    add, mul = gf.field_tables(q)
    neg = [next(y for y in range(q) if add[x][y] == 0) for x in range(q)]
    inv = [0] + [next(y for y in range(q) if mul[x][y] == 1) for x in range(1, q)]
    prim = next(w for w in range(1, q) if _mult_order_field(w, mul) == q - 1)
    points = [(x, 1) for x in range(q)] + [(1, 0)]
    index = {pt: i for i, pt in enumerate(points)}

    def act(mat):
        (a, b), (c, d) = mat
        out = []
        for x, y in points:
            u = add[mul[x][a]][mul[y][c]]
            v = add[mul[x][b]][mul[y][d]]
            out.append(index[(mul[u][inv[v]], 1) if v else (1, 0)])
        return _perm(out)

    gens = [
        act(((1, 1), (0, 1))),
        act(((1, 0), (1, 1))),
        act(((prim, 0), (0, inv[prim]))),
        act(((0, neg[1]), (1, 0))),
    ]
    return _build(q + 1, gens, max_order)


def _mult_order_field(w: int, mul) -> int:
    k, x = 1, w
    while x != 1:
        x = mul[x][w]
        k += 1
    return k


def sl2_3(max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """``SL(2, 3)`` on the 8 nonzero vectors of GF(3)^2."""
    vecs = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for M in (((1, 1), (0, 1)), ((1, 0), (1, 1))):
        gens.append(_perm([index[gf.mat_vec(M, v, 3)] for v in vecs]))
    return _build(8, gens, max_order)


PRESETS = ("SL2(3)", "Q8", "A4", "S4", "A5", "A6", "PSL(2,5)", "PSL(2,7)", "PSL(2,8)")


def preset(name: str, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    key = name.replace(" ", "").upper()
    if key in ("SL2(3)", "SL(2,3)"):
        return sl2_3(max_order)
    if key == "Q8":
        return dicyclic(2, max_order)
    if key == "A4":
        return alt(4, max_order)
    if key == "S4":
        return sym(4, max_order)
    if key == "A5":
        return alt(5, max_order)
    if key == "A6":
        return alt(6, max_order)
    m = re.fullmatch(r"(?:PSL|L)\(?2,(\d+)\)?", key)
    if m and int(m.group(1)) in (5, 7, 8):
        return psl2(int(m.group(1)), max_order)
    raise ConstructionError(f"unknown preset {name!r}")


_SHORT = re.compile(r"(C|D|DIC|S|A)(\d+)")


def resolve_group(name: str, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """A preset name or a short family name.

    Short names: ``C<n>`` cyclic, ``D<n>`` dihedral of order ``2n``,
    ``Dic<n>`` dicyclic of order ``4n``, ``S<n>``, ``A<n>``, ``V4``.
    Products are written with ``x``: ``C2xD4``.
    """
    text = name.replace(" ", "")
    parts = [t for t in re.split(r"[x×]", text) if t] if not text.upper().startswith("PSL") else [text]
    if len(parts) > 1:
        out = resolve_group(parts[0], max_order)
        for part in parts[1:]:
            out = direct_product(out, resolve_group(part, max_order), max_order)
        return out
    try:
        return preset(text, max_order)
    except ConstructionError:
        pass
    key = text.upper()
    if key == "V4":
        return dihedral(2, max_order)
    m = _SHORT.fullmatch(key)
    if m is None:
        raise ConstructionError(f"unknown group name {name!r}")
    fam, n = m.group(1), int(m.group(2))
    ctor = {"C": cyclic, "D": dihedral, "DIC": dicyclic, "S": sym, "A": alt}[fam]
    return ctor(n, max_order)
