"""Series, centers, Sylow subgroups and the structural predicates built on them."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .gf import factorize
from .group import Group, Subgroup
from .lattice import _canon_cmp, _check, centralizer, conjugacy_classes_of_subgroups

__all__ = [
    "FrobeniusDecomposition",
    "StructureReport",
    "center",
    "composition_length",
    "conjugacy_classes",
    "derived_length",
    "derived_series",
    "derived_subgroup",
    "frobenius_decomposition",
    "has_normal_p_complement",
    "is_abelian",
    "is_nilpotent",
    "is_subnormal",
    "is_z_group",
    "lower_central_series",
    "nilpotency_class",
    "normal_subgroups",
    "p_part",
    "prime_divisors",
    "structure_report",
    "sylow_subgroup",
]


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _commutator_gens(G: Group, left, right) -> set[int]:
    out: set[int] = set()
    for a in left:
        for b in right:
            out.add(int(G.commutator(a, b)))
    out.discard(0)
    return out


def _commutator_subgroup(G: Group, H: Subgroup) -> Subgroup:
    """``H'`` as a subgroup of ``G``."""
    gens = H.generators
    comm = _commutator_gens(G, gens, gens)
    if not comm:
        return G.trivial
    idx, ngens = G.normal_closure(comm, within=gens)
    return G.subgroup(idx, ngens)


def is_abelian(G: Group) -> bool:
    return not _commutator_gens(G, G.generator_indices, G.generator_indices)


def derived_subgroup(G: Group) -> Subgroup:
    return _commutator_subgroup(G, G.whole)


def derived_series(G: Group) -> list[Subgroup]:
    """``G >= G' >= G'' >= ...`` until the terms stop shrinking."""
    series = [G.whole]
    while not series[-1].is_trivial():
        nxt = _commutator_subgroup(G, series[-1])
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
    return series


def derived_length(G: Group) -> int | None:
    series = derived_series(G)
    return len(series) - 1 if series[-1].is_trivial() else None


def lower_central_series(G: Group) -> list[Subgroup]:
    """``gamma_1 = G``, ``gamma_{k+1} = [gamma_k, G]``, until the terms stop shrinking."""
    series = [G.whole]
    while not series[-1].is_trivial():
        comm = _commutator_gens(G, series[-1].generators, G.generator_indices)
        if not comm:
            nxt = G.trivial
        else:
            idx, gens = G.normal_closure(comm)
            nxt = G.subgroup(idx, gens)
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
    return series


def nilpotency_class(G: Group) -> int | None:
    series = lower_central_series(G)
    return len(series) - 1 if series[-1].is_trivial() else None


def is_nilpotent(G: Group) -> bool:
    return nilpotency_class(G) is not None


def center(G: Group) -> Subgroup:
    return centralizer(G, G.whole)


def conjugacy_classes(G: Group) -> list[np.ndarray]:
    """Conjugacy classes of elements, each sorted, ordered by least element."""
    n = G.order
    maps = G.generator_conj_maps
    rows = np.concatenate([G.all_indices] * len(maps))
    cols = np.concatenate(maps)
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    k, comp = connected_components(graph, directed=True, connection="weak")
    order = np.argsort(comp, kind="stable")
    bounds = np.searchsorted(comp[order], np.arange(k + 1))
    return [order[bounds[i]:bounds[i + 1]] for i in range(k)]


def normal_subgroups(G: Group) -> list[Subgroup]:
    """All normal subgroups in canonical order, read off the subgroup lattice."""
    return [rec.representative for rec in conjugacy_classes_of_subgroups(G) if rec.is_normal]


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    """The canonically least Sylow ``p``-subgroup (trivial if ``p`` does not divide ``|G|``)."""
    target = p_part(G.order, p)
    if target == 1:
        return G.trivial
    for rec in conjugacy_classes_of_subgroups(G):
        if rec.order == target:
            return rec.representative
    raise AssertionError(f"no subgroup of order {target}; Sylow's theorem violated")


def has_normal_p_complement(G: Group, p: int) -> bool:
    target = G.order // p_part(G.order, p)
    return any(rec.is_normal and rec.order == target for rec in conjugacy_classes_of_subgroups(G))


def is_z_group(G: Group) -> bool:
    """Every Sylow subgroup cyclic, i.e. each ``p``-part is the order of some element."""
    orders = G.element_orders
    for p in prime_divisors(G.order):
        pp = p_part(G.order, p)
        if not np.any(orders % pp == 0):
            return False
    return True


def is_subnormal(G: Group, H: Subgroup) -> bool:
    """Descend through iterated normal closures ``H^X`` starting from ``X = G``."""
    _check(G, H)
    X = G.whole
    hgens = H.generators
    while True:
        if X.order == H.order:
            return True
        if not hgens:
            return True
        idx, _ = G.normal_closure(hgens, within=X.generators)
        if idx.size == X.order:
            return False
        X = G.subgroup(idx)


def _normal_in(G: Group, K: Subgroup, X: Subgroup) -> bool:
    kidx = K.indices
    for x in X.generators:
        conj = G.mul(G.mul(G.inv[x], kidx), x)
        if not K.mask[conj].all():
            return False
    return True


def composition_length(G: Group) -> int:
    """Length of a composition series.

    Refines ``G`` downwards, each time choosing a maximal normal subgroup of
    the current term: the largest proper normal subgroup, least bitset on ties.
    """
    subs = []
    for rec in conjugacy_classes_of_subgroups(G):
        for bits in rec.conjugates:
            subs.append((rec.order, bits))
    # largest first, then canonical order
    subs.sort(key=lambda t: (-t[0], functools.cmp_to_key(_canon_cmp)(t[1])))
    X = G.whole
    length = 0
    while not X.is_trivial():
        for order, bits in subs:
            if order >= X.order or X.order % order or bits & ~X.bits:
                continue
            K = Subgroup(G, bits)
            if _normal_in(G, K, X):
                X = K
                length += 1
                break
        else:
            raise AssertionError("no proper normal subgroup found")
    return length


@dataclass(frozen=True)
class FrobeniusDecomposition:
    kernel: Subgroup
    complement: Subgroup

    @property
    def kernel_order(self) -> int:
        return self.kernel.order

    @property
    def complement_order(self) -> int:
        return self.complement.order


def frobenius_decomposition(G: Group) -> FrobeniusDecomposition | None:
    """Kernel and complement if ``G`` is a Frobenius group, else None.

    A class of proper nontrivial subgroups ``H`` is a complement class when
    ``H`` is self-normalizing and meets each of its other conjugates
    trivially; classes are scanned from the largest order down.
    """
    for rec in reversed(conjugacy_classes_of_subgroups(G)):
        if rec.order in (1, G.order) or not rec.self_normalizing:
            continue
        H = rec.representative
        if any((H.bits & b) != 1 for b in rec.conjugates if b != H.bits):
            continue
        union = 0
        for b in rec.conjugates:
            union |= b
        kernel_bits = (((1 << G.order) - 1) & ~union) | 1
        idx = np.array([i for i in range(G.order) if kernel_bits >> i & 1], dtype=np.intp)
        closed = G.closure(idx.tolist())
        if closed.size != idx.size or not np.array_equal(closed, idx):
            raise AssertionError("Frobenius kernel is not a subgroup")
        kernel = G.subgroup(idx)
        assert kernel.order * H.order == G.order
        return FrobeniusDecomposition(kernel, H)
    return None


@dataclass(frozen=True)
class StructureReport:
    order: int
    abelian: bool
    nilpotent: bool
    nilpotency_class: int | None
    solvable: bool
    derived_length: int | None
    center_order: int
    derived_series: tuple[int, ...]
    lower_central_series: tuple[int, ...]
    composition_length: int
    prime_divisors: tuple[int, ...]
    is_z_group: bool


def structure_report(G: Group) -> StructureReport:
    ds = derived_series(G)
    lcs = lower_central_series(G)
    solvable = ds[-1].is_trivial()
    nilpotent = lcs[-1].is_trivial()
    return StructureReport(
        order=G.order,
        abelian=is_abelian(G),
        nilpotent=nilpotent,
        nilpotency_class=len(lcs) - 1 if nilpotent else None,
        solvable=solvable,
        derived_length=len(ds) - 1 if solvable else None,
        center_order=center(G).order,
        derived_series=tuple(s.order for s in ds),
        lower_central_series=tuple(s.order for s in lcs),
        composition_length=composition_length(G),
        prime_divisors=tuple(prime_divisors(G.order)),
        is_z_group=is_z_group(G),
    )
