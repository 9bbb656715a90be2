"""Subgroup lattice: all subgroups up to conjugacy, normalizers, centralizers.

The lattice is built one conjugacy class at a time. Every subgroup ``H > 1``
is ``<M, x>`` for a maximal subgroup ``M`` of ``H``, and ``M`` is conjugate
to an already-known class representative, so it is enough to extend each
representative ``M`` by one element per ``N_G(M)``-orbit of right cosets
``Mx``. When ``G`` is solvable every ``H`` has a normal maximal subgroup of
prime index, which restricts ``x`` to cosets of prime order in ``N_G(M)/M``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .group import Group, NotASubgroup, Subgroup, _bits_from_mask

__all__ = [
    "DEFAULT_MAX_SUBGROUPS",
    "LatticeTooLarge",
    "SubgroupClassRecord",
    "all_subgroups",
    "centralizer",
    "conjugacy_classes_of_subgroups",
    "cyclic_subgroups",
    "is_self_normalizing",
    "normalizer",
    "subgroup_less",
]

DEFAULT_MAX_SUBGROUPS = 10**5


class LatticeTooLarge(RuntimeError):
    pass


def _canon_cmp(a: int, b: int) -> int:
    # sorted member lists compared lexicographically: the lowest element on
    # which two bitsets differ decides
    if a == b:
        return 0
    d = a ^ b
    return -1 if a & (d & -d) else 1


def subgroup_less(a: Subgroup, b: Subgroup) -> bool:
    """Canonical order: by order, then lexicographically by sorted member indices."""
    if a.order != b.order:
        return a.order < b.order
    return _canon_cmp(a.bits, b.bits) < 0


@dataclass(frozen=True, eq=False)
class SubgroupClassRecord:
    representative: Subgroup
    class_size: int
    normalizer_order: int
    self_normalizing: bool
    is_normal: bool
    conjugates: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return self.representative.order

    def members(self) -> list[Subgroup]:
        G = self.representative.parent
        return [Subgroup(G, b) for b in self.conjugates]


def _check(G: Group, H: Subgroup) -> None:
    if H.parent is not G and H.parent != G:
        raise NotASubgroup("subgroup belongs to a different group")


def normalizer_mask(G: Group, H: Subgroup) -> np.ndarray:
    """Boolean mask of ``{g : H^g = H}``; only H's generators need testing."""
    keep = np.ones(G.order, dtype=bool)
    allx = G.all_indices
    for h in H.generators:
        conj = G.mul(G.mul(G.inv, h), allx)
        keep &= H.mask[conj]
    return keep


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    _check(G, H)
    if H.is_trivial() or H.is_whole():
        return G.whole
    return G.subgroup(np.flatnonzero(normalizer_mask(G, H)))


def centralizer(G: Group, H: Subgroup) -> Subgroup:
    _check(G, H)
    keep = np.ones(G.order, dtype=bool)
    allx = G.all_indices
    for h in H.generators:
        keep &= G.mul(allx, h) == G.mul(h, allx)
    return G.subgroup(np.flatnonzero(keep))


def is_self_normalizing(G: Group, H: Subgroup) -> bool:
    _check(G, H)
    if H.is_whole():
        return True
    if H.is_trivial():
        return G.order == 1
    return int(normalizer_mask(G, H).sum()) == H.order


def cyclic_subgroups(G: Group) -> list[Subgroup]:
    """All ``<g>``, deduplicated, in canonical order."""
    done = np.zeros(G.order, dtype=bool)
    orders = G.element_orders
    found: dict[int, Subgroup] = {}
    for x in np.argsort(-orders, kind="stable"):
        if done[x]:
            continue
        pw = G.powers(int(x))
        # every generator of <x> yields the same subgroup
        done[pw[orders[pw] == pw.size]] = True
        sub = G.subgroup(pw, (int(x),) if x else ())
        found.setdefault(sub.bits, sub)
    return sorted(found.values(), key=_sort_key)


def _sort_key(H: Subgroup):
    return (H.order, functools.cmp_to_key(_canon_cmp)(H.bits))


@dataclass
class _ClassData:
    indices: np.ndarray
    gens: tuple[int, ...]
    conjugates: list[int]


class _Lattice:
    def __init__(self, G: Group, max_subgroups: int):
        self.G = G
        self.max_subgroups = max_subgroups
        self.seen: dict[int, int] = {}
        self.classes: list[_ClassData] = []
        self.total = 0
        self._build()

    def _add_class(self, idx: np.ndarray, gens: tuple[int, ...]) -> None:
        G = self.G
        cid = len(self.classes)
        mask = np.zeros(G.order, dtype=bool)
        mask[idx] = True
        bits = _bits_from_mask(mask)
        orbit = [bits]
        self.seen[bits] = cid
        stack = [idx]
        while stack:
            cur = stack.pop()
            for cm in G.generator_conj_maps:
                img = cm[cur]
                mask[:] = False
                mask[img] = True
                b = _bits_from_mask(mask)
                if b not in self.seen:
                    self.seen[b] = cid
                    orbit.append(b)
                    stack.append(img)
        self.total += len(orbit)
        if self.total > self.max_subgroups:
            raise LatticeTooLarge(f"more than {self.max_subgroups} subgroups")
        self.classes.append(_ClassData(np.sort(idx), gens, orbit))

    def _candidates(self, M: _ClassData) -> list[int]:
        G = self.G
        n = G.order
        msub = G.subgroup(M.indices, M.gens)
        if M.indices.size == 1:
            nmask = np.ones(n, dtype=bool)
        else:
            nmask = normalizer_mask(G, msub)
        nsize = int(nmask.sum())
        solvable = G.is_solvable
        if solvable and nsize == M.indices.size:
            return []
        if nsize == n:
            ngens = list(G.generator_indices)
            maps = list(G.generator_conj_maps)
        elif nsize == M.indices.size:
            ngens = list(M.gens)
            maps = [G.conj_map(g) for g in ngens]
        else:
            ngens = list(G.subgroup(np.flatnonzero(nmask)).generators)
            maps = [G.conj_map(g) for g in ngens]
        domain = np.flatnonzero(nmask) if solvable else G.all_indices
        # right cosets M*x inside the domain are the orbits of left
        # multiplication by the generators of M
        label = np.full(n, -1, dtype=np.intp)
        pos = np.full(n, -1, dtype=np.intp)
        pos[domain] = np.arange(domain.size)
        d = domain.size
        if M.gens:
            rows = np.concatenate([np.arange(d)] * len(M.gens))
            cols = np.concatenate([pos[G.mul(m, domain)] for m in M.gens])
            graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(d, d))
            _, comp = connected_components(graph, directed=True, connection="weak")
        else:
            comp = np.arange(d)
        # components are numbered in order of their least domain element
        label[domain] = comp
        k0 = int(comp.max()) + 1
        reps_arr = np.full(k0, n, dtype=np.intp)
        np.minimum.at(reps_arr, comp, domain)
        k = reps_arr.size
        if k <= 1:
            return []
        keep = np.ones(k, dtype=bool)
        keep[label[0]] = False
        if solvable:
            # coset Mx has prime order in N(M)/M iff x^p is in M for a prime p
            prime_order = np.zeros(k, dtype=bool)
            for p in _prime_factors(k):
                y = reps_arr.copy()
                for _ in range(p - 1):
                    y = G.mul(y, reps_arr)
                prime_order |= msub.mask[y]
            keep &= prime_order
        if not keep.any():
            return []
        rows = np.concatenate([np.arange(k)] * len(maps)) if maps else np.arange(0)
        cols = np.concatenate([label[cm[reps_arr]] for cm in maps]) if maps else np.arange(0)
        graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(k, k))
        _, comp = connected_components(graph, directed=True, connection="weak")
        out: dict[int, int] = {}
        for i in np.flatnonzero(keep):
            c = int(comp[i])
            x = int(reps_arr[i])
            if c not in out or x < out[c]:
                out[c] = x
        return sorted(out.values())

    def _build(self) -> None:
        G = self.G
        solvable = G.is_solvable
        self._add_class(np.zeros(1, dtype=np.intp), ())
        i = 0
        while i < len(self.classes):
            M = self.classes[i]
            i += 1
            if M.indices.size == G.order:
                continue
            for x in self._candidates(M):
                if M.indices.size == 1:
                    idx = np.sort(G.powers(x))
                    gens = (x,)
                elif solvable:
                    # x normalizes M here, so <M, x> = M<x>
                    idx = np.unique(G.mul_outer(M.indices, G.powers(x)))
                    gens = tuple(sorted(set(M.gens) | {x}))
                elif G.element_orders[x] > M.indices.size:
                    idx = G.extend(np.sort(G.powers(x)), [x], M.gens)
                    gens = tuple(sorted(set(M.gens) | {x}))
                else:
                    idx = G.extend(M.indices, M.gens, [x])
                    gens = tuple(sorted(set(M.gens) | {x}))
                mask = np.zeros(G.order, dtype=bool)
                mask[idx] = True
                if _bits_from_mask(mask) not in self.seen:
                    self._add_class(idx, gens)

    def records(self) -> list[SubgroupClassRecord]:
        G = self.G
        out = []
        for c in self.classes:
            rep_bits = functools.reduce(lambda a, b: a if _canon_cmp(a, b) <= 0 else b, c.conjugates)
            if rep_bits == c.conjugates[0]:
                rep = G.subgroup(c.indices, c.gens)
            else:
                rep = Subgroup(G, rep_bits)
            size = len(c.conjugates)
            norm = G.order // size
            conj = tuple(sorted(c.conjugates, key=functools.cmp_to_key(_canon_cmp)))
            out.append(
                SubgroupClassRecord(
                    representative=rep,
                    class_size=size,
                    normalizer_order=norm,
                    self_normalizing=norm == rep.order,
                    is_normal=size == 1,
                    conjugates=conj,
                )
            )
        out.sort(key=lambda r: _sort_key(r.representative))
        return out


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def conjugacy_classes_of_subgroups(G: Group, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> list[SubgroupClassRecord]:
    """Conjugacy classes of subgroups, ordered by order then canonical representative.

    Cached on the group; the cap only matters the first time.
    """
    cached = G.__dict__.get("_subgroup_classes")
    if cached is None:
        cached = _Lattice(G, max_subgroups).records()
        G.__dict__["_subgroup_classes"] = cached
    return cached


def all_subgroups(G: Group, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> list[Subgroup]:
    out = []
    for rec in conjugacy_classes_of_subgroups(G, max_subgroups):
        out.extend(rec.members())
    return out


def class_of(G: Group, H: Subgroup) -> SubgroupClassRecord:
    """The class record containing ``H``."""
    _check(G, H)
    index = G.__dict__.get("_subgroup_class_index")
    if index is None:
        index = {b: rec for rec in conjugacy_classes_of_subgroups(G) for b in rec.conjugates}
        G.__dict__["_subgroup_class_index"] = index
    try:
        return index[H.bits]
    except KeyError:
        raise NotASubgroup("not a subgroup of G") from None
