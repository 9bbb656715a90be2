"""Finite permutation groups stored as a fully enumerated element table.

Elements are sorted lexicographically by their image sequences, so element
indices are stable and double as bit positions in subgroup bitsets. The
identity is always index 0.

Products of elements are computed on indices. A permutation in ``G`` is fixed
by its images of a base (a point sequence whose pointwise stabilizer is
trivial), so every product only touches ``len(base)`` points and is looked up
through a hashed code of those images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, PermutationError

__all__ = [
    "DEFAULT_MAX_ORDER",
    "Group",
    "GroupTooLarge",
    "NotASubgroup",
    "NotNormal",
    "QuotientPresentation",
    "Subgroup",
    "element_order",
    "enumerate_group",
    "quotient",
]

DEFAULT_MAX_ORDER = 10**6

# Pairwise products evaluated per numpy call in the coset-extension loop.
_CHUNK = 1 << 18


class GroupTooLarge(RuntimeError):
    pass


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


def _code_multipliers(n: int, seed: int) -> np.ndarray:
    # splitmix64; odd multipliers for a wrapping linear hash of base images
    out = []
    x = (0x9E3779B97F4A7C15 * (seed + 1)) & 0xFFFFFFFFFFFFFFFF
    for _ in range(n):
        x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        out.append((z ^ (z >> 31)) | 1)
    return np.array(out, dtype=np.uint64)


class Group:
    """A permutation group with its complete, canonically sorted element table.

    Build one with :func:`enumerate_group`; the constructor trusts its input.
    """

    def __init__(self, table: np.ndarray, generators: Sequence[Permutation]):
        table = np.ascontiguousarray(table)
        table.setflags(write=False)
        self._table = table
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self.degree: int = table.shape[1]
        self.order: int = table.shape[0]
        self._setup_lookup()

    # -- construction helpers -------------------------------------------------

    def _setup_lookup(self) -> None:
        table = self._table
        ident = np.arange(self.degree)
        stab = np.arange(self.order)
        base: list[int] = []
        while stab.size > 1:
            moved = (table[stab] != ident).any(axis=0)
            b = int(np.argmax(moved))
            base.append(b)
            stab = stab[table[stab, b] == b]
        if not base:
            base = [0]
        self._base = np.array(base, dtype=np.intp)
        self._tb = np.ascontiguousarray(table[:, self._base])
        for seed in range(8):
            mult = _code_multipliers(len(base), seed)
            codes = self._codes(self._tb, mult)
            order = np.argsort(codes, kind="stable")
            sorted_codes = codes[order]
            if self.order < 2 or np.all(sorted_codes[1:] != sorted_codes[:-1]):
                break
        else:  # pragma: no cover - 64-bit collisions across 8 seeds
            raise RuntimeError("could not build an injective element code")
        self._mult = mult
        self._code_order = order
        self._sorted_codes = sorted_codes

    @staticmethod
    def _codes(rows: np.ndarray, mult: np.ndarray) -> np.ndarray:
        return (rows.astype(np.uint64) * mult).sum(axis=-1, dtype=np.uint64)

    def _lookup(self, base_rows: np.ndarray) -> np.ndarray:
        """Indices of the elements whose base images are ``base_rows``.

        Only valid for rows that are known to come from group elements.
        """
        codes = self._codes(base_rows, self._mult)
        return self._code_order[np.searchsorted(self._sorted_codes, codes)]

    # -- element access -------------------------------------------------------

    def element(self, i: int) -> Permutation:
        return Permutation(self._table[i].tolist())

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(row) for row in self._table.tolist())

    def index(self, g: Permutation) -> int:
        """Position of ``g`` in the element table; raises if ``g`` is not in the group."""
        if g.degree != self.degree:
            raise PermutationError(f"degree mismatch: {g.degree} vs {self.degree}")
        row = np.array(g.images)
        i = int(self._lookup(row[self._base]))
        if not np.array_equal(self._table[i], row):
            raise NotASubgroup(f"{g} is not an element of the group")
        return i

    def __contains__(self, g: object) -> bool:
        if not isinstance(g, Permutation) or g.degree != self.degree:
            return False
        try:
            self.index(g)
        except NotASubgroup:
            return False
        return True

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Group)
            and self.degree == other.degree
            and self.order == other.order
            and np.array_equal(self._table, other._table)
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.order, self._table.tobytes()))

    def __repr__(self) -> str:
        return f"<Group degree={self.degree} order={self.order}>"

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(sorted({self.index(g) for g in self.generators} - {0}))

    # -- arithmetic on indices ------------------------------------------------

    def mul(self, a, b) -> np.ndarray:
        """Index of ``a*b`` (apply ``a`` then ``b``), broadcasting over arrays."""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp))
        rows = self._table[b[..., None], self._tb[a]]
        return self._lookup(rows)

    def mul_outer(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix of products ``a[i]*b[j]``."""
        return self.mul(np.asarray(a)[:, None], np.asarray(b)[None, :])

    @cached_property
    def inv(self) -> np.ndarray:
        """``inv[i]`` is the index of the inverse of element ``i``."""
        rows = np.empty((self.order, len(self._base)), dtype=self._table.dtype)
        for j, b in enumerate(self._base):
            rows[:, j] = np.argmax(self._table == b, axis=1)
        out = self._lookup(rows)
        out.setflags(write=False)
        return out

    @cached_property
    def all_indices(self) -> np.ndarray:
        return np.arange(self.order)

    def conj_map(self, s: int) -> np.ndarray:
        """Array mapping each element ``x`` to ``s^-1 x s``."""
        return self.mul(self.mul(self.inv[s], self.all_indices), s)

    @cached_property
    def generator_conj_maps(self) -> tuple[np.ndarray, ...]:
        return tuple(self.conj_map(s) for s in self.generator_indices)

    def commutator(self, a, b) -> np.ndarray:
        """``[a, b] = a^-1 b^-1 a b``."""
        return self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b))

    def powers(self, x: int) -> np.ndarray:
        """Indices of ``x^0, x^1, ..., x^(k-1)`` where ``k`` is the order of ``x``."""
        row = self._table[x]
        cycles = []
        for b in self._base:
            cyc = [int(b)]
            j = int(row[b])
            while j != b:
                cyc.append(j)
                j = int(row[j])
            cycles.append(np.array(cyc))
        k = math.lcm(*(len(c) for c in cycles))
        ks = np.arange(k)
        rows = np.stack([c[ks % len(c)] for c in cycles], axis=1)
        return self._lookup(rows)

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    # -- subgroup generation --------------------------------------------------

    def extend(self, sub: np.ndarray, sub_gens: Sequence[int], extra: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by subgroup ``sub`` and ``extra``.

        Dimino-style: the result is a union of right cosets ``sub*r``; new
        coset representatives come from multiplying known ones by generators.
        """
        sub = np.asarray(sub, dtype=np.intp)
        mask = np.zeros(self.order, dtype=bool)
        mask[sub] = True
        extra = [int(x) for x in extra]
        cand = np.array([x for x in extra if not mask[x]], dtype=np.intp)
        if cand.size == 0:
            return np.sort(sub)
        gens = np.array(sorted(set(int(g) for g in sub_gens) | set(extra)), dtype=np.intp)
        parts = [sub]
        step = max(1, _CHUNK // max(1, sub.size))
        while cand.size:
            reps = []
            cand = np.unique(cand)
            for lo in range(0, cand.size, step):
                chunk = cand[lo:lo + step]
                chunk = chunk[~mask[chunk]]
                if chunk.size == 0:
                    continue
                block = self.mul_outer(sub, chunk)
                _, first = np.unique(block.min(axis=0), return_index=True)
                block = block[:, first]
                mask[block.ravel()] = True
                parts.append(block.ravel())
                reps.append(chunk[first])
            if not reps:
                break
            reps = np.concatenate(reps)
            cand = self.mul_outer(reps, gens).ravel()
            cand = cand[~mask[cand]]
        return np.sort(np.concatenate(parts))

    def closure(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens``."""
        gens = sorted({int(g) for g in gens} - {0}, key=lambda g: (-self.element_order(g), g))
        if not gens:
            return np.zeros(1, dtype=np.intp)
        start = np.sort(self.powers(gens[0]))
        return self.extend(start, gens[:1], gens[1:])

    def normal_closure(self, gens: Iterable[int], within: Sequence[int] | None = None) -> tuple[np.ndarray, tuple[int, ...]]:
        """Normal closure of ``<gens>`` under conjugation by ``within`` (default: all of G).

        Returns sorted indices and a generating set.
        """
        conj_by = self.generator_indices if within is None else tuple(int(k) for k in within)
        hgens = sorted({int(g) for g in gens} - {0})
        cur = self.closure(hgens)
        mask = np.zeros(self.order, dtype=bool)
        mask[cur] = True
        todo = list(hgens)
        while todo:
            hs = np.array(todo, dtype=np.intp)
            new: list[int] = []
            for k in conj_by:
                for y in self.mul(self.mul(self.inv[k], hs), k).tolist():
                    if not mask[y]:
                        new.append(y)
                        cur = self.extend(cur, hgens, [y])
                        hgens.append(y)
                        mask[cur] = True
            todo = new
        return cur, tuple(hgens)

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Order of every element, computed from base-point cycle lengths."""
        out = np.ones(self.order, dtype=np.int64)
        for b in self._base:
            pos = self._table[:, b].astype(np.intp)
            length = np.ones(self.order, dtype=np.int64)
            active = np.flatnonzero(pos != b)
            while active.size:
                length[active] += 1
                pos[active] = self._table[active, pos[active]]
                active = active[pos[active] != b]
            out = np.lcm(out, length)
        out.setflags(write=False)
        return out

    @cached_property
    def is_solvable(self) -> bool:
        cur_gens: Sequence[int] = self.generator_indices
        size = self.order
        while size > 1:
            comm = {
                int(c)
                for i, a in enumerate(cur_gens)
                for b in cur_gens[i + 1:]
                for c in np.atleast_1d(self.commutator(a, b))
            } - {0}
            if not comm:
                return True
            idx, cur_gens = self.normal_closure(comm, within=cur_gens)
            if idx.size == size:
                return False
            size = idx.size
        return True

    # -- subgroup objects -----------------------------------------------------

    def subgroup(self, indices: Iterable[int], gens: Sequence[int] | None = None) -> Subgroup:
        """Wrap indices that are already known to form a subgroup."""
        idx = np.asarray(indices if isinstance(indices, np.ndarray) else list(indices), dtype=np.intp)
        return Subgroup._from_indices(self, idx, gens)

    def subgroup_generated(self, gens: Iterable[Permutation | int]) -> Subgroup:
        idx = [g if isinstance(g, (int, np.integer)) else self.index(g) for g in gens]
        idx = [int(i) for i in idx]
        return Subgroup._from_indices(self, self.closure(idx), tuple(sorted(set(idx) - {0})))

    @cached_property
    def whole(self) -> Subgroup:
        return Subgroup._from_indices(self, self.all_indices, self.generator_indices)

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup._from_indices(self, np.zeros(1, dtype=np.intp), ())

    def as_subgroup_of(self) -> Subgroup:
        return self.whole


def _bits_from_mask(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _mask_from_bits(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


class Subgroup:
    """A subgroup of ``parent`` given as a bitset over the parent's element indices."""

    __slots__ = ("parent", "bits", "_indices", "_gens", "__dict__")

    def __init__(self, parent: Group, bits: int, gens: Sequence[int] | None = None):
        self.parent = parent
        self.bits = bits
        self._indices: np.ndarray | None = None
        self._gens = None if gens is None else tuple(int(g) for g in gens)

    @classmethod
    def _from_indices(cls, parent: Group, idx: np.ndarray, gens=None) -> Subgroup:
        mask = np.zeros(parent.order, dtype=bool)
        mask[idx] = True
        sub = cls(parent, _bits_from_mask(mask), gens)
        sub._indices = np.flatnonzero(mask)
        sub.__dict__["mask"] = mask
        return sub

    @cached_property
    def mask(self) -> np.ndarray:
        m = _mask_from_bits(self.bits, self.parent.order)
        m.setflags(write=False)
        return m

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            self._indices = np.flatnonzero(self.mask)
        return self._indices

    @cached_property
    def order(self) -> int:
        return self.bits.bit_count()

    @property
    def members(self) -> int:
        return self.bits

    @property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, as parent element indices."""
        if self._gens is None:
            self._gens = _greedy_generators(self)
        return self._gens

    def elements(self) -> list[Permutation]:
        return [self.parent.element(int(i)) for i in self.indices]

    def __contains__(self, g) -> bool:
        if isinstance(g, Permutation):
            if g not in self.parent:
                return False
            g = self.parent.index(g)
        return bool((self.bits >> int(g)) & 1)

    def issubset(self, other: Subgroup) -> bool:
        return self.bits & ~other.bits == 0

    def __le__(self, other: Subgroup) -> bool:
        return self.issubset(other)

    def __lt__(self, other: Subgroup) -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.bits == self.bits

    def __hash__(self) -> int:
        return hash((id(self.parent), self.bits))

    def __len__(self) -> int:
        return self.order

    def is_trivial(self) -> bool:
        return self.bits == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def join(self, other: Subgroup) -> Subgroup:
        G = self.parent
        a, b = (self, other) if self.order >= other.order else (other, self)
        idx = G.extend(a.indices, a.generators, b.generators)
        return Subgroup._from_indices(G, idx, tuple(sorted(set(a.generators) | set(b.generators))))

    def __and__(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, self.bits & other.bits)

    def conjugate(self, g: int) -> Subgroup:
        """``g^-1 H g``."""
        G = self.parent
        idx = G.mul(G.mul(G.inv[g], self.indices), g)
        gens = tuple(int(x) for x in G.mul(G.mul(G.inv[g], list(self.generators)), g)) if self.generators else ()
        return Subgroup._from_indices(G, idx, gens)

    def as_group(self) -> Group:
        """This subgroup as a standalone permutation group on the parent's points."""
        G = self.parent
        gens = [G.element(g) for g in self.generators]
        return Group(G._table[self.indices], gens or [Permutation.identity(G.degree)])

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"


def _greedy_generators(sub: Subgroup) -> tuple[int, ...]:
    G = sub.parent
    target = sub.mask
    have = np.zeros(G.order, dtype=bool)
    have[0] = True
    cur = np.zeros(1, dtype=np.intp)
    gens: list[int] = []
    # prefer high-order elements, so few generators are needed
    todo = sub.indices[1:]
    todo = todo[np.argsort(-G.element_orders[todo], kind="stable")]
    for x in todo:
        if have[x]:
            continue
        x = int(x)
        cur = G.extend(cur, gens, [x]) if gens else np.sort(G.powers(x))
        gens.append(x)
        have[:] = False
        have[cur] = True
        if cur.size == sub.order:
            break
    assert np.array_equal(have, target)
    return tuple(gens)


def enumerate_group(degree: int, generators: Iterable[Permutation], max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Enumerate ``<generators>`` by breadth-first closure."""
    gens = list(generators)
    for g in gens:
        if g.degree != degree:
            raise PermutationError(f"generator {g} has degree {g.degree}, expected {degree}")
    dtype = np.uint16 if degree < 1 << 16 else np.int32
    ident = np.arange(degree, dtype=dtype)
    gen_arr = [np.array(g.images, dtype=dtype) for g in gens if not g.is_identity()]
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = ident[None, :]
    while frontier.shape[0]:
        new = []
        for s in gen_arr:
            for r in s[frontier]:
                key = r.tobytes()
                if key not in seen:
                    seen.add(key)
                    new.append(r)
        if len(seen) > max_order:
            raise GroupTooLarge(f"group order exceeds cap {max_order}")
        rows.extend(new)
        frontier = np.array(new, dtype=dtype).reshape(-1, degree)
    table = np.array(rows, dtype=dtype)
    table = table[np.lexsort(table.T[::-1])]
    return Group(table, gens if gens else [Permutation.identity(degree)])


def element_order(G: Group, g: Permutation) -> int:
    return G.element_order(G.index(g))


@dataclass(frozen=True, eq=False)
class QuotientPresentation:
    parent: Group
    kernel: Subgroup
    quotient: Group
    projection: np.ndarray  # parent element index -> quotient element index
    coset_reps: np.ndarray  # least element of each right coset, in coset order

    def project(self, g: int | Permutation) -> int:
        if isinstance(g, Permutation):
            g = self.parent.index(g)
        return int(self.projection[g])

    def image(self, H: Subgroup) -> Subgroup:
        """Image of a subgroup of the parent in the quotient."""
        Q = self.quotient
        return Q.subgroup(np.unique(self.projection[H.indices]))

    def preimage(self, K: Subgroup) -> Subgroup:
        G = self.parent
        return G.subgroup(np.flatnonzero(K.mask[self.projection]))


def _check_member(G: Group, H: Subgroup) -> None:
    if H.parent is not G and H.parent != G:
        raise NotASubgroup("subgroup belongs to a different group")


def is_normal(G: Group, N: Subgroup) -> bool:
    _check_member(G, N)
    if N.is_trivial() or N.is_whole():
        return True
    idx = N.indices
    return all(N.mask[c[idx]].all() for c in G.generator_conj_maps)


def quotient(G: Group, N: Subgroup) -> QuotientPresentation:
    """``G/N`` acting faithfully on right cosets ``Nx``, ordered by least element."""
    _check_member(G, N)
    closed = G.closure(N.generators)
    if closed.size != N.order:
        raise NotASubgroup("kernel is not closed under multiplication")
    if not is_normal(G, N):
        raise NotNormal("kernel is not normal")
    label = np.full(G.order, -1, dtype=np.intp)
    reps = []
    nidx = N.indices
    for x in range(G.order):
        if label[x] >= 0:
            continue
        label[G.mul(nidx, x)] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.intp)
    k = reps.size
    gens = []
    for s in G.generator_indices:
        gens.append(Permutation(label[G.mul(reps, s)].tolist()))
    Q = enumerate_group(k, gens, max_order=max(k, 1))
    # images of the quotient's base cosets under every parent element
    qbase = Q._base
    rows = np.stack([label[G.mul(reps[b], G.all_indices)] for b in qbase], axis=1)
    proj = Q._lookup(rows.astype(Q._table.dtype))
    proj.setflags(write=False)
    return QuotientPresentation(G, N, Q, proj, reps)
