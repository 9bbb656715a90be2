"""Permutations on the points 1..degree.

Products compose left to right: ``a * b`` applies ``a`` first, then ``b``.
Internally images are stored 0-based; every textual form is 1-based.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

__all__ = ["Permutation", "PermutationError", "compose", "inverse", "parse_permutation"]


class PermutationError(ValueError):
    pass


class Permutation:
    __slots__ = ("_images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"not a bijection of 0..{len(images) - 1}: {images}")
        if not images:
            raise PermutationError("degree must be positive")
        self._images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from 1-based images, ``images[i-1]`` being the image of ``i``."""
        return cls([i - 1 for i in images])

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 1 <= c <= degree:
                    raise PermutationError(f"point {c} outside 1..{degree}")
                if c in seen:
                    raise PermutationError(f"point {c} repeated in cycle notation")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        """0-based image tuple."""
        return self._images

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self._images[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other: Permutation) -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self._images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self._images[j]
            if len(cyc) > 1:
                out.append(tuple(c + 1 for c in cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    if a.degree != b.degree:
        raise PermutationError(f"degree mismatch: {a.degree} vs {b.degree}")
    bi = b.images
    return Permutation([bi[x] for x in a.images])


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, x in enumerate(a.images):
        inv[x] = i
    return Permutation(inv)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation ``"(1 2 3)(4 5)"`` or an image list ``"2 3 1 5 4"``.

    Cycle entries may be separated by spaces or commas. Without an explicit
    degree, cycle notation uses the largest point mentioned.
    """
    s = text.strip()
    if not s or s.startswith("("):
        rest = _CYCLE.sub("", s)
        if rest.strip():
            raise PermutationError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE.findall(s):
            try:
                pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            except ValueError:
                raise PermutationError(f"non-integer point in {text!r}") from None
            if pts:
                cycles.append(pts)
        top = max((max(c) for c in cycles), default=1)
        if degree is None:
            degree = top
        elif top > degree:
            raise PermutationError(f"point {top} exceeds degree {degree}")
        return Permutation.from_cycles(degree, cycles)
    try:
        imgs = [int(t) for t in s.replace(",", " ").split()]
    except ValueError:
        raise PermutationError(f"malformed image list: {text!r}") from None
    if degree is not None and len(imgs) != degree:
        raise PermutationError(f"image list has {len(imgs)} entries, expected {degree}")
    return Permutation.from_images(imgs)
