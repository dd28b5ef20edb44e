"""Finite permutations of {0, ..., k-1} in image form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Perm:
    """A bijection of {0, ..., k-1}; ``images[i]`` is the image of ``i``.

    >>> Perm([1, 2, 0])(2)
    0
    """

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, k: int) -> Perm:
        return cls(range(k))

    @classmethod
    def from_cycles(cls, k: int, cycles: Iterable[Sequence[int]]) -> Perm:
        """Build from disjoint cycles; unmentioned points are fixed.

        >>> Perm.from_cycles(3, [(0, 1)])
        Perm(images=(1, 0, 2))
        """
        images = list(range(k))
        seen: set[int] = set()
        for c in cycles:
            for i, x in enumerate(c):
                if x in seen:
                    raise ValueError("cycles are not disjoint")
                seen.add(x)
                images[x] = c[(i + 1) % len(c)]
        return cls(images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles(self)

    def parity(self) -> int:
        return parity(self)


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p o q``, i.e. ``i -> p(q(i))``.

    >>> compose(Perm([2, 0, 1]), Perm([1, 2, 0])).images
    (0, 1, 2)
    """
    if len(p) != len(q):
        raise ValueError("arity mismatch")
    return Perm(p.images[j] for j in q.images)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Orbits of ``p``, each starting at its minimum, sorted by that minimum.

    >>> cycles(Perm([1, 0, 2]))
    [(0, 1), (2,)]
    """
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p.images[i]
        out.append(tuple(cyc))
    return out


def parity(p: Perm) -> int:
    """Sign of ``p`` as +1 or -1."""
    return -1 if (len(p) - len(cycles(p))) % 2 else 1


def sequence_parity(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct comparable items)."""
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    return parity(Perm(order))
