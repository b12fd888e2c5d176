"""Set partitions by restricted growth strings, in a fixed order."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator, Sequence


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """a[0] = 0 and a[i] <= 1 + max(a[:i]); lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All partitions of ``items`` into nonempty blocks, blocks in first-seen order."""
    items = list(items)
    for s in restricted_growth_strings(len(items)):
        blocks: list[list] = [[] for _ in range(max(s) + 1)] if s else []
        for it, b in zip(items, s):
            blocks[b].append(it)
        yield blocks


def mask_partitions(mask: int) -> Iterator[list[int]]:
    """Partitions of the bit set ``mask`` as lists of sub-masks."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    for blocks in set_partitions(bits):
        yield [sum(b) for b in blocks]


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    if n == 0:
        return 1
    return sum(comb(n - 1, k) * bell(k) for k in range(n))
