"""Enumeration of all non-pointed type signatures of a given global dimension."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .signature import TypeSignature

__all__ = ["enumerate_signatures", "iter_signatures", "count_signatures"]


def iter_signatures(N: int, max_rank: int | None = None) -> Iterator[TypeSignature]:
    """Yield every signature with global dimension ``N`` (not sorted).

    Dimensions are chosen in increasing order; a branch dies as soon as
    ``d*d`` exceeds the budget left after reserving at least one invertible.
    """
    if N < 1:
        return

    def rec(remaining: int, min_dim: int, acc: list[tuple[int, int]], used: int) -> Iterator[TypeSignature]:
        if acc and (max_rank is None or used + remaining <= max_rank):
            yield TypeSignature(((1, remaining),) + tuple(acc))
        d = min_dim
        while d * d <= remaining - 1:
            for n in range(1, (remaining - 1) // (d * d) + 1):
                if max_rank is not None and used + n + 1 > max_rank:
                    break
                acc.append((d, n))
                yield from rec(remaining - n * d * d, d + 1, acc, used + n)
                acc.pop()
            d += 1

    yield from rec(N, 2, [], 0)


def enumerate_signatures(N: int, max_rank: int | None = None) -> list[TypeSignature]:
    """All signatures of global dimension ``N``, sorted by ``(n0, d1, n1, ...)``."""
    return sorted(iter_signatures(N, max_rank))


def count_signatures(N: int) -> int:
    """Number of signatures of global dimension ``N``, counted without building them."""
    if N < 1:
        return 0

    @lru_cache(maxsize=None)
    def ways(remaining: int, min_dim: int) -> int:
        # decompositions of `remaining` as sum n_i d_i^2 over dims >= min_dim, plus n0 >= 1
        total = 1 if remaining >= 1 else 0
        d = min_dim
        while d * d <= remaining - 1:
            for n in range(1, (remaining - 1) // (d * d) + 1):
                total += ways(remaining - n * d * d, d + 1)
            d += 1
        return total

    # subtract the pointed decomposition (only n0)
    return ways(N, 2) - 1
