"""Catalog of all finite groups of order 1..16 up to isomorphism.

Groups are built from a few constructions (cyclic, metacyclic presentations,
semidirect products by an involutive automorphism, direct products, and A4
from permutations). Element 0 is always the identity.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .table import GroupTable

__all__ = [
    "MAX_CATALOG_ORDER",
    "UnsupportedGroupOrder",
    "enumerate_groups",
    "cyclic",
    "direct_product",
    "subgroups",
    "is_isomorphic",
]

MAX_CATALOG_ORDER = 16


class UnsupportedGroupOrder(ValueError):
    pass


def cyclic(n: int) -> GroupTable:
    return GroupTable(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"C{n}")


def metacyclic(m: int, n: int, k: int, t: int, name: str) -> GroupTable:
    """<a, b | a^m = 1, b^n = a^t, b a b^-1 = a^k>; element a^i b^j has index i + m*j."""
    assert pow(k, n, m) == 1 % m and (t * (k - 1)) % m == 0
    order = m * n

    def mul(x: int, y: int) -> int:
        i, j = x % m, x // m
        p, q = y % m, y // m
        e = i + pow(k, j, m) * p
        jj = j + q
        if jj >= n:
            jj -= n
            e += t
        return e % m + m * jj

    return GroupTable(order, tuple(tuple(mul(x, y) for y in range(order)) for x in range(order)), name)


def direct_product(g: GroupTable, h: GroupTable, name: str = "") -> GroupTable:
    n, m = g.order, h.order

    def mul(x: int, y: int) -> int:
        return g.mult[x % n][y % n] + n * h.mult[x // n][y // n]

    order = n * m
    return GroupTable(order, tuple(tuple(mul(x, y) for y in range(order)) for x in range(order)), name or f"{g.name}x{h.name}")


def semidirect_c2(base: GroupTable, phi: tuple[int, ...], name: str) -> GroupTable:
    """base x| C2 where the generator of C2 acts by the involutive automorphism ``phi``."""
    n = base.order

    def mul(x: int, y: int) -> int:
        a, j = x % n, x // n
        b, l = y % n, y // n
        if j:
            b = phi[b]
        return base.mult[a][b] + n * ((j + l) % 2)

    order = 2 * n
    return GroupTable(order, tuple(tuple(mul(x, y) for y in range(order)) for x in range(order)), name)


def _from_permutations(gens: list[tuple[int, ...]], name: str) -> GroupTable:
    ident = tuple(range(len(gens[0])))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[i] for i in g)
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    index = {p: i for i, p in enumerate(elems)}
    mult = tuple(tuple(index[tuple(p[i] for i in q)] for q in elems) for p in elems)
    return GroupTable(len(elems), mult, name)


def _c4xc2_auto(f) -> tuple[int, ...]:
    # C4 x C2 indexed as i + 4 j for a^i b^j
    return tuple((lambda ij: ij[0] % 4 + 4 * (ij[1] % 2))(f(x % 4, x // 4)) for x in range(8))


@lru_cache(maxsize=None)
def _catalog() -> dict[int, tuple[GroupTable, ...]]:
    C = cyclic
    D = lambda m: metacyclic(m, 2, m - 1, 0, f"D{2 * m}")
    c4c2 = direct_product(C(4), C(2), "C4xC2")
    cat: dict[int, list[GroupTable]] = {n: [] for n in range(1, MAX_CATALOG_ORDER + 1)}
    for p in (1, 2, 3, 5, 7, 11, 13):
        cat[p].append(C(p))
    cat[4] += [C(4), direct_product(C(2), C(2), "C2xC2")]
    cat[6] += [C(6), D(3)]
    cat[8] += [
        C(8),
        c4c2,
        direct_product(direct_product(C(2), C(2)), C(2), "C2^3"),
        D(4),
        metacyclic(4, 2, 3, 2, "Q8"),
    ]
    cat[9] += [C(9), direct_product(C(3), C(3), "C3xC3")]
    cat[10] += [C(10), D(5)]
    cat[12] += [
        C(12),
        direct_product(C(6), C(2), "C6xC2"),
        D(6),
        metacyclic(6, 2, 5, 3, "Dic3"),
        _from_permutations([(1, 2, 0, 3), (0, 2, 3, 1)], "A4"),
    ]
    cat[14] += [C(14), D(7)]
    cat[15] += [C(15)]
    cat[16] += [
        C(16),
        direct_product(C(4), C(4), "C4xC4"),
        semidirect_c2(c4c2, _c4xc2_auto(lambda i, j: (i, i + j)), "(C4xC2):C2"),
        metacyclic(4, 4, 3, 0, "C4:C4"),
        direct_product(C(8), C(2), "C8xC2"),
        metacyclic(8, 2, 5, 0, "M16"),
        D(8),
        metacyclic(8, 2, 3, 0, "SD16"),
        metacyclic(8, 2, 7, 4, "Q16"),
        direct_product(c4c2, C(2), "C4xC2^2"),
        direct_product(D(4), C(2), "D8xC2"),
        direct_product(metacyclic(4, 2, 3, 2, "Q8"), C(2), "Q8xC2"),
        semidirect_c2(c4c2, _c4xc2_auto(lambda i, j: (i + 2 * j, j)), "C4oD8"),
        direct_product(direct_product(direct_product(C(2), C(2)), C(2)), C(2), "C2^4"),
    ]
    return {n: tuple(gs) for n, gs in cat.items()}


def enumerate_groups(n: int, max_order: int = MAX_CATALOG_ORDER) -> tuple[GroupTable, ...]:
    """All groups of order ``n`` up to isomorphism, in a fixed order."""
    if n < 1:
        raise ValueError("group order must be positive")
    if n > min(max_order, MAX_CATALOG_ORDER):
        raise UnsupportedGroupOrder(f"no group catalog for order {n} (ceiling {min(max_order, MAX_CATALOG_ORDER)})")
    return _catalog()[n]


def _close(group: GroupTable, elems: frozenset[int]) -> frozenset[int]:
    out = set(elems) | {0}
    frontier = list(out)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(out):
                for c in (group.mult[a][b], group.mult[b][a]):
                    if c not in out:
                        out.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(out)


def subgroups(group: GroupTable) -> list[frozenset[int]]:
    """All subgroups, sorted by (order, sorted elements)."""
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for h in frontier:
            for g in range(group.order):
                if g not in h:
                    k = _close(group, h | {g})
                    if k not in found:
                        found.add(k)
                        nxt.append(k)
        frontier = nxt
    return sorted(found, key=lambda h: (len(h), sorted(h)))


def _generators(g: GroupTable) -> list[int]:
    gens: list[int] = []
    span = frozenset({0})
    for x in sorted(range(g.order), key=lambda x: -g.element_order(x)):
        if x not in span:
            gens.append(x)
            span = _close(g, span | {x})
    return gens


def is_isomorphic(g: GroupTable, h: GroupTable) -> bool:
    """Brute-force isomorphism test by extending images of a generating set."""
    if g.order != h.order:
        return False
    if sorted(map(g.element_order, range(g.order))) != sorted(map(h.element_order, range(h.order))):
        return False
    gens = _generators(g)
    candidates = [[y for y in range(h.order) if h.element_order(y) == g.element_order(x)] for x in gens]

    def extend(images: tuple[int, ...]) -> bool:
        phi = {0: 0}
        for x, y in zip(gens, images):
            phi[x] = y
        frontier = list(phi)
        while frontier:
            nxt = []
            for a in frontier:
                for x in gens:
                    c, img = g.mult[a][x], h.mult[phi[a]][phi[x]]
                    if c in phi:
                        if phi[c] != img:
                            return False
                    else:
                        phi[c] = img
                        nxt.append(c)
            frontier = nxt
        if len(set(phi.values())) != g.order:
            return False
        return all(phi[g.mult[a][b]] == h.mult[phi[a]][phi[b]] for a in range(g.order) for b in range(g.order))

    def rec(i: int, images: tuple[int, ...]) -> bool:
        if i == len(gens):
            return extend(images)
        return any(rec(i + 1, images + (y,)) for y in candidates[i])

    return rec(0, ())
