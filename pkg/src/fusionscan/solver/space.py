"""Outer search space: how Pic acts on each dimension class, and which dualities fit.

For a signature and a group G of order n0, the left action of G on the
simples of dimension d is a G-set whose point stabilizers G[x] have order
dividing d². G-sets are enumerated up to isomorphism (multisets of transitive
G-sets G/H, H up to conjugacy). Dualities are involutions on each class such
that the induced right action x.h = (h^-1 . x*)* commutes with the left one;
with symmetry breaking on, only the lexicographically least duality under the
G-set automorphisms of the class is kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator, Sequence

from ..groups import subgroups
from ..signature import TypeSignature
from ..table import DualityAssignment, GroupTable

__all__ = [
    "ClassAction",
    "transitive_types",
    "enumerate_class_actions",
    "enumerate_class_dualities",
    "enumerate_dualities",
    "SpaceCase",
    "iter_cases",
]

# above this many G-set automorphisms, only this many are used for pruning
_MAX_AUTS = 4000


@dataclass(frozen=True)
class ClassAction:
    """Left action on one dimension class: ``act[g][i]`` for local point i."""

    dim: int
    act: tuple[tuple[int, ...], ...]
    orbit_types: tuple[int, ...]  # indices into transitive_types(group)

    @property
    def size(self) -> int:
        return len(self.act[0])

    def stabilizer(self, i: int) -> frozenset[int]:
        return frozenset(g for g, row in enumerate(self.act) if row[i] == i)


def _conj(group: GroupTable, g: int, h: frozenset[int]) -> frozenset[int]:
    gi = group.inverse(g)
    return frozenset(group.mult[group.mult[g][x]][gi] for x in h)


def transitive_types(group: GroupTable) -> list[frozenset[int]]:
    """One subgroup per conjugacy class, in ``subgroups`` order."""
    reps: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for h in subgroups(group):
        if h in seen:
            continue
        reps.append(h)
        seen.update(_conj(group, g, h) for g in range(group.order))
    return reps


def _coset_action(group: GroupTable, h: frozenset[int]) -> list[list[int]]:
    cosets: list[frozenset[int]] = []
    index: dict[frozenset[int], int] = {}
    for g in range(group.order):
        c = frozenset(group.mult[g][x] for x in h)
        if c not in index:
            index[c] = len(cosets)
            cosets.append(c)
    act = []
    for k in range(group.order):
        row = []
        for c in cosets:
            g = min(c)
            row.append(index[frozenset(group.mult[group.mult[k][g]][x] for x in h)])
        act.append(row)
    return act


def enumerate_class_actions(group: GroupTable, size: int, dim: int) -> list[ClassAction]:
    """All G-sets of the given size with stabilizer orders dividing dim², up to isomorphism."""
    types = transitive_types(group)
    usable = [t for t, h in enumerate(types) if (dim * dim) % len(h) == 0 and group.order // len(h) <= size]
    out = []
    for k in range(1, size + 1):
        for combo in combinations_with_replacement(usable, k):
            if sum(group.order // len(types[t]) for t in combo) != size:
                continue
            act = [[] for _ in range(group.order)]
            offset = 0
            for t in combo:
                block = _coset_action(group, types[t])
                for g in range(group.order):
                    act[g].extend(offset + v for v in block[g])
                offset += len(block[0])
            out.append(ClassAction(dim, tuple(tuple(r) for r in act), combo))
    return out


def _gset_automorphisms(group: GroupTable, ca: ClassAction, cap: int) -> list[tuple[int, ...]]:
    """Permutations of the class commuting with the action (at most ``cap``)."""
    n = ca.size
    act = ca.act
    seen: set[int] = set()
    reps = []
    for i in range(n):
        if i not in seen:
            reps.append(i)
            seen.update(act[g][i] for g in range(group.order))
    stabs = [ca.stabilizer(i) for i in range(n)]
    out: list[tuple[int, ...]] = []

    def rec(k: int, perm: list[int], used: set[int]) -> bool:
        if len(out) >= cap:
            return False
        if k == len(reps):
            out.append(tuple(perm))
            return True
        r = reps[k]
        for y in range(n):
            if y in used or stabs[y] != stabs[r]:
                continue
            orbit = {act[g][y] for g in range(group.order)}
            if orbit & used:
                continue
            for g in range(group.order):
                perm[act[g][r]] = act[g][y]
            rec(k + 1, perm, used | orbit)
        return True

    rec(0, [-1] * n, set())
    return out


def _commutes(group: GroupTable, act, sigma: Sequence[int], inv: Sequence[int]) -> bool:
    n = len(sigma)
    G = range(group.order)
    right = [[sigma[act[inv[h]][sigma[i]]] for h in G] for i in range(n)]
    return all(act[g][right[i][h]] == right[act[g][i]][h] for g in G for h in G for i in range(n))


def _partial_ok(group: GroupTable, act, sigma: list[int], inv: Sequence[int], i: int) -> bool:
    n = len(sigma)
    G = range(group.order)
    for h in G:
        s = sigma[i]
        if s < 0:
            return True
        u = sigma[act[inv[h]][s]]
        if u < 0:
            continue
        for g in G:
            gi = act[g][i]
            sg = sigma[gi]
            if sg < 0:
                continue
            w = sigma[act[inv[h]][sg]]
            if w >= 0 and act[g][u] != w:
                return False
    return True


def enumerate_class_dualities(
    group: GroupTable, ca: ClassAction, symmetry_breaking: bool = True
) -> Iterator[tuple[int, ...]]:
    """Involutions on one class compatible with its action, in lexicographic order."""
    n = ca.size
    act = ca.act
    inv = [group.inverse(g) for g in range(group.order)]
    auts = _gset_automorphisms(group, ca, _MAX_AUTS) if symmetry_breaking else []
    auts = [p for p in auts if p != tuple(range(n))]
    sigma = [-1] * n

    def touched_ok(points: Sequence[int]) -> bool:
        # check every point whose constraints may involve a newly assigned one
        for i in range(n):
            if not _partial_ok(group, act, sigma, inv, i):
                return False
        return True

    def minimal(s: tuple[int, ...]) -> bool:
        for p in auts:
            pinv = [0] * n
            for a, b in enumerate(p):
                pinv[b] = a
            t = tuple(p[s[pinv[j]]] for j in range(n))
            if t < s:
                return False
        return True

    def rec() -> Iterator[tuple[int, ...]]:
        try:
            i = sigma.index(-1)
        except ValueError:
            s = tuple(sigma)
            if _commutes(group, act, s, inv) and minimal(s):
                yield s
            return
        for j in range(i, n):
            if sigma[j] != -1:
                continue
            sigma[i], sigma[j] = j, i
            if touched_ok((i, j)):
                yield from rec()
            sigma[i] = sigma[j] = -1

    yield from rec()


def enumerate_dualities(
    sig: TypeSignature, group: GroupTable, symmetry_breaking: bool = True
) -> list[DualityAssignment]:
    """Duality involutions ignoring the Pic action on non-invertibles.

    Invertibles get the group inverse; each non-invertible class gets every
    involution, or one per cycle type when relabeling symmetry is broken.
    """
    if group.order != sig.n0:
        raise ValueError("group order must equal n0")
    inv = tuple(group.inverse(g) for g in range(group.order))
    per_class: list[list[tuple[int, ...]]] = []
    for d, n in sig.entries[1:]:
        if symmetry_breaking:
            opts = []
            for pairs in range(n // 2, -1, -1):
                s = list(range(n))
                for k in range(pairs):
                    s[2 * k], s[2 * k + 1] = 2 * k + 1, 2 * k
                opts.append(tuple(s))
            per_class.append(sorted(opts))
        else:
            per_class.append(list(_all_involutions(n)))
    out = []
    for choice in product(*per_class):
        dual = list(inv)
        offset = sig.n0
        for s in choice:
            dual.extend(offset + v for v in s)
            offset += len(s)
        out.append(DualityAssignment(tuple(dual)))
    return out


def _all_involutions(n: int) -> Iterator[tuple[int, ...]]:
    s = [-1] * n

    def rec():
        try:
            i = s.index(-1)
        except ValueError:
            yield tuple(s)
            return
        for j in range(i, n):
            if s[j] == -1:
                s[i], s[j] = j, i
                yield from rec()
                s[i] = s[j] = -1

    yield from rec()


@dataclass(frozen=True)
class SpaceCase:
    """One (group, action, duality) choice, in global simple indices."""

    group: GroupTable
    left: tuple[tuple[int, ...], ...]  # left[g][x] for every simple x
    dual: tuple[int, ...]
    label: str


def iter_cases(sig: TypeSignature, group: GroupTable, symmetry_breaking: bool = True) -> Iterator[SpaceCase]:
    n0 = group.order
    classes = [(d, n) for d, n in sig.entries[1:]]
    actions = [enumerate_class_actions(group, n, d) for d, n in classes]
    inv = tuple(group.inverse(g) for g in range(n0))
    for act_choice in product(*actions):
        offsets = []
        off = n0
        for ca in act_choice:
            offsets.append(off)
            off += ca.size
        dual_iters = [list(enumerate_class_dualities(group, ca, symmetry_breaking)) for ca in act_choice]
        if any(not opts for opts in dual_iters):
            continue
        left = [list(group.mult[g]) for g in range(n0)]
        for ca, o in zip(act_choice, offsets):
            for g in range(n0):
                left[g].extend(o + v for v in ca.act[g])
        left_t = tuple(tuple(r) for r in left)
        for k, dual_choice in enumerate(product(*dual_iters)):
            dual = list(inv)
            for s, o in zip(dual_choice, offsets):
                dual.extend(o + v for v in s)
            label = f"{group.name} action={[ca.orbit_types for ca in act_choice]} dual#{k}"
            yield SpaceCase(group, left_t, tuple(dual), label)
