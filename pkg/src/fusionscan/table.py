"""Ring-level data: group tables, duality involutions, fusion tables.

``verify_fusion_table`` is a direct scan over every law and shares no code
with the solver's propagation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Sequence

__all__ = [
    "GroupTable",
    "DualityAssignment",
    "FusionTable",
    "Violation",
    "verify_fusion_table",
    "group_ring_table",
    "stabilizers",
]


@dataclass(frozen=True)
class GroupTable:
    """Multiplication table on ``0..order-1`` with identity ``0``."""

    order: int
    mult: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "mult", tuple(tuple(int(v) for v in row) for row in self.mult))
        if len(self.mult) != self.order or any(len(row) != self.order for row in self.mult):
            raise ValueError("multiplication table has wrong shape")

    def inverse(self, a: int) -> int:
        for b in range(self.order):
            if self.mult[a][b] == 0:
                return b
        raise ValueError(f"element {a} has no inverse")

    def axiom_violations(self) -> list[str]:
        n, m = self.order, self.mult
        out = []
        for a in range(n):
            for b in range(n):
                if not 0 <= m[a][b] < n:
                    out.append(f"closure: {a}*{b}={m[a][b]}")
        if out:
            return out
        for a in range(n):
            if m[0][a] != a or m[a][0] != a:
                out.append(f"identity: 0 does not fix {a}")
            if 0 not in m[a]:
                out.append(f"inverse: {a} has no right inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if m[m[a][b]][c] != m[a][m[b][c]]:
                        out.append(f"associativity: ({a},{b},{c})")
        return out

    def is_abelian(self) -> bool:
        return all(self.mult[a][b] == self.mult[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mult[x][a]
            k += 1
        return k


@dataclass(frozen=True)
class DualityAssignment:
    dual: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dual", tuple(int(v) for v in self.dual))

    def __getitem__(self, i: int) -> int:
        return self.dual[i]

    def __len__(self) -> int:
        return len(self.dual)


@dataclass(frozen=True)
class FusionTable:
    """A candidate Grothendieck ring: ``tensor[a][b][c]`` is the multiplicity of c in a*b.

    Indices ``0..group.order-1`` are the invertible simples, labelled by the
    group elements; index 0 is the unit.
    """

    rank: int
    dims: tuple[int, ...]
    group: GroupTable
    dual: DualityAssignment
    tensor: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(
            self, "tensor", tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in self.tensor)
        )
        r = self.rank
        if len(self.dims) != r or len(self.dual) != r:
            raise ValueError("dims/dual length does not match rank")
        if len(self.tensor) != r or any(len(p) != r or any(len(row) != r for row in p) for p in self.tensor):
            raise ValueError("tensor must be rank x rank x rank")

    def N(self, a: int, b: int, c: int) -> int:
        return self.tensor[a][b][c]

    @property
    def n0(self) -> int:
        return self.group.order

    def to_json(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "dims": list(self.dims),
            "dual": list(self.dual.dual),
            "group": {"order": self.group.order, "name": self.group.name, "mult": [list(r) for r in self.group.mult]},
            "tensor": [[list(row) for row in plane] for plane in self.tensor],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FusionTable":
        g = data["group"]
        return cls(
            rank=data["rank"],
            dims=tuple(data["dims"]),
            group=GroupTable(g["order"], tuple(tuple(r) for r in g["mult"]), g.get("name", "")),
            dual=DualityAssignment(tuple(data["dual"])),
            tensor=tuple(tuple(tuple(row) for row in plane) for plane in data["tensor"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Violation:
    law: str
    indices: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.law}{self.indices}: {self.detail}"


def stabilizers(table: FusionTable) -> list[set[int]]:
    """G[x] = {g invertible : N_{g x}^x = 1} for every simple x."""
    return [{g for g in range(table.n0) if table.tensor[g][x][x] == 1} for x in range(table.rank)]


def verify_fusion_table(table: FusionTable, max_violations: int | None = None) -> list[Violation]:
    r = table.rank
    T = table.tensor
    dims = table.dims
    dual = table.dual.dual
    n0 = table.group.order
    out: list[Violation] = []

    def add(law: str, idx: tuple[int, ...], detail: str) -> bool:
        out.append(Violation(law, idx, detail))
        return max_violations is not None and len(out) >= max_violations

    # structural
    if any(v < 0 for p in T for row in p for v in row):
        add("nonnegativity", (), "negative multiplicity")
    if dims[0] != 1:
        add("structure", (0,), "unit must have dimension 1")
    if any(dims[i] != 1 for i in range(n0)) or any(dims[i] == 1 for i in range(n0, r)):
        add("structure", (), "indices 0..n0-1 must be exactly the dimension-1 simples")
    if sorted(dual) != list(range(r)):
        add("duality", (), "dual is not a permutation")
        return out
    for a in range(r):
        if dual[dual[a]] != a:
            add("duality", (a,), "dual is not an involution")
        if dims[dual[a]] != dims[a]:
            add("duality", (a,), "dual changes dimension")
    if dual[0] != 0:
        add("duality", (0,), "unit is not self-dual")
    if out:
        return out

    for b in range(r):
        for c in range(r):
            e = 1 if b == c else 0
            if T[0][b][c] != e or T[b][0][c] != e:
                if add("unit", (0, b, c), f"N_0{b}^{c}={T[0][b][c]}, N_{b}0^{c}={T[b][0][c]}, expected {e}"):
                    return out

    for a in range(r):
        for b in range(r):
            e = 1 if b == dual[a] else 0
            if T[a][b][0] != e:
                if add("dual", (a, b, 0), f"N_{a}{b}^0={T[a][b][0]}, expected {e}"):
                    return out

    for a in range(r):
        for b in range(r):
            for c in range(r):
                v = T[a][b][c]
                if v != T[dual[a]][c][b] or v != T[c][dual[b]][a]:
                    if add("reciprocity", (a, b, c), f"{v} vs {T[dual[a]][c][b]}, {T[c][dual[b]][a]}"):
                        return out
                if v != T[dual[b]][dual[a]][dual[c]]:
                    if add("conjugation", (a, b, c), f"{v} vs {T[dual[b]][dual[a]][dual[c]]}"):
                        return out

    for a in range(r):
        for b in range(r):
            lhs = sum(T[a][b][c] * dims[c] for c in range(r))
            if lhs != dims[a] * dims[b]:
                if add("dimension", (a, b), f"sum={lhs}, expected {dims[a] * dims[b]}"):
                    return out

    # invertible simples: products with them are simple; group law on the block
    mult = table.group.mult
    for g in range(n0):
        for h in range(n0):
            for k in range(n0):
                e = 1 if mult[g][h] == k else 0
                if T[g][h][k] != e:
                    if add("invertible", (g, h, k), f"group block N={T[g][h][k]}, expected {e}"):
                        return out
    right = [[-1] * n0 for _ in range(r)]
    for x in range(r):
        for g in range(n0):
            row = T[x][g]
            if sorted(row) != [0] * (r - 1) + [1]:
                if add("invertible", (x, g), "x*g is not simple"):
                    return out
            else:
                right[x][g] = row.index(1)
    for x in range(r):
        for y in range(r):
            for g in range(n0):
                target = right[dual[x]][g]
                e = 1 if y == target else 0
                if T[x][y][g] != e:
                    if add("invertible", (x, y, g), f"N_{x}{y}^{g}={T[x][y][g]}, expected {e} (x*.g={target})"):
                        return out

    for a in range(r):
        for b in range(r):
            ab = [(e, v) for e, v in enumerate(T[a][b]) if v]
            for c in range(r):
                bc = [(e, v) for e, v in enumerate(T[b][c]) if v]
                for f in range(r):
                    lhs = sum(v * T[e][c][f] for e, v in ab)
                    rhs = sum(v * T[a][e][f] for e, v in bc)
                    if lhs != rhs:
                        if add("associativity", (a, b, c, f), f"(ab)c={lhs}, a(bc)={rhs}"):
                            return out

    for x, stab in enumerate(stabilizers(table)):
        closed = all(mult[g][h] in stab for g in stab for h in stab) and 0 in stab
        if not closed:
            if add("stabilizer", (x,), f"G[x]={sorted(stab)} is not a subgroup"):
                return out
        if (dims[x] ** 2) % max(len(stab), 1):
            if add("stabilizer", (x,), f"|G[x]|={len(stab)} does not divide {dims[x] ** 2}"):
                return out
    return out


def group_ring_table(group: GroupTable) -> FusionTable:
    """The pointed table N_{ab}^c = [c = ab]."""
    n = group.order
    tensor = tuple(
        tuple(tuple(1 if group.mult[a][b] == c else 0 for c in range(n)) for b in range(n)) for a in range(n)
    )
    dual = DualityAssignment(tuple(group.inverse(a) for a in range(n)))
    return FusionTable(n, (1,) * n, group, dual, tensor)
