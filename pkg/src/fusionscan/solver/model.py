"""Compile one (group, action, duality) case into an integer CSP over fusion coefficients.

Every coefficient with an invertible index is a known 0/1 constant. The
remaining cells N_{ab}^c (a, b, c non-invertible) are merged into variables
along the identities that hold in any fusion ring:

* reciprocity      N_{ab}^c = N_{a* c}^b = N_{c b*}^a
* conjugation      N_{ab}^c = N_{b* a*}^{c*}
* invertible moves N_{ab}^c = N_{(ga) b}^{gc} = N_{a (bg)}^{cg},  N_{(ag) b}^c = N_{a (gb)}^c

What is left is a system of linear dimension rows and quadratic
associativity equations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..signature import TypeSignature
from .space import SpaceCase

__all__ = ["LinearRow", "QuadRow", "Problem", "compile_case", "CONST"]

CONST = -1


@dataclass
class LinearRow:
    """sum(coef * x) == rhs."""

    vars: tuple[int, ...]
    coefs: tuple[int, ...]
    rhs: int
    label: str


@dataclass
class QuadRow:
    """sum(coef * x * y) == 0; ``y`` may be CONST, and then so may ``x``."""

    terms: tuple[tuple[int, int, int], ...]  # (coef, x, y)
    label: str


@dataclass
class Problem:
    sig: TypeSignature
    case: SpaceCase
    rank: int
    n0: int
    dims: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    dual: tuple[int, ...]
    cell_var: list[int]  # per non-invertible cell id
    var_cells: list[list[int]]
    lo0: list[int]
    hi0: list[int]
    rows: list[LinearRow]
    quads: list[QuadRow]
    watch: list[list[int]] = field(default_factory=list)  # var -> constraint ids (rows first, then quads)
    infeasible: str = ""

    @property
    def nvars(self) -> int:
        return len(self.var_cells)

    def cell_id(self, a: int, b: int, c: int) -> int:
        m = self.rank - self.n0
        return ((a - self.n0) * m + (b - self.n0)) * m + (c - self.n0)

    def cell_of(self, cid: int) -> tuple[int, int, int]:
        m = self.rank - self.n0
        a, rest = divmod(cid, m * m)
        b, c = divmod(rest, m)
        return a + self.n0, b + self.n0, c + self.n0

    def entry(self, a: int, b: int, c: int) -> tuple[int, int]:
        """``(CONST, value)`` for a known coefficient, else ``(var, 0)``."""
        n0 = self.n0
        if a < n0:
            return CONST, int(self.left[a][b] == c)
        if b < n0:
            return CONST, int(self.right[a][b] == c)
        if c < n0:
            return CONST, int(self.right[self.dual[a]][c] == b)
        return self.cell_var[self.cell_id(a, b, c)], 0

    def name(self, x: int) -> str:
        if x == 0:
            return "1"
        if x < self.n0:
            return f"g{x}"
        d = self.dims[x]
        first = self.dims.index(d)
        return f"x{d}" + ("'" * (x - first) if x - first <= 3 else f"_{x - first}")

    def var_label(self, v: int) -> str:
        a, b, c = self.cell_of(self.var_cells[v][0])
        return f"N[{self.name(a)}·{self.name(b)}→{self.name(c)}]"


class _UF:
    def __init__(self, n: int) -> None:
        self.p = list(range(n))

    def find(self, x: int) -> int:
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.p[rb] = ra
            else:
                self.p[ra] = rb


def compile_case(sig: TypeSignature, case: SpaceCase) -> Problem:
    dims = sig.dims
    r = len(dims)
    n0 = sig.n0
    m = r - n0
    group = case.group
    left = case.left
    dual = case.dual
    inv = [group.inverse(g) for g in range(n0)]
    right = []
    for x in range(r):
        if x < n0:
            right.append(tuple(group.mult[x]))
        else:
            right.append(tuple(dual[left[inv[h]][dual[x]]] for h in range(n0)))
    right_t = tuple(right)

    def cid(a: int, b: int, c: int) -> int:
        return ((a - n0) * m + (b - n0)) * m + (c - n0)

    ncells = m * m * m
    uf = _UF(ncells)
    nonInv = range(n0, r)
    for a in nonInv:
        da = dual[a]
        for b in nonInv:
            db = dual[b]
            for c in nonInv:
                k = cid(a, b, c)
                uf.union(k, cid(da, c, b))
                uf.union(k, cid(c, db, a))
                uf.union(k, cid(db, da, dual[c]))
                for g in range(1, n0):
                    uf.union(k, cid(left[g][a], b, left[g][c]))
                    uf.union(k, cid(a, right[b][g], right[c][g]))
                    uf.union(k, cid(right[a][g], left[inv[g]][b], c))
    roots: dict[int, int] = {}
    cell_var = [0] * ncells
    var_cells: list[list[int]] = []
    for k in range(ncells):
        rt = uf.find(k)
        if rt not in roots:
            roots[rt] = len(var_cells)
            var_cells.append([])
        v = roots[rt]
        cell_var[k] = v
        var_cells[v].append(k)

    hi0 = []
    for cells in var_cells:
        bound = None
        for k in cells:
            a, rest = divmod(k, m * m)
            b, c = divmod(rest, m)
            da_, db_, dc_ = dims[a + n0], dims[b + n0], dims[c + n0]
            cand = min(da_ * db_ // dc_, da_ * dc_ // db_, db_ * dc_ // da_)
            bound = cand if bound is None else min(bound, cand)
        hi0.append(bound)
    lo0 = [0] * len(var_cells)

    prob = Problem(
        sig=sig, case=case, rank=r, n0=n0, dims=dims, left=left, right=right_t, dual=dual,
        cell_var=cell_var, var_cells=var_cells, lo0=lo0, hi0=hi0, rows=[], quads=[],
    )

    # dimension rows
    seen_rows: set = set()
    for a in nonInv:
        for b in nonInv:
            coefs: dict[int, int] = {}
            for c in nonInv:
                v = cell_var[cid(a, b, c)]
                coefs[v] = coefs.get(v, 0) + dims[c]
            inv_part = sum(1 for g in range(n0) if right[dual[a]][g] == b)
            rhs = dims[a] * dims[b] - inv_part
            key = (tuple(sorted(coefs.items())), rhs)
            if key in seen_rows:
                continue
            seen_rows.add(key)
            items = sorted(coefs.items())
            label = f"dim: {prob.name(a)}·{prob.name(b)} = {dims[a] * dims[b]}"
            prob.rows.append(LinearRow(tuple(v for v, _ in items), tuple(c for _, c in items), rhs, label))
            if rhs < 0:
                prob.infeasible = f"{label}: invertible part exceeds dimension"

    # associativity: (ab)c = a(bc), coefficient of f; a, b, c non-invertible
    # (an invertible a, b or c gives an identity already used in the merging)
    seen_q: set = set()
    entry = prob.entry
    # sparse products: support[a][b] = [(e, x, xv)] with x a var (xv=1) or CONST (xv>0)
    support = []
    for a in range(r):
        row_a = []
        for b in range(r):
            lst = []
            for e in range(r):
                x, xv = entry(a, b, e)
                if x == CONST:
                    if xv:
                        lst.append((e, CONST, xv))
                else:
                    lst.append((e, x, 1))
            row_a.append(lst)
        support.append(row_a)
    for a in nonInv:
        sa = support[a]
        for b in nonInv:
            ab = sa[b]
            sb = support[b]
            for c in nonInv:
                polys: dict[int, dict[tuple[int, int], int]] = {}
                for sign, pairs, outer in ((1, ab, None), (-1, sb[c], sa)):
                    for e, x, xv in pairs:
                        inner = support[e][c] if outer is None else outer[e]
                        for f, y, yv in inner:
                            key = (x, y) if x >= y else (y, x)
                            poly = polys.get(f)
                            if poly is None:
                                poly = polys[f] = {}
                            poly[key] = poly.get(key, 0) + sign * xv * yv
                for f in sorted(polys):
                    terms = tuple(sorted((k, c_) for k, c_ in polys[f].items() if c_))
                    if not terms:
                        continue
                    if terms[0][1] < 0:
                        terms = tuple((k, -c_) for k, c_ in terms)
                    if terms in seen_q:
                        continue
                    seen_q.add(terms)
                    label = f"assoc: ({prob.name(a)}·{prob.name(b)})·{prob.name(c)} vs {prob.name(a)}·({prob.name(b)}·{prob.name(c)}) at {prob.name(f)}"
                    qterms = tuple((c_, k[0], k[1]) for k, c_ in terms)
                    if all(k == (CONST, CONST) for k, _ in terms):
                        prob.infeasible = f"{label}: constant mismatch"
                    prob.quads.append(QuadRow(qterms, label))

    nv = len(var_cells)
    watch: list[list[int]] = [[] for _ in range(nv)]
    for i, row in enumerate(prob.rows):
        for v in row.vars:
            watch[v].append(i)
    base = len(prob.rows)
    for j, q in enumerate(prob.quads):
        vs = {t[1] for t in q.terms if t[1] != CONST} | {t[2] for t in q.terms if t[2] != CONST}
        for v in sorted(vs):
            watch[v].append(base + j)
    prob.watch = watch
    return prob
