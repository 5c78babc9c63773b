"""Domain propagation over a compiled :class:`Problem`.

Domains are integer intervals ``[lo[v], hi[v]]``. Dimension rows are filtered
to exact support with a bitset subset-sum; associativity rows use interval
arithmetic on their product terms. At the fixpoint, any set of simples that
is certainly closed under multiplication must have ``sum(d^2)`` dividing N.
"""

from __future__ import annotations

from typing import Callable

from .model import CONST, LinearRow, Problem, QuadRow

__all__ = ["Contradiction", "propagate", "closed_subring_violation", "Tracer"]


class Contradiction(Exception):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


class Tracer:
    """Collects line-oriented derivation steps."""

    def __init__(self) -> None:
        self.lines: list[str] = []

    def step(self, law: str, equation: str, change: str) -> None:
        self.lines.append(f"{len(self.lines) + 1}\t{law}\t{equation}\t{change}")


def _law(label: str) -> str:
    return label.split(":", 1)[0]


def _row_filter(row: LinearRow, lo: list[int], hi: list[int]) -> list[tuple[int, int, int]] | None:
    """New bounds for row vars with exact support, or None if infeasible."""
    vs, cs, R = row.vars, row.coefs, row.rhs
    k = len(vs)
    minsum = 0
    maxsum = 0
    for v, c in zip(vs, cs):
        minsum += c * lo[v]
        maxsum += c * hi[v]
    if minsum > R or maxsum < R:
        return None
    if minsum == maxsum:
        return []
    full = (1 << (R + 1)) - 1
    fwd = [1]
    for v, c in zip(vs, cs):
        prev = fwd[-1]
        acc = 0
        for x in range(lo[v], hi[v] + 1):
            s = c * x
            if s > R:
                break
            acc |= prev << s
        fwd.append(acc & full)
    if not (fwd[-1] >> R) & 1:
        return None
    bwd = [0] * (k + 1)
    bwd[k] = 1
    for i in range(k - 1, -1, -1):
        v, c = vs[i], cs[i]
        nxt = bwd[i + 1]
        acc = 0
        for x in range(lo[v], hi[v] + 1):
            s = c * x
            if s > R:
                break
            acc |= nxt << s
        bwd[i] = acc & full
    changes = []
    for i in range(k):
        v, c = vs[i], cs[i]
        if lo[v] == hi[v]:
            continue
        f, b = fwd[i], bwd[i + 1]
        # sums t with t = R - c*x - s for some s in f: reverse-match via bit tests
        supported = []
        for x in range(lo[v], hi[v] + 1):
            need = R - c * x
            if need < 0:
                break
            # exists s in f with need - s in b
            ff = f & ((1 << (need + 1)) - 1)
            ok = False
            while ff:
                low = ff & -ff
                s = low.bit_length() - 1
                if (b >> (need - s)) & 1:
                    ok = True
                    break
                ff ^= low
            if ok:
                supported.append(x)
        if not supported:
            return None
        if supported[0] != lo[v] or supported[-1] != hi[v]:
            changes.append((v, supported[0], supported[-1]))
    return changes


def _quad_filter(q: QuadRow, lo: list[int], hi: list[int]) -> list[tuple[int, int, int]] | None:
    terms = q.terms
    tl: list[int] = []
    th: list[int] = []
    for c, x, y in terms:
        if x == CONST:
            a = b = c
        else:
            xl, xh = lo[x], hi[x]
            if y == CONST:
                yl = yh = 1
            else:
                yl, yh = lo[y], hi[y]
            if c > 0:
                a, b = c * xl * yl, c * xh * yh
            else:
                a, b = c * xh * yh, c * xl * yl
        tl.append(a)
        th.append(b)
    sl = sum(tl)
    sh = sum(th)
    if sl > 0 or sh < 0:
        return None
    if sl == sh:
        return []
    changes: dict[int, list[int]] = {}

    def cur(v: int) -> tuple[int, int]:
        if v in changes:
            return changes[v][0], changes[v][1]
        return lo[v], hi[v]

    for i, (c, x, y) in enumerate(terms):
        if x == CONST:
            continue
        # the term's value t must satisfy sl - tl[i] + t <= 0 <= sh - th[i] + t
        tmin = -(sh - th[i])
        tmax = -(sl - tl[i])
        # term = c * p with p = x*y >= 0
        if c > 0:
            pmin = -(-tmin // c) if tmin > 0 else 0
            pmax = tmax // c
        else:
            pmin = -(tmax // -c) if tmax < 0 else 0
            pmax = (-tmin) // (-c)
        if pmax < pmin:
            return None
        for var, other in ((x, y), (y, x)):
            if var == CONST:
                continue
            if other == CONST:
                ol, oh = 1, 1
            elif other == var:
                # x*x: bound x by square roots
                vl, vh = cur(var)
                nl, nh = vl, vh
                while nl * nl < pmin and nl <= nh:
                    nl += 1
                while nh * nh > pmax and nh >= nl:
                    nh -= 1
                if nl > nh:
                    return None
                if (nl, nh) != (vl, vh):
                    changes[var] = [nl, nh]
                continue
            else:
                ol, oh = cur(other)
            vl, vh = cur(var)
            nl, nh = vl, vh
            if oh > 0 and pmin > 0:
                nl = max(nl, -(-pmin // oh))
            if ol > 0:
                nh = min(nh, pmax // ol)
            elif pmin > 0 and oh == 0:
                return None
            if nl > nh:
                return None
            if (nl, nh) != (vl, vh):
                changes[var] = [nl, nh]
    return [(v, b[0], b[1]) for v, b in changes.items()]


def propagate(
    prob: Problem,
    lo: list[int],
    hi: list[int],
    queue: list[int] | None = None,
    tracer: Tracer | None = None,
    subring: bool = True,
) -> None:
    """Refine ``lo``/``hi`` in place to a fixpoint; raise :class:`Contradiction` on a wipe-out.

    With ``subring`` on, the fixpoint is also checked for a product-closed set
    of simples whose dimension does not divide N.
    """
    rows = prob.rows
    quads = prob.quads
    nrows = len(rows)
    ncons = nrows + len(quads)
    watch = prob.watch
    if queue is None:
        queue = list(range(ncons))
    inq = [False] * ncons
    for i in queue:
        inq[i] = True
    head = 0
    while head < len(queue):
        ci = queue[head]
        head += 1
        inq[ci] = False
        if ci < nrows:
            con = rows[ci]
            res = _row_filter(con, lo, hi)
        else:
            con = quads[ci - nrows]
            res = _quad_filter(con, lo, hi)
        if res is None:
            if tracer is not None:
                tracer.step(_law(con.label), con.label, "contradiction")
            raise Contradiction(con.label)
        for v, nl, nh in res:
            if tracer is not None:
                tracer.step(_law(con.label), con.label, f"{prob.var_label(v)}: [{lo[v]},{hi[v]}] -> [{nl},{nh}]")
            lo[v], hi[v] = nl, nh
            for cj in watch[v]:
                if not inq[cj] and cj != ci:
                    inq[cj] = True
                    queue.append(cj)
        if len(queue) > 4096 and head > 2048:
            queue = queue[head:]
            head = 0
    if not subring:
        return
    N = prob.sig.global_dim
    msg = closed_subring_violation(prob, lo, hi, N)
    if msg:
        if tracer is not None:
            tracer.step("subring", msg, "contradiction")
        raise Contradiction(msg)


def closed_subring_violation(prob: Problem, lo: list[int], hi: list[int], N: int) -> str:
    """Report a set of simples certainly closed under products whose dimension does not divide N."""
    r, n0 = prob.rank, prob.n0
    dims = prob.dims
    dual = prob.dual
    entry = prob.entry
    possible: list[list[list[int]]] = []
    for a in range(r):
        rowa = []
        for b in range(r):
            out = []
            for c in range(r):
                v, k = entry(a, b, c)
                if (v == CONST and k) or (v != CONST and hi[v] > 0):
                    out.append(c)
            rowa.append(out)
        possible.append(rowa)
    seen: set[frozenset[int]] = set()
    for seed in range(n0, r):
        T = {seed, dual[seed]}
        changed = True
        while changed:
            changed = False
            for a in list(T):
                for b in list(T):
                    for c in possible[a][b]:
                        if c not in T:
                            T.add(c)
                            T.add(dual[c])
                            changed = True
        if len(T) == r:
            continue
        key = frozenset(T)
        if key in seen:
            continue
        seen.add(key)
        dimT = sum(dims[x] ** 2 for x in T)
        if N % dimT:
            names = ",".join(prob.name(x) for x in sorted(T))
            return f"subring: {{{names}}} is closed with dimension {dimT}, which does not divide {N}"
    return ""
