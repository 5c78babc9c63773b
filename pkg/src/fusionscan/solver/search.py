"""Depth-first feasibility search for fusion tables realizing a type signature."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

from ..groups import MAX_CATALOG_ORDER, UnsupportedGroupOrder, enumerate_groups
from ..signature import TypeSignature, render_signature
from ..table import DualityAssignment, FusionTable, verify_fusion_table
from .model import CONST, Problem, compile_case
from .propagate import Contradiction, Tracer, closed_subring_violation, propagate
from .space import iter_cases

__all__ = ["Status", "SolverConfig", "SolverOutcome", "solve", "BudgetExhausted"]

log = logging.getLogger(__name__)


class Status(str, enum.Enum):
    EXCLUDED = "Excluded"
    REALIZABLE = "Realizable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SolverConfig:
    node_budget: int = 10_000_000
    max_group_order: int = MAX_CATALOG_ORDER
    max_rank: int = 18
    symmetry_breaking: bool = True
    subring_check: bool = True
    record_trace: bool = False

    def __post_init__(self) -> None:
        if self.node_budget < 1:
            raise ValueError("node_budget must be at least 1")

    def fingerprint(self) -> dict:
        return {
            "node_budget": self.node_budget,
            "max_group_order": self.max_group_order,
            "max_rank": self.max_rank,
            "symmetry_breaking": self.symmetry_breaking,
            "subring_check": self.subring_check,
        }


@dataclass
class SolverOutcome:
    status: Status
    nodes_visited: int
    exhaustive: bool
    cases: int = 0
    model: FusionTable | None = None
    reason: str = ""
    trace: list[str] | None = field(default=None, repr=False)

    def to_json(self, include_model: bool = True) -> dict:
        out = {
            "status": self.status.value,
            "nodes": self.nodes_visited,
            "cases": self.cases,
            "exhaustive": self.exhaustive,
            "reason": self.reason,
        }
        if include_model and self.model is not None:
            out["model"] = self.model.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SolverOutcome":
        model = data.get("model")
        return cls(
            status=Status(data["status"]),
            nodes_visited=data["nodes"],
            exhaustive=data["exhaustive"],
            cases=data.get("cases", 0),
            model=FusionTable.from_json(model) if model else None,
            reason=data.get("reason", ""),
        )


class BudgetExhausted(Exception):
    pass


def _build_table(prob: Problem, values: list[int]) -> FusionTable:
    r = prob.rank
    tensor = []
    for a in range(r):
        plane = []
        for b in range(r):
            row = []
            for c in range(r):
                v, k = prob.entry(a, b, c)
                row.append(k if v == CONST else values[v])
            plane.append(tuple(row))
        tensor.append(tuple(plane))
    return FusionTable(r, prob.dims, prob.case.group, DualityAssignment(prob.dual), tuple(tensor))


class _Search:
    def __init__(self, config: SolverConfig, tracer: Tracer | None) -> None:
        self.config = config
        self.tracer = tracer
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.config.node_budget:
            raise BudgetExhausted

    def run_case(self, prob: Problem) -> FusionTable | None:
        """Return a model or None when this case is refuted."""
        tr = self.tracer
        if prob.infeasible:
            if tr is not None:
                tr.step(prob.infeasible.split(":", 1)[0], prob.infeasible, "contradiction")
            return None
        lo, hi = list(prob.lo0), list(prob.hi0)
        try:
            propagate(prob, lo, hi, tracer=tr, subring=self.config.subring_check)
        except Contradiction:
            return None
        N = prob.sig.global_dim
        # stack of (lo, hi, var, next value)
        stack: list[tuple[list[int], list[int], int, int]] = []
        frame = self._branch(prob, lo, hi)
        if frame is None:
            return self._accept(prob, lo, N)
        stack.append(frame)
        while stack:
            slo, shi, v, val = stack[-1]
            if val > shi[v]:
                stack.pop()
                continue
            stack[-1] = (slo, shi, v, val + 1)
            self.tick()
            lo, hi = list(slo), list(shi)
            lo[v] = hi[v] = val
            if tr is not None:
                tr.step("branch", f"depth {len(stack)}", f"{prob.var_label(v)} := {val}")
            try:
                propagate(prob, lo, hi, queue=list(prob.watch[v]), tracer=tr, subring=self.config.subring_check)
            except Contradiction:
                continue
            frame = self._branch(prob, lo, hi)
            if frame is None:
                model = self._accept(prob, lo, N)
                if model is not None:
                    return model
                continue
            stack.append(frame)
        return None

    @staticmethod
    def _branch(prob: Problem, lo: list[int], hi: list[int]):
        best = -1
        best_size = None
        for v in range(prob.nvars):
            size = hi[v] - lo[v]
            if size and (best_size is None or size < best_size):
                best, best_size = v, size
                if size == 1:
                    break
        if best < 0:
            return None
        return (lo, hi, best, lo[best])

    def _accept(self, prob: Problem, values: list[int], N: int) -> FusionTable | None:
        table = _build_table(prob, values)
        bad = verify_fusion_table(table, max_violations=1)
        if bad:
            log.warning("search produced a table failing verification: %s", bad[0])
            return None
        if self.config.subring_check and closed_subring_violation(prob, values, values, N):
            return None
        return table


def solve(sig: TypeSignature, config: SolverConfig | None = None) -> SolverOutcome:
    """Decide whether some fusion table realizes ``sig``.

    Nodes count one per (group, action, duality) case plus one per value
    tried during branching.
    """
    config = config or SolverConfig()
    tracer = Tracer() if config.record_trace else None
    search = _Search(config, tracer)
    if sig.rank > config.max_rank:
        return SolverOutcome(Status.UNKNOWN, 0, False,
                             reason=f"rank {sig.rank} exceeds max_rank {config.max_rank}",
                             trace=tracer.lines if tracer else None)
    try:
        groups = enumerate_groups(sig.n0, config.max_group_order)
    except UnsupportedGroupOrder as exc:
        return SolverOutcome(Status.UNKNOWN, 0, False, reason=str(exc), trace=tracer.lines if tracer else None)
    cases = 0
    try:
        for group in groups:
            for case in iter_cases(sig, group, config.symmetry_breaking):
                search.tick()
                cases += 1
                if tracer is not None:
                    tracer.step("case", case.label, "start")
                prob = compile_case(sig, case)
                model = search.run_case(prob)
                if model is not None:
                    return SolverOutcome(
                        Status.REALIZABLE, search.nodes, False, cases, model,
                        reason=f"model found in case {case.label}",
                        trace=tracer.lines if tracer else None,
                    )
    except BudgetExhausted:
        return SolverOutcome(
            Status.UNKNOWN, search.nodes - 1, False, cases,
            reason=f"node budget {config.node_budget} exhausted",
            trace=tracer.lines if tracer else None,
        )
    return SolverOutcome(
        Status.EXCLUDED, search.nodes, True, cases,
        reason=f"all {cases} cases refuted" if cases else "no compatible Pic action/duality",
        trace=tracer.lines if tracer else None,
    )
