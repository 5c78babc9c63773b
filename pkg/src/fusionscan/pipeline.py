"""End-to-end classification: enumerate, filter, solve, compare against the reference lists."""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .enumerate import enumerate_signatures
from .filters import DEFAULT_RULE_IDS, PROP_RULE_IDS, FilterVerdict, SignatureRecord, run_filters
from .reference import CatalogMissing, ReferenceCatalog, load_catalog
from .signature import TypeSignature, parse_signature, render_signature
from .solver import SolverConfig, SolverOutcome, Status, solve

__all__ = [
    "ClassifyConfig",
    "ClassificationRecord",
    "ClassificationReport",
    "DiffEntry",
    "ReferenceDiff",
    "classify",
    "diff_reference",
    "render",
    "cache_dir",
    "cache_key",
]

REPORT_SCHEMA = 1
CACHE_ENV = "FUSIONSCAN_CACHE"


@dataclass(frozen=True)
class ClassifyConfig:
    """Knobs for :func:`classify`.

    ``solve_all`` also runs the solver on Frobenius-type survivors with a
    nontrivial Pic group.  ``workers`` never changes the result, so it is left
    out of the fingerprint.
    """

    enable_r14: bool = False
    solve_all: bool = False
    solver: SolverConfig = field(default_factory=SolverConfig)
    workers: int = 1

    def rule_ids(self, N: int) -> tuple[str, ...]:
        if self.enable_r14 and N == 90:
            return DEFAULT_RULE_IDS + ("R14",)
        return DEFAULT_RULE_IDS

    def fingerprint(self, N: int) -> dict[str, Any]:
        return {
            "N": N,
            "rules": list(self.rule_ids(N)),
            "solve_policy": "all" if self.solve_all else "non-frobenius+trivial-pic",
            "solver": self.solver.fingerprint(),
            "version": __version__,
        }


def cache_key(N: int, config: ClassifyConfig) -> str:
    blob = json.dumps(config.fingerprint(N), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "fusionscan"


@dataclass
class ClassificationRecord:
    filters: SignatureRecord
    outcome: SolverOutcome | None = None
    solve_reason: str = ""

    @property
    def signature(self) -> TypeSignature:
        return self.filters.signature

    @property
    def survivor(self) -> bool:
        if not self.filters.survivor:
            return False
        return self.outcome is None or self.outcome.status is not Status.EXCLUDED

    @property
    def flags(self) -> list[str]:
        out = []
        if not self.filters.frobenius:
            out.append("requires-exclusion")
        if self.outcome is not None and self.outcome.status is Status.UNKNOWN:
            out.append("unknown")
        return out

    def killers(self) -> tuple[str, ...]:
        out = self.filters.fired
        if self.outcome is not None and self.outcome.status is Status.EXCLUDED:
            out += ("solver",)
        return out

    def to_json(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "signature": render_signature(self.signature),
            "frobenius": self.filters.frobenius,
            "fired": {v.rule_id: v.detail for v in self.filters.verdicts if v.fired},
            "survivor": self.survivor,
            "flags": self.flags,
        }
        if self.outcome is not None:
            d["solver"] = self.outcome.to_json()
            d["solve_reason"] = self.solve_reason
        return d

    @classmethod
    def from_json(cls, data: dict[str, Any], rule_ids: tuple[str, ...]) -> "ClassificationRecord":
        fired = data["fired"]
        verdicts = tuple(FilterVerdict(r, r in fired, fired.get(r, "")) for r in rule_ids)
        rec = SignatureRecord(parse_signature(data["signature"]), verdicts, data["frobenius"])
        outcome = SolverOutcome.from_json(data["solver"]) if "solver" in data else None
        return cls(rec, outcome, data.get("solve_reason", ""))


@dataclass
class ClassificationReport:
    N: int
    config: dict[str, Any]
    rule_ids: tuple[str, ...]
    records: list[ClassificationRecord]
    discrepancies: list[dict[str, Any]] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def candidates(self) -> int:
        return len(self.records)

    @property
    def survivors(self) -> list[TypeSignature]:
        return [r.signature for r in self.records if r.survivor]

    @property
    def intermediate_survivors(self) -> list[TypeSignature]:
        """Candidates left by the arithmetic rules R1-R8 alone."""
        keep = [r for r in self.rule_ids if r in PROP_RULE_IDS]
        out = []
        for rec in self.records:
            fired = set(rec.filters.fired)
            if not fired.intersection(keep):
                out.append(rec.signature)
        return out

    @property
    def unknown(self) -> list[TypeSignature]:
        return [r.signature for r in self.records if "unknown" in r.flags]

    def record(self, sig: TypeSignature) -> ClassificationRecord:
        for r in self.records:
            if r.signature == sig:
                return r
        raise KeyError(render_signature(sig))

    def stats(self) -> dict[str, int]:
        solved = [r.outcome for r in self.records if r.outcome is not None]
        return {
            "candidates": self.candidates,
            "filter_survivors": sum(r.filters.survivor for r in self.records),
            "intermediate_survivors": len(self.intermediate_survivors),
            "solved": len(solved),
            "solver_nodes": sum(o.nodes_visited for o in solved),
            "survivors": len(self.survivors),
            "unknown": len(self.unknown),
        }

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "N": self.N,
            "config": self.config,
            "rules": list(self.rule_ids),
            "stats": self.stats(),
            "survivors": [render_signature(s) for s in self.survivors],
            "intermediate_survivors": [render_signature(s) for s in self.intermediate_survivors],
            "records": [r.to_json() for r in self.records],
            "discrepancies": self.discrepancies,
            "timing": self.timing,
        }

    def dumps(self, mask_timing: bool = False) -> str:
        data = self.to_json()
        if mask_timing:
            data["timing"] = {}
        return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "ClassificationReport":
        if data.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        rule_ids = tuple(data["rules"])
        return cls(
            N=data["N"],
            config=data["config"],
            rule_ids=rule_ids,
            records=[ClassificationRecord.from_json(r, rule_ids) for r in data["records"]],
            discrepancies=data.get("discrepancies", []),
            timing=data.get("timing", {}),
        )

    @classmethod
    def loads(cls, text: str) -> "ClassificationReport":
        return cls.from_json(json.loads(text))


def _solve_reason(rec: SignatureRecord, solve_all: bool) -> str:
    if not rec.survivor:
        return ""
    if not rec.frobenius:
        return "non-frobenius"
    if rec.signature.n0 == 1:
        return "trivial-pic"
    return "solve-all" if solve_all else ""


def _solve_one(args: tuple[TypeSignature, SolverConfig]) -> SolverOutcome:
    return solve(*args)


def classify(
    N: int,
    config: ClassifyConfig | None = None,
    *,
    cache: str | os.PathLike | None | bool = None,
    catalog: ReferenceCatalog | None = None,
) -> ClassificationReport:
    """Run the full pipeline for global dimension ``N``.

    ``cache=None`` or ``False`` disables caching; ``True`` uses the default
    directory (``$FUSIONSCAN_CACHE`` if set); a path uses that directory.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    config = config or ClassifyConfig()
    path = None
    if cache is not None and cache is not False:
        path = cache_dir(None if cache is True else cache) / f"classify-{N}-{cache_key(N, config)}.json"
        if path.is_file():
            return ClassificationReport.loads(path.read_text(encoding="utf-8"))

    t0 = time.perf_counter()
    sigs = enumerate_signatures(N)
    t1 = time.perf_counter()
    rule_ids = config.rule_ids(N)
    freport = run_filters(sigs, rule_ids, N)
    t2 = time.perf_counter()

    records = [ClassificationRecord(rec, None, _solve_reason(rec, config.solve_all)) for rec in freport.records]
    todo = [r for r in records if r.solve_reason]
    jobs = [(r.signature, config.solver) for r in todo]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            outcomes = list(pool.map(_solve_one, jobs))
    else:
        outcomes = [_solve_one(j) for j in jobs]
    for rec, out in zip(todo, outcomes):
        rec.outcome = out
    t3 = time.perf_counter()

    report = ClassificationReport(
        N=N,
        config=config.fingerprint(N),
        rule_ids=rule_ids,
        records=records,
        timing={
            "enumerate_s": round(t1 - t0, 3),
            "filter_s": round(t2 - t1, 3),
            "solve_s": round(t3 - t2, 3),
        },
    )
    catalog = catalog or load_catalog()
    if catalog.has(N):
        report.discrepancies = [e.to_json() for e in diff_reference(report, catalog).entries]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(report.dumps(), encoding="utf-8")
        tmp.replace(path)
    return report


@dataclass(frozen=True)
class DiffEntry:
    kind: str  # missing | extra | intermediate-missing | intermediate-extra | attribution
    signature: TypeSignature
    expected: tuple[str, ...] = ()
    actual: tuple[str, ...] = ()

    @property
    def binding(self) -> bool:
        return self.kind in ("missing", "extra")

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "signature": render_signature(self.signature),
            "expected_killer": list(self.expected),
            "actual_killer": list(self.actual),
            "binding": self.binding,
        }

    def __str__(self) -> str:
        s = f"{self.kind:<20} {render_signature(self.signature)}"
        if self.expected:
            s += f"  expected: {'|'.join(self.expected)}"
        if self.actual or self.kind == "attribution":
            s += f"  actual: {'+'.join(self.actual) or 'none'}"
        return s


@dataclass
class ReferenceDiff:
    N: int
    entries: list[DiffEntry]

    @property
    def binding(self) -> list[DiffEntry]:
        return [e for e in self.entries if e.binding]

    @property
    def informational(self) -> list[DiffEntry]:
        return [e for e in self.entries if not e.binding]

    @property
    def empty(self) -> bool:
        """No missing or extra survivors (informational entries allowed)."""
        return not self.binding

    def to_json(self) -> dict[str, Any]:
        return {"N": self.N, "entries": [e.to_json() for e in self.entries]}


def diff_reference(report: ClassificationReport, catalog: ReferenceCatalog | None = None) -> ReferenceDiff:
    catalog = catalog or load_catalog()
    N = report.N
    if not catalog.has(N):
        raise CatalogMissing(f"no reference list for N={N}")
    expected = catalog.final_set(N)
    got = set(report.survivors)
    by_sig = {r.signature: r for r in report.records}
    entries: list[DiffEntry] = []

    def actual(sig: TypeSignature) -> tuple[str, ...]:
        rec = by_sig.get(sig)
        return rec.killers() if rec is not None else ("not-enumerated",)

    for sig in sorted(expected - got):
        entries.append(DiffEntry("missing", sig, (), actual(sig)))
    for sig in sorted(got - expected):
        entries.append(DiffEntry("extra", sig, catalog.expected_killers(N, sig), ()))

    inter_expected = catalog.intermediate_set(N)
    inter_got = set(report.intermediate_survivors)
    if set(PROP_RULE_IDS) <= set(report.rule_ids):
        for sig in sorted(inter_expected - inter_got):
            entries.append(DiffEntry("intermediate-missing", sig, (), actual(sig)))
        for sig in sorted(inter_got - inter_expected):
            entries.append(DiffEntry("intermediate-extra", sig, (), ()))

    for ref in catalog.intermediate.get(N, ()):
        if ref.signature in got or not ref.killers:
            continue
        act = actual(ref.signature)
        if act and not set(act) & set(ref.killers):
            entries.append(DiffEntry("attribution", ref.signature, ref.killers, act))
    return ReferenceDiff(N, entries)


def render(report: ClassificationReport, fmt: str = "text") -> str:
    if fmt == "json":
        return report.dumps()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    survivors = report.survivors
    lines = [f"# N={report.N}: {len(survivors)} types from {report.candidates} candidates"]
    groups: dict[int, list[TypeSignature]] = {}
    for sig in survivors:
        groups.setdefault(sig.n0, []).append(sig)
    for n0 in sorted(groups):
        lines.append(f"## n0={n0}")
        lines.extend(render_signature(s) for s in groups[n0])
    flagged = [r for r in report.records if r.survivor and r.flags]
    for rec in flagged:
        lines.append(f"! {render_signature(rec.signature)} {' '.join(rec.flags)}")
    return "\n".join(lines) + "\n"
