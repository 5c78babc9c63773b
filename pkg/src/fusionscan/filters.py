"""Arithmetic exclusion rules on type signatures.

Each rule is a pure function of ``(signature, N)``. When a rule fires it
returns the list of atomic facts it used (``"60∤84"``, ``"n0=1"``, ...);
these are joined into the verdict detail and can be re-checked on their own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, isqrt
from typing import Callable, Iterable, Sequence

from .signature import TypeSignature, is_frobenius_type, render_signature

__all__ = [
    "FilterRule",
    "FilterVerdict",
    "SignatureRecord",
    "FilterReport",
    "RuleScopeError",
    "RULES",
    "DEFAULT_RULE_IDS",
    "PROP_RULE_IDS",
    "get_rule",
    "apply_rule",
    "run_filters",
    "rule_catalog_json",
]


class RuleScopeError(ValueError):
    """A dimension-specific rule was applied outside its scope."""


Facts = list[str]
Predicate = Callable[[TypeSignature, int], "Facts | None"]


@dataclass(frozen=True)
class FilterRule:
    id: str
    citation: str
    condition: str
    predicate: Predicate = field(repr=False, compare=False)
    scope: frozenset[int] | None = None  # None: every N
    opt_in: bool = False

    def admits(self, N: int) -> bool:
        return self.scope is None or N in self.scope

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "citation": self.citation,
            "condition": self.condition,
            "scope": "universal" if self.scope is None else sorted(self.scope),
            "opt_in": self.opt_in,
        }


@dataclass(frozen=True)
class FilterVerdict:
    rule_id: str
    fired: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"rule": self.rule_id, "fired": self.fired, "detail": self.detail}


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, isqrt(n) + 1))


def _div(a: int, b: int) -> bool:
    return b % a == 0


def _nd(a: int, b: int) -> str:
    return f"{a}∤{b}"


def _counts(sig: TypeSignature) -> tuple[int, int, int, int, int]:
    return sig.n0, sig.count(2), sig.count(3), sig.count(4), sig.count(5)


def _r1(sig, N):
    n0, m2, *_ = _counts(sig)
    if n0 == 1 and m2 >= 1 and not _div(60, N):
        return ["n0=1", f"m2={m2}", _nd(60, N)]


def _r2(sig, N):
    n0, m2, *_ = _counts(sig)
    if n0 % 4 == 0 and m2 % 2 == 1 and not _div(8, N):
        return [f"4|{n0}", f"m2={m2} odd", _nd(8, N)]


def _r3(sig, N):
    n0 = sig.n0
    if not _div(n0, N):
        return [_nd(n0, N)]
    for d, n in sig.entries[1:]:
        if not _div(n0, n * d * d):
            return [_nd(n0, n * d * d) + f" (n·d² at d={d})"]


def _r4(sig, N):
    g = reduce(gcd, sig.nontrivial_dims)
    if not _div(g, sig.n0):
        return [f"gcd(d)={g}", _nd(g, sig.n0)]


def _r5(sig, N):
    if sig.n0 == 1 and sig.s <= 2:
        return ["n0=1", f"s={sig.s}≤2"]


def _r6(sig, N):
    n0, m2, *_ = _counts(sig)
    k = 2 + 4 * m2
    if n0 == 2 and m2 >= 1 and not _div(24, N) and not _div(60, N) and not _div(k, N):
        return ["n0=2", f"m2={m2}", _nd(24, N), _nd(60, N), _nd(k, N)]


def _r7(sig, N):
    n0, m2, m3, m4, m5 = _counts(sig)
    k = n0 + 4 * m2
    if m2 >= 1 and m4 == 0 and not _div(12, N) and not _div(k, N):
        return [f"m2={m2}", "m4=0", _nd(12, N), _nd(k, N)]


def _r8(sig, N):
    n0, m2, m3, m4, m5 = _counts(sig)
    k = n0 + 4 * m2
    if m2 >= 1 and m3 == 0 and m4 == 0 and sig.s >= 2 and not _div(k, N):
        return [f"m2={m2}", "m3=0", "m4=0", f"s={sig.s}≥2", _nd(k, N)]


def _r9(sig, N):
    n0, m2, m3, m4, m5 = _counts(sig)
    if n0 % 2 == 1 and m2 >= 1 and m3 == 0:
        return [f"n0={n0} odd", f"m2={m2}", "m3=0"]


def _r10(sig, N):
    n0, m2, m3, m4, m5 = _counts(sig)
    if n0 % 2 == 1 and m2 >= 1 and (m4 == 0 or m5 == 0) and not _div(12, N):
        missing = "m4=0" if m4 == 0 else "m5=0"
        return [f"n0={n0} odd", f"m2={m2}", missing, _nd(12, N)]


def _r11(sig, N):
    n0, m2, m3, m4, m5 = _counts(sig)
    if n0 == 1 and m2 >= 1:
        for name, v in (("m3", m3), ("m4", m4), ("m5", m5)):
            if v == 0:
                return ["n0=1", f"m2={m2}", f"{name}=0"]
        if not _div(60, N):
            return ["n0=1", f"m2={m2}", _nd(60, N)]


def _r12(sig, N):
    n0, m2, m3, m4, m5 = _counts(sig)
    if _is_prime(n0) and n0 not in (2, 3) and m2 >= 1 and m4 == 0:
        return [f"n0={n0} prime", f"m2={m2}", "m4=0"]


def _r13(sig, N):
    n0, m2, m3, m4, m5 = _counts(sig)
    if n0 != 2 or m2 < 1:
        return None
    k = 2 + 4 * m2
    if _div(k, N):
        return None
    if m3 == 0:
        reason = ["m3=0"]
    elif not _div(12, N) and m4 == 0:
        reason = [_nd(12, N), "m4=0"]
    elif _is_prime(n0) and not _div(12, N):
        reason = ["n0=2 prime", _nd(12, N)]
    else:
        return None
    return ["n0=2", f"m2={m2}", *reason, _nd(k, N)]


def _r14(sig, N):
    n0, m2, *_ = _counts(sig)
    bad = [d for d, _ in sig.entries if not _div(d, N)]
    if not bad:
        return None
    if n0 == 6:
        return [f"{bad[0]}∤{N}", "n0=6"]
    if n0 == 2 and m2 == 1:
        return [f"{bad[0]}∤{N}", "n0=2", "m2=1"]


def _rf(sig, N):
    bad = [d for d, _ in sig.entries if not _div(d, N)]
    if bad:
        return [_nd(bad[0], N)]


_DEG2 = "a degree-2 simple with trivial stabilizer forces a (1,2;2,1;3,2), (1,3;3,1) or (1,1;3,2;4,1;5,1) subcategory"

RULES: tuple[FilterRule, ...] = (
    FilterRule("R1", _DEG2, "n0=1, m2≥1, 60∤N", _r1),
    FilterRule("R2", "odd number of degree-2 simples with 4 | n0 forces a non-pointed subcategory of dimension 8",
               "4|n0, m2 odd, 8∤N", _r2),
    FilterRule("R3", "|Pic| divides N and n_i·d_i² (stabilizer orders divide d²)", "n0∤N or n0∤n_i·d_i²", _r3),
    FilterRule("R4", "gcd of non-invertible dimensions divides |Pic|", "gcd(d_1..d_s)∤n0", _r4),
    FilterRule("R5", "trivial Pic requires at least three non-invertible dimensions", "n0=1, s≤2", _r5),
    FilterRule("R6", "n0=2 with a degree-2 simple: subcategory of type (1,2;2,m) unless 24 or 60 divides N",
               "n0=2, m2≥1, 24∤N, 60∤N, (2+4m2)∤N", _r6),
    FilterRule("R7", "no degree-4 simples and 12∤N: degree-2 simples span a subcategory (1,n0;2,m)",
               "m2≥1, m4=0, 12∤N, (n0+4m2)∤N", _r7),
    FilterRule("R8", "no degree-3 or degree-4 simples: degree-2 simples span a subcategory (1,n0;2,m)",
               "m2≥1, m3=m4=0, s≥2, (n0+4m2)∤N", _r8),
    FilterRule("R9", "odd |Pic| with degree-2 simples forces a degree-3 simple", "n0 odd, m2≥1, m3=0", _r9),
    FilterRule("R10", "odd |Pic|, degree-2 simples, missing degree 4 or 5: (1,3;3,1) subcategory, so 12|N",
               "n0 odd, m2≥1, (m4=0 or m5=0), 12∤N", _r10),
    FilterRule("R11", "trivial Pic with degree-2 simples: degrees 3, 4, 5 all occur and 60|N",
               "n0=1, m2≥1, (m3=0 or m4=0 or m5=0 or 60∤N)", _r11),
    FilterRule("R12", "prime |Pic| other than 3 with degree-2 simples and no degree-4 simples forces |Pic|=2",
               "n0 prime ∉{2,3}, m2≥1, m4=0", _r12),
    FilterRule("R13", "n0=2 with degree-2 simples: subcategory of dimension 2+4m2 in the listed cases",
               "n0=2, m2≥1, (m3=0 or (12∤N and m4=0) or (n0 prime and 12∤N)), (2+4m2)∤N", _r13),
    FilterRule("R14", "dimension 90 with a dimension-6 subcategory is weakly group-theoretical, hence Frobenius type; "
               "n0=6 gives Pic of order 6, n0=2 and m2=1 gives a (1,2;2,1) subcategory",
               "N=90, not Frobenius type, (n0=6 or (n0=2 and m2=1))", _r14, scope=frozenset({90}), opt_in=True),
)

# marker only; never excludes
RF = FilterRule("RF", "Frobenius type: every simple dimension divides N", "some d_i∤N ⇒ requires-exclusion", _rf)

_BY_ID = {r.id: r for r in RULES + (RF,)}
DEFAULT_RULE_IDS: tuple[str, ...] = tuple(r.id for r in RULES if not r.opt_in)
PROP_RULE_IDS: tuple[str, ...] = tuple(f"R{i}" for i in range(1, 9))


def get_rule(rule_id: str) -> FilterRule:
    try:
        return _BY_ID[rule_id]
    except KeyError:
        raise KeyError(f"unknown rule {rule_id!r}") from None


def apply_rule(rule: FilterRule | str, sig: TypeSignature, N: int) -> FilterVerdict:
    if isinstance(rule, str):
        rule = get_rule(rule)
    if not rule.admits(N):
        raise RuleScopeError(f"rule {rule.id} does not apply to N={N}")
    if sig.global_dim != N:
        raise ValueError(f"{render_signature(sig)} has global dimension {sig.global_dim}, not {N}")
    facts = rule.predicate(sig, N)
    if facts:
        return FilterVerdict(rule.id, True, ", ".join(facts))
    return FilterVerdict(rule.id, False, "")


@dataclass(frozen=True)
class SignatureRecord:
    signature: TypeSignature
    verdicts: tuple[FilterVerdict, ...]
    frobenius: bool

    @property
    def survivor(self) -> bool:
        return not any(v.fired for v in self.verdicts)

    @property
    def fired(self) -> tuple[str, ...]:
        return tuple(v.rule_id for v in self.verdicts if v.fired)

    @property
    def requires_exclusion(self) -> bool:
        return not self.frobenius

    def to_json(self) -> dict:
        return {
            "signature": render_signature(self.signature),
            "frobenius": self.frobenius,
            "markers": [] if self.frobenius else ["requires-exclusion"],
            "fired": list(self.fired),
            "verdicts": [v.to_json() for v in self.verdicts if v.fired],
        }


@dataclass(frozen=True)
class FilterReport:
    N: int
    rule_ids: tuple[str, ...]
    records: tuple[SignatureRecord, ...]

    @property
    def survivors(self) -> list[TypeSignature]:
        return [r.signature for r in self.records if r.survivor]

    def record(self, sig: TypeSignature) -> SignatureRecord:
        for r in self.records:
            if r.signature == sig:
                return r
        raise KeyError(render_signature(sig))


def run_filters(sigs: Iterable[TypeSignature], rules: Sequence[FilterRule | str], N: int) -> FilterReport:
    """Evaluate every rule on every signature; no short-circuiting."""
    resolved = [get_rule(r) if isinstance(r, str) else r for r in rules]
    for rule in resolved:
        if not rule.admits(N):
            raise RuleScopeError(f"rule {rule.id} does not apply to N={N}")
    records = []
    for sig in sorted(sigs):
        verdicts = tuple(apply_rule(rule, sig, N) for rule in resolved)
        records.append(SignatureRecord(sig, verdicts, is_frobenius_type(sig, N)))
    return FilterReport(N, tuple(r.id for r in resolved), tuple(records))


def rule_catalog_json() -> str:
    return json.dumps([r.to_json() for r in RULES + (RF,)], indent=2, ensure_ascii=False)
