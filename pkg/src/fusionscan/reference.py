"""Embedded reference lists for N=84 and N=90, loaded from ``data/reference_catalog.txt``."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .signature import TypeSignature, parse_signature

__all__ = ["ReferenceEntry", "ReferenceCatalog", "load_catalog", "parse_catalog", "CatalogMissing"]


class CatalogMissing(KeyError):
    """The catalog has no lists for the requested N."""


@dataclass(frozen=True)
class ReferenceEntry:
    signature: TypeSignature
    killers: tuple[str, ...] = ()  # rule ids and/or "solver"


@dataclass
class ReferenceCatalog:
    final: dict[int, tuple[TypeSignature, ...]] = field(default_factory=dict)
    intermediate: dict[int, tuple[ReferenceEntry, ...]] = field(default_factory=dict)

    def has(self, N: int) -> bool:
        return N in self.final

    def final_set(self, N: int) -> set[TypeSignature]:
        if N not in self.final:
            raise CatalogMissing(f"no reference list for N={N}")
        return set(self.final[N])

    def intermediate_set(self, N: int) -> set[TypeSignature]:
        """Everything the arithmetic rules R1-R8 are expected to leave."""
        return self.final_set(N) | {e.signature for e in self.intermediate.get(N, ())}

    def expected_killers(self, N: int, sig: TypeSignature) -> tuple[str, ...]:
        for e in self.intermediate.get(N, ()):
            if e.signature == sig:
                return e.killers
        return ()


_HEADER = re.compile(r"^#\s*N=(\d+)\s+(final|intermediate)\s*$")


def parse_catalog(text: str) -> ReferenceCatalog:
    cat = ReferenceCatalog()
    final: dict[int, list[TypeSignature]] = {}
    inter: dict[int, list[ReferenceEntry]] = {}
    section: tuple[int, str] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            section = (int(m.group(1)), m.group(2))
            continue
        if line.startswith("#"):
            continue
        if section is None:
            raise ValueError(f"line {lineno}: signature outside a section")
        close = line.index(")") + 1
        sig = parse_signature(line[:close])
        rest = line[close:].strip()
        N, kind = section
        if sig.global_dim != N:
            raise ValueError(f"line {lineno}: {line[:close]} has global dimension {sig.global_dim}, not {N}")
        if kind == "final":
            final.setdefault(N, []).append(sig)
        else:
            inter.setdefault(N, []).append(ReferenceEntry(sig, tuple(rest.split("|")) if rest else ()))
    cat.final = {N: tuple(v) for N, v in final.items()}
    cat.intermediate = {N: tuple(v) for N, v in inter.items()}
    return cat


@lru_cache(maxsize=None)
def load_catalog() -> ReferenceCatalog:
    text = resources.files("fusionscan").joinpath("data/reference_catalog.txt").read_text(encoding="utf-8")
    return parse_catalog(text)
