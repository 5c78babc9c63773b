"""Type signatures ``(1,n0; d1,n1; ...; ds,ns)`` of integral fusion categories."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "SignatureError",
    "TypeSignature",
    "parse_signature",
    "render_signature",
    "global_dim",
    "is_frobenius_type",
]


class SignatureError(ValueError):
    """Raised for malformed or invalid type signatures."""


@dataclass(frozen=True, order=True)
class TypeSignature:
    """Counts of simple objects per Frobenius-Perron dimension.

    ``entries`` is a tuple of ``(dim, count)`` pairs; the first pair has
    ``dim == 1`` and its count is the order of the group of invertibles.
    """

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        entries = tuple((int(d), int(n)) for d, n in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise SignatureError("signature has no entries")
        if entries[0][0] != 1:
            raise SignatureError(f"first dimension must be 1, got {entries[0][0]}")
        for (d0, _), (d1, _) in zip(entries, entries[1:]):
            if d1 <= d0:
                raise SignatureError(f"dimensions must be strictly increasing ({d0} then {d1})")
        for d, n in entries:
            if n < 1:
                raise SignatureError(f"count for dimension {d} must be positive, got {n}")
        if len(entries) < 2:
            raise SignatureError("pointed signature (no simple of dimension > 1)")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "TypeSignature":
        return cls(tuple((d, n) for d, n in pairs))

    @property
    def n0(self) -> int:
        return self.entries[0][1]

    @property
    def s(self) -> int:
        """Number of non-invertible dimensions."""
        return len(self.entries) - 1

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.entries)

    @property
    def dims(self) -> tuple[int, ...]:
        """Dimension of every simple, invertibles first, sorted."""
        return tuple(d for d, n in self.entries for _ in range(n))

    @property
    def nontrivial_dims(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.entries[1:])

    def count(self, dim: int) -> int:
        for d, n in self.entries:
            if d == dim:
                return n
        return 0

    @property
    def global_dim(self) -> int:
        return global_dim(self)

    def __str__(self) -> str:
        return render_signature(self)


_PAIR = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*$")


def parse_signature(text: str) -> TypeSignature:
    """Parse ``"(1,2; 2,3; 3,2)"``; whitespace is free, parentheses required."""
    stripped = text.strip()
    if not (stripped.startswith("(") and stripped.endswith(")")):
        raise SignatureError(f"signature must be enclosed in parentheses: {text!r}")
    body = stripped[1:-1]
    if not body.strip():
        raise SignatureError("empty signature")
    pairs = []
    for chunk in body.split(";"):
        m = _PAIR.match(chunk)
        if m is None:
            raise SignatureError(f"malformed entry {chunk.strip()!r} in {text!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
    return TypeSignature(tuple(pairs))


def render_signature(sig: TypeSignature) -> str:
    return "(" + ";".join(f"{d},{n}" for d, n in sig.entries) + ")"


def global_dim(sig: TypeSignature) -> int:
    return sum(n * d * d for d, n in sig.entries)


def is_frobenius_type(sig: TypeSignature, N: int) -> bool:
    """True iff every simple dimension divides ``N``."""
    if global_dim(sig) != N:
        raise SignatureError(f"{render_signature(sig)} has global dimension {global_dim(sig)}, not {N}")
    return all(N % d == 0 for d, _ in sig.entries)
