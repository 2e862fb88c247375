"""Truthful answering of superset queries, plus the brute-force referee.

A query ``q`` is answered YES exactly when ``q`` contains at least one
member of the hidden antichain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import ContractError, DimensionError, ResourceError
from .sets import Antichain, Family, Subset, antichain_masks

REFEREE_MAX_N = 6


def answer_masks(hidden: Iterable[int], q: int) -> bool:
    return any(h & q == h for h in hidden)


def answer_query(s: Family, q: Subset) -> bool:
    if q.n != s.n:
        raise DimensionError(f"query over n={q.n} against antichain over n={s.n}")
    return answer_masks(s.masks, q.bits)


@dataclass
class Transcript:
    n: int
    entries: list[tuple[Subset, bool]] = field(default_factory=list)

    def append(self, q: Subset, answer: bool) -> None:
        if q.n != self.n:
            raise DimensionError(f"query over n={q.n} in transcript over n={self.n}")
        self.entries.append((q, bool(answer)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def lookup(self, q: Subset) -> Optional[bool]:
        """Most recent answer recorded for ``q``, if any."""
        for asked, answer in reversed(self.entries):
            if asked.bits == q.bits:
                return answer
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [{"query": q.elements, "answer": a} for q, a in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Transcript:
        try:
            n = obj["n"]
            t = cls(n)
            for e in obj["entries"]:
                t.append(Subset.of(n, e["query"]), bool(e["answer"]))
        except (KeyError, TypeError) as exc:
            raise ContractError(f"malformed transcript JSON: {exc}") from exc
        return t


class OracleState:
    """Holds a hidden antichain and answers queries against it, counting each one."""

    def __init__(self, hidden: Antichain):
        if not isinstance(hidden, Antichain):
            hidden = Antichain(hidden.n, hidden.masks)
        self.hidden = hidden
        self.n = hidden.n
        self.log = Transcript(hidden.n)

    @property
    def count(self) -> int:
        return len(self.log)

    def ask(self, q: Subset) -> bool:
        answer = answer_query(self.hidden, q)
        self.log.append(q, answer)
        return answer

    def __repr__(self) -> str:
        return f"OracleState(hidden={self.hidden!r}, count={self.count})"


def consistent_antichains(t: Transcript, k: int) -> list[Antichain]:
    """Every k-antichain over [t.n] that reproduces all answers in ``t``."""
    if t.n > REFEREE_MAX_N:
        raise ResourceError(f"brute-force referee is capped at n <= {REFEREE_MAX_N}, got n={t.n}")
    if k < 1:
        raise ContractError(f"k must be positive, got {k}")
    checks = [(q.bits, a) for q, a in t.entries]
    return [
        Antichain(t.n, masks)
        for masks in antichain_masks(t.n, k)
        if all(answer_masks(masks, q) == a for q, a in checks)
    ]

