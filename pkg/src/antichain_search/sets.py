"""Subsets of [n] as bitmasks, set families, antichains and covers.

Element ``i`` of the ground set ``[n] = {1, ..., n}`` is stored in bit
``i - 1``.  The public operations take :class:`Subset` and :class:`Family`
values; the ``*_masks`` helpers work on raw integers and are what the
exhaustive searches elsewhere in the package call in their inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ContractError, DimensionError, ResourceError

MAX_N = 20
ENUMERATION_MAX_N = 8


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_elements(mask: int) -> list[int]:
    """1-based elements of ``mask`` in ascending order."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def elements_mask(n: int, elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
            raise ContractError(f"element {e!r} is not in [1, {n}]")
        mask |= 1 << (e - 1)
    return mask


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_N:
        raise ContractError(f"ground-set size must be an integer in [1, {MAX_N}], got {n!r}")


@lru_cache(maxsize=None)
def masks_by_popcount(n: int) -> tuple[tuple[int, ...], ...]:
    """All masks over [n], bucketed by popcount, ascending inside each bucket."""
    buckets: list[list[int]] = [[] for _ in range(n + 1)]
    for m in range(1 << n):
        buckets[m.bit_count()].append(m)
    return tuple(tuple(b) for b in buckets)


@dataclass(frozen=True)
class Subset:
    """A subset of [n] stored as an n-bit mask."""

    n: int
    bits: int

    def __post_init__(self):
        _check_n(self.n)
        if not isinstance(self.bits, int) or self.bits < 0 or self.bits >> self.n:
            raise DimensionError(f"mask {self.bits!r} does not fit in {self.n} bits")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> Subset:
        _check_n(n)
        return cls(n, elements_mask(n, elements))

    @classmethod
    def full(cls, n: int) -> Subset:
        return cls(n, full_mask(n))

    @classmethod
    def empty(cls, n: int) -> Subset:
        return cls(n, 0)

    @property
    def elements(self) -> list[int]:
        return mask_elements(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.bits >> (element - 1) & 1)

    def _same_n(self, other: Subset) -> None:
        if not isinstance(other, Subset):
            raise TypeError(f"expected Subset, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"ground sets differ: n={self.n} vs n={other.n}")

    def __or__(self, other: Subset) -> Subset:
        self._same_n(other)
        return Subset(self.n, self.bits | other.bits)

    def __and__(self, other: Subset) -> Subset:
        self._same_n(other)
        return Subset(self.n, self.bits & other.bits)

    def __sub__(self, other: Subset) -> Subset:
        self._same_n(other)
        return Subset(self.n, self.bits & ~other.bits)

    def complement(self) -> Subset:
        return Subset(self.n, full_mask(self.n) & ~self.bits)

    def add(self, element: int) -> Subset:
        return Subset(self.n, self.bits | elements_mask(self.n, [element]))

    def remove(self, element: int) -> Subset:
        return Subset(self.n, self.bits & ~elements_mask(self.n, [element]))

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


class Family:
    """An ordered, duplicate-free collection of subsets of [n]."""

    __slots__ = ("n", "masks")

    def __init__(self, n: int, masks: Iterable[int] = ()):
        _check_n(n)
        masks = tuple(masks)
        limit = 1 << n
        for m in masks:
            if not isinstance(m, int) or isinstance(m, bool) or not 0 <= m < limit:
                raise DimensionError(f"mask {m!r} does not fit in {n} bits")
        if len(set(masks)) != len(masks):
            raise ContractError("family members must be distinct")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "masks", masks)
        self._validate()

    def _validate(self) -> None:
        pass

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]]):
        _check_n(n)
        return cls(n, [elements_mask(n, s) for s in sets])

    @classmethod
    def from_subsets(cls, n: int, subsets: Iterable[Subset]):
        masks = []
        for s in subsets:
            if s.n != n:
                raise DimensionError(f"subset over n={s.n} in family over n={n}")
            masks.append(s.bits)
        return cls(n, masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return (Subset(self.n, m) for m in self.masks)

    def __getitem__(self, i: int) -> Subset:
        return Subset(self.n, self.masks[i])

    def __contains__(self, item) -> bool:
        if isinstance(item, Subset):
            return item.n == self.n and item.bits in self.masks
        return item in self.masks

    def __eq__(self, other) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        body = ", ".join(repr(s) for s in self)
        return f"{type(self).__name__}(n={self.n}, [{body}])"

    def canonical(self):
        """Same members, ascending by mask value."""
        return type(self)(self.n, sorted(self.masks))

    def same_members(self, other: Family) -> bool:
        return self.n == other.n and set(self.masks) == set(other.masks)

    def as_lists(self) -> list[list[int]]:
        return [mask_elements(m) for m in self.masks]

    def to_json(self) -> dict:
        return {"n": self.n, "sets": self.as_lists()}

    @classmethod
    def from_json(cls, obj: dict):
        try:
            n, sets = obj["n"], obj["sets"]
        except (KeyError, TypeError) as exc:
            raise ContractError(f"family JSON needs 'n' and 'sets': {obj!r}") from exc
        return cls.of(n, sets)


class Antichain(Family):
    """A family whose members are pairwise incomparable."""

    __slots__ = ()

    def _validate(self) -> None:
        if not masks_are_antichain(self.masks):
            raise ContractError(f"members are not pairwise incomparable: {self.as_lists()}")


# mask-level kernels


def masks_are_antichain(masks: Sequence[int]) -> bool:
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            c = a & b
            if c == a or c == b:
                return False
    return True


def minimal_masks(masks: Iterable[int]) -> list[int]:
    """Members containing no other member as a proper subset, ascending."""
    ms = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in ms:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return sorted(kept)


def minimal_cover_masks(masks: Sequence[int], n: int) -> list[int]:
    """Minimal covers of a nonempty family, ascending by mask value.

    Candidates are scanned by popcount then value; a cover is kept unless it
    contains an already-kept cover.  Every element of a minimal cover needs a
    member it alone hits, so popcounts above ``len(masks)`` are never scanned.
    """
    if any(m == 0 for m in masks):
        return []
    kept: list[int] = []
    buckets = masks_by_popcount(n)
    for size in range(0, min(len(masks), n) + 1):
        for c in buckets[size]:
            if all(c & f for f in masks) and not any(k & c == k for k in kept):
                kept.append(c)
    return sorted(kept)


def antichain_masks(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Every k-antichain over [n] as an ascending mask tuple, lexicographically."""
    size = 1 << n
    incomparable = []
    for a in range(size):
        row = 0
        for b in range(a + 1, size):
            c = a & b
            if c != a and c != b:
                row |= 1 << b
        incomparable.append(row)

    chosen: list[int] = []

    def extend(candidates: int) -> Iterator[tuple[int, ...]]:
        need = k - len(chosen)
        if need == 0:
            yield tuple(chosen)
            return
        while candidates and candidates.bit_count() >= need:
            low = candidates & -candidates
            m = low.bit_length() - 1
            candidates ^= low
            chosen.append(m)
            yield from extend(candidates & incomparable[m])
            chosen.pop()

    yield from extend(full_mask(size))


# public operations


def is_subset(a: Subset, b: Subset) -> bool:
    a._same_n(b)
    return a.bits & b.bits == a.bits


def is_antichain(f: Family) -> bool:
    return masks_are_antichain(f.masks)


def minimal_members(f: Family) -> Antichain:
    return Antichain(f.n, minimal_masks(f.masks))


def complement_family(f: Family) -> Family:
    """Replace every member by its complement, keeping positions."""
    full = full_mask(f.n)
    return type(f)(f.n, [full & ~m for m in f.masks])


def is_cover(a: Subset, f: Family) -> bool:
    if len(f) == 0:
        raise ContractError("cover test against an empty family is vacuous")
    if a.n != f.n:
        raise DimensionError(f"ground sets differ: n={a.n} vs n={f.n}")
    return all(a.bits & m for m in f.masks)


def minimal_covers(f: Family) -> Antichain:
    if len(f) == 0:
        raise ContractError("minimal covers of an empty family are not defined here")
    return Antichain(f.n, minimal_cover_masks(f.masks, f.n))


def enumerate_antichains(n: int, k: int) -> Iterator[Antichain]:
    """Yield every k-member antichain over [n] once, in canonical order."""
    _check_n(n)
    if not isinstance(k, int) or k < 1:
        raise ContractError(f"k must be a positive integer, got {k!r}")
    if n > ENUMERATION_MAX_N:
        raise ResourceError(f"antichain enumeration is capped at n <= {ENUMERATION_MAX_N}, got n={n}")
    for masks in antichain_masks(n, k):
        yield Antichain(n, masks)


@lru_cache(maxsize=None)
def _antichain_count(n: int, k: int) -> int:
    return sum(1 for _ in antichain_masks(n, k))


def random_antichain(n: int, k: int, rng, max_tries: int = 100_000) -> Antichain:
    """Draw a k-antichain over [n] uniformly at random.

    k uniform random subsets are redrawn until they are distinct and pairwise
    incomparable, so every k-antichain is accepted with the same probability.
    When n <= 6 and acceptance is rare, a uniform index into the canonical
    enumeration is used instead.
    """
    _check_n(n)
    if not isinstance(k, int) or k < 1:
        raise ContractError(f"k must be a positive integer, got {k!r}")
    tries = max_tries if n > 6 else min(max_tries, 20_000)
    for _ in range(tries):
        masks = sorted(rng.randrange(1 << n) for _ in range(k))
        if len(set(masks)) == k and masks_are_antichain(masks):
            return Antichain(n, masks)
    if n <= 6:
        total = _antichain_count(n, k)
        if total == 0:
            raise ContractError(f"there is no {k}-antichain over [{n}]")
        pick = rng.randrange(total)
        for i, masks in enumerate(antichain_masks(n, k)):
            if i == pick:
                return Antichain(n, masks)
    raise ResourceError(f"no {k}-antichain over [{n}] found in {max_tries} draws")
