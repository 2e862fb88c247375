"""Lower-bound adversaries and confusion-pair certificates."""

from __future__ import annotations

import enum
from itertools import combinations
from typing import Optional

from .combinatorics import antichain_pair_count
from .errors import ContractError, DimensionError, ResourceError, UnsupportedRegimeError
from .nonadaptive import answer_signatures, dense_k_max
from .oracle import REFEREE_MAX_N, Transcript, answer_masks
from .sets import Antichain, Family, Subset, antichain_masks, full_mask, minimal_cover_masks

CONFUSION_MAX_N = 5
THEOREM5_MAX_N = 12


class Strategy(enum.Enum):
    NONADAPTIVE_MISSING_SET = "missing-set"
    THEOREM5_PARTITION = "partition"
    K2_COUNTING = "k2-counting"


def confusion_pair(queries: Family, n: int, k: int) -> Optional[tuple[Antichain, Antichain]]:
    """Two distinct k-antichains that ``queries`` cannot tell apart, if any."""
    if n > CONFUSION_MAX_N:
        raise ResourceError(f"confusion search is capped at n <= {CONFUSION_MAX_N}, got n={n}")
    if queries.n != n:
        raise DimensionError(f"query family over n={queries.n}, expected n={n}")
    seen: dict[int, tuple[int, ...]] = {}
    for sig, masks in answer_signatures(queries.masks, n, k):
        if sig in seen:
            return Antichain(n, seen[sig]), Antichain(n, masks)
        seen[sig] = masks
    return None


# missing-set constructions


def _relabel(mask: int, image: list[int]) -> int:
    """Send bit i of ``mask`` to bit image[i]."""
    out = 0
    for i, j in enumerate(image):
        if mask >> i & 1:
            out |= 1 << j
    return out


def _image(n: int, leading: list[int], trailing: list[int]) -> list[int]:
    """Bit map sending canonical 0.. to ``leading``, canonical ..n-1 to ``trailing``,
    and the remaining canonical positions to the unused bits in ascending order."""
    used = set(leading) | set(trailing)
    middle = [i for i in range(n) if i not in used]
    return leading + middle + trailing


def _sets_with(n: int, size: int, must: int, avoid: int) -> list[int]:
    """All ``size``-subsets of [n] containing ``must`` and disjoint from ``avoid``, ascending."""
    free = [i for i in range(n) if not (must | avoid) >> i & 1]
    extra = size - must.bit_count()
    if extra < 0:
        return []
    out = []
    for combo in combinations(free, extra):
        m = must
        for i in combo:
            m |= 1 << i
        out.append(m)
    return sorted(out)


def _middle_single(n: int, k: int, a0: int) -> tuple[list[int], list[int]]:
    # 1 < k < n, n-k <= |a0| <= n-2
    size = a0.bit_count()
    ell = n - size
    outside = [i for i in range(n) if not a0 >> i & 1]
    w, ws = outside[0], outside[1:]
    x = (a0 & -a0).bit_length() - 1
    base = a0 & ~(1 << x)
    shifted = [base | (1 << wi) for wi in ws]
    grown = a0 | (1 << w)
    taken = set(shifted) | {a0}
    extra = []
    for combo in combinations(range(n), size):
        m = sum(1 << i for i in combo)
        if len(extra) == k - ell:
            break
        if m & grown != m and m not in taken:
            extra.append(m)
    if len(extra) < k - ell:
        raise ContractError(f"not enough {size}-sets outside A0 + w for k={k}")
    rest = shifted + extra
    return [a0] + rest, [grown] + rest


def _middle_pair(n: int, k: int, a0: int, a1: int) -> tuple[list[int], list[int]]:
    # 1 < k < n, two unqueried (n-1)-sets
    full = full_mask(n)
    others = [full & ~(1 << i) for i in range(n)]
    others = sorted(m for m in others if m not in (a0, a1))[: k - 1]
    return [a0] + others, [a1] + others


def _dense_single(n: int, k: int, a0: int) -> tuple[list[int], list[int]]:
    # k >= n, 2 <= |a0| <= n-2; built for A0 = [n - ell] and relabelled
    size = a0.bit_count()
    ell = n - size
    half = n // 2
    image = _image(n, [i for i in range(n) if a0 >> i & 1], [i for i in range(n) if not a0 >> i & 1])
    canon_a0 = full_mask(size)
    top = 1 << (n - 1)  # element n
    one, two = 1, 2  # elements 1 and 2
    pool = _sets_with(n, half, top, one)
    if size >= half:
        # shifts cover A0 + {n-i} for 1 <= i <= ell-2; A0 + {n} is covered by a
        # member of B lying inside it, A0 + {n-ell+1} is the alternative
        inside = [b for b in pool if b & ~(canon_a0 | top) == 0]
        shifts = [(canon_a0 & ~two) | (1 << (n - 1 - i)) for i in range(1, ell - 1)]
        b = [inside[0]] + [m for m in pool if m != inside[0]][: k - ell]
        grown = canon_a0 | (1 << (n - ell))
    else:
        # no member of B fits inside A0 + {n}; shift into n-ell+1 as well and
        # let A0 + {n} be the alternative
        shifts = [(canon_a0 & ~two) | (1 << (n - 1 - i)) for i in range(1, ell)]
        b = pool[: k - ell]
        grown = canon_a0 | top
    if len(b) + len(shifts) + 1 != k:
        raise ContractError(f"not enough half-size sets for k={k} at n={n}")
    first = [canon_a0] + shifts + b
    second = [grown] + shifts + b
    return [_relabel(m, image) for m in first], [_relabel(m, image) for m in second]


def _dense_singletons(n: int, k: int, a0: int, a1: int) -> tuple[list[int], list[int]]:
    # k >= n, {1} and {2} unqueried
    x0, x1 = a0.bit_length() - 1, a1.bit_length() - 1
    image = _image(n, [x0, x1], [])
    b = _sets_with(n, n // 2 - 1, 0, 0b11)[: k - n + 1]
    if len(b) != k - n + 1:
        raise ContractError(f"not enough sets avoiding {{1, 2}} for k={k} at n={n}")
    with_one = [1] + [2 | (1 << i) for i in range(2, n)] + b
    with_two = [2] + [1 | (1 << i) for i in range(2, n)] + b
    return [_relabel(m, image) for m in with_one], [_relabel(m, image) for m in with_two]


def _dense_pair(n: int, k: int, a0: int, a1: int) -> tuple[list[int], list[int]]:
    # k >= n, [n-1] and [n] - {n-1} unqueried
    full = full_mask(n)
    x0 = (full & ~a0).bit_length() - 1
    x1 = (full & ~a1).bit_length() - 1
    image = _image(n, [], [x1, x0])
    last_two = (1 << (n - 1)) | (1 << (n - 2))
    b = _sets_with(n, n // 2 + 1, last_two, 0)[: k - 1]
    if len(b) != k - 1:
        raise ContractError(f"not enough sets containing n-1 and n for k={k} at n={n}")
    first = [full_mask(n - 1)] + b
    second = [full & ~(1 << (n - 2))] + b
    return [_relabel(m, image) for m in first], [_relabel(m, image) for m in second]


def _default_partner(n: int, a0: int) -> int:
    full = full_mask(n)
    if a0.bit_count() == 1:
        return next(1 << i for i in range(n) if 1 << i != a0)
    missing = full & ~a0
    return next(full & ~(1 << i) for i in range(n) if 1 << i != missing)


def missing_set_construction(
    n: int, k: int, a0: Subset, a1: Optional[Subset] = None
) -> tuple[Antichain, Antichain]:
    """Two k-antichains that agree on every query except the unqueried set(s).

    Sizes of ``a0`` select the argument: for ``1 < k < n`` a single set of size
    ``n-k .. n-2`` or a pair of ``(n-1)``-sets; for ``n <= k`` a pair of
    singletons, a single set of size ``2 .. n-2``, or a pair of ``(n-1)``-sets.
    Pair cases use ``a1`` (default: the lowest other set of the same size).
    """
    if a0.n != n or (a1 is not None and a1.n != n):
        raise DimensionError(f"missing sets must live over n={n}")
    if k < 2:
        raise UnsupportedRegimeError("no missing-set argument for k = 1")
    size = len(a0)
    if k < n:
        if n - k <= size <= n - 2:
            first, second = _middle_single(n, k, a0.bits)
        elif size == n - 1:
            first, second = _middle_pair(n, k, a0.bits, _partner(n, a0, a1))
        else:
            raise ContractError(f"|a0| = {size} is outside [{n - k}, {n - 1}] for n={n}, k={k}")
    else:
        if n < 3 or k > dense_k_max(n):
            raise UnsupportedRegimeError(f"no missing-set argument for n={n}, k={k}")
        if size == 1:
            first, second = _dense_singletons(n, k, a0.bits, _partner(n, a0, a1))
        elif 2 <= size <= n - 2:
            first, second = _dense_single(n, k, a0.bits)
        elif size == n - 1:
            first, second = _dense_pair(n, k, a0.bits, _partner(n, a0, a1))
        else:
            raise ContractError(f"|a0| = {size} must lie in [1, {n - 1}] for n={n}, k={k}")
    return Antichain(n, sorted(first)), Antichain(n, sorted(second))


def _partner(n: int, a0: Subset, a1: Optional[Subset]) -> int:
    if a1 is None:
        return _default_partner(n, a0.bits)
    if len(a1) != len(a0) or a1.bits == a0.bits:
        raise ContractError("the second missing set must be a different set of the same size")
    return a1.bits


# adaptive adversaries


class AdversaryState:
    """A lying-but-consistent answerer that delays committing to a hidden antichain.

    ``candidate_queries`` counts only queries that hit a live candidate.
    """

    def __init__(self, n: int, k: int, strategy: Strategy, candidates: Family,
                 revealed: Optional[Antichain] = None):
        self.n = n
        self.k = k
        self.strategy = strategy
        self.revealed = revealed
        self.candidates = candidates
        self.log = Transcript(n)
        self.candidate_queries = 0
        self.committed: Optional[Antichain] = None
        self.consistent: list[tuple[int, ...]] = []
        self.fixed: Optional[tuple[int, ...]] = None
        self.lower_bound = 0

    @property
    def count(self) -> int:
        return len(self.log)

    def ask(self, q: Subset) -> bool:
        if q.n != self.n:
            raise DimensionError(f"query over n={q.n}, adversary over n={self.n}")
        if self.strategy is Strategy.THEOREM5_PARTITION:
            answer = self._partition_answer(q.bits)
        elif self.strategy is Strategy.K2_COUNTING:
            answer = self._counting_answer(q.bits)
        else:
            answer = answer_masks(self.fixed, q.bits)
        self.log.append(q, answer)
        return answer

    def _partition_answer(self, q: int) -> bool:
        if self.committed is not None:
            return answer_masks(self.committed.masks, q)
        if answer_masks(self.revealed.masks, q):
            return True
        if q in self.candidates.masks:
            # at least two candidates are live here; commit once one remains
            self.candidate_queries += 1
            self.candidates = Family(self.n, [c for c in self.candidates.masks if c != q])
            if len(self.candidates) == 1:
                self._commit()
            return False
        # a proper superset of a candidate contains a revealed part, handled above
        return False

    def _commit(self) -> None:
        self.committed = Antichain(self.n, sorted(self.revealed.masks + self.candidates.masks))

    def _counting_answer(self, q: int) -> bool:
        yes = [s for s in self.consistent if answer_masks(s, q)]
        no = [s for s in self.consistent if not answer_masks(s, q)]
        if len(yes) > len(no):
            self.consistent, answer = yes, True
        else:
            self.consistent, answer = no, False
        self.candidates = Family(self.n, sorted({m for s in self.consistent for m in s}))
        if len(self.consistent) == 1:
            self.committed = Antichain(self.n, self.consistent[0])
        return answer


def theorem5_adversary(n: int, k: int) -> AdversaryState:
    """Reveal a balanced partition of [n] into k-1 parts; hide the last member
    among the complements of its minimal covers, answering NO to each one asked
    until a single candidate is left."""
    if not (n > k >= 3):
        raise UnsupportedRegimeError(f"partition adversary needs n > k >= 3, got n={n}, k={k}")
    if n > THEOREM5_MAX_N:
        raise ResourceError(f"partition adversary is capped at n <= {THEOREM5_MAX_N}")
    parts = []
    start = 0
    for i in range(1, k):
        size = (n + i - 1) // (k - 1)
        parts.append(full_mask(size) << start)
        start += size
    full = full_mask(n)
    covers = minimal_cover_masks(parts, n)
    state = AdversaryState(
        n, k, Strategy.THEOREM5_PARTITION,
        candidates=Family(n, sorted(full & ~c for c in covers)),
        revealed=Antichain(n, sorted(parts)),
    )
    state.lower_bound = len(covers) - 1
    return state


def k2_counting_adversary(n: int) -> AdversaryState:
    """Answer every query so that the larger share of 2-antichains stays consistent."""
    if n > REFEREE_MAX_N:
        raise ResourceError(f"counting adversary is capped at n <= {REFEREE_MAX_N}")
    state = AdversaryState(n, 2, Strategy.K2_COUNTING, candidates=Family(n, range(1 << n)))
    state.consistent = list(antichain_masks(n, 2))
    if len(state.consistent) == 1:
        state.committed = Antichain(n, state.consistent[0])
    count = len(state.consistent)
    state.lower_bound = 0 if count <= 1 else (count - 1).bit_length()
    return state


def missing_set_adversary(n: int, k: int, a0: Subset, a1: Optional[Subset] = None) -> AdversaryState:
    """Answer by the first antichain of the missing-set construction.

    Until a missing set is asked, the second antichain stays consistent too.
    """
    first, second = missing_set_construction(n, k, a0, a1)
    state = AdversaryState(
        n, k, Strategy.NONADAPTIVE_MISSING_SET,
        candidates=Family(n, sorted(set(first.masks) ^ set(second.masks))),
    )
    state.fixed = first.masks
    state.consistent = [first.masks, second.masks]
    return state


def k2_first_query_certificate(n: int, size_of_A: int) -> tuple[int, int]:
    """Antichains left by the worse answer to a first query of the given size.

    Returns ``(count, 2^(2n-2))``; ``count`` exceeds the threshold, so at
    least ``2n - 1`` further queries are needed.
    """
    a = antichain_pair_count
    threshold = 2 ** (2 * n - 2)
    if size_of_A == n - 1:
        if n < 6:
            raise UnsupportedRegimeError(f"the size n-1 certificate needs n >= 6, got n={n}")
        count = a(n) - a(n - 1)
    elif 0 <= size_of_A <= n - 2:
        if n < 12:
            raise UnsupportedRegimeError(f"the size <= n-2 certificate needs n >= 12, got n={n}")
        count = a(n) - a(n - 2) - 2 ** (n - 2) * (2**n - 2 ** (n - 2))
    else:
        raise UnsupportedRegimeError(f"no certificate for a first query of size {size_of_A} at n={n}")
    if count <= threshold:
        raise ContractError(f"certificate fails: {count} <= {threshold}")
    return count, threshold

