"""Adaptive strategies for finding a hidden antichain.

Every solver talks to an *asker*: any object with an ``n`` attribute and an
``ask(Subset) -> bool`` method (``OracleState`` or an adversary).
"""

from __future__ import annotations

from itertools import permutations
from math import ceil, log2
from typing import Optional, Sequence

from .errors import ContractError, DimensionError, ResourceError
from .nonadaptive import up_signatures
from .sets import Antichain, Subset, antichain_masks, full_mask, minimal_cover_masks

SOLVE_MAX_N = 12
EXACT_F_MAX_N = 4
EXACT_F_BUDGET = 2_000_000


class CachedAsker:
    """Forwards each distinct query once; repeats are served from memory."""

    def __init__(self, asker):
        self.asker = asker
        self.n = asker.n
        self.cache: dict[int, bool] = {}

    def ask(self, q: Subset) -> bool:
        if q.bits not in self.cache:
            self.cache[q.bits] = self.asker.ask(q)
        return self.cache[q.bits]

    def known(self, q: Subset) -> Optional[bool]:
        if q.bits in self.cache:
            return self.cache[q.bits]
        return _logged_answer(self.asker, q)


def _logged_answer(asker, q: Subset) -> Optional[bool]:
    if isinstance(asker, CachedAsker):
        return asker.known(q)
    log = getattr(asker, "log", None)
    return log.lookup(q) if log is not None else None


def _shrink(asker, start: int, keep: int) -> tuple[int, bool]:
    """Drop elements of ``start`` outside ``keep``, highest label first.

    Each step asks the current set minus one element; YES drops it.
    Returns the final set and whether any YES was seen.
    """
    n = asker.n
    current = start
    saw_yes = False
    for i in reversed(range(n)):
        bit = 1 << i
        if not start & bit or keep & bit:
            continue
        if asker.ask(Subset(n, current & ~bit)):
            current &= ~bit
            saw_yes = True
    return current, saw_yes


def gainanov_find_one(oracle, a: Subset) -> Subset:
    """Find a hidden member inside ``a`` with exactly ``|a|`` queries.

    ``a`` must be known to contain a member: it is ``[n]`` or it was
    answered YES earlier.
    """
    if a.n != oracle.n:
        raise DimensionError(f"start set over n={a.n}, oracle over n={oracle.n}")
    found, saw_yes = _shrink(oracle, a.bits, 0)
    if not saw_yes and a.bits != full_mask(a.n) and not _logged_answer(oracle, a):
        raise ContractError(f"{a!r} was never certified to contain a hidden member")
    return Subset(a.n, found)


def solve_traced(oracle, n: int, k: int) -> tuple[Antichain, list[int]]:
    """Run the minimal-cover extension solver.

    Returns the recovered antichain and the size of ``MC(found so far)`` in
    each extension round.
    """
    if oracle.n != n:
        raise DimensionError(f"oracle over n={oracle.n}, solver asked for n={n}")
    if k < 1:
        raise ContractError(f"k must be positive, got {k}")
    if n > SOLVE_MAX_N:
        raise ResourceError(f"solve is capped at n <= {SOLVE_MAX_N}, got n={n}")
    asker = CachedAsker(oracle)
    full = full_mask(n)
    found = [gainanov_find_one(asker, Subset.full(n)).bits]
    mc_sizes = []
    while len(found) < k:
        covers = minimal_cover_masks(found, n)
        mc_sizes.append(len(covers))
        # a complement of a minimal cover contains no found member
        hit = next((c for c in sorted(full & ~m for m in covers) if asker.ask(Subset(n, c))), None)
        if hit is None:
            raise ContractError(f"answers are consistent with only {len(found)} members, expected k={k}")
        member = gainanov_find_one(asker, Subset(n, hit)).bits
        if member in found:
            raise ContractError("oracle answers are inconsistent with any antichain")
        found.append(member)
    return Antichain(n, sorted(found)), mc_sizes


def solve(oracle, n: int, k: int) -> Antichain:
    return solve_traced(oracle, n, k)[0]


def realized_bound(n: int, mc_sizes: Sequence[int]) -> int:
    """Query budget of a solve run given the cover counts it actually met."""
    return n + sum(size + n for size in mc_sizes)


def solve_k2(oracle, n: int) -> Antichain:
    """Find both members of a hidden 2-antichain in at most 2n queries."""
    if oracle.n != n:
        raise DimensionError(f"oracle over n={oracle.n}, solver asked for n={n}")
    asker = CachedAsker(oracle)
    full = full_mask(n)
    first = gainanov_find_one(asker, Subset.full(n)).bits
    if first == 0:
        raise ContractError("the empty set cannot belong to a 2-member antichain")

    confirmed = 0  # elements of the first member also in the second
    start = None
    for i in range(n):
        bit = 1 << i
        if not first & bit:
            continue
        if asker.ask(Subset(n, full & ~bit)):
            start = full & ~bit
            break
        confirmed |= bit
    if start is None:
        raise ContractError("second member would contain the first; not a 2-antichain")
    second, _ = _shrink(asker, start, confirmed)
    if second == first:
        raise ContractError("oracle answers are inconsistent with any 2-antichain")
    return Antichain(n, sorted((first, second)))


def theorem3_bound(n: int, k: int, g_values: Sequence[int]) -> int:
    """sum(g(n, m) for m < k) + k * n."""
    if len(g_values) != k - 1:
        raise ContractError(f"need g(n, m) for m = 1..{k - 1}, got {len(g_values)} values")
    return sum(g_values) + k * n


def information_bound(count: int) -> int:
    """ceil(log2(count)): fewest yes/no answers separating ``count`` outcomes."""
    return 0 if count <= 1 else ceil(log2(count))


class _Minimax:
    """Exact worst-case query count over sets of consistent antichains.

    States are bitsets over the list of candidate antichains.  ``value``
    returns the exact value when it is below ``beta`` and otherwise some
    lower bound that is at least ``beta``.
    """

    def __init__(self, n: int, k: int, budget: int, symmetry: bool):
        self.n = n
        self.budget = budget
        self.nodes = 0
        antichains = list(antichain_masks(n, k))
        self.count = len(antichains)
        table = up_signatures(list(range(1 << n)), n)
        yes = [0] * (1 << n)
        for idx, masks in enumerate(antichains):
            sig = 0
            for m in masks:
                sig |= table[m]
            for q in range(1 << n):
                if sig >> q & 1:
                    yes[q] |= 1 << idx
        self.all = (1 << self.count) - 1
        self.moves = sorted({y for y in yes if 0 != y != self.all})
        self.exact: dict[int, int] = {}
        self.lower: dict[int, int] = {}
        self.perm_maps = self._perm_maps(antichains) if symmetry else None

    def _perm_maps(self, antichains):
        index = {masks: i for i, masks in enumerate(antichains)}
        maps = []
        for perm in permutations(range(self.n)):
            def image(m):
                out = 0
                for i in range(self.n):
                    if m >> i & 1:
                        out |= 1 << perm[i]
                return out
            maps.append([index[tuple(sorted(image(m) for m in masks))] for masks in antichains])
        return maps

    def key(self, state: int) -> int:
        if self.perm_maps is None:
            return state
        best = None
        for mapping in self.perm_maps:
            img = 0
            s = state
            while s:
                low = s & -s
                img |= 1 << mapping[low.bit_length() - 1]
                s ^= low
            if best is None or img < best:
                best = img
        return best

    def value(self, state: int, beta: int) -> int:
        size = state.bit_count()
        if size <= 1:
            return 0
        key = self.key(state)
        if key in self.exact:
            return self.exact[key]
        floor = max(information_bound(size), self.lower.get(key, 0))
        if floor >= beta:
            return floor
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceError(f"exact_f node budget {self.budget} exhausted")

        splits = []
        for y in self.moves:
            yes = state & y
            if yes and yes != state:
                no = state ^ yes
                splits.append((max(yes.bit_count(), no.bit_count()), yes, no))
        splits.sort()

        best = beta
        for _, yes, no in splits:
            if 1 + max(information_bound(yes.bit_count()), information_bound(no.bit_count())) >= best:
                continue
            v_yes = self.value(yes, best - 1)
            if 1 + v_yes >= best:
                continue
            v_no = self.value(no, best - 1)
            if 1 + v_no >= best:
                continue
            best = 1 + max(v_yes, v_no)
            if best == floor:
                break
        if best < beta:
            self.exact[key] = best
            return best
        self.lower[key] = beta
        return beta


def exact_f(n: int, k: int, budget: int = EXACT_F_BUDGET, symmetry: bool = False) -> int:
    """Worst-case optimal adaptive query count, by memoized minimax.

    ``symmetry`` memoizes states up to relabelling of the ground set.
    """
    if n > EXACT_F_MAX_N:
        raise ResourceError(f"exact_f is capped at n <= {EXACT_F_MAX_N}, got n={n}")
    if k < 1:
        raise ContractError(f"k must be positive, got {k}")
    game = _Minimax(n, k, budget, symmetry)
    if game.count <= 1:
        return 0
    try:
        return game.value(game.all, game.count)
    except ResourceError as exc:
        raise ResourceError(
            str(exc),
            lower=information_bound(game.count),
            upper=game.count - 1,
            nodes=game.nodes,
        ) from None
