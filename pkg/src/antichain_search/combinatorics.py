"""Counting kernel: g(n, m), the minimal-cover bound, A(n) and exact h.

``g(n, m)`` is the largest number of minimal covers an m-member family over
[n] can have.  ``exact_h_search`` finds the smallest identifying
non-adaptive family by exhaustion, for n <= 4.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb, prod

from .errors import ContractError, ResourceError, UnsupportedRegimeError
from .nonadaptive import up_signatures
from .sets import Family, antichain_masks, minimal_cover_masks, minimal_masks

G_BRUTEFORCE_BUDGET = 4_000_000
EXACT_H_MAX_N = 4


def g_formula(n: int, m: int) -> int:
    """Minimal covers of a balanced partition of [n] into m parts."""
    if m < 1 or m > n:
        raise ContractError(f"need 1 <= m <= n for a partition into m nonempty parts, got n={n}, m={m}")
    return prod((n + i) // m for i in range(m))


def _families(n: int, m: int, budget: int):
    cost = comb(1 << n, m) * (1 << n)
    if cost > budget:
        raise ResourceError(
            f"g brute force over C(2^{n}, {m}) families needs ~{cost} steps, budget is {budget}"
        )
    return combinations(range(1 << n), m)


def g_bruteforce(n: int, m: int, budget: int = G_BRUTEFORCE_BUDGET) -> tuple[int, Family]:
    """Max of |MC(F)| over all m-member families, with the lexicographically first maximizer."""
    if m < 1:
        raise ContractError(f"m must be positive, got {m}")
    best, witness = -1, None
    for fam in _families(n, m, budget):
        if fam[0] == 0:
            continue  # a family containing the empty set has no covers
        size = len(minimal_cover_masks(fam, n))
        if size > best:
            best, witness = size, fam
    if witness is None:
        # only reachable when every family holds the empty set, i.e. 2^n == m
        witness = next(iter(combinations(range(1 << n), m)))
        best = 0
    return best, Family(n, witness)


def g_maximizers(n: int, m: int, budget: int = G_BRUTEFORCE_BUDGET) -> list[Family]:
    """Every m-member family attaining g(n, m) by brute force."""
    best, out = -1, []
    for fam in _families(n, m, budget):
        if fam[0] == 0:
            continue
        size = len(minimal_cover_masks(fam, n))
        if size > best:
            best, out = size, [fam]
        elif size == best:
            out.append(fam)
    return [Family(n, f) for f in out]


def is_balanced_partition(f: Family) -> bool:
    masks = f.masks
    union = 0
    for a in masks:
        if a == 0 or union & a:
            return False
        union |= a
    sizes = [a.bit_count() for a in masks]
    return union == (1 << f.n) - 1 and max(sizes) - min(sizes) <= 1


def eq1_bound(f: Family) -> int:
    """Upper bound on |MC(f)| for a family with at least one shared element.

    With ``A`` the elements lying in two or more members, ``a = |A|`` and
    ``a_1 >= ... >= a_m`` the member sizes outside ``A``, returns
    ``prod(a_i) + sum_{j=1}^{min(a, m-1)} C(a, j) * prod_{i <= m-j-1} a_i``.
    """
    masks = f.masks
    m = len(masks)
    counts = Counter(i for mask in masks for i in range(f.n) if mask >> i & 1)
    shared = 0
    for i, c in counts.items():
        if c >= 2:
            shared |= 1 << i
    a = shared.bit_count()
    if a == 0:
        raise UnsupportedRegimeError("members are pairwise disjoint; the bound needs a shared element")
    outside = sorted(((mask & ~shared).bit_count() for mask in masks), reverse=True)
    total = prod(outside)
    for j in range(1, min(a, m - 1) + 1):
        total += comb(a, j) * prod(outside[: m - j - 1])
    return total


def antichain_pair_count(n: int) -> int:
    """Number of 2-member antichains over [n]."""
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    return 2 ** (2 * n - 1) - 3**n + 2 ** (n - 1)


def _distinguishers(n: int, k: int) -> tuple[list[int], list[int]]:
    """Informative queries and the minimal pairwise distinguishing sets over them.

    A distinguishing set is a bitset over positions in the informative query
    list; a family identifies every k-antichain iff it meets all of them.
    """
    queries = list(range(1 << n))
    table = up_signatures(queries, n)
    sigs = []
    for masks in antichain_masks(n, k):
        s = 0
        for m in masks:
            s |= table[m]
        sigs.append(s)
    everything = 0
    for s in sigs:
        everything |= s
    common = everything
    for s in sigs:
        common &= s
    informative = [q for q in queries if (everything ^ common) >> q & 1]
    position = {q: i for i, q in enumerate(informative)}

    def reindex(bits: int) -> int:
        out = 0
        for q, i in position.items():
            if bits >> q & 1:
                out |= 1 << i
        return out

    diffs = {reindex(a ^ b) for a, b in combinations(sigs, 2)}
    return informative, minimal_masks(diffs)


def exact_h_search(n: int, k: int) -> int:
    """Smallest identifying non-adaptive family size, searched by ascending size."""
    if n > EXACT_H_MAX_N:
        raise ResourceError(f"exact h search is capped at n <= {EXACT_H_MAX_N}, got n={n}")
    if k < 1:
        raise ContractError(f"k must be positive, got {k}")
    informative, needs = _distinguishers(n, k)
    if not needs:
        return 0  # at most one k-antichain exists
    needs.sort(key=int.bit_count)
    for size in range(1, len(informative) + 1):
        for chosen in combinations(range(len(informative)), size):
            g = 0
            for i in chosen:
                g |= 1 << i
            if all(g & d for d in needs):
                return size
    raise AssertionError("the full informative family always identifies")
