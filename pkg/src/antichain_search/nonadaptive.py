"""Optimal non-adaptive query families, their decoders, and an injectivity check.

Answer vectors are aligned with the member order of the query family, and
every family built here is in canonical (ascending mask) order.
"""

from __future__ import annotations

from math import comb
from typing import Iterator, Sequence

from .errors import ContractError, DecodeError, DimensionError, ResourceError, UnsupportedRegimeError
from .oracle import REFEREE_MAX_N, answer_masks
from .sets import Antichain, Family, antichain_masks, full_mask, mask_elements, minimal_masks

DECODE_MAX_N = 15

SINGLE = "single"
PAIR_ON_TWO = "pair-on-two"
MIDDLE = "middle"
DENSE = "dense"


def dense_k_max(n: int) -> int:
    """Largest k covered by the 2^n - 4 case (0 when the case is empty)."""
    if n < 3:
        return 0
    return comb(n - 2, n // 2 - 1) + 1


def regime(n: int, k: int) -> str:
    if not isinstance(n, int) or not isinstance(k, int) or n < 1 or k < 1:
        raise UnsupportedRegimeError(f"n and k must be positive integers, got n={n!r}, k={k!r}")
    if k == 1:
        return SINGLE
    if n == 2 and k == 2:
        return PAIR_ON_TWO
    if n >= 3 and k < n:
        return MIDDLE
    if n >= 3 and n <= k <= dense_k_max(n):
        return DENSE
    raise UnsupportedRegimeError(f"no known optimal non-adaptive family for n={n}, k={k}")


def h_formula(n: int, k: int) -> int:
    r = regime(n, k)
    if r == SINGLE:
        return n
    if r == PAIR_ON_TWO:
        return 0
    if r == MIDDLE:
        return sum(comb(n, i) for i in range(n - k, n)) - 1
    return 2**n - 4


def build_family(n: int, k: int) -> Family:
    r = regime(n, k)
    full = full_mask(n)
    top = full_mask(n - 1)  # [n-1]
    if r == SINGLE:
        masks = [full & ~(1 << i) for i in range(n)]
    elif r == PAIR_ON_TWO:
        masks = []
    elif r == MIDDLE:
        masks = [m for m in range(1 << n) if n - k <= m.bit_count() <= n - 1 and m != top]
    else:
        excluded = {0, full, 1 << (n - 1), top}
        masks = [m for m in range(1 << n) if m not in excluded]
    return Family(n, sorted(masks))


def _check_inputs(n, k, queries, answers) -> list[bool]:
    expected = build_family(n, k)
    if queries.n != n:
        raise DimensionError(f"query family over n={queries.n}, expected n={n}")
    if queries.masks != expected.masks:
        raise ContractError(f"decode expects exactly build_family({n}, {k}) in canonical order")
    answers = list(answers)
    if len(answers) != len(queries):
        raise ContractError(f"{len(answers)} answers for {len(queries)} queries")
    if not all(isinstance(a, bool) for a in answers):
        raise ContractError("answers must be booleans")
    return answers


def _decode_single(n, queries, answers) -> list[int]:
    # x is in the hidden set iff [n] - {x} was answered NO
    full = full_mask(n)
    member = 0
    for q, a in zip(queries.masks, answers):
        if not a:
            member |= full & ~q
    return [member]


def _decode_middle(n, k, queries, answers) -> list[int]:
    no_answered = [q for q, a in zip(queries.masks, answers) if not a]
    upper = [m for m in range(1 << n) if not any(m & q == m for q in no_answered)]
    lowest = minimal_masks(upper)
    top = full_mask(n - 1)
    if len(lowest) != k and top in lowest:
        lowest.remove(top)
    return lowest


def _decode_dense(n, k, queries, answers) -> list[int]:
    star = 1 << (n - 1)  # {n}
    top = full_mask(n - 1)  # [n-1]
    ans = dict(zip(queries.masks, answers))
    ans[0] = False  # k > 1 keeps the empty set out of the upfamily

    def is_minimal_yes(m: int) -> bool:
        if not ans[m]:
            return False
        rest = m
        while rest:
            low = rest & -rest
            rest ^= low
            if ans[m ^ low]:
                return False
        return True

    pairs_with_n = [star | (1 << i) for i in range(n - 1)]
    members = [
        m for m in queries.masks
        if not (m.bit_count() == 2 and m & star) and is_minimal_yes(m)
    ]
    decided_pairs = [p for p in pairs_with_n if ans[p] and not ans[p ^ star]]

    if not any(ans[top & ~(1 << i)] for i in range(n - 1)):
        # [n-1] may be a member; then {n} cannot be, so the pairs are decided
        members += decided_pairs
        if len(members) == k - 1:
            members.append(top)
    elif any(not ans[p] for p in pairs_with_n):
        members += decided_pairs
    else:
        # every {i, n} is YES: either {n} is a member or the decided pairs are
        with_star = len(members) + 1
        with_pairs = len(members) + len(decided_pairs)
        if with_star == k and with_pairs != k:
            members.append(star)
        elif with_pairs == k and with_star != k:
            members += decided_pairs
        else:
            raise DecodeError(
                f"{{n}} versus pairs containing n undecidable: "
                f"{with_star} vs {with_pairs} members against k={k}"
            )
    return sorted(members)


def decode(n: int, k: int, queries: Family, answers: Sequence[bool]) -> Antichain:
    """Recover the unique k-antichain behind an answer vector to build_family(n, k)."""
    r = regime(n, k)
    if r in (MIDDLE, DENSE) and n > DECODE_MAX_N:
        raise ResourceError(f"decoding is capped at n <= {DECODE_MAX_N}")
    answers = _check_inputs(n, k, queries, answers)
    if r == SINGLE:
        masks = _decode_single(n, queries, answers)
    elif r == PAIR_ON_TWO:
        masks = [1, 2]
    elif r == MIDDLE:
        masks = _decode_middle(n, k, queries, answers)
    else:
        masks = _decode_dense(n, k, queries, answers)

    if len(masks) != k:
        raise DecodeError(f"answers determine {len(masks)} minimal sets, expected {k}")
    for i, (q, a) in enumerate(zip(queries.masks, answers)):
        if answer_masks(masks, q) != a:
            raise DecodeError(
                f"answer #{i} ({'YES' if a else 'NO'}) to query {mask_elements(q)} "
                f"contradicts decoded sets {[mask_elements(m) for m in masks]}"
            )
    try:
        return Antichain(n, masks)
    except ContractError as exc:
        raise DecodeError(str(exc)) from exc


def up_signatures(query_masks: Sequence[int], n: int) -> list[int]:
    """For each mask m over [n], the bitset of query positions containing m."""
    table = [0] * (1 << n)
    for j, q in enumerate(query_masks):
        bit = 1 << j
        # walk the subsets of q
        s = q
        while True:
            table[s] |= bit
            if s == 0:
                break
            s = (s - 1) & q
    return table


def answer_signatures(query_masks: Sequence[int], n: int, k: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """(answer bitset, antichain masks) for every k-antichain, in canonical order."""
    table = up_signatures(query_masks, n)
    for masks in antichain_masks(n, k):
        sig = 0
        for m in masks:
            sig |= table[m]
        yield sig, masks


def verify_identifying(queries: Family, n: int, k: int) -> bool:
    """True iff no two k-antichains give the same answers to ``queries``."""
    if n > REFEREE_MAX_N:
        raise ResourceError(f"identifying check is capped at n <= {REFEREE_MAX_N}, got n={n}")
    if queries.n != n:
        raise DimensionError(f"query family over n={queries.n}, expected n={n}")
    seen: set[int] = set()
    for sig, _ in answer_signatures(queries.masks, n, k):
        if sig in seen:
            return False
        seen.add(sig)
    return True


def answers_for(hidden: Family, queries: Family) -> list[bool]:
    if hidden.n != queries.n:
        raise DimensionError(f"hidden over n={hidden.n}, queries over n={queries.n}")
    return [answer_masks(hidden.masks, q) for q in queries.masks]
