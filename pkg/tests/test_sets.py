import json
from itertools import combinations
from math import prod

import pytest
from hypothesis import given, strategies as st

from antichain_search.errors import ContractError, DimensionError, ResourceError
from antichain_search.sets import (
    Antichain,
    Family,
    Subset,
    complement_family,
    enumerate_antichains,
    is_antichain,
    is_cover,
    is_subset,
    minimal_covers,
    minimal_members,
    random_antichain,
)


def S(n, *elements):
    return Subset.of(n, elements)


def F(n, *sets):
    return Family.of(n, sets)


def brute_minimal_covers(masks, n):
    def covers(c):
        return all(c & f for f in masks)

    out = []
    for c in range(1 << n):
        if not covers(c):
            continue
        proper = c
        minimal = True
        while proper:
            proper = (proper - 1) & c
            if proper != c and covers(proper):
                minimal = False
                break
        if minimal:
            out.append(c)
    return sorted(out)


def brute_antichains(n, k):
    def incomparable(a, b):
        return a & b not in (a, b)

    return [
        combo for combo in combinations(range(1 << n), k)
        if all(incomparable(a, b) for a, b in combinations(combo, 2))
    ]


class TestSubset:
    def test_of_and_elements(self):
        s = S(5, 3, 1)
        assert s.bits == 0b101
        assert s.elements == [1, 3]
        assert len(s) == 2
        assert 3 in s and 2 not in s

    def test_out_of_range(self):
        with pytest.raises(ContractError):
            S(3, 4)
        with pytest.raises(DimensionError):
            Subset(3, 8)
        with pytest.raises(ContractError):
            Subset(21, 0)

    def test_operators_check_n(self):
        with pytest.raises(DimensionError):
            S(3, 1) | S(4, 1)
        assert (S(4, 1, 2) - S(4, 2)) == S(4, 1)
        assert S(4, 1).complement() == S(4, 2, 3, 4)


class TestIsSubset:
    def test_examples(self):
        assert is_subset(S(3, 1), S(3, 1, 3))
        assert not is_subset(S(3, 1, 2), S(3, 1, 3))
        assert is_subset(S(3), S(3))

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            is_subset(S(3, 1), S(4, 1))


class TestFamily:
    def test_rejects_duplicates(self):
        with pytest.raises(ContractError):
            F(3, [1], [1])

    def test_antichain_validation(self):
        with pytest.raises(ContractError):
            Antichain.of(3, [[1], [1, 2]])
        Antichain.of(3, [[1], [2]])

    def test_json_round_trip(self):
        fam = F(5, [1, 3], [2])
        text = json.dumps(fam.to_json())
        assert json.loads(text) == {"n": 5, "sets": [[1, 3], [2]]}
        assert Family.from_json(json.loads(text)) == fam

    def test_immutable(self):
        fam = F(3, [1])
        with pytest.raises(AttributeError):
            fam.n = 4


class TestIsAntichain:
    def test_examples(self):
        assert is_antichain(F(3, [1], [2]))
        assert not is_antichain(F(3, [1], [1, 2]))
        assert is_antichain(Family(3))


class TestMinimalMembers:
    def test_examples(self):
        assert minimal_members(F(3, [1], [1, 2], [2, 3])).same_members(F(3, [1], [2, 3]))
        assert minimal_members(F(3, [1, 2], [1], [2])).same_members(F(3, [1], [2]))

    def test_fixed_point(self):
        fam = Antichain.of(4, [[1, 2], [3], [2, 4]])
        assert minimal_members(fam).same_members(fam)


class TestComplementFamily:
    def test_examples(self):
        assert complement_family(F(3, [1])) == F(3, [2, 3])
        assert complement_family(F(3, [1, 2], [3])) == F(3, [3], [1, 2])

    def test_involution(self):
        fam = F(4, [1], [2, 3], [], [1, 2, 3, 4])
        assert complement_family(complement_family(fam)) == fam


class TestCovers:
    def test_is_cover_examples(self):
        fam = F(4, [1, 2], [3, 4])
        assert is_cover(S(4, 1, 3), fam)
        assert not is_cover(S(4, 1), fam)
        assert is_cover(Subset.full(4), fam)

    def test_is_cover_empty_family(self):
        with pytest.raises(ContractError):
            is_cover(S(3, 1), Family(3))

    def test_minimal_covers_examples(self):
        assert minimal_covers(F(4, [1, 2], [3, 4])).same_members(
            F(4, [1, 3], [1, 4], [2, 3], [2, 4])
        )
        assert minimal_covers(F(3, [1, 2], [2, 3])).same_members(F(3, [2], [1, 3]))
        assert minimal_covers(F(1, [1])).same_members(F(1, [1]))

    def test_empty_member_has_no_covers(self):
        assert len(minimal_covers(F(3, [], [1]))) == 0

    def test_empty_family_rejected(self):
        with pytest.raises(ContractError):
            minimal_covers(Family(3))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_definition_exhaustively(self, n):
        # every family of up to 3 sets
        for m in (1, 2, 3):
            for fam in combinations(range(1 << n), m):
                got = minimal_covers(Family(n, fam)).masks
                assert list(got) == brute_minimal_covers(fam, n), fam

    @given(st.data())
    def test_matches_definition_random(self, data):
        n = data.draw(st.integers(1, 7))
        masks = data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=5, unique=True))
        assert list(minimal_covers(Family(n, masks)).masks) == brute_minimal_covers(masks, n)

    @given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
    def test_disjoint_cross_product(self, sizes):
        n = sum(sizes)
        masks, start = [], 0
        for s in sizes:
            masks.append(((1 << s) - 1) << start)
            start += s
        assert len(minimal_covers(Family(n, masks))) == prod(sizes)


class TestEnumerateAntichains:
    def test_examples(self):
        assert list(enumerate_antichains(2, 2)) == [Antichain.of(2, [[1], [2]])]
        assert sum(1 for _ in enumerate_antichains(3, 2)) == 9
        assert sum(1 for _ in enumerate_antichains(4, 2)) == 55

    @pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)])
    def test_matches_brute_force_in_order(self, n, k):
        got = [a.masks for a in enumerate_antichains(n, k)]
        assert got == brute_antichains(n, k)

    def test_caps(self):
        with pytest.raises(ResourceError):
            next(enumerate_antichains(9, 2))
        with pytest.raises(ContractError):
            next(enumerate_antichains(3, 0))

    def test_k1_includes_empty_and_full(self):
        singles = [a.masks[0] for a in enumerate_antichains(3, 1)]
        assert singles == list(range(8))


class TestRandomAntichain:
    def test_small_n_is_valid(self):
        import random

        rng = random.Random(3)
        for _ in range(20):
            a = random_antichain(5, 3, rng)
            assert len(a) == 3 and is_antichain(a)

    def test_large_n_rejection(self):
        import random

        a = random_antichain(12, 4, random.Random(0))
        assert len(a) == 4 and is_antichain(a)

    def test_impossible(self):
        import random

        with pytest.raises(ContractError):
            random_antichain(2, 3, random.Random(0))
