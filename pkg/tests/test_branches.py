"""Branch-family tests: codec, element sets, separators, covers, density."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zfilterlab.branches import (
    BranchError,
    BranchIndex,
    Registry,
    branch_elements,
    branch_member,
    decode_code,
    density_count,
    encode_string,
    find_cover,
    find_separator,
    intersection_exact,
    make_registry,
)

ALL1 = BranchIndex("", "1", 0, "a1")
ALL2 = BranchIndex("", "2", 1, "a2")
ONE_THEN_2 = BranchIndex("1", "2", 2, "m")


def brute_codes_of_branch(branch: BranchIndex, bound: int) -> set[int]:
    """Oracle: scan every code up to the bound and test prefix-ness directly."""
    out = set()
    for n in range(1, bound + 1):
        w = decode_code(n)
        if branch.prefix(len(w)) == w:
            out.add(n)
    return out


words = st.text(alphabet="12", min_size=1, max_size=16)


class TestCodec:
    def test_forced_small_codes(self):
        assert encode_string("1") == 1
        assert encode_string("2") == 2
        assert encode_string("12") == 4
        assert decode_code(1) == "1"
        assert decode_code(6) == "22"
        assert decode_code(7) == "111"

    def test_rejects_bad_input(self):
        with pytest.raises(BranchError):
            encode_string("")
        with pytest.raises(BranchError):
            encode_string("13")
        with pytest.raises(BranchError):
            decode_code(0)

    @given(words)
    def test_word_round_trip(self, w):
        assert decode_code(encode_string(w)) == w

    def test_code_round_trip_range(self):
        for n in range(1, 5000):
            assert encode_string(decode_code(n)) == n

    def test_length_monotone(self):
        # codes of length-n words fill [2^n - 1, 2^(n+1) - 2]
        for n in range(1, 7):
            codes = sorted(
                encode_string("".join(w))
                for w in itertools.product("12", repeat=n)
            )
            assert codes == list(range(2**n - 1, 2 ** (n + 1) - 1))


class TestBranchIndex:
    def test_canonical_equality(self):
        assert BranchIndex("1", "1", 0) == ALL1
        assert BranchIndex("12", "2", 0) == ONE_THEN_2
        assert BranchIndex("1", "21", 0) == BranchIndex("", "12", 0)
        assert ALL1 != ALL2

    def test_period_must_be_nonempty(self):
        with pytest.raises(BranchError):
            BranchIndex("1", "", 0)

    @given(st.text(alphabet="12", max_size=5), st.text(alphabet="12", min_size=1, max_size=4))
    def test_canonicalization_preserves_word(self, pre, period):
        raw_prefix = (pre + period * 40)[:30]
        assert BranchIndex(pre, period, 0).prefix(30) == raw_prefix

    def test_member_examples(self):
        assert branch_member(ALL1, 7)
        assert not branch_member(ALL1, 2)
        # derived: decode(4) = "12" is a prefix of 1222...
        assert decode_code(4) == "12"
        assert branch_member(ONE_THEN_2, 4)

    def test_elements_examples(self):
        assert branch_elements(ALL1, 4) == [1, 3, 7, 15]
        assert branch_elements(ALL2, 3) == [2, 6, 14]
        assert branch_elements(ONE_THEN_2, 0) == []

    def test_elements_match_brute_force(self):
        for b in (ALL1, ALL2, ONE_THEN_2, BranchIndex("221", "12", 0)):
            got = set(b.elements_upto(2**10))
            assert got == brute_codes_of_branch(b, 2**10)


class TestIntersection:
    def test_disjoint_at_root(self):
        assert intersection_exact(ALL1, ALL2) == set()

    def test_derived_single_shared_code(self):
        # brute force: the only code <= 2^10 shared by 111... and 1222...
        brute = brute_codes_of_branch(ALL1, 2**10) & brute_codes_of_branch(
            ONE_THEN_2, 2**10
        )
        assert brute == {1}
        assert intersection_exact(ALL1, ONE_THEN_2) == {1}

    def test_derived_common_prefix_12(self):
        a = BranchIndex("12", "1", 0)
        b = BranchIndex("122", "2", 1)
        brute = brute_codes_of_branch(a, 2**12) & brute_codes_of_branch(b, 2**12)
        assert brute == {1, 4}
        assert intersection_exact(a, b) == {1, 4}

    def test_equal_branches_error(self):
        with pytest.raises(BranchError):
            intersection_exact(ALL1, BranchIndex("1", "1", 5))

    @given(
        st.text(alphabet="12", max_size=6),
        st.text(alphabet="12", min_size=1, max_size=4),
        st.text(alphabet="12", max_size=6),
        st.text(alphabet="12", min_size=1, max_size=4),
    )
    @settings(max_examples=120)
    def test_size_equals_agreement_depth(self, pre_a, per_a, pre_b, per_b):
        a = BranchIndex(pre_a, per_a, 0)
        b = BranchIndex(pre_b, per_b, 1)
        if a == b:
            return
        d = a.lcp(b)
        inter = intersection_exact(a, b)
        assert len(inter) == d
        assert inter == {a.element(n) for n in range(1, d + 1)}


class TestSeparator:
    def test_examples(self):
        assert find_separator(ALL1, [ALL2]) == 1
        assert find_separator(ALL1, [ONE_THEN_2]) == 3
        assert find_separator(ALL1, []) == 1

    def test_alpha_in_group_error(self):
        with pytest.raises(BranchError):
            find_separator(ALL1, [ALL1, ALL2])

    def test_minimality_brute_force(self):
        group = [ALL2, ONE_THEN_2, BranchIndex("11", "2", 3)]
        l = find_separator(ALL1, group)
        assert branch_member(ALL1, l)
        assert all(not branch_member(b, l) for b in group)
        for smaller in brute_codes_of_branch(ALL1, l - 1):
            assert any(branch_member(b, smaller) for b in group)


class TestCover:
    def test_mints_fresh_branches(self):
        reg = Registry()
        cover = find_cover(2, 10, reg, base=[])
        assert [c.rank for c in cover] == [10, 11]
        assert cover[0].prefix(1) == "1"
        assert cover[1].prefix(1) == "2"
        assert all(branch_member(cover[0], n) or branch_member(cover[1], n) for n in (1, 2))

    def test_base_already_covers(self):
        reg = Registry([ALL1])
        assert find_cover(1, 0, reg, base=[ALL1]) == []

    def test_partial_cover(self):
        reg = Registry([ALL1])
        cover = find_cover(3, 0, reg, base=[ALL1])
        assert len(cover) == 1
        assert cover[0].prefix(1) == "2"

    def test_coverage_exhaustive_and_ranked(self):
        reg = make_registry([("", "1"), ("", "2"), ("12", "1")])
        for l, gamma in [(5, 7), (10, 3), (16, 20)]:
            local = Registry(list(reg.entries))
            cover = find_cover(l, gamma, local, base=[ALL1])
            assert all(c.rank >= gamma for c in cover)
            for n in range(1, l + 1):
                assert branch_member(ALL1, n) or any(
                    branch_member(c, n) for c in cover
                )

    def test_minting_avoids_duplicates(self):
        reg = Registry([ALL1])
        fresh = reg.mint_through("1", 5)
        assert fresh != ALL1
        assert fresh.prefix(1) == "1"
        again = reg.mint_through("1", 5)
        assert again != fresh and again != ALL1


class TestDensity:
    def test_examples(self):
        assert density_count(1, 3) == 4
        assert density_count(7, 3) == 1

    def test_derived_count_by_enumeration(self):
        # all 16 depth-4 words, count those extending decode(4) = "12"
        brute = sum(
            1
            for w in itertools.product("12", repeat=4)
            if "".join(w).startswith(decode_code(4))
        )
        assert brute == 4
        assert density_count(4, 4) == 4

    def test_depth_too_small(self):
        with pytest.raises(BranchError):
            density_count(7, 2)


class TestRegistry:
    def test_rank_order_enforced(self):
        with pytest.raises(BranchError):
            Registry([ALL2, ALL1])  # ranks 1 then 0

    def test_duplicate_words_rejected(self):
        with pytest.raises(BranchError):
            Registry([ALL1, BranchIndex("1", "1", 9)])

    def test_covering_property_of_depth_d_branches(self):
        # branches through all depth-d words jointly cover 1..2^(d+1)-2
        d = 4
        reg = Registry()
        branches = [
            reg.mint_through("".join(w), 0) for w in itertools.product("12", repeat=d)
        ]
        for n in range(1, 2 ** (d + 1) - 1):
            assert any(branch_member(b, n) for b in branches)
