"""Tests for graded Fock basis enumeration and the threshold subspaces."""

import itertools

import pytest

from qglnm.fock import (
    EVEN,
    ODD,
    BasisIndex,
    Signature,
    dim_F0,
    enumerate_up_to,
    mode_parity,
    split_F0_F1,
    total,
    vacuum,
)


def brute_force_states(sig: Signature, cap: int) -> set:
    """Independent oracle: full product enumeration with per-mode ranges,
    filtered by total occupation."""
    ranges = [
        range(0, 2) if sig.is_fermionic(i) else range(0, cap + 1)
        for i in range(1, sig.num_modes + 1)
    ]
    return {s for s in itertools.product(*ranges) if sum(s) <= cap}


class TestSignature:
    def test_rejects_n1(self):
        with pytest.raises(ValueError):
            Signature(1, 1)

    def test_rejects_negative_m(self):
        with pytest.raises(ValueError):
            Signature(2, -1)

    def test_m0_allowed(self):
        sig = Signature(3, 0)
        assert sig.r == 3 and sig.num_modes == 2

    def test_derived_fields(self):
        sig = Signature(2, 2)
        assert sig.r == 4
        assert sig.num_modes == 3


class TestModeParity:
    def test_known_parities(self):
        assert mode_parity(Signature(2, 1), 1) == EVEN
        assert mode_parity(Signature(2, 1), 2) == ODD
        assert mode_parity(Signature(3, 2), 3) == ODD

    def test_boundary(self):
        sig = Signature(4, 2)
        assert [mode_parity(sig, i) for i in range(1, 6)] == [EVEN, EVEN, EVEN, ODD, ODD]

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            mode_parity(Signature(2, 1), 3)
        with pytest.raises(IndexError):
            mode_parity(Signature(2, 1), 0)


class TestEnumerate:
    def test_21_cap1(self):
        basis = enumerate_up_to(Signature(2, 1), 1)
        assert set(basis.states) == {(0, 0), (1, 0), (0, 1)}
        assert len(basis) == 3

    def test_22_cap1(self):
        basis = enumerate_up_to(Signature(2, 2), 1)
        assert set(basis.states) == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)}

    def test_vacuum_only(self):
        assert enumerate_up_to(Signature(2, 1), 0).states == [(0, 0)]

    def test_graded_lex_order(self):
        basis = enumerate_up_to(Signature(2, 1), 2)
        assert basis.states == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0)]

    def test_index_is_inverse(self):
        basis = enumerate_up_to(Signature(3, 2), 3)
        for k, s in enumerate(basis.states):
            assert basis.index[s] == k

    @pytest.mark.parametrize("n,m,cap", [(2, 1, 4), (3, 2, 3), (4, 0, 3), (2, 3, 4)])
    def test_against_brute_force(self, n, m, cap):
        sig = Signature(n, m)
        assert set(enumerate_up_to(sig, cap).states) == brute_force_states(sig, cap)

    @pytest.mark.parametrize("n,m", [(2, 1), (3, 2)])
    def test_occupations_in_range(self, n, m):
        sig = Signature(n, m)
        for s in enumerate_up_to(sig, 5):
            for i, li in enumerate(s, start=1):
                assert li >= 0
                if sig.is_fermionic(i):
                    assert li <= 1

    def test_growth_in_cap(self):
        sig = Signature(3, 2)
        sizes = [len(enumerate_up_to(sig, c)) for c in range(7)]
        assert all(b > a for a, b in zip(sizes, sizes[1:]))


class TestDimF0:
    def test_known_dimensions(self):
        assert dim_F0(Signature(2, 1), 2) == 5
        assert dim_F0(Signature(3, 0), 1) == 3
        assert dim_F0(Signature(2, 1), 0) == 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("m", [0, 1, 2, 3])
    @pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
    def test_closed_form_equals_enumeration(self, n, m, p):
        sig = Signature(n, m)
        assert dim_F0(sig, p) == len(enumerate_up_to(sig, p))


class TestSplit:
    def test_threshold_at_vacuum(self):
        low, high = split_F0_F1(Signature(2, 1), 0, 1)
        assert low.states == [(0, 0)]
        assert set(high.states) == {(1, 0), (0, 1)}

    def test_partition_by_definition(self):
        # the low part is every state of degree <= p, the slice is the rest
        low, high = split_F0_F1(Signature(2, 1), 1, 2)
        assert set(low.states) == {(0, 0), (1, 0), (0, 1)}
        assert set(high.states) == {(2, 0), (1, 1)}

    @pytest.mark.parametrize("n,m,p,cap", [(2, 1, 1, 4), (2, 2, 2, 5), (3, 1, 2, 4)])
    def test_sizes_sum(self, n, m, p, cap):
        sig = Signature(n, m)
        low, high = split_F0_F1(sig, p, cap)
        assert len(low) + len(high) == len(enumerate_up_to(sig, cap))
        assert all(total(s) <= p for s in low)
        assert all(total(s) > p for s in high)

    def test_cap_precondition(self):
        with pytest.raises(ValueError):
            split_F0_F1(Signature(2, 1), 2, 2)


def test_vacuum():
    assert vacuum(Signature(3, 2)) == (0, 0, 0, 0)


def test_duplicate_states_rejected():
    with pytest.raises(ValueError):
        BasisIndex([(0, 0), (0, 0)])
