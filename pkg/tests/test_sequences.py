import math
from fractions import Fraction as F

import pytest

from bintransform.core import Sequence, binomial_transform, unsigned_binomial_transform
from bintransform.sequences import (
    binomial_column,
    fibonacci,
    fibonacci_at,
    generalized_harmonic,
    geometric,
    harmonic,
    index_powers,
    laguerre,
    lucas,
    lucas_at,
    multiple_harmonic_sum,
    power_expansion,
    power_sum,
    skew_harmonic,
    stirling2,
    stirling_table,
)

from _oracles import laguerre_direct, set_partitions_count, stirling2_explicit, tuple_enumeration_mhs


def test_harmonic():
    assert harmonic(4).values == (0, 1, F(3, 2), F(11, 6))
    assert harmonic(1).values == (0,)


def test_generalized_harmonic():
    assert generalized_harmonic(3, 2).values == (0, 1, F(5, 4))
    assert generalized_harmonic(12, 1) == harmonic(12)
    assert generalized_harmonic(3, 3)[2] == F(9, 8)
    with pytest.raises(ValueError):
        generalized_harmonic(3, 0)


def test_skew_harmonic():
    assert skew_harmonic(4).values == (0, 1, F(1, 2), F(5, 6))


class TestStirling:
    def test_examples(self):
        assert stirling2(4, 2) == 7
        assert all(stirling2(n, n) == 1 for n in range(11))
        assert stirling2(3, 5) == 0

    def test_boundary_cells(self):
        t = stirling_table(20)
        assert t(0, 0) == 1
        for p in range(1, 21):
            assert t(p, 0) == 0
            assert t(p, p + 3) == 0

    def test_recurrence_all_cells(self):
        t = stirling_table(20)
        for p in range(1, 21):
            for n in range(1, p + 1):
                assert t(p, n) == n * t(p - 1, n) + t(p - 1, n - 1)

    def test_against_explicit_formula(self):
        for p in range(16):
            for n in range(p + 1):
                assert stirling2(p, n) == stirling2_explicit(p, n)

    def test_against_partition_count(self):
        for p in range(1, 7):
            for n in range(1, p + 1):
                assert stirling2(p, n) == set_partitions_count(p, n)

    def test_signed_transform_of_powers(self):
        for p in range(1, 11):
            b = binomial_transform(index_powers(11, p))
            for n in range(1, 11):
                assert b[n] == (-1) ** (n - 1) * math.factorial(n) * stirling2(p, n)

    def test_inverted_representation(self):
        for q in range(7):
            a = [math.factorial(k) * stirling2(q + 1, k) for k in range(13)]
            u = unsigned_binomial_transform(Sequence.of(a))
            for n in range(13):
                assert u[n] == n ** (q + 1)

    def test_table_bounds(self):
        with pytest.raises(IndexError):
            stirling_table(3)(4, 1)


class TestFibonacciLucas:
    def test_prefixes(self):
        assert fibonacci(7).values == (0, 1, 1, 2, 3, 5, 8)
        assert lucas(5).values == (2, 1, 3, 4, 7)
        assert fibonacci(1).values == (0,)

    def test_negative_indices(self):
        assert fibonacci_at(-1) == 1
        assert [fibonacci_at(-n) for n in range(1, 7)] == [1, -1, 2, -3, 5, -8]
        assert lucas_at(-1) == -1

    def test_recurrence_everywhere(self):
        for at in (fibonacci_at, lucas_at):
            for n in range(-6, 21):
                assert at(n) == at(n - 1) + at(n - 2)

    def test_accessor_matches_prefix(self):
        assert [fibonacci_at(n) for n in range(20)] == list(fibonacci(20).values)
        assert [lucas_at(n) for n in range(20)] == list(lucas(20).values)


def test_power_sum():
    assert power_sum(4, 2).values == (0, 1, 5, 14)
    assert power_sum(6, 0)[5] == 5
    assert power_sum(4, 3)[3] == 36


class TestMultipleHarmonic:
    def test_examples(self):
        assert multiple_harmonic_sum(10, 1) == harmonic(10)
        assert multiple_harmonic_sum(3, 2)[2] == F(7, 4)
        assert multiple_harmonic_sum(4, 2)[3] == F(85, 36)
        assert sum(harmonic(4).values[k] / k for k in range(1, 4)) == F(85, 36)

    def test_against_enumeration(self):
        for m in range(1, 4):
            s = multiple_harmonic_sum(11, m)
            assert s[0] == 0
            for n in range(1, 11):
                assert s[n] == tuple_enumeration_mhs(n, m)


def test_harmonic_quotient_sum():
    H, H2 = harmonic(31), generalized_harmonic(31, 2)
    for n in range(31):
        assert sum((H[k] / k for k in range(1, n + 1)), F(0)) == (H[n] ** 2 + H2[n]) / 2


class TestLaguerre:
    def test_examples(self):
        assert all(laguerre(1, x)[0] == 1 for x in (F(0), F(3), F(-1, 2)))
        assert laguerre(2, 3)[1] == -2
        assert laguerre(3, 1)[2] == F(-1, 2)

    @pytest.mark.parametrize("x", [F(1, 2), F(2), F(-3), F(-1), F(7, 5)])
    def test_recurrence_matches_finite_sum(self, x):
        L = laguerre(16, x)
        for n in range(16):
            assert L[n] == laguerre_direct(n, x)


def test_simple_generators():
    assert geometric(3, F(1, 2)).values == (1, F(1, 2), F(1, 4))
    assert index_powers(3, 2).values == (0, 1, 4)
    assert index_powers(3, 0).values == (1, 1, 1)
    assert binomial_column(4, 2).values == (1, 2, 1, 0)


def test_power_expansion_matches_direct_sum():
    for p in range(5):
        for x in (F(1, 2), F(-3), F(2)):
            for n in range(8):
                direct = sum(math.comb(n, k) * k ** p * x ** k for k in range(n + 1))
                assert power_expansion(p, n, x) == direct


@pytest.mark.parametrize("gen", [harmonic, skew_harmonic, fibonacci, lucas])
def test_length_must_be_positive(gen):
    with pytest.raises(ValueError):
        gen(0)
