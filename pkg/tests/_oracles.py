"""Brute-force reference computations, independent of the package code paths."""

import itertools
import math
import random
from fractions import Fraction


def direct_signed(a, n, start=0):
    """sum_{k=start}^n C(n,k) (-1)^(k-1) a[k], straight from the definition."""
    return sum((-Fraction(math.comb(n, k)) * (-1) ** k * a[k]
                for k in range(start, n + 1)), Fraction(0))


def direct_unsigned(a, n):
    return sum((Fraction(math.comb(n, k)) * a[k] for k in range(n + 1)), Fraction(0))


def tuple_enumeration_mhs(n, m):
    """Sum of 1/(k_1...k_m) over weakly increasing tuples in [1, n]."""
    total = Fraction(0)
    for combo in itertools.combinations_with_replacement(range(1, n + 1), m):
        total += Fraction(1, math.prod(combo))
    return total


def stirling2_explicit(p, n):
    """S(p, n) = (1/n!) sum_j (-1)^(n-j) C(n,j) j^p."""
    return sum((-1) ** (n - j) * math.comb(n, j) * j ** p for j in range(n + 1)) // math.factorial(n)


def set_partitions_count(p, n):
    """Count partitions of {0..p-1} into n blocks by assigning block labels canonically."""
    count = 0
    for labels in itertools.product(range(n), repeat=p):
        # canonical: first occurrence order 0,1,2,...
        seen = []
        for lab in labels:
            if lab not in seen:
                seen.append(lab)
        if seen == list(range(n)):
            count += 1
    return count


def laguerre_direct(n, x):
    """L_n(x) = sum_k C(n,k) (-x)^k / k!."""
    x = Fraction(x)
    return sum((math.comb(n, k) * (-x) ** k / math.factorial(k) for k in range(n + 1)),
               Fraction(0))


def random_rationals(rng: random.Random, length: int, bound: int = 10**6):
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(length)]
