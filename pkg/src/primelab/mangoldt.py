"""Representations of the von Mangoldt function and Ramanujan sums."""

from __future__ import annotations

import math
from itertools import combinations

from ._arith import divisors_from, factor, mobius
from .exact_logs import LogCombination
from .sieve_core import SieveTables


def _squarefree_divisors(primes):
    """(d, mu(d), primes of d) for every squarefree d built from ``primes``."""
    for k in range(len(primes) + 1):
        sign = -1 if k % 2 else 1
        for combo in combinations(primes, k):
            yield math.prod(combo), sign, combo


def _divisors(tables: SieveTables, n: int) -> list[int]:
    return divisors_from(tables.factorize(n))


def mangoldt_via_mobius(tables: SieveTables, n: int) -> LogCombination:
    """-sum_{d | n} mu(d) log d, as an exact combination over primes."""
    tables.check_range(n)
    fac = tables.factorize(n)
    primes = [p for p, _ in fac]
    out: dict = {}
    for d in divisors_from(fac):
        m = int(tables.mu[d])
        if m == 0 or d == 1:
            continue
        # d squarefree, so log d is the sum of log p over p | d
        for p in primes:
            if d % p == 0:
                out[p] = out.get(p, 0) - m
    return LogCombination(out)


def generalized_mangoldt(tables: SieveTables, n: int, k: int) -> float:
    """Lambda_k(n) = sum_{d | n} mu(d) log(n/d)^k in double precision."""
    tables.check_range(n)
    if not 1 <= k <= 4:
        raise ValueError(f"k must lie in [1, 4], got {k}")
    total = 0.0
    for d in _divisors(tables, n):
        m = int(tables.mu[d])
        if m:
            total += m * math.log(n / d) ** k
    return total


def ramanujan_sum(q: int, n: int) -> int:
    """c_q(n) = sum_{d | gcd(n, q)} d * mu(q / d)."""
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    g = math.gcd(n, q)
    return sum(d * mobius(q // d) for d in divisors_from(factor(g)))


def ramanujan_sum_trig(q: int, n: int) -> float:
    """Direct trigonometric sum over reduced residues a mod q."""
    return math.fsum(
        math.cos(2 * math.pi * a * n / q) for a in range(1, q + 1) if math.gcd(a, q) == 1
    )


def truncated_mangoldt(tables: SieveTables, n: int, R: float) -> float:
    """sum over d | n, d <= R of mu(d) log(R/d)."""
    tables.check_range(n)
    if R < 1:
        raise ValueError(f"R must be >= 1, got {R}")
    total = 0.0
    for d, sign, _ in _squarefree_divisors(tables.prime_divisors(n)):
        if d <= R:
            total += sign * math.log(R / d)
    return total


def harmonic_mangoldt(tables: SieveTables, n: int, Q: int) -> float:
    """Truncated expansion -sum_{q <= Q} c_q(n)/q.

    Diagnostic only; the partial sums are reported as they are.
    """
    tables.check_range(n, low=2)
    if Q < 1:
        raise ValueError(f"Q must be >= 1, got {Q}")
    return -math.fsum(ramanujan_sum(q, n) / q for q in range(1, Q + 1))
