"""Primitive-root tests, the Germain-prime generator theorem and Artin counts."""

from __future__ import annotations

import math
from typing import Dict, List, NamedTuple

import numpy as np

from .hardy_littlewood import hl_constant
from .sieve_core import SieveRangeError, SieveTables

CHAR_CEILING = 10**4


def _prime_modulus(tables: SieveTables, p: int) -> None:
    tables.check_range(p, low=2)
    if not tables.is_prime(p):
        raise ValueError(f"{p} is not prime")


def lehmer_test(tables: SieveTables, r: int, p: int) -> bool:
    """True iff r is a primitive root mod p.

    Uses r^((p-1)/q) != 1 (mod p) for every prime q dividing p - 1.
    """
    _prime_modulus(tables, p)
    if math.gcd(r, p) != 1:
        raise ValueError(f"gcd({r}, {p}) != 1")
    r %= p
    if p == 2:
        return r == 1
    return all(pow(r, (p - 1) // q, p) != 1 for q in tables.prime_divisors(p - 1))


def generator(tables: SieveTables, p: int) -> int:
    """Smallest primitive root mod p."""
    _prime_modulus(tables, p)
    return next(g for g in range(1, p) if lehmer_test(tables, g, p))


def discrete_logs(tables: SieveTables, p: int) -> np.ndarray:
    """ind[r] with g^ind[r] = r (mod p) for the smallest generator g; ind[0] = -1."""
    g = generator(tables, p)
    ind = np.full(p, -1, dtype=np.int64)
    v = 1
    for k in range(p - 1):
        ind[v] = k
        v = v * g % p
    return ind


def _char_weights(tables: SieveTables, p: int) -> np.ndarray:
    """Indicator sums over all residues at once, indexed by discrete log.

    A character of order d sends r to exp(2 pi i j ind(r) / (p-1)) with
    gcd(j, p-1) = (p-1)/d.  Each inner sum over such j is an integer, so it
    is rounded and the outer sum is taken over a common denominator, which
    makes non-generators exactly zero.  The phi(p)/p factor is not applied.
    """
    m = p - 1
    k = np.arange(m)
    divs = [d for d in _divisors(tables, m) if tables.mu[d]]
    denom = math.lcm(*(int(tables.phi[d]) for d in divs))
    total = np.zeros(m, dtype=np.int64)
    for d in divs:
        js = np.array([j for j in range(m) if math.gcd(j, m) == m // d])
        inner = np.rint(np.cos(2 * np.pi * np.outer(js, k) / m).sum(axis=0)).astype(np.int64)
        total += int(tables.mu[d]) * (denom // int(tables.phi[d])) * inner
    return total / denom


def _divisors(tables: SieveTables, n: int) -> List[int]:
    divs = [1]
    for q, e in tables.factorize(n):
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def char_indicator(tables: SieveTables, r: int, p: int) -> float:
    """(phi(p)/p) sum_{d | p-1} mu(d)/phi(d) sum_{ord chi = d} chi(r).

    Positive exactly when r is a primitive root mod p.  Characters are
    built from discrete logs to a generator found by :func:`lehmer_test`.
    """
    if p > CHAR_CEILING:
        raise SieveRangeError(f"character tables stop at p = {CHAR_CEILING}, got {p}")
    _prime_modulus(tables, p)
    if math.gcd(r, p) != 1:
        raise ValueError(f"gcd({r}, {p}) != 1")
    k = int(discrete_logs(tables, p)[r % p])
    return (p - 1) / p * float(_char_weights(tables, p)[k])


def char_indicator_table(tables: SieveTables, p: int) -> np.ndarray:
    """char_indicator(r, p) for r = 0..p-1 (entry 0 is nan)."""
    if p > CHAR_CEILING:
        raise SieveRangeError(f"character tables stop at p = {CHAR_CEILING}, got {p}")
    ind = discrete_logs(tables, p)
    w = (p - 1) / p * _char_weights(tables, p)
    out = np.full(p, np.nan)
    out[1:] = w[ind[1:]]
    return out


class Theorem91Report(NamedTuple):
    violations: List[tuple]
    counts: Dict[str, int]


def theorem91_scan(tables: SieveTables, x: int) -> Theorem91Report:
    """Check the generator claims for primes built from Germain primes q <= x.

    (i)   p = 2q + 1 = 3 (mod 8): 2 is a primitive root.
    (ii)  p = 2q + 1 = 7 (mod 8): p - 2 is a primitive root.
    (iii) p = 4q + 1 = 5 (mod 8): 2 is a primitive root.

    The case p = 7 with q = 3 counts under (ii).  Violations are
    (case, q, p) triples.
    """
    tables.check_range(4 * x + 1)
    flags = tables.prime_flags
    q = np.flatnonzero(flags[: x + 1])
    violations: List[tuple] = []
    counts = {"i": 0, "ii": 0, "iii": 0}
    for case, mult, residue, root in (("i", 2, 3, 2), ("ii", 2, 7, None), ("iii", 4, 5, 2)):
        p = mult * q + 1
        sel = flags[p] & (p % 8 == residue)
        for qq, pp in zip(q[sel].tolist(), p[sel].tolist()):
            counts[case] += 1
            g = pp - 2 if root is None else root
            if not lehmer_test(tables, g, pp):
                violations.append((case, qq, pp))
    return Theorem91Report(violations, counts)


class ArtinCount(NamedTuple):
    count: int
    ratio: float
    square: bool


def artin_count(tables: SieveTables, a: int, x: int, P: int = 10**6) -> ArtinCount:
    """Primes p <= x, p not dividing a, with a a primitive root mod p.

    ``ratio`` compares the count with C_a x / log x; ``square`` flags a
    perfect-square a, which is never a primitive root mod an odd prime.
    """
    tables.check_range(x, low=2)
    count = 0
    for p in tables.primes[tables.primes <= x].tolist():
        if a % p and lehmer_test(tables, a % p, p):
            count += 1
    main = hl_constant("artin_Ca", P) * x / math.log(x)
    square = a >= 0 and math.isqrt(a) ** 2 == a
    return ArtinCount(count, count / main, square)
