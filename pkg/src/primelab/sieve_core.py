"""Smallest-prime-factor sieve and the arithmetic functions derived from it.

One spf table feeds every multiplicative function in the package: mu, the
von Mangoldt base (p, m) for prime powers, phi, omega, sigma and tau.  The
derived tables are filled in dyadic blocks [2^j, 2^(j+1)): every n in a block
has n // spf[n] in an earlier block, so each block is a handful of vectorised
numpy operations.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .exact_logs import LogCombination

DEFAULT_MEM_CEILING = 200_000_000
ARITHMETIC_KINDS = ("mu", "mangoldt", "phi", "omega", "sigma", "tau")
SUMMATORY_KINDS = ("psi", "mertens", "psi_ap")


class SieveSizeError(ValueError):
    """Requested sieve limit is below 2 or above the memory ceiling."""


class SieveRangeError(ValueError):
    """Argument lies outside the range covered by a sieve table."""


def mem_ceiling() -> int:
    """Table ceiling, overridable through ``SIEVE_MEM_CEILING``."""
    raw = os.environ.get("SIEVE_MEM_CEILING")
    if raw:
        return int(float(raw))
    return DEFAULT_MEM_CEILING


@dataclass(frozen=True)
class SieveTables:
    """Immutable per-limit arithmetic tables, indexed directly by n.

    Index 0 is unused padding; index 1 holds the values at n = 1.

    Attributes:
        limit: Largest n covered.
        spf: Smallest prime factor (spf[1] = 1).
        mu: Moebius function.
        mangoldt_base: p when n = p^m, else 0.
        mangoldt_exp: m when n = p^m, else 0.
        phi: Euler totient.
        omega: Number of distinct prime divisors.
        sigma: Sum of divisors.
        tau: Number of divisors.
    """

    limit: int
    spf: np.ndarray
    mu: np.ndarray
    mangoldt_base: np.ndarray
    mangoldt_exp: np.ndarray
    phi: np.ndarray
    omega: np.ndarray
    sigma: np.ndarray
    tau: np.ndarray

    @property
    def prime_flags(self) -> np.ndarray:
        flags = self.spf == np.arange(self.limit + 1)
        flags[:2] = False
        return flags

    @property
    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.prime_flags)

    def is_prime(self, n: int) -> bool:
        self.check_range(n)
        return n >= 2 and int(self.spf[n]) == n

    def check_range(self, n: int, low: int = 1) -> None:
        if not low <= n <= self.limit:
            raise SieveRangeError(f"{n} outside sieve range [{low}, {self.limit}]")

    def factorize(self, n: int) -> list[Tuple[int, int]]:
        """Prime factorisation of n as ascending (p, e) pairs."""
        self.check_range(n)
        out = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def prime_divisors(self, n: int) -> list[int]:
        return [p for p, _ in self.factorize(n)]


def spf_sieve(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[0] = 0
    return spf


def primes_up_to(n: int) -> np.ndarray:
    """Plain Eratosthenes flags sieve; used where only primes are needed."""
    if n < 2:
        return np.array([], dtype=np.int64)
    if n > mem_ceiling():
        raise SieveSizeError(f"prime sieve limit {n} exceeds ceiling {mem_ceiling()}")
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def build_tables(limit: int, ceiling: Optional[int] = None) -> SieveTables:
    """Sieve every arithmetic function up to ``limit``.

    Raises:
        SieveSizeError: limit < 2 or limit above the configured ceiling.
    """
    ceiling = mem_ceiling() if ceiling is None else ceiling
    if limit < 2 or limit > ceiling:
        raise SieveSizeError(f"sieve limit {limit} outside [2, {ceiling}]")

    size = limit + 1
    spf = spf_sieve(limit)
    mu = np.zeros(size, dtype=np.int8)
    omega = np.zeros(size, dtype=np.int8)
    tau = np.zeros(size, dtype=np.int64)
    phi = np.zeros(size, dtype=np.int64)
    sigma = np.zeros(size, dtype=np.int64)
    # exponent of spf in n, spf^e, and n with the spf part removed
    exp_ = np.zeros(size, dtype=np.int64)
    ppow = np.zeros(size, dtype=np.int64)
    rest = np.zeros(size, dtype=np.int64)

    mu[1] = 1
    tau[1] = phi[1] = sigma[1] = 1
    rest[1] = 1

    lo = 2
    while lo <= limit:
        hi = min(2 * lo, size)
        n = np.arange(lo, hi, dtype=np.int64)
        p = spf[lo:hi]
        r = n // p
        same = spf[r] == p

        e = np.where(same, exp_[r] + 1, 1)
        pe = np.where(same, ppow[r] * p, p)
        core = np.where(same, rest[r], r)
        exp_[lo:hi] = e
        ppow[lo:hi] = pe
        rest[lo:hi] = core

        mu[lo:hi] = np.where(same, 0, -mu[r])
        omega[lo:hi] = np.where(same, omega[r], omega[r] + 1)
        tau[lo:hi] = tau[core] * (e + 1)
        phi[lo:hi] = np.where(same, phi[r] * p, phi[r] * (p - 1))
        sigma[lo:hi] = sigma[core] * ((pe * p - 1) // (p - 1))
        lo = hi

    is_pp = rest == 1
    is_pp[:2] = False
    mangoldt_base = np.where(is_pp, spf, 0)
    mangoldt_exp = np.where(is_pp, exp_, 0)

    arrays = (spf, mu, mangoldt_base, mangoldt_exp, phi, omega, sigma, tau)
    for arr in arrays:
        arr.setflags(write=False)
    return SieveTables(limit, *arrays)


def arithmetic_value(tables: SieveTables, kind: str, n: int):
    """Exact value of one arithmetic function at n.

    ``mangoldt`` is returned as a LogCombination (1 * log p for n = p^m,
    the empty combination otherwise); every other kind is an int.
    """
    tables.check_range(n)
    if kind == "mangoldt":
        p = int(tables.mangoldt_base[n])
        return LogCombination({p: 1}) if p else LogCombination()
    if kind not in ARITHMETIC_KINDS:
        raise ValueError(f"unknown arithmetic function {kind!r}")
    return int(getattr(tables, kind)[n])


def mangoldt(tables: SieveTables, n: int) -> LogCombination:
    return arithmetic_value(tables, "mangoldt", n)


def psi_counts(tables: SieveTables, x: int, ap: Optional[Tuple[int, int]] = None) -> LogCombination:
    """Sum of Lambda(n) for n <= x (optionally n = a mod q), exactly."""
    tables.check_range(x)
    base = tables.mangoldt_base[1 : x + 1]
    if ap is not None:
        q, a = ap
        idx = np.arange(1, x + 1)
        base = base[idx % q == a % q]
    base = base[base > 0]
    if base.size == 0:
        return LogCombination()
    primes, counts = np.unique(base, return_counts=True)
    return LogCombination(dict(zip(primes.tolist(), counts.tolist())))


def summatory(tables: SieveTables, kind: str, x: int, ap: Optional[Tuple[int, int]] = None):
    """Chebyshev psi, psi over a progression, or the Mertens function M(x)."""
    tables.check_range(x)
    if kind == "mertens":
        return int(tables.mu[1 : x + 1].sum(dtype=np.int64))
    if kind == "psi":
        return psi_counts(tables, x)
    if kind == "psi_ap":
        if ap is None:
            raise ValueError("psi_ap needs ap=(q, a)")
        q, a = ap
        if q < 1 or math.gcd(a, q) != 1:
            raise ValueError(f"psi_ap requires gcd(a, q) = 1, got q={q}, a={a}")
        return psi_counts(tables, x, (q, a))
    raise ValueError(f"unknown summatory kind {kind!r}")


def mertens_prefix(tables: SieveTables) -> np.ndarray:
    """M(x) for every 0 <= x <= limit, as one cumulative sum."""
    return np.cumsum(tables.mu, dtype=np.int64)
