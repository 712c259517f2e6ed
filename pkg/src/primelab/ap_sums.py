"""Power sums over arithmetic and quadratic progressions.

The closed forms expand (q*m + a)^e binomially and use the Faulhaber sums
for m = 0..T, so every result is an exact integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

import numpy as np

from .exact_logs import LogCombination, evaluate
from .quadratic_residues import roots_mod_squarefree
from .sieve_core import SieveTables
from ._arith import factor


@dataclass(frozen=True)
class ApClass:
    """The residue class a mod q, with 0 <= a < q."""

    q: int
    a: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"modulus must be positive, got {self.q}")
        if not 0 <= self.a < self.q:
            raise ValueError(f"residue must lie in [0, {self.q}), got {self.a}")

    @classmethod
    def of(cls, q: int, a: int) -> "ApClass":
        return cls(q, a % q)

    @property
    def coprime(self) -> bool:
        return math.gcd(self.a, self.q) == 1


def faulhaber(T: int, k: int) -> int:
    """sum_{m=0}^{T} m^k for k in 0..3."""
    if T < 0:
        return 0
    if k == 0:
        return T + 1
    if k == 1:
        return T * (T + 1) // 2
    if k == 2:
        return T * (T + 1) * (2 * T + 1) // 6
    if k == 3:
        return (T * (T + 1) // 2) ** 2
    raise ValueError(f"exponent {k} not supported")


def power_sum_ap(x: float, ap: ApClass, e: int) -> int:
    """sum of n^e over positive integers n <= x with n = a (mod q)."""
    if e not in (0, 1, 2, 3):
        raise ValueError(f"exponent must be 0..3, got {e}")
    first = ap.a if ap.a > 0 else ap.q
    xi = math.floor(x)
    if xi < first:
        return 0
    T = (xi - first) // ap.q
    return sum(
        math.comb(e, k) * ap.q**k * first ** (e - k) * faulhaber(T, k) for k in range(e + 1)
    )


def weighted_psi_ap(tables: SieveTables, x: int, ap: ApClass) -> LogCombination:
    """sum over n <= x, n = a (mod q) of n * Lambda(n), exactly."""
    tables.check_range(x)
    if not ap.coprime:
        raise ValueError(f"gcd(a, q) must be 1, got a={ap.a}, q={ap.q}")
    n = np.arange(1, x + 1, dtype=np.int64)
    base = tables.mangoldt_base[1 : x + 1]
    keep = (base > 0) & (n % ap.q == ap.a)
    if not keep.any():
        return LogCombination()
    primes, inv = np.unique(base[keep], return_inverse=True)
    coeffs = np.zeros(len(primes), dtype=np.int64)
    np.add.at(coeffs, inv, n[keep])
    return LogCombination(dict(zip(primes.tolist(), coeffs.tolist())))


def weighted_psi_ap_deviation(tables: SieveTables, x: int, ap: ApClass) -> float:
    """Relative deviation of the weighted sum from x^2 / (2 phi(q))."""
    phi_q = math.prod((p - 1) * p ** (e - 1) for p, e in factor(ap.q))
    main = x * x / (2 * phi_q)
    return evaluate(weighted_psi_ap(tables, x, ap)) / main - 1.0


class QrPowerSum(NamedTuple):
    total: int
    roots: List[int]


def qr_power_sum(tables: Optional[SieveTables], x: float, q: int, a: int) -> QrPowerSum:
    """sum of n^2 over n <= x with n^2 = a (mod q), for odd squarefree q.

    One progression per root b of n^2 = a (mod q).  A nonresidue gives a
    zero total with no roots.
    """
    roots = roots_mod_squarefree(a, q)
    total = sum(power_sum_ap(x, ApClass(q, b), 2) for b in roots)
    return QrPowerSum(total, roots)


def qr_main_term(x: float, q: int, n_roots: int) -> float:
    """Leading term 2^W x^3 / (3 q) of the quadratic progression sum.

    Each of the 2^W roots contributes sum_{m <= x/q} (q m)^2 ~ x^3 / (3 q).
    """
    return n_roots * x**3 / (3 * q)


def qr_main_term_stated(x: float, q: int, n_roots: int) -> float:
    """The form 2^W x^3 / (3 q^2), smaller than the true leading term by q."""
    return n_roots * x**3 / (3 * q * q)
