"""Truncated Euler products for prime-pattern constants, and li / li2.

Every product runs over primes p <= P from a plain flags sieve.  The tail
estimate reported with a product is sum_{p > P} 1/p^2 ~ 1/(P log P) for the
absolutely convergent products, and the observed drift between P/10 and P
for the two character products, which converge only conditionally.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple, Tuple

import numpy as np
from scipy import integrate

from ._arith import factor
from .sieve_core import primes_up_to

LI_AT_2 = 1.04516378011749278484458888919

KINDS = ("twin_c2", "depolignac_2k", "quadratic_Cf", "quad_twin", "theta_singular", "artin_Ca")
CONDITIONAL = ("quadratic_Cf", "quad_twin")


class EulerProduct(NamedTuple):
    value: float
    tail: float


@lru_cache(maxsize=4)
def _primes(P: int) -> np.ndarray:
    return primes_up_to(P)


def _legendre_vec(D: int, primes: np.ndarray) -> np.ndarray:
    """(D/p) for each odd prime p in ``primes``."""
    out = np.empty(len(primes), dtype=np.int64)
    for i, p in enumerate(primes.tolist()):
        r = D % p
        if r == 0:
            out[i] = 0
        else:
            out[i] = 1 if pow(r, (p - 1) >> 1, p) == 1 else -1
    return out


def _log_product(logs: np.ndarray) -> float:
    return math.exp(math.fsum(logs))


def twin_c2(P: int) -> float:
    p = _primes(P)
    p = p[p > 2].astype(np.float64)
    return _log_product(np.log1p(-1.0 / (p - 1) ** 2))


def depolignac_factor(k: int) -> float:
    """prod over odd p | k of (p - 1)/(p - 2)."""
    return math.prod((p - 1) / (p - 2) for p, _ in factor(k) if p > 2)


def quadratic_cf(f: Tuple[int, int, int], P: int) -> float:
    """prod over 2 < p <= P, p not dividing a, of 1 - chi_p(b^2 - 4ac)/(p - 1)."""
    a, b, c = f
    D = b * b - 4 * a * c
    p = _primes(P)
    p = p[(p > 2) & (a % p != 0)]
    chi = _legendre_vec(D, p)
    return _log_product(np.log1p(-chi / (p.astype(np.float64) - 1)))


def quad_twin_roots(p: int) -> int:
    """Number of roots of (n^2 + 1)(n^2 + 3) modulo an odd prime p >= 5."""
    def chi(x):
        return 1 if pow(x % p, (p - 1) // 2, p) == 1 else -1

    return (1 + chi(-1)) + (1 + chi(-3))


def quad_twin(P: int) -> float:
    p = _primes(P)
    p = p[p >= 5]
    w = (1 + np.where(p % 4 == 1, 1, -1)) + (1 + np.where(p % 3 == 1, 1, -1))
    pf = p.astype(np.float64)
    return _log_product(np.log(pf) + np.log(pf - w) - 2 * np.log(pf - 1))


def theta_singular(P: int) -> float:
    p = _primes(P)
    p = p[p >= 3].astype(np.float64)
    return _log_product(np.log1p(-1.0 / (p - 1) ** 2))


def artin_ca(P: int) -> float:
    p = _primes(P).astype(np.float64)
    return _log_product(np.log1p(-1.0 / (p * (p - 1))))


def hl_constant(kind: str, P: int = 10**6, k: int = 1, f: Tuple[int, int, int] = (1, 0, 1)) -> float:
    """Truncated Euler product for one of the pattern constants.

    Args:
        kind: one of KINDS.
        P: truncation bound, at least 1000.
        k: half the shift for ``depolignac_2k``.
        f: coefficients (a, b, c) for ``quadratic_Cf``.
    """
    if P < 1000:
        raise ValueError(f"truncation P must be >= 1000, got {P}")
    if kind == "twin_c2":
        return twin_c2(P)
    if kind == "depolignac_2k":
        return twin_c2(P) * depolignac_factor(k)
    if kind == "quadratic_Cf":
        return quadratic_cf(tuple(f), P)
    if kind == "quad_twin":
        return quad_twin(P)
    if kind == "theta_singular":
        return theta_singular(P)
    if kind == "artin_Ca":
        return artin_ca(P)
    raise ValueError(f"unknown constant {kind!r}")


def euler_tail(kind: str, P: int, **kw) -> float:
    if kind in CONDITIONAL:
        return abs(hl_constant(kind, P, **kw) - hl_constant(kind, max(P // 10, 1000), **kw))
    return 1.0 / (P * math.log(P))


def hl_constant_with_tail(kind: str, P: int = 10**6, **kw) -> EulerProduct:
    return EulerProduct(hl_constant(kind, P, **kw), euler_tail(kind, P, **kw))


def _log_power_integral(x: float, lower: float, power: int) -> float:
    if x < lower:
        raise ValueError(f"upper limit {x} below lower limit {lower}")
    if x == lower:
        return 0.0
    if lower <= 1.0:
        raise ValueError("lower limit must exceed 1")
    # t = e^u removes the endpoint stiffness of 1/log t near t = 1
    val, _ = integrate.quad(
        lambda u: math.exp(u) / u**power, math.log(lower), math.log(x),
        epsabs=0.0, epsrel=1e-12, limit=200,
    )
    return val


def li2(x: float, lower: float = 2.0) -> float:
    """integral of dt / log(t)^2 from ``lower`` to x."""
    return _log_power_integral(x, lower, 2)


def li(x: float) -> float:
    """Logarithmic integral li(x) = li(2) + integral of dt/log t from 2 to x."""
    return LI_AT_2 + _log_power_integral(x, 2.0, 1)
