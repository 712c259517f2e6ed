"""Partial sums of mu(n) log(n) / n^s and their limiting constants.

Sums run over ascending n through ``np.cumsum`` so results are reproducible
bit for bit and a whole grid of cut-offs costs one pass.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Union

import numpy as np

from .ap_sums import ApClass
from .sieve_core import SieveTables

EULER_GAMMA = 0.577215664901532860606512090082
LOG_TWO_PI = 1.83787706640934548356065947281
LOG_GLAISHER = 0.248754477033784262547252993576

ALL_FACTORS_1MOD4 = "all_factors_1mod4"
Restriction = Optional[Union[str, ApClass]]


def _restriction_mask(tables: SieveTables, x: int, restriction: Restriction) -> Optional[np.ndarray]:
    if restriction is None or restriction == "none":
        return None
    n = np.arange(x + 1)
    if isinstance(restriction, ApClass):
        return n % restriction.q == restriction.a
    if restriction == ALL_FACTORS_1MOD4:
        keep = np.ones(x + 1, dtype=bool)
        primes = tables.primes
        for p in primes[(primes <= x) & (primes % 4 != 1)]:
            keep[p::p] = False
        return keep
    raise ValueError(f"unknown restriction {restriction!r}")


def twisted_terms(tables: SieveTables, x: int, s: float, restriction: Restriction = None) -> np.ndarray:
    """Array t[n] = mu(n) log(n) / n^s for 0 <= n <= x (t[0] = 0)."""
    tables.check_range(x)
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    n = np.arange(x + 1, dtype=np.float64)
    n[0] = 1.0
    terms = tables.mu[: x + 1] * np.log(n) / n**s
    terms[0] = 0.0
    mask = _restriction_mask(tables, x, restriction)
    if mask is not None:
        terms = np.where(mask, terms, 0.0)
    return terms


def twisted_mobius_partials(
    tables: SieveTables, xs: Iterable[int], s: float, restriction: Restriction = None
) -> list[float]:
    xs = list(xs)
    prefix = np.cumsum(twisted_terms(tables, max(xs), s, restriction))
    return [float(prefix[x]) for x in xs]


def twisted_mobius_sum(tables: SieveTables, x: int, s: float, restriction: Restriction = None) -> float:
    """sum over n <= x (satisfying the restriction) of mu(n) log(n) / n^s.

    ``restriction`` is None, an :class:`ApClass` for n = a (mod q), or
    ``"all_factors_1mod4"`` to keep n whose prime factors are all 1 mod 4.
    """
    return twisted_mobius_partials(tables, [x], s, restriction)[0]


def mobius_log_sum(tables: SieveTables, x: int) -> float:
    """sum_{n <= x} mu(n) log n."""
    return float(np.cumsum(_mobius_log_terms(tables, x))[-1])


def _mobius_log_terms(tables: SieveTables, x: int) -> np.ndarray:
    tables.check_range(x)
    n = np.arange(x + 1, dtype=np.float64)
    n[0] = 1.0
    return tables.mu[: x + 1] * np.log(n)


def restricted_difference(tables: SieveTables, x: int, s: float) -> float:
    """(-sum over all-factors-1-mod-4 n) - (-sum over n = 1 mod 4)."""
    restricted = twisted_mobius_sum(tables, x, s, ALL_FACTORS_1MOD4)
    one_mod_four = twisted_mobius_sum(tables, x, s, ApClass(4, 1))
    return one_mod_four - restricted


def _principal_mod4(s: float, truncation: int) -> tuple[float, float]:
    """L(s, chi_0 mod 4) and its derivative by direct odd-n summation plus tail."""
    n = np.arange(1, truncation + 1, 2, dtype=np.float64)
    power = n**-s
    L = math.fsum(power)
    dL = -math.fsum(np.log(n) * power)
    # tail over odd n > truncation via Euler-Maclaurin in k, n = 2k + 1
    t = float(n[-1] + 2)
    g = t**-s
    h = math.log(t) * t**-s
    int_g = t ** (1 - s) / (s - 1)
    int_h = t ** (1 - s) * (math.log(t) / (s - 1) + 1 / (s - 1) ** 2)
    dg = -s * t ** (-s - 1)
    dh = t ** (-s - 1) * (1 - s * math.log(t))
    # sum_{k>=0} F(k) ~ int_0^inf F + F(0)/2 - F'(0)/12, F(k) = f(t + 2k)
    L += 0.5 * int_g + 0.5 * g - 2 * dg / 12
    dL -= 0.5 * int_h + 0.5 * h - 2 * dh / 12
    return L, dL


def reference_constant(s: float, variant: str, truncation: int = 10**6) -> float:
    """Limit targets for the twisted sums.

    Variants:
        zeta_s1: zeta'(1)/zeta(1)^2 in the limiting sense, exactly -1.
        zeta_s2: zeta'(2)/zeta(2)^2 from Euler's and Glaisher's constants.
        L_mod4: L'(s)/L(s)^2 for the principal character mod 4.
    """
    if variant == "zeta_s1":
        if s != 1:
            raise ValueError("zeta_s1 is defined at s = 1 only")
        return -1.0
    if variant == "zeta_s2":
        if s != 2:
            raise ValueError("zeta_s2 is defined at s = 2 only")
        return 6 * (EULER_GAMMA + LOG_TWO_PI - 12 * LOG_GLAISHER) / math.pi**2
    if variant == "L_mod4":
        if s <= 1:
            raise ValueError("L_mod4 series needs s > 1")
        L, dL = _principal_mod4(s, truncation)
        return dL / L**2
    raise ValueError(f"unknown variant {variant!r}")


def zeta_s2_opposite_sign() -> float:
    """-6(gamma + log 2pi - 12 log A)/pi^2, the closed form with the other sign.

    Kept so reports can show it next to the summed value it disagrees with.
    """
    return -reference_constant(2, "zeta_s2")


def mobius_log_ratio(tables: SieveTables, x: int) -> float:
    """|sum_{n<=x} mu(n) log n| / (x log x)."""
    return abs(mobius_log_sum(tables, x)) / (x * math.log(x))
