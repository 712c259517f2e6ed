"""Chebyshev-type sums, the Selberg sum, the Moebius identity for psi and
counting by partial summation."""

from __future__ import annotations

import math
from typing import List, NamedTuple

import numpy as np

from .constellations import ConstellationSpec, _require
from .exact_logs import LogCombination
from .sieve_core import SieveTables


class LogFactorial(NamedTuple):
    value: float
    stirling_delta: float


def log_factorial(x: int) -> LogFactorial:
    """sum_{n <= x} log n and its deviation from x log x - x."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    value = math.fsum(np.log(np.arange(1, x + 1, dtype=np.float64)))
    return LogFactorial(value, value - (x * math.log(x) - x))


def _primes_to(tables: SieveTables, x: int) -> np.ndarray:
    tables.check_range(x)
    return np.flatnonzero(tables.prime_flags[: x + 1])


def mertens_logp_sum(tables: SieveTables, x: int) -> float:
    """sum_{p <= x} log p / p."""
    p = _primes_to(tables, x).astype(np.float64)
    return math.fsum(np.log(p) / p)


def mertens_logp_deviation(tables: SieveTables, x: int) -> float:
    """sum_{p <= x} log p / p - log x, reported without a target constant."""
    return mertens_logp_sum(tables, x) - math.log(x)


class SelbergResult(NamedTuple):
    lhs: float
    ratio: float


def selberg_check(tables: SieveTables, x: int) -> SelbergResult:
    """sum_{p<=x} log^2 p + sum_{pq<=x} log p log q over ordered pairs.

    ``ratio`` divides by 2 x log x.
    """
    p = _primes_to(tables, x)
    if p.size == 0:
        return SelbergResult(0.0, 0.0)
    logs = np.log(p.astype(np.float64))
    theta = np.cumsum(logs)
    # theta(x // p) for every p, zero where no q <= x // p exists
    idx = np.searchsorted(p, x // p, side="right") - 1
    inner = np.where(idx >= 0, theta[np.maximum(idx, 0)], 0.0)
    lhs = math.fsum(logs * logs) + math.fsum(logs * inner)
    return SelbergResult(lhs, lhs / (2 * x * math.log(x)) if x > 1 else 0.0)


def chebyshev_ratio(tables: SieveTables, x: int) -> float:
    """pi(x) log x / x."""
    return _primes_to(tables, x).size * math.log(x) / x


def _mobius_coefficients(tables: SieveTables, x: int, p: int) -> np.ndarray:
    """c[k] = -sum of mu(d) over squarefree d with p | d and d | p k, k <= x // p.

    Writing d = p m with p not dividing m, mu(d) = -mu(m).
    """
    top = x // p
    c = np.zeros(top + 1, dtype=np.int64)
    mu = tables.mu
    for m in range(1, top + 1):
        if mu[m] and m % p:
            c[m::m] += int(mu[m])
    return c


def psi_via_mobius_exact(tables: SieveTables, x: int) -> LogCombination:
    """-sum_{d <= x} mu(d) floor(x/d) log d, exactly.

    With log d = sum over p | d of log p, the coefficient of log p is
    sum over m <= x/p, p not dividing m, of mu(m) floor(x/(p m)).
    """
    out = {}
    for p in _primes_to(tables, x).tolist():
        m = np.arange(1, x // p + 1, dtype=np.int64)
        keep = m % p != 0
        m = m[keep]
        c = int(np.dot(tables.mu[m].astype(np.int64), x // (p * m)))
        if c:
            out[p] = c
    return LogCombination(out)


def psi_identity_scan(tables: SieveTables, x_max: int) -> List[int]:
    """Every x <= x_max where psi_via_mobius_exact(x) != psi(x).

    Both sides are step functions in x.  The inverted side jumps at n by
    -sum_{d | n} mu(d) log d; these jumps are accumulated divisor first,
    one prime p at a time, and their running difference from the jumps of
    psi gives the coefficient of log p in the mismatch at every x.
    """
    tables.check_range(x_max)
    wrong = np.zeros(x_max + 2, dtype=np.int64)
    base = tables.mangoldt_base
    for p in _primes_to(tables, x_max).tolist():
        c = _mobius_coefficients(tables, x_max, p)
        n = p * np.arange(c.size)
        expected = (base[n] == p).astype(np.int64)
        expected[0] = 0
        diff = np.cumsum(c - expected)
        # diff[k] is the log p mismatch on p k <= x < p (k + 1)
        for k in np.flatnonzero(diff).tolist():
            wrong[p * k] += 1
            wrong[min(p * (k + 1), x_max + 1)] -= 1
    return np.flatnonzero(np.cumsum(wrong)[: x_max + 1]).tolist()


def _anchors(spec: ConstellationSpec, x: int) -> np.ndarray:
    """Indices n whose occurrence is counted at cut-off x."""
    k, p = spec.kind, spec.params
    if k in ("quadratic", "quadratic_twin"):
        return np.arange(1, math.isqrt(max(x - p[0], 0)) + 1, dtype=np.int64)
    if k == "linear_ap":
        q, a = p
        return np.arange(0, (x - a) // q + 1 if x >= a else 0, dtype=np.int64)
    return np.arange(1, x + 1, dtype=np.int64)


def _values(spec: ConstellationSpec, n: np.ndarray) -> List[np.ndarray]:
    k, p = spec.kind, spec.params
    if k == "all_primes":
        return [n]
    if k == "twin":
        return [n, n + p[0]]
    if k == "germain":
        return [n, p[0] * n + p[1]]
    if k == "linear_ap":
        return [p[0] * n + p[1]]
    if k == "quadratic":
        return [n * n + p[0]]
    return [n * n + p[0], n * n + p[1]]


def count_by_partial_summation(tables: SieveTables, spec: ConstellationSpec, x: int) -> float:
    """Pattern count recovered from the von Mangoldt weighted sum.

    Each anchor contributes w(n) prod Lambda(v) / (w(n) prod log v), which
    is 1 on prime values and 1/k on k-th prime powers.  The prime-power
    terms are enumerated separately and subtracted inside one correctly
    rounded sum, so the result is the exact integer count.
    """
    n = _anchors(spec, x)
    values = _values(spec, n)
    if n.size:
        _require(tables, int(max(v.max() for v in values)))
    mask = np.ones(n.size, dtype=bool)
    for v in values:
        mask &= tables.mangoldt_base[v] > 0
    terms = np.ones(int(mask.sum()))
    powers = np.zeros(int(mask.sum()), dtype=bool)
    w = _weights(tables, spec, n[mask])
    for v in values:
        v = v[mask]
        base = tables.mangoldt_base[v].astype(np.float64)
        terms *= np.log(base) / np.log(v.astype(np.float64))
        powers |= tables.mangoldt_exp[v] > 1
    stieltjes = (w * terms) / w
    contamination = stieltjes[powers]
    return math.fsum(np.concatenate([stieltjes, -contamination]))


def _weights(tables: SieveTables, spec: ConstellationSpec, n: np.ndarray) -> np.ndarray:
    if spec.weight == "unit":
        return np.ones(n.size)
    if spec.weight == "n":
        w = n.astype(np.float64)
        return w * w if spec.kind in ("quadratic", "quadratic_twin") else np.maximum(w, 1.0)
    return np.maximum(getattr(tables, spec.weight)[np.maximum(n, 1)].astype(np.float64), 1.0)
