"""Independent brute-force oracles shared by the tests.

Nothing here imports the package, so every expected value is computed by a
different route from the code under test.
"""

import math

import numpy as np

ACCEPTANCE_LINES = []


def eratosthenes(n):
    """Boolean prime flags 0..n from the plain sieve of Eratosthenes."""
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def factor(n):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def mu(n):
    f = factor(n)
    if any(e > 1 for _, e in f):
        return 0
    return (-1) ** len(f)


def phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def sigma(n):
    return sum(divisors(n))


def tau(n):
    return len(divisors(n))


def omega(n):
    return len(factor(n))


def lambda_base(n):
    """p if n is a power of the prime p, else 0."""
    f = factor(n) if n > 1 else []
    return f[0][0] if len(f) == 1 else 0


def psi_terms(x):
    """{p: multiplicity} for psi(x) = sum of log p over prime powers <= x."""
    out = {}
    for n in range(2, x + 1):
        p = lambda_base(n)
        if p:
            out[p] = out.get(p, 0) + 1
    return out


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} | {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok
