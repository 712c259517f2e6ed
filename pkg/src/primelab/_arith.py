"""Trial-division helpers for small arguments outside any sieve table."""

from __future__ import annotations

from typing import List, Tuple


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor(n: int) -> List[Tuple[int, int]]:
    """Ascending (p, e) pairs for n >= 1."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors_from(factorization: List[Tuple[int, int]]) -> List[int]:
    divs = [1]
    for p, e in factorization:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def mobius(n: int) -> int:
    fac = factor(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1
