"""Legendre symbols, modular square roots and CRT lifting for squarefree moduli."""

from __future__ import annotations

import math
from itertools import product
from typing import List, Tuple

from ._arith import factor, is_prime


def quadratic_symbol(x: int, p: int) -> int:
    """Legendre symbol (x/p) by Euler's criterion.

    Raises:
        ValueError: if p is not an odd prime.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"quadratic_symbol needs an odd prime modulus, got {p}")
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def smallest_nonresidue(p: int) -> int:
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    return n


def sqrt_mod_prime(a: int, p: int) -> List[int]:
    """All roots of n^2 = a (mod p) in [0, p), via Tonelli-Shanks.

    Handles p = 2 and a = 0 (mod p) as well; returns [] for nonresidues.
    """
    a %= p
    if p == 2 or a == 0:
        return [a]
    if pow(a, (p - 1) // 2, p) != 1:
        return []
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return sorted({r, p - r})

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    if r * r % p != a:
        raise ArithmeticError(f"root check failed for a={a}, p={p}")
    return sorted({r, p - r})


def sqrt_minus_one(p: int) -> Tuple[int, int]:
    """Both square roots of -1 modulo a prime p = 1 (mod 4)."""
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"-1 has square roots only modulo primes p = 1 (mod 4), got {p}")
    b = pow(smallest_nonresidue(p), (p - 1) // 4, p)
    if b * b % p != p - 1:
        raise ArithmeticError(f"root check failed for p={p}")
    return tuple(sorted((b, p - b)))


def crt(residues: List[int], moduli: List[int]) -> int:
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        t = (r - x) * pow(m, -1, n) % n
        x += m * t
        m *= n
    return x % m


def roots_mod_primes(a: int, primes: List[int]) -> List[int]:
    """Roots of n^2 = a modulo the product of distinct primes.

    Any prime is allowed, including 2 and primes dividing a; the roots are
    CRT combinations of the per-prime roots.
    """
    if not primes:
        return [0]
    per_prime = []
    for p in primes:
        roots = sqrt_mod_prime(a, p)
        if not roots:
            return []
        per_prime.append(roots)
    return sorted(crt(list(combo), primes) for combo in product(*per_prime))


def roots_mod_squarefree(a: int, q: int) -> List[int]:
    """Sorted roots of n^2 = a (mod q) for odd squarefree q, gcd(a, q) = 1.

    The count is 2^omega(q) when a is a residue modulo every prime factor of
    q and 0 otherwise.
    """
    if q < 1 or q % 2 == 0:
        raise ValueError(f"modulus must be odd and positive, got {q}")
    fac = factor(q)
    if any(e > 1 for _, e in fac):
        raise ValueError(f"modulus must be squarefree, got {q}")
    if math.gcd(a, q) != 1:
        raise ValueError(f"gcd(a, q) must be 1, got a={a}, q={q}")
    return roots_mod_primes(a, [p for p, _ in fac])
