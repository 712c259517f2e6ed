"""Acceptance criteria, one test per criterion.

Every test prints a single ``[PASS]`` or ``[FAIL]`` line with the measured
values; the lines are repeated in the pytest terminal summary.  Run alone
with ``pytest tests/test_acceptance.py -v``.
"""

import math
import random
import time

import numpy as np

import oracles
from oracles import record
from primelab.ap_sums import ApClass, power_sum_ap
from primelab.constellations import ConstellationSpec, count, fubini_scan, inversion_rhs, predict, weighted_sum_lhs
from primelab.hardy_littlewood import hl_constant
from primelab.mangoldt import generalized_mangoldt, mangoldt_via_mobius
from primelab.pnt_suite import (
    chebyshev_ratio,
    count_by_partial_summation,
    psi_identity_scan,
    psi_via_mobius_exact,
    selberg_check,
)
from primelab.primitive_roots import theorem91_scan
from primelab.quadratic_residues import quadratic_symbol, roots_mod_squarefree
from primelab.sieve_core import mangoldt, mertens_prefix, summatory
from primelab.twisted_sums import twisted_mobius_sum, zeta_s2_opposite_sign

FUBINI_SPECS = [
    ConstellationSpec.twin(2),
    ConstellationSpec.twin(4),
    ConstellationSpec.germain(2, 1),
    ConstellationSpec.linear_ap(4, 3),
    ConstellationSpec.quadratic(1),
]


def test_criterion_01_fubini(medium):
    start = time.perf_counter()
    bad = {s.label: fubini_scan(medium, s, 5000) for s in FUBINI_SPECS}
    # the closed-form inversion, built separately, at the top cut-off
    top = all(weighted_sum_lhs(medium, s, 5000) == inversion_rhs(medium, s, 5000) for s in FUBINI_SPECS)
    elapsed = time.perf_counter() - start
    ok = not any(bad.values()) and top and elapsed < 60
    mismatches = sum(len(v) for v in bad.values())
    assert record(1, "exact inversion identity, 5 patterns, every x <= 5000", ok,
                  f"mismatching x: {mismatches}, closed form at 5000 equal: {top}, {elapsed:.1f}s")


def test_criterion_02_psi_mobius(medium):
    x_max = 10**5
    bad = psi_identity_scan(medium, x_max)
    rng = random.Random(0)
    sample = [1, 2, x_max] + [rng.randint(1, x_max) for _ in range(25)]
    direct = all(psi_via_mobius_exact(medium, x) == summatory(medium, "psi", x) for x in sample)
    ok = not bad and direct
    assert record(2, "psi via Moebius equals psi exactly, every x <= 1e5", ok,
                  f"mismatching x: {len(bad)}, direct checks at {len(sample)} x equal: {direct}")


def test_criterion_03_mangoldt(medium, small):
    bad = [n for n in range(1, 10**5 + 1) if mangoldt_via_mobius(medium, n) != mangoldt(medium, n)]
    worst = 0.0
    for n in range(2, 10**4 + 1):
        if small.omega[n] > 2:
            worst = max(worst, abs(generalized_mangoldt(small, n, 2)))
    ok = not bad and worst < 1e-8
    assert record(3, "Lambda identity n <= 1e5; Lambda_2 vanishing n <= 1e4", ok,
                  f"mismatches: {len(bad)}, max |Lambda_2| with omega > 2: {worst:.2e}")


def test_criterion_04_counting(big):
    flags = oracles.eratosthenes(10**6)
    naive_pi = int(flags.sum())
    pi = count(big, ConstellationSpec.all_primes(), 10**6)
    ip = oracles.is_prime
    brute = {
        "twin": sum(ip(p) and ip(p + 2) for p in range(101)),
        "germain": sum(ip(p) and ip(2 * p + 1) for p in range(101)),
        "quad": sum(ip(n * n + 1) for n in range(1, 10) if n * n + 1 <= 100),
    }
    specs = {"twin": ConstellationSpec.twin(2), "germain": ConstellationSpec.germain(2, 1),
             "quad": ConstellationSpec.quadratic(1)}
    counts = {k: count(big, s, 100) for k, s in specs.items()}
    partial = {k: count_by_partial_summation(big, s, 100) for k, s in specs.items()}
    partial_pi = count_by_partial_summation(big, ConstellationSpec.all_primes(), 10**6)
    ok = (
        pi == naive_pi == 78498
        and brute == {"twin": 8, "germain": 10, "quad": 4}
        and counts == brute
        and all(partial[k] == counts[k] for k in counts)
        and partial_pi == pi
    )
    assert record(4, "counting oracles and partial summation", ok,
                  f"pi(1e6)={pi} (naive {naive_pi}), counts at 100 {counts}, partial summation {partial}, "
                  f"partial pi(1e6)={partial_pi}")


def test_criterion_05_twin_constant():
    start = time.perf_counter()
    c2 = hl_constant("twin_c2", 10**6)
    elapsed = time.perf_counter() - start
    ok = abs(c2 - 0.6601618158) <= 1e-6 and elapsed < 10
    assert record(5, "twin prime constant at P = 1e6", ok, f"{c2:.10f}, |diff| {abs(c2 - 0.6601618158):.1e}, {elapsed:.2f}s")


def test_criterion_06_artin_constant():
    ca = hl_constant("artin_Ca", 10**6)
    ok = abs(ca - 0.373956) <= 1e-5
    assert record(6, "Artin constant at P = 1e6", ok, f"{ca:.8f}, |diff| {abs(ca - 0.373956):.1e}")


def test_criterion_07_quadratic_constant():
    c6 = hl_constant("quadratic_Cf", 10**6, f=(1, 0, 1))
    c7 = hl_constant("quadratic_Cf", 10**7, f=(1, 0, 1))
    drift = abs(c7 - c6)
    ok = abs(c7 - 1.37281346) <= 1e-2 and drift < 5e-3
    assert record(7, "quadratic constant for n^2 + 1", ok, f"P=1e7 {c7:.6f}, P=1e6 {c6:.6f}, drift {drift:.1e}")


def test_criterion_08_twisted_s2(big):
    s2 = twisted_mobius_sum(big, 10**6, 2)
    ok = abs(s2 - (-0.34650)) <= 1e-3
    assert record(8, "twisted sum at s = 2", ok,
                  f"{s2:.7f}; the closed form with the opposite sign gives {zeta_s2_opposite_sign():+.7f}")


def test_criterion_09_twisted_s1(big):
    values = {x: twisted_mobius_sum(big, x, 1) for x in (10**4, 10**5, 10**6)}
    in_band = all(-1.3 <= v <= -0.7 for v in values.values())
    closest = min(values, key=lambda x: abs(values[x] + 1)) == 10**6
    ok = in_band and closest
    detail = ", ".join(f"x=1e{int(math.log10(x))}: {v:.5f}" for x, v in values.items())
    assert record(9, "twisted sum at s = 1 trends to -1", ok, detail)


def test_criterion_10_theorem91(big):
    start = time.perf_counter()
    res = theorem91_scan(big, 10**6)
    elapsed = time.perf_counter() - start
    ok = not res.violations and elapsed < 60
    assert record(10, "generator cases (i)-(iii) for q <= 1e6", ok,
                  f"violations {len(res.violations)}, cases {res.counts}, {elapsed:.2f}s")


def test_criterion_11_quadratic_residues(small):
    bad_law = []
    checked = 0
    for q in range(1, 10**4 + 1, 2):
        if not small.mu[q]:
            continue
        checked += 1
        roots = roots_mod_squarefree(-1, q)
        brute_ok = all((r * r + 1) % q == 0 for r in roots)
        if len(roots) not in (0, 2 ** int(small.omega[q])) or not brute_ok:
            bad_law.append(q)
    primes = [p for p in range(3, 500) if small.is_prime(p)]
    bad_rec = [
        (p, q) for p in primes for q in primes
        if p != q and quadratic_symbol(p, q) * quadratic_symbol(q, p) != (-1) ** ((p - 1) * (q - 1) // 4)
    ]
    ok = not bad_law and not bad_rec
    assert record(11, "root count law and reciprocity", ok,
                  f"moduli checked {checked}, law failures {len(bad_law)}, "
                  f"prime pairs {len(primes) * (len(primes) - 1)}, reciprocity failures {len(bad_rec)}")


def test_criterion_12_lemma83():
    rng = random.Random(0)
    bad = []
    for _ in range(1000):
        q = rng.randint(1, 50)
        a = rng.randrange(q)
        e = rng.randint(0, 3)
        x = rng.randint(1, 10**4)
        brute = sum(n**e for n in range(1, x + 1) if n % q == a)
        if power_sum_ap(x, ApClass(q, a), e) != brute:
            bad.append((x, q, a, e))
    assert record(12, "progression power sums, 1000 seeded tuples", not bad, f"mismatches {len(bad)}")


def test_criterion_13_selberg_and_chebyshev(big):
    selberg = selberg_check(big, 10**6)
    ratios = {x: chebyshev_ratio(big, x) for x in (10**3, 10**4, 10**5, 10**6)}
    band = all(0.9 <= r <= 1.2 for r in ratios.values())
    selberg_ok = 0.94 <= selberg.ratio <= 1.06
    ok = band and selberg_ok
    detail = (f"Selberg ratio at 1e6 {selberg.ratio:.4f} (band [0.94, 1.06]: {selberg_ok}); "
              f"Chebyshev ratios {[round(r, 4) for r in ratios.values()]} (band [0.9, 1.2]: {band})")
    assert record(13, "Selberg ratio and Chebyshev band", ok, detail)


def test_criterion_14_hl_prediction(big):
    spec = ConstellationSpec.twin(2)
    c = count(big, spec, 10**6)
    flags = oracles.eratosthenes(10**6 + 2)
    naive = int(np.count_nonzero(flags[: 10**6 + 1] & flags[2 : 10**6 + 3]))
    pred = predict(spec, 10**6)
    ratio = pred / c
    ok = c == naive == 8169 and 0.95 <= ratio <= 1.05
    assert record(14, "twin prediction against count at 1e6", ok,
                  f"count {c} (naive {naive}), prediction {pred:.2f}, ratio {ratio:.4f}")


def test_criterion_15_mertens_bound(big):
    m = mertens_prefix(big)[1 : 10**6 + 1].astype(np.float64)
    x = np.arange(1, 10**6 + 1, dtype=np.float64)
    violations = np.flatnonzero(np.abs(m) >= np.sqrt(x)) + 1
    ok = violations.size == 0
    detail = f"violations {violations.size}"
    if violations.size:
        first = int(violations[0])
        detail += f", first at x={first} with |M(x)|={abs(int(m[first - 1]))}, sqrt(x)={math.sqrt(first):g}"
    assert record(15, "|M(x)| < sqrt(x) for all x <= 1e6", ok, detail)
