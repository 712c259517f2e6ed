"""Prime patterns: counting, weighted sums and their Moebius inversions.

A pattern pairs an index n with one or two values that must be prime:

    all_primes      n
    twin(2k)        n, n + 2k
    germain(m, b)   n, m n + b with m in {2, 4}
    linear_ap(q, a) q n + a
    quadratic(c)    n^2 + c
    quadratic_twin  n^2 + c1, n^2 + c2

The weighted sum puts w(n) * Lambda(...) on every index and is an exact
formal object.  Its inversion replaces the last Lambda factor by
-sum_{d | value} mu(d) log d and swaps the order of summation, so the
outer loop runs over squarefree d and the inner loop over the residue class
of indices n whose pattern value d divides.  Both sides are built
independently and compared as formal objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .ap_sums import ApClass, power_sum_ap
from .exact_logs import LogBilinear, LogCombination, prefix_mismatches
from .hardy_littlewood import depolignac_factor, hl_constant, li2, quadratic_cf
from .quadratic_residues import roots_mod_primes
from .sieve_core import SieveRangeError, SieveTables

WEIGHTS = ("n", "phi", "sigma", "tau", "unit")
KINDS = ("all_primes", "twin", "germain", "linear_ap", "quadratic", "quadratic_twin")
QUADRATIC_KINDS = ("quadratic", "quadratic_twin")


@dataclass(frozen=True)
class ConstellationSpec:
    """A prime pattern plus the integer weight used in its weighted sum.

    ``params`` by kind: twin (shift,), germain (m, b), linear_ap (q, a),
    quadratic (c,), quadratic_twin (c1, c2), all_primes ().  The germain multiplier is
    2^a with a in {1, 2}, given as the multiplier itself.
    """

    kind: str
    params: Tuple[int, ...] = ()
    weight: str = "n"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.weight not in WEIGHTS:
            raise ValueError(f"unknown weight {self.weight!r}")
        k, p = self.kind, self.params
        if k == "twin" and (len(p) != 1 or p[0] < 2 or p[0] % 2):
            raise ValueError(f"twin shift must be even and >= 2, got {p}")
        if k == "germain":
            if len(p) != 2 or p[0] not in (2, 4) or p[1] % 2 == 0:
                raise ValueError(f"germain needs multiplier 2 or 4 and odd offset, got {p}")
            if p[0] + p[1] < 1:
                raise ValueError(f"germain offset too negative: {p}")
        if k == "linear_ap" and (len(p) != 2 or p[0] < 1 or p[1] < 0 or math.gcd(p[0], p[1]) != 1):
            raise ValueError(f"linear_ap needs q >= 1, a >= 0, gcd(a, q) = 1, got {p}")
        if k == "quadratic" and (len(p) != 1 or p[0] < 1):
            raise ValueError(f"quadratic needs c >= 1, got {p}")
        if k == "quadratic_twin" and (len(p) != 2 or not 1 <= p[0] < p[1]):
            raise ValueError(f"quadratic_twin needs 1 <= c1 < c2, got {p}")

    @classmethod
    def all_primes(cls, weight: str = "unit") -> "ConstellationSpec":
        return cls("all_primes", (), weight)

    @classmethod
    def twin(cls, shift: int = 2, weight: str = "n") -> "ConstellationSpec":
        return cls("twin", (shift,), weight)

    @classmethod
    def germain(cls, m: int = 2, b: int = 1, weight: str = "n") -> "ConstellationSpec":
        return cls("germain", (m, b), weight)

    @classmethod
    def linear_ap(cls, q: int, a: int, weight: str = "n") -> "ConstellationSpec":
        return cls("linear_ap", (q, a), weight)

    @classmethod
    def quadratic(cls, c: int = 1, weight: str = "n") -> "ConstellationSpec":
        return cls("quadratic", (c,), weight)

    @classmethod
    def quadratic_twin(cls, c1: int = 1, c2: int = 3, weight: str = "n") -> "ConstellationSpec":
        return cls("quadratic_twin", (c1, c2), weight)

    @property
    def bilinear(self) -> bool:
        return self.kind in ("twin", "germain", "quadratic_twin")

    @property
    def label(self) -> str:
        if self.kind == "all_primes":
            return "primes"
        if self.kind == "quadratic_twin":
            return "quadtwin" if self.params == (1, 3) else "quadtwin:%d,%d" % self.params
        short = {"twin": "twin", "germain": "germain", "linear_ap": "ap", "quadratic": "quad"}
        return f"{short[self.kind]}:{','.join(map(str, self.params))}"

    def value(self, n: int) -> int:
        """The pattern value carrying the final Lambda factor at index n."""
        k, p = self.kind, self.params
        if k == "all_primes":
            return n
        if k == "twin":
            return n + p[0]
        if k == "germain":
            return p[0] * n + p[1]
        if k == "linear_ap":
            return p[0] * n + p[1]
        if k == "quadratic":
            return n * n + p[0]
        return n * n + p[1]

    def first_value(self, n: int) -> int:
        """The value carrying the first Lambda factor of a bilinear pattern."""
        if self.kind == "quadratic_twin":
            return n * n + self.params[0]
        return n

    def index_bound(self, x: int) -> int:
        """Largest index n included at cut-off x in the weighted sums."""
        return math.isqrt(x) if self.kind in QUADRATIC_KINDS else x

    def x_of_index(self, n: int) -> int:
        """Smallest cut-off x at which index n enters the weighted sums."""
        return n * n if self.kind in QUADRATIC_KINDS else n


def parse_pattern(text: str, weight: str = "n") -> ConstellationSpec:
    """Parse CLI pattern strings such as ``twin:2``, ``germain:2,1``, ``quad:1``."""
    name, _, arg = text.partition(":")
    nums = tuple(int(v) for v in arg.split(",")) if arg else ()
    if name == "primes" and not nums:
        return ConstellationSpec.all_primes("unit" if weight == "n" else weight)
    if name == "twin":
        return ConstellationSpec("twin", nums or (2,), weight)
    if name == "germain":
        return ConstellationSpec("germain", nums or (2, 1), weight)
    if name == "ap":
        return ConstellationSpec("linear_ap", nums, weight)
    if name == "quad":
        return ConstellationSpec("quadratic", nums or (1,), weight)
    if name == "quadtwin":
        return ConstellationSpec("quadratic_twin", nums or (1, 3), weight)
    raise ValueError(f"unknown pattern {text!r}")


def sieve_limit(spec: ConstellationSpec, x: int) -> int:
    """Sieve limit needed to count and to form the weighted sums up to x."""
    top = max(x, spec.value(max(spec.index_bound(x), 1)))
    return max(top, 2)


def _require(tables: SieveTables, needed: int) -> None:
    if needed > tables.limit:
        raise SieveRangeError(f"pattern needs sieve limit {needed}, tables cover {tables.limit}")


def _weight(tables: SieveTables, spec: ConstellationSpec, n: int) -> int:
    w = spec.weight
    if w == "n":
        return n * n if spec.kind in QUADRATIC_KINDS else n
    if w == "unit":
        return 1
    return int(getattr(tables, w)[n])


def _lam(tables: SieveTables, n: int) -> int:
    """Base prime of Lambda(n), or 0."""
    return int(tables.mangoldt_base[n]) if n >= 1 else 0


# counting ---------------------------------------------------------------


def count(tables: SieveTables, spec: ConstellationSpec, x: int) -> int:
    """Number of pattern occurrences whose anchor value is at most x.

    The anchor is the prime p for linear patterns (p and p + 2k both prime
    counts once, with p <= x) and the value n^2 + c for quadratic patterns.
    """
    if x < 1:
        return 0
    flags = tables.prime_flags
    k, p = spec.kind, spec.params
    if k in QUADRATIC_KINDS:
        c1 = p[0]
        n = np.arange(1, math.isqrt(max(x - c1, 0)) + 1, dtype=np.int64)
        if n.size == 0:
            return 0
        first = n * n + c1
        _require(tables, int(first[-1]) if k == "quadratic" else int(n[-1] ** 2 + p[1]))
        ok = flags[first]
        if k == "quadratic_twin":
            ok &= flags[n * n + p[1]]
        return int(ok.sum())

    _require(tables, x)
    primes = np.flatnonzero(flags[: x + 1])
    if k == "all_primes":
        return int(primes.size)
    if k == "linear_ap":
        return int(np.count_nonzero(primes % p[0] == p[1] % p[0]))
    if k == "twin":
        _require(tables, x + p[0])
        return int(flags[primes + p[0]].sum())
    # germain
    partner = p[0] * primes + p[1]
    _require(tables, p[0] * x + p[1])
    return int(flags[partner[partner >= 0]].sum())


# weighted sums ------------------------------------------------------------


def _lhs_increment(tables: SieveTables, spec: ConstellationSpec, n: int):
    """w(n) * Lambda(first) * Lambda(value) at index n as a raw dict, or None."""
    last = _lam(tables, spec.value(n))
    if not last:
        return None
    w = _weight(tables, spec, n)
    if not w:
        return None
    if spec.bilinear:
        first = _lam(tables, spec.first_value(n))
        if not first:
            return None
        key = (first, last) if first <= last else (last, first)
        return {key: w}
    return {last: w}


def _formal(spec: ConstellationSpec, terms: dict):
    return LogBilinear(terms) if spec.bilinear else LogCombination(terms)


def weighted_sum_lhs(tables: SieveTables, spec: ConstellationSpec, x: int):
    """sum over indices n <= bound(x) of w(n) Lambda(...) as a formal object.

    Linear patterns run over n <= x; quadratic patterns over n^2 <= x with
    weight ``n`` meaning n^2.
    """
    top = spec.index_bound(x)
    if top >= 1:
        _require(tables, spec.value(top))
    out: dict = {}
    for n in range(1, top + 1):
        inc = _lhs_increment(tables, spec, n)
        if inc:
            for key, c in inc.items():
                out[key] = out.get(key, 0) + c
    return _formal(spec, out)


def _divisor_classes(tables: SieveTables, spec: ConstellationSpec, d_primes: List[int]) -> List[int]:
    """Residues r mod d of indices n whose pattern value is divisible by d."""
    d = math.prod(d_primes)
    k, p = spec.kind, spec.params
    if k == "all_primes":
        return [0]
    if k == "twin":
        return [(-p[0]) % d]
    if k == "germain":
        if d % 2 == 0:
            return []
        return [(-p[1]) * pow(p[0], -1, d) % d]
    if k == "linear_ap":
        if math.gcd(d, p[0]) != 1:
            return []
        return [(-p[1]) * pow(p[0], -1, d) % d]
    c = p[0] if k == "quadratic" else p[1]
    return roots_mod_primes(-c, d_primes)


def _inner_weight_sum(tables: SieveTables, spec: ConstellationSpec, r: int, d: int, top: int) -> int:
    """sum of w(n) over 1 <= n <= top with n = r (mod d), for linear patterns."""
    if spec.weight == "unit":
        return power_sum_ap(top, ApClass(d, r), 0)
    if spec.weight == "n":
        e = 2 if spec.kind in QUADRATIC_KINDS else 1
        return power_sum_ap(top, ApClass(d, r), e)
    arr = getattr(tables, spec.weight)
    start = r if r else d
    return int(arr[start : top + 1 : d].sum(dtype=np.int64))


def _squarefree_up_to(tables: SieveTables, limit: int):
    for d in range(2, limit + 1):
        if tables.mu[d]:
            yield d, int(tables.mu[d]), tables.prime_divisors(d)


def inversion_events(tables: SieveTables, spec: ConstellationSpec, x: int):
    """Yield (n, raw terms) contributions of the inverted sum, d first.

    Used by :func:`fubini_scan` so that every cut-off x' <= x can be
    checked from one pass over the divisors.
    """
    top = spec.index_bound(x)
    if top < 1:
        return
    max_value = max(spec.value(n) for n in (1, top))
    _require(tables, max_value)
    for d, mu_d, d_primes in _squarefree_up_to(tables, max_value):
        for r in _divisor_classes(tables, spec, d_primes):
            start = r if r else d
            for n in range(start, top + 1, d):
                if spec.value(n) < d:
                    continue
                w = _weight(tables, spec, n)
                if spec.bilinear:
                    first = _lam(tables, spec.first_value(n))
                    if not first or not w:
                        continue
                    yield n, {((first, q) if first <= q else (q, first)): -mu_d * w for q in d_primes}
                elif w:
                    yield n, {q: -mu_d * w for q in d_primes}


def inversion_rhs(tables: SieveTables, spec: ConstellationSpec, x: int):
    """-sum_d mu(d) log d * (inner sum over the class of n with d | value(n)).

    Linear inner sums with weight ``n`` or ``unit`` use the closed-form
    progression sums; the others enumerate the class.
    """
    top = spec.index_bound(x)
    out: dict = {}
    if top < 1:
        return _formal(spec, out)
    max_value = max(spec.value(n) for n in (1, top))
    _require(tables, max_value)
    for d, mu_d, d_primes in _squarefree_up_to(tables, max_value):
        for r in _divisor_classes(tables, spec, d_primes):
            if spec.bilinear:
                inner: dict = {}
                start = r if r else d
                for n in range(start, top + 1, d):
                    first = _lam(tables, spec.first_value(n))
                    w = _weight(tables, spec, n)
                    if first and w:
                        inner[first] = inner.get(first, 0) + w
                for first, s in inner.items():
                    for q in d_primes:
                        key = (first, q) if first <= q else (q, first)
                        out[key] = out.get(key, 0) - mu_d * s
            else:
                s = _inner_weight_sum(tables, spec, r, d, top)
                if s:
                    for q in d_primes:
                        out[q] = out.get(q, 0) - mu_d * s
    return _formal(spec, out)


def fubini_scan(tables: SieveTables, spec: ConstellationSpec, x_max: int) -> List[int]:
    """Cut-offs x in [1, x_max] where the weighted sum and its inversion differ.

    Both sides are step functions of x, so they agree at every x exactly
    when their running totals agree after each index; the inverted side is
    accumulated from divisor-first events.
    """
    top = spec.index_bound(x_max)
    if top >= 1:
        _require(tables, spec.value(top))
    lhs = {}
    for n in range(1, top + 1):
        inc = _lhs_increment(tables, spec, n)
        if inc:
            lhs[n] = inc
    rhs: Dict[int, dict] = {}
    for n, terms in inversion_events(tables, spec, x_max):
        acc = rhs.setdefault(n, {})
        for key, c in terms.items():
            acc[key] = acc.get(key, 0) + c
    return prefix_mismatches(lhs, rhs, spec.x_of_index, x_max)


# predictions ----------------------------------------------------------------


def predict(spec: ConstellationSpec, x: float, P: int = 10**6) -> float:
    """Conjectured main term for the count of the pattern up to x."""
    if x < 10:
        raise ValueError(f"x must be >= 10, got {x}")
    k, p = spec.kind, spec.params
    if k == "all_primes":
        from .hardy_littlewood import li

        return li(x)
    if k == "linear_ap":
        from .hardy_littlewood import li

        q = p[0]
        phi_q = sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)
        return li(x) / phi_q
    c2 = hl_constant("twin_c2", P)
    if k == "twin":
        return 2 * c2 * depolignac_factor(p[0] // 2) * li2(x)
    if k == "germain":
        return 2 * c2 * li2(x)
    if k == "quadratic":
        return quadratic_prediction((1, 0, p[0]), x, P)
    return 6 * math.sqrt(x) / math.log(x) * hl_constant("quad_twin", P)


def quadratic_prediction(f: Tuple[int, int, int], x: float, P: int = 10**6) -> float:
    """eps * C_f * a^(-1/2) * prod_{p | gcd(a,b)} p/(p-1) * sqrt(x)/log x."""
    a, b, c = f
    eps = 1 if (a + b) % 2 else 2
    g = math.gcd(a, b)
    extra = math.prod(p / (p - 1) for p in _small_primes_of(g))
    return eps * quadratic_cf(f, P) / math.sqrt(a) * extra * math.sqrt(x) / math.log(x)


def _small_primes_of(n: int) -> List[int]:
    from ._arith import factor

    return [p for p, _ in factor(n)] if n > 1 else []


# partial sums and scans -------------------------------------------------------


def brun_partial(tables: SieveTables, x: int) -> float:
    """sum over twin pairs (p, p+2) with p <= x of 1/p + 1/(p+2)."""
    _require(tables, x + 2)
    flags = tables.prime_flags
    p = np.flatnonzero(flags[: x + 1])
    p = p[flags[p + 2]].astype(np.float64)
    return float(np.cumsum(1.0 / p + 1.0 / (p + 2))[-1]) if p.size else 0.0


def germain_partial(tables: SieveTables, x: int) -> float:
    """sum of 1/p over primes p <= x with 2p + 1 prime."""
    _require(tables, 2 * x + 1)
    flags = tables.prime_flags
    p = np.flatnonzero(flags[: x + 1])
    p = p[flags[2 * p + 1]].astype(np.float64)
    return float(np.cumsum(1.0 / p)[-1]) if p.size else 0.0


class SignScan(NamedTuple):
    rows: List[Tuple[int, int, float, float]]
    crossings: List[int]


def sign_scan(tables: SieveTables, x_max: int, step: int, P: int = 10**6) -> SignScan:
    """Table of (x, pi_2(x), 2 c2 li2(x), difference) on x = step, 2 step, ...

    ``crossings`` lists the grid points where the difference changes sign
    relative to the previous row.
    """
    if step < 1:
        raise ValueError("step must be positive")
    spec = ConstellationSpec.twin(2)
    c2 = hl_constant("twin_c2", P)
    rows = []
    for x in range(step, x_max + 1, step):
        if x < 2:
            continue
        pi2 = count(tables, spec, x)
        main = 2 * c2 * li2(float(x))
        rows.append((x, pi2, main, pi2 - main))
    crossings = [
        rows[i][0] for i in range(1, len(rows)) if np.sign(rows[i][3]) != np.sign(rows[i - 1][3])
    ]
    return SignScan(rows, crossings)


# polynomial checks ------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticPolynomial:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a < 1:
            raise ValueError(f"leading coefficient must be >= 1, got {self.a}")

    @property
    def coefficients(self) -> Tuple[int, int, int]:
        """Ascending coefficients (c, b, a)."""
        return (self.c, self.b, self.a)

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


def fixed_divisor(f) -> int:
    """gcd of f(0), ..., f(deg f) for an integer polynomial of degree <= 4.

    ``f`` is a QuadraticPolynomial or a sequence of ascending coefficients.
    The values at 0..deg determine the binomial-basis coefficients, whose
    gcd is the gcd over all integers.
    """
    coeffs = list(f.coefficients if isinstance(f, QuadraticPolynomial) else f)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has no fixed divisor")
    deg = len(coeffs) - 1
    if deg > 4:
        raise ValueError(f"degree {deg} above 4")
    g = 0
    for x in range(deg + 1):
        g = math.gcd(g, sum(c * x**i for i, c in enumerate(coeffs)))
    return abs(g)


class Admissibility(NamedTuple):
    admissible: bool
    coprime_coefficients: bool
    nonsquare_discriminant: bool
    odd_gcd: bool

    @property
    def reasons(self) -> List[str]:
        out = []
        if not self.coprime_coefficients:
            out.append("i: gcd(a, b, c) != 1")
        if not self.nonsquare_discriminant:
            out.append("ii: discriminant is a square")
        if not self.odd_gcd:
            out.append("iii: gcd(a + b, c) is even")
        return out


def admissible(f: QuadraticPolynomial) -> Admissibility:
    """Check gcd(a,b,c) = 1, non-square discriminant and odd gcd(a+b, c)."""
    i = math.gcd(math.gcd(f.a, f.b), f.c) == 1
    D = f.discriminant
    ii = D < 0 or math.isqrt(D) ** 2 != D
    iii = math.gcd(f.a + f.b, f.c) % 2 == 1
    return Admissibility(i and ii and iii, i, ii, iii)
