"""Exact integer combinations of log p and of log p * log q.

The summation-inversion identities cancel terms of size x^2 against each
other, so they are checked here as formal objects: equality is equality of
integer coefficient maps, with no floating point involved until
:func:`evaluate` is called.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Tuple, Union


def _clean(terms: Mapping) -> dict:
    return {k: int(c) for k, c in terms.items() if c}


class _Formal:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        self._terms = _clean(terms or {})
        self._hash = None

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def _combine(self, other, scale: int):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + scale * c
        return type(self)(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __mul__(self, scale: int):
        if not isinstance(scale, int):
            return NotImplemented
        return type(self)({k: scale * c for k, c in self._terms.items()})

    __rmul__ = __mul__


class LogCombination(_Formal):
    """sum_p c_p log p with integer c_p, keyed by prime p."""

    __slots__ = ()

    @classmethod
    def log_of(cls, factorization: Iterable[Tuple[int, int]]) -> "LogCombination":
        """log n for n given as (p, e) pairs."""
        return cls({p: e for p, e in factorization})

    def __repr__(self) -> str:
        if not self._terms:
            return "LogCombination(0)"
        body = " + ".join(f"{c}*log{p}" for p, c in self.items())
        return f"LogCombination({body})"


class LogBilinear(_Formal):
    """sum c_{p,q} log p log q keyed by the normalised pair (min, max)."""

    __slots__ = ()

    def __init__(self, terms: Mapping | None = None):
        norm: dict = {}
        for (p, q), c in (terms or {}).items():
            key = (p, q) if p <= q else (q, p)
            norm[key] = norm.get(key, 0) + c
        super().__init__(norm)

    def __repr__(self) -> str:
        if not self._terms:
            return "LogBilinear(0)"
        body = " + ".join(f"{c}*log{p}*log{q}" for (p, q), c in self.items())
        return f"LogBilinear({body})"


Formal = Union[LogCombination, LogBilinear]


def combine(a: Formal, b: Formal, scale_b: int = 1) -> Formal:
    """a + scale_b * b, exactly."""
    return a._combine(b, scale_b)


def bilinear_product(a: LogCombination, b: LogCombination) -> LogBilinear:
    out: dict = {}
    for p, c in a._terms.items():
        for q, d in b._terms.items():
            key = (p, q) if p <= q else (q, p)
            out[key] = out.get(key, 0) + c * d
    return LogBilinear(out)


def evaluate(a: Formal) -> float:
    """Substitute natural logs, summing in ascending key order."""
    total = 0.0
    if isinstance(a, LogBilinear):
        for (p, q), c in a.items():
            total += c * math.log(p) * math.log(q)
    else:
        for p, c in a.items():
            total += c * math.log(p)
    return total


def prefix_mismatches(lhs: Mapping, rhs: Mapping, x_of_index, x_max: int) -> list:
    """Cut-offs x <= x_max where running totals of two increment maps differ.

    ``lhs`` and ``rhs`` map an index n to a raw {key: coefficient} increment.
    Both totals are step functions in x that only change at x_of_index(n),
    so a mismatch after index n persists for x up to the next index.
    """
    diff: dict = {}
    bad_from = []
    indices = sorted(set(lhs) | set(rhs))
    for n in indices:
        for key, c in lhs.get(n, {}).items():
            diff[key] = diff.get(key, 0) + c
        for key, c in rhs.get(n, {}).items():
            diff[key] = diff.get(key, 0) - c
        for key in [k for k, c in diff.items() if c == 0]:
            del diff[key]
        bad_from.append((x_of_index(n), bool(diff)))
    out = []
    for i, (x, bad) in enumerate(bad_from):
        if not bad or x > x_max:
            continue
        stop = bad_from[i + 1][0] if i + 1 < len(bad_from) else x_max + 1
        out.extend(range(x, min(stop, x_max + 1)))
    return out
