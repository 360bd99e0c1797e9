"""Finite fragment of the logarithmic hyperseries, as a differentiation oracle.

l0 = x and l(i+1) = log l(i).  The chain rule gives
l(i)' / l(i) = 1 / (l0 * l1 * ... * l(i)), so for a monomial m = prod l(i)^r(i)

    m' = m * sum_i r(i) * prod_{j <= i} l(j)^-1.

This module knows nothing about psi tables; it only applies that rule.  The
map h sends t^g to prod l(i)^-g(i).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import PreconditionError, StructuralError
from .groups import GroupElement, ScalarLike, scalar
from .hahn import HahnSeries
from .report import CheckResult, CoupleReport
from .sampling import make_rng


class LogMonomial:
    """prod_i l(i)^r(i), stored as sorted (i, r) pairs with r != 0."""

    __slots__ = ("exponents", "_hash")

    def __init__(self, exponents: Mapping[int, ScalarLike] | Iterable[tuple[int, ScalarLike]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[int, Fraction] = {}
        for i, r in items:
            if i < 0:
                raise StructuralError("log index must be >= 0")
            acc[i] = acc.get(i, Fraction(0)) + scalar(r)
        self.exponents: tuple[tuple[int, Fraction], ...] = tuple(sorted((i, r) for i, r in acc.items() if r))
        self._hash = hash(self.exponents)

    def get(self, i: int) -> Fraction:
        return dict(self.exponents).get(i, Fraction(0))

    def __mul__(self, other: LogMonomial) -> LogMonomial:
        return LogMonomial(list(self.exponents) + list(other.exponents))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LogMonomial) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return self._hash

    def is_one(self) -> bool:
        return not self.exponents

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(f"l{i}" if r == 1 else f"l{i}^{r}" for i, r in self.exponents)

    __repr__ = __str__


class LogSeries:
    """Finite sum of coefficient * LogMonomial."""

    __slots__ = ("_map",)

    def __init__(self, terms: Mapping[LogMonomial, ScalarLike] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[LogMonomial, Fraction] = {}
        for m, c in items:
            acc[m] = acc.get(m, Fraction(0)) + scalar(c)
        self._map = {m: c for m, c in acc.items() if c}

    @property
    def terms(self) -> dict[LogMonomial, Fraction]:
        return dict(self._map)

    def __add__(self, other: LogSeries) -> LogSeries:
        return LogSeries(list(self._map.items()) + list(other._map.items()))

    def __mul__(self, other: LogSeries) -> LogSeries:
        return LogSeries((m * n, c * d) for m, c in self._map.items() for n, d in other._map.items())

    def scale(self, c: ScalarLike) -> LogSeries:
        c = scalar(c)
        return LogSeries((m, c * d) for m, d in self._map.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LogSeries) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def __len__(self) -> int:
        return len(self._map)

    def is_zero(self) -> bool:
        return not self._map

    def __repr__(self) -> str:
        return format_log_series(self)


def oracle_diff_monomial(m: LogMonomial) -> LogSeries:
    out = []
    for i, r in m.exponents:
        # r * l(i)-dagger = r / (l0 ... l(i))
        out.append((m * LogMonomial((j, -1) for j in range(i + 1)), r))
    return LogSeries(out)


def oracle_diff(s: LogSeries | LogMonomial) -> LogSeries:
    if isinstance(s, LogMonomial):
        return oracle_diff_monomial(s)
    total = LogSeries()
    for m, c in s._map.items():
        total = total + oracle_diff_monomial(m).scale(c)
    return total


def h_monomial(gamma: GroupElement) -> LogMonomial:
    return LogMonomial((i, -g) for i, g in enumerate(gamma.coeffs))


def h_map(f: HahnSeries) -> LogSeries:
    return LogSeries((h_monomial(g), c) for g, c in f.terms)


def h_inverse(s: LogSeries, size: int) -> HahnSeries:
    terms = []
    for m, c in s._map.items():
        if m.exponents and m.exponents[-1][0] >= size:
            raise StructuralError(f"monomial {m} uses l-index beyond {size - 1}")
        terms.append((GroupElement(-m.get(i) for i in range(size)), c))
    return HahnSeries(size, terms)


def format_log_series(s: LogSeries, size: int | None = None) -> str:
    """Terms like "3*l0^-1*l1^-2", dominant term first (pulled-back order)."""
    if s.is_zero():
        return "0"
    if size is None:
        size = 1 + max((i for m in s._map for i, _ in m.exponents), default=0)
    f = h_inverse(s, size)
    parts = []
    for g, c in f.terms:
        m = h_monomial(g)
        if m.is_one():
            parts.append(str(c))
        elif c == 1:
            parts.append(str(m))
        else:
            parts.append(f"{c}*{m}")
    return " + ".join(parts).replace("+ -", "- ")


def log_series_compare(a: LogSeries, b: LogSeries, size: int) -> int:
    """Order on LogSeries, pulled back through h."""
    return (h_inverse(a, size) - h_inverse(b, size)).sign()


def verify_isomorphism(ctx, samples: int = 300, seed: int = 0) -> CoupleReport:
    """h o derive == oracle_diff o h, plus ring-morphism and order checks."""
    from .couples import example_couple
    from .derivation import random_series

    n = ctx.size
    if ctx.couple != example_couple(n):
        raise PreconditionError("verify_isomorphism needs the logarithmic couple psi(e_i) = e_0 + ... + e_i")
    rng = make_rng(seed)
    fs = [random_series(rng, n) for _ in range(samples)]
    gs = [random_series(rng, n) for _ in range(samples)]
    report = CoupleReport()

    bad = {}
    for f, g in zip(fs, gs):
        hf = h_map(f)
        if "commutes" not in bad and h_map(ctx.derive(f)) != oracle_diff(hf):
            bad["commutes"] = {"f": f}
        if "bijective" not in bad and h_inverse(hf, n) != f:
            bad["bijective"] = {"f": f}
        if "ring_morphism" not in bad and (h_map(f * g) != hf * h_map(g) or h_map(f + g) != hf + h_map(g)):
            bad["ring_morphism"] = {"f": f, "g": g}
        if "order_preserving" not in bad and log_series_compare(hf, h_map(g), n) != (f - g).sign():
            bad["order_preserving"] = {"f": f, "g": g}
    for name in ("commutes", "bijective", "ring_morphism", "order_preserving"):
        report.add(CheckResult(name, "fail" if name in bad else "pass", bad.get(name),
                               f"{samples} samples"))
    return report
