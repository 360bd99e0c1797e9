"""Finite-support Hahn series over k^I.

A series is a finite map exponent -> coefficient.  The monomial t^g gets
smaller as g grows, so the dominant term of a series is the one with the
order-least exponent, and v(f) = min supp f.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import DomainError, PreconditionError, StructuralError
from .groups import GroupElement, ScalarLike, scalar


@dataclass(frozen=True)
class TruncationBudget:
    max_terms: int = 8
    valuation_cutoff: GroupElement | None = None

    def __post_init__(self):
        if not isinstance(self.max_terms, int) or self.max_terms < 1:
            raise ValueError("max_terms must be a positive integer")


class HahnSeries:
    """Immutable element of k((t^Gamma)) with finite support.

    ``terms`` is a tuple of (exponent, coefficient) pairs sorted by exponent,
    so ``terms[0]`` is the leading term.
    """

    __slots__ = ("size", "_terms", "_map")

    def __init__(self, size: int, terms: Mapping[GroupElement, ScalarLike] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[GroupElement, Fraction] = {}
        for g, c in items:
            if not isinstance(g, GroupElement):
                g = GroupElement(g)
            if g.size != size:
                raise StructuralError(f"exponent {g} not over an index set of size {size}")
            acc[g] = acc.get(g, Fraction(0)) + scalar(c)
        self.size = size
        self._map = {g: c for g, c in acc.items() if c}
        self._terms = None

    @classmethod
    def _raw(cls, size: int, m: dict[GroupElement, Fraction]) -> HahnSeries:
        # m must already be canonical (no zeros, right size)
        obj = cls.__new__(cls)
        obj.size = size
        obj._map = m
        obj._terms = None
        return obj

    @property
    def terms(self) -> tuple[tuple[GroupElement, Fraction], ...]:
        if self._terms is None:
            self._terms = tuple(sorted(self._map.items(), key=lambda t: t[0].coeffs))
        return self._terms

    # construction helpers
    @classmethod
    def zero(cls, size: int) -> HahnSeries:
        return cls._raw(size, {})

    @classmethod
    def constant(cls, c: ScalarLike, size: int) -> HahnSeries:
        return cls(size, {GroupElement.zero(size): c})

    @classmethod
    def monomial(cls, exponent: GroupElement | Iterable, coef: ScalarLike = 1) -> HahnSeries:
        g = exponent if isinstance(exponent, GroupElement) else GroupElement(exponent)
        return cls(g.size, {g: coef})

    # accessors
    def coefficient(self, g: GroupElement) -> Fraction:
        return self._map.get(g, Fraction(0))

    def items(self):
        """(exponent, coefficient) pairs in no particular order."""
        return self._map.items()

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.terms)

    def is_zero(self) -> bool:
        return not self._map

    def __bool__(self) -> bool:
        return bool(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def is_constant(self) -> bool:
        return all(g.is_zero() for g in self._map)

    def constant_term(self) -> Fraction:
        return self._map.get(GroupElement.zero(self.size), Fraction(0))

    # ring structure
    def _coerce(self, other) -> HahnSeries:
        if isinstance(other, HahnSeries):
            if other.size != self.size:
                raise StructuralError(f"index sets differ: {self.size} vs {other.size}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return HahnSeries.constant(other, self.size)
        raise StructuralError(f"cannot combine a series with {type(other).__name__}")

    def __add__(self, other) -> HahnSeries:
        other = self._coerce(other)
        m = dict(self._map)
        for g, c in other._map.items():
            s = m.get(g, 0) + c
            if s:
                m[g] = s
            else:
                m.pop(g, None)
        return HahnSeries._raw(self.size, m)

    __radd__ = __add__

    def __neg__(self) -> HahnSeries:
        return HahnSeries._raw(self.size, {g: -c for g, c in self._map.items()})

    def __sub__(self, other) -> HahnSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> HahnSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> HahnSeries:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        m: dict[GroupElement, Fraction] = {}
        for g, c in self._map.items():
            for h, d in other._map.items():
                e = g + h
                m[e] = m.get(e, 0) + c * d
        return HahnSeries._raw(self.size, {g: c for g, c in m.items() if c})

    __rmul__ = __mul__

    def scale(self, c: ScalarLike) -> HahnSeries:
        c = scalar(c)
        if not c:
            return HahnSeries.zero(self.size)
        return HahnSeries._raw(self.size, {g: c * d for g, d in self._map.items()})

    def shift(self, g: GroupElement) -> HahnSeries:
        """Multiply by the monomial t^g."""
        return HahnSeries._raw(self.size, {h + g: c for h, c in self._map.items()})

    def __pow__(self, n: int) -> HahnSeries:
        if n < 0:
            raise ValueError("negative powers need invert() with a budget")
        out = HahnSeries.constant(1, self.size)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = HahnSeries.constant(other, self.size)
        if not isinstance(other, HahnSeries):
            return NotImplemented
        return self.size == other.size and self._map == other._map

    def __hash__(self) -> int:
        return hash((self.size, frozenset(self._map.items())))

    # valuation and order
    def leading(self) -> tuple[GroupElement, Fraction]:
        if not self._map:
            raise DomainError("v(0) undefined")
        if self._terms is not None:
            return self._terms[0]
        return min(self._map.items(), key=lambda t: t[0].coeffs)

    def valuation(self) -> GroupElement:
        return self.leading()[0]

    def sign(self) -> int:
        if not self._map:
            return 0
        return 1 if self.leading()[1] > 0 else -1

    def __lt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - self._coerce(other)).sign() >= 0

    # serialization
    def to_json(self) -> list[dict[str, Any]]:
        return [{"exp": g.to_json(), "coef": str(c)} for g, c in self.terms]

    @classmethod
    def from_json(cls, data: Any, size: int | None = None) -> HahnSeries:
        if not isinstance(data, list):
            raise StructuralError("series document must be a JSON array of terms")
        seen: dict[GroupElement, Fraction] = {}
        for k, term in enumerate(data):
            if not isinstance(term, dict) or set(term) != {"exp", "coef"}:
                raise StructuralError(f"term {k} must be an object with exactly 'exp' and 'coef'")
            g = GroupElement.from_json(term["exp"])
            try:
                c = Fraction(str(term["coef"]))
            except (ValueError, ZeroDivisionError):
                raise StructuralError(f"term {k}: bad coefficient {term['coef']!r}") from None
            if size is None:
                size = g.size
            if g.size != size:
                raise StructuralError(f"term {k}: exponent length {g.size}, expected {size}")
            if g in seen:
                raise StructuralError(f"term {k}: duplicate exponent {g}")
            if not c:
                raise StructuralError(f"term {k}: zero coefficient")
            seen[g] = c
        if size is None:
            raise StructuralError("cannot infer the index size of an empty series; pass it explicitly")
        return cls(size, seen)

    def __repr__(self) -> str:
        if not self._map:
            return "0"
        parts = []
        for g, c in self.terms:
            parts.append(str(c) if g.is_zero() else f"{c}*t^{g!r}")
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------- functions


def add(f: HahnSeries, g: HahnSeries) -> HahnSeries:
    return f + g


def mul(f: HahnSeries, g: HahnSeries) -> HahnSeries:
    return f * g


def valuation(f: HahnSeries) -> GroupElement:
    return f.valuation()


def leading(f: HahnSeries) -> tuple[GroupElement, Fraction]:
    return f.leading()


def field_compare(f: HahnSeries, g: HahnSeries) -> int:
    return (f - g).sign()


def dominance(f: HahnSeries, g: HahnSeries) -> str:
    """One of "<<" (f strictly dominated by g), "~=" (same valuation), ">>"."""
    if f.is_zero() or g.is_zero():
        raise DomainError("dominance needs nonzero arguments")
    vf, vg = f.valuation(), g.valuation()
    if vf > vg:
        return "<<"
    if vf == vg:
        return "~="
    return ">>"


def asymptotic_equiv(f: HahnSeries, g: HahnSeries) -> bool:
    """f ~ g, i.e. v(f - g) > v(f)."""
    if f.is_zero() or g.is_zero():
        raise DomainError("asymptotic equivalence needs nonzero arguments")
    d = f - g
    return d.is_zero() or d.valuation() > f.valuation()


def truncate(f: HahnSeries, budget: TruncationBudget | int) -> HahnSeries:
    """Keep the budget's dominant terms (order-least exponents)."""
    if isinstance(budget, int):
        budget = TruncationBudget(budget)
    kept = f.terms[: budget.max_terms]
    if budget.valuation_cutoff is not None:
        kept = tuple(t for t in kept if t[0] < budget.valuation_cutoff)
    return HahnSeries._raw(f.size, dict(kept))


def invert(f: HahnSeries, budget: TruncationBudget | int = TruncationBudget()) -> tuple[HahnSeries, GroupElement | None]:
    """Truncated inverse of f and v(f*r - 1), or None when f*r == 1.

    With f = c t^g (1 + eps), r is c^-1 t^-g times the first ``max_terms``
    terms of the Neumann series sum (-eps)^n.  The returned bound is the exact
    valuation of the residual, hence > 0.  A ``valuation_cutoff`` on the
    budget drops Neumann terms at or beyond that exponent; it must be > 0.
    """
    if isinstance(budget, int):
        budget = TruncationBudget(budget)
    if f.is_zero():
        raise DomainError("cannot invert 0")
    n = f.size
    g, c = f.leading()
    unit = f.shift(-g).scale(1 / c)
    eps = unit - 1
    cap = None
    if eps:
        cap = eps.valuation().scale(budget.max_terms)
    cutoff = budget.valuation_cutoff
    if cutoff is not None:
        if cutoff.sign() <= 0:
            raise PreconditionError("valuation_cutoff must be > 0")
        cap = cutoff if cap is None or cutoff < cap else cap

    def prune(s: HahnSeries) -> HahnSeries:
        if cap is None:
            return s
        return HahnSeries._raw(n, {e: x for e, x in s._map.items() if e < cap})

    total = HahnSeries.constant(1, n)
    if eps:
        power = HahnSeries.constant(1, n)
        neg = -eps
        for _ in range(1, budget.max_terms):
            power = prune(power * neg)
            if not power:
                break
            total = total + power
    total = truncate(total, budget.max_terms)
    result = total.shift(-g).scale(1 / c)
    residual = f * result - 1
    return result, (None if residual.is_zero() else residual.valuation())


def in_valuation_ring(f: HahnSeries) -> bool:
    return f.is_zero() or f.valuation().sign() >= 0


def in_maximal_ideal(f: HahnSeries) -> bool:
    return f.is_zero() or f.valuation().sign() > 0


def exceeds_constants(f: HahnSeries) -> bool:
    """f > C: f is infinitely large and positive."""
    return bool(f) and f.valuation().sign() < 0 and f.sign() > 0
