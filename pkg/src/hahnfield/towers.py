"""Composition of valuations realized inside k((t^Gamma)).

A cut c splits the index set: Gamma_R is the convex subgroup of elements
supported on indices >= c, and Gamma_K = Gamma/Gamma_R is read off from the
first c coordinates.  The coarse valuation ring O_K has residue field
R = k((t^Gamma_R)); composing its residue map with the natural place of R
gives back the place of the full valuation ring O.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import DomainError, StructuralError
from .groups import GroupElement
from .hahn import HahnSeries, in_valuation_ring, invert
from .report import CheckResult, CoupleReport
from .sampling import make_rng


@dataclass(frozen=True)
class ValuationTower:
    size: int
    cut: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise StructuralError("index_size must be a positive integer")
        if not isinstance(self.cut, int) or not 0 <= self.cut <= self.size:
            raise StructuralError(f"cut must lie in 0..{self.size}")

    @classmethod
    def from_json(cls, data: Any) -> ValuationTower:
        if not isinstance(data, dict) or set(data) != {"index_size", "cut"}:
            raise StructuralError('tower config must be {"index_size": n, "cut": c}')
        n, c = data["index_size"], data["cut"]
        if isinstance(n, bool) or isinstance(c, bool):
            raise StructuralError("index_size and cut must be integers")
        return cls(n, c)

    def to_json(self) -> dict[str, int]:
        return {"index_size": self.size, "cut": self.cut}

    @property
    def fine_size(self) -> int:
        return self.size - self.cut

    # value groups
    def coarse(self, gamma: GroupElement) -> GroupElement:
        """Image of gamma in Gamma/Gamma_R."""
        return GroupElement(gamma.coeffs[: self.cut])

    def fine(self, gamma: GroupElement) -> GroupElement:
        return GroupElement(gamma.coeffs[self.cut:])

    def embed_fine(self, delta: GroupElement) -> GroupElement:
        """Gamma_R -> Gamma, padding the coarse coordinates with zeros."""
        return GroupElement((Fraction(0),) * self.cut + delta.coeffs)

    def lift_coarse(self, delta: GroupElement) -> GroupElement:
        return GroupElement(delta.coeffs + (Fraction(0),) * self.fine_size)

    def in_fine_group(self, gamma: GroupElement) -> bool:
        return not any(gamma.coeffs[: self.cut])

    # rings
    def coarse_value(self, f: HahnSeries) -> GroupElement:
        if f.is_zero():
            raise DomainError("coarse valuation of 0 undefined")
        return self.coarse(f.valuation())

    def in_coarse_ring(self, f: HahnSeries) -> bool:
        return f.is_zero() or self.coarse_value(f).sign() >= 0

    def in_coarse_ideal(self, f: HahnSeries) -> bool:
        return f.is_zero() or self.coarse_value(f).sign() > 0

    def residue_fine(self, f: HahnSeries) -> HahnSeries:
        """pi_K: O_K -> R = k((t^Gamma_R))."""
        if not self.in_coarse_ring(f):
            raise DomainError("not in O_K")
        return HahnSeries(self.fine_size, [
            (self.fine(g), c) for g, c in f.terms if self.in_fine_group(g)
        ])

    def compose_place(self, f: HahnSeries) -> Fraction:
        """pi = pi_R o pi_K on O; equals the constant coefficient."""
        if not in_valuation_ring(f):
            raise DomainError(f"not in O: v(f) = {f.valuation()} < 0")
        return f.constant_term()


def coarse_value(f: HahnSeries, tower: ValuationTower) -> GroupElement:
    return tower.coarse_value(f)


def residue_fine(f: HahnSeries, tower: ValuationTower) -> HahnSeries:
    return tower.residue_fine(f)


def compose_place(f: HahnSeries, tower: ValuationTower) -> Fraction:
    return tower.compose_place(f)


def residue_place(r: HahnSeries) -> Fraction:
    """pi_R: the natural place of R, defined on its valuation ring."""
    if not in_valuation_ring(r):
        raise DomainError("not in O_R")
    return r.constant_term()


def exponent_grid(n: int, r: int = 1) -> list[GroupElement]:
    return [GroupElement(p) for p in itertools.product(range(-r, r + 1), repeat=n)]


def grid_series(n: int, r: int = 1) -> list[HahnSeries]:
    """Every monomial (+-1) and two-term series (1 +- 1) over the exponent grid."""
    exps = exponent_grid(n, r)
    pool = [HahnSeries.monomial(g, s) for g in exps for s in (1, -1)]
    for a, b in itertools.combinations(exps, 2):
        for s in (1, -1):
            pool.append(HahnSeries(n, {a: 1, b: s}))
    return pool


def verify_tower(tower: ValuationTower, samples: int = 2000, seed: int = 0, r: int = 1) -> CoupleReport:
    """Check the composed-valuation facts exhaustively on a small grid.

    Unary properties run over every grid series; ring-morphism and primality
    checks run over all monomial pairs plus ``samples`` seeded random pairs.
    """
    n = tower.size
    rng = make_rng(seed)
    pool = grid_series(n, r)
    monos = [f for f in pool if len(f) == 1]
    pairs = [(f, g) for f in monos for g in monos]
    for _ in range(samples):
        i, j = rng.integers(0, len(pool), size=2)
        pairs.append((pool[int(i)], pool[int(j)]))

    report = CoupleReport()
    bad: dict[str, Any] = {}

    def flag(name, witness):
        bad.setdefault(name, witness)

    for f in pool:
        v = f.valuation()
        in_o = v.sign() >= 0
        # (a) O is a valuation ring; invert corroborates the exponent-sign decision
        inv, _ = invert(f, 1)
        if inv.valuation() != -v or not (in_o or in_valuation_ring(inv)):
            flag("valuation_ring", {"f": f})
        # O = pi_K^{-1}(O_R)
        pre = tower.in_coarse_ring(f) and in_valuation_ring(tower.residue_fine(f))
        if pre != in_o:
            flag("O_is_preimage", {"f": f, "in_O": in_o, "in_preimage": pre})
        if in_o:
            if tower.compose_place(f) != residue_place(tower.residue_fine(f)):
                flag("place_composition", {"f": f})
        if tower.in_coarse_ring(f):
            res = tower.residue_fine(f)
            if res and tower.embed_fine(res.valuation()) != v:
                flag("fine_embedding", {"f": f})
        if tower.coarse_value(f) != tower.coarse(v):
            flag("value_quotient", {"f": f})

    for f, g in pairs:
        if tower.in_coarse_ring(f) and tower.in_coarse_ring(g):
            rf, rg = tower.residue_fine(f), tower.residue_fine(g)
            if tower.residue_fine(f * g) != rf * rg or tower.residue_fine(f + g) != rf + rg:
                flag("residue_morphism", {"f": f, "g": g})
        if in_valuation_ring(f) and in_valuation_ring(g):
            pf, pg = tower.compose_place(f), tower.compose_place(g)
            if tower.compose_place(f * g) != pf * pg or tower.compose_place(f + g) != pf + pg:
                flag("place_morphism", {"f": f, "g": g})
            fg = f * g
            if tower.in_coarse_ideal(fg) and not (tower.in_coarse_ideal(f) or tower.in_coarse_ideal(g)):
                flag("prime_ideal", {"f": f, "g": g})
    for c in (Fraction(-3), Fraction(0), Fraction(2, 7)):
        if tower.compose_place(HahnSeries.constant(c, n)) != c:
            flag("place_morphism", {"constant": c})

    # value groups: order-preserving surjection with kernel Gamma_R, convexity
    exps = exponent_grid(n, r)
    zero_c = GroupElement.zero(tower.cut)
    for a in exps:
        if (tower.coarse(a) == zero_c) != tower.in_fine_group(a):
            flag("value_quotient", {"gamma": a})
        if tower.coarse(tower.lift_coarse(tower.coarse(a))) != tower.coarse(a):
            flag("value_quotient", {"surjective": a})
        for b in exps:
            if tower.coarse(a + b) != tower.coarse(a) + tower.coarse(b):
                flag("value_quotient", {"gamma": a, "delta": b})
            if a <= b and not tower.coarse(a) <= tower.coarse(b):
                flag("value_quotient", {"gamma": a, "delta": b})
            if tower.in_fine_group(b) and GroupElement.zero(n) <= a <= b and not tower.in_fine_group(a):
                flag("fine_group_convex", {"gamma": a, "delta": b})

    names = ["valuation_ring", "O_is_preimage", "place_composition", "fine_embedding",
             "residue_morphism", "place_morphism", "prime_ideal", "value_quotient",
             "fine_group_convex"]
    for name in names:
        if name in bad:
            report.add(CheckResult(name, "fail", bad[name]))
        else:
            report.add(CheckResult(name, "pass", detail=f"{len(pool)} series, {len(pairs)} pairs"))
    report.flags.update({"index_size": n, "cut": tower.cut})
    return report
