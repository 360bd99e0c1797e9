"""The derivation on k((t^Gamma)) induced by an H-couple.

(t^a)' = -sum_i a_i t^(a + psi(e_i)), extended linearly.  Everything here is
exact; only logarithmic derivatives of non-monomials go through a truncated
inverse and report the valuation of what was truncated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .couples import AsymptoticCouple, decide_a1, decide_a3, check_hardy_type
from .errors import DomainError, InconclusiveError, PreconditionError, StructuralError
from .groups import GroupElement, ScalarLike, scalar
from .hahn import (
    HahnSeries,
    TruncationBudget,
    exceeds_constants,
    in_maximal_ideal,
    in_valuation_ring,
    invert,
)
from .report import CheckResult, CoupleReport
from .sampling import make_rng, random_element, random_scalar


@dataclass(frozen=True)
class DerivationContext:
    couple: AsymptoticCouple

    def __post_init__(self):
        bad = decide_a1(self.couple) or decide_a3(self.couple)
        if bad is not None:
            raise PreconditionError(f"couple violates the asymptotic couple axioms (witness {bad})")
        hardy, w = check_hardy_type(self.couple)
        if not hardy:
            raise PreconditionError(f"couple is not of Hardy type (witness {w})")

    @property
    def size(self) -> int:
        return self.couple.size

    def _check(self, f: HahnSeries) -> None:
        if f.size != self.size:
            raise StructuralError(f"series over size {f.size}, context has size {self.size}")

    def derive_monomial(self, alpha: GroupElement) -> HahnSeries:
        return self._monomial_terms(alpha, Fraction(1))

    def _monomial_terms(self, alpha: GroupElement, coef: Fraction) -> HahnSeries:
        table = self.couple.psi_table
        return HahnSeries(
            self.size, [(alpha + table[i], -coef * a) for i, a in enumerate(alpha.coeffs) if a]
        )

    def derive(self, f: HahnSeries) -> HahnSeries:
        self._check(f)
        table = self.couple.psi_table
        terms = []
        for alpha, c in f.items():
            for i, a in enumerate(alpha.coeffs):
                if a:
                    terms.append((alpha + table[i], -c * a))
        return HahnSeries(self.size, terms)

    def log_derivative(
        self, f: HahnSeries, budget: TruncationBudget | int = TruncationBudget()
    ) -> tuple[HahnSeries, GroupElement | None]:
        """f'/f and the exact valuation of its truncation error (None if exact)."""
        self._check(f)
        if f.is_zero():
            raise DomainError("logarithmic derivative of 0 undefined")
        if len(f) == 1:
            alpha, _ = f.leading()
            table = self.couple.psi_table
            return HahnSeries(self.size, [(table[i], -a) for i, a in enumerate(alpha.coeffs) if a]), None
        df = self.derive(f)
        r, bound = invert(f, budget)
        if bound is None or df.is_zero():
            return df * r, None
        # f'r - f'/f = f'(fr - 1)/f
        return df * r, df.valuation() + bound - f.valuation()


def derive_monomial(ctx: DerivationContext, alpha: GroupElement) -> HahnSeries:
    return ctx.derive_monomial(alpha)


def derive(ctx: DerivationContext, f: HahnSeries) -> HahnSeries:
    return ctx.derive(f)


def log_derivative(ctx: DerivationContext, f: HahnSeries, budget=TruncationBudget()):
    return ctx.log_derivative(f, budget)


def prime(ctx: DerivationContext, alpha: GroupElement) -> GroupElement:
    """alpha' = alpha + psi(alpha)."""
    return alpha + ctx.couple.psi(alpha)


def leading_term_law(ctx: DerivationContext, f: HahnSeries) -> CheckResult:
    """Compare the leading term of f' with -alpha_i f_alpha t^(alpha')."""
    if f.is_zero():
        raise DomainError("leading-term law needs f != 0")
    alpha, fa = f.leading()
    if alpha.is_zero():
        raise PreconditionError("leading-term law excludes v(f) = 0")
    i = alpha.arch_class()
    want = (prime(ctx, alpha), -alpha[i] * fa)
    df = ctx.derive(f)
    got = df.leading() if df else None
    data = {"f": f, "expected": list(want), "got": list(got) if got else None}
    return CheckResult("leading_term_law", "pass" if got == want else "fail", data)


def power_dagger(ctx: DerivationContext, alpha: GroupElement, c: ScalarLike) -> CheckResult:
    """Check (t^(c alpha))-dagger == c * (t^alpha)-dagger exactly."""
    c = scalar(c)
    lhs, lb = ctx.log_derivative(HahnSeries.monomial(alpha.scale(c)))
    rhs, rb = ctx.log_derivative(HahnSeries.monomial(alpha))
    rhs = rhs.scale(c)
    ok = lb is None and rb is None and lhs == rhs
    return CheckResult("power_dagger", "pass" if ok else "fail",
                       {"alpha": alpha, "c": c, "lhs": lhs, "rhs": rhs})


def random_series(rng, n: int, max_terms: int = 6, bound: int = 9, density: float = 0.6) -> HahnSeries:
    k = int(rng.integers(1, max_terms + 1))
    terms = [(random_element(rng, n, bound, density), random_scalar(rng, bound, nonzero=True))
             for _ in range(k)]
    return HahnSeries(n, terms)


PROBE_CONSTANTS = tuple(Fraction(x) for x in (-1000, -7, -1, Fraction(-1, 3), 0, Fraction(1, 5), 1, 2, 10**6))


def check_hfield(ctx: DerivationContext, samples: int = 200, seed: int = 0) -> CoupleReport:
    """H-field axioms on sampled series.

    (H1) uses the exact criterion f > k iff v(f) < 0 with positive leading
    coefficient, corroborated against a finite probe set of constants.
    """
    n = ctx.size
    rng = make_rng(seed)
    fs = [random_series(rng, n) for _ in range(samples)]
    # each sample shifted to be infinitesimal and infinite too, so every branch is hit
    extra = []
    for f in fs:
        if f:
            v = f.valuation()
            extra.append(f - f.constant_term())
            if v:
                extra.append(f.shift(-v - v))
    pool = fs + extra

    report = CoupleReport()
    h1 = h1_small = h2 = consts = probe = None
    n_h1 = n_small = 0
    for f in pool:
        df = ctx.derive(f)
        big = exceeds_constants(f)
        if big and not all(f > c for c in PROBE_CONSTANTS):
            probe = probe or f
        if big:
            n_h1 += 1
            if not df.sign() > 0:
                h1 = h1 or f
        if f.sign() > 0 and in_maximal_ideal(f):
            n_small += 1
            if not df.sign() < 0:
                h1_small = h1_small or f
        if in_valuation_ring(f):
            f0 = f.constant_term()
            if not in_maximal_ideal(f - f0) or f0 + (f - f0) != f:
                h2 = h2 or f
        if df.is_zero() != f.is_constant():
            consts = consts or f

    def add(name, bad, count, what):
        report.add(CheckResult(name, "pass" if bad is None else "fail",
                               None if bad is None else {"f": bad},
                               f"{count} {what}"))

    add("H1_infinite_positive", h1, n_h1, "samples with f > k")
    add("H1_probe_constants", probe, n_h1, "samples compared against probe constants")
    add("H1_infinitesimal_positive", h1_small, n_small, "samples with 0 < f << 1")
    add("H2_decomposition", h2, sum(in_valuation_ring(f) for f in pool), "samples in O")
    add("constants_kernel", consts, len(pool), "samples")
    return report


def extract_couple(
    ctx: DerivationContext,
    samples: int = 200,
    seed: int = 0,
    budget: TruncationBudget | int = TruncationBudget(2),
    budget_ceiling: int = 64,
    hs: list[HahnSeries] | None = None,
) -> CoupleReport:
    """Recover psi from logarithmic derivatives: v(h-dagger) == psi(v h).

    The budget doubles until the dagger's truncation error lies strictly above
    psi(v h); if it never does within ``budget_ceiling`` the sample is
    inconclusive rather than failed.
    """
    if isinstance(budget, int):
        budget = TruncationBudget(budget)
    n = ctx.size
    if hs is None:
        rng = make_rng(seed)
        hs = []
        while len(hs) < samples:
            h = random_series(rng, n)
            if h and h.valuation():
                hs.append(h)
    report = CoupleReport()
    fails, inconclusive, skipped = [], [], 0
    for h in hs:
        try:
            _extract_one(ctx, h, budget, budget_ceiling)
        except _Skip:
            skipped += 1
        except InconclusiveError:
            inconclusive.append(h)
        except _Fail as exc:
            fails.append(exc.args[0])
    if fails:
        status = "fail"
    elif inconclusive:
        status = "inconclusive"
    elif skipped == len(hs):
        status = "skipped"
    else:
        status = "pass"
    witness: dict[str, Any] | None = None
    if fails or inconclusive:
        witness = {"failures": fails[:3], "inconclusive": inconclusive[:3]}
    report.add(CheckResult("psi_of_valuation", status, witness,
                           f"{len(hs) - skipped} checked, {skipped} skipped (vh = 0), "
                           f"{len(inconclusive)} inconclusive"))
    return report


class _Skip(Exception):
    pass


class _Fail(Exception):
    pass


def extract_one(ctx: DerivationContext, h: HahnSeries, budget=TruncationBudget(2), budget_ceiling: int = 64):
    """Certify v(h-dagger) = psi(vh) for a single h; returns (dagger, bound)."""
    if isinstance(budget, int):
        budget = TruncationBudget(budget)
    return _extract_one(ctx, h, budget, budget_ceiling)


def _extract_one(ctx, h, budget, ceiling):
    if h.is_zero() or h.valuation().is_zero():
        raise _Skip("vh = 0")
    vh = h.valuation()
    target = ctx.couple.psi(vh)
    i = vh.arch_class()
    b = budget
    while True:
        dag, bound = ctx.log_derivative(h, b)
        if bound is None or bound > target:
            break
        if b.max_terms >= ceiling:
            raise InconclusiveError(f"residual bound {bound} not above psi(vh) = {target}")
        b = TruncationBudget(min(2 * b.max_terms, ceiling), b.valuation_cutoff)
    lead = dag.leading() if dag else None
    if lead != (target, -vh[i]):
        raise _Fail({"h": h, "expected": [target, -vh[i]], "got": list(lead) if lead else None})
    return dag, bound
