"""Asymptotic couples (Gamma, psi) with psi constant on archimedean classes.

A couple is the table ``i -> psi(e_i)``; ``psi(gamma)`` is looked up at the
archimedean class of gamma.  Axioms are decided exactly from the table and,
independently, by sampling and by brute-force grid enumeration.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, InconsistencyError, PreconditionError, StructuralError
from .groups import GroupElement
from .report import CheckResult, CoupleReport
from .sampling import make_rng, random_element, random_scalar

Witness = tuple[GroupElement, ...]


@dataclass(frozen=True)
class AsymptoticCouple:
    psi_table: tuple[GroupElement, ...]

    def __post_init__(self):
        n = len(self.psi_table)
        if n == 0:
            raise StructuralError("index set must be nonempty")
        for i, g in enumerate(self.psi_table):
            if not isinstance(g, GroupElement) or g.size != n:
                raise StructuralError(f"psi(e_{i}) must be an element of size {n}")

    @property
    def size(self) -> int:
        return len(self.psi_table)

    def e(self, i: int) -> GroupElement:
        return GroupElement.basis(i, self.size)

    def psi(self, gamma: GroupElement) -> GroupElement:
        return psi(self, gamma)

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[Any]]) -> AsymptoticCouple:
        return cls(tuple(GroupElement(r) for r in rows))

    def to_json(self) -> dict[str, Any]:
        return {"index_size": self.size, "psi": [g.to_json() for g in self.psi_table]}

    @classmethod
    def from_json(cls, data: Any) -> AsymptoticCouple:
        if not isinstance(data, dict):
            raise StructuralError("couple config must be a JSON object")
        extra = set(data) - {"index_size", "psi"}
        if extra:
            raise StructuralError(f"unknown keys in couple config: {sorted(extra)}")
        n = data.get("index_size")
        rows = data.get("psi")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise StructuralError("index_size must be a positive integer")
        if not isinstance(rows, list) or len(rows) != n:
            raise StructuralError(f"psi must be a list of {n} rows")
        table = tuple(GroupElement.from_json(r) for r in rows)
        for i, g in enumerate(table):
            if g.size != n:
                raise StructuralError(f"psi[{i}] has length {g.size}, expected {n}")
        return cls(table)


def example_couple(n: int) -> AsymptoticCouple:
    """The logarithmic-hyperseries couple: psi(e_i) = e_0 + ... + e_i."""
    return AsymptoticCouple(
        tuple(GroupElement(int(j <= i) for j in range(n)) for i in range(n))
    )


def psi(couple: AsymptoticCouple, gamma: GroupElement) -> GroupElement:
    if gamma.size != couple.size:
        raise StructuralError(f"element of size {gamma.size} for couple of size {couple.size}")
    if gamma.is_zero():
        raise DomainError("psi(0) undefined")
    return couple.psi_table[gamma.arch_class()]


# ------------------------------------------------------------ exact decisions


def decide_a1(couple: AsymptoticCouple) -> Witness | None:
    """(A1) holds for a class-constant psi iff the table is weakly increasing.

    psi(a+b) is psi(e_k) for some k >= min class index, and every such k is
    reached (cancel the leading class when both summands share it).
    """
    t = couple.psi_table
    for i in range(couple.size):
        for k in range(i + 1, couple.size):
            if t[k] < t[i]:
                return couple.e(i) + couple.e(k), -couple.e(i)
    return None


def _below_all_positive(x: GroupElement, i: int) -> bool:
    # every positive element of class i exceeds x
    return x.sign() <= 0 or x.arch_class() > i


def _small_positive(x: GroupElement, i: int, n: int) -> GroupElement:
    # a positive class-i element <= x, given that _below_all_positive(x, i) fails
    e = GroupElement.basis(i, n)
    return e if e <= x else x


def decide_a3(couple: AsymptoticCouple) -> Witness | None:
    """Closed form of (A3): alpha > 0 implies alpha + psi(alpha) > psi(beta).

    For alpha of class i this asks that every positive class-i element exceed
    psi(e_j) - psi(e_i) for every j.
    """
    n = couple.size
    t = couple.psi_table
    for i in range(n):
        for j in range(n):
            x = t[j] - t[i]
            if not _below_all_positive(x, i):
                return _small_positive(x, i, n), couple.e(j)
    return None


def decide_small_derivation(couple: AsymptoticCouple) -> Witness | None:
    n = couple.size
    for i, p in enumerate(couple.psi_table):
        if not _below_all_positive(-p, i):
            return (_small_positive(-p, i, n),)
    return None


def check_hardy_type(couple: AsymptoticCouple) -> tuple[bool, Witness | None]:
    """Strictly increasing table: smaller class, larger psi."""
    t = couple.psi_table
    for i in range(couple.size - 1):
        if not t[i] < t[i + 1]:
            return False, (couple.e(i), couple.e(i + 1))
    return True, None


def check_hahn_type(couple: AsymptoticCouple) -> tuple[bool, Witness | None]:
    """Hahn type for class-constant psi, with psi(0) read as infinity.

    For psi(alpha) = psi(beta) in distinct classes no c helps, since
    alpha - c*beta keeps the larger class.  In one class i the only useful c
    kills class i, and the remainder can land in any class k > i, so psi must
    strictly grow with the index.  Together: injective and order-reversing
    on classes.
    """
    t = couple.psi_table
    for i in range(couple.size):
        for j in range(i + 1, couple.size):
            if t[i] == t[j]:
                return False, (couple.e(i), couple.e(j))
            if t[j] < t[i]:
                # c = 1 leaves e_j with smaller psi; any other c stays in class i
                return False, (couple.e(i) + couple.e(j), couple.e(i))
    return True, None


def hahn_type_holds(couple: AsymptoticCouple, a: GroupElement, b: GroupElement) -> bool:
    """Replay the definition for one pair, trying the only candidate c's."""
    if a.is_zero() or b.is_zero() or psi(couple, a) != psi(couple, b):
        return True
    i, j = a.arch_class(), b.arch_class()
    candidates = [a[i] / b[i]] if i == j else [Fraction(1)]
    for c in candidates:
        rest = a - b.scale(c)
        if rest.is_zero() or psi(couple, rest) > psi(couple, a):
            return True
    return False


def hahn_multiplier(alpha: GroupElement, beta: GroupElement) -> Fraction:
    """The c with alpha - c*beta in a smaller class, for same-class alpha, beta."""
    i = alpha.arch_class()
    if beta.arch_class() != i:
        raise PreconditionError("alpha and beta lie in different classes")
    return alpha[i] / beta[i]


def check_small_derivation(couple: AsymptoticCouple) -> tuple[bool, Witness | None]:
    w = decide_small_derivation(couple)
    return w is None, w


def max_psi(couple: AsymptoticCouple) -> tuple[GroupElement, bool]:
    """Largest element of Psi and the groundedness flag.

    Psi is finite at finite rank, so a maximum always exists and the couple is
    grounded; an infinite-rank gap shows up here as max Psi = e_0 + ... + e_m.
    """
    ok, w = check_hardy_type(couple)
    if not ok:
        raise PreconditionError(f"couple is not of Hardy type (witness {w})")
    return couple.psi_table[-1], True


# ------------------------------------------------------------ replay predicates


def a1_holds(couple: AsymptoticCouple, a: GroupElement, b: GroupElement) -> bool:
    if a.is_zero() or b.is_zero() or (a + b).is_zero():
        return True
    return psi(couple, a + b) >= min(psi(couple, a), psi(couple, b))


def a2_holds(couple: AsymptoticCouple, a: GroupElement, k) -> bool:
    if a.is_zero() or not k:
        return True
    return psi(couple, a.scale(k)) == psi(couple, a)


def a3_holds(couple: AsymptoticCouple, a: GroupElement, b: GroupElement) -> bool:
    if a.sign() <= 0 or b.is_zero():
        return True
    return a + psi(couple, a) > psi(couple, b)


def small_holds(couple: AsymptoticCouple, a: GroupElement) -> bool:
    if a.sign() <= 0:
        return True
    return (a + psi(couple, a)).sign() > 0


# ------------------------------------------------------------ brute-force oracle


def int_grid(n: int, r: int = 2) -> np.ndarray:
    """All integer vectors with entries in -r..r, as a (G, n) int64 array."""
    return np.array(list(itertools.product(range(-r, r + 1), repeat=n)), dtype=np.int64).reshape(-1, n)


def _scaled_table(couple: AsymptoticCouple) -> tuple[np.ndarray, int]:
    den = 1
    for g in couple.psi_table:
        for c in g.coeffs:
            den = math.lcm(den, c.denominator)
    rows = [[int(c * den) for c in g.coeffs] for g in couple.psi_table]
    if max((abs(x) for r in rows for x in r), default=0) > 2**40:
        raise ValueError("psi table too large for the int64 kernels")
    return np.array(rows, dtype=np.int64).reshape(couple.size, couple.size), den


def _row(grid: np.ndarray, k: int) -> GroupElement:
    return GroupElement(int(x) for x in grid[k])


def bruteforce_a3(couple: AsymptoticCouple, r: int = 2, backend: str | None = None) -> Witness | None:
    """Search the grid (-r..r)^I for an (A3) counterexample (alpha, beta).

    Complete relative to the exact criterion whenever psi entries are integers
    in -1..1 and r >= 2: a failing pair then always has a grid witness.
    """
    table, den = _scaled_table(couple)
    grid = int_grid(couple.size, r)
    a, b = _kernels.a3_violation(grid * den, table, backend)
    return None if a < 0 else (_row(grid, a), _row(grid, b))


def bruteforce_small(couple: AsymptoticCouple, r: int = 2, backend: str | None = None) -> Witness | None:
    table, den = _scaled_table(couple)
    grid = int_grid(couple.size, r)
    a = _kernels.small_violation(grid * den, table, backend)
    return None if a < 0 else (_row(grid, a),)


def bruteforce_a1(couple: AsymptoticCouple, r: int = 2, backend: str | None = None) -> Witness | None:
    table, den = _scaled_table(couple)
    grid = int_grid(couple.size, r)
    a, b = _kernels.a1_violation(grid * den, table, backend)
    return None if a < 0 else (_row(grid, a), _row(grid, b))


# ------------------------------------------------------------ validation


def validate_axioms(couple: AsymptoticCouple, sample_budget: int = 200, seed: int = 0) -> CoupleReport:
    """Decide every axiom exactly and cross-examine the decision by sampling.

    A failed exact decision carries a witness that is replayed through the
    plain predicate.  Sampling that refutes an exactly-passed axiom, or a
    witness that does not replay, is reported as an internal inconsistency.
    """
    if sample_budget < 0:
        raise ValueError("sample_budget must be >= 0")
    n = couple.size
    rng = make_rng(seed)
    report = CoupleReport()
    inconsistent = False

    samples = [
        (
            random_element(rng, n, bound=3, nonzero=True),
            random_element(rng, n, bound=3, nonzero=True),
            random_scalar(rng, 3, nonzero=True),
        )
        for _ in range(sample_budget)
    ]
    # sums that cancel leading classes matter most for (A1)
    cancel = [(a, b - a) for a, b, _ in samples if (b - a)]

    def axiom(name, exact_witness, replay, sampled_bad):
        nonlocal inconsistent
        if exact_witness is None:
            if sampled_bad is not None:
                inconsistent = True
                return report.add(CheckResult(
                    name, "fail", {"sampled": list(sampled_bad)},
                    "internal inconsistency: exact decision passed but sampling refuted it"))
            return report.add(CheckResult(name, "pass", detail=f"exact; {sample_budget} samples agree"))
        if replay(*exact_witness):
            inconsistent = True
            return report.add(CheckResult(
                name, "fail", {"exact": list(exact_witness)},
                "internal inconsistency: exact witness does not replay"))
        note = "sampling also refuted" if sampled_bad is not None else "sampling found no violation"
        return report.add(CheckResult(name, "fail", {"exact": list(exact_witness)}, note))

    def first(pred, pairs):
        for p in pairs:
            if not pred(*p):
                return p
        return None

    axiom("A1", decide_a1(couple), lambda a, b: a1_holds(couple, a, b),
          first(lambda a, b: a1_holds(couple, a, b), [(a, b) for a, b, _ in samples] + cancel))
    k_values = [k for k in range(-3, 4) if k]
    axiom("A2", None, None,
          first(lambda a, k: a2_holds(couple, a, k),
                [(a, k) for a, _, c in samples for k in k_values + [c]]))

    def a3_pairs():
        for a, b, _ in samples:
            yield abs_(a), b
        for i in range(n):
            for j in range(n):
                yield couple.e(i), couple.e(j)

    axiom("A3", decide_a3(couple), lambda a, b: a3_holds(couple, a, b),
          first(lambda a, b: a3_holds(couple, a, b), a3_pairs()))
    axiom("small_derivation", decide_small_derivation(couple), lambda a: small_holds(couple, a),
          first(lambda a: small_holds(couple, a), [(abs_(a),) for a, _, _ in samples]))

    hardy, hw = check_hardy_type(couple)
    report.add(CheckResult("hardy_type", "pass" if hardy else "fail",
                           None if hardy else {"exact": list(hw)}))
    hahn, hnw = check_hahn_type(couple)
    evidence = None
    if hahn:
        evidence = _hahn_evidence(couple, [(a, b) for a, b, _ in samples])
        if evidence is False:
            inconsistent = True
            report.add(CheckResult("hahn_type", "fail",
                                   detail="internal inconsistency: multiplier failed on a sample"))
        else:
            report.add(CheckResult("hahn_type", "pass", evidence and {"multiplier": evidence}))
    else:
        report.add(CheckResult("hahn_type", "fail", {"exact": list(hnw)}))

    if hardy:
        top, grounded = max_psi(couple)
        report.add(CheckResult("max_psi", "pass", {"max_psi": top, "grounded": grounded},
                               "finite rank: Psi has a maximum, so the couple is grounded"))
        report.flags["max_psi"] = top
    else:
        report.add(CheckResult("max_psi", "skipped", detail="requires Hardy type"))

    report.flags.update({
        "hardy_type": hardy,
        "hahn_type": hahn,
        "small_derivation": report["small_derivation"].passed,
        "grounded": hardy,
        "inconsistent": inconsistent,
    })
    return report


def is_h_couple(couple: AsymptoticCouple) -> bool:
    """Exact (A1)-(A3) and Hardy type; the standing hypothesis for derivations."""
    return (
        decide_a1(couple) is None
        and decide_a3(couple) is None
        and check_hardy_type(couple)[0]
    )


def abs_(g: GroupElement) -> GroupElement:
    return -g if g.sign() < 0 else g


def _hahn_evidence(couple, pairs):
    # one constructive multiplier per class, checked on the first same-class sample
    evidence = {}
    for a, b in pairs:
        i = a.arch_class()
        if b.arch_class() != i or i in evidence:
            continue
        c = hahn_multiplier(a, b)
        rest = a - b.scale(c)
        if not (rest.is_zero() or psi(couple, rest) > psi(couple, a)):
            return False
        evidence[i] = {"alpha": a, "beta": b, "c": c}
    return [evidence[i] for i in sorted(evidence)] or None


# ------------------------------------------------------------ extension


def extend_psi(
    generators: Sequence[tuple[GroupElement, GroupElement]], ambient_size: int
) -> AsymptoticCouple:
    """Extend psi from subgroup generators to the ambient k^I.

    Each ambient class must be the class of some generator; the extension is
    then forced (psi is constant on classes) and therefore unique.
    """
    by_class: dict[int, tuple[GroupElement, GroupElement]] = {}
    for g, value in generators:
        if g.size != ambient_size or value.size != ambient_size:
            raise StructuralError("generator or value outside the ambient index set")
        if g.is_zero():
            raise PreconditionError("zero is not a valid generator")
        i = g.arch_class()
        if i in by_class and by_class[i][1] != value:
            raise InconsistencyError(
                f"generators {by_class[i][0]} and {g} share class {i} "
                f"but have psi values {by_class[i][1]} and {value}"
            )
        by_class.setdefault(i, (g, value))
    missing = [i for i in range(ambient_size) if i not in by_class]
    if missing:
        raise PreconditionError(f"ambient classes {missing} are not represented by any generator")
    couple = AsymptoticCouple(tuple(by_class[i][1] for i in range(ambient_size)))
    w = decide_a1(couple) or decide_a3(couple)
    if w is not None:
        raise InconsistencyError(f"extension is not an asymptotic couple (witness {w})")
    return couple


def random_table(rng, n: int, lo: int = -1, hi: int = 1) -> AsymptoticCouple:
    return AsymptoticCouple(tuple(
        GroupElement(int(x) for x in rng.integers(lo, hi + 1, size=n)) for _ in range(n)
    ))


def crosscheck_decisions(
    samples: int = 200, seed: int = 0, max_size: int = 3, backend: str | None = None
) -> CoupleReport:
    """Closed-form (A1), (A3) and small-derivation decisions vs grid brute force.

    Tables have integer entries in -1..1, for which the -2..2 grid provably
    contains a counterexample whenever one exists, so any disagreement is a
    bug on one side.  The logarithmic couples are always included.
    """
    rng = make_rng(seed)
    tables = [example_couple(n) for n in range(1, max_size + 1)]
    while len(tables) < samples:
        tables.append(random_table(rng, int(rng.integers(1, max_size + 1))))
    deciders = {
        "A1_exact_vs_bruteforce": (decide_a1, bruteforce_a1),
        "A3_exact_vs_bruteforce": (decide_a3, bruteforce_a3),
        "small_derivation_exact_vs_bruteforce": (decide_small_derivation, bruteforce_small),
    }
    report = CoupleReport()
    for name, (exact, brute) in deciders.items():
        disagree = None
        n_valid = 0
        for c in tables:
            e_ok = exact(c) is None
            b_ok = brute(c, 2, backend) is None
            n_valid += e_ok
            if e_ok != b_ok and disagree is None:
                disagree = {"psi": c.to_json()["psi"], "exact": e_ok, "bruteforce": b_ok}
        report.add(CheckResult(
            name, "fail" if disagree else "pass", disagree,
            f"{len(tables)} tables, {n_valid} satisfy, {len(tables) - n_valid} violate",
        ))
    report.flags["tables"] = len(tables)
    return report
