"""Exact scalars and the ordered vector space k^I under lexicographic order.

Scalars are :class:`fractions.Fraction`.  A :class:`GroupElement` is a dense
tuple of scalars indexed by ``0..n-1``; the order is lexicographic, so a
smaller index means a larger archimedean class.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, StructuralError

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]


def scalar(x: ScalarLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot make an exact scalar from {type(x).__name__}")


def scalar_to_str(x: Fraction) -> str:
    return str(x)


def _hash_coeffs(coeffs: tuple[Fraction, ...]) -> int:
    # Fraction.__hash__ does a modular inverse per call; canonical
    # numerator/denominator pairs hash consistently and much faster
    return hash(tuple((c.numerator, c.denominator) for c in coeffs))


class GroupElement:
    """A point of Gamma = k^I, immutable, compared lexicographically."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[ScalarLike]):
        self.coeffs: tuple[Fraction, ...] = tuple(scalar(c) for c in coeffs)
        self._hash = _hash_coeffs(self.coeffs)

    @classmethod
    def _of(cls, coeffs: tuple) -> GroupElement:
        # coeffs must already be a tuple of Fractions
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj._hash = _hash_coeffs(coeffs)
        return obj

    @classmethod
    def zero(cls, n: int) -> GroupElement:
        return cls((Fraction(0),) * n)

    @classmethod
    def basis(cls, i: int, n: int) -> GroupElement:
        if not 0 <= i < n:
            raise StructuralError(f"basis index {i} outside 0..{n - 1}")
        return cls(Fraction(int(j == i)) for j in range(n))

    @property
    def size(self) -> int:
        return len(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def as_map(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: GroupElement) -> None:
        if type(other) is GroupElement and len(other.coeffs) == len(self.coeffs):
            return
        if not isinstance(other, GroupElement):
            raise StructuralError(f"expected GroupElement, got {type(other).__name__}")
        if len(other.coeffs) != len(self.coeffs):
            raise StructuralError(
                f"index sets differ: size {len(self.coeffs)} vs {len(other.coeffs)}"
            )

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement._of(tuple((a + b if a else b) if b else a for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement._of(tuple(a - b if b else a for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> GroupElement:
        return GroupElement._of(tuple(-a for a in self.coeffs))

    def scale(self, c: ScalarLike) -> GroupElement:
        c = scalar(c)
        return GroupElement._of(tuple(c * a for a in self.coeffs))

    def __mul__(self, c: ScalarLike) -> GroupElement:
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return self._hash

    # tuple comparison of equal-length tuples is exactly the lexicographic order
    def __lt__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coeffs < other.coeffs

    def __le__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coeffs <= other.coeffs

    def __gt__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coeffs > other.coeffs

    def __ge__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coeffs >= other.coeffs

    def sign(self) -> int:
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def arch_class(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise DomainError("archimedean class of zero undefined")

    def to_json(self) -> list[str]:
        return [scalar_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> GroupElement:
        if not isinstance(data, (list, tuple)):
            raise StructuralError(f"group element must be an array, got {data!r}")
        try:
            return cls(Fraction(str(x)) for x in data)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"bad rational in {data!r}: {exc}") from None

    def __repr__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def linear_combine(gamma: GroupElement, delta: GroupElement, c: ScalarLike) -> GroupElement:
    """Return ``gamma + c*delta``."""
    gamma._check(delta)
    c = scalar(c)
    return GroupElement(a + c * b for a, b in zip(gamma.coeffs, delta.coeffs))


def compare(gamma: GroupElement, delta: GroupElement) -> int:
    """-1, 0 or 1 as gamma is less than, equal to, or greater than delta."""
    return (gamma - delta).sign()


def arch_class(gamma: GroupElement) -> int:
    return gamma.arch_class()


def class_compare(gamma: GroupElement, delta: GroupElement) -> int:
    """Compare archimedean classes.

    Returns -1 when gamma lies in a strictly smaller class than delta (that is,
    ``n*|gamma| < |delta|`` for every n), 0 for the same class, 1 otherwise.
    """
    i, j = gamma.arch_class(), delta.arch_class()
    if i == j:
        return 0
    return -1 if i > j else 1


def abs_element(gamma: GroupElement) -> GroupElement:
    return -gamma if gamma.sign() < 0 else gamma


def hardy_smaller(gamma: GroupElement, delta: GroupElement, n_max: int) -> bool:
    """Brute force: does ``n*|gamma| < |delta|`` hold for n = 1..n_max?"""
    ag, ad = abs_element(gamma), abs_element(delta)
    return all(ag.scale(n) < ad for n in range(1, n_max + 1))
