# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Exact arithmetic in Q(sqrt 2) and its complexification.

Elements of the real field are sympy algebraic-field elements. sympy orders the field by the
leading coefficient of the representation, not by the real embedding, so real signs are read
off the embedded expression instead.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Any, Tuple, Union

from sympy import QQ, sign, sqrt

Rational = Union[int, Fraction]

QQ_SQRT2 = QQ.algebraic_field(sqrt(2))


def _qq(value: Rational) -> Any:
    f = Fraction(value)
    return QQ(f.numerator, f.denominator)


def _fraction(c: Any) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


@lru_cache(maxsize=4096)
def _real_sign(element: Any) -> int:
    return int(sign(QQ_SQRT2.to_sympy(element)))


@total_ordering
class Surd:
    """x + y*sqrt(2) with rational x, y."""

    __slots__ = ("element",)

    def __init__(self, rat: Rational = 0, sqrt2: Rational = 0) -> None:
        self.element = QQ_SQRT2([_qq(sqrt2), _qq(rat)])

    @classmethod
    def from_element(cls, element: Any) -> "Surd":
        surd = cls.__new__(cls)
        surd.element = element
        return surd

    @classmethod
    def of(cls, value: "SurdLike") -> "Surd":
        if isinstance(value, Surd):
            return value
        return cls(Fraction(value))

    def coordinates(self) -> Tuple[Fraction, Fraction]:
        coeffs = [_fraction(c) for c in self.element.to_list()]
        coeffs = [Fraction(0)] * (2 - len(coeffs)) + coeffs
        return coeffs[1], coeffs[0]

    @property
    def rat(self) -> Fraction:
        return self.coordinates()[0]

    @property
    def sqrt2(self) -> Fraction:
        return self.coordinates()[1]

    def is_rational(self) -> bool:
        return len(self.element.to_list()) <= 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self.element == other.element

    def __hash__(self) -> int:
        return hash(self.coordinates())

    def __repr__(self) -> str:
        rat, sqrt2 = self.coordinates()
        return f"Surd({rat!r}, {sqrt2!r})"

    def __bool__(self) -> bool:
        return bool(self.element)

    def __neg__(self) -> "Surd":
        return Surd.from_element(-self.element)

    def __add__(self, other: "SurdLike") -> "Surd":
        o = Surd.of(other)
        # real periods carry zero imaginary parts through every evaluation
        if not o.element:
            return self
        if not self.element:
            return o
        return Surd.from_element(self.element + o.element)

    __radd__ = __add__

    def __sub__(self, other: "SurdLike") -> "Surd":
        o = Surd.of(other)
        if not o.element:
            return self
        return Surd.from_element(self.element - o.element)

    def __rsub__(self, other: "SurdLike") -> "Surd":
        return Surd.of(other) - self

    def __mul__(self, other: "SurdLike") -> "Surd":
        o = Surd.of(other)
        if not self.element:
            return self
        if not o.element:
            return o
        return Surd.from_element(self.element * o.element)

    __rmul__ = __mul__

    def scale(self, factor: Rational) -> "Surd":
        return self * Surd(factor)

    def sign(self) -> int:
        if self.is_rational():
            x = self.rat
            return (x > 0) - (x < 0)
        return _real_sign(self.element)

    def __lt__(self, other: "SurdLike") -> bool:
        return (self - Surd.of(other)).sign() < 0

    def __abs__(self) -> "Surd":
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return float(QQ_SQRT2.to_sympy(self.element))

    def __str__(self) -> str:
        rat, sqrt2 = self.coordinates()
        if not sqrt2:
            return str(rat)
        if not rat:
            return f"{sqrt2}*sqrt2"
        return f"{rat}{'+' if sqrt2 > 0 else '-'}{abs(sqrt2)}*sqrt2"


SurdLike = Union[Surd, int, Fraction]


@dataclass(frozen=True)
class ExactComplex:
    re: Surd = Surd()
    im: Surd = Surd()

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Surd.of(self.re))
        object.__setattr__(self, "im", Surd.of(self.im))

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def scale(self, factor: Rational) -> "ExactComplex":
        return ExactComplex(self.re.scale(factor), self.im.scale(factor))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def cross(self, other: "ExactComplex") -> Surd:
        """Im(conj(self) * other)."""
        return self.re * other.im - self.im * other.re

    def __str__(self) -> str:
        return f"({self.re}) + ({self.im})i"
