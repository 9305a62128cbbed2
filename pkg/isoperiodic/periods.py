# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Period homomorphisms from the symplectic lattice into exact abelian groups.

Every value is stored as a rational real part reduced modulo the group's
modulus plus an imaginary part in Q(sqrt 2). Finite groups (cyclic, F2) are the
torsion subgroups (1/n)Z/Z of C/Z and always have zero imaginary part.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
import logging
import math
import random
from typing import List, Optional, Sequence, Tuple, Union

from sympy import ilcm

from isoperiodic.errors import InputError, PreconditionError
from isoperiodic.exact import ExactComplex, Surd
from isoperiodic.symplattice import (
    Submodule,
    SymplecticBasis,
    SymplecticLattice,
    VectorLike,
)
from isoperiodic.utils import content

log = logging.getLogger(__name__)

Degree = Union[int, float]


class GroupKind(Enum):
    CMODZ = "CModZ"
    CMODHALFZ = "CModHalfZ"
    CYCLIC = "Cyclic"
    F2 = "F2"


@dataclass(frozen=True)
class ValueGroup:
    kind: GroupKind
    order: Optional[int] = None

    def __post_init__(self) -> None:
        if (self.kind is GroupKind.CYCLIC) != (self.order is not None):
            raise InputError("only cyclic groups carry an order")
        if self.order is not None and self.order < 1:
            raise InputError(f"cyclic group order must be positive, got {self.order}")

    @property
    def modulus(self) -> Fraction:
        return Fraction(1, 2) if self.kind is GroupKind.CMODHALFZ else Fraction(1)

    @property
    def finite(self) -> bool:
        return self.kind in (GroupKind.CYCLIC, GroupKind.F2)

    def tag(self) -> str:
        if self.kind is GroupKind.CYCLIC:
            return f"Cyclic({self.order})"
        return self.kind.value

    @classmethod
    def from_tag(cls, tag: str) -> "ValueGroup":
        if tag.startswith("Cyclic(") and tag.endswith(")"):
            return cls(GroupKind.CYCLIC, int(tag[len("Cyclic(") : -1]))
        try:
            return cls(GroupKind(tag))
        except ValueError as err:
            raise InputError(f"unknown value group {tag!r}") from err


CMODZ = ValueGroup(GroupKind.CMODZ)
CMODHALFZ = ValueGroup(GroupKind.CMODHALFZ)
F2 = ValueGroup(GroupKind.F2)


def cyclic(n: int) -> ValueGroup:
    return ValueGroup(GroupKind.CYCLIC, n)


@dataclass(frozen=True)
class AbelianValue:
    group: ValueGroup
    re: Fraction = Fraction(0)
    im: Surd = Surd()

    def __post_init__(self) -> None:
        re = Fraction(self.re) % self.group.modulus
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", Surd.of(self.im))
        if self.group.finite:
            step = Fraction(1, self.group.order or 2)
            if self.im or (re / step).denominator != 1:
                raise InputError(f"{re} is not an element of {self.group.tag()}")

    @classmethod
    def cmodz(
        cls, re: Union[int, Fraction, str], im: Union[Surd, int, Fraction] = 0
    ) -> "AbelianValue":
        return cls(CMODZ, Fraction(re), Surd.of(im))

    @classmethod
    def residue(cls, n: int, r: int) -> "AbelianValue":
        return cls(cyclic(n), Fraction(r, n))

    @classmethod
    def bit(cls, b: int) -> "AbelianValue":
        return cls(F2, Fraction(b, 2))

    @classmethod
    def zero(cls, group: ValueGroup) -> "AbelianValue":
        return cls(group)

    def residue_value(self) -> int:
        if self.group.kind is GroupKind.F2:
            return int(self.re * 2)
        assert self.group.order is not None
        return int(self.re * self.group.order)

    def is_zero(self) -> bool:
        return self.re == 0 and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _same(self, other: "AbelianValue") -> None:
        if other.group != self.group:
            raise InputError(f"cannot combine {self.group.tag()} with {other.group.tag()}")

    def __add__(self, other: "AbelianValue") -> "AbelianValue":
        self._same(other)
        return AbelianValue(self.group, self.re + other.re, self.im + other.im)

    def __neg__(self) -> "AbelianValue":
        return AbelianValue(self.group, -self.re, -self.im)

    def __sub__(self, other: "AbelianValue") -> "AbelianValue":
        return self + (-other)

    def times(self, k: int) -> "AbelianValue":
        return AbelianValue(self.group, self.re * k, self.im.scale(k))

    def order(self) -> Degree:
        if self.im:
            return math.inf
        return (self.re / self.group.modulus).denominator

    def __str__(self) -> str:
        if self.im:
            return f"{self.re} + ({self.im})i mod {self.group.tag()}"
        return f"{self.re} mod {self.group.tag()}"


def subgroup_order(values: Sequence[AbelianValue]) -> Degree:
    """Cardinality of the subgroup generated by `values`."""
    orders = [v.order() for v in values]
    if any(o == math.inf for o in orders):
        return math.inf
    return int(reduce(ilcm, (int(o) for o in orders), 1))


@dataclass(frozen=True)
class PeriodHom:
    lattice: SymplecticLattice
    group: ValueGroup
    values: Tuple[AbelianValue, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.lattice.rank:
            raise InputError(
                f"{len(self.values)} values given for a lattice of rank {self.lattice.rank}"
            )
        for v in self.values:
            if v.group != self.group:
                raise InputError(f"value {v} is not in {self.group.tag()}")

    @classmethod
    def zero(cls, lattice: SymplecticLattice, group: ValueGroup = CMODZ) -> "PeriodHom":
        return cls(lattice, group, tuple(AbelianValue.zero(group) for _ in range(lattice.rank)))

    @classmethod
    def from_values(
        cls,
        genus: int,
        group: ValueGroup = CMODZ,
        **values: Union[AbelianValue, int, Fraction, str],
    ) -> "PeriodHom":
        """`PeriodHom.from_values(2, a1="1/3", b2=AbelianValue.cmodz(0, 1))`, rest zero."""
        lattice = SymplecticLattice(genus)
        labels = lattice.labels()
        out = [AbelianValue.zero(group) for _ in labels]
        for label, value in values.items():
            if label not in labels:
                raise InputError(f"unknown basis label {label!r}")
            if not isinstance(value, AbelianValue):
                value = AbelianValue(group, Fraction(value))
            out[labels.index(label)] = value
        return cls(lattice, group, tuple(out))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def is_real_valued(self) -> bool:
        return all(not v.im for v in self.values)

    def restrict_to_frame(self, frame: SymplecticBasis) -> "PeriodHom":
        """The period of a symplectic submodule expressed in one of its frames."""
        values = tuple(evaluate(self, v) for v in frame.vectors)
        return PeriodHom(SymplecticLattice(frame.genus), self.group, values)


@dataclass(frozen=True)
class RestrictedPeriod:
    """Values of a period on the canonical basis of a saturated submodule."""

    submodule: Submodule
    group: ValueGroup
    values: Tuple[AbelianValue, ...]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def degree(self) -> Degree:
        return subgroup_order(self.values)

    def evaluate_coordinates(self, coords: Sequence[int]) -> AbelianValue:
        total = AbelianValue.zero(self.group)
        for c, value in zip(coords, self.values):
            if c:
                total = total + value.times(c)
        return total


def evaluate(p: PeriodHom, v: VectorLike) -> AbelianValue:
    p.lattice.check(v)
    re = Fraction(0)
    im = Surd()
    for c, value in zip(v, p.values):
        if c:
            re += c * value.re
            im = im + value.im.scale(c)
    return AbelianValue(p.group, re, im)


def degree(p: PeriodHom) -> Degree:
    return subgroup_order(p.values)


def reduce_half(p: PeriodHom) -> PeriodHom:
    if p.group != CMODZ:
        raise InputError(f"reduce_half expects a C/Z-valued period, got {p.group.tag()}")
    return PeriodHom(
        p.lattice, CMODHALFZ, tuple(AbelianValue(CMODHALFZ, v.re, v.im) for v in p.values)
    )


def restrict(p: PeriodHom, S: Submodule) -> RestrictedPeriod:
    if S.dim != p.lattice.rank:
        raise InputError(f"submodule of Z^{S.dim} restricted from a rank-{p.lattice.rank} period")
    return RestrictedPeriod(S, p.group, tuple(evaluate(p, v) for v in S.basis))


def image_imaginary_generator(p: PeriodHom) -> Fraction:
    """The positive generator alpha of the imaginary image, when it is a lattice alpha*Z."""
    ims = [v.im for v in p.values]
    if any(not im.is_rational() for im in ims):
        raise PreconditionError("imaginary parts have a sqrt2 component: image not along alpha*Z")
    rationals = [im.rat for im in ims]
    common = int(reduce(ilcm, (q.denominator for q in rationals), 1))
    alpha = Fraction(content([int(q * common) for q in rationals]), common)
    if alpha == 0:
        raise PreconditionError("period is real valued: alpha is undefined")
    return alpha


@dataclass(frozen=True)
class PeriodLift:
    """Exact lift P = u + i v of a period to Hom(V, C)."""

    lattice: SymplecticLattice
    values: Tuple[ExactComplex, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.lattice.rank:
            raise InputError(
                f"{len(self.values)} lift values for a lattice of rank {self.lattice.rank}"
            )

    @property
    def u(self) -> Tuple[Surd, ...]:
        return tuple(z.re for z in self.values)

    @property
    def v(self) -> Tuple[Surd, ...]:
        return tuple(z.im for z in self.values)

    def volume(self) -> Surd:
        """u.v = sum u(a_i) v(b_i) - u(b_i) v(a_i)."""
        u, v = self.u, self.v
        total = Surd()
        for i in range(0, len(u), 2):
            total = total + u[i] * v[i + 1] - u[i + 1] * v[i]
        return total

    def shift(self, w: VectorLike) -> "PeriodLift":
        self.lattice.check(w)
        return PeriodLift(
            self.lattice, tuple(z + ExactComplex(Surd(c)) for z, c in zip(self.values, w))
        )

    def evaluate(self, x: VectorLike) -> ExactComplex:
        self.lattice.check(x)
        total = ExactComplex()
        for c, z in zip(x, self.values):
            if c:
                total = total + z.scale(c)
        return total

    def reduce(self) -> PeriodHom:
        if any(not z.re.is_rational() for z in self.values):
            raise PreconditionError("lift has irrational real parts; no reduction to C/Z")
        return PeriodHom(
            self.lattice,
            CMODZ,
            tuple(AbelianValue(CMODZ, z.re.rat, z.im) for z in self.values),
        )


def canonical_lift(p: PeriodHom) -> PeriodLift:
    """The lift with real parts in [0, 1)."""
    if p.group != CMODZ:
        raise InputError(f"only C/Z-valued periods have lifts, got {p.group.tag()}")
    return PeriodLift(p.lattice, tuple(ExactComplex(Surd(v.re), v.im) for v in p.values))


def deg_alpha(p: PeriodHom, lift: PeriodLift) -> Fraction:
    if p.group != CMODZ:
        raise InputError(f"deg_alpha expects a C/Z-valued period, got {p.group.tag()}")
    if lift.lattice != p.lattice:
        raise InputError("lift and period live on different lattices")
    alpha = image_imaginary_generator(p)
    if lift.reduce() != p:
        raise PreconditionError("lift does not reduce to the period mod Z")
    volume = lift.volume()
    assert volume.is_rational()
    result = volume.rat % alpha
    log.debug(f"deg_alpha: u.v = {volume}, alpha = {alpha}, residue {result}")
    return result


def random_period(
    genus: int,
    rng: random.Random,
    max_denominator: int = 7,
    imaginary: bool = False,
    density: float = 0.7,
) -> PeriodHom:
    """Random C/Z-valued period; imaginary parts, when asked for, are small integers."""
    values: List[AbelianValue] = []
    for _ in range(2 * genus):
        if rng.random() > density:
            values.append(AbelianValue.zero(CMODZ))
            continue
        q = rng.randint(1, max_denominator)
        im = Surd(rng.randint(-2, 2)) if imaginary else Surd()
        values.append(AbelianValue.cmodz(Fraction(rng.randrange(q), q), im))
    return PeriodHom(SymplecticLattice(genus), CMODZ, tuple(values))
