# Copyright (c) the isoperiodic authors. All Rights Reserved
from fractions import Fraction
import math
import random

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest
from tests.samples import lattice_vectors, real_periods, vec

from isoperiodic.errors import InputError, PreconditionError
from isoperiodic.exact import ExactComplex, Surd
from isoperiodic.periods import (
    CMODHALFZ,
    CMODZ,
    F2,
    AbelianValue,
    PeriodHom,
    PeriodLift,
    ValueGroup,
    canonical_lift,
    cyclic,
    deg_alpha,
    degree,
    evaluate,
    image_imaginary_generator,
    random_period,
    reduce_half,
    restrict,
)
from isoperiodic.symplattice import LatticeVector, SymplecticLattice, saturate


def test_values_are_reduced() -> None:
    assert AbelianValue.cmodz("4/3").re == Fraction(1, 3)
    assert AbelianValue.cmodz("-1/4").re == Fraction(3, 4)
    assert AbelianValue(CMODHALFZ, Fraction(2, 3)).re == Fraction(1, 6)
    assert AbelianValue.residue(5, 7) == AbelianValue.residue(5, 2)


def test_finite_groups_reject_foreign_values() -> None:
    with pytest.raises(InputError):
        AbelianValue(cyclic(4), Fraction(1, 3))
    with pytest.raises(InputError):
        AbelianValue(F2, Fraction(1, 2), Surd(1))


@pytest.mark.parametrize(
    "group",
    [
        pytest.param(CMODZ, id="CModZ"),
        pytest.param(CMODHALFZ, id="CModHalfZ"),
        pytest.param(F2, id="F2"),
        pytest.param(cyclic(6), id="Cyclic"),
    ],
)
def test_group_tags(group: ValueGroup) -> None:
    assert ValueGroup.from_tag(group.tag()) == group


@pytest.mark.parametrize(
    "p, v, expected",
    [
        pytest.param(PeriodHom.from_values(2, a1="1/3"), vec(2, a1=3), "0", id="torsion"),
        pytest.param(PeriodHom.from_values(2, a1="1/3"), vec(2), "0", id="zero_vector"),
        pytest.param(
            PeriodHom.from_values(2, a1="1/2", a2="1/3"), vec(2, a1=1, a2=1), "5/6", id="sum"
        ),
    ],
)
def test_evaluate(p: PeriodHom, v: LatticeVector, expected: str) -> None:
    assert evaluate(p, v) == AbelianValue.cmodz(expected)


@settings(max_examples=100, deadline=None)
@given(real_periods(2), lattice_vectors(2), lattice_vectors(2))
def test_evaluate_is_linear(p: PeriodHom, u: LatticeVector, v: LatticeVector) -> None:
    uv = tuple(x + y for x, y in zip(u, v))
    assert evaluate(p, uv) == evaluate(p, u) + evaluate(p, v)


@pytest.mark.parametrize(
    "p, expected",
    [
        pytest.param(PeriodHom.zero(SymplecticLattice(2)), 1, id="zero"),
        pytest.param(PeriodHom.from_values(2, a1="1/3"), 3, id="cyclic_3"),
        pytest.param(PeriodHom.from_values(2, a1="1/2", a2="1/3"), 6, id="lcm"),
        pytest.param(
            PeriodHom.from_values(1, a1=AbelianValue.cmodz(0, 1)), math.inf, id="imaginary"
        ),
    ],
)
def test_degree(p: PeriodHom, expected: float) -> None:
    assert degree(p) == expected


@pytest.mark.parametrize(
    "p, zero",
    [
        pytest.param(PeriodHom.from_values(2, a1="1/2"), True, id="half"),
        pytest.param(PeriodHom.from_values(2, a1="1/3"), False, id="third"),
        pytest.param(PeriodHom.from_values(2, a1="1/2", b2="1/2"), True, id="two_halves"),
    ],
)
def test_reduce_half(p: PeriodHom, zero: bool) -> None:
    assert reduce_half(p).is_zero() is zero
    assert reduce_half(p).group == CMODHALFZ


def test_reduce_half_needs_c_mod_z() -> None:
    with pytest.raises(InputError):
        reduce_half(reduce_half(PeriodHom.from_values(2, a1="1/3")))


@pytest.mark.parametrize("genus", [1, 2, 3])
def test_degree_at_least_three_iff_half_reduction_survives(genus: int) -> None:
    rng = random.Random(genus)
    for _ in range(200):
        p = random_period(genus, rng, max_denominator=8)
        assert (degree(p) >= 3) == (not reduce_half(p).is_zero())


def _imaginary_period() -> PeriodHom:
    return PeriodHom.from_values(1, a1=AbelianValue.cmodz(0, 1), b1="1/2")


def test_deg_alpha() -> None:
    p = _imaginary_period()
    lift = PeriodLift(p.lattice, (ExactComplex(Surd(0), Surd(1)), ExactComplex(Surd("1/2"))))
    assert image_imaginary_generator(p) == 1
    assert deg_alpha(p, lift) == Fraction(1, 2)
    assert deg_alpha(p, lift.shift((1, 0))) == Fraction(1, 2)


@settings(max_examples=100, deadline=None)
@given(lattice_vectors(2, bound=20))
def test_deg_alpha_does_not_depend_on_the_lift(w: LatticeVector) -> None:
    p = PeriodHom.from_values(
        2,
        a1=AbelianValue.cmodz("1/3", Fraction(2, 3)),
        b1="1/5",
        b2=AbelianValue.cmodz("1/2", Fraction(-4, 3)),
    )
    lift = canonical_lift(p)
    assert deg_alpha(p, lift.shift(w)) == deg_alpha(p, lift)


def test_deg_alpha_preconditions() -> None:
    real = PeriodHom.from_values(1, a1="1/3")
    with pytest.raises(PreconditionError):
        deg_alpha(real, canonical_lift(real))
    dense = PeriodHom.from_values(1, a1=AbelianValue.cmodz(0, Surd(0, 1)))
    with pytest.raises(PreconditionError):
        deg_alpha(dense, canonical_lift(dense))
    p = _imaginary_period()
    with pytest.raises(PreconditionError):
        deg_alpha(p, canonical_lift(PeriodHom.from_values(1, a1=AbelianValue.cmodz(0, 2))))


def test_restrict() -> None:
    p = PeriodHom.from_values(2, a1="1/3")
    assert restrict(p, saturate([vec(2, a2=1), vec(2, b2=1)])).is_zero()
    first = restrict(p, saturate([vec(2, a1=1), vec(2, b1=1)]))
    assert first.degree() == 3

    q = PeriodHom.from_values(2, a1="1/2", a2="1/2")
    S = saturate([vec(2, a1=1, a2=1), vec(2, b2=1)])
    assert S.basis[0] == vec(2, a1=1, a2=1)
    assert restrict(q, S).values[0].is_zero()
    assert restrict(q, SymplecticLattice(2).full()).values == q.values


@settings(max_examples=100, deadline=None)
@given(real_periods(2), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_restriction_commutes_with_evaluation(p: PeriodHom, coords: list) -> None:
    S = saturate([vec(2, a1=1, b2=1), vec(2, b1=1, a2=2)])
    x = tuple(sum(c * r[i] for c, r in zip(coords, S.basis)) for i in range(4))
    assert restrict(p, S).evaluate_coordinates(coords) == evaluate(p, x)


def test_lift_reduces_to_the_period() -> None:
    p = PeriodHom.from_values(2, a1="1/3", b2=AbelianValue.cmodz("1/2", Surd(1, 1)))
    assert canonical_lift(p).reduce() == p
    assert canonical_lift(p).shift((1, -2, 0, 5)).reduce() == p
