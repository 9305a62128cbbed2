# Copyright (c) the isoperiodic authors. All Rights Reserved
from fractions import Fraction
import itertools
from typing import Sequence, Union

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest
from tests.samples import lattice_vectors, real_periods

from isoperiodic.errors import PreconditionError, UnsupportedGenusError
from isoperiodic.exact import ExactComplex, Surd
from isoperiodic.haupt import (
    NotRealizable,
    RealizableLattice,
    RealizableNonLattice,
    Reason,
    count_realizable,
    enumerate_lifts,
    haupt_check,
    image_subgroup_analysis,
    volume,
)
from isoperiodic.periods import AbelianValue, PeriodHom, PeriodLift
from isoperiodic.symplattice import LatticeVector, SymplecticLattice

I = ExactComplex(0, 1)
ONE = ExactComplex(1)
ZERO = ExactComplex()
SQRT2 = ExactComplex(Surd(0, 1))


def lift(*values: Union[ExactComplex, int]) -> PeriodLift:
    zs = tuple(z if isinstance(z, ExactComplex) else ExactComplex(z) for z in values)
    return PeriodLift(SymplecticLattice(len(zs) // 2), zs)


def test_image_of_the_square_lattice() -> None:
    image = image_subgroup_analysis(lift(ONE, I))
    assert (image.rank, image.span_dimension, image.discrete) == (2, 2, True)
    assert image.covolume == Surd(1)


def test_image_of_incommensurable_reals_is_dense() -> None:
    image = image_subgroup_analysis(lift(ONE, SQRT2))
    assert (image.rank, image.span_dimension, image.discrete) == (2, 1, False)
    assert image.covolume is None
    # 7 - 5 sqrt 2 is a nonzero element shorter than 1/10
    small = Surd(7, -5)
    assert small and abs(small) < Surd(Fraction(1, 10))


def test_duplicate_generators_collapse() -> None:
    image = image_subgroup_analysis(lift(ONE, I, ONE, I))
    assert image.is_lattice and image.covolume == Surd(1)


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=2, max_size=6))
def test_rational_images_are_discrete(coords: Sequence[tuple]) -> None:
    values = [ExactComplex(Fraction(x, 3), Fraction(y, 2)) for x, y in coords]
    if len(values) % 2:
        values.append(ZERO)
    image = image_subgroup_analysis(lift(*values))
    assert image.discrete and image.rank == image.span_dimension


def test_realizable_lattice() -> None:
    verdict = haupt_check(lift(ONE, I, ONE, I))
    assert isinstance(verdict, RealizableLattice)
    assert verdict.volume == Surd(2) and verdict.covolume == Surd(1)
    assert verdict.realizable


def test_covolume_bound_is_strict() -> None:
    verdict = haupt_check(lift(ONE, I, ZERO, ZERO))
    assert verdict == NotRealizable(Reason.LATTICE_COVOLUME, Surd(1))
    assert not verdict.realizable


def test_realizable_non_lattice() -> None:
    verdict = haupt_check(lift(ONE, I, SQRT2, I))
    assert verdict == RealizableNonLattice(Surd(1, 1))


@pytest.mark.parametrize(
    "P",
    [
        pytest.param(lift(1, 0, 3, -2), id="real"),
        pytest.param(lift(I, ONE, ZERO, ZERO), id="negative_volume"),
        pytest.param(lift(0, 0, 0, 0), id="zero"),
    ],
)
def test_volume_must_be_positive(P: PeriodLift) -> None:
    verdict = haupt_check(P)
    assert isinstance(verdict, NotRealizable)
    assert verdict.reason == Reason.VOLUME_NONPOSITIVE


def test_genus_one_is_unsupported() -> None:
    with pytest.raises(UnsupportedGenusError):
        haupt_check(lift(ONE, I))
    with pytest.raises(UnsupportedGenusError):
        enumerate_lifts(PeriodHom.from_values(1, a1="1/2"), 1)


def test_negative_box_is_rejected() -> None:
    with pytest.raises(PreconditionError):
        enumerate_lifts(PeriodHom.from_values(2, a1="1/2"), -1)


@settings(max_examples=10, deadline=None)
@given(real_periods(2), st.integers(0, 2))
def test_real_periods_have_no_realizable_lift(p: PeriodHom, bound: int) -> None:
    assert count_realizable(p, bound) == 0


def test_box_of_size_three_for_a_real_period() -> None:
    p = PeriodHom.from_values(2, a1="1/3", b2="2/5")
    lifts = enumerate_lifts(p, 3)
    assert len(lifts) == 7**4
    assert not any(verdict.realizable for _, verdict in lifts)


def _imaginary_period() -> PeriodHom:
    i = AbelianValue.cmodz(0, 1)
    return PeriodHom.from_values(2, a1="1/2", b1=i, a2="1/2", b2=i)


def test_lifts_of_an_imaginary_period() -> None:
    lifts = enumerate_lifts(_imaginary_period(), 2)
    assert len(lifts) == 5**4
    realizable = [P for P, verdict in lifts if verdict.realizable]
    assert realizable
    # the canonical lift has u.v = 1 over the lattice Z/2 + iZ of covolume 1/2
    canonical = lift(ExactComplex(Fraction(1, 2)), I, ExactComplex(Fraction(1, 2)), I)
    assert canonical in realizable


def test_realizable_counts_grow_with_the_box() -> None:
    counts = [count_realizable(_imaginary_period(), bound) for bound in range(3)]
    assert counts == sorted(counts)
    assert counts[-1] > counts[0]


def test_lifts_of_the_zero_period() -> None:
    lifts = dict(enumerate_lifts(PeriodHom.zero(SymplecticLattice(2)), 1))
    assert lifts[lift(0, 0, 0, 0)] == NotRealizable(Reason.VOLUME_NONPOSITIVE, Surd())
    assert not any(verdict.realizable for verdict in lifts.values())


@given(lattice_vectors(2, bound=5), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_shifting_a_lift_moves_its_volume_by_w_dot_v(w: LatticeVector, ims: list) -> None:
    P = lift(*(ExactComplex(Fraction(k, 5), m) for k, m in zip(range(4), ims)))
    v = P.v
    w_dot_v = Surd()
    for i in range(0, 4, 2):
        w_dot_v = w_dot_v + v[i + 1] * w[i] - v[i] * w[i + 1]
    assert volume(P.shift(w)) == volume(P) + w_dot_v


def test_enumeration_order() -> None:
    p = PeriodHom.from_values(2, a1="1/2")
    shifts = [P.values for P, _ in enumerate_lifts(p, 1)]
    base = shifts[len(shifts) // 2]
    expected = list(itertools.product(range(-1, 2), repeat=4))
    assert [tuple(int(z.re.rat - b.re.rat) for z, b in zip(s, base)) for s in shifts] == expected
