# Copyright (c) the isoperiodic authors. All Rights Reserved
import itertools
import random

import numpy as np
import pytest

from isoperiodic.arnoldf2 import (
    ArnoldMap,
    MEElement,
    arnold_class,
    arnold_equal,
    class_stabilizer,
    compose_inverse,
    enumerate_valid_arnold_maps,
    even_subspace_basis,
    fixes_period,
    is_valid_arnold,
    period_bits,
    period_of_arnold,
    period_stabilizer,
    sample_sp_stabilizer,
    sp_group,
    sp_orbit_arnold,
    stab_order_period,
    transvection,
)
from isoperiodic.errors import InputError, PreconditionError, UnsupportedGenusError

BASIC = ArnoldMap(2, tuple(even_subspace_basis(2)))


def test_me_elements_are_taken_modulo_complement() -> None:
    e = MEElement.from_labels(["0", "e1"], 2)
    assert e == MEElement.from_labels(["inf", "e2", "e3", "e4"], 2)
    assert e.labels() == ["0", "e1"]
    assert e.is_even() and e.separates_poles()
    assert not MEElement.from_labels(["e1", "e2"], 2).separates_poles()
    with pytest.raises(InputError):
        MEElement.from_labels(["e5"], 2)


def test_basic_map_is_valid() -> None:
    assert is_valid_arnold(BASIC)
    assert period_bits(period_of_arnold(BASIC)) == (1, 1, 1, 1)


@pytest.mark.parametrize(
    "columns",
    [
        pytest.param([["0", "e1"], ["0", "e1"], ["0", "e3"], ["0", "e4"]], id="equal_columns"),
        pytest.param([["0"], ["0", "e2"], ["0", "e3"], ["0", "e4"]], id="odd_column"),
        pytest.param(
            [["0", "e1"], ["0", "e2"], ["e1", "e2"], ["0", "e4"]], id="dependent_columns"
        ),
    ],
)
def test_invalid_maps(columns: list) -> None:
    A = ArnoldMap.from_labels(2, columns)
    assert not is_valid_arnold(A)
    with pytest.raises(PreconditionError):
        period_of_arnold(A)


def test_column_periods() -> None:
    A = ArnoldMap.from_labels(2, [["0", "e1"], ["e1", "e2"], ["0", "e3"], ["0", "e4"]])
    assert is_valid_arnold(A)
    assert period_bits(period_of_arnold(A)) == (1, 0, 1, 1)


def test_arnold_equal_under_relabeling() -> None:
    swapped = ArnoldMap(2, tuple(c.relabeled([1, 0, 2, 3]) for c in BASIC.columns))
    assert swapped != BASIC
    assert arnold_equal(BASIC, swapped)
    assert arnold_equal(BASIC, BASIC)
    with pytest.raises(InputError):
        arnold_equal(BASIC, enumerate_valid_arnold_maps(3, limit=1)[0])


def test_class_is_idempotent_and_relabeling_invariant() -> None:
    for A in enumerate_valid_arnold_maps(2, limit=10):
        key = arnold_class(A)
        for perm in [(3, 2, 1, 0), (1, 2, 3, 0)]:
            B = ArnoldMap(2, tuple(c.relabeled(perm) for c in A.columns))
            assert arnold_class(B) == key
        canonical = ArnoldMap(2, tuple(MEElement(m, 6) for m in key.key))
        assert arnold_class(canonical) == key


@pytest.mark.parametrize(
    "genus, expected",
    [pytest.param(2, 48, id="genus_2"), pytest.param(3, 23040, id="genus_3")],
)
def test_stab_order_period(genus: int, expected: int) -> None:
    assert stab_order_period(genus) == expected
    assert expected > len(list(itertools.permutations(range(2 * genus))))


def test_stab_order_needs_genus_two() -> None:
    with pytest.raises(PreconditionError):
        stab_order_period(1)


def test_sp4_closure() -> None:
    group = sp_group(2)
    assert len(group) == 720
    assert all(M.is_symplectic() for M in group)


def test_sp_group_is_not_enumerated_beyond_genus_two() -> None:
    with pytest.raises(UnsupportedGenusError):
        sp_group(3)


@pytest.mark.parametrize(
    "bits", [pytest.param((1, 1, 1, 1), id="all_ones"), pytest.param((0, 1, 0, 0), id="b1")]
)
def test_period_stabilizer_order(bits: tuple) -> None:
    assert len(period_stabilizer(2, bits)) == 720 // 15 == stab_order_period(2)


def test_transvections() -> None:
    T = transvection((1, 0, 0, 0))
    assert T.is_symplectic()
    assert T @ T == T.identity(2)
    assert T.inverse() == T


def test_orbit_of_the_basic_map() -> None:
    report = sp_orbit_arnold(BASIC)
    assert report.count >= 2
    assert report.stabilizer_order == 48
    assert report.period == (1, 1, 1, 1)
    assert arnold_class(BASIC) in {arnold_class(A) for A in report.representatives}
    assert not report.sampled


def test_several_maps_have_several_orbit_classes() -> None:
    maps = enumerate_valid_arnold_maps(2, limit=10)
    assert len(maps) == 10
    assert all(sp_orbit_arnold(A).count >= 2 for A in maps)


def test_class_stabilizer_is_smaller_than_period_stabilizer() -> None:
    for A in enumerate_valid_arnold_maps(2, limit=10):
        order = len(class_stabilizer(A))
        assert order <= 24 < stab_order_period(2)
        assert stab_order_period(2) % order == 0


def test_period_is_equivariant() -> None:
    bits = np.array(period_bits(period_of_arnold(BASIC)))
    for M in list(sp_group(2))[:120]:
        B = compose_inverse(BASIC, M)
        assert is_valid_arnold(B)
        expected = tuple(int(x) for x in bits @ M.inverse().matrix % 2)
        assert period_bits(period_of_arnold(B)) == expected


def test_genus_three_orbit_is_sampled() -> None:
    A = enumerate_valid_arnold_maps(3, limit=1)[0]
    assert is_valid_arnold(A)
    bits = period_bits(period_of_arnold(A))
    assert all(fixes_period(M, bits) for M in sample_sp_stabilizer(bits, random.Random(1), 50))
    report = sp_orbit_arnold(A, sampling=True, rng=random.Random(1), trials=20)
    assert report.sampled and report.stabilizer_order == 23040
    assert report.count >= 1


def test_genus_three_without_sampling_is_unsupported() -> None:
    A = enumerate_valid_arnold_maps(3, limit=1)[0]
    with pytest.raises(UnsupportedGenusError):
        sp_orbit_arnold(A)
