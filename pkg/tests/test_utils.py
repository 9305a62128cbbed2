# Copyright (c) the isoperiodic authors. All Rights Reserved
from typing import List

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from isoperiodic.utils import (
    combine,
    content,
    determinant,
    hermite_form,
    integer_kernel,
    primitive_part,
    rank,
    saturate_rows,
    small_vectors,
    xgcd_list,
)

rows_strategy = st.lists(
    st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=1, max_size=4
)


@pytest.mark.parametrize(
    "vec, expected",
    [
        pytest.param([4, -6, 10], 2, id="even"),
        pytest.param([0, 0], 0, id="zero"),
        pytest.param([-3], 3, id="negative"),
    ],
)
def test_content(vec: List[int], expected: int) -> None:
    assert content(vec) == expected


def test_primitive_part() -> None:
    assert primitive_part([4, -6, 10]) == [2, -3, 5]


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_xgcd_list_is_a_bezout_identity(values: List[int]) -> None:
    g, coeffs = xgcd_list(values)
    assert g == content(values)
    assert sum(c * v for c, v in zip(coeffs, values)) == g


@pytest.mark.parametrize(
    "rows, expected",
    [
        pytest.param([[2, 4], [0, 3]], [[2, 1], [0, 3]], id="reduced_above_pivot"),
        pytest.param([[0, -1], [0, 0]], [[0, 1]], id="zero_rows_dropped"),
        pytest.param([[1, 1], [1, -1]], [[1, 1], [0, 2]], id="index_two"),
    ],
)
def test_hermite_form(rows: List[List[int]], expected: List[List[int]]) -> None:
    assert hermite_form(rows) == expected


@given(rows_strategy)
def test_hermite_form_depends_only_on_the_lattice(rows: List[List[int]]) -> None:
    shuffled = list(reversed(rows)) + [combine([1] * len(rows), rows)]
    assert hermite_form(shuffled) == hermite_form(rows)


@settings(max_examples=200, deadline=None)
@given(rows_strategy)
def test_integer_kernel_annihilates_and_has_complementary_rank(rows: List[List[int]]) -> None:
    kernel = integer_kernel(rows, 4)
    for k in kernel:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows)
    assert len(kernel) + rank(rows) == 4


@settings(max_examples=200, deadline=None)
@given(rows_strategy)
def test_saturate_rows_is_idempotent(rows: List[List[int]]) -> None:
    saturated = saturate_rows(rows, 4)
    assert saturate_rows(saturated, 4) == saturated
    assert len(saturated) == rank(rows)


def test_saturate_rows_of_an_index_two_sublattice() -> None:
    assert saturate_rows([[2, 0], [0, 2]], 2) == [[1, 0], [0, 1]]


def test_determinant() -> None:
    assert determinant([[0, 1], [-1, 0]]) == 1
    assert determinant([]) == 1


def test_small_vectors_are_ordered_by_norm() -> None:
    vectors = list(small_vectors(2, 2))
    assert len(vectors) == 24
    assert vectors[:8] == [
        (-1, -1),
        (-1, 0),
        (-1, 1),
        (0, -1),
        (0, 1),
        (1, -1),
        (1, 0),
        (1, 1),
    ]
