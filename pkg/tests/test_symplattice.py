# Copyright (c) the isoperiodic authors. All Rights Reserved
import random
from typing import List

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest
from tests.samples import lattice_vectors, nonzero_vectors, symplectic_bases, vec

from isoperiodic.errors import InputError, PreconditionError
from isoperiodic.symplattice import (
    LatticeVector,
    SymplecticBasis,
    SymplecticLattice,
    complete_symplectic_basis,
    contains,
    dehn_twist,
    dehn_twist_matrix,
    frame_coordinates,
    from_frame_coordinates,
    intersection,
    is_symplectic_basis,
    is_symplectic_submodule,
    orthogonal_complement,
    random_symplectic_basis,
    saturate,
    submodule_sum,
    symp_product,
    symplectic_frame,
    zero_module,
)
from isoperiodic.utils import determinant, primitive_part

G2 = SymplecticLattice(2)


@pytest.mark.parametrize(
    "u, v, expected",
    [
        pytest.param(vec(2, a1=1), vec(2, b1=1), 1, id="a1.b1"),
        pytest.param(vec(2, b1=1), vec(2, a1=1), -1, id="b1.a1"),
        pytest.param(vec(2, a1=1), vec(2, a2=1), 0, id="a1.a2"),
        pytest.param(vec(2, a1=1, b1=1), vec(2, b1=1), 1, id="(a1+b1).b1"),
    ],
)
def test_symp_product(u: LatticeVector, v: LatticeVector, expected: int) -> None:
    assert symp_product(u, v) == expected


def test_symp_product_dimension_mismatch() -> None:
    with pytest.raises(InputError):
        symp_product((1, 0), (1, 0, 0, 0))


@settings(max_examples=1000, deadline=None)
@given(lattice_vectors(3), lattice_vectors(3), lattice_vectors(3), st.integers(-5, 5))
def test_symp_product_is_antisymmetric_and_bilinear(
    u: LatticeVector, v: LatticeVector, w: LatticeVector, k: int
) -> None:
    assert symp_product(u, v) == -symp_product(v, u)
    uw = tuple(x + k * y for x, y in zip(u, w))
    assert symp_product(uw, v) == symp_product(u, v) + k * symp_product(w, v)


@pytest.mark.parametrize(
    "rows, expected",
    [
        pytest.param([(2, 0)], [(1, 0)], id="index_two"),
        pytest.param([vec(2, a1=1), vec(2, b1=1)], [vec(2, a1=1), vec(2, b1=1)], id="saturated"),
        pytest.param(
            [vec(2, a1=1, a2=1), vec(2, b2=2)],
            [vec(2, a1=1, a2=1), vec(2, b2=1)],
            id="half_of_b2",
        ),
    ],
)
def test_saturate(rows: List[LatticeVector], expected: List[LatticeVector]) -> None:
    assert saturate(rows).basis == tuple(expected)


def test_saturate_of_nothing_is_the_zero_module() -> None:
    assert saturate([], 4) == zero_module(4)
    assert saturate([(0, 0, 0, 0)]).rank == 0
    with pytest.raises(InputError):
        saturate([])


@pytest.mark.parametrize(
    "rows, expected",
    [
        pytest.param(
            [vec(2, a1=1), vec(2, b1=1)], [vec(2, a2=1), vec(2, b2=1)], id="symplectic_block"
        ),
        pytest.param(
            [vec(2, a1=1)], [vec(2, a1=1), vec(2, a2=1), vec(2, b2=1)], id="isotropic_line"
        ),
    ],
)
def test_orthogonal_complement(rows: List[LatticeVector], expected: List[LatticeVector]) -> None:
    assert orthogonal_complement(saturate(rows)) == saturate(expected)


def test_complement_of_everything_is_zero() -> None:
    assert orthogonal_complement(SymplecticLattice(1).full()) == zero_module(2)


@settings(max_examples=1000, deadline=None)
@given(st.lists(lattice_vectors(2, bound=6), min_size=1, max_size=3))
def test_saturation_and_double_complement(rows: List[LatticeVector]) -> None:
    S = saturate(rows, 4)
    assert saturate(S.basis, 4) == S
    assert orthogonal_complement(orthogonal_complement(S)) == S
    for v in rows:
        assert contains(S, v)


@settings(max_examples=200, deadline=None)
@given(symplectic_bases(3))
def test_symplectic_factor_and_complement_span_the_lattice(basis: SymplecticBasis) -> None:
    W = saturate(basis.vectors[:2])
    Wc = orthogonal_complement(W)
    assert is_symplectic_submodule(W) and is_symplectic_submodule(Wc)
    assert W.rank + Wc.rank == 6
    assert abs(determinant([list(v) for v in W.basis + Wc.basis])) == 1
    assert intersection(W, Wc).rank == 0
    assert submodule_sum(W, Wc) == SymplecticLattice(3).full()


@pytest.mark.parametrize(
    "rows, expected",
    [
        pytest.param([vec(2, a1=1), vec(2, b1=1)], True, id="hyperbolic_plane"),
        pytest.param([vec(2, a1=1), vec(2, a2=1)], False, id="isotropic"),
        pytest.param([vec(2, a1=1), vec(2, b1=1, a2=1)], True, id="sheared"),
        pytest.param([vec(2, a1=1)], False, id="odd_rank"),
    ],
)
def test_is_symplectic_submodule(rows: List[LatticeVector], expected: bool) -> None:
    assert is_symplectic_submodule(saturate(rows)) is expected


def test_complete_symplectic_basis() -> None:
    assert complete_symplectic_basis([(1, 0)]).vectors == ((1, 0), (0, 1))
    basis = complete_symplectic_basis([vec(2, a1=1, a2=1)])
    assert basis.a(1) == vec(2, a1=1, a2=1)
    assert is_symplectic_basis(basis.vectors)


@pytest.mark.parametrize(
    "partial",
    [
        pytest.param([vec(2, a1=2)], id="not_primitive"),
        pytest.param([vec(2, a1=1), vec(2, a2=1)], id="isotropic_partner"),
    ],
)
def test_complete_symplectic_basis_rejects(partial: List[LatticeVector]) -> None:
    with pytest.raises(PreconditionError):
        complete_symplectic_basis(partial)


@settings(max_examples=1000, deadline=None)
@given(nonzero_vectors(3, bound=20))
def test_completion_of_any_primitive_vector(v: LatticeVector) -> None:
    a = tuple(primitive_part(v))
    basis = complete_symplectic_basis([a])
    assert basis.a(1) == a
    assert is_symplectic_basis(basis.vectors)


@settings(max_examples=100, deadline=None)
@given(symplectic_bases(2), lattice_vectors(2))
def test_frame_coordinates_round_trip(frame: SymplecticBasis, v: LatticeVector) -> None:
    assert from_frame_coordinates(frame, frame_coordinates(frame, v)) == v


def test_symplectic_frame_starts_with_the_given_pair() -> None:
    W = saturate([vec(3, a2=1, a3=1), vec(3, b2=1)])
    frame = symplectic_frame(W, [vec(3, a2=1, a3=1)])
    assert frame.genus == 1
    assert frame.a(1) == vec(3, a2=1, a3=1)
    assert symp_product(*frame.pair(1)) == 1


@pytest.mark.parametrize(
    "a, c, k, expected",
    [
        pytest.param(vec(1, b1=1), vec(1, a1=1), 1, vec(1, a1=-1, b1=1), id="b1_about_a1"),
        pytest.param(vec(2, a2=1), vec(2, a1=1), 3, vec(2, a2=1), id="orthogonal"),
        pytest.param(
            vec(2, b2=1), vec(2, a1=1, a2=1), 2, vec(2, a1=-2, a2=-2, b2=1), id="twice"
        ),
    ],
)
def test_dehn_twist(a: LatticeVector, c: LatticeVector, k: int, expected: LatticeVector) -> None:
    assert dehn_twist(a, c, k) == expected


@settings(max_examples=1000, deadline=None)
@given(symplectic_bases(3), nonzero_vectors(3, bound=4), st.integers(-3, 3))
def test_dehn_twist_preserves_the_form(
    basis: SymplecticBasis, c: LatticeVector, k: int
) -> None:
    moved = [dehn_twist(v, c, k) for v in basis.vectors]
    assert is_symplectic_basis(moved)
    assert dehn_twist(c, c, k) == c


def test_dehn_twist_matrix_columns_are_images() -> None:
    c = vec(2, a1=1, b2=1)
    M = dehn_twist_matrix(c, 1)
    for j in range(4):
        column = tuple(M[i][j] for i in range(4))
        assert column == dehn_twist(G2.basis_vector(j), c, 1)


def test_random_symplectic_basis_respects_the_bound() -> None:
    basis = random_symplectic_basis(SymplecticLattice(4), random.Random(3), steps=50, bound=5)
    assert is_symplectic_basis(basis.vectors)
    assert max(abs(x) for v in basis.vectors for x in v) <= 5


def test_lattice_labels() -> None:
    assert G2.labels() == ["a1", "b1", "a2", "b2"]
    assert G2.basis_vector("b2") == (0, 0, 0, 1)
    with pytest.raises(InputError):
        SymplecticLattice(0)
