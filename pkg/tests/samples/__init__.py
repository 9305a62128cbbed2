# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Builders and hypothesis strategies shared by the test modules."""
from fractions import Fraction
import random
from typing import Sequence

from hypothesis import strategies as st

from isoperiodic.periods import CMODZ, AbelianValue, PeriodHom
from isoperiodic.symplattice import (
    LatticeVector,
    SymplecticBasis,
    SymplecticLattice,
    random_symplectic_basis,
)


def period_of(values: Sequence[object]) -> PeriodHom:
    lattice = SymplecticLattice(len(values) // 2)
    return PeriodHom(
        lattice, CMODZ, tuple(AbelianValue.cmodz(Fraction(str(v))) for v in values)
    )


def vec(genus: int, **coefficients: int) -> LatticeVector:
    return SymplecticLattice(genus).vector(**coefficients)


def lattice_vectors(genus: int, bound: int = 10) -> st.SearchStrategy[LatticeVector]:
    return st.tuples(*[st.integers(-bound, bound)] * (2 * genus))


def nonzero_vectors(genus: int, bound: int = 10) -> st.SearchStrategy[LatticeVector]:
    return lattice_vectors(genus, bound).filter(any)


@st.composite
def symplectic_bases(draw: st.DrawFn, genus: int, bound: int = 10) -> SymplecticBasis:
    rng = random.Random(draw(st.integers(0, 2**32)))
    return random_symplectic_basis(SymplecticLattice(genus), rng, bound=bound)


def rational_values(max_denominator: int = 12) -> st.SearchStrategy[Fraction]:
    return st.builds(
        lambda q, n: Fraction(n % q, q),
        st.integers(1, max_denominator),
        st.integers(0, 10**6),
    )


@st.composite
def real_periods(draw: st.DrawFn, genus: int, max_denominator: int = 12) -> PeriodHom:
    rank = 2 * genus
    values = draw(st.lists(rational_values(max_denominator), min_size=rank, max_size=rank))
    return period_of(values)
