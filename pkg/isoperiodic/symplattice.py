# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Exact algebra of the standard symplectic lattice Z^2g.

Coordinates are ordered (a1, b1, ..., ag, bg) and the form is a_i . b_i = +1.
Submodules are always stored saturated, as the row Hermite form of their basis,
so equality of submodules is equality of the stored matrices.
"""
from dataclasses import dataclass
import logging
import random
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from isoperiodic.errors import InputError, PreconditionError
from isoperiodic.utils import (
    combine,
    content,
    determinant,
    integer_kernel,
    primitive_part,
    saturate_rows,
    xgcd_list,
)

log = logging.getLogger(__name__)

LatticeVector = Tuple[int, ...]
VectorLike = Sequence[int]


@dataclass(frozen=True)
class SymplecticLattice:
    genus: int

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise InputError(f"genus must be positive, got {self.genus}")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def labels(self) -> List[str]:
        return [f"{ab}{i}" for i in range(1, self.genus + 1) for ab in "ab"]

    def basis_vector(self, which: Union[int, str]) -> LatticeVector:
        index = self.labels().index(which) if isinstance(which, str) else which
        if not 0 <= index < self.rank:
            raise InputError(f"no basis vector {which!r} in genus {self.genus}")
        return tuple(1 if j == index else 0 for j in range(self.rank))

    def vector(self, **coefficients: int) -> LatticeVector:
        """`lattice.vector(a1=1, b2=-1)`."""
        out = [0] * self.rank
        labels = self.labels()
        for label, coeff in coefficients.items():
            if label not in labels:
                raise InputError(f"unknown basis label {label!r}")
            out[labels.index(label)] = coeff
        return tuple(out)

    def zero(self) -> LatticeVector:
        return (0,) * self.rank

    def standard_basis(self) -> "SymplecticBasis":
        return SymplecticBasis(tuple(self.basis_vector(i) for i in range(self.rank)))

    def full(self) -> "Submodule":
        return saturate(self.standard_basis().vectors)

    def check(self, v: VectorLike) -> LatticeVector:
        if len(v) != self.rank:
            raise InputError(f"vector of length {len(v)} in a lattice of rank {self.rank}")
        return tuple(int(x) for x in v)


@dataclass(frozen=True)
class Submodule:
    basis: Tuple[LatticeVector, ...]
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def lattice(self) -> SymplecticLattice:
        return SymplecticLattice(self.dim // 2)

    def rows(self) -> List[List[int]]:
        return [list(r) for r in self.basis]

    def __contains__(self, v: object) -> bool:
        assert isinstance(v, (tuple, list))
        return contains(self, v)


@dataclass(frozen=True)
class SymplecticBasis:
    """Vectors a1, b1, ..., ah, bh with pairings reproducing the standard form."""

    vectors: Tuple[LatticeVector, ...]

    @property
    def genus(self) -> int:
        return len(self.vectors) // 2

    def a(self, k: int) -> LatticeVector:
        return self.vectors[2 * (k - 1)]

    def b(self, k: int) -> LatticeVector:
        return self.vectors[2 * (k - 1) + 1]

    def pair(self, k: int) -> Tuple[LatticeVector, LatticeVector]:
        return self.a(k), self.b(k)

    def span(self) -> Submodule:
        return saturate(self.vectors)

    def negated(self) -> "SymplecticBasis":
        return SymplecticBasis(tuple(tuple(-x for x in v) for v in self.vectors))


def symp_product(u: VectorLike, v: VectorLike) -> int:
    if len(u) != len(v) or len(u) % 2:
        raise InputError(f"cannot pair vectors of lengths {len(u)} and {len(v)}")
    return sum(u[i] * v[i + 1] - u[i + 1] * v[i] for i in range(0, len(u), 2))


def gram_matrix(vectors: Sequence[VectorLike]) -> List[List[int]]:
    return [[symp_product(u, v) for v in vectors] for u in vectors]


def is_symplectic_basis(vectors: Sequence[VectorLike]) -> bool:
    if len(vectors) % 2:
        return False
    for i, u in enumerate(vectors):
        for j, v in enumerate(vectors):
            expected = 0
            if i // 2 == j // 2 and i != j:
                expected = 1 if i < j else -1
            if symp_product(u, v) != expected:
                return False
    return True


def saturate(rows: Iterable[VectorLike], dim: Optional[int] = None) -> Submodule:
    rows = [tuple(int(x) for x in r) for r in rows]
    if dim is None:
        if not rows:
            raise InputError("dimension is required to saturate an empty family")
        dim = len(rows[0])
    if any(len(r) != dim for r in rows):
        raise InputError("rows of different lengths")
    return Submodule(tuple(tuple(r) for r in saturate_rows(rows, dim)), dim)


def zero_module(dim: int) -> Submodule:
    return Submodule((), dim)


def _annihilator(S: Submodule) -> List[List[int]]:
    """Euclidean annihilator rows; S is cut out by them since S is saturated."""
    return integer_kernel(S.rows(), S.dim)


def contains(S: Submodule, v: VectorLike) -> bool:
    if len(v) != S.dim:
        raise InputError(f"vector of length {len(v)} tested against rank-{S.dim} lattice")
    return all(sum(n * x for n, x in zip(row, v)) == 0 for row in _annihilator(S))


def orthogonal_complement(S: Submodule) -> Submodule:
    # x . s = sum x[2i] s[2i+1] - x[2i+1] s[2i], i.e. a Euclidean product with J s
    dual_rows = []
    for s in S.basis:
        row = [0] * S.dim
        for i in range(0, S.dim, 2):
            row[i] = s[i + 1]
            row[i + 1] = -s[i]
        dual_rows.append(row)
    if not dual_rows:
        return saturate(SymplecticLattice(S.dim // 2).standard_basis().vectors)
    return Submodule(tuple(tuple(r) for r in integer_kernel(dual_rows, S.dim)), S.dim)


def submodule_sum(S: Submodule, T: Submodule) -> Submodule:
    """Saturation of S + T."""
    return saturate(S.basis + T.basis, S.dim)


def intersection(S: Submodule, T: Submodule) -> Submodule:
    rows = _annihilator(S) + _annihilator(T)
    if not rows:
        return S
    return Submodule(tuple(tuple(r) for r in integer_kernel(rows, S.dim)), S.dim)


def is_symplectic_submodule(S: Submodule) -> bool:
    if S.rank % 2:
        return False
    return abs(determinant(gram_matrix(S.basis))) == 1


def is_primitive(v: VectorLike) -> bool:
    return content(v) == 1


def xgcd_pairing_partner(a: VectorLike, rows: Sequence[VectorLike]) -> LatticeVector:
    """A combination b of `rows` with a . b = 1."""
    g, coeffs = xgcd_list([symp_product(a, r) for r in rows])
    if g != 1:
        raise PreconditionError(f"{tuple(a)} is not primitive in its symplectic complement")
    return tuple(combine(coeffs, rows))


def symplectic_frame(S: Submodule, partial: Sequence[VectorLike] = ()) -> SymplecticBasis:
    """A symplectic basis of the symplectic submodule S starting with `partial`.

    Missing a-vectors are the first Hermite row of what is left; missing b-vectors
    come from an extended gcd of the pairings of a with that remainder.
    """
    if not is_symplectic_submodule(S):
        raise PreconditionError("submodule is not symplectic")
    given = [tuple(int(x) for x in v) for v in partial]
    for v in given:
        if len(v) != S.dim:
            raise InputError(f"vector of length {len(v)} in a lattice of rank {S.dim}")
        if not contains(S, v):
            raise PreconditionError(f"{v} does not lie in the submodule")
    if len(given) > S.rank:
        raise PreconditionError("more partial vectors than the rank allows")

    vectors: List[LatticeVector] = []
    remaining = S
    while remaining.rank:
        k = len(vectors)
        if k < len(given):
            a = given[k]
            if not contains(remaining, a):
                raise PreconditionError(f"partial vector {a} has inconsistent pairings")
        else:
            a = remaining.basis[0]
        if k + 1 < len(given):
            b = given[k + 1]
            if not contains(remaining, b) or symp_product(a, b) != 1:
                raise PreconditionError(f"partial vector {b} is not a dual partner of {a}")
        else:
            b = xgcd_pairing_partner(a, remaining.basis)
        vectors += [a, b]
        remaining = intersection(remaining, orthogonal_complement(saturate([a, b])))
    basis = SymplecticBasis(tuple(vectors))
    assert is_symplectic_basis(basis.vectors)
    return basis


def complete_symplectic_basis(
    partial: Sequence[VectorLike], lattice: Optional[SymplecticLattice] = None
) -> SymplecticBasis:
    if lattice is None:
        if not partial:
            raise InputError("an empty partial basis needs an explicit lattice")
        lattice = SymplecticLattice(len(partial[0]) // 2)
    for v in partial:
        lattice.check(v)
    return symplectic_frame(lattice.full(), partial)


def frame_coordinates(frame: SymplecticBasis, v: VectorLike) -> LatticeVector:
    """Coordinates of v in the frame: a_k-coefficient v.b_k, b_k-coefficient a_k.v."""
    coords: List[int] = []
    for k in range(1, frame.genus + 1):
        a, b = frame.pair(k)
        coords += [symp_product(v, b), symp_product(a, v)]
    if tuple(from_frame_coordinates(frame, coords)) != tuple(v):
        raise PreconditionError(f"{tuple(v)} is not in the span of the frame")
    return tuple(coords)


def from_frame_coordinates(frame: SymplecticBasis, coords: VectorLike) -> LatticeVector:
    return tuple(combine(list(coords), frame.vectors))


def dehn_twist(a: VectorLike, c: VectorLike, k: int) -> LatticeVector:
    t = k * symp_product(a, c)
    return tuple(x + t * y for x, y in zip(a, c))


def dehn_twist_matrix(c: VectorLike, k: int) -> List[List[int]]:
    """Matrix (acting on column vectors) of a -> a + k(a.c)c."""
    n = len(c)
    lattice = SymplecticLattice(n // 2)
    columns = [dehn_twist(lattice.basis_vector(j), c, k) for j in range(n)]
    return [[columns[j][i] for j in range(n)] for i in range(n)]


def random_symplectic_basis(
    lattice: SymplecticLattice, rng: random.Random, steps: int = 20, bound: int = 10
) -> SymplecticBasis:
    """Standard basis moved by random Dehn twists, entries kept within [-bound, bound]."""
    vectors = list(lattice.standard_basis().vectors)
    for _ in range(steps):
        c = tuple(rng.choice((-1, 0, 0, 1)) for _ in range(lattice.rank))
        if not any(c):
            continue
        c = tuple(primitive_part(c))
        k = rng.choice((-1, 1))
        moved = [dehn_twist(v, c, k) for v in vectors]
        if max(abs(x) for v in moved for x in v) <= bound:
            vectors = moved
    return SymplecticBasis(tuple(vectors))
