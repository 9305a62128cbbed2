# Copyright (c) the isoperiodic authors. All Rights Reserved
"""p-admissible symplectic decompositions.

A decomposition V = V_1 + ... + V_k into pairwise orthogonal symplectic
submodules is p-admissible when p restricts to a nonzero homomorphism on every
factor. An element v is admissible when p does not vanish on v^perp; such an
element always sits in a rank-two factor of a two-factor admissible
decomposition, and `rank2_envelope` builds one.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
import random
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import ilcm

from isoperiodic.errors import InputError, PreconditionError
from isoperiodic.exact import Surd
from isoperiodic.periods import (
    PeriodHom,
    degree,
    evaluate,
    reduce_half,
    restrict,
)
from isoperiodic.symplattice import (
    LatticeVector,
    Submodule,
    SymplecticBasis,
    SymplecticLattice,
    VectorLike,
    complete_symplectic_basis,
    frame_coordinates,
    from_frame_coordinates,
    is_primitive,
    is_symplectic_submodule,
    orthogonal_complement,
    saturate,
    symp_product,
    symplectic_frame,
    zero_module,
)
from isoperiodic.utils import determinant, hermite_form, primitive_part, small_vectors, xgcd_list

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decomposition:
    factors: Tuple[Submodule, ...]

    @property
    def dim(self) -> int:
        return self.factors[0].dim if self.factors else 0

    def __len__(self) -> int:
        return len(self.factors)

    def __getitem__(self, index: int) -> Submodule:
        return self.factors[index]


def is_valid_decomposition(D: Decomposition) -> bool:
    if not D.factors:
        return False
    dim = D.dim
    if any(F.dim != dim or F.rank == 0 or not is_symplectic_submodule(F) for F in D.factors):
        return False
    if sum(F.rank for F in D.factors) != dim:
        return False
    for i, F in enumerate(D.factors):
        for G in D.factors[i + 1 :]:
            if any(symp_product(u, v) for u in F.basis for v in G.basis):
                return False
    # orthogonal symplectic factors of full total rank: unimodular iff they span V
    stacked = [list(v) for F in D.factors for v in F.basis]
    return abs(determinant(stacked)) == 1


def is_admissible_decomposition(p: PeriodHom, D: Decomposition) -> bool:
    if not is_valid_decomposition(D) or D.dim != p.lattice.rank:
        return False
    return all(not restrict(p, F).is_zero() for F in D.factors)


def _require_rank_four(p: PeriodHom) -> None:
    if p.lattice.rank < 4:
        raise PreconditionError(f"admissibility needs rank at least 4, got {p.lattice.rank}")


def is_admissible_element(p: PeriodHom, v: VectorLike) -> bool:
    v = p.lattice.check(v)
    if not any(v):
        raise PreconditionError("the zero vector is never admissible")
    _require_rank_four(p)
    return not restrict(p, orthogonal_complement(saturate([v]))).is_zero()


def _proportional_line(values: Sequence[Fraction]) -> Optional[List[int]]:
    if not any(values):
        return None
    common = 1
    for q in values:
        common = int(ilcm(common, q.denominator))
    return primitive_part([int(q * common) for q in values])


def non_admissible_locus(p: PeriodHom) -> Submodule:
    """The line of vectors v for which p factors through pairing with v.

    p vanishes on v^perp exactly when p(x) = lambda (x . v) mod Z for some lambda.
    When p has a non-torsion value this pins v down to a line (or nothing); for
    torsion periods the non-admissible set is the congruence class of that line
    modulo the degree, and the line itself is returned.
    """
    _require_rank_four(p)
    if p.is_zero():
        raise PreconditionError("the zero period has no admissible elements")
    dim = p.lattice.rank
    im_rat = [v.im.rat for v in p.values]
    im_sqrt2 = [v.im.sqrt2 for v in p.values]
    ell = _proportional_line(im_rat) or _proportional_line(im_sqrt2)
    if ell is None:
        ell = _proportional_line([v.re for v in p.values])
    assert ell is not None
    g, w = xgcd_list(ell)
    assert g == 1

    # imaginary part must be exactly proportional, real part proportional mod Z
    lam_im = Surd()
    lam_re = Fraction(0)
    for wj, value in zip(w, p.values):
        lam_im = lam_im + value.im.scale(wj)
        lam_re += wj * value.re
    for lj, value in zip(ell, p.values):
        if value.im != lam_im.scale(lj) or (lam_re * lj - value.re).denominator != 1:
            log.debug(f"period is not a multiple of pairing with {ell}: empty locus")
            return zero_module(dim)

    v = [0] * dim
    for i in range(0, dim, 2):
        v[i] = ell[i + 1]
        v[i + 1] = -ell[i]
    return Submodule(tuple(tuple(r) for r in hermite_form([primitive_part(v)])), dim)


def rank2_envelope(p: PeriodHom, v: VectorLike) -> Decomposition:
    """A two-factor admissible decomposition whose rank-two first factor contains v."""
    v = p.lattice.check(v)
    if not is_primitive(v):
        raise PreconditionError(f"{v} is not primitive")
    if not is_admissible_element(p, v):
        raise PreconditionError(f"{v} is not admissible for the period")
    basis = complete_symplectic_basis([v], p.lattice)
    a1, b1 = basis.pair(1)
    rest = basis.vectors[2:]
    if evaluate(p, a1):
        if any(evaluate(p, x) for x in rest):
            W1 = saturate([a1, b1])
        else:
            _, b2 = basis.pair(2)
            W1 = saturate([a1, tuple(x - y for x, y in zip(b1, b2))])
    else:
        x = next(x for x in rest if evaluate(p, x))
        basis = complete_symplectic_basis([a1, b1, x], p.lattice)
        a2 = basis.a(2)
        if evaluate(p, b1):
            W1 = saturate([a1, b1])
        else:
            W1 = saturate([a1, tuple(s + t for s, t in zip(b1, a2))])
    D = Decomposition((W1, orthogonal_complement(W1)))
    assert is_admissible_decomposition(p, D), f"envelope of {v} is not admissible"
    return D


def admissible_candidates(lattice: SymplecticLattice, radius: int) -> Iterator[LatticeVector]:
    """Standard basis vectors first, then primitive vectors by sup-norm and lexicographic order."""
    seen = set()
    for i in range(lattice.rank):
        v = lattice.basis_vector(i)
        seen.add(v)
        yield v
    for v in small_vectors(lattice.rank, radius):
        if v not in seen and is_primitive(v):
            yield v


def find_admissible_decomposition(
    p: PeriodHom, want_degree3_factors: bool = False, radius: int = 2
) -> Decomposition:
    _require_rank_four(p)
    if p.is_zero():
        raise PreconditionError("the zero period admits no admissible decomposition")
    q = p
    if want_degree3_factors:
        if degree(p) < 3:
            raise PreconditionError(f"degree {degree(p)} < 3: no factors of degree three")
        q = reduce_half(p)
    for v in admissible_candidates(p.lattice, radius):
        if is_admissible_element(q, v):
            D = rank2_envelope(q, v)
            assert is_admissible_decomposition(p, D)
            log.debug(f"admissible decomposition through {v}")
            return D
    # a nonzero period always has an admissible standard basis vector
    raise AssertionError("no admissible candidate found")


def split_by_first_factor(D: Decomposition) -> Decomposition:
    """The two-factor grouping {V_1, V_1^perp} of a decomposition."""
    if not D.factors:
        raise InputError("empty decomposition")
    return Decomposition((D.factors[0], orthogonal_complement(D.factors[0])))


def _frame(U: Submodule) -> SymplecticBasis:
    return symplectic_frame(U)


def is_admissible_in(p: PeriodHom, U: Submodule, k: VectorLike) -> bool:
    """Admissibility of k for the restriction of p to the symplectic submodule U."""
    frame = _frame(U)
    if frame.genus < 2:
        return False
    coords = frame_coordinates(frame, k)
    return is_admissible_element(p.restrict_to_frame(frame), coords)


def envelope_in(p: PeriodHom, U: Submodule, k: VectorLike) -> Tuple[Submodule, Submodule]:
    """`rank2_envelope` of k computed inside U, mapped back to V."""
    frame = _frame(U)
    local = rank2_envelope(p.restrict_to_frame(frame), frame_coordinates(frame, k))
    back = [
        saturate([from_frame_coordinates(frame, row) for row in F.basis], p.lattice.rank)
        for F in local.factors
    ]
    return back[0], back[1]


def random_admissible_decomposition(
    p: PeriodHom, rng: random.Random, bound: int = 3, attempts: int = 200
) -> Decomposition:
    """The envelope of a random admissible vector with entries in [-bound, bound]."""
    _require_rank_four(p)
    for _ in range(attempts):
        v = tuple(rng.randint(-bound, bound) for _ in range(p.lattice.rank))
        if any(v) and is_primitive(v) and is_admissible_element(p, v):
            return rank2_envelope(p, v)
    log.warning(f"no random admissible vector after {attempts} attempts, using a basis search")
    return find_admissible_decomposition(p)
