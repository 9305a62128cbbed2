# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Realizability of lifts P = u + i v of a period by Haupt's criterion.

A lift with genus at least two is realized by a holomorphic form exactly when
u.v > 0 and, if the image of P is a lattice, u.v exceeds its covolume.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import itertools
import logging
from typing import List, Optional, Tuple, Union

from sympy import Matrix, ilcm

from isoperiodic.errors import PreconditionError, UnsupportedGenusError
from isoperiodic.exact import ExactComplex, Surd
from isoperiodic.periods import PeriodHom, PeriodLift, canonical_lift
from isoperiodic.utils import hermite_form

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ImageAnalysis:
    rank: int
    span_dimension: int
    discrete: bool
    covolume: Optional[Surd] = None
    basis: Tuple[ExactComplex, ...] = ()

    @property
    def is_lattice(self) -> bool:
        return self.discrete and self.rank == 2


def _coordinates(z: ExactComplex) -> List[Fraction]:
    return [z.re.rat, z.re.sqrt2, z.im.rat, z.im.sqrt2]


def image_subgroup_analysis(P: PeriodLift) -> ImageAnalysis:
    """Rank, real span and discreteness of the subgroup generated by the values of P."""
    coords = [_coordinates(z) for z in P.values]
    rank = int(Matrix(coords).rank())
    nonzero = [z for z in P.values if z]
    if not nonzero:
        span = 0
    elif any(z.cross(w) for z, w in itertools.combinations(nonzero, 2)):
        span = 2
    else:
        span = 1
    discrete = rank == span
    if not (discrete and rank == 2):
        return ImageAnalysis(rank, span, discrete)

    common = 1
    for row in coords:
        for q in row:
            common = int(ilcm(common, q.denominator))
    rows = hermite_form([[int(q * common) for q in row] for row in coords])
    assert len(rows) == 2
    basis = tuple(
        ExactComplex(
            Surd(Fraction(r[0], common), Fraction(r[1], common)),
            Surd(Fraction(r[2], common), Fraction(r[3], common)),
        )
        for r in rows
    )
    covolume = abs(basis[0].cross(basis[1]))
    return ImageAnalysis(rank, span, discrete, covolume, basis)


def volume(P: PeriodLift) -> Surd:
    return P.volume()


class Reason(Enum):
    VOLUME_NONPOSITIVE = "VolumeNonpositive"
    LATTICE_COVOLUME = "LatticeCovolume"


@dataclass(frozen=True)
class NotRealizable:
    reason: Reason
    volume: Surd

    realizable = False


@dataclass(frozen=True)
class RealizableNonLattice:
    volume: Surd

    realizable = True


@dataclass(frozen=True)
class RealizableLattice:
    volume: Surd
    covolume: Surd
    basis: Tuple[ExactComplex, ...]

    realizable = True


HauptVerdict = Union[NotRealizable, RealizableNonLattice, RealizableLattice]


def haupt_check(P: PeriodLift) -> HauptVerdict:
    if P.lattice.genus < 2:
        raise UnsupportedGenusError("realizability is only decided for genus at least 2")
    vol = P.volume()
    if vol.sign() <= 0:
        return NotRealizable(Reason.VOLUME_NONPOSITIVE, vol)
    image = image_subgroup_analysis(P)
    if image.is_lattice:
        assert image.covolume is not None
        if vol > image.covolume:
            return RealizableLattice(vol, image.covolume, image.basis)
        return NotRealizable(Reason.LATTICE_COVOLUME, vol)
    # positive volume forces a two-dimensional real span, so a discrete image is a lattice
    assert not image.discrete
    return RealizableNonLattice(vol)


def enumerate_lifts(p: PeriodHom, bound: int) -> List[Tuple[PeriodLift, HauptVerdict]]:
    """Every lift P0 + w with w in [-bound, bound]^2g, in lexicographic order of w."""
    if p.lattice.genus < 2:
        raise UnsupportedGenusError("realizability is only decided for genus at least 2")
    if bound < 0:
        raise PreconditionError(f"box bound must be non-negative, got {bound}")
    base = canonical_lift(p)
    out = []
    for w in itertools.product(range(-bound, bound + 1), repeat=p.lattice.rank):
        lift = base.shift(w)
        out.append((lift, haupt_check(lift)))
    log.debug(f"{len(out)} lifts in the box of size {bound}")
    return out


def count_realizable(p: PeriodHom, bound: int) -> int:
    return sum(1 for _, verdict in enumerate_lifts(p, bound) if verdict.realizable)
