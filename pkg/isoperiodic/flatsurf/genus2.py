# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Odd forms on genus-two surfaces with a prescribed real period.

The surface is built from a horizontal cylinder C0 of circumference 1 under the
pole of residue +1, sitting on three cylinders C1, C2, C3 of height 1 whose
circumferences P1, P2, P3 add up to 1, together with its image under the
rotation by pi. Twisting the gluings between C_k and its mirror sets the periods
of the transverse cycles.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import List, Tuple

from isoperiodic.admissible import find_admissible_decomposition
from isoperiodic.errors import PreconditionError, UnsupportedGenusError, VerificationError
from isoperiodic.flatsurf.surface import (
    MarkedCycle,
    PoleMarker,
    Rectangle,
    RectSurface,
    Seam,
    SurfaceInvolution,
    VerticalGluing,
    intersection_with_seam,
    is_odd,
    marked_cycle,
    periods,
    twist,
    validate_surface,
)
from isoperiodic.periods import CMODZ, AbelianValue, PeriodHom, evaluate, reduce_half
from isoperiodic.symplattice import (
    LatticeVector,
    SymplecticBasis,
    is_symplectic_basis,
    symplectic_frame,
    xgcd_pairing_partner,
)
from isoperiodic.utils import combine, content, small_vectors

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClaimedBasis:
    """A symplectic basis with p(a1), p(a2), p(a1 + a2) nonzero and the real lift.

    `circumferences` are the lifts P1, P2 of p(a1), p(a2) in (0, 1) with
    P1 + P2 < 1, followed by P3 = 1 - P1 - P2. `b_lifts` lift p(b1), p(b2) to [0, 1).
    """

    basis: SymplecticBasis
    circumferences: Tuple[Fraction, Fraction, Fraction]
    b_lifts: Tuple[Fraction, Fraction]
    flipped: bool


def _order_at_least_three(value: AbelianValue) -> bool:
    return value.order() >= 3


def _pair_candidates() -> List[Tuple[int, int]]:
    rest = [(s, t) for s, t in small_vectors(2, 2) if content((s, t)) == 1]
    return [(1, 0), (0, 1)] + [v for v in rest if v not in ((1, 0), (0, 1))]


def _good_pair(
    p: PeriodHom, x: LatticeVector, y: LatticeVector
) -> Tuple[LatticeVector, LatticeVector]:
    """A symplectic pair (a, b) of <x, y> with p(a) of order at least three.

    x is tried first, then y, then small primitive combinations.
    """
    for s, t in _pair_candidates():
        a = tuple(combine([s, t], [x, y]))
        if _order_at_least_three(evaluate(p, a)):
            return a, xgcd_pairing_partner(a, [x, y])
    raise AssertionError("factor of a degree-three decomposition without a value of order 3")


def claim_basis_and_lift(p: PeriodHom) -> ClaimedBasis:
    if p.lattice.genus != 2:
        raise UnsupportedGenusError(f"branch points are built in genus 2, not {p.lattice.genus}")
    if p.group != CMODZ or not p.is_real_valued():
        raise PreconditionError("the period must be real valued in C/Z")
    if reduce_half(p).is_zero():
        raise PreconditionError("the period has degree at most 2")

    D = find_admissible_decomposition(p, want_degree3_factors=True)
    pairs = []
    for F in D.factors:
        x, y = symplectic_frame(F).pair(1)
        pairs.append(_good_pair(p, x, y))
    (a1, b1), (a2, b2) = pairs
    if (evaluate(p, a1) + evaluate(p, a2)).is_zero():
        a2, b2 = tuple(-c for c in a2), tuple(-c for c in b2)

    vectors = (a1, b1, a2, b2)
    P1, P2 = evaluate(p, a1).re, evaluate(p, a2).re
    flipped = P1 + P2 > 1
    if flipped:
        vectors = tuple(tuple(-c for c in v) for v in vectors)
        P1, P2 = 1 - P1, 1 - P2
    assert 0 < P1 < 1 and 0 < P2 < 1 and P1 + P2 < 1, (P1, P2)
    basis = SymplecticBasis(vectors)
    assert is_symplectic_basis(basis.vectors)
    b_lifts = (evaluate(p, basis.b(1)).re, evaluate(p, basis.b(2)).re)
    log.debug(f"claimed basis {basis.vectors}, circumferences {P1}, {P2}, flipped={flipped}")
    return ClaimedBasis(basis, (P1, P2, 1 - P1 - P2), b_lifts, flipped)


@dataclass(frozen=True)
class BranchPoint:
    surface: RectSurface
    involution: SurfaceInvolution
    claim: ClaimedBasis
    # images of a1, b1, a2, b2
    marking: Tuple[MarkedCycle, ...]
    a3: MarkedCycle
    pole_cycle: MarkedCycle
    thetas: Tuple[Fraction, Fraction]


def doubled_cylinders(circumferences: Tuple[Fraction, Fraction, Fraction]) -> RectSurface:
    """C0 over C1, C2, C3 (rectangles 0-3) and their mirrors (7, then 4-6), untwisted.

    Seam k for k = 1, 2, 3 joins the mirror of C_k to C_k; seam 0 joins C1, C2, C3 to
    C0 and seam 4 joins the mirror of C0 to the mirrors of C3, C2, C1.
    """
    unit = Rectangle(Fraction(1), Fraction(1))
    cylinders = [Rectangle(P, Fraction(1)) for P in circumferences]
    rects = (unit, *cylinders, *cylinders, unit)
    return RectSurface(
        rects,
        tuple(VerticalGluing(k, k) for k in range(len(rects))),
        (
            Seam((1, 2, 3), (0,)),
            Seam((4,), (1,)),
            Seam((5,), (2,)),
            Seam((6,), (3,)),
            Seam((7,), (6, 5, 4)),
        ),
        (PoleMarker((0,), "top", 1), PoleMarker((7,), "bottom", -1)),
    )


def rotation(S: RectSurface) -> SurfaceInvolution:
    assert len(S.rectangles) == 8
    return SurfaceInvolution((7, 4, 5, 6, 1, 2, 3, 0))


def _transverse_cycle(S: RectSurface, k: int) -> MarkedCycle:
    """Up through the mirror of C_k and C_k, back down through C3 and its mirror."""
    return marked_cycle(
        S,
        [
            (f"R{3 + k}.left", 1),
            (f"S{k}", 1),
            (f"R{k}.left", 1),
            ("R3.left", -1),
            ("S3", -1),
            ("R6.left", -1),
        ],
        f"b~{k}",
    )


def _marking(S: RectSurface) -> List[MarkedCycle]:
    return [
        marked_cycle(S, {"R1.bottom": 1}, "a~1"),
        _transverse_cycle(S, 1),
        marked_cycle(S, {"R2.bottom": 1}, "a~2"),
        _transverse_cycle(S, 2),
    ]


def genus2_odd_branch_point(p: PeriodHom) -> BranchPoint:
    claim = claim_basis_and_lift(p)
    base = doubled_cylinders(claim.circumferences)
    marking = _marking(base)
    transverse = [marking[1], marking[3]]

    # the twist along seam j moves the period of b~k by theta_j (seam j . b~k)
    for j in (1, 2, 3):
        for k, gamma in enumerate(transverse, start=1):
            expected = int(j == k) - int(j == 3)
            if intersection_with_seam(base, j, gamma) != expected:
                raise VerificationError(f"seam {j} meets b~{k} {expected} times unexpectedly")
    baseline = periods(base, transverse)
    thetas = tuple(target - z.re.rat for target, z in zip(claim.b_lifts, baseline))
    assert all(z.re.is_rational() and not z.im for z in baseline)

    surface = twist(twist(base, 1, thetas[0]), 2, thetas[1])
    point = BranchPoint(
        surface,
        rotation(surface),
        claim,
        tuple(marking),
        marked_cycle(surface, {"R3.bottom": 1}, "a~3"),
        marked_cycle(surface, {"R0.top": 1}, "pi+"),
        (thetas[0], thetas[1]),
    )
    check_branch_point(p, point)
    log.info(f"odd branch point with circumferences {claim.circumferences}, twists {thetas}")
    return point


def check_branch_point(p: PeriodHom, point: BranchPoint) -> None:
    """Genus two, simple poles of residue +-1, odd under the rotation, periods reducing to p."""
    S = point.surface
    report = validate_surface(S)
    if report.genus != 2:
        raise VerificationError(f"branch point surface has genus {report.genus}")
    if sorted(r for r, _ in report.poles) != [-1, 1]:
        raise VerificationError(f"poles {report.poles} are not simple of residue +-1")
    if not is_odd(S, point.involution):
        raise VerificationError("the rotation is not an odd involution of the surface")
    values = periods(S, point.marking)
    for v, z in zip(point.claim.basis.vectors, values):
        if AbelianValue.cmodz(z.re.rat, z.im) != evaluate(p, v):
            raise VerificationError(f"period {z} of the marking differs from p({v})")
    a3, pole = periods(S, [point.a3, point.pole_cycle])
    if values[0] + values[2] + a3 != pole:
        raise VerificationError("a~1 + a~2 + a~3 does not have the period of the pole circle")
