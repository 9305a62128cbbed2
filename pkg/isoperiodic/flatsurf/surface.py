# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Translation surfaces glued from rectangles, with the form dz.

Every rectangle has its right side glued to the left side of some rectangle
(`VerticalGluing`). Horizontal identifications are `Seam`s: the top sides of
the rectangles in `lower`, laid end to end, form a circle of length L that is
identified with the circle made by the bottom sides of `upper`, the point at
position x on the lower circle going to position x - offset on the upper one.
A top or bottom circle may instead be the boundary of a semi-infinite cylinder
around a simple pole (`PoleMarker`).

Homology is computed on the marking graph: its nodes are rectangle corners up to
the identifications made by vertical gluings and by consecutive sides inside a
chain, and its edges are the bottom, top and left side of every rectangle plus
one crossing edge `S{j}` per seam, from the top-left corner of `lower[0]` to the
bottom-left corner of `upper[0]`, whose flat displacement is the seam offset.
"""
from dataclasses import dataclass, replace
from fractions import Fraction
import logging
from typing import (
    Dict,
    Hashable,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
    cast,
)

from isoperiodic.errors import InputError, PreconditionError
from isoperiodic.exact import ExactComplex, Surd

log = logging.getLogger(__name__)

Corner = Tuple[int, str]
SIDES = ("top", "bottom")


@dataclass(frozen=True)
class Rectangle:
    width: Fraction
    height: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "width", Fraction(self.width))
        object.__setattr__(self, "height", Fraction(self.height))
        if self.width <= 0 or self.height <= 0:
            raise InputError(f"rectangle {self.width} x {self.height} is degenerate")


@dataclass(frozen=True)
class VerticalGluing:
    """The right side of `left` is glued to the left side of `right`."""

    left: int
    right: int


@dataclass(frozen=True)
class Seam:
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    offset: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if not self.lower or not self.upper:
            raise InputError("a seam needs a nonempty chain on both sides")


@dataclass(frozen=True)
class PoleMarker:
    """A semi-infinite cylinder attached along the top or bottom sides of `rects`."""

    rects: Tuple[int, ...]
    side: str
    residue: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rects", tuple(self.rects))
        if self.side not in SIDES:
            raise InputError(f"pole side must be one of {SIDES}, got {self.side!r}")
        if not self.rects:
            raise InputError("a pole needs a nonempty boundary chain")


@dataclass(frozen=True)
class RectSurface:
    rectangles: Tuple[Rectangle, ...]
    gluings: Tuple[VerticalGluing, ...]
    seams: Tuple[Seam, ...]
    poles: Tuple[PoleMarker, ...] = ()

    def width_of(self, chain: Sequence[int]) -> Fraction:
        return sum((self.rectangles[k].width for k in chain), Fraction(0))

    def starts(self, chain: Sequence[int]) -> List[Fraction]:
        out: List[Fraction] = []
        pos = Fraction(0)
        for k in chain:
            out.append(pos)
            pos += self.rectangles[k].width
        return out

    def right_neighbour(self) -> Dict[int, int]:
        return {g.left: g.right for g in self.gluings}

    def is_cyclic_chain(self, chain: Sequence[int]) -> bool:
        """The rectangles of `chain`, glued left to right, close up into a cylinder."""
        right = self.right_neighbour()
        n = len(chain)
        return all(right.get(chain[i]) == chain[(i + 1) % n] for i in range(n))


class _Classes:
    def __init__(self) -> None:
        self._parent: Dict[Hashable, Hashable] = {}

    def add(self, x: Hashable) -> None:
        self._parent.setdefault(x, x)

    def find(self, x: Hashable) -> Hashable:
        self.add(x)
        while self._parent[x] != x:
            self._parent[x] = self._parent[self._parent[x]]
            x = self._parent[x]
        return x

    def union(self, x: Hashable, y: Hashable) -> None:
        self._parent[self.find(x)] = self.find(y)

    def groups(self) -> Dict[Hashable, List[Hashable]]:
        out: Dict[Hashable, List[Hashable]] = {}
        for x in list(self._parent):
            out.setdefault(self.find(x), []).append(x)
        return out


def _check_rect(S: RectSurface, k: int) -> None:
    if not 0 <= k < len(S.rectangles):
        raise InputError(f"no rectangle {k}")


def _check_structure(S: RectSurface) -> None:
    n = len(S.rectangles)
    if n == 0:
        raise InputError("a surface needs at least one rectangle")
    lefts = [g.left for g in S.gluings]
    rights = [g.right for g in S.gluings]
    for g in S.gluings:
        _check_rect(S, g.left)
        _check_rect(S, g.right)
        if S.rectangles[g.left].height != S.rectangles[g.right].height:
            raise InputError(
                f"vertical gluing {g.left} -> {g.right} joins sides of unequal height"
            )
    for k in range(n):
        if lefts.count(k) != 1:
            raise InputError(f"right side of rectangle {k} is glued {lefts.count(k)} times")
        if rights.count(k) != 1:
            raise InputError(f"left side of rectangle {k} is glued {rights.count(k)} times")

    tops = [k for s in S.seams for k in s.lower]
    bottoms = [k for s in S.seams for k in s.upper]
    tops += [k for p in S.poles if p.side == "top" for k in p.rects]
    bottoms += [k for p in S.poles if p.side == "bottom" for k in p.rects]
    for k in tops + bottoms:
        _check_rect(S, k)
    for k in range(n):
        if tops.count(k) != 1:
            raise InputError(f"top side of rectangle {k} is paired {tops.count(k)} times")
        if bottoms.count(k) != 1:
            raise InputError(f"bottom side of rectangle {k} is paired {bottoms.count(k)} times")
    for j, s in enumerate(S.seams):
        if S.width_of(s.lower) != S.width_of(s.upper):
            lengths = (S.width_of(s.lower), S.width_of(s.upper))
            raise InputError(f"seam {j} glues circles of lengths {lengths[0]} and {lengths[1]}")

    if S.poles:
        residues = sorted(p.residue for p in S.poles)
        if residues != [-1, 1]:
            raise InputError(f"expected two poles with residues -1 and +1, got {residues}")
        for p in S.poles:
            if S.width_of(p.rects) != 1:
                width = S.width_of(p.rects)
                raise InputError(f"pole of residue {p.residue} has circumference {width}, not 1")

    linked = _Classes()
    for k in range(n):
        linked.add(k)
    for g in S.gluings:
        linked.union(g.left, g.right)
    for s in S.seams:
        for k in s.lower + s.upper:
            linked.union(k, s.lower[0])
    if len(linked.groups()) != 1:
        raise InputError("the rectangles do not form a connected surface")


@dataclass(frozen=True)
class SurfaceReport:
    genus: int
    zero_orders: Tuple[int, ...]
    poles: Tuple[Tuple[int, Fraction], ...]
    vertices: int
    edges: int
    faces: int

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + self.faces


def _chain_junctions(classes: _Classes, chain: Sequence[int], side: str) -> None:
    first, last = ("tl", "tr") if side == "top" else ("bl", "br")
    for i, k in enumerate(chain):
        classes.union((k, first), (chain[i - 1], last))


def validate_surface(S: RectSurface) -> SurfaceReport:
    """Check the gluing data and read off genus and zero orders from the cone angles.

    Angles are counted in quarter turns: each rectangle corner contributes one, a
    point inside a side contributes two, and so does the semi-infinite cylinder at
    a point of a pole circle. A point of total angle 2 pi (k + 1) is a zero of order k.
    """
    _check_structure(S)
    units: Dict[Hashable, int] = {}
    classes = _Classes()
    for k in range(len(S.rectangles)):
        for corner in ("bl", "br", "tl", "tr"):
            units[(k, corner)] = 1
            classes.add((k, corner))
    for g in S.gluings:
        classes.union((g.left, "tr"), (g.right, "tl"))
        classes.union((g.left, "br"), (g.right, "bl"))

    edges = len(S.gluings)
    for j, seam in enumerate(S.seams):
        length = S.width_of(seam.lower)
        lower_starts = S.starts(seam.lower)
        upper_starts = S.starts(seam.upper)
        breaks = {x % length for x in lower_starts}
        breaks |= {(x + seam.offset) % length for x in upper_starts}
        edges += len(breaks)
        for b in breaks:
            if b in lower_starts:
                i = lower_starts.index(b)
                classes.union((seam.lower[i], "tl"), (seam.lower[i - 1], "tr"))
                below: Hashable = (seam.lower[i], "tl")
            else:
                below = ("seam", j, "lower", b)
                units[below] = 2
            u = (b - seam.offset) % length
            if u in upper_starts:
                m = upper_starts.index(u)
                classes.union((seam.upper[m], "bl"), (seam.upper[m - 1], "br"))
                above: Hashable = (seam.upper[m], "bl")
            else:
                above = ("seam", j, "upper", u)
                units[above] = 2
            classes.union(below, above)

    for pole in S.poles:
        _chain_junctions(classes, pole.rects, pole.side)
        corner = "tl" if pole.side == "top" else "bl"
        for k in pole.rects:
            units[(k, corner)] += 2
        edges += len(pole.rects)

    orders = []
    groups = classes.groups()
    for members in groups.values():
        total = sum(units[x] for x in members)
        if total % 4 or total < 4:
            raise InputError(f"cone angle of {total} quarter turns at {sorted(map(str, members))}")
        orders.append(total // 4 - 1)

    vertices = len(groups)
    faces = len(S.rectangles) + len(S.poles)
    chi = vertices - edges + faces
    if chi % 2 or chi > 2:
        raise InputError(f"Euler characteristic {chi} is not that of a closed orientable surface")
    genus = (2 - chi) // 2
    zero_orders = tuple(sorted((k for k in orders if k), reverse=True))
    assert sum(zero_orders) == 2 * genus - 2 + len(S.poles), "angle defects disagree with genus"
    log.debug(f"surface: V={vertices} E={edges} F={faces}, genus {genus}, zeros {zero_orders}")
    return SurfaceReport(
        genus,
        zero_orders,
        tuple((p.residue, S.width_of(p.rects)) for p in S.poles),
        vertices,
        edges,
        faces,
    )


@dataclass(frozen=True)
class MarkingEdge:
    tail: Corner
    head: Corner
    vector: ExactComplex


def _marking_classes(S: RectSurface) -> _Classes:
    classes = _Classes()
    for g in S.gluings:
        classes.union((g.left, "tr"), (g.right, "tl"))
        classes.union((g.left, "br"), (g.right, "bl"))
    for seam in S.seams:
        _chain_junctions(classes, seam.lower, "top")
        _chain_junctions(classes, seam.upper, "bottom")
    for pole in S.poles:
        _chain_junctions(classes, pole.rects, pole.side)
    return classes


def marking_edges(S: RectSurface) -> Dict[str, MarkingEdge]:
    """Edges of the marking graph keyed by label, endpoints given as canonical corners."""
    classes = _marking_classes(S)
    groups = {root: min(cast(List[Corner], members)) for root, members in classes.groups().items()}

    def node(corner: Corner) -> Corner:
        return groups.get(classes.find(corner), corner)

    edges: Dict[str, MarkingEdge] = {}
    for k, R in enumerate(S.rectangles):
        horizontal = ExactComplex(Surd(R.width))
        edges[f"R{k}.bottom"] = MarkingEdge(node((k, "bl")), node((k, "br")), horizontal)
        edges[f"R{k}.top"] = MarkingEdge(node((k, "tl")), node((k, "tr")), horizontal)
        edges[f"R{k}.left"] = MarkingEdge(
            node((k, "bl")), node((k, "tl")), ExactComplex(Surd(), Surd(R.height))
        )
    for j, seam in enumerate(S.seams):
        edges[f"S{j}"] = MarkingEdge(
            node((seam.lower[0], "tl")),
            node((seam.upper[0], "bl")),
            ExactComplex(Surd(seam.offset)),
        )
    return edges


@dataclass(frozen=True)
class MarkedCycle:
    """A formal integer combination of marking-graph edges."""

    chain: Tuple[Tuple[str, int], ...]
    label: str = ""

    @classmethod
    def of(
        cls, terms: Union[Mapping[str, int], Iterable[Tuple[str, int]]], label: str = ""
    ) -> "MarkedCycle":
        totals: Dict[str, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for edge, coeff in items:
            totals[edge] = totals.get(edge, 0) + int(coeff)
        return cls(tuple(sorted((e, c) for e, c in totals.items() if c)), label)

    def coefficient(self, edge: str) -> int:
        return dict(self.chain).get(edge, 0)

    def __add__(self, other: "MarkedCycle") -> "MarkedCycle":
        return MarkedCycle.of(self.chain + other.chain)

    def scale(self, k: int) -> "MarkedCycle":
        return MarkedCycle.of(((e, k * c) for e, c in self.chain), self.label)

    def __neg__(self) -> "MarkedCycle":
        return self.scale(-1)

    def relabeled(self, label: str) -> "MarkedCycle":
        return replace(self, label=label)


def boundary(S: RectSurface, gamma: MarkedCycle) -> Dict[Corner, int]:
    edges = marking_edges(S)
    out: Dict[Corner, int] = {}
    for label, coeff in gamma.chain:
        if label not in edges:
            raise InputError(f"unknown edge {label!r}")
        e = edges[label]
        out[e.head] = out.get(e.head, 0) + coeff
        out[e.tail] = out.get(e.tail, 0) - coeff
    return {x: c for x, c in out.items() if c}


def is_closed(S: RectSurface, gamma: MarkedCycle) -> bool:
    return not boundary(S, gamma)


def marked_cycle(
    S: RectSurface,
    terms: Union[Mapping[str, int], Iterable[Tuple[str, int]]],
    label: str = "",
) -> MarkedCycle:
    gamma = MarkedCycle.of(terms, label)
    rest = boundary(S, gamma)
    if rest:
        raise InputError(f"chain {label or gamma.chain} is not closed, boundary {rest}")
    return gamma


def periods(S: RectSurface, cycles: Sequence[MarkedCycle]) -> List[ExactComplex]:
    """Integral of dz over each cycle: the signed sum of its edge vectors."""
    edges = marking_edges(S)
    out = []
    for gamma in cycles:
        if not is_closed(S, gamma):
            raise InputError(f"cycle {gamma.label or gamma.chain} is not closed")
        total = ExactComplex()
        for label, coeff in gamma.chain:
            total = total + edges[label].vector.scale(coeff)
        out.append(total)
    return out


def _check_seam(S: RectSurface, j: int) -> Seam:
    if not 0 <= j < len(S.seams):
        raise InputError(f"no seam {j}")
    return S.seams[j]


def intersection_with_seam(S: RectSurface, j: int, gamma: MarkedCycle) -> int:
    """Algebraic intersection of the core curve of the cylinder bounded by seam j with gamma.

    The curve runs rightward inside whichever side of the seam closes up into a
    cylinder, so it crosses exactly the left sides of those rectangles.
    """
    seam = _check_seam(S, j)
    if S.is_cyclic_chain(seam.lower):
        chain = seam.lower
    elif S.is_cyclic_chain(seam.upper):
        chain = seam.upper
    else:
        raise PreconditionError(f"seam {j} is not the boundary of a horizontal cylinder")
    return sum(gamma.coefficient(f"R{k}.left") for k in chain)


def twist(S: RectSurface, j: int, theta: Union[Fraction, int, str]) -> RectSurface:
    """Re-glue across seam j with the horizontal offset moved by theta.

    The period of every cycle changes by theta times its intersection with the
    seam's core curve.
    """
    seam = _check_seam(S, j)
    if not (S.is_cyclic_chain(seam.lower) or S.is_cyclic_chain(seam.upper)):
        raise PreconditionError(f"seam {j} is not a closed horizontal geodesic of a cylinder")
    seams = list(S.seams)
    seams[j] = replace(seam, offset=seam.offset + Fraction(theta))
    return replace(S, seams=tuple(seams))


def split_rectangle(S: RectSurface, k: int, at: Union[Fraction, int, str]) -> RectSurface:
    """Cut rectangle k by a vertical segment at horizontal position `at`.

    The right piece becomes rectangle n = len(S.rectangles).
    """
    _check_rect(S, k)
    at = Fraction(at)
    R = S.rectangles[k]
    if not 0 < at < R.width:
        raise PreconditionError(f"cut at {at} is outside (0, {R.width})")
    n = len(S.rectangles)
    rects = list(S.rectangles)
    rects[k] = Rectangle(at, R.height)
    rects.append(Rectangle(R.width - at, R.height))
    gluings = [VerticalGluing(n, g.right) if g.left == k else g for g in S.gluings]
    gluings.append(VerticalGluing(k, n))

    def cut(chain: Sequence[int]) -> Tuple[int, ...]:
        return tuple(x for r in chain for x in ((k, n) if r == k else (r,)))

    return RectSurface(
        tuple(rects),
        tuple(gluings),
        tuple(replace(s, lower=cut(s.lower), upper=cut(s.upper)) for s in S.seams),
        tuple(replace(p, rects=cut(p.rects)) for p in S.poles),
    )


def split_cycle(gamma: MarkedCycle, k: int, n: int) -> MarkedCycle:
    """Carry a cycle across `split_rectangle(S, k, at)`, n being the new rectangle."""
    terms = list(gamma.chain)
    for side in ("top", "bottom"):
        c = gamma.coefficient(f"R{k}.{side}")
        if c:
            terms.append((f"R{n}.{side}", c))
    return MarkedCycle.of(terms, gamma.label)


def cycle_basis(S: RectSurface) -> List[MarkedCycle]:
    """Fundamental cycles of a spanning forest of the marking graph.

    They span the cycle space of the graph, hence generate the homology of the
    surface with the poles removed.
    """
    edges = marking_edges(S)
    adjacency: Dict[Corner, List[Tuple[str, Corner, int]]] = {}
    for label, e in edges.items():
        adjacency.setdefault(e.tail, []).append((label, e.head, 1))
        adjacency.setdefault(e.head, []).append((label, e.tail, -1))

    # path from the root of its tree to each node, as a chain
    to_node: Dict[Corner, Dict[str, int]] = {}
    tree: Set[str] = set()
    for root in sorted(adjacency):
        if root in to_node:
            continue
        to_node[root] = {}
        frontier = [root]
        while frontier:
            x = frontier.pop(0)
            for label, y, sign in adjacency[x]:
                if y in to_node:
                    continue
                chain = dict(to_node[x])
                chain[label] = chain.get(label, 0) + sign
                to_node[y] = chain
                tree.add(label)
                frontier.append(y)

    out = []
    for label, e in edges.items():
        if label in tree:
            continue
        terms = [(label, 1)] + list(to_node[e.tail].items())
        terms += [(edge, -c) for edge, c in to_node[e.head].items()]
        out.append(MarkedCycle.of(terms, f"z{len(out)}"))
    return out


def torus(width: Union[Fraction, int] = 1, height: Union[Fraction, int] = 1) -> RectSurface:
    """One rectangle, opposite sides glued; R0.bottom and R0.left + S0 form a basis."""
    return RectSurface(
        (Rectangle(Fraction(width), Fraction(height)),),
        (VerticalGluing(0, 0),),
        (Seam((0,), (0,)),),
    )


def l_surface() -> RectSurface:
    """Three unit squares A, B, C with one cone point of angle 6 pi.

    A and B sit side by side in one horizontal cylinder and C forms another; the
    top of A is glued to the bottom of C, the top of C to the bottom of A, and B
    is glued to itself vertically.
    """
    unit = Rectangle(Fraction(1), Fraction(1))
    return RectSurface(
        (unit, unit, unit),
        (VerticalGluing(0, 1), VerticalGluing(1, 0), VerticalGluing(2, 2)),
        (Seam((0,), (2,)), Seam((2,), (0,)), Seam((1,), (1,))),
    )


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    a, b = tuple(a), tuple(b)
    return len(a) == len(b) and any(a[i:] + a[:i] == b for i in range(len(a)))


def _locate(S: RectSurface, chain: Sequence[int], pos: Fraction) -> Tuple[int, Fraction]:
    """Rectangle of `chain` containing position `pos` and the local coordinate there."""
    for k, start in zip(chain, S.starts(chain)):
        if start <= pos < start + S.rectangles[k].width:
            return k, pos - start
    raise AssertionError(f"position {pos} outside the chain")


@dataclass(frozen=True)
class SurfaceInvolution:
    """Maps rectangle k onto rectangle `rect_map[k]` by z -> -z + (w + i h)."""

    rect_map: Tuple[int, ...]

    def image(self, k: int) -> int:
        return self.rect_map[k]

    def chart_constant(self, S: RectSurface, k: int) -> ExactComplex:
        R = S.rectangles[k]
        return ExactComplex(Surd(R.width), Surd(R.height))

    def apply_to_point(
        self, S: RectSurface, k: int, x: Fraction, y: Fraction
    ) -> Tuple[int, Fraction, Fraction]:
        R = S.rectangles[k]
        return self.rect_map[k], R.width - Fraction(x), R.height - Fraction(y)

    def mapped(self, chain: Sequence[int]) -> Tuple[int, ...]:
        """Image of a chain of sides; a rotation by pi reverses their order."""
        return tuple(self.rect_map[k] for k in reversed(chain))


def _image_seam(S: RectSurface, iota: SurfaceInvolution, seam: Seam) -> Optional[Seam]:
    target = iota.image(seam.lower[0])
    for other in S.seams:
        if target in other.upper:
            if _same_cycle(other.upper, iota.mapped(seam.lower)) and _same_cycle(
                other.lower, iota.mapped(seam.upper)
            ):
                return other
            return None
    return None


def _seam_offsets_agree(S: RectSurface, iota: SurfaceInvolution, seam: Seam, image: Seam) -> bool:
    length = S.width_of(seam.lower)
    # the top-left corner of lower[0] and the point glued to it below the seam
    r = seam.lower[0]
    r_image = iota.image(r)
    upper_pos = S.starts(image.upper)[image.upper.index(r_image)] + S.rectangles[r].width
    u, local = _locate(S, seam.upper, (-seam.offset) % length)
    u_image = iota.image(u)
    lower_pos = S.starts(image.lower)[image.lower.index(u_image)] + S.rectangles[u].width - local
    return (lower_pos - image.offset - upper_pos) % length == 0


def involution_compatible(S: RectSurface, iota: SurfaceInvolution) -> bool:
    """The rectangle charts z -> -z + c agree with every gluing of S."""
    n = len(S.rectangles)
    if sorted(iota.rect_map) != list(range(n)):
        return False
    if any(S.rectangles[k] != S.rectangles[iota.image(k)] for k in range(n)):
        return False
    vertical = {(g.left, g.right) for g in S.gluings}
    if any((iota.image(right), iota.image(left)) not in vertical for left, right in vertical):
        return False
    for seam in S.seams:
        image = _image_seam(S, iota, seam)
        if image is None or not _seam_offsets_agree(S, iota, seam, image):
            return False
    for pole in S.poles:
        if not any(
            other.side != pole.side
            and other.residue == -pole.residue
            and _same_cycle(other.rects, iota.mapped(pole.rects))
            for other in S.poles
        ):
            return False
    return True


def involution_squared_is_identity(S: RectSurface, iota: SurfaceInvolution) -> bool:
    """Charts compose to z -> z once the rectangle permutation is an involution."""
    return all(
        iota.image(iota.image(k)) == k and S.rectangles[k] == S.rectangles[iota.image(k)]
        for k in range(len(S.rectangles))
    )


def is_odd(S: RectSurface, iota: SurfaceInvolution) -> bool:
    """iota is an involution of S pulling dz back to -dz."""
    return involution_compatible(S, iota) and involution_squared_is_identity(S, iota)
