# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Graphs of horizontal cylinders of real-period forms and the moves that degenerate them.

Vertices are the 2g simple zeros at distinct heights, edges the cylinders of
closed leaves between two zeros, oriented upward. The highest vertex also
bounds the semi-infinite cylinder of one pole, the lowest the other one. A
height crossed by exactly one cylinder gives a closed leaf separating the poles.
"""
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
import logging
import random
from typing import List, Optional, Tuple

from isoperiodic.errors import (
    InputError,
    PreconditionError,
    UnsupportedGenusError,
    VerificationError,
)

log = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class CylinderGraph:
    levels: Tuple[Fraction, ...]
    edges: Tuple[Edge, ...]
    bottom: int
    top: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(Fraction(x) for x in self.levels))
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))

    @property
    def genus(self) -> int:
        return len(self.levels) // 2

    def up_edges(self, v: int) -> List[int]:
        return [i for i, (lower, _) in enumerate(self.edges) if lower == v]

    def down_edges(self, v: int) -> List[int]:
        return [i for i, (_, upper) in enumerate(self.edges) if upper == v]

    def neighbours(self) -> List[List[int]]:
        """Adjacency lists of the undirected graph, one pass over the edges."""
        adjacent: List[List[int]] = [[] for _ in self.levels]
        for lower, upper in self.edges:
            adjacent[lower].append(upper)
            adjacent[upper].append(lower)
        return adjacent

    def length(self, i: int) -> Fraction:
        lower, upper = self.edges[i]
        return self.levels[upper] - self.levels[lower]

    def validate(self) -> None:
        """Raise InputError naming the first broken invariant."""
        n = len(self.levels)
        if n < 2 or n % 2:
            raise InputError(f"a cylinder graph has 2g >= 2 vertices, got {n}")
        if len(set(self.levels)) != n:
            raise InputError("zeros must sit at distinct heights")
        for i, (lower, upper) in enumerate(self.edges):
            if not (0 <= lower < n and 0 <= upper < n):
                raise InputError(f"edge {i} = {(lower, upper)} has an unknown endpoint")
            if self.levels[lower] >= self.levels[upper]:
                raise InputError(f"edge {i} = {(lower, upper)} does not go upward")
        if self.levels[self.top] != max(self.levels):
            raise InputError(f"top vertex {self.top} is not the highest")
        if self.levels[self.bottom] != min(self.levels):
            raise InputError(f"bottom vertex {self.bottom} is not the lowest")
        ups = Counter(lower for lower, _ in self.edges)
        downs = Counter(upper for _, upper in self.edges)
        for v in range(n):
            up = ups[v] + (v == self.top)
            down = downs[v] + (v == self.bottom)
            if (up, down) not in ((1, 2), (2, 1)):
                raise InputError(f"vertex {v} has {up} upward and {down} downward cylinders")
        if len(self.edges) != 3 * self.genus - 1:
            raise InputError(f"{len(self.edges)} cylinders, expected {3 * self.genus - 1}")
        neighbours = self.neighbours()
        reached = {self.top}
        frontier = [self.top]
        while frontier:
            for y in neighbours[frontier.pop()]:
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        if len(reached) != n:
            raise InputError("the cylinder graph is not connected")

    def crossing_counts(self) -> List[Tuple[Fraction, Fraction, int]]:
        """(low, high, cylinders crossing) for every gap between consecutive heights."""
        heights = sorted(self.levels)
        out = []
        for low, high in zip(heights, heights[1:]):
            count = sum(
                1 for a, b in self.edges if self.levels[a] <= low and self.levels[b] >= high
            )
            out.append((low, high, count))
        return out


def separating_level(G: CylinderGraph) -> Optional[Fraction]:
    """Middle of the lowest gap crossed by exactly one cylinder, if any."""
    for low, high, count in G.crossing_counts():
        if count == 1:
            return (low + high) / 2
    return None


@dataclass(frozen=True)
class DescendingPath:
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]


def _descend(G: CylinderGraph, first_edge: int) -> DescendingPath:
    """Follow `first_edge` down from the top, then the first downward cylinder at each zero."""
    vertices = [G.edges[first_edge][1], G.edges[first_edge][0]]
    edges = [first_edge]
    while vertices[-1] != G.bottom:
        e = G.down_edges(vertices[-1])[0]
        edges.append(e)
        vertices.append(G.edges[e][0])
    return DescendingPath(tuple(vertices), tuple(edges))


def _truncate(path: DescendingPath, stop: int) -> DescendingPath:
    i = path.vertices.index(stop)
    return DescendingPath(path.vertices[: i + 1], path.edges[:i])


def descending_paths(G: CylinderGraph) -> Tuple[DescendingPath, DescendingPath]:
    """Two paths leaving the top on different cylinders, cut at their first common zero."""
    first, second = G.down_edges(G.top)
    left, right = _descend(G, first), _descend(G, second)
    meet = next(v for v in right.vertices[1:] if v in left.vertices[1:])
    return _truncate(left, meet), _truncate(right, meet)


def meeting_vertex_count(
    G: CylinderGraph, paths: Optional[Tuple[DescendingPath, DescendingPath]] = None
) -> int:
    if paths is None:
        paths = descending_paths(G)
    return len(set(paths[0].vertices) | set(paths[1].vertices))


def cylinder_upward_move(G: CylinderGraph, v0: int, e1_index: int) -> CylinderGraph:
    """Slide the zero v0 up past v1, the upper end of its shorter upward cylinder e0.

    v0 takes over the cylinder e1 from v1 to u, v1 takes over the downward cylinder
    of v0 (or the lower pole), and e0 now runs from v1 up to v0. The new height of v0
    lies between v1 and the next zero above it.
    """
    ups = G.up_edges(v0)
    if len(ups) != 2:
        raise PreconditionError(f"vertex {v0} does not have two upward cylinders")
    e0, other = sorted(ups, key=G.length)
    v1 = G.edges[e0][1]
    if G.edges[other][1] == v1:
        if v1 == G.top:
            raise PreconditionError(
                f"both cylinders above {v0} end at the top: separating level present"
            )
        raise PreconditionError(f"both cylinders above {v0} end at {v1}")
    if not (0 <= e1_index < len(G.edges)) or G.edges[e1_index][0] != v1:
        raise PreconditionError(f"cylinder {e1_index} does not go upward from {v1}")

    edges = list(G.edges)
    u = G.edges[e1_index][1]
    downs = G.down_edges(v0)
    edges[e0] = (v1, v0)
    edges[e1_index] = (v0, u)
    bottom = G.bottom
    if downs:
        (d0,) = downs
        edges[d0] = (G.edges[d0][0], v1)
    else:
        bottom = v1
    above = min(x for x in G.levels if x > G.levels[v1])
    levels = list(G.levels)
    levels[v0] = (G.levels[v1] + above) / 2
    moved = replace(G, levels=tuple(levels), edges=tuple(edges), bottom=bottom)
    log.debug(f"zero {v0} moved above {v1} to height {levels[v0]}")
    return moved


@dataclass(frozen=True)
class Degeneration:
    moves: Tuple[Tuple[int, int], ...]
    level: Fraction
    graphs: Tuple[CylinderGraph, ...]

    @property
    def final(self) -> CylinderGraph:
        return self.graphs[-1]


def degenerate_real(G: CylinderGraph) -> Degeneration:
    """Move the meeting zero of the descending paths upward until one cylinder separates.

    Each move removes one zero from the union of the two paths, so at most
    `meeting_vertex_count(G) - 2` moves are made.
    """
    G.validate()
    if G.genus < 2:
        raise UnsupportedGenusError("a separating cylinder needs genus at least 2")
    graphs = [G]
    moves: List[Tuple[int, int]] = []
    paths = list(descending_paths(G))
    budget = meeting_vertex_count(G, (paths[0], paths[1])) - 2
    while True:
        level = separating_level(G)
        if level is not None:
            log.info(f"separating height {level} after {len(moves)} moves")
            return Degeneration(tuple(moves), level, tuple(graphs))
        if len(moves) >= budget:
            raise VerificationError(f"no separating height after {len(moves)} moves")
        y0 = paths[0].vertices[-1]
        e0 = min(G.up_edges(y0), key=G.length)
        side = 0 if paths[0].edges[-1] == e0 else 1
        path = paths[side]
        assert path.edges[-1] == e0 and len(path.edges) >= 2
        e1 = path.edges[-2]
        G = cylinder_upward_move(G, y0, e1)
        G.validate()
        paths[side] = DescendingPath(path.vertices[:-2] + (y0,), path.edges[:-1])
        moves.append((y0, e1))
        graphs.append(G)


def random_cylinder_graph(genus: int, rng: random.Random) -> CylinderGraph:
    """Sweep upward through 2g zeros, each merging two open cylinders or splitting one."""
    if genus < 1:
        raise InputError(f"genus must be positive, got {genus}")
    n = 2 * genus
    edges: List[List[int]] = []
    open_edges: List[int] = []

    def start(v: int) -> None:
        edges.append([v, -1])
        open_edges.append(len(edges) - 1)

    def close(v: int) -> None:
        i = open_edges.pop(rng.randrange(len(open_edges)))
        edges[i][1] = v

    start(0)
    start(0)
    splits = merges = genus - 1
    for v in range(1, n - 1):
        # a merge needs two open cylinders; splits and merges balance, so one is always possible
        if merges and len(open_edges) >= 2 and (not splits or rng.random() < 0.5):
            merges -= 1
            close(v)
            close(v)
            start(v)
        else:
            splits -= 1
            close(v)
            start(v)
            start(v)
    close(n - 1)
    close(n - 1)
    assert not open_edges
    graph = CylinderGraph(
        tuple(Fraction(v + 1) for v in range(n)),
        tuple((a, b) for a, b in edges),
        0,
        n - 1,
    )
    graph.validate()
    return graph


def separating_cylinder(G: CylinderGraph, level: Fraction) -> List[int]:
    return [i for i, (a, b) in enumerate(G.edges) if G.levels[a] < level < G.levels[b]]
