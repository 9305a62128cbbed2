# Copyright (c) the isoperiodic authors. All Rights Reserved
"""The graph of p-admissible decompositions.

Vertices are two-factor admissible decompositions {W, W^perp}; two vertices are
adjacent when an admissible decomposition with at least three factors has a
factor of each. `connect` produces a Certificate, a path in this graph whose
every edge carries the refinement that witnesses it, so that connectivity
claims can be rechecked independently with `verify_certificate`.
"""
from dataclasses import dataclass
import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from isoperiodic.admissible import (
    Decomposition,
    envelope_in,
    is_admissible_decomposition,
    is_admissible_in,
    split_by_first_factor,
)
from isoperiodic.errors import PreconditionError, ResourceCapError, VerificationError
from isoperiodic.periods import PeriodHom, evaluate, restrict, subgroup_order
from isoperiodic.symplattice import (
    LatticeVector,
    Submodule,
    VectorLike,
    complete_symplectic_basis,
    intersection,
    is_primitive,
    is_symplectic_submodule,
    orthogonal_complement,
    saturate,
    submodule_sum,
    symp_product,
    symplectic_frame,
    xgcd_pairing_partner,
)
from isoperiodic.utils import combine, content, small_vectors

log = logging.getLogger(__name__)

MAX_CERTIFICATE_EDGES = 12


@dataclass(frozen=True)
class SearchLimits:
    radius: int = 2
    radius_limit: int = 4
    candidate_cap: int = 200_000


DEFAULT_LIMITS = SearchLimits()


@dataclass(frozen=True)
class Vertex:
    """An unordered pair {W, W^perp}, stored with the smaller basis first."""

    first: Submodule
    second: Submodule

    @classmethod
    def of(cls, W: Submodule, U: Submodule) -> "Vertex":
        if U.basis < W.basis:
            W, U = U, W
        return cls(W, U)

    @classmethod
    def from_factor(cls, W: Submodule) -> "Vertex":
        return cls.of(W, orthogonal_complement(W))

    @classmethod
    def from_decomposition(cls, D: Decomposition) -> "Vertex":
        grouped = split_by_first_factor(D)
        return cls.of(grouped[0], grouped[1])

    @property
    def factors(self) -> Tuple[Submodule, Submodule]:
        return self.first, self.second

    def decomposition(self) -> Decomposition:
        return Decomposition(self.factors)

    def has_factor(self, W: Submodule) -> bool:
        return W in self.factors

    def rank_two_factor(self) -> Optional[Submodule]:
        return next((F for F in self.factors if F.rank == 2), None)


@dataclass(frozen=True)
class EdgeWitness:
    refinement: Decomposition
    left_index: int
    right_index: int

    def swapped(self) -> "EdgeWitness":
        return EdgeWitness(self.refinement, self.right_index, self.left_index)


@dataclass(frozen=True)
class Certificate:
    vertices: Tuple[Vertex, ...]
    witnesses: Tuple[EdgeWitness, ...] = ()

    @classmethod
    def single(cls, v: Vertex) -> "Certificate":
        return cls((v,))

    @classmethod
    def edge(cls, v1: Vertex, v2: Vertex, w: EdgeWitness) -> "Certificate":
        return cls((v1, v2), (w,))

    @property
    def length(self) -> int:
        return len(self.witnesses)

    @property
    def source(self) -> Vertex:
        return self.vertices[0]

    @property
    def target(self) -> Vertex:
        return self.vertices[-1]

    def then(self, other: "Certificate") -> "Certificate":
        if self.target != other.source:
            raise VerificationError("certificates do not share an endpoint")
        return Certificate(self.vertices + other.vertices[1:], self.witnesses + other.witnesses)

    def reversed(self) -> "Certificate":
        return Certificate(
            tuple(reversed(self.vertices)), tuple(w.swapped() for w in reversed(self.witnesses))
        )

    def simplified(self) -> "Certificate":
        """Cut out every cycle, keeping both endpoints."""
        vertices: List[Vertex] = [self.vertices[0]]
        witnesses: List[EdgeWitness] = []
        for v, w in zip(self.vertices[1:], self.witnesses):
            if v in vertices:
                i = vertices.index(v)
                del vertices[i + 1 :]
                del witnesses[i:]
                continue
            vertices.append(v)
            witnesses.append(w)
        return Certificate(tuple(vertices), tuple(witnesses))


def certificate_endpoints(c: Certificate) -> Tuple[Vertex, Vertex]:
    return c.source, c.target


def simplify(c: Certificate) -> Certificate:
    return c.simplified()


def is_valid_vertex(p: PeriodHom, v: Vertex) -> bool:
    if v.first.dim != p.lattice.rank or v.second.dim != p.lattice.rank:
        return False
    return is_admissible_decomposition(p, v.decomposition())


def verify_edge(p: PeriodHom, v1: Vertex, v2: Vertex, w: EdgeWitness) -> bool:
    D = w.refinement
    if len(D) < 3 or not is_admissible_decomposition(p, D):
        return False
    if not (0 <= w.left_index < len(D) and 0 <= w.right_index < len(D)):
        return False
    return v1.has_factor(D[w.left_index]) and v2.has_factor(D[w.right_index])


def verify_certificate(p: PeriodHom, c: Certificate) -> bool:
    if not c.vertices or len(c.witnesses) != len(c.vertices) - 1:
        return False
    if not all(is_valid_vertex(p, v) for v in c.vertices):
        return False
    return all(
        verify_edge(p, v1, v2, w) for v1, v2, w in zip(c.vertices, c.vertices[1:], c.witnesses)
    )


def _lin(*terms: Tuple[int, VectorLike]) -> LatticeVector:
    return tuple(combine([c for c, _ in terms], [v for _, v in terms]))


def _nonzero_on(p: PeriodHom, vectors: Sequence[VectorLike]) -> bool:
    return any(evaluate(p, v) for v in vectors)


def _require_genus_three(p: PeriodHom) -> None:
    if p.lattice.rank < 6:
        raise PreconditionError(f"connectivity needs rank at least 6, got {p.lattice.rank}")


def _require_admissible_factor(p: PeriodHom, W: Submodule) -> None:
    if W.rank != 2 or not is_symplectic_submodule(W):
        raise PreconditionError(f"{W.basis} is not a rank-two symplectic submodule")
    if not is_valid_vertex(p, Vertex.from_factor(W)):
        raise PreconditionError(f"{W.basis} is not an admissible factor")


@dataclass(frozen=True)
class TurningFrame:
    """W1 = <a1, b1> and W1' = <a1, b1 + alpha2 a2> inside a symplectic basis."""

    basis: Tuple[LatticeVector, ...]
    alpha2: int

    def a(self, k: int) -> LatticeVector:
        return self.basis[2 * (k - 1)]

    def b(self, k: int) -> LatticeVector:
        return self.basis[2 * (k - 1) + 1]

    @property
    def genus(self) -> int:
        return len(self.basis) // 2

    def tail(self) -> Tuple[LatticeVector, ...]:
        """Frame of W3, the vectors a_i, b_i for i >= 3."""
        return self.basis[4:]


def turning_frame(W1: Submodule, W1p: Submodule) -> TurningFrame:
    line = intersection(W1, W1p)
    assert line.rank == 1, "distinct saturated planes meet in a line"
    a1 = line.basis[0]
    b1 = xgcd_pairing_partner(a1, W1.basis)
    w = xgcd_pairing_partner(a1, W1p.basis)
    d = _lin((1, w), (-1, b1))
    r = _lin((1, d), (-symp_product(d, b1), a1))
    alpha2 = content(r)
    assert alpha2, "W1' differs from W1"
    a2 = tuple(x // alpha2 for x in r)
    basis = complete_symplectic_basis([a1, b1, a2])
    frame = TurningFrame(basis.vectors, alpha2)
    assert saturate([a1, _lin((1, b1), (alpha2, a2))]) == W1p
    return frame


def case_label(p: PeriodHom, W1: Submodule, W1p: Submodule) -> str:
    return _case_label(p, turning_frame(W1, W1p))


def _case_label(p: PeriodHom, frame: TurningFrame) -> str:
    if evaluate(p, frame.a(2)):
        return "0"
    tail_values = [evaluate(p, v) for v in frame.tail()]
    if any(tail_values):
        if not evaluate(p, frame.a(1)):
            return "1.1"
        return "1.2.1" if subgroup_order(tail_values) >= 3 else "1.2.2"
    return "2.1" if evaluate(p, frame.a(1)) else "2.2"


def _parameters(count: int, limit: int) -> Iterator[Tuple[int, ...]]:
    yield (0,) * count
    yield from small_vectors(count, limit)


def _through_third_factor(
    p: PeriodHom, W1: Submodule, W1p: Submodule, frame: TurningFrame, limits: SearchLimits
) -> Optional[Certificate]:
    """Cases where V = W1 + W2 + W3 = W1' + W2' + W3 for a suitable change of basis."""
    a1, a2, b2 = frame.a(1), frame.a(2), frame.b(2)
    tail = frame.tail()
    pairs = [(tail[2 * j], tail[2 * j + 1]) for j in range(len(tail) // 2)]
    for radius in range(limits.radius, limits.radius_limit + 1):
        for params in _parameters(2 * len(pairs), radius):
            if radius > limits.radius and max(abs(x) for x in params) <= radius - 1:
                continue
            ms, ns = params[0::2], params[1::2]
            W3_gens: List[LatticeVector] = []
            b2p = b2
            for (ai, bi), m, n in zip(pairs, ms, ns):
                W3_gens += [_lin((1, ai), (m, a2)), _lin((1, bi), (n, a2))]
                b2p = _lin((1, b2p), (n, ai), (-m, bi))
            W2_gens = [a2, b2p]
            W2p_gens = [a2, _lin((frame.alpha2, a1), (1, b2p))]
            if not (
                _nonzero_on(p, W2_gens) and _nonzero_on(p, W2p_gens) and _nonzero_on(p, W3_gens)
            ):
                continue
            W3 = saturate(W3_gens)
            first = Decomposition((W1, saturate(W2_gens), W3))
            second = Decomposition((W1p, saturate(W2p_gens), W3))
            assert is_admissible_decomposition(p, first) and is_admissible_decomposition(p, second)
            log.debug(f"third factor found with m={ms}, n={ns}")
            middle = Vertex.from_factor(W3)
            return Certificate.edge(Vertex.from_factor(W1), middle, EdgeWitness(first, 0, 2)).then(
                Certificate.edge(middle, Vertex.from_factor(W1p), EdgeWitness(second, 2, 0))
            )
        log.info(f"widening the third-factor search beyond radius {radius}")
    return None


def _kernel_candidates(frame: TurningFrame, radius: int) -> Iterator[LatticeVector]:
    gens = [frame.a(2)] + list(frame.tail())
    yield from gens
    for coeffs in small_vectors(len(gens), radius):
        yield tuple(combine(list(coeffs), gens))


def _through_kernel(
    p: PeriodHom,
    W1: Submodule,
    W1p: Submodule,
    frame: TurningFrame,
    depth: int,
    limits: SearchLimits,
) -> Optional[Certificate]:
    """Replace W1, W1' by rank-two factors of their complements meeting in ker p."""
    U, Up = orthogonal_complement(W1), orthogonal_complement(W1p)
    for k in _kernel_candidates(frame, limits.radius_limit):
        if evaluate(p, k) or not is_primitive(k):
            continue
        if not (is_admissible_in(p, U, k) and is_admissible_in(p, Up, k)):
            continue
        W2, W2c = envelope_in(p, U, k)
        W2p, W2pc = envelope_in(p, Up, k)
        log.debug(f"kernel element {k} spans the turn")
        left = Certificate.edge(
            Vertex.from_factor(W1),
            Vertex.from_factor(W2),
            EdgeWitness(Decomposition((W1, W2, W2c)), 0, 1),
        )
        right = Certificate.edge(
            Vertex.from_factor(W1p),
            Vertex.from_factor(W2p),
            EdgeWitness(Decomposition((W1p, W2p, W2pc)), 0, 1),
        )
        inner = connect_intersecting(
            p, W2, W2p, depth=depth + 1, allowed=frozenset({"0", "1.1"}), limits=limits
        )
        return left.then(inner).then(right.reversed())
    return None


def connect_intersecting(
    p: PeriodHom,
    W1: Submodule,
    W1p: Submodule,
    depth: int = 0,
    allowed: Optional[FrozenSet[str]] = None,
    limits: SearchLimits = DEFAULT_LIMITS,
) -> Certificate:
    _require_genus_three(p)
    _require_admissible_factor(p, W1)
    _require_admissible_factor(p, W1p)
    if W1 == W1p:
        return Certificate.single(Vertex.from_factor(W1))
    if intersection(W1, W1p).rank == 0:
        raise PreconditionError("factors do not intersect")
    if depth > 2:
        raise VerificationError("turning recursion deeper than two levels")

    frame = turning_frame(W1, W1p)
    label = _case_label(p, frame)
    log.info(f"turning around {frame.a(1)}: case {label} at depth {depth}")
    if allowed is not None and label not in allowed:
        raise VerificationError(f"unexpected case at depth {depth}", case=label)

    result: Optional[Certificate]
    if label in ("0", "1.1", "1.2.1"):
        result = _through_third_factor(p, W1, W1p, frame, limits)
    elif label in ("1.2.2", "2.1"):
        result = _through_kernel(p, W1, W1p, frame, depth, limits)
    else:
        a1, b1, a2, b3 = frame.a(1), frame.b(1), frame.a(2), frame.b(3)
        W1pp = saturate([a1, _lin((1, b1), (frame.alpha2, a2), (1, b3))])
        inner = frozenset({"0", "1.1"})
        result = connect_intersecting(
            p, W1, W1pp, depth=depth + 1, allowed=inner, limits=limits
        ).then(connect_intersecting(p, W1pp, W1p, depth=depth + 1, allowed=inner, limits=limits))
    if result is None:
        raise VerificationError("no witness within the search radius", case=label)
    return result


def force_intersection(
    p: PeriodHom, W: Submodule, Wp: Submodule, limits: SearchLimits = DEFAULT_LIMITS
) -> Tuple[Submodule, Submodule, Tuple[Certificate, Certificate]]:
    """Rank-two factors W1 ~ W and W1' ~ W' that intersect, with the edges W -> W1 and W' -> W1'."""
    _require_genus_three(p)
    _require_admissible_factor(p, W)
    _require_admissible_factor(p, Wp)
    if intersection(W, Wp).rank:
        here, there = Vertex.from_factor(W), Vertex.from_factor(Wp)
        return W, Wp, (Certificate.single(here), Certificate.single(there))
    U, Up = orthogonal_complement(W), orthogonal_complement(Wp)
    X = intersection(U, Up)
    assert X.rank >= 2
    for coeffs in small_vectors(X.rank, limits.radius_limit):
        k = tuple(combine(list(coeffs), X.basis))
        if not is_primitive(k):
            continue
        if is_admissible_in(p, U, k) and is_admissible_in(p, Up, k):
            break
    else:
        raise VerificationError("no common admissible element in the complements")
    W1, W1c = envelope_in(p, U, k)
    W1p, W1pc = envelope_in(p, Up, k)
    log.debug(f"forced intersection along {k}")
    left = Certificate.edge(
        Vertex.from_factor(W),
        Vertex.from_factor(W1),
        EdgeWitness(Decomposition((W, W1, W1c)), 0, 1),
    )
    right = Certificate.edge(
        Vertex.from_factor(Wp),
        Vertex.from_factor(W1p),
        EdgeWitness(Decomposition((Wp, W1p, W1pc)), 0, 1),
    )
    return W1, W1p, (left, right)


def reduce_to_rank_two(p: PeriodHom, D: Decomposition) -> Tuple[Submodule, Certificate]:
    """A rank-two admissible factor W together with a path from the grouping of D to {W, W^perp}."""
    start = Vertex.from_decomposition(D)
    W = start.rank_two_factor()
    if W is not None:
        return W, Certificate.single(start)
    if len(D) >= 3:
        j = next((j for j, F in enumerate(D.factors) if F.rank == 2), None)
        if j is not None:
            return D[j], Certificate.edge(start, Vertex.from_factor(D[j]), EdgeWitness(D, 0, j))
    F = D[0]
    frame = symplectic_frame(F)
    for v in frame.vectors:
        if is_admissible_in(p, F, v):
            break
    else:
        # some frame vector of F carries a nonzero value, and such a vector is admissible
        raise AssertionError("admissible factor without an admissible frame vector")
    X, Y = envelope_in(p, F, v)
    refinement = Decomposition((X, Y, orthogonal_complement(F)))
    return X, Certificate.edge(start, Vertex.from_factor(X), EdgeWitness(refinement, 2, 0))


def connect(
    p: PeriodHom, D1: Decomposition, D2: Decomposition, limits: SearchLimits = DEFAULT_LIMITS
) -> Certificate:
    """A verified path between the two-factor groupings of two admissible decompositions."""
    _require_genus_three(p)
    if p.is_zero():
        raise PreconditionError("the zero period has no admissible decompositions")
    for D in (D1, D2):
        if not is_admissible_decomposition(p, D):
            raise PreconditionError("input decomposition is not admissible")
    start, end = Vertex.from_decomposition(D1), Vertex.from_decomposition(D2)
    if start == end:
        return Certificate.single(start)

    W, path1 = reduce_to_rank_two(p, D1)
    Wp, path2 = reduce_to_rank_two(p, D2)
    W1, W1p, (f1, f2) = force_intersection(p, W, Wp, limits)
    middle = connect_intersecting(p, W1, W1p, limits=limits)
    cert = path1.then(f1).then(middle).then(f2.reversed()).then(path2.reversed()).simplified()
    if not verify_certificate(p, cert):
        raise VerificationError("constructed certificate does not verify")
    assert cert.length <= MAX_CERTIFICATE_EDGES, f"certificate with {cert.length} edges"
    log.info(f"certificate with {cert.length} edges")
    return cert


@dataclass(frozen=True)
class BoundedGraph:
    vertices: Tuple[Vertex, ...] = ()
    edges: Tuple[Tuple[int, int, EdgeWitness], ...] = ()
    complete: bool = True


def _is_bounded(S: Submodule, bound: int) -> bool:
    return all(abs(x) <= bound for row in S.basis for x in row)


def _hermite_candidates(dim: int, rank: int, bound: int) -> Iterator[Tuple[LatticeVector, ...]]:
    """Row Hermite matrices of the given rank with entries in [-bound, bound]."""
    for pivots in itertools.combinations(range(dim), rank):
        for values in itertools.product(range(1, bound + 1), repeat=rank):
            ranges: List[List[range]] = []
            for i, c in enumerate(pivots):
                row = [range(0, 1)] * c + [range(values[i], values[i] + 1)]
                for j in range(c + 1, dim):
                    if j in pivots:
                        # entries above a later pivot are reduced into [0, pivot)
                        row.append(range(0, values[pivots.index(j)]))
                    else:
                        row.append(range(-bound, bound + 1))
                ranges.append(row)
            yield from itertools.product(*(itertools.product(*row) for row in ranges))


def enumerate_bounded(
    p: PeriodHom, bound: int, limits: SearchLimits = DEFAULT_LIMITS
) -> BoundedGraph:
    """All vertices with canonical factor entries in [-bound, bound] and the edges among them."""
    g = p.lattice.genus
    if g == 1 or p.is_zero():
        return BoundedGraph()
    dim = p.lattice.rank
    found: Set[Vertex] = set()
    examined = 0
    for rank in range(2, g + 1, 2):
        for rows in _hermite_candidates(dim, rank, bound):
            examined += 1
            if examined > limits.candidate_cap:
                partial = BoundedGraph(tuple(sorted(found, key=_vertex_key)), (), complete=False)
                log.warning(f"enumeration stopped after {limits.candidate_cap} candidates")
                raise ResourceCapError(
                    f"more than {limits.candidate_cap} candidate factors", partial=partial
                )
            if rank == 2 and abs(symp_product(rows[0], rows[1])) != 1:
                continue
            W = saturate(rows)
            if W.basis != tuple(rows) or not is_symplectic_submodule(W):
                continue
            if restrict(p, W).is_zero():
                continue
            Wc = orthogonal_complement(W)
            if not _is_bounded(Wc, bound) or restrict(p, Wc).is_zero():
                continue
            found.add(Vertex.of(W, Wc))
    vertices = tuple(sorted(found, key=_vertex_key))
    log.info(f"{len(vertices)} bounded vertices from {examined} candidates")
    return BoundedGraph(vertices, _bounded_edges(p, vertices, bound))


def _vertex_key(v: Vertex) -> Tuple:
    return (v.first.basis, v.second.basis)


def _bounded_edges(
    p: PeriodHom, vertices: Sequence[Vertex], bound: int
) -> Tuple[Tuple[int, int, EdgeWitness], ...]:
    edges: List[Tuple[int, int, EdgeWitness]] = []
    dim = p.lattice.rank
    complements: Dict[Tuple[Submodule, Submodule], Optional[Submodule]] = {}
    for i, j in itertools.combinations(range(len(vertices)), 2):
        for li, X in enumerate(vertices[i].factors):
            witness = None
            for ri, Y in enumerate(vertices[j].factors):
                if X.rank + Y.rank >= dim:
                    continue
                if any(symp_product(x, y) for x in X.basis for y in Y.basis):
                    continue
                key = (X, Y)
                if key not in complements:
                    Z = orthogonal_complement(submodule_sum(X, Y))
                    ok = _is_bounded(Z, bound) and not restrict(p, Z).is_zero()
                    complements[key] = Z if ok else None
                Z = complements[key]
                if Z is not None:
                    witness = EdgeWitness(Decomposition((X, Y, Z)), 0, 1)
                    break
            if witness is not None:
                edges.append((i, j, witness))
                break
    return tuple(edges)
