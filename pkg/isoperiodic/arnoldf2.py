# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Mod-2 Arnold invariants of degree-two forms and the action of Sp(2g, F2).

An Arnold map sends H1(surface, F2) = F2^2g into M_E0, the subsets of
E0 = {0, inf, e1, ..., e2g} taken modulo complementation. Its period is the
F2-valued homomorphism recording which images separate 0 from inf. Classes are
taken modulo relabelings of e1, ..., e2g.
"""
from dataclasses import dataclass
import itertools
import logging
import random
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from isoperiodic.errors import InputError, PreconditionError, UnsupportedGenusError
from isoperiodic.periods import F2, AbelianValue, PeriodHom
from isoperiodic.symplattice import SymplecticLattice

log = logging.getLogger(__name__)


def point_labels(genus: int) -> List[str]:
    return ["0", "inf"] + [f"e{k}" for k in range(1, 2 * genus + 1)]


@dataclass(frozen=True)
class MEElement:
    """A subset of E0 modulo complement, kept as the smaller of the two bitmasks."""

    mask: int
    size: int

    def __post_init__(self) -> None:
        full = (1 << self.size) - 1
        if not 0 <= self.mask <= full:
            raise InputError(f"mask {self.mask} out of range for {self.size} points")
        object.__setattr__(self, "mask", min(self.mask, self.mask ^ full))

    @classmethod
    def from_labels(cls, labels: Sequence[str], genus: int) -> "MEElement":
        names = point_labels(genus)
        mask = 0
        for label in labels:
            if label not in names:
                raise InputError(f"unknown point {label!r}, expected one of {names}")
            mask ^= 1 << names.index(label)
        return cls(mask, len(names))

    def labels(self) -> List[str]:
        names = point_labels((self.size - 2) // 2)
        return [name for i, name in enumerate(names) if self.mask >> i & 1]

    def __xor__(self, other: "MEElement") -> "MEElement":
        return MEElement(self.mask ^ other.mask, self.size)

    def is_even(self) -> bool:
        return bin(self.mask).count("1") % 2 == 0

    def separates_poles(self) -> bool:
        return (self.mask & 1) != (self.mask >> 1 & 1)

    def relabeled(self, perm: Sequence[int]) -> "MEElement":
        """Move e_{k+1} to e_{perm[k]+1}; 0 and inf stay fixed."""
        mask = self.mask & 0b11
        for k, target in enumerate(perm):
            if self.mask >> (k + 2) & 1:
                mask |= 1 << (target + 2)
        return MEElement(mask, self.size)


@dataclass(frozen=True)
class ArnoldMap:
    genus: int
    columns: Tuple[MEElement, ...]

    def __post_init__(self) -> None:
        if len(self.columns) != 2 * self.genus:
            raise InputError(f"{len(self.columns)} columns for genus {self.genus}")
        if any(c.size != 2 * self.genus + 2 for c in self.columns):
            raise InputError("columns live on the wrong point set")

    @classmethod
    def from_labels(cls, genus: int, columns: Sequence[Sequence[str]]) -> "ArnoldMap":
        return cls(genus, tuple(MEElement.from_labels(c, genus) for c in columns))

    def image(self, v: Sequence[int]) -> MEElement:
        out = MEElement(0, 2 * self.genus + 2)
        for bit, column in zip(v, self.columns):
            if bit % 2:
                out = out ^ column
        return out


def rank_mod2(rows: np.ndarray) -> int:
    m = np.array(rows, dtype=np.int64) % 2
    rank = 0
    nrows, ncols = m.shape
    for col in range(ncols):
        hits = np.nonzero(m[rank:, col])[0]
        if hits.size == 0:
            continue
        pivot = rank + hits[0]
        m[[rank, pivot]] = m[[pivot, rank]]
        others = np.nonzero(m[:, col])[0]
        for r in others:
            if r != rank:
                m[r] ^= m[rank]
        rank += 1
        if rank == nrows:
            break
    return rank


def _bits(mask: int, size: int) -> List[int]:
    return [mask >> i & 1 for i in range(size)]


def is_valid_arnold(A: ArnoldMap) -> bool:
    """Injective with image exactly the even subsets modulo complement."""
    if not all(c.is_even() for c in A.columns):
        return False
    size = 2 * A.genus + 2
    rows = [_bits(c.mask, size) for c in A.columns] + [[1] * size]
    # the even part of M_E0 has dimension 2g, so an injective even map is onto it
    return rank_mod2(np.array(rows)) - 1 == 2 * A.genus


def even_subspace_basis(genus: int) -> List[MEElement]:
    """{0, e_k} for k = 1..2g, a basis of the even part of M_E0."""
    size = 2 * genus + 2
    return [MEElement(1 | 1 << (k + 2), size) for k in range(2 * genus)]


def period_of_arnold(A: ArnoldMap) -> PeriodHom:
    if not is_valid_arnold(A):
        raise PreconditionError("Arnold map is not injective onto the even subsets")
    return PeriodHom(
        SymplecticLattice(A.genus),
        F2,
        tuple(AbelianValue.bit(1 if c.separates_poles() else 0) for c in A.columns),
    )


def period_bits(p: PeriodHom) -> Tuple[int, ...]:
    return tuple(v.residue_value() for v in p.values)


@dataclass(frozen=True)
class ArnoldClass:
    genus: int
    key: Tuple[int, ...]


def arnold_class(A: ArnoldMap) -> ArnoldClass:
    """Smallest column encoding over all relabelings of e1, ..., e2g."""
    best: Optional[Tuple[int, ...]] = None
    for perm in itertools.permutations(range(2 * A.genus)):
        key = tuple(c.relabeled(perm).mask for c in A.columns)
        if best is None or key < best:
            best = key
    assert best is not None
    return ArnoldClass(A.genus, best)


def arnold_equal(A1: ArnoldMap, A2: ArnoldMap) -> bool:
    if A1.genus != A2.genus:
        raise InputError("Arnold maps of different genus")
    return arnold_class(A1) == arnold_class(A2)


def symplectic_form_mod2(genus: int) -> np.ndarray:
    J = np.zeros((2 * genus, 2 * genus), dtype=np.int64)
    for k in range(genus):
        J[2 * k, 2 * k + 1] = 1
        J[2 * k + 1, 2 * k] = 1
    return J


@dataclass(frozen=True, eq=False)
class SpF2Element:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.int64) % 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def genus(self) -> int:
        return self.matrix.shape[0] // 2

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SpF2Element) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def __matmul__(self, other: "SpF2Element") -> "SpF2Element":
        return SpF2Element(self.matrix @ other.matrix % 2)

    def is_symplectic(self) -> bool:
        J = symplectic_form_mod2(self.genus)
        return np.array_equal(self.matrix.T @ J @ self.matrix % 2, J)

    def inverse(self) -> "SpF2Element":
        J = symplectic_form_mod2(self.genus)
        inv = SpF2Element(J @ self.matrix.T @ J % 2)
        assert np.array_equal(inv.matrix @ self.matrix % 2, np.eye(2 * self.genus, dtype=np.int64))
        return inv

    @classmethod
    def identity(cls, genus: int) -> "SpF2Element":
        return cls(np.eye(2 * genus, dtype=np.int64))


def transvection(c: Sequence[int]) -> SpF2Element:
    """v -> v + (v . c) c."""
    c = np.array(c, dtype=np.int64) % 2
    J = symplectic_form_mod2(len(c) // 2)
    return SpF2Element(np.eye(len(c), dtype=np.int64) + np.outer(c, J @ c))


def _nonzero_vectors(n: int) -> Iterator[Tuple[int, ...]]:
    for v in itertools.product((0, 1), repeat=n):
        if any(v):
            yield v


def sp_group(genus: int) -> Set[SpF2Element]:
    """Closure of all transvections; 720 elements in genus two."""
    if genus > 2:
        raise UnsupportedGenusError(f"Sp(2g, F2) is only enumerated for g <= 2, got {genus}")
    gens = [transvection(c) for c in _nonzero_vectors(2 * genus)]
    group = {SpF2Element.identity(genus)}
    frontier = list(group)
    while frontier:
        new = []
        for M in frontier:
            for T in gens:
                N = M @ T
                if N not in group:
                    group.add(N)
                    new.append(N)
        frontier = new
    log.debug(f"Sp({2 * genus}, F2) has {len(group)} elements")
    return group


def compose_inverse(A: ArnoldMap, M: SpF2Element) -> ArnoldMap:
    """A o M^-1: column j is the image of M^-1 e_j."""
    Minv = M.inverse().matrix
    return ArnoldMap(A.genus, tuple(A.image(Minv[:, j]) for j in range(2 * A.genus)))


def fixes_period(M: SpF2Element, bits: Sequence[int]) -> bool:
    row = np.array(bits, dtype=np.int64)
    return np.array_equal(row @ M.matrix % 2, row % 2)


def period_stabilizer(genus: int, bits: Sequence[int]) -> List[SpF2Element]:
    return [M for M in sp_group(genus) if fixes_period(M, bits)]


def class_stabilizer(A: ArnoldMap) -> List[SpF2Element]:
    target = arnold_class(A)
    return [M for M in sp_group(A.genus) if arnold_class(compose_inverse(A, M)) == target]


def stab_order_period(genus: int) -> int:
    """Order of the stabilizer of a nonzero F2 period in Sp(2g, F2)."""
    if genus < 2:
        raise PreconditionError(f"stabilizer count needs genus at least 2, got {genus}")
    order = 2 ** (2 * genus - 1)
    for k in range(1, genus):
        order *= (2 ** (2 * k) - 1) * 2 ** (2 * k - 1)
    return order


def sample_sp_stabilizer(
    bits: Sequence[int], rng: random.Random, trials: int = 200, word_length: int = 12
) -> Iterator[SpF2Element]:
    """Random words in the transvections T_c with p(c) = 0; each fixes the period."""
    n = len(bits)
    allowed = [c for c in _nonzero_vectors(n) if sum(x * y for x, y in zip(bits, c)) % 2 == 0]
    gens = [transvection(c) for c in allowed]
    genus = n // 2
    for _ in range(trials):
        M = SpF2Element.identity(genus)
        for _ in range(rng.randint(1, word_length)):
            M = M @ rng.choice(gens)
        yield M


@dataclass(frozen=True)
class OrbitReport:
    count: int
    representatives: Tuple[ArnoldMap, ...]
    period: Tuple[int, ...]
    stabilizer_order: int
    sampled: bool = False


def sp_orbit_arnold(
    A: ArnoldMap, sampling: bool = False, rng: Optional[random.Random] = None, trials: int = 200
) -> OrbitReport:
    """Distinct classes of A o M^-1 over the stabilizer M of the period of A."""
    bits = period_bits(period_of_arnold(A))
    if A.genus == 2:
        stabilizer: Sequence[SpF2Element] = period_stabilizer(2, bits)
        order = len(stabilizer)
    elif A.genus == 3 and sampling:
        stabilizer = list(sample_sp_stabilizer(bits, rng or random.Random(0), trials))
        order = stab_order_period(3)
    else:
        raise UnsupportedGenusError(
            f"orbit scan supports genus 2, or genus 3 with sampling; got genus {A.genus}"
        )
    classes: Dict[ArnoldClass, ArnoldMap] = {arnold_class(A): A}
    for M in stabilizer:
        B = compose_inverse(A, M)
        classes.setdefault(arnold_class(B), B)
    reps = tuple(classes[k] for k in sorted(classes, key=lambda c: c.key))
    log.info(f"{len(classes)} Arnold classes over a period stabilizer of order {order}")
    return OrbitReport(len(classes), reps, bits, order, sampled=A.genus != 2)


def enumerate_valid_arnold_maps(genus: int, limit: int = 100) -> List[ArnoldMap]:
    """Valid maps whose columns are even subsets, in lexicographic order of column masks."""
    size = 2 * genus + 2
    evens = sorted({MEElement(m, size).mask for m in range(1, 1 << size)} - {0})
    evens = [m for m in evens if MEElement(m, size).is_even()]
    out: List[ArnoldMap] = []
    for cols in itertools.permutations(evens, 2 * genus):
        A = ArnoldMap(genus, tuple(MEElement(m, size) for m in cols))
        if is_valid_arnold(A):
            out.append(A)
            if len(out) >= limit:
                break
    return out
