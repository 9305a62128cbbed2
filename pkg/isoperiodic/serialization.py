# Copyright (c) the isoperiodic authors. All Rights Reserved
"""JSON documents for every object that crosses the command line.

Integers and rationals are written as decimal strings ("3", "-2/5") so that
documents are exact; decoders also accept plain JSON numbers for integers.
`dumps` is canonical: sorted keys, two-space indent.
"""
from fractions import Fraction
import functools
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence, TypeVar, Union

from isoperiodic.admissible import Decomposition
from isoperiodic.arnoldf2 import ArnoldMap, MEElement, OrbitReport, point_labels
from isoperiodic.decompgraph import BoundedGraph, Certificate, EdgeWitness, Vertex
from isoperiodic.errors import InputError
from isoperiodic.exact import ExactComplex, Surd
from isoperiodic.flatsurf.cylinders import CylinderGraph, Degeneration
from isoperiodic.flatsurf.genus2 import BranchPoint
from isoperiodic.flatsurf.surface import (
    MarkedCycle,
    PoleMarker,
    Rectangle,
    RectSurface,
    Seam,
    SurfaceReport,
    VerticalGluing,
)
from isoperiodic.haupt import HauptVerdict, NotRealizable, RealizableLattice
from isoperiodic.periods import AbelianValue, PeriodHom, PeriodLift, ValueGroup
from isoperiodic.symplattice import LatticeVector, Submodule, SymplecticLattice, saturate
from isoperiodic.utils import hermite_form

log = logging.getLogger(__name__)

Json = Any
T = TypeVar("T")


def decoder(fn: Callable[..., T]) -> Callable[..., T]:
    """Report malformed documents as InputError."""

    @functools.wraps(fn)
    def wrapped(*args: Any, **kwargs: Any) -> T:
        try:
            return fn(*args, **kwargs)
        except (KeyError, IndexError, TypeError, ValueError, ZeroDivisionError) as err:
            what = fn.__name__[len("decode_") :]
            raise InputError(f"malformed {what} document: {err!r}") from err

    return wrapped


def dumps(doc: Json) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def load_document(path: Union[str, Path]) -> Json:
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}")
    except json.JSONDecodeError as err:
        raise InputError(f"{path} is not valid JSON: {err}")


def write_document(path: Union[str, Path], doc: Json) -> None:
    Path(path).write_text(dumps(doc) + "\n")
    log.debug(f"wrote {path}")


def encode_rational(q: Union[int, Fraction]) -> str:
    return str(Fraction(q))


def decode_rational(data: Json) -> Fraction:
    if isinstance(data, bool) or not isinstance(data, (str, int)):
        raise InputError(f"expected a rational as a string or integer, got {data!r}")
    return Fraction(data)


def _integer(data: Json) -> int:
    q = decode_rational(data)
    if q.denominator != 1:
        raise InputError(f"expected an integer, got {data!r}")
    return int(q)


def encode_surd(x: Surd) -> Json:
    return {"rat": encode_rational(x.rat), "sqrt2": encode_rational(x.sqrt2)}


@decoder
def decode_surd(data: Json) -> Surd:
    if isinstance(data, dict):
        return Surd(decode_rational(data.get("rat", "0")), decode_rational(data.get("sqrt2", "0")))
    return Surd(decode_rational(data))


def encode_complex(z: ExactComplex) -> Json:
    return {"re": encode_surd(z.re), "im": encode_surd(z.im)}


@decoder
def decode_complex(data: Json) -> ExactComplex:
    if isinstance(data, dict):
        return ExactComplex(decode_surd(data.get("re", "0")), decode_surd(data.get("im", "0")))
    return ExactComplex(decode_surd(data))


def encode_vector(v: Sequence[int]) -> List[str]:
    return [str(int(x)) for x in v]


@decoder
def decode_vector(data: Json, rank: int) -> LatticeVector:
    if not isinstance(data, list):
        raise InputError(f"expected a list of integers, got {data!r}")
    return SymplecticLattice(rank // 2).check([_integer(x) for x in data])


def encode_submodule(S: Submodule) -> Json:
    return {"rank": S.rank, "basis": [encode_vector(r) for r in S.basis]}


@decoder
def decode_submodule(data: Json, rank: int) -> Submodule:
    """Any basis of a saturated submodule; it is stored in Hermite form."""
    rows = [decode_vector(r, rank) for r in data["basis"]]
    S = saturate(rows, rank)
    if [tuple(r) for r in hermite_form(rows)] != list(S.basis):
        raise InputError(f"rows {[list(r) for r in rows]} do not span a saturated submodule")
    if "rank" in data and _integer(data["rank"]) != S.rank:
        raise InputError(f"submodule declares rank {data['rank']} but has rank {S.rank}")
    return S


def encode_value(v: AbelianValue) -> Json:
    return {"group": v.group.tag(), "re": encode_rational(v.re), "im": encode_surd(v.im)}


@decoder
def decode_value(data: Json, group: ValueGroup) -> AbelianValue:
    """`{"re": .., "im": ..}`, or a bare rational for a real value."""
    if isinstance(data, dict):
        if "group" in data and ValueGroup.from_tag(data["group"]) != group:
            raise InputError(f"value in {data['group']} inside a {group.tag()} period")
        re, im = data.get("re", "0"), data.get("im", "0")
        return AbelianValue(group, decode_rational(re), decode_surd(im))
    return AbelianValue(group, decode_rational(data))


def encode_period(p: PeriodHom) -> Json:
    return {
        "genus": p.lattice.genus,
        "group": p.group.tag(),
        "values": [encode_value(v) for v in p.values],
    }


@decoder
def decode_period(data: Json) -> PeriodHom:
    """Values are a list in the order a1, b1, a2, ... or a mapping from those labels."""
    lattice = SymplecticLattice(_integer(data["genus"]))
    group = ValueGroup.from_tag(data.get("group", "CModZ"))
    raw = data["values"]
    if isinstance(raw, dict):
        unknown = set(raw) - set(lattice.labels())
        if unknown:
            raise InputError(f"unknown basis labels {sorted(unknown)}")
        raw = [raw.get(label, "0") for label in lattice.labels()]
    return PeriodHom(lattice, group, tuple(decode_value(v, group) for v in raw))


def encode_decomposition(D: Decomposition) -> Json:
    return {"factors": [encode_submodule(F) for F in D.factors]}


@decoder
def decode_decomposition(data: Json, rank: int) -> Decomposition:
    factors = data["factors"] if isinstance(data, dict) else data
    return Decomposition(tuple(decode_submodule(F, rank) for F in factors))


def encode_vertex(v: Vertex) -> Json:
    return {"factors": [encode_submodule(F) for F in v.factors]}


@decoder
def decode_vertex(data: Json, rank: int) -> Vertex:
    first, second = (decode_submodule(F, rank) for F in data["factors"])
    return Vertex.of(first, second)


def encode_witness(w: EdgeWitness) -> Json:
    return {
        "refinement": encode_decomposition(w.refinement),
        "left": w.left_index,
        "right": w.right_index,
    }


@decoder
def decode_witness(data: Json, rank: int) -> EdgeWitness:
    return EdgeWitness(
        decode_decomposition(data["refinement"], rank),
        _integer(data["left"]),
        _integer(data["right"]),
    )


def encode_certificate(p: PeriodHom, c: Certificate) -> Json:
    return {
        "period": encode_period(p),
        "vertices": [encode_vertex(v) for v in c.vertices],
        "witnesses": [encode_witness(w) for w in c.witnesses],
    }


@decoder
def decode_certificate(data: Json) -> Certificate:
    rank = decode_period(data["period"]).lattice.rank
    return Certificate(
        tuple(decode_vertex(v, rank) for v in data["vertices"]),
        tuple(decode_witness(w, rank) for w in data["witnesses"]),
    )


def encode_bounded_graph(G: BoundedGraph) -> Json:
    return {
        "complete": G.complete,
        "vertices": [encode_vertex(v) for v in G.vertices],
        "edges": [
            {"source": i, "target": j, "witness": encode_witness(w)} for i, j, w in G.edges
        ],
    }


def encode_lift(P: PeriodLift) -> Json:
    return {"genus": P.lattice.genus, "values": [encode_complex(z) for z in P.values]}


@decoder
def decode_lift(data: Json) -> PeriodLift:
    lattice = SymplecticLattice(_integer(data["genus"]))
    return PeriodLift(lattice, tuple(decode_complex(z) for z in data["values"]))


def encode_verdict(verdict: HauptVerdict) -> Json:
    doc: Dict[str, Json] = {
        "verdict": type(verdict).__name__,
        "realizable": verdict.realizable,
        "volume": encode_surd(verdict.volume),
    }
    if isinstance(verdict, NotRealizable):
        doc["reason"] = verdict.reason.value
    if isinstance(verdict, RealizableLattice):
        doc["covolume"] = encode_surd(verdict.covolume)
        doc["basis"] = [encode_complex(z) for z in verdict.basis]
    return doc


def encode_arnold(A: ArnoldMap) -> Json:
    return {"g": A.genus, "E0": point_labels(A.genus), "columns": [c.labels() for c in A.columns]}


@decoder
def decode_arnold(data: Json) -> ArnoldMap:
    genus = _integer(data.get("g", data.get("genus")))
    if "E0" in data and list(data["E0"]) != point_labels(genus):
        raise InputError(f"point labels must be {point_labels(genus)}")
    return ArnoldMap(genus, tuple(MEElement.from_labels(c, genus) for c in data["columns"]))


def encode_orbit_report(report: OrbitReport) -> Json:
    return {
        "count": report.count,
        "period": list(report.period),
        "stabilizer_order": report.stabilizer_order,
        "sampled": report.sampled,
        "representatives": [encode_arnold(A) for A in report.representatives],
    }


def encode_surface(S: RectSurface) -> Json:
    gluings: List[Json] = [
        {"from": {"rect": g.left, "side": "right"}, "to": {"rect": g.right, "side": "left"}}
        for g in S.gluings
    ]
    gluings += [
        {
            "from": {"rects": list(s.lower), "side": "top"},
            "to": {"rects": list(s.upper), "side": "bottom"},
            "offset": encode_rational(s.offset),
        }
        for s in S.seams
    ]
    return {
        "rectangles": [
            {"w": encode_rational(R.width), "h": encode_rational(R.height)} for R in S.rectangles
        ],
        "gluings": gluings,
        "poles": [
            {
                "rects": list(p.rects),
                "side": p.side,
                "circumference": encode_rational(S.width_of(p.rects)),
                "residue": p.residue,
            }
            for p in S.poles
        ],
    }


@decoder
def decode_surface(data: Json) -> RectSurface:
    rects = tuple(
        Rectangle(decode_rational(r["w"]), decode_rational(r["h"])) for r in data["rectangles"]
    )
    vertical: List[VerticalGluing] = []
    seams: List[Seam] = []
    for g in data.get("gluings", []):
        sides = (g["from"]["side"], g["to"]["side"])
        if sides == ("right", "left"):
            vertical.append(VerticalGluing(_integer(g["from"]["rect"]), _integer(g["to"]["rect"])))
        elif sides == ("top", "bottom"):
            seams.append(
                Seam(
                    tuple(_integer(k) for k in g["from"]["rects"]),
                    tuple(_integer(k) for k in g["to"]["rects"]),
                    decode_rational(g.get("offset", "0")),
                )
            )
        else:
            raise InputError(f"gluing from {sides[0]} to {sides[1]} is not a translation")
    poles = []
    for p in data.get("poles", []):
        pole = PoleMarker(tuple(_integer(k) for k in p["rects"]), p["side"], _integer(p["residue"]))
        poles.append(pole)
        if "circumference" in p:
            width = sum((rects[k].width for k in pole.rects), Fraction(0))
            if decode_rational(p["circumference"]) != width:
                raise InputError(f"pole circumference {p['circumference']} differs from {width}")
    return RectSurface(rects, tuple(vertical), tuple(seams), tuple(poles))


def encode_cycle(gamma: MarkedCycle) -> Json:
    return {
        "label": gamma.label,
        "chain": [{"edge": e, "coeff": c} for e, c in gamma.chain],
    }


def encode_surface_report(report: SurfaceReport) -> Json:
    return {
        "genus": report.genus,
        "zero_orders": list(report.zero_orders),
        "poles": [{"residue": r, "circumference": encode_rational(c)} for r, c in report.poles],
        "cells": {"vertices": report.vertices, "edges": report.edges, "faces": report.faces},
    }


def encode_branch_point(point: BranchPoint) -> Json:
    return {
        "surface": encode_surface(point.surface),
        "involution": list(point.involution.rect_map),
        "basis": [encode_vector(v) for v in point.claim.basis.vectors],
        "circumferences": [encode_rational(P) for P in point.claim.circumferences],
        "flipped": point.claim.flipped,
        "marking": [encode_cycle(c) for c in point.marking],
        "twists": [encode_rational(t) for t in point.thetas],
    }


def encode_cylinder_graph(G: CylinderGraph) -> Json:
    return {
        "levels": [encode_rational(x) for x in G.levels],
        "edges": [[a, b] for a, b in G.edges],
        "bottom": G.bottom,
        "top": G.top,
    }


@decoder
def decode_cylinder_graph(data: Json) -> CylinderGraph:
    return CylinderGraph(
        tuple(decode_rational(x) for x in data["levels"]),
        tuple((_integer(a), _integer(b)) for a, b in data["edges"]),
        _integer(data["bottom"]),
        _integer(data["top"]),
    )


def encode_degeneration(result: Degeneration) -> Json:
    return {
        "moves": [{"vertex": v, "edge": e} for v, e in result.moves],
        "level": encode_rational(result.level),
        "final": encode_cylinder_graph(result.final),
    }
