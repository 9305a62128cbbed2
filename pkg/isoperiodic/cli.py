# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Command-line front end.

Every command reads JSON documents named by the config, prints one JSON payload
carrying a versioned "schema" field, and exits 0, or exits with the code of the
IsoperiodicError that stopped it.
"""
from dataclasses import dataclass, field
import json
import logging
import math
from pathlib import Path
import pkgutil
import random
import sys
from textwrap import dedent
from typing import Callable, Dict, List, Optional

from jinja2 import Environment, PackageLoader  # type: ignore

import hydra
from omegaconf import OmegaConf

from isoperiodic import serialization as ser
from isoperiodic.admissible import (
    find_admissible_decomposition,
    is_admissible_decomposition,
    is_admissible_element,
    non_admissible_locus,
    rank2_envelope,
)
from isoperiodic.arnoldf2 import enumerate_valid_arnold_maps, sp_orbit_arnold
from isoperiodic.config import Command, Config, ReportFormat
from isoperiodic.decompgraph import (
    BoundedGraph,
    SearchLimits,
    certificate_endpoints,
    connect,
    enumerate_bounded,
    verify_certificate,
)
from isoperiodic.errors import (
    InputError,
    IsoperiodicError,
    ResourceCapError,
    VerificationError,
)
from isoperiodic.flatsurf.cylinders import degenerate_real, random_cylinder_graph
from isoperiodic.flatsurf.genus2 import genus2_odd_branch_point
from isoperiodic.flatsurf.surface import validate_surface
from isoperiodic.haupt import enumerate_lifts, haupt_check
from isoperiodic.periods import PeriodHom, degree, reduce_half

log = logging.getLogger(__name__)

jinja_env = Environment(
    loader=PackageLoader("isoperiodic", "templates"),
    keep_trailing_newline=True,
    trim_blocks=True,
)
jinja_env.filters["compact"] = lambda doc: json.dumps(doc, sort_keys=True)

Payload = Dict[str, ser.Json]


@dataclass
class CommandResult:
    exit_code: int = 0
    payload: Optional[Payload] = None
    diagnostics: List[str] = field(default_factory=list)


def init_config(conf_dir: str) -> None:
    log.info(f"Initializing config in '{conf_dir}'")

    path = Path(hydra.utils.to_absolute_path(conf_dir))
    path.mkdir(parents=True, exist_ok=True)
    file = path / "isoperiodic.yaml"
    if file.exists():
        sys.stderr.write(f"Config file '{file}' already exists\n")
        sys.exit(1)

    sample_config = pkgutil.get_data(__name__, "templates/sample_config.yaml")
    assert sample_config is not None
    file.write_bytes(sample_config)


def parse_command(name: str) -> Command:
    for command in Command:
        if name in (command.name, command.value):
            return command
    raise InputError(f"unknown command {name!r}; one of {[c.value for c in Command]}")


def _path(cfg: Config, key: str) -> Path:
    value = getattr(cfg, key)
    if value is None:
        raise InputError(f"command {cfg.command} needs {key}=FILE")
    return Path(hydra.utils.to_absolute_path(value))


def _load(cfg: Config, key: str) -> ser.Json:
    return ser.load_document(_path(cfg, key))


def _period(cfg: Config) -> PeriodHom:
    return ser.decode_period(_load(cfg, "period"))


def _limits(cfg: Config) -> SearchLimits:
    return SearchLimits(cfg.search.radius, cfg.search.radius_limit, cfg.search.candidate_cap)


def _encode_degree(d: float) -> ser.Json:
    return "infinity" if d == math.inf else int(d)


def run_degree(cfg: Config) -> Payload:
    p = _period(cfg)
    return {
        "degree": _encode_degree(degree(p)),
        "reduced_half_is_zero": reduce_half(p).is_zero(),
    }


def run_admissible(cfg: Config) -> Payload:
    """Test a vector, a decomposition, or report the non-admissible locus of the period."""
    p = _period(cfg)
    rank = p.lattice.rank
    payload: Payload = {"locus": ser.encode_submodule(non_admissible_locus(p))}
    if cfg.vector is not None:
        v = ser.decode_vector(_load(cfg, "vector"), rank)
        payload["vector"] = ser.encode_vector(v)
        payload["admissible"] = is_admissible_element(p, v)
        if payload["admissible"]:
            payload["envelope"] = ser.encode_decomposition(rank2_envelope(p, v))
    elif cfg.source is not None:
        D = ser.decode_decomposition(_load(cfg, "source"), rank)
        payload["decomposition"] = ser.encode_decomposition(D)
        payload["admissible"] = is_admissible_decomposition(p, D)
    return payload


def run_decompose(cfg: Config) -> Payload:
    p = _period(cfg)
    D = find_admissible_decomposition(p, cfg.want_degree3, cfg.search.radius)
    return ser.encode_decomposition(D)


def run_connect(cfg: Config) -> Payload:
    p = _period(cfg)
    rank = p.lattice.rank
    D1 = ser.decode_decomposition(_load(cfg, "source"), rank)
    D2 = ser.decode_decomposition(_load(cfg, "target"), rank)
    cert = connect(p, D1, D2, _limits(cfg))
    return ser.encode_certificate(p, cert)


def run_verify_cert(cfg: Config) -> Payload:
    doc = _load(cfg, "cert")
    if not isinstance(doc, dict) or "period" not in doc:
        raise InputError("certificate document has no period")
    p = ser.decode_period(doc["period"])
    if cfg.period is not None and _period(cfg) != p:
        raise InputError("certificate was issued for a different period")
    cert = ser.decode_certificate(doc)
    if not verify_certificate(p, cert):
        raise VerificationError("certificate does not verify")
    start, end = certificate_endpoints(cert)
    return {
        "valid": True,
        "edges": cert.length,
        "from": ser.encode_vertex(start),
        "to": ser.encode_vertex(end),
    }


def run_graph_enum(cfg: Config) -> Payload:
    return ser.encode_bounded_graph(enumerate_bounded(_period(cfg), cfg.bound, _limits(cfg)))


def run_haupt(cfg: Config) -> Payload:
    """One lift if lift=FILE is given, otherwise a census of the lifts of the period."""
    if cfg.lift is not None:
        P = ser.decode_lift(_load(cfg, "lift"))
        return {"lift": ser.encode_lift(P), "verdict": ser.encode_verdict(haupt_check(P))}
    p = _period(cfg)
    lifts = enumerate_lifts(p, cfg.bound)
    by_verdict: Dict[str, int] = {}
    for _, verdict in lifts:
        name = type(verdict).__name__
        by_verdict[name] = by_verdict.get(name, 0) + 1
    realizable = [lift for lift, verdict in lifts if verdict.realizable]
    return {
        "bound": cfg.bound,
        "lifts": len(lifts),
        "realizable": len(realizable),
        "verdicts": by_verdict,
        "first_realizable": ser.encode_lift(realizable[0]) if realizable else None,
    }


def run_arnold_orbit(cfg: Config) -> Payload:
    if cfg.arnold is not None:
        A = ser.decode_arnold(_load(cfg, "arnold"))
    else:
        if cfg.genus is None:
            raise InputError("arnold-orbit needs arnold=FILE or genus=G")
        maps = enumerate_valid_arnold_maps(cfg.genus, limit=1)
        if not maps:
            raise InputError(f"no valid Arnold map in genus {cfg.genus}")
        A = maps[0]
    rng = random.Random(cfg.seed)
    report = sp_orbit_arnold(A, sampling=A.genus == 3, rng=rng, trials=cfg.trials)
    return {"map": ser.encode_arnold(A), **ser.encode_orbit_report(report)}


def run_genus2_branch(cfg: Config) -> Payload:
    return ser.encode_branch_point(genus2_odd_branch_point(_period(cfg)))


def run_cyl_degenerate(cfg: Config) -> Payload:
    if cfg.graph is not None:
        G = ser.decode_cylinder_graph(_load(cfg, "graph"))
    else:
        if cfg.genus is None:
            raise InputError("cyl-degenerate needs graph=FILE or genus=G")
        G = random_cylinder_graph(cfg.genus, random.Random(cfg.seed))
    return {"graph": ser.encode_cylinder_graph(G), **ser.encode_degeneration(degenerate_real(G))}


def run_validate_surface(cfg: Config) -> Payload:
    return ser.encode_surface_report(validate_surface(ser.decode_surface(_load(cfg, "surface"))))


COMMANDS: Dict[Command, Callable[[Config], Payload]] = {
    Command.degree: run_degree,
    Command.admissible: run_admissible,
    Command.decompose: run_decompose,
    Command.connect: run_connect,
    Command.verify_cert: run_verify_cert,
    Command.graph_enum: run_graph_enum,
    Command.haupt: run_haupt,
    Command.arnold_orbit: run_arnold_orbit,
    Command.genus2_branch: run_genus2_branch,
    Command.cyl_degenerate: run_cyl_degenerate,
    Command.validate_surface: run_validate_surface,
}


def _check_output(cfg: Config) -> Optional[Path]:
    if cfg.out is None:
        return None
    out = Path(hydra.utils.to_absolute_path(cfg.out)).resolve()
    for key in ("period", "vector", "source", "target", "cert", "lift", "arnold", "graph"):
        value = getattr(cfg, key)
        if value is not None and Path(hydra.utils.to_absolute_path(value)).resolve() == out:
            raise InputError(f"out={cfg.out} would overwrite the {key} input")
    return out


def execute(cfg: Config) -> CommandResult:
    """Run one command; failures become a non-zero exit code and a diagnostic."""
    try:
        command = parse_command(cfg.command)
        out = _check_output(cfg)
        payload = {"schema": f"isoperiodic/{command.value}/v1", **COMMANDS[command](cfg)}
    except ResourceCapError as err:
        log.error(f"{cfg.command}: {err}")
        result = CommandResult(err.exit_code, diagnostics=[str(err)])
        if isinstance(err.partial, BoundedGraph):
            partial = ser.encode_bounded_graph(err.partial)
            result.payload = {"schema": "isoperiodic/graph-enum/v1", **partial}
        return result
    except IsoperiodicError as err:
        log.error(f"{cfg.command}: {err}")
        return CommandResult(err.exit_code, diagnostics=[str(err)])
    if out is not None:
        ser.write_document(out, payload)
        log.info(f"{command.value} -> {out}")
    return CommandResult(0, payload)


def render(payload: Payload, report: ReportFormat) -> str:
    if report == ReportFormat.TEXT:
        return jinja_env.get_template("report.j2").render(payload=payload)
    return ser.dumps(payload)


@hydra.main(config_path=None, config_name="isoperiodic_schema", version_base=None)
def main(cfg: Config) -> None:
    if cfg.init_config_dir is not None:
        init_config(cfg.init_config_dir)
        return

    if OmegaConf.is_missing(cfg, "command"):  # type: ignore
        log.error(
            dedent(
                """\
                Choose a command, e.g:
                \tisoperiodic command=degree period=period.json
                Commands: degree, admissible, decompose, connect, verify-cert, graph-enum,
                haupt, arnold-orbit, genus2-branch, cyl-degenerate, validate-surface.
                Use init_config_dir=DIR to create an initial config dir.
                """
            )
        )
        sys.exit(1)

    result = execute(cfg)
    for line in result.diagnostics:
        sys.stderr.write(f"{line}\n")
    if result.payload is not None:
        end = "" if cfg.report == ReportFormat.TEXT else "\n"
        print(render(result.payload, cfg.report), end=end)
    if result.exit_code:
        sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
