# Copyright (c) the isoperiodic authors. All Rights Reserved
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from hydra.core.config_store import ConfigStore
from omegaconf import MISSING


class Command(Enum):
    degree = "degree"
    admissible = "admissible"
    decompose = "decompose"
    connect = "connect"
    verify_cert = "verify-cert"
    graph_enum = "graph-enum"
    haupt = "haupt"
    arnold_orbit = "arnold-orbit"
    genus2_branch = "genus2-branch"
    cyl_degenerate = "cyl-degenerate"
    validate_surface = "validate-surface"


class ReportFormat(Enum):
    JSON = "json"
    TEXT = "text"


@dataclass
class SearchConf:
    # first and last radius of the small-vector searches in the case machine
    radius: int = 2
    radius_limit: int = 4
    # graph-enum gives up after this many candidate factors
    candidate_cap: int = 200_000


@dataclass
class Config:
    init_config_dir: Optional[str] = None

    # member name or value of Command: `verify_cert` and `verify-cert` both work
    command: str = MISSING

    # input documents
    period: Optional[str] = None
    vector: Optional[str] = None
    source: Optional[str] = None
    target: Optional[str] = None
    cert: Optional[str] = None
    lift: Optional[str] = None
    arnold: Optional[str] = None
    graph: Optional[str] = None
    surface: Optional[str] = None

    # optional second copy of the payload
    out: Optional[str] = None

    genus: Optional[int] = None
    bound: int = 1
    trials: int = 200
    seed: int = 0
    want_degree3: bool = False

    report: ReportFormat = ReportFormat.JSON
    search: SearchConf = field(default_factory=SearchConf)


config_store = ConfigStore.instance()
config_store.store(name="isoperiodic_schema", node=Config)
