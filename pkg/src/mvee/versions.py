"""Per-method history of compiled versions.

Every monitored method accumulates version nodes: the initial build, one per
source modification, and one per detected anomaly. Anomalies fork the path;
a source modification merges all open paths into the single new version; a
build whose assembly matches an older open version reverts to it. The set of
open branch tips is exactly the set of versions whose results stay relevant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .equivalence import compare_regions
from .regions import MarkedRegion, region_from_dict, region_to_dict


class GraphError(Exception):
    pass


class UnknownMethod(GraphError):
    def __init__(self, method: str):
        super().__init__(f"method {method!r} is not configured")
        self.method = method


class PersistError(Exception):
    pass


GRAPH_SCHEMA = 1


@dataclass(frozen=True, order=True)
class VersionId:
    method: str
    ordinal: int

    @property
    def label(self) -> str:
        return f"{self.method}.V{self.ordinal}"


class Origin(Enum):
    INITIAL = "initial"
    SOURCE_MODIFICATION = "source_modification"
    ANOMALY_FORK = "anomaly_fork"


@dataclass
class VersionNode:
    id: VersionId
    created_build: str
    region_snapshot: MarkedRegion
    origin: Origin


class OutcomeKind(Enum):
    INITIAL = "initial"
    UNCHANGED = "unchanged"
    MODIFIED = "modified"
    FORK = "fork"
    REVERTED = "reverted"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    version: int  # ordinal of the version this build maps to
    from_version: int | None = None  # fork origin

    def describe(self, method: str) -> str:
        label = f"{method}.V{self.version}"
        if self.kind is OutcomeKind.FORK:
            return f"fork {label} from {method}.V{self.from_version}"
        return f"{self.kind.value} {label}"


@dataclass
class MethodHistory:
    nodes: list[VersionNode] = field(default_factory=list)
    steps: list[tuple[str, Outcome]] = field(default_factory=list)  # (build_id, outcome)
    # open branch ordinals, most recently referenced first
    open_branches: list[int] = field(default_factory=list)


@dataclass
class VersionGraph:
    methods: dict[str, MethodHistory] = field(default_factory=dict)

    @classmethod
    def for_methods(cls, methods: list[str]) -> VersionGraph:
        return cls(methods={m: MethodHistory() for m in methods})

    def history(self, method: str) -> MethodHistory:
        if method not in self.methods:
            raise UnknownMethod(method)
        return self.methods[method]

    def node(self, method: str, ordinal: int) -> VersionNode:
        return self.history(method).nodes[ordinal]

    def last_step_outcomes(self) -> dict[str, Outcome]:
        out = {}
        for method, hist in self.methods.items():
            if hist.steps:
                out[method] = hist.steps[-1][1]
        return out


@dataclass(frozen=True)
class BuildInput:
    source_modified: bool
    region: MarkedRegion


def record_build(
    graph: VersionGraph, build_id: str, inputs: dict[str, BuildInput]
) -> dict[str, Outcome]:
    """Advance every configured method by one build step.

    Modified source always creates a new version and closes all open branches.
    Unmodified methods are matched against the open branch snapshots, most
    recently referenced first: the last referenced tip means unchanged, an
    older open version means reverted, no match means an anomaly fork.
    """
    for method in inputs:
        if method not in graph.methods:
            raise UnknownMethod(method)
    missing = [m for m in graph.methods if m not in inputs]
    if missing:
        raise GraphError(f"no region supplied for methods: {', '.join(missing)}")

    outcomes: dict[str, Outcome] = {}
    for method, hist in graph.methods.items():
        inp = inputs[method]
        if not hist.nodes:
            outcome = _new_version(hist, method, build_id, inp.region, Origin.INITIAL)
        elif inp.source_modified:
            outcome = _new_version(
                hist, method, build_id, inp.region, Origin.SOURCE_MODIFICATION
            )
        else:
            outcome = _match_open_branches(hist, method, build_id, inp.region)
        hist.steps.append((build_id, outcome))
        outcomes[method] = outcome
    return outcomes


def _new_version(
    hist: MethodHistory, method: str, build_id: str, region: MarkedRegion, origin: Origin
) -> Outcome:
    ordinal = len(hist.nodes)
    hist.nodes.append(VersionNode(VersionId(method, ordinal), build_id, region, origin))
    hist.open_branches = [ordinal]
    if origin is Origin.INITIAL:
        return Outcome(OutcomeKind.INITIAL, ordinal)
    return Outcome(OutcomeKind.MODIFIED, ordinal)


def _match_open_branches(
    hist: MethodHistory, method: str, build_id: str, region: MarkedRegion
) -> Outcome:
    for pos, ordinal in enumerate(hist.open_branches):
        snapshot = hist.nodes[ordinal].region_snapshot
        if compare_regions(snapshot, region).equivalent:
            hist.open_branches.remove(ordinal)
            hist.open_branches.insert(0, ordinal)
            kind = OutcomeKind.UNCHANGED if pos == 0 else OutcomeKind.REVERTED
            return Outcome(kind, ordinal)
    from_ordinal = hist.open_branches[0]
    ordinal = len(hist.nodes)
    hist.nodes.append(
        VersionNode(VersionId(method, ordinal), build_id, region, Origin.ANOMALY_FORK)
    )
    hist.open_branches.insert(0, ordinal)
    return Outcome(OutcomeKind.FORK, ordinal, from_version=from_ordinal)


def relevant_versions(graph: VersionGraph, method: str) -> set[VersionId]:
    """The tip of every open path: the versions a complete report must include."""
    hist = graph.history(method)
    return {VersionId(method, o) for o in hist.open_branches}


# ---------------------------------------------------------------------------
# Persistence


def _outcome_to_dict(outcome: Outcome) -> dict:
    d = {"kind": outcome.kind.value, "version": outcome.version}
    if outcome.from_version is not None:
        d["from"] = outcome.from_version
    return d


def _outcome_from_dict(d: dict) -> Outcome:
    return Outcome(OutcomeKind(d["kind"]), d["version"], d.get("from"))


def graph_to_dict(graph: VersionGraph, include_snapshots: bool = True) -> dict:
    methods = {}
    for method, hist in graph.methods.items():
        nodes = []
        for node in hist.nodes:
            entry = {
                "ordinal": node.id.ordinal,
                "label": node.id.label,
                "createdBuild": node.created_build,
                "origin": node.origin.value,
            }
            if include_snapshots:
                entry["regionSnapshot"] = region_to_dict(node.region_snapshot)
            nodes.append(entry)
        methods[method] = {
            "nodes": nodes,
            "steps": [
                {"build": build_id, "outcome": _outcome_to_dict(outcome)}
                for build_id, outcome in hist.steps
            ],
            "openBranches": list(hist.open_branches),
        }
    return {"schema": GRAPH_SCHEMA, "methods": methods}


def graph_from_dict(data: dict) -> VersionGraph:
    if not isinstance(data, dict) or data.get("schema") != GRAPH_SCHEMA:
        raise PersistError(f"unsupported version graph schema: {data.get('schema')!r}"
                           if isinstance(data, dict) else "version graph is not an object")
    graph = VersionGraph()
    try:
        for method, entry in data["methods"].items():
            hist = MethodHistory()
            for n in entry["nodes"]:
                hist.nodes.append(VersionNode(
                    id=VersionId(method, n["ordinal"]),
                    created_build=n["createdBuild"],
                    region_snapshot=region_from_dict(n["regionSnapshot"]),
                    origin=Origin(n["origin"]),
                ))
            hist.steps = [
                (s["build"], _outcome_from_dict(s["outcome"])) for s in entry["steps"]
            ]
            hist.open_branches = list(entry["openBranches"])
            graph.methods[method] = hist
    except (KeyError, TypeError, ValueError) as e:
        raise PersistError(f"malformed version graph document: {e}") from e
    return graph


def serialize_graph(graph: VersionGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=2) + "\n"


def load_graph(text: str) -> VersionGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PersistError(f"version graph file is not valid JSON: {e}") from e
    return graph_from_dict(data)
