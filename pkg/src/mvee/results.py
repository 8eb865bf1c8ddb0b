"""Experimental result storage keyed by (method, version, params, metric).

Results bind to the compiled version their build produced. Re-measuring an
unchanged or reverted version replaces the stored value; forks and source
modifications write under their new version, so older versions keep theirs.
Report extraction walks only the currently relevant versions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .versions import Outcome, VersionGraph, relevant_versions


class IngestError(Exception):
    pass


class SchemaIngestError(IngestError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class UnknownMethodResult(IngestError):
    def __init__(self, method: str):
        super().__init__(f"result entry names unconfigured method {method!r}")
        self.method = method


class ReportError(Exception):
    pass


class EmptySelection(ReportError):
    def __init__(self, metric: str, param: str):
        super().__init__(f"no relevant version has data for metric {metric!r} over {param!r}")


@dataclass(frozen=True)
class ResultRecord:
    method: str
    version: int  # ordinal
    build_id: str
    params: tuple[tuple[str, object], ...]  # sorted key/value pairs
    metric: str
    value: float
    unit: str

    @property
    def key(self):
        return (self.method, self.version, self.params, self.metric)

    def param(self, name: str):
        for k, v in self.params:
            if k == name:
                return v
        return None


def _canonical_params(params: dict) -> tuple[tuple[str, object], ...]:
    return tuple(sorted(params.items()))


class ResultStore:
    def __init__(self):
        self._records: dict[tuple, ResultRecord] = {}

    def __len__(self):
        return len(self._records)

    def __eq__(self, other):
        return isinstance(other, ResultStore) and self._records == other._records

    def upsert(self, record: ResultRecord):
        self._records[record.key] = record

    def all_records(self) -> list[ResultRecord]:
        return sorted(
            self._records.values(),
            key=lambda r: (r.method, r.version, r.metric, json.dumps(r.params)),
        )

    def for_version(self, method: str, version: int, metric: str) -> list[ResultRecord]:
        return [
            r for r in self.all_records()
            if r.method == method and r.version == version and r.metric == metric
        ]

    def for_method(self, method: str, metric: str) -> list[ResultRecord]:
        return [r for r in self.all_records() if r.method == method and r.metric == metric]


# ---------------------------------------------------------------------------
# Ingest

_REQUIRED_FIELDS = ("section", "params", "metric", "value", "unit")


def parse_run_output(data: object) -> list[dict]:
    """Validate the benchmark's result file: a list of entries with a section
    id, a params object, a metric name, a finite numeric value and a unit."""
    if not isinstance(data, list):
        raise SchemaIngestError("$", "expected a top-level array of result entries")
    for i, entry in enumerate(data):
        path = f"$[{i}]"
        if not isinstance(entry, dict):
            raise SchemaIngestError(path, "entry must be an object")
        for fieldname in _REQUIRED_FIELDS:
            if fieldname not in entry:
                raise SchemaIngestError(path, f"missing field {fieldname!r}")
        if not isinstance(entry["section"], str):
            raise SchemaIngestError(path + ".section", "must be a string")
        if not isinstance(entry["params"], dict):
            raise SchemaIngestError(path + ".params", "must be an object")
        for k, v in entry["params"].items():
            if not isinstance(v, (str, int, float)) or isinstance(v, bool):
                raise SchemaIngestError(f"{path}.params.{k}", "must be a string or number")
        if not isinstance(entry["metric"], str):
            raise SchemaIngestError(path + ".metric", "must be a string")
        if (not isinstance(entry["value"], (int, float)) or isinstance(entry["value"], bool)
                or not math.isfinite(entry["value"])):
            raise SchemaIngestError(path + ".value", "must be a finite number")
        if not isinstance(entry["unit"], str):
            raise SchemaIngestError(path + ".unit", "must be a string")
    return data


def ingest_run(
    entries: list[dict],
    outcomes: dict[str, Outcome],
    store: ResultStore,
    build_id: str,
) -> int:
    """Bind each entry to the version its method's build outcome names."""
    parse_run_output(entries)
    for i, entry in enumerate(entries):
        method = entry["section"]
        if method not in outcomes:
            raise UnknownMethodResult(method)
    for entry in entries:
        outcome = outcomes[entry["section"]]
        store.upsert(ResultRecord(
            method=entry["section"],
            version=outcome.version,
            build_id=build_id,
            params=_canonical_params(entry["params"]),
            metric=entry["metric"],
            value=float(entry["value"]),
            unit=entry["unit"],
        ))
    return len(entries)


# ---------------------------------------------------------------------------
# Report extraction


@dataclass(frozen=True)
class SeriesPoint:
    param: object
    value: float
    unit: str
    build_id: str
    version: int


@dataclass
class ReportSeries:
    label: str
    method: str
    version: int | None  # None for the spliced mixed-build series
    points: list[SeriesPoint] = field(default_factory=list)


def _sort_key(param):
    return (0, param) if isinstance(param, (int, float)) else (1, str(param))


def _points(records: list[ResultRecord], param_key: str) -> list[SeriesPoint]:
    pts = [
        SeriesPoint(r.param(param_key), r.value, r.unit, r.build_id, r.version)
        for r in records
        if r.param(param_key) is not None
    ]
    pts.sort(key=lambda p: _sort_key(p.param))
    return pts


def export_report(
    store: ResultStore, graph: VersionGraph, metric: str, param_key: str
) -> list[ReportSeries]:
    """One series per relevant (method, version) pair holding data for the
    metric; versions that are no longer relevant never appear."""
    series = []
    for method in graph.methods:
        for vid in sorted(relevant_versions(graph, method)):
            pts = _points(store.for_version(method, vid.ordinal, metric), param_key)
            if pts:
                series.append(ReportSeries(vid.label, method, vid.ordinal, pts))
    if not series:
        raise EmptySelection(metric, param_key)
    return series


def mixed_build_series(
    store: ResultStore, graph: VersionGraph, metric: str, param_key: str
) -> list[ReportSeries]:
    """The naive overwrite-by-run view: one spliced series per method where
    each param keeps whatever the most recent build measured, regardless of
    which compiled version produced it."""
    series = []
    for method in graph.methods:
        latest: dict[object, ResultRecord] = {}
        for r in store.for_method(method, metric):
            p = r.param(param_key)
            if p is None:
                continue
            cur = latest.get(p)
            if cur is None or r.build_id > cur.build_id:
                latest[p] = r
        pts = [
            SeriesPoint(p, r.value, r.unit, r.build_id, r.version)
            for p, r in latest.items()
        ]
        pts.sort(key=lambda pt: _sort_key(pt.param))
        if pts:
            series.append(ReportSeries(method, method, None, pts))
    if not series:
        raise EmptySelection(metric, param_key)
    return series


def latest_build_series(
    store: ResultStore, graph: VersionGraph, metric: str, param_key: str
) -> list[ReportSeries]:
    """The single-build view: only the versions the latest build referenced."""
    series = []
    for method, outcome in graph.last_step_outcomes().items():
        vid_label = f"{method}.V{outcome.version}"
        pts = _points(store.for_version(method, outcome.version, metric), param_key)
        if pts:
            series.append(ReportSeries(vid_label, method, outcome.version, pts))
    if not series:
        raise EmptySelection(metric, param_key)
    return series


def demo_problem_modes(
    store: ResultStore, graph: VersionGraph, metric: str, param_key: str
) -> dict[str, dict]:
    """The two contrast charts next to the full report: (a) the naive
    mixed-build splice and (b) the latest build's versions only. Each entry
    carries the rendered SVG and the JSON twin of its series."""
    from .charts import line_chart

    out = {}
    for name, series, title in (
        ("mixed_builds", mixed_build_series(store, graph, metric, param_key),
         f"{metric} by {param_key} (naively merged builds)"),
        ("latest_build", latest_build_series(store, graph, metric, param_key),
         f"{metric} by {param_key} (latest build only)"),
    ):
        out[name] = {
            "svg": line_chart(series, metric, param_key, title),
            "series": series_to_dict(metric, param_key, series),
        }
    return out


def series_to_dict(metric: str, param_key: str, series: list[ReportSeries]) -> dict:
    return {
        "metric": metric,
        "param": param_key,
        "series": [
            {
                "label": s.label,
                "method": s.method,
                "version": s.version,
                "points": [
                    {
                        "param": p.param,
                        "value": p.value,
                        "unit": p.unit,
                        "build": p.build_id,
                        "version": p.version,
                    }
                    for p in s.points
                ],
            }
            for s in series
        ],
    }


# ---------------------------------------------------------------------------
# Persistence (one JSON line per live record, deterministic order)


def store_to_jsonl(store: ResultStore) -> str:
    lines = []
    for r in store.all_records():
        lines.append(json.dumps({
            "method": r.method,
            "version": r.version,
            "build": r.build_id,
            "params": dict(r.params),
            "metric": r.metric,
            "value": r.value,
            "unit": r.unit,
        }))
    return "\n".join(lines) + ("\n" if lines else "")


def store_from_jsonl(text: str) -> ResultStore:
    store = ResultStore()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            d = json.loads(line)
            store.upsert(ResultRecord(
                method=d["method"],
                version=d["version"],
                build_id=d["build"],
                params=_canonical_params(d["params"]),
                metric=d["metric"],
                value=float(d["value"]),
                unit=d["unit"],
            ))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise IngestError(f"results line {lineno} is malformed: {e}") from e
    return store
