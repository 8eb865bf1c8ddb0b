"""The build-and-measure pipeline around a configured project.

One build: run the project's build command, archive the emitted .s file under
the build timestamp, extract the marked regions, decide per section whether
its source changed, advance the version graph (equivalence analysis for the
unmodified sections), and persist everything. One run: execute the benchmark,
bind its results to the versions the latest build produced. Reports extract
every currently relevant version.
"""

from __future__ import annotations

import json
import subprocess
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import charts
from .asm import ParseError, parse_asm_file
from .config import (
    ProjectConfig,
    source_state_from_json,
    source_state_of,
    source_state_to_json,
)
from .equivalence import Verdict, compare_regions
from .persist import atomic_write_bytes, atomic_write_text
from .regions import MarkerError, extract_region
from .results import (
    IngestError,
    ResultStore,
    export_report,
    ingest_run,
    latest_build_series,
    mixed_build_series,
    series_to_dict,
    store_from_jsonl,
    store_to_jsonl,
)
from .versions import (
    BuildInput,
    Outcome,
    OutcomeKind,
    VersionGraph,
    load_graph,
    record_build,
    serialize_graph,
)


class BuildError(Exception):
    pass


class RunError(Exception):
    pass


class StateError(Exception):
    pass


@dataclass
class AnomalyDetail:
    section_id: str
    from_version: int
    new_version: int
    verdict: Verdict


@dataclass
class BuildReport:
    build_id: str
    outcomes: dict[str, Outcome]
    anomalies: list[AnomalyDetail] = field(default_factory=list)
    asm_path: Path | None = None

    @property
    def has_anomaly(self) -> bool:
        return any(o.kind is OutcomeKind.FORK for o in self.outcomes.values())


@dataclass
class RunReport:
    build_id: str
    ingested: int
    outcomes: dict[str, Outcome]


def make_build_id(now: datetime | None = None) -> str:
    now = now or datetime.now(timezone.utc)
    return now.strftime("%Y%m%dT%H%M%S-%f")


class Project:
    """Stateful facade over one project's configuration and its state files."""

    def __init__(self, config: ProjectConfig):
        self.config = config

    # -- paths ------------------------------------------------------------

    @property
    def state_dir(self) -> Path:
        return self.config.state_path

    @property
    def graph_path(self) -> Path:
        return self.state_dir / "graph.json"

    @property
    def source_state_path(self) -> Path:
        return self.state_dir / "source-state.json"

    @property
    def results_path(self) -> Path:
        return self.state_dir / "results.jsonl"

    @property
    def asm_dir(self) -> Path:
        return self.state_dir / "asm"

    @property
    def report_dir(self) -> Path:
        return self.state_dir / "report"

    def initialized(self) -> bool:
        return self.graph_path.exists()

    def _require_state(self):
        if not self.initialized():
            raise StateError(
                f"state directory {self.state_dir} is not initialized (run init first)"
            )

    # -- state loading ------------------------------------------------------

    def load_graph(self) -> VersionGraph:
        self._require_state()
        return load_graph(self.graph_path.read_text())

    def load_store(self) -> ResultStore:
        if self.results_path.exists():
            return store_from_jsonl(self.results_path.read_text())
        return ResultStore()

    def load_source_state(self) -> dict[str, str]:
        return source_state_from_json(self.source_state_path.read_text())

    # -- commands -----------------------------------------------------------

    def init(self) -> Path:
        """Create the state directory: empty graph and result store, plus the
        current source digests of every configured section."""
        if self.initialized():
            raise StateError(f"already initialized: {self.graph_path} exists")
        self.state_dir.mkdir(parents=True, exist_ok=True)
        self.asm_dir.mkdir(exist_ok=True)
        graph = VersionGraph.for_methods(self.config.section_ids())
        atomic_write_text(self.graph_path, serialize_graph(graph))
        atomic_write_text(self.results_path, store_to_jsonl(ResultStore()))
        atomic_write_text(
            self.source_state_path, source_state_to_json(source_state_of(self.config))
        )
        return self.state_dir

    def build(self, build_id: str | None = None) -> BuildReport:
        """Compile, archive the .s, analyze equivalence for unmodified
        sections, and advance the version graph. State files stay untouched
        when anything fails."""
        self._require_state()
        build_id = build_id or make_build_id()
        graph = self.load_graph()
        old_state = self.load_source_state()

        proc = subprocess.run(
            self.config.build_command, shell=True, cwd=self.config.root,
            capture_output=True, text=True,
        )
        if proc.returncode != 0:
            raise BuildError(
                f"build command failed with exit {proc.returncode}:\n{proc.stderr.strip()}"
            )

        asm_file = self.config.root / self.config.asm_output
        if not asm_file.exists():
            raise BuildError(f"build produced no assembly file at {asm_file}")
        asm_text = asm_file.read_text()

        try:
            parsed = parse_asm_file(asm_text, build_id, path=str(asm_file))
        except ParseError as e:
            raise BuildError(f"cannot parse {asm_file}: {e}") from e

        new_state = source_state_of(self.config)
        inputs: dict[str, BuildInput] = {}
        try:
            for section in self.config.sections:
                region = extract_region(parsed, section.id, self.config.markers)
                modified = new_state[section.id] != old_state.get(section.id)
                inputs[section.id] = BuildInput(modified, region)
        except MarkerError as e:
            raise BuildError(f"marker analysis failed: {e}") from e

        outcomes = record_build(graph, build_id, inputs)

        anomalies = []
        for section_id, outcome in outcomes.items():
            if outcome.kind is OutcomeKind.FORK:
                old = graph.node(section_id, outcome.from_version).region_snapshot
                verdict = compare_regions(old, inputs[section_id].region)
                anomalies.append(AnomalyDetail(
                    section_id, outcome.from_version, outcome.version, verdict
                ))

        archived = self.asm_dir / f"{build_id}.s"
        atomic_write_bytes(archived, asm_text.encode())
        atomic_write_text(self.graph_path, serialize_graph(graph))
        atomic_write_text(self.source_state_path, source_state_to_json(new_state))

        return BuildReport(build_id, outcomes, anomalies, archived)

    def run(self) -> RunReport:
        """Execute the benchmark and bind its results to the latest outcomes."""
        self._require_state()
        graph = self.load_graph()
        outcomes = graph.last_step_outcomes()
        if not outcomes:
            raise RunError("no build recorded yet; run build first")
        build_id = next(iter(graph.methods.values())).steps[-1][0]

        proc = subprocess.run(
            self.config.run_command, shell=True, cwd=self.config.root,
            capture_output=True, text=True,
        )
        if proc.returncode != 0:
            raise RunError(
                f"run command failed with exit {proc.returncode}:\n{proc.stderr.strip()}"
            )

        results_file = self.config.root / self.config.results_output
        if not results_file.exists():
            raise RunError(f"run produced no results file at {results_file}")
        try:
            entries = json.loads(results_file.read_text())
        except json.JSONDecodeError as e:
            raise RunError(f"results file is not valid JSON: {e}") from e

        store = self.load_store()
        try:
            count = ingest_run(entries, outcomes, store, build_id)
        except IngestError as e:
            raise RunError(f"cannot ingest results: {e}") from e
        atomic_write_text(self.results_path, store_to_jsonl(store))
        return RunReport(build_id, count, outcomes)

    def report(
        self, metric: str, param: str, problem_modes: bool = False
    ) -> list[Path]:
        """Write the multi-version SVG chart and its JSON twin; optionally the
        two contrast charts (naively spliced builds, latest build only)."""
        self._require_state()
        graph = self.load_graph()
        store = self.load_store()
        written = []

        def emit(name: str, series, title: str):
            svg = charts.line_chart(series, metric, param, title)
            doc = series_to_dict(metric, param, series)
            svg_path = self.report_dir / f"{name}.svg"
            json_path = self.report_dir / f"{name}.json"
            atomic_write_text(svg_path, svg)
            atomic_write_text(json_path, json.dumps(doc, indent=2) + "\n")
            written.extend([svg_path, json_path])

        base = f"report-{metric}-{param}"
        emit(base, export_report(store, graph, metric, param),
             f"{metric} by {param} (all relevant versions)")
        if problem_modes:
            emit(f"{base}-mixed-builds",
                 mixed_build_series(store, graph, metric, param),
                 f"{metric} by {param} (naively merged builds)")
            emit(f"{base}-latest-build",
                 latest_build_series(store, graph, metric, param),
                 f"{metric} by {param} (latest build only)")
        return written

    def render_graph(self) -> str:
        """ASCII rendering of each method's version history, one lane per
        open branch, fork and merge rows marked."""
        self._require_state()
        graph = self.load_graph()
        lines = []
        for method, hist in graph.methods.items():
            lines.append(method)
            if not hist.steps:
                lines.append("  (no builds recorded)")
                continue
            lanes: list[int] = []
            for build_id, outcome in hist.steps:
                v = outcome.version
                if outcome.kind in (OutcomeKind.INITIAL, OutcomeKind.MODIFIED):
                    merged = len(lanes) > 1
                    lanes = [v]
                    glyph = "*"
                    note = "initial" if outcome.kind is OutcomeKind.INITIAL else (
                        "modified, merges open branches" if merged else "modified")
                elif outcome.kind is OutcomeKind.FORK:
                    lanes.append(v)
                    glyph = "|" * (len(lanes) - 1) + "*"
                    note = f"anomaly fork from {method}.V{outcome.from_version}"
                else:
                    row = ["|"] * len(lanes)
                    row[lanes.index(v)] = "o"
                    glyph = "".join(row)
                    note = ("unchanged" if outcome.kind is OutcomeKind.UNCHANGED
                            else "reverted")
                lines.append(f"  {glyph:<6} {method}.V{v:<3} {note:<34} build {build_id}")
            tips = ", ".join(f"{method}.V{o}" for o in sorted(hist.open_branches))
            lines.append(f"  relevant: {tips}")
        return "\n".join(lines) + "\n"

    def anomaly_view(self, build_id: str, section_id: str) -> dict | None:
        """Verdict plus both regions' rendered assembly for one fork, or None
        when that build produced no fork for the section."""
        graph = self.load_graph()
        hist = graph.history(section_id)
        outcome = next(
            (o for b, o in hist.steps if b == build_id and o.kind is OutcomeKind.FORK),
            None,
        )
        if outcome is None:
            return None
        old = graph.node(section_id, outcome.from_version)
        new = graph.node(section_id, outcome.version)
        verdict = compare_regions(old.region_snapshot, new.region_snapshot)
        return build_anomaly_payload(verdict, old.region_snapshot, new.region_snapshot)


def _region_lines(region, edits, side: str) -> list[dict]:
    annotations: dict[int, list[dict]] = {}
    for c in edits:
        line = c.source_line if side == "source" else c.target_line
        if line is not None:
            annotations.setdefault(line, []).append(
                {"category": c.category.value, "violating": c.violating}
            )
    out = []
    for gi, group in enumerate(region.groups):
        for name, line in zip(group.leading_labels, group.label_lines):
            out.append({
                "line": line, "text": f"{name}:", "role": "label",
                "annotations": annotations.get(line, []),
            })
        for instr, line in zip(group.instructions, group.instruction_lines):
            out.append({
                "line": line, "text": instr.render(), "role": "instruction",
                "annotations": annotations.get(line, []),
            })
        if gi + 1 < len(region.groups):
            out.append({"line": None, "text": "", "role": "group_break",
                        "annotations": []})
    return out


def build_anomaly_payload(verdict: Verdict, source_region, target_region) -> dict:
    from .equivalence import verdict_to_dict

    return {
        "verdict": verdict_to_dict(verdict),
        "source": {
            "build": source_region.build_id,
            "lines": _region_lines(source_region, verdict.classified_edits, "source"),
        },
        "target": {
            "build": target_region.build_id,
            "lines": _region_lines(target_region, verdict.classified_edits, "target"),
        },
    }


def describe_build(report: BuildReport) -> str:
    """Human-readable build summary with per-category anomaly lines."""
    lines = [f"build {report.build_id}"]
    for method, outcome in report.outcomes.items():
        lines.append(f"  {method}: {outcome.describe(method)}")
    for a in report.anomalies:
        lines.append(
            f"  anomaly in {a.section_id}: "
            f"{a.section_id}.V{a.from_version} -> {a.section_id}.V{a.new_version}"
        )
        for c in a.verdict.classified_edits:
            if not c.violating:
                continue
            where = ""
            if c.source_line is not None:
                where = f" [.s line {c.source_line + 1}]"
            elif c.target_line is not None:
                where = f" [.s line {c.target_line + 1}, new]"
            lines.append(f"    {c.category.value}: {c.detail}{where}")
    return "\n".join(lines)
