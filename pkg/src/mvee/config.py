"""Project configuration (mvee.json) and source-state tracking.

A project names its build and run commands, where the compiler drops the .s
file, where the benchmark writes its results, and which source files define
"modified" for each monitored section. Source change detection hashes file
contents, so touching a file without changing it never counts as modified.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .regions import MarkerConvention

SOURCE_STATE_SCHEMA = 1


class ConfigError(Exception):
    def __init__(self, problems: list[str] | str):
        if isinstance(problems, str):
            problems = [problems]
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class SectionConfig:
    id: str
    source_files: tuple[str, ...]


@dataclass
class ProjectConfig:
    root: Path  # directory containing mvee.json; commands run here
    build_command: str
    asm_output: str
    run_command: str
    results_output: str
    sections: list[SectionConfig]
    state_dir: str = "mvee"
    markers: MarkerConvention = field(default_factory=MarkerConvention)

    @property
    def state_path(self) -> Path:
        return self.root / self.state_dir

    def section_ids(self) -> list[str]:
        return [s.id for s in self.sections]


def load_config(path: Path, state_dir_override: str | None = None) -> ProjectConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")

    problems = []

    def need_str(key: str) -> str:
        v = data.get(key)
        if not isinstance(v, str) or not v.strip():
            problems.append(f"{key}: required non-empty string")
            return ""
        return v

    build_command = need_str("build_command")
    asm_output = need_str("asm_output")
    run_command = need_str("run_command")
    results_output = need_str("results_output")

    sections = []
    raw_sections = data.get("sections")
    if not isinstance(raw_sections, list) or not raw_sections:
        problems.append("sections: required non-empty list")
    else:
        seen = set()
        for i, s in enumerate(raw_sections):
            if not isinstance(s, dict) or not isinstance(s.get("id"), str):
                problems.append(f"sections[{i}]: needs a string id")
                continue
            sid = s["id"]
            if sid in seen:
                problems.append(f"sections[{i}]: duplicate section id {sid!r}")
                continue
            seen.add(sid)
            files = s.get("source_files", [])
            if not isinstance(files, list) or not all(isinstance(f, str) for f in files):
                problems.append(f"sections[{i}].source_files: must be a list of paths")
                continue
            sections.append(SectionConfig(sid, tuple(files)))

    state_dir = state_dir_override or data.get("state_dir", "mvee")
    if not isinstance(state_dir, str) or not state_dir:
        problems.append("state_dir: must be a non-empty string")

    markers = MarkerConvention()
    raw_markers = data.get("marker_prefixes")
    if raw_markers is not None:
        if (not isinstance(raw_markers, dict)
                or not isinstance(raw_markers.get("begin"), str)
                or not isinstance(raw_markers.get("end"), str)):
            problems.append("marker_prefixes: must be {begin, end} strings")
        else:
            try:
                markers = MarkerConvention(raw_markers["begin"], raw_markers["end"])
            except ValueError as e:
                problems.append(f"marker_prefixes: {e}")

    if problems:
        raise ConfigError(problems)

    return ProjectConfig(
        root=path.parent.resolve(),
        build_command=build_command,
        asm_output=asm_output,
        run_command=run_command,
        results_output=results_output,
        sections=sections,
        state_dir=state_dir,
        markers=markers,
    )


# ---------------------------------------------------------------------------
# Source state


def digest_sources(config: ProjectConfig, section: SectionConfig) -> str:
    """Content hash over the section's configured source files."""
    h = hashlib.sha256()
    for rel in sorted(section.source_files):
        p = config.root / rel
        h.update(rel.encode())
        try:
            h.update(p.read_bytes())
        except FileNotFoundError:
            h.update(b"<missing>")
    return h.hexdigest()


def source_state_of(config: ProjectConfig) -> dict[str, str]:
    return {s.id: digest_sources(config, s) for s in config.sections}


def source_state_to_json(state: dict[str, str]) -> str:
    return json.dumps({"schema": SOURCE_STATE_SCHEMA, "sections": state}, indent=2) + "\n"


def source_state_from_json(text: str) -> dict[str, str]:
    from .versions import PersistError

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PersistError(f"source state file is not valid JSON: {e}") from e
    if not isinstance(data, dict) or data.get("schema") != SOURCE_STATE_SCHEMA:
        raise PersistError("unsupported source state schema")
    sections = data.get("sections")
    if not isinstance(sections, dict):
        raise PersistError("malformed source state document")
    return dict(sections)
