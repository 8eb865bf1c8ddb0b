from __future__ import annotations

import json
import shutil
import subprocess
from pathlib import Path

import pytest

from helpers import wrap_sections
from mvee.config import load_config
from mvee.orchestrator import Project

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_DIR = REPO_ROOT / "demo"


class ScriptedProject:
    """Project whose build step copies a staged .s file instead of compiling,
    so version-graph scenarios replay deterministically."""

    def __init__(self, root: Path, sections: list[str]):
        self.root = root
        self.sections = sections
        (root / "sources").mkdir(parents=True)
        for sid in sections:
            (root / "sources" / f"{sid}.src").write_text(f"{sid} rev 0\n")
        self._revs = {sid: 0 for sid in sections}
        config = {
            "build_command": "cp staged.s out.s",
            "asm_output": "out.s",
            "run_command": "cp staged-results.json mvee-results.json",
            "results_output": "mvee-results.json",
            "sections": [
                {"id": sid, "source_files": [f"sources/{sid}.src"]}
                for sid in sections
            ],
        }
        (root / "mvee.json").write_text(json.dumps(config, indent=2))

    def project(self) -> Project:
        return Project(load_config(self.root / "mvee.json"))

    def stage_build(self, bodies: dict[str, str], modified: set[str] = frozenset()):
        (self.root / "staged.s").write_text(wrap_sections(bodies))
        for sid in modified:
            self._revs[sid] += 1
            (self.root / "sources" / f"{sid}.src").write_text(
                f"{sid} rev {self._revs[sid]}\n"
            )

    def stage_results(self, entries: list[dict]):
        (self.root / "staged-results.json").write_text(json.dumps(entries))


@pytest.fixture
def scripted_project(tmp_path):
    def factory(sections: list[str]) -> ScriptedProject:
        return ScriptedProject(tmp_path / "proj", sections)

    return factory


@pytest.fixture
def demo_copy(tmp_path):
    """Fresh copy of the bundled demo C++ project."""
    dest = tmp_path / "demo"
    shutil.copytree(DEMO_DIR, dest, ignore=shutil.ignore_patterns("build", "mvee", "mvee-results.json", "anomalous.s", "mvee-anomaly.json"))
    return dest


@pytest.fixture(scope="session")
def gcc_available():
    try:
        subprocess.run(["g++", "--version"], capture_output=True, check=True)
    except (OSError, subprocess.CalledProcessError):
        pytest.skip("g++ not available")
    return True
