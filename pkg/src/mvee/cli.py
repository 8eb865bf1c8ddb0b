"""Command line entry point.

Exit codes: 0 on success, 2 when a build detected an anomaly (scriptable),
1 on any error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .orchestrator import BuildError, Project, RunError, StateError, describe_build
from .results import ReportError
from .versions import GraphError, PersistError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ANOMALY = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvee",
        description="Detect build anomalies in marked assembly sections and "
                    "track benchmark results for every compiled version.",
    )
    parser.add_argument("--config", default="mvee.json",
                        help="project config file (default: ./mvee.json)")
    parser.add_argument("--state-dir", default=None,
                        help="override the state directory from the config")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("init", help="create the state directory for the project")
    sub.add_parser("build", help="compile, archive assembly, analyze anomalies")
    sub.add_parser("run", help="execute the benchmark and ingest its results")
    sub.add_parser("graph", help="print the version graph")

    rep = sub.add_parser("report", help="export charts for all relevant versions")
    rep.add_argument("--metric", default="runtime")
    rep.add_argument("--param", default="selectivity")
    rep.add_argument("--problem-modes", action="store_true",
                     help="also write the mixed-build and latest-build contrast charts")

    srv = sub.add_parser("serve", help="serve the HTTP API and web UI")
    srv.add_argument("--port", type=int, default=8377)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--ui-dir", default=None,
                     help="static UI bundle directory (default: ./frontend/dist if present)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(Path(args.config), state_dir_override=args.state_dir)
        project = Project(config)

        if args.command == "init":
            state = project.init()
            print(f"initialized {state}")
            return EXIT_OK

        if args.command == "build":
            report = project.build()
            print(describe_build(report))
            return EXIT_ANOMALY if report.has_anomaly else EXIT_OK

        if args.command == "run":
            report = project.run()
            print(f"run for build {report.build_id}: {report.ingested} results ingested")
            return EXIT_OK

        if args.command == "graph":
            graph = project.load_graph()
            if not any(h.steps for h in graph.methods.values()):
                print("no builds recorded")
                return EXIT_OK
            print(project.render_graph(), end="")
            return EXIT_OK

        if args.command == "report":
            paths = project.report(args.metric, args.param,
                                   problem_modes=args.problem_modes)
            for p in paths:
                print(f"wrote {p}")
            return EXIT_OK

        if args.command == "serve":
            from .server import serve

            serve(project, host=args.host, port=args.port, ui_dir=args.ui_dir)
            return EXIT_OK

    except (ConfigError, StateError, BuildError, RunError,
            ReportError, GraphError, PersistError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
