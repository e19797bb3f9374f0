"""Command-line interface: analyze a tree, or serve it for the explorer."""

import argparse
import sys
from pathlib import Path

from .ingest import (
    DEFAULT_EXCLUDE,
    DEFAULT_INCLUDE,
    AnalysisConfig,
    ConfigError,
)
from .report import run_analyze


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hookgraph",
        description="Static analysis of React component and hook structure",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser(
        "analyze", help="analyze a project tree and write a report")
    an.add_argument("--root", required=True, help="project directory")
    an.add_argument("--format", choices=("json", "csv"), default="json",
                    help="report format (default: json)")
    an.add_argument("--out", help="write the report here instead of stdout")
    an.add_argument("--drill-threshold", type=int, default=1, metavar="N",
                    help="pass-through hops before a chain counts as "
                         "drilling (default: 1)")
    an.add_argument("--include", action="append", metavar="G",
                    help="glob of files to analyze (repeatable)")
    an.add_argument("--exclude", action="append", metavar="G",
                    help="glob of files to skip (repeatable)")
    an.add_argument("--fail-on-findings", action="store_true",
                    help="exit 1 when any Definite finding exists")
    an.add_argument("--figures-dir", metavar="DIR",
                    help="also render overview.png and findings.png here")

    sv = sub.add_parser(
        "serve", help="serve the report and source over local HTTP")
    sv.add_argument("--root", required=True, help="project directory")
    sv.add_argument("--port", type=int, required=True)
    sv.add_argument("--ui-dir", help="static frontend assets to serve at /")
    return parser


def _config(args: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig(
        root_path=Path(args.root),
        include_globs=tuple(args.include) if args.include else DEFAULT_INCLUDE,
        exclude_globs=tuple(args.exclude) if getattr(args, "exclude", None)
        else DEFAULT_EXCLUDE,
        drill_threshold=getattr(args, "drill_threshold", 1),
        fail_on_findings=getattr(args, "fail_on_findings", False),
    )


def _cmd_analyze(args: argparse.Namespace) -> int:
    try:
        config = _config(args)
        report = run_analyze(config)
    except ConfigError as exc:
        print(f"hookgraph: {exc}", file=sys.stderr)
        return 2
    if args.format == "csv":
        payload = report.to_csv().encode("utf-8")
    else:
        payload = report.to_bytes()
    if args.out:
        Path(args.out).write_bytes(payload)
        print(f"wrote {args.out}: {len(report.findings)} finding(s), "
              f"{report.definite_count()} definite")
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    if args.figures_dir:
        from .figures import render_figures

        for fig_path in render_figures(report, args.figures_dir):
            print(f"wrote {fig_path}", file=sys.stderr)
    if args.fail_on_findings and report.definite_count() > 0:
        return 1
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import run_serve

    try:
        config = AnalysisConfig(root_path=Path(args.root))
        print(f"serving http://127.0.0.1:{args.port}/ "
              f"(root: {config.root_path})", file=sys.stderr)
        run_serve(config, args.port, args.ui_dir)
    except ConfigError as exc:
        print(f"hookgraph: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hookgraph: cannot bind port {args.port}: {exc}",
              file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        pass
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return _cmd_analyze(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
