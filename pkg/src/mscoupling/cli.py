"""Command line front end wiring ingest -> metrics -> report.

Commands:

* ``analyze``  -- one project (descriptor, edge CSV or compose file)
* ``corpus``   -- a directory of projects, one summary row per project
* ``example``  -- the built-in demo system
* ``render``   -- DOT/SVG drawings only

Exit codes: 0 success, 1 bad input or options, 2 I/O failure, 3 corpus
finished with at least one failed project.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import metrics, report
from .errors import CouplingError, ValidationError
from .graph import ServiceGraph
from .ingest import FORMATS, load_corpus, load_project
from .metrics import ProjectSummary
from .report import RenderOptions
from .sample import SAMPLE_PROJECT_NAME, sample_graph

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2
EXIT_PARTIAL = 3

EMIT_CHOICES = ("csv", "dot", "svg")
CORPUS_SUMMARY = "corpus_summary.csv"
CORPUS_ERRORS = "corpus_errors.txt"


@dataclass(frozen=True)
class CliConfig:
    command: str
    input_path: Path | None
    out_dir: Path
    emit: tuple[str, ...]
    fmt: str
    options: RenderOptions
    jobs: int = 1


def _parse_emit(text: str) -> tuple[str, ...]:
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts:
        raise ValidationError("emit set must not be empty")
    for part in parts:
        if part not in EMIT_CHOICES:
            raise ValidationError(f"unknown emit target {part!r} (choose from {', '.join(EMIT_CHOICES)})")
    return tuple(sorted(set(parts), key=EMIT_CHOICES.index))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mscoupling",
        description="Structural coupling metrics and visualizations for microservice dependency graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=Path("out"), help="output directory (default ./out)")
    common.add_argument("--emit", default="csv,dot", help="comma-separated outputs: csv,dot,svg (default csv,dot)")
    common.add_argument("--decimal-places", type=int, default=2, metavar="N")
    common.add_argument("--hub-fraction", type=float, default=0.6, metavar="F")
    common.add_argument("--hub-min-degree", type=int, default=3, metavar="N")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", dest="fmt", choices=FORMATS, default="auto")

    sub = parser.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", parents=[common, fmt], help="analyze one project")
    analyze.add_argument("input", type=Path)
    corpus = sub.add_parser("corpus", parents=[common], help="analyze every project under a corpus root")
    corpus.add_argument("root", type=Path)
    corpus.add_argument("--jobs", type=int, default=1, metavar="N", help="projects to process in parallel")
    sub.add_parser("example", parents=[common], help="analyze the built-in demo system")
    render = sub.add_parser("render", parents=[common, fmt], help="emit only the DOT/SVG drawings")
    render.add_argument("input", type=Path)
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    options = RenderOptions(
        hub_fraction=args.hub_fraction,
        hub_min_degree=args.hub_min_degree,
        decimal_places=args.decimal_places,
    )
    input_path = getattr(args, "input", None)
    if args.command == "corpus":
        input_path = args.root
    jobs = getattr(args, "jobs", 1)
    if jobs < 1:
        raise ValidationError("--jobs must be at least 1")
    return CliConfig(
        command=args.command,
        input_path=input_path,
        out_dir=args.out,
        emit=_parse_emit(args.emit),
        fmt=getattr(args, "fmt", "auto"),
        options=options,
        jobs=jobs,
    )


def _analysis_files(graph: ServiceGraph, summary: ProjectSummary, config: CliConfig) -> dict[str, str]:
    """All output texts for one project, computed before anything is written."""
    files: dict[str, str] = {}
    if "csv" in config.emit:
        files["service_metrics.csv"] = report.emit_service_metrics_csv(graph, config.options)
        for metric in report.PAIR_METRICS:
            files[f"pair_{metric}.csv"] = report.emit_pair_matrix_csv(graph, metric, config.options)
        files["summary.csv"] = report.emit_summary_csv([summary], config.options)
    if "dot" in config.emit:
        files["graph.dot"] = report.emit_dot(graph, config.options)
    if "svg" in config.emit:
        files["graph.svg"] = report.emit_svg(graph, config.options)
    return files


def _write_files(out_dir: Path, files: dict[str, str]) -> None:
    """Write via temporary names so failed runs leave no partial files."""
    out_dir.mkdir(parents=True, exist_ok=True)
    for filename, content in files.items():
        tmp = out_dir / (filename + ".tmp")
        tmp.write_text(content, encoding="utf-8", newline="\n")
        os.replace(tmp, out_dir / filename)


def _summary_line(name: str, graph: ServiceGraph, summary: ProjectSummary, options: RenderOptions) -> str:
    places = options.decimal_places
    sc_max = f"{summary.sc.max:.{places}f}" if summary.sc.count else "-"
    sc_avg = f"{summary.sc.avg:.{places}f}" if summary.sc.count else "-"
    return (
        f"{name}: services={len(graph.nodes)} edges={len(graph.edges)} "
        f"siy={summary.siy} sc_max={sc_max} sc_avg={sc_avg}"
    )


def _analyze_graph(graph: ServiceGraph, name: str, config: CliConfig) -> int:
    summary = metrics.project_summary(graph, name)
    files = _analysis_files(graph, summary, config)
    _write_files(config.out_dir, files)
    print(_summary_line(name, graph, summary, config.options))
    return EXIT_OK


def cmd_analyze(config: CliConfig) -> int:
    graph, descriptor = load_project(config.input_path, config.fmt)
    return _analyze_graph(graph, descriptor.name, config)


def cmd_example(config: CliConfig) -> int:
    return _analyze_graph(sample_graph(), SAMPLE_PROJECT_NAME, config)


def cmd_render(config: CliConfig) -> int:
    graph, _ = load_project(config.input_path, config.fmt)
    emit = tuple(target for target in config.emit if target in ("dot", "svg"))
    if not emit:
        raise ValidationError("render emits only dot/svg; pass --emit dot,svg")
    files: dict[str, str] = {}
    if "dot" in emit:
        files["graph.dot"] = report.emit_dot(graph, config.options)
    if "svg" in emit:
        files["graph.svg"] = report.emit_svg(graph, config.options)
    _write_files(config.out_dir, files)
    return EXIT_OK


def _process_corpus_project(descriptor_path: Path, config: CliConfig):
    """Analyze one corpus project; returns (dir_name, name, summary, line, error)."""
    dir_name = descriptor_path.parent.name
    try:
        graph, descriptor = load_project(descriptor_path, "descriptor")
        summary = metrics.project_summary(graph, descriptor.name)
        files = _analysis_files(graph, summary, config)
        _write_files(config.out_dir / dir_name, files)
        line = _summary_line(descriptor.name, graph, summary, config.options)
        return dir_name, descriptor.name, summary, line, None
    except (CouplingError, OSError) as exc:
        return dir_name, None, None, None, str(exc)


def cmd_corpus(config: CliConfig) -> int:
    index = load_corpus(config.input_path)
    if config.jobs > 1 and index.projects:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(lambda p: _process_corpus_project(p, config), index.projects))
    else:
        results = [_process_corpus_project(path, config) for path in index.projects]

    results.sort(key=lambda item: item[0])
    failures: list[tuple[str, str]] = []
    summaries: list[ProjectSummary] = []
    lines: list[str] = []
    seen_names: set[str] = set()
    for dir_name, name, summary, line, error in results:
        if error is not None:
            failures.append((dir_name, error))
            continue
        if name in seen_names:
            failures.append((dir_name, f"duplicate project name {name!r}"))
            continue
        seen_names.add(name)
        summaries.append(summary)
        lines.append(line)

    summaries.sort(key=lambda s: s.project_name)
    _write_files(config.out_dir, {CORPUS_SUMMARY: report.emit_summary_csv(summaries, config.options)})
    errors_path = config.out_dir / CORPUS_ERRORS
    if failures:
        _write_files(
            config.out_dir,
            {CORPUS_ERRORS: "".join(f"{dir_name}: {message}\n" for dir_name, message in failures)},
        )
    else:
        errors_path.unlink(missing_ok=True)

    for line in sorted(lines):
        print(line)
    print(f"{len(summaries)} project(s) analyzed, {len(failures)} failed")
    return EXIT_PARTIAL if failures else EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "corpus": cmd_corpus,
    "example": cmd_example,
    "render": cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        config = _config_from_args(args)
        return _COMMANDS[config.command](config)
    except CouplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    raise SystemExit(main())
