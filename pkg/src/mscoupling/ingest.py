"""Build service graphs from project files.

Three input formats are supported:

* the canonical ``project.json`` descriptor (services with optional
  class counts plus an explicit edge list),
* a bare edge CSV (``source,target[,weight[,kind]]``) whose services
  are auto-declared from the endpoints,
* a docker-compose document, where every ``depends_on`` / ``links``
  entry becomes a weight-1 dependency hint.

``load_corpus`` discovers one descriptor per immediate subdirectory of
a corpus root so whole project collections can be analyzed in a batch.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import ParseError, ValidationError
from .graph import DependencyEdge, EdgeKind, ServiceGraph, ServiceNode

logger = logging.getLogger(__name__)

DESCRIPTOR_FILENAME = "project.json"
DEFAULT_SOURCE_EXTENSIONS = (".java",)

FORMATS = ("auto", "descriptor", "edges", "compose")


@dataclass(frozen=True)
class ServiceEntry:
    """One service record of a project descriptor."""

    id: str
    classes: int | None = None
    loc: int | None = None
    source_dir: str | None = None


@dataclass(frozen=True)
class EdgeEntry:
    """One dependency record of a project descriptor."""

    source: str
    target: str
    weight: int = 1
    kind: EdgeKind = EdgeKind.CALL


@dataclass(frozen=True)
class ProjectDescriptor:
    name: str
    services: tuple[ServiceEntry, ...] = ()
    edges: tuple[EdgeEntry, ...] = ()


@dataclass(frozen=True)
class CorpusIndex:
    """Descriptor locations discovered under a corpus root, sorted."""

    root: Path
    projects: tuple[Path, ...]


def _require_non_negative_int(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ValidationError(f"{what} must be a non-negative integer, got {value!r}")
    return value


def _parse_kind(value: object, what: str) -> EdgeKind:
    try:
        return EdgeKind(value)
    except ValueError:
        raise ValidationError(f"{what}: unknown dependency kind {value!r}") from None


def parse_project_descriptor(text: str) -> ProjectDescriptor:
    """Parse and validate the canonical JSON descriptor format.

    Unknown fields are ignored with a warning; structural problems
    (duplicate ids, edges naming undeclared services, bad weights)
    raise :class:`ValidationError` naming the offender.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(document, dict):
        raise ParseError("descriptor must be a JSON object")

    known_top = {"name", "services", "edges"}
    unknown = sorted(set(document) - known_top)
    if unknown:
        logger.warning("descriptor: ignoring unknown fields %s", ", ".join(unknown))

    name = document.get("name")
    if not isinstance(name, str) or not name:
        raise ValidationError("descriptor needs a non-empty string 'name'")

    services: list[ServiceEntry] = []
    seen_ids: set[str] = set()
    raw_services = document.get("services", [])
    if not isinstance(raw_services, list):
        raise ValidationError("'services' must be an array")
    for position, raw in enumerate(raw_services):
        if not isinstance(raw, dict):
            raise ValidationError(f"service #{position} must be an object")
        unknown = sorted(set(raw) - {"id", "classes", "loc", "source_dir"})
        if unknown:
            logger.warning("service #%d: ignoring unknown fields %s", position, ", ".join(unknown))
        service_id = raw.get("id")
        if not isinstance(service_id, str) or not service_id:
            raise ValidationError(f"service #{position} needs a non-empty string 'id'")
        if service_id in seen_ids:
            raise ValidationError(f"duplicate service id {service_id!r}")
        seen_ids.add(service_id)
        classes = raw.get("classes")
        if classes is not None:
            classes = _require_non_negative_int(classes, f"service {service_id!r}: classes")
        loc = raw.get("loc")
        if loc is not None:
            loc = _require_non_negative_int(loc, f"service {service_id!r}: loc")
        source_dir = raw.get("source_dir")
        if source_dir is not None and not isinstance(source_dir, str):
            raise ValidationError(f"service {service_id!r}: source_dir must be a string")
        services.append(ServiceEntry(service_id, classes, loc, source_dir))

    edges: list[EdgeEntry] = []
    raw_edges = document.get("edges", [])
    if not isinstance(raw_edges, list):
        raise ValidationError("'edges' must be an array")
    for position, raw in enumerate(raw_edges):
        if not isinstance(raw, dict):
            raise ValidationError(f"edge #{position} must be an object")
        unknown = sorted(set(raw) - {"source", "target", "weight", "kind"})
        if unknown:
            logger.warning("edge #%d: ignoring unknown fields %s", position, ", ".join(unknown))
        source = raw.get("source")
        target = raw.get("target")
        for endpoint in (source, target):
            if not isinstance(endpoint, str) or not endpoint:
                raise ValidationError(f"edge #{position} needs string 'source' and 'target'")
            if endpoint not in seen_ids:
                raise ValidationError(f"edge #{position} references undeclared service {endpoint!r}")
        weight = raw.get("weight", 1)
        if isinstance(weight, bool) or not isinstance(weight, int) or weight < 1:
            raise ValidationError(f"edge {source!r}->{target!r}: weight must be a positive integer")
        kind = _parse_kind(raw.get("kind", "call"), f"edge {source!r}->{target!r}")
        edges.append(EdgeEntry(source, target, weight, kind))

    return ProjectDescriptor(name=name, services=tuple(services), edges=tuple(edges))


def parse_edge_csv(text: str) -> tuple[EdgeEntry, ...]:
    """Parse an edge list CSV with header ``source,target[,weight[,kind]]``.

    Blank lines are skipped; empty optional cells fall back to the
    defaults (weight 1, kind call).
    """
    reader = csv.reader(io.StringIO(text))
    header: list[str] | None = None
    entries: list[EdgeEntry] = []
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        cells = [cell.strip() for cell in row]
        if header is None:
            header = [cell.lower() for cell in cells]
            expected = ["source", "target", "weight", "kind"][: len(header)]
            if len(header) < 2 or len(header) > 4 or header != expected:
                raise ParseError(
                    f"header must be source,target[,weight[,kind]], got {','.join(cells)}",
                    line=reader.line_num,
                )
            continue
        if len(cells) != len(header):
            raise ParseError(
                f"expected {len(header)} columns, got {len(cells)}", line=reader.line_num
            )
        source, target = cells[0], cells[1]
        weight = 1
        if len(cells) >= 3 and cells[2]:
            try:
                weight = int(cells[2])
            except ValueError:
                raise ParseError(f"weight {cells[2]!r} is not an integer", line=reader.line_num) from None
        kind = EdgeKind.CALL
        if len(cells) >= 4 and cells[3]:
            try:
                kind = EdgeKind(cells[3])
            except ValueError:
                raise ParseError(f"unknown kind {cells[3]!r}", line=reader.line_num) from None
        entries.append(EdgeEntry(source, target, weight, kind))
    if header is None:
        raise ParseError("missing header row")
    return tuple(entries)


def parse_compose(text: str, name: str = "compose") -> ProjectDescriptor:
    """Extract a service topology from a docker-compose document.

    Every ``depends_on`` (list or mapping form) and ``links`` entry
    becomes a weight-1 dependency hint of kind ``compose``; repeated
    hints between the same pair merge by weight summation, and
    self-references are dropped with a warning.
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(
            f"invalid YAML: {getattr(exc, 'problem', exc)}",
            line=mark.line + 1 if mark is not None else None,
        ) from None
    if document is None:
        document = {}
    if not isinstance(document, dict):
        raise ParseError("compose document must be a mapping")
    raw_services = document.get("services", {})
    if not isinstance(raw_services, dict):
        raise ParseError("'services' must be a mapping")

    service_names = [str(service) for service in raw_services]
    declared = set(service_names)
    hints: dict[tuple[str, str], int] = {}
    for service, config in raw_services.items():
        service = str(service)
        if config is None:
            config = {}
        if not isinstance(config, dict):
            raise ParseError(f"service {service!r} entry must be a mapping")
        targets: list[str] = []
        depends_on = config.get("depends_on", [])
        if isinstance(depends_on, dict):
            targets.extend(str(dep) for dep in depends_on)
        elif isinstance(depends_on, list):
            targets.extend(str(dep) for dep in depends_on)
        else:
            raise ParseError(f"service {service!r}: depends_on must be a list or mapping")
        links = config.get("links", [])
        if not isinstance(links, list):
            raise ParseError(f"service {service!r}: links must be a list")
        # links entries may carry an alias suffix: "db:database"
        targets.extend(str(link).split(":", 1)[0] for link in links)
        for target in targets:
            if target == service:
                logger.warning("compose: dropping self-dependency of %r", service)
                continue
            if target not in declared:
                raise ValidationError(
                    f"service {service!r} depends on undeclared service {target!r}"
                )
            key = (service, target)
            hints[key] = hints.get(key, 0) + 1

    return ProjectDescriptor(
        name=name,
        services=tuple(ServiceEntry(service) for service in service_names),
        edges=tuple(
            EdgeEntry(source, target, weight, EdgeKind.COMPOSE)
            for (source, target), weight in hints.items()
        ),
    )


def count_source_units(directory: Path, extensions: tuple[str, ...] = DEFAULT_SOURCE_EXTENSIONS) -> int:
    """Count files under ``directory`` (recursive) with one of the extensions."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"not a directory: {directory}")
    wanted = set(extensions)
    return sum(1 for path in directory.rglob("*") if path.is_file() and path.suffix in wanted)


def build_graph(descriptor: ProjectDescriptor, base_dir: Path | None = None) -> ServiceGraph:
    """Materialize a descriptor into an immutable graph.

    When a service declares ``source_dir`` but no explicit class count
    and ``base_dir`` is given, the class count is derived by counting
    source files under ``base_dir / source_dir``.
    """
    nodes = []
    for entry in descriptor.services:
        class_count = entry.classes
        if class_count is None and entry.source_dir is not None and base_dir is not None:
            class_count = count_source_units(Path(base_dir) / entry.source_dir)
        nodes.append(ServiceNode(entry.id, class_count=class_count, loc=entry.loc))
    edges = [
        DependencyEdge(entry.source, entry.target, entry.weight, entry.kind)
        for entry in descriptor.edges
    ]
    return ServiceGraph.build(nodes, edges)


def descriptor_from_graph(graph: ServiceGraph, name: str) -> ProjectDescriptor:
    """Re-emit a graph as a canonical descriptor (sorted, merged edges)."""
    return ProjectDescriptor(
        name=name,
        services=tuple(
            ServiceEntry(node.id, classes=node.class_count, loc=node.loc) for node in graph.nodes
        ),
        edges=tuple(
            EdgeEntry(edge.source, edge.target, edge.weight, edge.kind) for edge in graph.edges
        ),
    )


def emit_project_descriptor(descriptor: ProjectDescriptor) -> str:
    """Serialize a descriptor back to the canonical JSON format."""
    document: dict = {"name": descriptor.name, "services": [], "edges": []}
    for service in descriptor.services:
        raw: dict = {"id": service.id}
        if service.classes is not None:
            raw["classes"] = service.classes
        if service.loc is not None:
            raw["loc"] = service.loc
        if service.source_dir is not None:
            raw["source_dir"] = service.source_dir
        document["services"].append(raw)
    for edge in descriptor.edges:
        raw = {"source": edge.source, "target": edge.target}
        if edge.weight != 1:
            raw["weight"] = edge.weight
        if edge.kind is not EdgeKind.CALL:
            raw["kind"] = edge.kind.value
        document["edges"].append(raw)
    return json.dumps(document, indent=2) + "\n"


def load_project(path: Path, fmt: str = "auto") -> tuple[ServiceGraph, ProjectDescriptor]:
    """Load one project from a descriptor, edge CSV or compose file.

    ``fmt`` is one of ``auto | descriptor | edges | compose``; in auto
    mode the format is inferred from the file extension.  Edge-CSV
    services are auto-declared from the endpoints (without class
    counts) and the project takes the file stem as its name.
    """
    path = Path(path)
    if fmt not in FORMATS:
        raise ValidationError(f"unknown input format {fmt!r}")
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    if fmt == "auto":
        suffix = path.suffix.lower()
        if suffix == ".json":
            fmt = "descriptor"
        elif suffix == ".csv":
            fmt = "edges"
        elif suffix in (".yml", ".yaml"):
            fmt = "compose"
        else:
            raise ValidationError(f"cannot infer input format from {path.name!r}; pass one explicitly")
    text = path.read_text(encoding="utf-8")
    if fmt == "descriptor":
        descriptor = parse_project_descriptor(text)
        return build_graph(descriptor, base_dir=path.parent), descriptor
    if fmt == "edges":
        entries = parse_edge_csv(text)
        endpoints = sorted({end for entry in entries for end in (entry.source, entry.target)})
        descriptor = ProjectDescriptor(
            name=path.stem,
            services=tuple(ServiceEntry(service) for service in endpoints),
            edges=entries,
        )
        return build_graph(descriptor), descriptor
    descriptor = parse_compose(text, name=path.stem)
    return build_graph(descriptor), descriptor


def load_corpus(root: Path) -> CorpusIndex:
    """Discover one project per immediate subdirectory holding a descriptor.

    Subdirectories without a ``project.json`` are skipped with a
    warning; an empty corpus is a valid result.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"no such corpus root: {root}")
    projects: list[Path] = []
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if not entry.is_dir():
            continue
        descriptor_path = entry / DESCRIPTOR_FILENAME
        if descriptor_path.is_file():
            projects.append(descriptor_path)
        else:
            logger.warning("corpus: skipping %s (no %s)", entry.name, DESCRIPTOR_FILENAME)
    return CorpusIndex(root=root, projects=tuple(projects))
