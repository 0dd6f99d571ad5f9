"""Reports and visualizations for analyzed service graphs.

Everything here is deterministic text generation: services appear in
lexicographic order, numbers are fixed-point, and equal inputs produce
byte-identical CSV/DOT/SVG output.  Counts (degrees, AIS/ADS/ACS, SIY)
are printed as plain integers; real-valued metrics (LWF/GWF/SC/CBM and
all summary statistics) use ``decimal_places`` digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import metrics
from .errors import EmptyGraph, ValidationError
from .graph import ServiceGraph, ServiceId
from .metrics import ProjectSummary, StatSummary

PAIR_METRICS = ("degree", "lwf", "gwf", "sc")


class ColorClass(Enum):
    """Visualization class of a service; the value is its fill color."""

    HUB = "green"
    BRIDGE = "yellow"
    HIGH_OUT = "blue"
    REGULAR = "red"


@dataclass(frozen=True)
class RenderOptions:
    """Tunable thresholds and formatting for reports and drawings."""

    hub_fraction: float = 0.6
    hub_min_degree: int = 3
    base_node_size: float = 1.0
    decimal_places: int = 2

    def __post_init__(self):
        if not 0 < self.hub_fraction <= 1:
            raise ValidationError(f"hub_fraction must be in (0, 1], got {self.hub_fraction!r}")
        if not isinstance(self.hub_min_degree, int) or self.hub_min_degree < 0:
            raise ValidationError(f"hub_min_degree must be a non-negative integer, got {self.hub_min_degree!r}")
        if not self.base_node_size > 0:
            raise ValidationError(f"base_node_size must be positive, got {self.base_node_size!r}")
        if not isinstance(self.decimal_places, int) or self.decimal_places < 0:
            raise ValidationError(f"decimal_places must be a non-negative integer, got {self.decimal_places!r}")


def classify(graph: ServiceGraph, service: ServiceId, options: RenderOptions = RenderOptions()) -> ColorClass:
    """Assign the visualization class of a service.

    Precedence: hub (degree within ``hub_fraction`` of the maximum and
    at least ``hub_min_degree``), then bridge (articulation point of
    the undirected projection), then high-out (strictly more outgoing
    than incoming weight), else regular.
    """
    degree = graph.node_degree(service)
    max_degree = graph.max_node_degree()
    if degree >= options.hub_fraction * max_degree and degree >= options.hub_min_degree:
        return ColorClass.HUB
    if service in graph.articulation_services():
        return ColorClass.BRIDGE
    if graph.node_outdegree(service) > graph.node_indegree(service):
        return ColorClass.HIGH_OUT
    return ColorClass.REGULAR


def node_size(graph: ServiceGraph, service: ServiceId, options: RenderOptions = RenderOptions()) -> float:
    """Node size scaling linearly from 1x (isolated) to 3x (max degree)."""
    degree = graph.node_degree(service)
    max_degree = graph.max_node_degree()
    ratio = degree / max_degree if max_degree else 0.0
    return options.base_node_size * (1 + 2 * ratio)


def _fmt(value: float, decimal_places: int) -> str:
    return f"{value:.{decimal_places}f}"


def emit_pair_matrix_csv(
    graph: ServiceGraph, metric: str, options: RenderOptions = RenderOptions()
) -> str:
    """n x n matrix of one pair metric; diagonal and unconnected cells empty."""
    if metric not in PAIR_METRICS:
        raise ValueError(f"metric must be one of {PAIR_METRICS}, got {metric!r}")
    cells = {(p.s1, p.s2): getattr(p, metric) for p in metrics.pair_matrix(graph)}
    services = graph.service_ids
    lines = ["service," + ",".join(services)]
    for row in services:
        rendered = []
        for column in services:
            value = cells.get((row, column))
            if value is None:
                rendered.append("")
            elif metric == "degree":
                rendered.append(str(value))
            else:
                rendered.append(_fmt(value, options.decimal_places))
        lines.append(row + "," + ",".join(rendered))
    return "\n".join(lines) + "\n"


def emit_service_metrics_csv(graph: ServiceGraph, options: RenderOptions = RenderOptions()) -> str:
    """Per-service degree/size/coupling table, one row per service."""
    lines = ["service,in_degree,out_degree,degree,classes,loc,cbm,ais,ads,acs"]
    for row in metrics.service_table(graph):
        lines.append(
            ",".join(
                [
                    row.id,
                    str(row.indegree),
                    str(row.outdegree),
                    str(row.degree),
                    "" if row.class_count is None else str(row.class_count),
                    "" if graph.node(row.id).loc is None else str(graph.node(row.id).loc),
                    "" if row.cbm is None else _fmt(row.cbm, options.decimal_places),
                    str(row.ais),
                    str(row.ads),
                    str(row.acs),
                ]
            )
        )
    return "\n".join(lines) + "\n"


_SUMMARY_GROUPS = ("degree", "sc", "cbm", "lwf", "gwf")
_SUMMARY_STATS = ("max", "avg", "median", "stdev", "total")
_STAT_HEADERS = ("max", "avg", "med", "stdev", "tot")


def _summary_cells(summary: StatSummary, decimal_places: int) -> list[str]:
    if summary.count == 0:
        return [""] * len(_SUMMARY_STATS)
    return [_fmt(getattr(summary, stat), decimal_places) for stat in _SUMMARY_STATS]


def emit_summary_csv(
    summaries: list[ProjectSummary] | tuple[ProjectSummary, ...],
    options: RenderOptions = RenderOptions(),
) -> str:
    """One row per project with max/avg/med/stdev/tot per metric plus SIY."""
    header = ["project"]
    for group in _SUMMARY_GROUPS:
        header.extend(f"{group}_{stat}" for stat in _STAT_HEADERS)
    header.append("siy")
    lines = [",".join(header)]
    for summary in summaries:
        cells = [summary.project_name]
        for group in _SUMMARY_GROUPS:
            cells.extend(_summary_cells(getattr(summary, group), options.decimal_places))
        cells.append(str(summary.siy))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_dot(graph: ServiceGraph, options: RenderOptions = RenderOptions()) -> str:
    """Colored directed graph in DOT syntax.

    One arrow per direction that has at least one dependency, labeled
    with the pair's structural coupling; pen width grows with it so
    tightly coupled pairs stand out.
    """
    lines = ["digraph coupling {", "    node [style=filled];"]
    for service in graph.service_ids:
        color = classify(graph, service, options).value
        size = _fmt(node_size(graph, service, options), 2)
        lines.append(f'    "{service}" [fillcolor={color}, width={size}, height={size}];')
    for s1, s2 in graph.connected_pairs():
        if graph.pair_outdegree(s1, s2) < 1:
            continue
        sc = metrics.structural_coupling(graph, s1, s2)
        label = _fmt(sc, options.decimal_places)
        penwidth = _fmt(1 + 3 * sc, 2)
        lines.append(f'    "{s1}" -> "{s2}" [label="{label}", penwidth={penwidth}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# SVG layout constants: nodes sit on a fixed circle, sized in pixels.
_SVG_SIZE = 520
_SVG_RADIUS = 180
_SVG_NODE_RADIUS = 18.0
_SVG_EDGE_GAP = 6.0


def _svg_positions(count: int) -> list[tuple[float, float]]:
    center = _SVG_SIZE / 2
    if count == 1:
        return [(center, center)]
    positions = []
    for index in range(count):
        angle = -math.pi / 2 + 2 * math.pi * index / count
        positions.append(
            (center + _SVG_RADIUS * math.cos(angle), center + _SVG_RADIUS * math.sin(angle))
        )
    return positions


def emit_svg(graph: ServiceGraph, options: RenderOptions = RenderOptions()) -> str:
    """Self-contained SVG drawing of the coupling graph.

    Services are placed clockwise on a circle in lexicographic order,
    sized by degree and filled with their classification color; each
    directed dependency is a straight arrow labeled with the pair's
    structural coupling.
    """
    if not graph.nodes:
        raise EmptyGraph("cannot render an empty graph")
    services = graph.service_ids
    position = dict(zip(services, _svg_positions(len(services))))
    radius = {
        service: _SVG_NODE_RADIUS * node_size(graph, service, options) for service in services
    }

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_SIZE}" height="{_SVG_SIZE}" '
        f'viewBox="0 0 {_SVG_SIZE} {_SVG_SIZE}" font-family="sans-serif">',
        '  <defs>',
        '    <marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
        'markerWidth="7" markerHeight="7" orient="auto">',
        '      <path d="M 0 0 L 10 5 L 0 10 z" fill="#333333"/>',
        '    </marker>',
        '  </defs>',
        f'  <rect width="{_SVG_SIZE}" height="{_SVG_SIZE}" fill="white"/>',
    ]

    for s1, s2 in graph.connected_pairs():
        if graph.pair_outdegree(s1, s2) < 1:
            continue
        (x1, y1), (x2, y2) = position[s1], position[s2]
        length = math.hypot(x2 - x1, y2 - y1)
        if length == 0:
            continue
        ux, uy = (x2 - x1) / length, (y2 - y1) / length
        # shift each direction to its own side so opposite arrows don't overlap
        px, py = -uy * _SVG_EDGE_GAP, ux * _SVG_EDGE_GAP
        start = (x1 + ux * radius[s1] + px, y1 + uy * radius[s1] + py)
        end = (x2 - ux * (radius[s2] + 4) + px, y2 - uy * (radius[s2] + 4) + py)
        label = _fmt(metrics.structural_coupling(graph, s1, s2), options.decimal_places)
        mid = ((start[0] + end[0]) / 2 + px, (start[1] + end[1]) / 2 + py)
        lines.append(
            f'  <line x1="{start[0]:.1f}" y1="{start[1]:.1f}" x2="{end[0]:.1f}" y2="{end[1]:.1f}" '
            'stroke="#333333" stroke-width="1.5" marker-end="url(#arrow)"/>'
        )
        lines.append(
            f'  <text x="{mid[0]:.1f}" y="{mid[1]:.1f}" text-anchor="middle" font-size="11">{label}</text>'
        )

    for service in services:
        x, y = position[service]
        color = classify(graph, service, options).value
        lines.append(
            f'  <circle cx="{x:.1f}" cy="{y:.1f}" r="{radius[service]:.1f}" '
            f'fill="{color}" stroke="#333333"/>'
        )
        lines.append(
            f'  <text x="{x:.1f}" y="{y:.1f}" dy="0.35em" text-anchor="middle" font-size="12">{service}</text>'
        )

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
