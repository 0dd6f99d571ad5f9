"""Coupling metrics over service dependency graphs.

The headline metric is the structural coupling of an ordered service
pair::

    sc(s1, s2) = 1 - (1 / degree(s1, s2)) * lwf(s1, s2) * gwf(s1, s2)

where ``lwf = (1 + outdegree) / (1 + degree)`` weights how much of the
pair's coupling the first service originates, and ``gwf = degree /
max node degree`` situates the pair against the busiest service in the
system.  Values lie in [0, 1): higher means the pair's dependencies are
heavier relative to the rest of the system.  Unconnected pairs have no
value at all (not zero) and are excluded from every statistic.

Alongside it the module computes the classic per-service coupling
numbers: CBM (outgoing calls per class), AIS (distinct clients), ADS
(distinct providers), ACS (= AIS * ADS) and the system-wide SIY count
of mutually dependent pairs.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnconnectedPair
from .graph import ServiceGraph, ServiceId


@dataclass(frozen=True)
class PairMetrics:
    """All per-pair values for one ordered service pair."""

    s1: ServiceId
    s2: ServiceId
    degree: int
    outdegree: int
    indegree: int
    lwf: float
    gwf: float
    sc: float


@dataclass(frozen=True)
class ServiceMetrics:
    """Degree and literature coupling values for one service.

    ``cbm`` is None when the service has no usable class count.
    """

    id: ServiceId
    indegree: int
    outdegree: int
    degree: int
    class_count: int | None
    cbm: float | None
    ais: int
    ads: int
    acs: int


@dataclass(frozen=True)
class StatSummary:
    """Descriptive statistics of one metric; all stats absent when empty."""

    metric_name: str
    count: int
    max: float | None = None
    avg: float | None = None
    median: float | None = None
    stdev: float | None = None
    total: float | None = None


@dataclass(frozen=True)
class ProjectSummary:
    """One project's descriptive statistics, one summary per metric.

    The degree/lwf/gwf/sc summaries run over all connected ordered
    pairs and therefore share a count; the cbm summary runs over the
    services where CBM is defined and has count 0 when it never is.
    """

    project_name: str
    degree: StatSummary
    lwf: StatSummary
    gwf: StatSummary
    sc: StatSummary
    cbm: StatSummary
    siy: int


def _connected_degree(graph: ServiceGraph, s1: ServiceId, s2: ServiceId) -> int:
    degree = graph.pair_degree(s1, s2)
    if degree == 0:
        raise UnconnectedPair(f"no dependencies between {s1!r} and {s2!r}")
    return degree


def lwf(graph: ServiceGraph, s1: ServiceId, s2: ServiceId) -> float:
    """Local weight factor (1 + outdegree) / (1 + degree), in (0, 1]."""
    degree = _connected_degree(graph, s1, s2)
    return (1 + graph.pair_outdegree(s1, s2)) / (1 + degree)


def gwf(graph: ServiceGraph, s1: ServiceId, s2: ServiceId) -> float:
    """Global weight factor degree / max node degree, in (0, 1]."""
    degree = _connected_degree(graph, s1, s2)
    return degree / graph.max_node_degree()


def structural_coupling(graph: ServiceGraph, s1: ServiceId, s2: ServiceId) -> float:
    """Structural coupling of the ordered pair, in [0, 1)."""
    degree = _connected_degree(graph, s1, s2)
    return 1.0 - (1.0 / degree) * lwf(graph, s1, s2) * gwf(graph, s1, s2)


def pair_metrics(graph: ServiceGraph, s1: ServiceId, s2: ServiceId) -> PairMetrics:
    degree = _connected_degree(graph, s1, s2)
    outdegree = graph.pair_outdegree(s1, s2)
    local = (1 + outdegree) / (1 + degree)
    global_ = degree / graph.max_node_degree()
    return PairMetrics(
        s1=s1,
        s2=s2,
        degree=degree,
        outdegree=outdegree,
        indegree=degree - outdegree,
        lwf=local,
        gwf=global_,
        sc=1.0 - (1.0 / degree) * local * global_,
    )


def pair_matrix(graph: ServiceGraph) -> tuple[PairMetrics, ...]:
    """Pair metrics for every connected ordered pair, lexicographic order."""
    return tuple(pair_metrics(graph, s1, s2) for s1, s2 in graph.connected_pairs())


def cbm(graph: ServiceGraph, service: ServiceId) -> float | None:
    """Outgoing dependency weight per class, or None when not computable.

    Undefined (None) when the service has no class count or a class
    count of zero; a service with classes but no outgoing calls gets a
    well-defined 0.0.
    """
    class_count = graph.node(service).class_count
    if class_count is None or class_count == 0:
        return None
    return graph.node_outdegree(service) / class_count


def ais(graph: ServiceGraph, service: ServiceId) -> int:
    """Number of distinct services with at least one dependency on this one."""
    graph.node(service)
    return sum(
        1
        for other in graph.service_ids
        if other != service and graph.pair_outdegree(other, service) >= 1
    )


def ads(graph: ServiceGraph, service: ServiceId) -> int:
    """Number of distinct services this one has at least one dependency on."""
    graph.node(service)
    return sum(
        1
        for other in graph.service_ids
        if other != service and graph.pair_outdegree(service, other) >= 1
    )


def acs(graph: ServiceGraph, service: ServiceId) -> int:
    """Criticality: ais * ads."""
    return ais(graph, service) * ads(graph, service)


def siy(graph: ServiceGraph) -> int:
    """Number of unordered pairs that depend on each other in both directions."""
    return sum(
        1 for s1, s2 in graph.connected_pairs() if s1 < s2 and graph.is_bidirectional(s1, s2)
    )


def service_metrics(graph: ServiceGraph, service: ServiceId) -> ServiceMetrics:
    node = graph.node(service)
    number_of_clients = ais(graph, service)
    number_of_providers = ads(graph, service)
    return ServiceMetrics(
        id=service,
        indegree=graph.node_indegree(service),
        outdegree=graph.node_outdegree(service),
        degree=graph.node_degree(service),
        class_count=node.class_count,
        cbm=cbm(graph, service),
        ais=number_of_clients,
        ads=number_of_providers,
        acs=number_of_clients * number_of_providers,
    )


def service_table(graph: ServiceGraph) -> tuple[ServiceMetrics, ...]:
    """Per-service metrics for every service, lexicographic order."""
    return tuple(service_metrics(graph, service) for service in graph.service_ids)


def summarize(values: Iterable[float], metric_name: str) -> StatSummary:
    """Max/avg/median/stdev/total over the values.

    The median of an even-length sample is the mean of the two middle
    values and the standard deviation is the population one (divide by
    count), so a single value summarizes to stdev 0 rather than being
    undefined.
    """
    data: Sequence[float] = [float(v) for v in values]
    if not data:
        return StatSummary(metric_name=metric_name, count=0)
    total = sum(data)
    return StatSummary(
        metric_name=metric_name,
        count=len(data),
        max=max(data),
        avg=total / len(data),
        median=statistics.median(data),
        stdev=statistics.pstdev(data),
        total=total,
    )


def project_summary(graph: ServiceGraph, project_name: str) -> ProjectSummary:
    """Descriptive statistics of all pair and service metrics for a project."""
    pairs = pair_matrix(graph)
    cbm_values = [m.cbm for m in service_table(graph) if m.cbm is not None]
    return ProjectSummary(
        project_name=project_name,
        degree=summarize((p.degree for p in pairs), "degree"),
        lwf=summarize((p.lwf for p in pairs), "lwf"),
        gwf=summarize((p.gwf for p in pairs), "gwf"),
        sc=summarize((p.sc for p in pairs), "sc"),
        cbm=summarize(cbm_values, "cbm"),
        siy=siy(graph),
    )
