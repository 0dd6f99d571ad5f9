"""Directed service dependency graph model.

Nodes are services, edges are weighted structural dependencies between
them.  A :class:`ServiceGraph` is an immutable value: construction
happens by accumulation (``add_service`` / ``add_dependency`` return new
graphs) and a finished graph can be shared freely between analysis
tasks.  All degree queries sum edge weights, so three recorded calls
from A to B count as three dependencies, not one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

from .errors import (
    DuplicateService,
    EmptyGraph,
    SelfDependency,
    UnknownService,
    ValidationError,
)

ServiceId = str

# Characters that would break CSV/DOT emission if they appeared in an id.
_FORBIDDEN_ID_CHARS = ("\n", "\r", ",", "\t", '"')


def _check_id(value: str) -> str:
    if not isinstance(value, str) or not value:
        raise ValidationError(f"service id must be a non-empty string, got {value!r}")
    for ch in _FORBIDDEN_ID_CHARS:
        if ch in value:
            raise ValidationError(f"service id {value!r} contains forbidden character {ch!r}")
    return value


class EdgeKind(str, Enum):
    """Provenance of a dependency record; ignored by all metrics."""

    CALL = "call"
    COMPOSE = "compose"
    DECLARED = "declared"


@dataclass(frozen=True)
class ServiceNode:
    """A service, optionally annotated with its size.

    ``class_count`` is the number of source classes in the service and
    feeds the CBM metric; ``loc`` is informational only.
    """

    id: ServiceId
    class_count: int | None = None
    loc: int | None = None

    def __post_init__(self):
        _check_id(self.id)
        for field_name in ("class_count", "loc"):
            value = getattr(self, field_name)
            if value is not None and (not isinstance(value, int) or value < 0):
                raise ValidationError(
                    f"service {self.id!r}: {field_name} must be a non-negative integer, got {value!r}"
                )


@dataclass(frozen=True)
class DependencyEdge:
    """A weighted directed dependency record between two services."""

    source: ServiceId
    target: ServiceId
    weight: int = 1
    kind: EdgeKind = EdgeKind.CALL

    def __post_init__(self):
        _check_id(self.source)
        _check_id(self.target)
        if self.source == self.target:
            raise SelfDependency(f"service {self.source!r} cannot depend on itself")
        if not isinstance(self.weight, int) or self.weight < 1:
            raise ValidationError(
                f"edge {self.source!r}->{self.target!r}: weight must be a positive integer, got {self.weight!r}"
            )
        if isinstance(self.kind, str) and not isinstance(self.kind, EdgeKind):
            try:
                object.__setattr__(self, "kind", EdgeKind(self.kind))
            except ValueError:
                raise ValidationError(
                    f"edge {self.source!r}->{self.target!r}: unknown kind {self.kind!r}"
                ) from None


@dataclass(frozen=True)
class ServiceGraph:
    """Immutable directed multigraph of services.

    Nodes and edges are stored in canonical (lexicographic) order and
    edge records sharing a (source, target, kind) triple are merged by
    weight summation, so two graphs built from the same dependencies in
    any order compare equal.
    """

    nodes: tuple[ServiceNode, ...] = ()
    edges: tuple[DependencyEdge, ...] = ()

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes, key=lambda n: n.id))
        seen: set[str] = set()
        for node in nodes:
            if node.id in seen:
                raise DuplicateService(f"service {node.id!r} declared twice")
            seen.add(node.id)
        merged: dict[tuple[str, str, EdgeKind], int] = {}
        for edge in self.edges:
            if edge.source not in seen or edge.target not in seen:
                missing = edge.source if edge.source not in seen else edge.target
                raise UnknownService(f"edge {edge.source!r}->{edge.target!r} references undeclared service {missing!r}")
            key = (edge.source, edge.target, edge.kind)
            merged[key] = merged.get(key, 0) + edge.weight
        edges = tuple(
            DependencyEdge(source, target, weight, kind)
            for (source, target, kind), weight in sorted(
                merged.items(), key=lambda item: (item[0][0], item[0][1], item[0][2].value)
            )
        )
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        nodes: Iterable[ServiceNode],
        edges: Iterable[DependencyEdge] = (),
    ) -> "ServiceGraph":
        return cls(tuple(nodes), tuple(edges))

    def add_service(self, node: ServiceNode) -> "ServiceGraph":
        """Return a new graph with ``node`` added; the receiver is unchanged."""
        if self.has_service(node.id):
            raise DuplicateService(f"service {node.id!r} already present")
        return ServiceGraph(self.nodes + (node,), self.edges)

    def add_dependency(self, edge: DependencyEdge) -> "ServiceGraph":
        """Return a new graph with ``edge`` added.

        An existing record with the same (source, target, kind) is
        merged by summing weights.
        """
        for endpoint in (edge.source, edge.target):
            if not self.has_service(endpoint):
                raise UnknownService(f"unknown service {endpoint!r}")
        return ServiceGraph(self.nodes, self.edges + (edge,))

    # -- lookup -----------------------------------------------------------

    @cached_property
    def _by_id(self) -> dict[str, ServiceNode]:
        return {node.id: node for node in self.nodes}

    @cached_property
    def _directed_weight(self) -> dict[tuple[str, str], int]:
        """Total weight per ordered (source, target) pair, kinds merged."""
        weights: dict[tuple[str, str], int] = {}
        for edge in self.edges:
            key = (edge.source, edge.target)
            weights[key] = weights.get(key, 0) + edge.weight
        return weights

    @cached_property
    def _out_weight(self) -> dict[str, int]:
        totals = dict.fromkeys(self._by_id, 0)
        for (source, _), weight in self._directed_weight.items():
            totals[source] += weight
        return totals

    @cached_property
    def _in_weight(self) -> dict[str, int]:
        totals = dict.fromkeys(self._by_id, 0)
        for (_, target), weight in self._directed_weight.items():
            totals[target] += weight
        return totals

    @property
    def service_ids(self) -> tuple[ServiceId, ...]:
        return tuple(node.id for node in self.nodes)

    def has_service(self, service: ServiceId) -> bool:
        return service in self._by_id

    def node(self, service: ServiceId) -> ServiceNode:
        self._require(service)
        return self._by_id[service]

    def _require(self, *services: ServiceId) -> None:
        for service in services:
            if service not in self._by_id:
                raise UnknownService(f"unknown service {service!r}")

    @property
    def total_edge_weight(self) -> int:
        return sum(self._directed_weight.values())

    # -- degrees ----------------------------------------------------------

    def pair_outdegree(self, s1: ServiceId, s2: ServiceId) -> int:
        """Total weight of dependencies directed from ``s1`` to ``s2``."""
        self._require(s1, s2)
        if s1 == s2:
            raise ValueError("pair degrees need two distinct services")
        return self._directed_weight.get((s1, s2), 0)

    def pair_indegree(self, s1: ServiceId, s2: ServiceId) -> int:
        """Total weight of dependencies directed from ``s2`` to ``s1``."""
        return self.pair_outdegree(s2, s1)

    def pair_degree(self, s1: ServiceId, s2: ServiceId) -> int:
        """Total dependency weight between the two services, either direction."""
        return self.pair_outdegree(s1, s2) + self.pair_outdegree(s2, s1)

    def node_outdegree(self, service: ServiceId) -> int:
        self._require(service)
        return self._out_weight[service]

    def node_indegree(self, service: ServiceId) -> int:
        self._require(service)
        return self._in_weight[service]

    def node_degree(self, service: ServiceId) -> int:
        """Total dependency weight incident to the service, both directions."""
        self._require(service)
        return self._out_weight[service] + self._in_weight[service]

    def max_node_degree(self) -> int:
        """Largest node degree in the graph; 0 when there are no edges."""
        if not self.nodes:
            raise EmptyGraph("max degree of an empty graph is undefined")
        return max(self.node_degree(node.id) for node in self.nodes)

    # -- structure --------------------------------------------------------

    def connected_pairs(self) -> tuple[tuple[ServiceId, ServiceId], ...]:
        """All ordered pairs with at least one dependency, both orientations.

        Sorted lexicographically by (first, second) for deterministic
        downstream reports.
        """
        pairs: set[tuple[str, str]] = set()
        for source, target in self._directed_weight:
            pairs.add((source, target))
            pairs.add((target, source))
        return tuple(sorted(pairs))

    def is_bidirectional(self, s1: ServiceId, s2: ServiceId) -> bool:
        """True when dependencies run in both directions between the pair."""
        return self.pair_outdegree(s1, s2) >= 1 and self.pair_indegree(s1, s2) >= 1

    @cached_property
    def _undirected_adjacency(self) -> dict[str, tuple[str, ...]]:
        neighbors: dict[str, set[str]] = {node.id: set() for node in self.nodes}
        for source, target in self._directed_weight:
            neighbors[source].add(target)
            neighbors[target].add(source)
        return {service: tuple(sorted(adjacent)) for service, adjacent in neighbors.items()}

    def articulation_services(self) -> frozenset[ServiceId]:
        """Services whose removal disconnects the undirected projection.

        Standard articulation points via iterative depth-first search
        with low-link values.
        """
        adjacency = self._undirected_adjacency
        order: dict[str, int] = {}
        low: dict[str, int] = {}
        cut: set[str] = set()
        counter = 0
        for root in adjacency:
            if root in order:
                continue
            order[root] = low[root] = counter
            counter += 1
            root_children = 0
            stack = [(root, None, iter(adjacency[root]))]
            while stack:
                current, parent, neighbors = stack[-1]
                pushed = False
                for neighbor in neighbors:
                    if neighbor == parent:
                        continue  # simple projection: exactly one edge back to the parent
                    if neighbor in order:
                        low[current] = min(low[current], order[neighbor])
                    else:
                        order[neighbor] = low[neighbor] = counter
                        counter += 1
                        stack.append((neighbor, current, iter(adjacency[neighbor])))
                        pushed = True
                        break
                if pushed:
                    continue
                stack.pop()
                if parent is None:
                    continue
                low[parent] = min(low[parent], low[current])
                if parent == root:
                    root_children += 1
                elif low[current] >= order[parent]:
                    cut.add(parent)
            if root_children >= 2:
                cut.add(root)
        return frozenset(cut)
