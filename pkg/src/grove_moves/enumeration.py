"""
Exhaustive enumeration of groves and triangles, and brute-force connectivity checks.
"""

from __future__ import annotations

import itertools
import logging
import threading
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from .board import Board, Edge, Vertex, build_board, make_edge
from .config import DEFAULT_SETTINGS, Settings
from .grove import Grove, target_grove
from .spin import legal_successors
from .triangle import ADD, Ast, MoveKind, MovePos, apply_move, grove_to_ast

logger = logging.getLogger(__name__)

_cache: Dict[int, Tuple[Grove, ...]] = {}
_cache_lock = threading.Lock()


def _candidate_labels(
    board: Board, v: Vertex, labels: Dict[Vertex, int]
) -> List[int]:
    """Labels of labelled vertices touching the unlabelled region around ``v``."""
    found = set()
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in board.graph.neighbors(u):
            if w in labels:
                found.add(labels[w])
            elif w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(found)


def _spanning_trees(graph: nx.Graph) -> List[FrozenSet[Edge]]:
    if graph.number_of_nodes() == 1:
        return [frozenset()]
    return [
        frozenset(make_edge(u, v) for u, v in tree.edges())
        for tree in nx.SpanningTreeIterator(graph)
    ]


def _groves_for_labels(board: Board, labels: Dict[Vertex, int]) -> List[Grove]:
    classes: Dict[int, List[Vertex]] = {}
    for v, k in labels.items():
        classes.setdefault(k, []).append(v)
    per_class = []
    for k in sorted(classes):
        sub = board.graph.subgraph(classes[k])
        if not nx.is_connected(sub):
            return []
        per_class.append(_spanning_trees(sub))
    return [
        Grove(board.n, frozenset().union(*choice))
        for choice in itertools.product(*per_class)
    ]


def _extend(
    board: Board, interior: Tuple[Vertex, ...], pos: int, labels: Dict[Vertex, int]
) -> List[Grove]:
    if pos == len(interior):
        return _groves_for_labels(board, labels)
    v = interior[pos]
    out: List[Grove] = []
    for k in _candidate_labels(board, v, labels):
        labels[v] = k
        out.extend(_extend(board, interior, pos + 1, labels))
        del labels[v]
    return out


def _base_labels(board: Board) -> Dict[Vertex, int]:
    return {v: k for k, block in enumerate(board.partition) for v in block.vertices}


def _enumerate(n: int, max_workers: int) -> Tuple[Grove, ...]:
    board = build_board(n)
    interior = board.interior
    base = _base_labels(board)
    if not interior:
        groves = _extend(board, interior, 0, base)
    else:
        first = interior[0]
        groves = []
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            futures = {}
            for k in _candidate_labels(board, first, base):
                labels = dict(base)
                labels[first] = k
                futures[executor.submit(_extend, board, interior, 1, labels)] = k
            for future in as_completed(futures):
                groves.extend(future.result())
    return tuple(sorted(groves, key=Grove.key))


def enumerate_groves(n: int, settings: Settings = DEFAULT_SETTINGS) -> List[Grove]:
    """Every grove of size ``n`` exactly once, in canonical edge order.

    Interior vertices are assigned to boundary sets first; each assignment
    whose classes induce connected subgraphs contributes the product of the
    spanning trees of its classes.

    Args:
        n: Board size.
        settings: ``enumeration_budget`` bounds ``n``; ``max_workers`` sizes
            the thread pool.

    Returns:
        List[Grove]: Canonically ordered, independent of scheduling.

    Raises:
        BudgetExceededError: If ``n`` is above the enumeration budget.
    """
    build_board(n)
    settings.check("enumeration_budget", n)
    with _cache_lock:
        cached = _cache.get(n)
    if cached is None:
        cached = _enumerate(n, settings.max_workers)
        with _cache_lock:
            cached = _cache.setdefault(n, cached)
        logger.info("Enumerated %d groves of size %d", len(cached), n)
    return list(cached)


def enumerate_asts(n: int, settings: Settings = DEFAULT_SETTINGS) -> List[Ast]:
    """Distinct triangles of all groves of size ``n``, sorted by rows."""
    asts = {grove_to_ast(g, check=False) for g in enumerate_groves(n, settings)}
    return sorted(asts, key=lambda a: a.rows)


def ast_preimages(a: Ast, settings: Settings = DEFAULT_SETTINGS) -> List[Grove]:
    """All groves whose triangle is ``a``; empty when ``a`` is not a triangle of a grove."""
    return [
        g for g in enumerate_groves(a.n, settings) if grove_to_ast(g, check=False) == a
    ]


@dataclass
class MoveGraphReport:
    n: int
    node_count: int
    edge_count: int
    connected: bool
    component_count: int
    diameter: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "connected": self.connected,
            "component_count": self.component_count,
            "diameter": self.diameter,
        }

    def summary(self) -> str:
        state = "connected" if self.connected else "disconnected"
        return f"{state}, {self.node_count} nodes"


def move_graph(n: int, settings: Settings = DEFAULT_SETTINGS) -> nx.Graph:
    """Graph on the triangles of size ``n``; adjacent when one signed move apart."""
    settings.check("move_graph_budget", n)
    asts = enumerate_asts(n, settings)
    members = set(asts)
    graph = nx.Graph()
    graph.add_nodes_from(asts)
    for a in asts:
        for r in range(1, n):
            for c in range(1, n - r + 1):
                for kind in MoveKind:
                    b = apply_move(a, MovePos(r, c, ADD), kind).array
                    if b in members:
                        graph.add_edge(a, b)
    return graph


def verify_move_connectivity(
    n: int, settings: Settings = DEFAULT_SETTINGS
) -> MoveGraphReport:
    graph = move_graph(n, settings)
    connected = nx.is_connected(graph)
    report = MoveGraphReport(
        n,
        graph.number_of_nodes(),
        graph.number_of_edges(),
        connected,
        nx.number_connected_components(graph),
        nx.diameter(graph) if connected else None,
    )
    logger.info("Move graph n=%d: %s", n, report.summary())
    return report


@dataclass
class SpinConnectivityReport:
    n: int
    grove_count: int
    reached: int
    distances: Dict[Grove, int] = field(default_factory=dict)

    @property
    def connected(self) -> bool:
        return self.reached == self.grove_count

    @property
    def eccentricity(self) -> int:
        return max(self.distances.values(), default=0)

    @property
    def histogram(self) -> Dict[int, int]:
        return dict(sorted(Counter(self.distances.values()).items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "grove_count": self.grove_count,
            "reached": self.reached,
            "connected": self.connected,
            "eccentricity": self.eccentricity,
            "histogram": {str(d): c for d, c in self.histogram.items()},
        }

    def summary(self) -> str:
        state = "connected" if self.connected else "disconnected"
        return f"{state}, {self.reached}/{self.grove_count} groves reached"


def verify_spin_connectivity(
    n: int, settings: Settings = DEFAULT_SETTINGS
) -> SpinConnectivityReport:
    """Breadth-first search over legal spins from the target grove.

    Raises:
        BudgetExceededError: If ``n`` is above the enumeration budget.
    """
    groves = enumerate_groves(n, settings)
    start = target_grove(n)
    distances = {start: 0}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for _, h in legal_successors(g):
            if h not in distances:
                distances[h] = distances[g] + 1
                queue.append(h)
    report = SpinConnectivityReport(n, len(groves), len(distances), distances)
    logger.info("Spin graph n=%d: %s", n, report.summary())
    return report


@dataclass
class InjectivityReport:
    n: int
    grove_count: int
    ast_count: int

    @property
    def injective(self) -> bool:
        return self.grove_count == self.ast_count

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "grove_count": self.grove_count,
            "ast_count": self.ast_count,
            "injective": self.injective,
        }


def injectivity_report(n: int, settings: Settings = DEFAULT_SETTINGS) -> InjectivityReport:
    report = InjectivityReport(
        n, len(enumerate_groves(n, settings)), len(enumerate_asts(n, settings))
    )
    logger.info(
        "Grove to triangle map at n=%d: %d groves, %d triangles, injective=%s",
        n,
        report.grove_count,
        report.ast_count,
        report.injective,
    )
    return report
