"""
Grove values, validation against the grove axioms, and the target grove.

A grove of size n is a set of lattice edges that is acyclic and whose
connected components realize the boundary partition exactly: every component
holds exactly one boundary set, and no boundary set is split.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx

from .board import Board, Direction, Edge, Vertex, build_board, make_edge, on_board, step
from .exceptions import BoardError, InvalidGroveError

logger = logging.getLogger(__name__)

ACYCLICITY = "acyclicity"
CONNECTIVITY = "connectivity"
UNIVERSE = "universe"


@dataclass(frozen=True)
class Grove:
    """An immutable edge set on the size-n board.

    Construct through :func:`make_grove` to get validation; the bare
    constructor is used internally once validity is established.
    """

    n: int
    edges: FrozenSet[Edge]

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return make_edge(u, v) in self.edges

    def degree(self, v: Vertex) -> int:
        return sum(1 for e in self.edges if v in e)

    def incident(self, v: Vertex) -> List[Edge]:
        return sorted(e for e in self.edges if v in e)

    def key(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(build_board(self.n).vertices))
        g.add_edges_from(self.sorted_edges())
        return g


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class GroveViolation:
    axiom: str  # "universe" | "acyclicity" | "connectivity"
    message: str
    witness: List[Any] = field(default_factory=list)

    def __str__(self) -> str:
        return f"[{self.axiom}] {self.message}"


@dataclass
class GroveReport:
    n: int
    violations: List[GroveViolation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return len(self.violations) == 0

    def by_axiom(self, axiom: str) -> List[GroveViolation]:
        return [v for v in self.violations if v.axiom == axiom]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "valid": self.is_valid,
            "violation_count": len(self.violations),
            "violations": [
                {"axiom": v.axiom, "message": v.message, "witness": v.witness}
                for v in self.violations
            ],
        }


def _check_universe(
    board: Board, edges: Iterable[Sequence[Vertex]], report: GroveReport
) -> List[Edge]:
    accepted: List[Edge] = []
    for raw in edges:
        u, v = tuple(raw[0]), tuple(raw[1])
        off = [w for w in (u, v) if not on_board(board.n, w)]  # type: ignore[arg-type]
        if off:
            report.violations.append(
                GroveViolation(
                    UNIVERSE,
                    f"edge {u}-{v} uses vertices off the board: {off}",
                    [list(w) for w in off],
                )
            )
            continue
        try:
            edge = make_edge(u, v)  # type: ignore[arg-type]
        except BoardError as e:
            report.violations.append(GroveViolation(UNIVERSE, str(e), [list(u)]))
            continue
        if edge not in board.edges:
            report.violations.append(
                GroveViolation(
                    UNIVERSE,
                    f"{u}-{v} is not a lattice edge",
                    [list(u), list(v)],
                )
            )
            continue
        accepted.append(edge)
    return sorted(set(accepted))


def validate_grove(board: Board, edges: Iterable[Sequence[Vertex]]) -> GroveReport:
    """Check an edge set against the grove axioms.

    Every failure is reported with the axiom it breaks and a witness: the
    offending edge, a cycle, a component holding zero or several boundary
    sets, or a boundary set split across components.

    Args:
        board: The board of the intended size.
        edges: Pairs of vertices; orientation does not matter.

    Returns:
        GroveReport: Empty ``violations`` means the edges form a grove.
    """
    report = GroveReport(board.n)
    accepted = _check_universe(board, edges, report)

    graph = nx.Graph()
    graph.add_nodes_from(sorted(board.vertices))
    graph.add_edges_from(accepted)

    components = sorted(
        (sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0]
    )
    owner: Dict[Vertex, int] = {}
    for k, comp in enumerate(components):
        for v in comp:
            owner[v] = k
        sub = graph.subgraph(comp)
        if sub.number_of_edges() >= sub.number_of_nodes():
            cycle = nx.find_cycle(sub)
            report.violations.append(
                GroveViolation(
                    ACYCLICITY,
                    f"cycle through {len(cycle)} edges",
                    [[list(a), list(b)] for a, b in cycle],
                )
            )
        held = sorted({board.set_index(v) for v in comp} - {None})  # type: ignore[type-var]
        if not held:
            report.violations.append(
                GroveViolation(
                    CONNECTIVITY,
                    f"component of {comp[0]} contains no boundary vertex set",
                    [list(v) for v in comp],
                )
            )
        elif len(held) > 1:
            labels = [board.partition[h].label for h in held]  # type: ignore[index]
            report.violations.append(
                GroveViolation(
                    CONNECTIVITY,
                    f"component of {comp[0]} joins boundary sets {', '.join(labels)}",
                    [list(v) for v in comp],
                )
            )

    for block in board.partition:
        spread = {owner[v] for v in block.vertices}
        if len(spread) > 1:
            report.violations.append(
                GroveViolation(
                    CONNECTIVITY,
                    f"boundary set {block.label} is not connected",
                    [list(v) for v in sorted(block.vertices)],
                )
            )

    if not report.is_valid:
        logger.debug("Edge set rejected: %s", "; ".join(map(str, report.violations)))
    return report


def is_grove(board: Board, edges: Iterable[Sequence[Vertex]]) -> bool:
    return validate_grove(board, edges).is_valid


def make_grove(n: int, edges: Iterable[Sequence[Vertex]]) -> Grove:
    """Validate ``edges`` and wrap them as a Grove.

    Raises:
        BoardError: If ``n`` is not a valid size.
        InvalidGroveError: If the edges violate an axiom.
    """
    board = build_board(n)
    edge_list = [tuple(map(tuple, e)) for e in edges]
    report = validate_grove(board, edge_list)  # type: ignore[arg-type]
    if not report.is_valid:
        raise InvalidGroveError(report.violations)
    return Grove(n, frozenset(make_edge(u, v) for u, v in edge_list))  # type: ignore[misc]


def components(g: Grove) -> List[FrozenSet[Vertex]]:
    """Connected components of ``g`` as vertex sets, ordered by smallest vertex."""
    comps = [frozenset(c) for c in nx.connected_components(g.graph())]
    return sorted(comps, key=lambda c: min(c))


def partition_set_count(n: int) -> int:
    """Number of boundary sets, i.e. the number of components of any grove."""
    if n % 2:
        return 3 + 3 * (n - 1) // 2
    return 3 * n // 2 + 1


def grove_edge_count(n: int) -> int:
    return (n + 1) * (n + 2) // 2 - partition_set_count(n)


# ---------------------------------------------------------------------------
# Target grove
# ---------------------------------------------------------------------------


def _walk(start: Vertex, d: Direction, count: int) -> List[Vertex]:
    path = [start]
    for _ in range(count):
        path.append(step(path[-1], d))
    return path


@lru_cache(maxsize=None)
def target_paths(n: int) -> Tuple[Tuple[Vertex, ...], ...]:
    """Vertex path of each target component, indexed like ``board.partition``.

    Corners are single-vertex paths. East pairs descend diagonally; west pairs
    and the middle triplet descend diagonally and then run west along the
    bottom row of the component.
    """
    board = build_board(n)
    paths: List[Tuple[Vertex, ...]] = []
    for block in board.partition:
        i = block.index
        if block.kind == "corner":
            path = sorted(block.vertices)
        elif block.kind == "east":
            path = _walk((i, 0), Direction.SE, (n - i) // 2)
        elif block.kind in ("west", "middle"):
            diagonal = _walk((-i, 0), Direction.SE, (n - i) // 2)
            path = diagonal + _walk(diagonal[-1], Direction.W, (n - i) // 2)[1:]
        else:
            path = _walk((-n + i, -i), Direction.E, n - i)
        paths.append(tuple(path))
    return tuple(paths)


def path_edges(path: Sequence[Vertex]) -> List[Edge]:
    return [make_edge(a, b) for a, b in zip(path, path[1:])]


@lru_cache(maxsize=None)
def target_grove(n: int) -> Grove:
    """The canonical target grove of size n; its triangle is the identity.

    Raises:
        BoardError: If ``n < 1``.
    """
    build_board(n)
    edges = frozenset(e for path in target_paths(n) for e in path_edges(path))
    return Grove(n, edges)


def group_labels(n: int) -> Dict[str, str]:
    """Map each boundary-set label to its group role.

    The innermost west, east and south pairs are the groups ``W``, ``E`` and
    ``S``; every other set maps to its own label.
    """
    board = build_board(n)
    roles = {block.label: block.label for block in board.partition}
    for kind, role in (("west", "W"), ("east", "E"), ("south", "S")):
        candidates = [b for b in board.partition if b.kind == kind]
        if candidates:
            innermost = min(candidates, key=lambda b: b.index)
            roles[innermost.label] = role
    return roles
