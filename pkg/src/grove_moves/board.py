"""
Geometry of the size-n triangular lattice.

Vertices are integer pairs ``(i, j)`` with ``j <= 0``, ``i + j >= -n``,
``i - j <= n`` and ``i + j = n (mod 2)``. Row 0 is drawn on top, so a
"downward triangle" has its apex below its horizontal top edge.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx

from .exceptions import BoardError

logger = logging.getLogger(__name__)

Vertex = Tuple[int, int]
Edge = Tuple[Vertex, Vertex]


class Direction(Enum):
    """The six edge directions around a vertex, declared in clockwise order."""

    NW = (-1, 1)
    NE = (1, 1)
    E = (2, 0)
    SE = (1, -1)
    SW = (-1, -1)
    W = (-2, 0)

    @property
    def offset(self) -> Vertex:
        return self.value

    @property
    def index(self) -> int:
        return _CLOCKWISE.index(self)

    def opposite(self) -> "Direction":
        return _CLOCKWISE[(self.index + 3) % 6]

    @classmethod
    def parse(cls, name: str) -> "Direction":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise BoardError(
                f"Unknown direction '{name}'; expected one of "
                f"{', '.join(d.name for d in _CLOCKWISE)}"
            )


_CLOCKWISE: Tuple[Direction, ...] = tuple(Direction)
_BY_OFFSET: Dict[Vertex, Direction] = {d.offset: d for d in _CLOCKWISE}


def rotate_direction(d: Direction, clockwise: bool = True) -> Direction:
    """Return the cyclic successor (clockwise) or predecessor of ``d``."""
    step = 1 if clockwise else -1
    return _CLOCKWISE[(d.index + step) % 6]


def step(v: Vertex, d: Direction) -> Vertex:
    return (v[0] + d.offset[0], v[1] + d.offset[1])


def direction_between(u: Vertex, v: Vertex) -> Optional[Direction]:
    """Direction of the lattice step from ``u`` to ``v``, or None if not adjacent."""
    return _BY_OFFSET.get((v[0] - u[0], v[1] - u[1]))


def make_edge(u: Vertex, v: Vertex) -> Edge:
    """Canonical edge: lexicographically smaller endpoint first."""
    if u == v:
        raise BoardError(f"Edge endpoints must be distinct, got {u} twice")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class BoundarySet:
    """One block of the boundary partition.

    ``kind`` is one of ``corner``, ``west``, ``east``, ``south`` or ``middle``;
    ``index`` is the defining parameter ``i`` for pairs (0 otherwise).
    """

    kind: str
    index: int
    vertices: FrozenSet[Vertex]
    label: str


@dataclass(frozen=True)
class Board:
    n: int
    vertices: FrozenSet[Vertex]
    edges: FrozenSet[Edge]
    apexes: Tuple[Vertex, ...]
    partition: Tuple[BoundarySet, ...]
    graph: nx.Graph = field(compare=False, repr=False, hash=False)
    _set_of: Dict[Vertex, int] = field(compare=False, repr=False, hash=False)

    def contains(self, v: Vertex) -> bool:
        return v in self.vertices

    def require_vertex(self, v: Vertex) -> None:
        if v not in self.vertices:
            raise BoardError(f"Vertex {v} is not on the board of size {self.n}")

    def set_index(self, v: Vertex) -> Optional[int]:
        """Index of the boundary set containing ``v``, or None for interior vertices."""
        return self._set_of.get(v)

    @property
    def interior(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(v for v in self.vertices if v not in self._set_of))

    def neighbors(self, v: Vertex) -> Iterator[Tuple[Direction, Vertex]]:
        for d in _CLOCKWISE:
            w = step(v, d)
            if w in self.vertices:
                yield d, w

    def apex_position(self, apex: Vertex) -> Tuple[int, int]:
        """1-based (row, column) of an apex in the triangle reading order."""
        r = -apex[1]
        return r, (apex[0] + self.n - r) // 2 + 1

    def apex_at(self, row: int, col: int) -> Vertex:
        return (-(self.n - row) + 2 * (col - 1), -row)


def on_board(n: int, v: Vertex) -> bool:
    i, j = v
    return j <= 0 and i + j >= -n and i - j <= n and (i + j - n) % 2 == 0


def _boundary_partition(n: int) -> List[BoundarySet]:
    blocks = [
        BoundarySet("corner", 0, frozenset({(-n, 0)}), "corner-west"),
        BoundarySet("corner", 0, frozenset({(n, 0)}), "corner-east"),
        BoundarySet("corner", 0, frozenset({(0, -n)}), "corner-south"),
    ]
    for i in range(1, n):
        if (i - n) % 2 == 0:
            blocks.append(
                BoundarySet(
                    "west",
                    i,
                    frozenset({(-i, 0), ((-n - i) // 2, (-n + i) // 2)}),
                    f"west-{i}",
                )
            )
    for i in range(1, n):
        if (i - n) % 2 == 0:
            blocks.append(
                BoundarySet(
                    "east",
                    i,
                    frozenset({(i, 0), ((n + i) // 2, (-n + i) // 2)}),
                    f"east-{i}",
                )
            )
    for i in range(n // 2 + 1, n):
        blocks.append(
            BoundarySet(
                "south", i, frozenset({(-n + i, -i), (n - i, -i)}), f"south-{i}"
            )
        )
    if n % 2 == 0:
        half = n // 2
        blocks.append(
            BoundarySet(
                "middle",
                0,
                frozenset({(0, 0), (-half, -half), (half, -half)}),
                "middle",
            )
        )
    return blocks


@lru_cache(maxsize=None)
def build_board(n: int) -> Board:
    """Build the size-n board: vertices, edge universe, apexes and boundary partition.

    Args:
        n: Board size, at least 1.

    Returns:
        Board: An immutable board; results are cached per size.

    Raises:
        BoardError: If ``n < 1``.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise BoardError(f"Board size must be a positive integer, got {n!r}")

    vertices = frozenset(
        (i, j)
        for j in range(-n, 1)
        for i in range(-n, n + 1)
        if on_board(n, (i, j))
    )
    edges = frozenset(
        make_edge(v, step(v, d))
        for v in vertices
        for d in (Direction.E, Direction.SE, Direction.SW)
        if step(v, d) in vertices
    )
    apexes = tuple(
        sorted(
            (
                (a, b)
                for a, b in vertices
                if b <= -1 and (a - 1, b + 1) in vertices and (a + 1, b + 1) in vertices
            ),
            key=lambda v: (-v[1], v[0]),
        )
    )
    partition = tuple(_boundary_partition(n))
    set_of = {v: k for k, block in enumerate(partition) for v in block.vertices}

    graph = nx.Graph()
    graph.add_nodes_from(sorted(vertices))
    graph.add_edges_from(sorted(edges))

    logger.debug(
        "Built board n=%d: %d vertices, %d edges, %d apexes, %d boundary sets",
        n,
        len(vertices),
        len(edges),
        len(apexes),
        len(partition),
    )
    return Board(n, vertices, edges, apexes, partition, graph, set_of)


def adjacent_vertex(board: Board, v: Vertex, d: Direction) -> Optional[Vertex]:
    """Return ``v + offset(d)`` if it is on the board, else None."""
    board.require_vertex(v)
    w = step(v, d)
    return w if w in board.vertices else None


def require_edge(board: Board, e: Edge) -> Edge:
    u, v = e
    edge = make_edge(u, v)
    if edge not in board.edges:
        raise BoardError(f"Edge {edge} is not in the edge universe of size {board.n}")
    return edge


def owner_apex(board: Board, e: Edge) -> Vertex:
    """Apex of the unique downward triangle whose three edges include ``e``.

    Diagonal edges belong to the triangle hanging from their lower endpoint;
    a horizontal edge is the top side of the triangle just below its midpoint.
    """
    (x1, y1), (x2, y2) = require_edge(board, e)
    if y1 == y2:
        return ((x1 + x2) // 2, y1 - 1)
    return (x1, y1) if y1 < y2 else (x2, y2)


def triangle_edges(board: Board, apex: Vertex) -> Tuple[Edge, Edge, Edge]:
    """The two slanted sides and the top side of the triangle with this apex."""
    if apex not in board.apexes:
        raise BoardError(f"{apex} is not a downward-triangle apex of size {board.n}")
    a, b = apex
    left, right = (a - 1, b + 1), (a + 1, b + 1)
    return make_edge(apex, left), make_edge(apex, right), make_edge(left, right)


def is_boundary(board: Board, v: Vertex) -> bool:
    i, j = v
    return j == 0 or i + j == -board.n or i - j == board.n
