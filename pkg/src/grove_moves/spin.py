"""
Spins: rotating one grove edge about a pivot vertex to a neighbouring direction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .board import (
    Direction,
    Vertex,
    build_board,
    direction_between,
    make_edge,
    rotate_direction,
    step,
)
from .exceptions import SpinError
from .grove import ACYCLICITY, Grove, validate_grove
from .triangle import ADD, SUBTRACT, Move, MoveKind, MovePos, check_move_range

logger = logging.getLogger(__name__)

# Unordered direction pair -> spin type; the lower clockwise index comes first.
_TYPES = {
    (Direction.NW, Direction.NE): 1,
    (Direction.NE, Direction.E): 2,
    (Direction.E, Direction.SE): 3,
    (Direction.SE, Direction.SW): 4,
    (Direction.SW, Direction.W): 5,
    (Direction.NW, Direction.W): 6,
}

MISSING_EDGE = "missing-edge"
OFF_BOARD = "off-board"
EDGE_PRESENT = "edge-present"
CYCLE = "cycle"
PARTITION = "partition"
NOT_ADJACENT = "not-adjacent"


@dataclass(frozen=True)
class Spin:
    pivot: Vertex
    from_dir: Direction
    to_dir: Direction

    def __str__(self) -> str:
        x, y = self.pivot
        return f"(({x},{y}),{self.from_dir.name},{self.to_dir.name})"

    def sort_key(self) -> Tuple[Vertex, int, int]:
        return (self.pivot, self.from_dir.index, self.to_dir.index)

    @property
    def is_clockwise(self) -> bool:
        return rotate_direction(self.from_dir, clockwise=True) is self.to_dir

    @property
    def removed_edge(self):
        return make_edge(self.pivot, step(self.pivot, self.from_dir))

    @property
    def added_edge(self):
        return make_edge(self.pivot, step(self.pivot, self.to_dir))


def reverse(s: Spin) -> Spin:
    return Spin(s.pivot, s.to_dir, s.from_dir)


def spin_type(s: Spin) -> Tuple[int, bool]:
    """Return the spin's type (1-6) and whether it turns clockwise.

    Raises:
        SpinError: If the two directions are not cyclically adjacent.
    """
    clockwise = rotate_direction(s.from_dir, clockwise=True) is s.to_dir
    if not clockwise and rotate_direction(s.from_dir, clockwise=False) is not s.to_dir:
        raise SpinError(s, NOT_ADJACENT, "directions must be cyclic neighbours")
    pair = tuple(sorted((s.from_dir, s.to_dir), key=lambda d: d.index))
    return _TYPES[pair], clockwise  # type: ignore[index]


def apply_spin(g: Grove, s: Spin) -> Grove:
    """Replace the pivot's ``from`` edge by its ``to`` edge.

    Legality is extensional: the resulting edge set must satisfy every grove
    axiom, whatever the pivot's degree.

    Args:
        g: A valid grove.
        s: The spin to apply.

    Returns:
        Grove: The spun grove.

    Raises:
        SpinError: With ``cause`` one of ``not-adjacent``, ``missing-edge``,
            ``off-board``, ``edge-present``, ``cycle`` or ``partition``.
    """
    spin_type(s)
    board = build_board(g.n)
    source = step(s.pivot, s.from_dir)
    if s.pivot not in board.vertices or source not in board.vertices:
        raise SpinError(s, MISSING_EDGE, f"no edge at {s.from_dir.name} of {s.pivot}")
    removed = make_edge(s.pivot, source)
    if removed not in g.edges:
        raise SpinError(s, MISSING_EDGE, f"edge {removed} is not in the grove")
    target = step(s.pivot, s.to_dir)
    if target not in board.vertices:
        raise SpinError(s, OFF_BOARD, f"{target} is not on the board")
    added = make_edge(s.pivot, target)
    if added in g.edges:
        raise SpinError(s, EDGE_PRESENT, f"edge {added} is already in the grove")

    edges = (g.edges - {removed}) | {added}
    report = validate_grove(board, edges)
    if not report.is_valid:
        if report.by_axiom(ACYCLICITY):
            raise SpinError(s, CYCLE, f"adding {added} closes a cycle")
        raise SpinError(s, PARTITION, report.violations[0].message)
    return Grove(g.n, edges)


def try_spin(g: Grove, s: Spin) -> Optional[Grove]:
    try:
        return apply_spin(g, s)
    except SpinError:
        return None


def candidate_spins(g: Grove) -> List[Spin]:
    """Every rotation of every grove edge about either endpoint, in canonical order."""
    out = []
    for u, v in g.edges:
        for pivot, other in ((u, v), (v, u)):
            d = direction_between(pivot, other)
            assert d is not None
            for clockwise in (True, False):
                out.append(Spin(pivot, d, rotate_direction(d, clockwise)))
    return sorted(out, key=Spin.sort_key)


def legal_spins(g: Grove) -> List[Spin]:
    return [s for s in candidate_spins(g) if try_spin(g, s) is not None]


def legal_successors(g: Grove) -> List[Tuple[Spin, Grove]]:
    """Legal spins of ``g`` paired with the groves they produce."""
    out = []
    for s in candidate_spins(g):
        h = try_spin(g, s)
        if h is not None:
            out.append((s, h))
    return out


def spin_ast_delta(g: Grove, s: Spin) -> Optional[Move]:
    """The triangle move a legal spin induces, or None for types 1, 3 and 5.

    Raises:
        SpinError: If ``s`` is not legal in ``g``.
    """
    apply_spin(g, s)
    kind_type, clockwise = spin_type(s)
    if kind_type % 2:
        return None
    board = build_board(g.n)
    r, c = board.apex_position(s.pivot)
    sign = ADD if clockwise else SUBTRACT
    if kind_type == 2:
        row, col, kind = r, c, MoveKind.M2
    elif kind_type == 4:
        row, col, kind = r + 1, c - 1, MoveKind.M1
    else:
        row, col, kind = r, c - 1, MoveKind.M3
    check_move_range(g.n, row, col)
    return Move(MovePos(row, col, sign), kind)
