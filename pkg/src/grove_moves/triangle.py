"""
Alternating sign triangles read off groves, and the three local moves.

Entry ``(r, c)`` of the triangle belongs to the downward triangle whose apex
is ``board.apex_at(r, c)``; it holds ``1 - e`` where ``e`` is the number of
grove edges on that triangle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Tuple

from .board import build_board, triangle_edges
from .exceptions import InvalidGroveError, MoveRangeError, NotAnAstError
from .grove import Grove, validate_grove

logger = logging.getLogger(__name__)

ADD = 1
SUBTRACT = -1


@dataclass(frozen=True)
class Ast:
    """A triangular integer array; row ``r`` (1-based) has ``n + 1 - r`` entries.

    The same type carries intermediate arrays produced by moves, so entries
    outside ``{-1, 0, 1}`` are representable; see :attr:`entries_in_range`.
    """

    n: int
    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Ast":
        n = len(rows)
        if n < 1:
            raise NotAnAstError("A triangle needs at least one row")
        for r, row in enumerate(rows, start=1):
            if len(row) != n + 1 - r:
                raise NotAnAstError(
                    f"Row {r} has {len(row)} entries, expected {n + 1 - r}"
                )
            for value in row:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise NotAnAstError(f"Row {r} holds a non-integer entry {value!r}")
        return cls(n, tuple(tuple(row) for row in rows))

    def entry(self, row: int, col: int) -> int:
        return self.rows[row - 1][col - 1]

    @property
    def entries_in_range(self) -> bool:
        return all(v in (-1, 0, 1) for row in self.rows for v in row)

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        width = max(len(str(v)) for row in self.rows for v in row)
        lines = []
        for r, row in enumerate(self.rows):
            cells = " ".join(str(v).rjust(width) for v in row)
            lines.append(" " * (r * (width + 1) // 2) + cells)
        return "\n".join(lines)


class MoveKind(Enum):
    """Entry deltas on the anchored triple ``(r,c), (r,c+1), (r+1,c)``."""

    M1 = (-1, 1, 0)
    M2 = (1, 0, -1)
    M3 = (0, -1, 1)

    @property
    def deltas(self) -> Tuple[int, int, int]:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "MoveKind":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise NotAnAstError(f"Unknown move kind '{name}'; expected M1, M2 or M3")


@dataclass(frozen=True)
class MovePos:
    row: int
    col: int
    sign: int = ADD

    @property
    def sign_name(self) -> str:
        return "add" if self.sign == ADD else "subtract"


@dataclass(frozen=True)
class Move:
    """One signed move: a position (with sign) and a kind."""

    pos: MovePos
    kind: MoveKind

    def inverse(self) -> "Move":
        return Move(MovePos(self.pos.row, self.pos.col, -self.pos.sign), self.kind)

    def __str__(self) -> str:
        return f"{self.pos.sign_name} {self.kind.name} at ({self.pos.row},{self.pos.col})"


@dataclass(frozen=True)
class MoveResult:
    array: Ast
    entries_in_range: bool


def check_move_range(n: int, row: int, col: int) -> None:
    if not (1 <= row <= n - 1 and 1 <= col <= n - row):
        raise MoveRangeError(n, row, col)


def grove_to_ast(g: Grove, check: bool = True) -> Ast:
    """Read the alternating sign triangle of a grove.

    Args:
        g: A grove. The bare ``Grove`` constructor does not validate, so the
            edges are checked here unless ``check`` is false.
        check: Validate first; pass False when the caller guarantees a grove.

    Returns:
        Ast: Entry ``(r, c)`` is ``1 - e`` for the triangle at ``apex_at(r, c)``.

    Raises:
        InvalidGroveError: If ``check`` is set and the edges break an axiom.
    """
    board = build_board(g.n)
    if check:
        report = validate_grove(board, g.edges)
        if not report.is_valid:
            raise InvalidGroveError(report.violations)
    rows: List[List[int]] = []
    for r in range(1, g.n + 1):
        row = []
        for c in range(1, g.n + 2 - r):
            apex = board.apex_at(r, c)
            e = sum(1 for edge in triangle_edges(board, apex) if edge in g.edges)
            row.append(1 - e)
        rows.append(row)
    return Ast(g.n, tuple(tuple(row) for row in rows))


def identity_ast(n: int) -> Ast:
    """The triangle of the target grove: ones on the diagonal down to row ceil(n/2)."""
    build_board(n)
    half = (n + 1) // 2
    return Ast(
        n,
        tuple(
            tuple(1 if c == r and r <= half else 0 for c in range(1, n + 2 - r))
            for r in range(1, n + 1)
        ),
    )


def apply_move(a: Ast, pos: MovePos, kind: MoveKind) -> MoveResult:
    """Add or subtract a move's deltas at the anchored triple.

    Membership of the result in the set of triangles of groves is not
    checked; only whether every entry stays in ``{-1, 0, 1}``.

    Raises:
        MoveRangeError: If the anchor has no full triple.
    """
    check_move_range(a.n, pos.row, pos.col)
    rows = [list(row) for row in a.rows]
    cells = ((pos.row, pos.col), (pos.row, pos.col + 1), (pos.row + 1, pos.col))
    for (r, c), delta in zip(cells, kind.deltas):
        rows[r - 1][c - 1] += pos.sign * delta
    result = Ast(a.n, tuple(tuple(row) for row in rows))
    return MoveResult(result, result.entries_in_range)


def apply_moves(a: Ast, moves: Iterable[Move]) -> Ast:
    for move in moves:
        a = apply_move(a, move.pos, move.kind).array
    return a


def ast_sum(a: Ast) -> int:
    return sum(sum(row) for row in a.rows)
