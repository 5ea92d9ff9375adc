"""
Difference groves and the constructive reduction of any grove to the target.

A reduction runs in phases. Each phase lowers the number of black edges
(target edges the grove is missing) by exactly one, using one of two
constructions:

* **piece**: a run of a target path that carries no boundary vertex and
  hangs from the rest of its component by a single red edge. Its free end
  vertices are slid off one at a time until the red edge sits on a vertex
  of degree one, which then spins freely onto a black edge.
* **cycle**: a black edge whose endpoints share a component closes a cycle
  with the grove. The cycle is shrunk until it encloses no vertex; the gap
  is then carried around it, restoring each blue edge it passes, until a
  red edge is dropped.

When neither applies, a breadth-first search over legal spins finds the
nearest grove with fewer black edges and the instance is logged as a
strategy gap.

Spins inside a phase may raise the black count for a moment; from one phase
to the next it falls strictly.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .board import (
    Direction,
    Edge,
    Vertex,
    build_board,
    direction_between,
    make_edge,
    rotate_direction,
)
from .config import DEFAULT_SETTINGS, Settings
from .enumeration import ast_preimages
from .exceptions import (
    NotAnAstError,
    ReductionError,
    ReplayError,
    SlideError,
    SpinError,
)
from .grove import Grove, path_edges, target_grove, target_paths
from .spin import Spin, apply_spin, legal_successors, spin_ast_delta
from .triangle import Ast, Move, grove_to_ast

logger = logging.getLogger(__name__)

FREE = "free"
COMPONENT = "component"

PIECE_PHASE = "piece"
CYCLE_PHASE = "cycle"
SEARCH_PHASE = "search"
PHASE_KINDS = (PIECE_PHASE, CYCLE_PHASE, SEARCH_PHASE)


@dataclass(frozen=True)
class DiffGrove:
    n: int
    red: FrozenSet[Edge]
    black: FrozenSet[Edge]
    blue: FrozenSet[Edge]

    def to_dict(self) -> Dict[str, Any]:
        def listing(edges: FrozenSet[Edge]) -> List[List[List[int]]]:
            return [[list(u), list(v)] for u, v in sorted(edges)]

        return {
            "n": self.n,
            "red": listing(self.red),
            "black": listing(self.black),
            "blue": listing(self.blue),
        }


@dataclass(frozen=True)
class SpinSeq:
    n: int
    spins: Tuple[Spin, ...] = ()

    def __len__(self) -> int:
        return len(self.spins)

    @property
    def all_clockwise(self) -> bool:
        return all(s.is_clockwise for s in self.spins)


@dataclass(frozen=True)
class ReductionPhase:
    """The spins of one phase and the black counts on either side of it."""

    kind: str
    spins: Tuple[Spin, ...]
    black_before: int
    black_after: int


@dataclass
class ReductionResult:
    """A reduction certificate plus how it was found."""

    start: Grove
    sequence: SpinSeq
    phases: List[ReductionPhase] = field(default_factory=list)
    spin_kinds: Dict[str, int] = field(default_factory=dict)

    def phase_count(self, kind: str) -> int:
        return sum(1 for p in self.phases if p.kind == kind)

    @property
    def piece_phases(self) -> int:
        return self.phase_count(PIECE_PHASE)

    @property
    def cycle_phases(self) -> int:
        return self.phase_count(CYCLE_PHASE)

    @property
    def search_phases(self) -> int:
        return self.phase_count(SEARCH_PHASE)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.start.n,
            "length": len(self.sequence),
            "clockwise": self.sequence.all_clockwise,
            "phases": {kind: self.phase_count(kind) for kind in PHASE_KINDS},
            "spin_kinds": dict(sorted(self.spin_kinds.items())),
        }


def diff_grove(g: Grove) -> DiffGrove:
    """Classify the edges of ``g`` against the target grove of the same size."""
    target = target_grove(g.n).edges
    return DiffGrove(
        g.n,
        red=frozenset(g.edges - target),
        black=frozenset(target - g.edges),
        blue=frozenset(g.edges & target),
    )


def classify_spin(g: Grove, s: Spin) -> str:
    """``free`` for an interior pivot of degree one, else ``component``."""
    board = build_board(g.n)
    if board.set_index(s.pivot) is None and g.degree(s.pivot) == 1:
        return FREE
    return COMPONENT


def replay_spins(g: Grove, seq: SpinSeq) -> Grove:
    """Apply the spins of ``seq`` in order.

    Raises:
        ReplayError: At the first illegal spin, with its index and cause.
    """
    for index, s in enumerate(seq.spins):
        try:
            g = apply_spin(g, s)
        except SpinError as e:
            raise ReplayError(index, e)
    return g


# ---------------------------------------------------------------------------
# Turning an edge about its pivot
# ---------------------------------------------------------------------------


def _direction(u: Vertex, v: Vertex) -> Direction:
    d = direction_between(u, v)
    if d is None:
        raise ReductionError(f"{u} and {v} are not adjacent")
    return d


def _rotation(
    pivot: Vertex, start: Direction, end: Direction, clockwise: bool
) -> List[Spin]:
    spins = []
    d = start
    while d is not end:
        nxt = rotate_direction(d, clockwise)
        spins.append(Spin(pivot, d, nxt))
        d = nxt
    return spins


def _turn(
    pivot: Vertex, start: Direction, end: Direction, clockwise_only: bool
) -> List[Spin]:
    """Spins turning the pivot's edge at ``start`` round to ``end``.

    Clockwise only, or else the shorter way round (clockwise on a tie).
    """
    forward = _rotation(pivot, start, end, True)
    if clockwise_only:
        return forward
    backward = _rotation(pivot, start, end, False)
    return backward if len(backward) < len(forward) else forward


# ---------------------------------------------------------------------------
# Paths, runs and slides
# ---------------------------------------------------------------------------


def _path_of(n: int, e: Edge) -> Tuple[Vertex, ...]:
    for path in target_paths(n):
        if e in path_edges(path):
            return path
    raise SlideError(e, None, "edge is not on any target path")


def _runs(g: Grove, path: Sequence[Vertex]) -> List[Tuple[Vertex, ...]]:
    runs: List[Tuple[Vertex, ...]] = []
    current = [path[0]]
    for k, e in enumerate(path_edges(path)):
        if e in g.edges:
            current.append(path[k + 1])
        else:
            runs.append(tuple(current))
            current = [path[k + 1]]
    runs.append(tuple(current))
    return runs


def blue_segments(g: Grove) -> List[Tuple[Vertex, ...]]:
    """Maximal runs of a target path between black edges.

    Only paths with at least one black edge contribute; each run is listed
    as its vertices in path order.
    """
    segments: List[Tuple[Vertex, ...]] = []
    for path in target_paths(g.n):
        runs = _runs(g, path)
        if len(runs) > 1:
            segments.extend(runs)
    return segments


def segments_without_red(g: Grove) -> List[Tuple[Vertex, ...]]:
    """Blue segments with no red edge at any vertex; always empty for a grove."""
    red = diff_grove(g).red
    return [
        seg
        for seg in blue_segments(g)
        if not any(v in e for v in seg for e in red)
    ]


def slide_black_step(
    g: Grove, black_e: Edge, toward: Vertex, clockwise_only: bool = False
) -> Tuple[Grove, Tuple[Spin, ...]]:
    """Move a gap one edge along its target path toward ``toward``.

    The gap's endpoint nearer to ``toward`` is the pivot. Its edge to the
    next path vertex is turned one direction at a time until it lands on
    ``black_e``, and the edge it left becomes the gap. An interior pivot of
    degree one turns freely, so the step always succeeds there, straight
    stretches of the path included.

    Args:
        g: A valid grove missing ``black_e``.
        black_e: A target edge absent from ``g``.
        toward: A vertex on the same target path.
        clockwise_only: Turn clockwise only; otherwise the shorter way.

    Returns:
        tuple: The new grove and the spins applied, in order.

    Raises:
        SlideError: When the step does not apply or one of its spins is illegal.
    """
    black_e = make_edge(*black_e)
    if black_e in g.edges:
        raise SlideError(black_e, toward, "edge is present, not a gap")
    path = _path_of(g.n, black_e)
    if toward not in path:
        raise SlideError(black_e, toward, "target vertex is not on the same path")
    a, b = path.index(black_e[0]), path.index(black_e[1])
    lo, hi = min(a, b), max(a, b)
    q = path.index(toward)
    if lo <= q <= hi:
        raise SlideError(black_e, toward, "gap already touches the target vertex")
    if q < lo:
        shared, nxt, far = path[lo], path[lo - 1], path[hi]
    else:
        shared, nxt, far = path[hi], path[hi + 1], path[lo]
    released = make_edge(shared, nxt)
    if released not in g.edges:
        raise SlideError(black_e, toward, f"next path edge {released} is also missing")
    spins = _turn(
        shared, _direction(shared, nxt), _direction(shared, far), clockwise_only
    )
    h = g
    for s in spins:
        try:
            h = apply_spin(h, s)
        except SpinError as e:
            raise SlideError(black_e, toward, f"{s} is illegal ({e.cause})")
    return h, tuple(spins)


def _piece_phase(
    g: Grove,
    path: Tuple[Vertex, ...],
    run: Tuple[Vertex, ...],
    red_edge: Edge,
    clockwise_only: bool,
) -> List[Spin]:
    # every run vertex but the red edge's foot has only path edges, so each
    # one in turn is a free end that slides across its black edge
    root = red_edge[0] if red_edge[0] in run else red_edge[1]
    anchor = red_edge[1] if root == red_edge[0] else red_edge[0]
    first = path.index(run[0])
    last = first + len(run) - 1
    spins: List[Spin] = []
    h = g
    for gap in (make_edge(path[first - 1], run[0]), make_edge(run[-1], path[last + 1])):
        while root not in gap:
            h, step_spins = slide_black_step(h, gap, root, clockwise_only)
            spins.extend(step_spins)
            gap = step_spins[0].removed_edge
    k = path.index(root)
    closings = [
        _turn(root, _direction(root, anchor), _direction(root, x), clockwise_only)
        for x in (path[k - 1], path[k + 1])
    ]
    spins.extend(min(closings, key=len))
    return spins


def _piece_candidates(
    g: Grove, clockwise_only: bool, target: FrozenSet[Edge]
) -> Iterator[List[Spin]]:
    board = build_board(g.n)
    red = sorted(g.edges - target)
    for path in target_paths(g.n):
        runs = _runs(g, path)
        if len(runs) == 1:
            continue
        for run in runs:
            if any(board.set_index(v) is not None for v in run):
                continue
            members = set(run)
            touching = [e for e in red if e[0] in members or e[1] in members]
            if len(touching) != 1:
                continue
            try:
                yield _piece_phase(g, path, run, touching[0], clockwise_only)
            except SlideError as err:
                logger.debug("Run %s cannot be slid off: %s", run, err.reason)


# ---------------------------------------------------------------------------
# Cycles closed by a black edge
# ---------------------------------------------------------------------------


def _area2(polygon: Sequence[Vertex]) -> int:
    """Twice the signed area; positive when ``polygon`` runs counterclockwise."""
    return sum(
        ax * by - bx * ay
        for (ax, ay), (bx, by) in zip(polygon, list(polygon[1:]) + [polygon[0]])
    )


def _winding(polygon: Sequence[Vertex], p: Vertex) -> int:
    px, py = p
    wn = 0
    for (ax, ay), (bx, by) in zip(polygon, list(polygon[1:]) + [polygon[0]]):
        cross = (bx - ax) * (py - ay) - (px - ax) * (by - ay)
        if ay <= py < by and cross > 0:
            wn += 1
        elif by <= py < ay and cross < 0:
            wn -= 1
    return wn


def _empty_cycle(
    n: int, graph: nx.Graph, black_e: Edge, black: Sequence[Edge]
) -> List[Vertex]:
    """A cycle closed by a black edge that encloses no vertex.

    Any black edge with an endpoint strictly inside the current cycle closes
    a cycle enclosing strictly less area, so the loop ends; when no such
    edge remains, an enclosed vertex would put a cycle in the grove itself.
    The cycle is returned counterclockwise, its gap joining the last vertex
    to the first.
    """
    vertices = build_board(n).vertices
    e = black_e
    while True:
        cycle: List[Vertex] = nx.shortest_path(graph, e[0], e[1])
        on_cycle = set(cycle)
        inside = {v for v in vertices if v not in on_cycle and _winding(cycle, v)}
        inner = [b for b in black if b[0] in inside or b[1] in inside]
        if not inner:
            break
        e = inner[0]
    if _area2(cycle) < 0:
        cycle.reverse()
    return cycle


def _gap_travel(
    cycle: Sequence[Vertex], target: FrozenSet[Edge], clockwise: bool
) -> List[Spin]:
    """Spins carrying the gap round ``cycle`` until a red edge is let go.

    Clockwise travel pivots at the gap's tail and turns the tail's other
    cycle edge across the enclosed side onto the gap; counterclockwise
    travel does the same at the head. Every blue edge let go on the way is
    put back by the next step.
    """
    m = len(cycle)
    tail = m - 1
    spins: List[Spin] = []
    for _ in range(m):
        if clockwise:
            pivot = cycle[tail]
            released, restored = cycle[(tail - 1) % m], cycle[(tail + 1) % m]
            tail = (tail - 1) % m
        else:
            pivot = cycle[(tail + 1) % m]
            released, restored = cycle[(tail + 2) % m], cycle[tail]
            tail = (tail + 1) % m
        start, end = _direction(pivot, released), _direction(pivot, restored)
        spins.extend(_rotation(pivot, start, end, clockwise))
        if make_edge(pivot, released) not in target:
            return spins
    raise ReductionError(f"Cycle {list(cycle)} has no red edge")


def _cycle_candidates(
    g: Grove, clockwise_only: bool, target: FrozenSet[Edge]
) -> Iterator[List[Spin]]:
    graph = g.graph()
    component = {
        v: k for k, comp in enumerate(nx.connected_components(graph)) for v in comp
    }
    black = sorted(target - g.edges)
    for _, _, e in _black_edges_in_order(g):
        if component[e[0]] != component[e[1]]:
            continue
        cycle = _empty_cycle(g.n, graph, e, black)
        plans = [_gap_travel(cycle, target, True)]
        if not clockwise_only:
            plans.append(_gap_travel(cycle, target, False))
        yield min(plans, key=len)


# ---------------------------------------------------------------------------
# Phases
# ---------------------------------------------------------------------------


def _group_order(n: int) -> List[int]:
    """Partition indices in order: east, west, south (outer first), then middle."""
    board = build_board(n)
    order: List[int] = []
    for kind in ("east", "west", "south", "middle"):
        blocks = [k for k, b in enumerate(board.partition) if b.kind == kind]
        order.extend(sorted(blocks, key=lambda k: -board.partition[k].index))
    return order


def _black_edges_in_order(g: Grove) -> List[Tuple[Tuple[Vertex, ...], int, Edge]]:
    paths = target_paths(g.n)
    out = []
    for k in _group_order(g.n):
        for idx, e in enumerate(path_edges(paths[k])):
            if e not in g.edges:
                out.append((paths[k], idx, e))
    return out


def _black_count(g: Grove, target: FrozenSet[Edge]) -> int:
    return len(target - g.edges)


def _search_phase(
    g: Grove, clockwise_only: bool, target: FrozenSet[Edge], settings: Settings
) -> List[Spin]:
    goal = _black_count(g, target)
    parents: Dict[Grove, Tuple[Optional[Grove], Optional[Spin]]] = {g: (None, None)}
    queue = deque([g])
    while queue:
        current = queue.popleft()
        for s, h in legal_successors(current):
            if clockwise_only and not s.is_clockwise:
                continue
            if h in parents:
                continue
            parents[h] = (current, s)
            if len(parents) > settings.search_state_limit:
                raise ReductionError(
                    f"Fallback search at n={g.n} visited more than "
                    f"{settings.search_state_limit} groves (search_state_limit)"
                )
            if _black_count(h, target) < goal:
                spins: List[Spin] = []
                node: Optional[Grove] = h
                while node is not None:
                    prev, via = parents[node]
                    if via is not None:
                        spins.append(via)
                    node = prev
                return list(reversed(spins))
            queue.append(h)
    raise ReductionError(
        f"No spin sequence lowers the black count below {goal} at n={g.n}"
    )


def _next_phase(
    g: Grove, clockwise_only: bool, target: FrozenSet[Edge], settings: Settings
) -> Tuple[str, List[Spin]]:
    candidates = [
        (PIECE_PHASE, spins) for spins in _piece_candidates(g, clockwise_only, target)
    ]
    candidates += [
        (CYCLE_PHASE, spins) for spins in _cycle_candidates(g, clockwise_only, target)
    ]
    if candidates:
        return min(candidates, key=lambda c: len(c[1]))
    logger.warning(
        "Strategy gap at n=%d with %d black edges; searching for a lower count",
        g.n,
        _black_count(g, target),
    )
    return SEARCH_PHASE, _search_phase(g, clockwise_only, target, settings)


def reduce_with_report(
    g: Grove, clockwise_only: bool = False, settings: Settings = DEFAULT_SETTINGS
) -> ReductionResult:
    """Reduce ``g`` to the target grove and report how each phase was resolved.

    Among the piece and cycle phases available at each step the one with
    the fewest spins is taken, earliest first on a tie.

    Args:
        g: A valid grove.
        clockwise_only: Emit clockwise spins only.
        settings: ``search_state_limit`` bounds the fallback search.

    Returns:
        ReductionResult: The sequence with its phases and spin-kind counts.

    Raises:
        ReductionError: If a phase fails to lower the black count or the
            fallback search gives up.
    """
    target = target_grove(g.n).edges
    kinds: Counter = Counter()
    phases: List[ReductionPhase] = []
    current = g
    before = _black_count(current, target)
    while before:
        kind, spins = _next_phase(current, clockwise_only, target, settings)
        for s in spins:
            kinds[classify_spin(current, s)] += 1
            try:
                current = apply_spin(current, s)
            except SpinError as e:
                raise ReductionError(
                    f"The {kind} phase produced an illegal spin {s}: {e.cause}",
                    original_error=e,
                )
        after = _black_count(current, target)
        if after >= before:
            raise ReductionError(
                f"Phase did not lower the black count ({before} -> {after})"
            )
        logger.debug(
            "%s phase, %d spin(s): black edges %d -> %d",
            kind,
            len(spins),
            before,
            after,
        )
        phases.append(ReductionPhase(kind, tuple(spins), before, after))
        before = after

    result = ReductionResult(
        g,
        SpinSeq(g.n, tuple(s for p in phases for s in p.spins)),
        phases,
        dict(kinds),
    )
    logger.info(
        "Reduced grove of size %d in %d spins (%d piece, %d cycle, %d search phases)",
        g.n,
        len(result.sequence),
        result.piece_phases,
        result.cycle_phases,
        result.search_phases,
    )
    return result


def reduce_to_target(
    g: Grove, clockwise_only: bool = False, settings: Settings = DEFAULT_SETTINGS
) -> SpinSeq:
    """Return a legal spin sequence from ``g`` to the target grove."""
    return reduce_with_report(g, clockwise_only, settings).sequence


def ast_deltas(g: Grove, seq: SpinSeq) -> List[Move]:
    """Triangle moves induced along a replay of ``seq`` from ``g``."""
    moves = []
    for s in seq.spins:
        delta = spin_ast_delta(g, s)
        if delta is not None:
            moves.append(delta)
        g = apply_spin(g, s)
    return moves


def _preimage(a: Ast, settings: Settings) -> Grove:
    target = target_grove(a.n)
    if grove_to_ast(target) == a:
        return target
    found = ast_preimages(a, settings)
    if not found:
        raise NotAnAstError(f"The triangle has no grove of size {a.n} mapping to it")
    return found[0]


def move_path(
    a1: Ast,
    a2: Ast,
    clockwise_only: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
) -> List[Move]:
    """Signed moves turning ``a1`` into ``a2`` through triangles of groves.

    The path reduces a preimage of ``a1`` to the target, then follows the
    reduction of a preimage of ``a2`` backwards.

    Raises:
        NotAnAstError: If either array has no grove preimage.
    """
    if a1.n != a2.n:
        raise ReductionError(f"Triangles of sizes {a1.n} and {a2.n} cannot be joined")
    if a1 == a2:
        return []
    g1, g2 = _preimage(a1, settings), _preimage(a2, settings)
    forward = ast_deltas(g1, reduce_to_target(g1, clockwise_only, settings))
    backward = ast_deltas(g2, reduce_to_target(g2, clockwise_only, settings))
    return forward + [m.inverse() for m in reversed(backward)]


def spin_sequence_groves(g: Grove, spins: Sequence[Spin]) -> List[Grove]:
    """The groves visited by replaying ``spins`` from ``g``, including both ends."""
    out = [g]
    for s in spins:
        out.append(apply_spin(out[-1], s))
    return out
