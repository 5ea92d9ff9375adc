"""
SVG and plain-text pictures of groves and difference groves.

Vertex ``(i, j)`` is drawn at ``x = (i + n) / 2 * unit``, ``y = -j * unit``,
so row 0 is on top and each row shifts half a unit, the usual drawing of
groves on the triangular lattice.
"""

import logging
from typing import Dict, List, Optional

from jinja2 import Environment, PackageLoader, StrictUndefined

from .board import Edge, build_board
from .config import DEFAULT_SETTINGS, Settings
from .grove import Grove
from .reduction import diff_grove

logger = logging.getLogger(__name__)

RED = "#FF0000"
BLUE = "#0000FF"
BLACK = "#000000"

_env = Environment(
    loader=PackageLoader("grove_moves", "templates"),
    undefined=StrictUndefined,
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def _num(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else f"{value:.1f}"


def _colored_edges(g: Grove, diff: bool) -> List[tuple]:
    if not diff:
        return [(e, BLACK) for e in sorted(g.edges)]
    d = diff_grove(g)
    colored = [(e, RED) for e in d.red]
    colored += [(e, BLUE) for e in d.blue]
    colored += [(e, BLACK) for e in d.black]
    return sorted(colored)


def render_svg(
    g: Grove,
    diff: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
    title: Optional[str] = None,
) -> str:
    """Render a grove, or its difference grove when ``diff`` is set, as SVG 1.1.

    Plain groves use black edges. Difference renders colour grove-only edges
    red, shared edges blue and missing target edges black. Output is
    byte-identical for identical input.
    """
    n = g.n
    unit = settings.render_unit
    radius = settings.render_radius

    def x(i: int) -> str:
        return _num((i + n) / 2 * unit)

    def y(j: int) -> str:
        return _num(-j * unit)

    lines: List[Dict[str, str]] = []
    for (u, v), color in _colored_edges(g, diff):
        lines.append(
            {"x1": x(u[0]), "y1": y(u[1]), "x2": x(v[0]), "y2": y(v[1]), "color": color}
        )
    dots = [{"cx": x(i), "cy": y(j)} for i, j in sorted(build_board(n).vertices)]

    pad = 2 * radius
    width = n * unit + 2 * pad
    height = n * unit + 2 * pad
    template = _env.get_template("grove.svg.j2")
    svg = template.render(
        width=width,
        height=height,
        view_box=f"{-pad} {-pad} {width} {height}",
        title=title or (f"Difference grove of size {n}" if diff else f"Grove of size {n}"),
        stroke_width=max(1, unit // 20),
        radius=radius,
        lines=lines,
        dots=dots,
    )
    logger.debug("Rendered %d edges and %d vertices", len(lines), len(dots))
    return svg


def render_text(g: Grove, diff: bool = False) -> str:
    """ASCII picture of a grove.

    Vertices are ``o``. Present edges are drawn with ``-``, ``\\`` and ``/``.
    With ``diff`` set, red edges are drawn with ``r`` and missing target
    edges with ``.``.
    """
    n = g.n
    grid = [[" "] * (4 * n + 1) for _ in range(2 * n + 1)]

    def put(edge: Edge, mark: Optional[str]) -> None:
        upper, lower = sorted(edge, key=lambda v: -v[1])
        row, col = -2 * upper[1], 2 * (upper[0] + n)
        if upper[1] == lower[1]:
            left = 2 * (min(upper[0], lower[0]) + n)
            for k in range(1, 4):
                grid[row][left + k] = mark or "-"
        elif lower[0] > upper[0]:
            grid[row + 1][col + 1] = mark or "\\"
        else:
            grid[row + 1][col - 1] = mark or "/"

    if diff:
        d = diff_grove(g)
        for e in sorted(d.blue):
            put(e, None)
        for e in sorted(d.red):
            put(e, "r")
        for e in sorted(d.black):
            put(e, ".")
    else:
        for e in sorted(g.edges):
            put(e, None)
    for i, j in build_board(n).vertices:
        grid[-2 * j][2 * (i + n)] = "o"
    return "\n".join("".join(row).rstrip() for row in grid) + "\n"
