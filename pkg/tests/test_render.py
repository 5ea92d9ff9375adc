"""Tests for SVG and text rendering."""

import xml.etree.ElementTree as ET

import pytest

from grove_moves.config import Settings
from grove_moves.grove import Grove, target_grove
from grove_moves.render import BLACK, BLUE, RED, render_svg, render_text

SVG = "{http://www.w3.org/2000/svg}"


def parse(svg):
    return ET.fromstring(svg.encode("utf-8"))


class TestRenderSvg:
    def test_size_one_has_three_dots(self):
        root = parse(render_svg(Grove(1, frozenset())))
        assert len(root.findall(f".//{SVG}circle")) == 3
        assert root.findall(f".//{SVG}line") == []

    def test_one_line_per_edge(self, sample_grove):
        root = parse(render_svg(sample_grove))
        lines = root.findall(f".//{SVG}line")
        assert len(lines) == 8
        assert {line.get("stroke") for line in lines} == {BLACK}

    def test_diff_colours(self, sample_grove):
        root = parse(render_svg(sample_grove, diff=True))
        strokes = [line.get("stroke") for line in root.findall(f".//{SVG}line")]
        assert strokes.count(RED) == 4
        assert strokes.count(BLACK) == 4
        assert strokes.count(BLUE) == 4

    def test_deterministic(self, sample_grove):
        assert render_svg(sample_grove, diff=True) == render_svg(sample_grove, diff=True)

    def test_geometry_follows_settings(self):
        svg = render_svg(target_grove(2), settings=Settings(render_unit=10, render_radius=1))
        root = parse(svg)
        assert root.get("width") == "24"
        assert root.get("viewBox") == "-2 -2 24 24"
        # (0,0) sits at x = (0 + 2) / 2 * 10
        assert any(c.get("cx") == "10" and c.get("cy") == "0" for c in root.iter(f"{SVG}circle"))

    def test_title(self):
        root = parse(render_svg(target_grove(2), title="Target"))
        assert root.find(f"{SVG}title").text == "Target"


class TestRenderText:
    def test_size_one(self):
        assert render_text(Grove(1, frozenset())) == "o   o\n\n  o\n"

    def test_target_size_two(self):
        assert render_text(target_grove(2)) == "o   o   o\n     \\\n  o---o\n\n    o\n"

    def test_diff_marks(self, small_grove):
        lines = render_text(small_grove, diff=True).splitlines()
        assert lines[1] == "   r ."
        assert lines[2] == "  o---o"

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_grid_height(self, n):
        assert len(render_text(target_grove(n)).splitlines()) == 2 * n + 1
