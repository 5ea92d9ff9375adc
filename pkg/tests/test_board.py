"""Tests for lattice geometry."""

import pytest

from grove_moves.board import (
    Direction,
    adjacent_vertex,
    build_board,
    direction_between,
    is_boundary,
    make_edge,
    on_board,
    owner_apex,
    rotate_direction,
    triangle_edges,
)
from grove_moves.exceptions import BoardError


class TestBuildBoard:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_counts(self, n):
        board = build_board(n)
        assert len(board.vertices) == (n + 1) * (n + 2) // 2
        assert len(board.edges) == 3 * n * (n + 1) // 2
        assert len(board.apexes) == n * (n + 1) // 2

    def test_size_one(self):
        board = build_board(1)
        assert board.vertices == {(-1, 0), (1, 0), (0, -1)}
        assert board.apexes == ((0, -1),)
        assert [b.label for b in board.partition] == [
            "corner-west",
            "corner-east",
            "corner-south",
        ]

    @pytest.mark.parametrize("n", [0, -3, 2.5, True])
    def test_rejects_bad_size(self, n):
        with pytest.raises(BoardError):
            build_board(n)

    def test_partition_size_four(self):
        board = build_board(4)
        by_label = {b.label: b.vertices for b in board.partition}
        assert by_label == {
            "corner-west": {(-4, 0)},
            "corner-east": {(4, 0)},
            "corner-south": {(0, -4)},
            "west-2": {(-2, 0), (-3, -1)},
            "east-2": {(2, 0), (3, -1)},
            "south-3": {(-1, -3), (1, -3)},
            "middle": {(0, 0), (-2, -2), (2, -2)},
        }

    def test_partition_size_five(self):
        board = build_board(5)
        labels = [b.label for b in board.partition]
        assert labels == [
            "corner-west",
            "corner-east",
            "corner-south",
            "west-1",
            "west-3",
            "east-1",
            "east-3",
            "south-3",
            "south-4",
        ]
        assert board.set_index((-1, 0)) == 3
        assert board.set_index((0, -1)) is None

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_partition_blocks_are_disjoint_and_on_board(self, n):
        board = build_board(n)
        seen = set()
        for block in board.partition:
            assert block.vertices <= board.vertices
            assert not (block.vertices & seen)
            seen |= block.vertices
            assert all(is_boundary(board, v) for v in block.vertices)

    def test_apex_position_round_trip(self):
        board = build_board(4)
        for apex in board.apexes:
            r, c = board.apex_position(apex)
            assert board.apex_at(r, c) == apex
        assert board.apex_at(1, 1) == (-3, -1)
        assert board.apex_at(4, 1) == (0, -4)


class TestDirections:
    def test_clockwise_cycle(self):
        d = Direction.NW
        order = []
        for _ in range(6):
            order.append(d.name)
            d = rotate_direction(d)
        assert order == ["NW", "NE", "E", "SE", "SW", "W"]
        assert d is Direction.NW

    def test_counterclockwise_is_inverse(self):
        for d in Direction:
            assert rotate_direction(rotate_direction(d), clockwise=False) is d

    def test_opposite(self):
        assert Direction.E.opposite() is Direction.W
        assert Direction.NW.opposite() is Direction.SE

    def test_parse(self):
        assert Direction.parse("sw") is Direction.SW
        with pytest.raises(BoardError, match="Unknown direction"):
            Direction.parse("N")

    def test_direction_between(self):
        assert direction_between((0, 0), (1, -1)) is Direction.SE
        assert direction_between((0, 0), (2, -2)) is None


class TestEdges:
    def test_make_edge_is_canonical(self):
        assert make_edge((1, -1), (0, 0)) == ((0, 0), (1, -1))
        with pytest.raises(BoardError):
            make_edge((0, 0), (0, 0))

    def test_adjacent_vertex(self):
        board = build_board(2)
        assert adjacent_vertex(board, (0, 0), Direction.SE) == (1, -1)
        assert adjacent_vertex(board, (0, 0), Direction.NE) is None
        with pytest.raises(BoardError):
            adjacent_vertex(board, (5, 5), Direction.E)

    def test_owner_apex(self):
        board = build_board(2)
        # diagonal edges belong to their lower endpoint
        assert owner_apex(board, ((0, 0), (1, -1))) == (1, -1)
        assert owner_apex(board, ((-1, -1), (0, 0))) == (-1, -1)
        # horizontal edges belong to the apex below their midpoint
        assert owner_apex(board, ((-1, -1), (1, -1))) == (0, -2)
        assert owner_apex(board, ((-2, 0), (0, 0))) == (-1, -1)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_every_edge_has_one_owner(self, n):
        board = build_board(n)
        owned = {}
        for apex in board.apexes:
            for e in triangle_edges(board, apex):
                assert e not in owned
                owned[e] = apex
        assert set(owned) == set(board.edges)
        assert all(owner_apex(board, e) == a for e, a in owned.items())

    def test_triangle_edges_rejects_non_apex(self):
        with pytest.raises(BoardError):
            triangle_edges(build_board(2), (0, 0))

    def test_on_board(self):
        assert on_board(2, (0, -2))
        assert not on_board(2, (1, 0))
        assert not on_board(2, (0, 1))
