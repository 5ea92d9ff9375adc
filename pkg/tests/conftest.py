import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path

import pytest

# Add the src directory to Python path
src_dir = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_dir))

from grove_moves.board import make_edge  # noqa: E402
from grove_moves.cli import main  # noqa: E402
from grove_moves.grove import Grove  # noqa: E402

# The size-4 grove whose triangle is [[0,1,0,0],[0,-1,1],[1,0],[0]].
SAMPLE_EDGES = [
    ((-2, 0), (-3, -1)),
    ((1, -1), (-1, -1)),
    ((-1, -1), (-2, -2)),
    ((-1, -1), (0, -2)),
    ((0, 0), (1, -1)),
    ((0, -2), (2, -2)),
    ((2, 0), (3, -1)),
    ((-1, -3), (1, -3)),
]

SMALL_EDGES = [((0, 0), (-1, -1)), ((-1, -1), (1, -1))]


def grove_of(n, edges):
    return Grove(n, frozenset(make_edge(u, v) for u, v in edges))


@pytest.fixture
def sample_grove():
    return grove_of(4, SAMPLE_EDGES)


@pytest.fixture
def small_grove():
    """Size-2 grove one counterclockwise spin away from the target."""
    return grove_of(2, SMALL_EDGES)


@contextmanager
def capture_output():
    new_out, new_err = io.StringIO(), io.StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    try:
        sys.stdout, sys.stderr = new_out, new_err
        yield sys.stdout, sys.stderr
    finally:
        sys.stdout, sys.stderr = old_out, old_err


@pytest.fixture
def run_cli():
    """Run the CLI and return (exit code, stdout, stderr)."""

    def _run_cli(args):
        with capture_output() as (out, err):
            try:
                main(args)
                return 0, out.getvalue(), err.getvalue()
            except SystemExit as e:
                return e.code, out.getvalue(), err.getvalue()

    return _run_cli


@pytest.fixture
def write_doc(tmp_path):
    """Write a document to a JSON file under tmp_path and return its path."""

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write


def edges_doc(n, edges):
    return {
        "n": n,
        "edges": [[list(u), list(v)] for u, v in sorted(make_edge(u, v) for u, v in edges)],
    }
