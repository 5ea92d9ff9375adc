"""
Interchange documents for groves, triangles and spin sequences.

All three are mappings with an ``n`` key::

    {"n": 2, "edges": [[[-1, -1], [1, -1]], [[0, 0], [1, -1]]]}
    {"n": 2, "rows": [[1, 0], [0]]}
    {"n": 2, "spins": [{"pivot": [0, 0], "from": "SW", "to": "SE"}]}

Documents are written as JSON (default) or YAML and read from either;
files ending in ``.yaml``/``.yml`` are parsed as YAML.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import yaml

from .board import Direction, Edge, Vertex, make_edge
from .exceptions import BoardError, DocumentError, NotAnAstError
from .grove import Grove, make_grove
from .reduction import DiffGrove, SpinSeq
from .spin import Spin
from .triangle import Ast

FORMATS = ("json", "yaml")


def dump_document(data: Dict[str, Any], fmt: str = "json") -> str:
    """Serialize a document; key order is preserved so output is canonical."""
    if fmt == "yaml":
        return yaml.safe_dump(data, sort_keys=False, default_flow_style=None)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    raise DocumentError(f"Unknown document format '{fmt}'")


def parse_document(text: str, fmt: str = "json", file_path: Optional[str] = None) -> Dict[str, Any]:
    try:
        data = yaml.safe_load(text) if fmt == "yaml" else json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise DocumentError(f"Cannot parse {fmt} document: {e}", file_path, e)
    if not isinstance(data, dict):
        raise DocumentError("Document must be a mapping", file_path)
    return data


def load_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a JSON or YAML document from disk.

    Raises:
        DocumentError: If the file is missing, unreadable or not a mapping.
    """
    doc_path = Path(path)
    try:
        text = doc_path.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"Cannot read document: {e}", str(doc_path), e)
    fmt = "yaml" if doc_path.suffix.lower() in (".yaml", ".yml") else "json"
    return parse_document(text, fmt, str(doc_path))


def _size(data: Dict[str, Any], file_path: Optional[str]) -> int:
    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError(f"'n' must be a positive integer, got {n!r}", file_path)
    return n


def _vertex(value: Any, file_path: Optional[str]) -> Vertex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in value)
    ):
        raise DocumentError(f"Vertex must be a pair of integers, got {value!r}", file_path)
    return (value[0], value[1])


# ---------------------------------------------------------------------------
# Groves
# ---------------------------------------------------------------------------


def _edge_list(edges: Sequence[Edge]) -> List[List[List[int]]]:
    return [[list(u), list(v)] for u, v in sorted(make_edge(u, v) for u, v in edges)]


def grove_to_doc(g: Grove) -> Dict[str, Any]:
    return {"n": g.n, "edges": _edge_list(list(g.edges))}


def edges_from_doc(
    data: Dict[str, Any], file_path: Optional[str] = None
) -> Tuple[int, List[Tuple[Vertex, Vertex]]]:
    """Size and raw edge pairs of a grove document, before any axiom check."""
    n = _size(data, file_path)
    raw = data.get("edges")
    if not isinstance(raw, list):
        raise DocumentError("'edges' must be a list", file_path)
    edges = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise DocumentError(f"Edge must be a pair of vertices, got {item!r}", file_path)
        edges.append((_vertex(item[0], file_path), _vertex(item[1], file_path)))
    return n, edges


def grove_from_doc(data: Dict[str, Any], file_path: Optional[str] = None) -> Grove:
    """Parse and validate a grove document.

    Raises:
        DocumentError: On malformed structure.
        InvalidGroveError: If the edges break a grove axiom.
    """
    n, edges = edges_from_doc(data, file_path)
    return make_grove(n, edges)


def diff_to_doc(d: DiffGrove) -> Dict[str, Any]:
    return d.to_dict()


# ---------------------------------------------------------------------------
# Triangles
# ---------------------------------------------------------------------------


def ast_to_doc(a: Ast) -> Dict[str, Any]:
    return {"n": a.n, "rows": a.to_lists()}


def ast_from_doc(data: Dict[str, Any], file_path: Optional[str] = None) -> Ast:
    n = _size(data, file_path)
    rows = data.get("rows")
    if not isinstance(rows, list) or len(rows) != n:
        raise DocumentError(f"'rows' must be a list of {n} rows", file_path)
    try:
        a = Ast.from_rows(rows)
    except NotAnAstError as e:
        raise DocumentError(str(e), file_path, e)
    if not a.entries_in_range:
        raise DocumentError("Triangle entries must lie in {-1, 0, 1}", file_path)
    return a


# ---------------------------------------------------------------------------
# Spin sequences
# ---------------------------------------------------------------------------


def spinseq_to_doc(seq: SpinSeq) -> Dict[str, Any]:
    return {
        "n": seq.n,
        "spins": [
            {"pivot": list(s.pivot), "from": s.from_dir.name, "to": s.to_dir.name}
            for s in seq.spins
        ],
    }


def spinseq_from_doc(data: Dict[str, Any], file_path: Optional[str] = None) -> SpinSeq:
    n = _size(data, file_path)
    raw = data.get("spins")
    if not isinstance(raw, list):
        raise DocumentError("'spins' must be a list", file_path)
    spins = []
    for index, item in enumerate(raw):
        if not isinstance(item, dict) or not {"pivot", "from", "to"} <= set(item):
            raise DocumentError(
                f"Spin {index} must have 'pivot', 'from' and 'to'", file_path
            )
        try:
            from_dir = Direction.parse(str(item["from"]))
            to_dir = Direction.parse(str(item["to"]))
        except BoardError as e:
            raise DocumentError(f"Spin {index}: {e}", file_path, e)
        spins.append(Spin(_vertex(item["pivot"], file_path), from_dir, to_dir))
    return SpinSeq(n, tuple(spins))
