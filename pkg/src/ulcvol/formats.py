"""JSON file formats for sequences and polytopes.

A sequence file is an array of rationals written as integers or ``"p/q"``
strings, e.g. ``["1", "1/2", 3]``. A polytope file is an object
``{"dim": n, "vertices": [["0", "0"], ["1", "0"], ...]}`` with the same
rational syntax.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .geomcore import Body
from .seqcore import Seq, as_seq


def parse_seq(data) -> Seq:
    if not isinstance(data, list):
        raise ValueError("a sequence file must hold a JSON array")
    for x in data:
        if not isinstance(x, (int, str)) or isinstance(x, bool):
            raise ValueError(f"sequence entries must be integers or 'p/q' strings, got {x!r}")
    return as_seq(data)


def parse_body(data) -> Body:
    if not isinstance(data, dict) or "dim" not in data or "vertices" not in data:
        raise ValueError("a polytope file must hold an object with 'dim' and 'vertices'")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ValueError("'dim' must be an integer")
    return Body(dim, tuple(tuple(parse_seq(v)) for v in data["vertices"]))


def load_seq(path: os.PathLike) -> Seq:
    return parse_seq(json.loads(Path(path).read_text(encoding="utf-8")))


def load_body(path: os.PathLike) -> Body:
    return parse_body(json.loads(Path(path).read_text(encoding="utf-8")))


def dump_seq(seq: Seq) -> str:
    return json.dumps([str(x) for x in seq])


def dump_body(body: Body) -> str:
    return json.dumps(body.to_json())
