"""JSON instance and solution files (format 1).

Instance files::

    {"format": 1, "n": 4, "edges": [[0,1],[1,2],[2,3]], "tokens": [3,2,1,0],
     "vertex_colours": [...], "token_colours": [...], "weights": {"red": 1}}

Colours may be strings or integers; weight keys are matched back to colour
values.  Weights may be halves (the reduction instances use them); they are
parsed exactly.

Solution files::

    {"format": 1, "cost": 6, "length": 6, "swaps": [[0,1], ...],
     "meta": {"algorithm": "path"}}
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, IO

import numpy as np

from .core import Colouring, Instance, Tree, WeightTable
from .errors import InstanceFormatError, TreeswapError

FORMAT = 1


def _fail(msg: str) -> None:
    raise InstanceFormatError(msg)


def _load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def parse_instance(text: str) -> Instance:
    doc = _load_json(text, "instance")
    if not isinstance(doc, dict):
        _fail("instance: top level must be an object")
    if doc.get("format", FORMAT) != FORMAT:
        _fail(f"instance: unsupported format {doc.get('format')!r}")
    for field in ("n", "edges", "tokens"):
        if field not in doc:
            _fail(f"instance: missing field {field!r}")
    try:
        tree = Tree(doc["n"], doc["edges"])
    except (TreeswapError, TypeError, IndexError) as exc:
        _fail(f"instance: bad tree: {exc}")
    tokens = doc["tokens"]
    if not isinstance(tokens, list) or len(tokens) != tree.n:
        _fail(f"instance: 'tokens' must list {tree.n} entries")

    colouring = None
    if "vertex_colours" in doc or "token_colours" in doc:
        vc = doc.get("vertex_colours")
        tc = doc.get("token_colours")
        if vc is None or tc is None:
            _fail("instance: vertex_colours and token_colours must both be present")
        try:
            colouring = Colouring(vc, tc)
        except TreeswapError as exc:
            _fail(f"instance: bad colouring: {exc}")

    weights = None
    if "weights" in doc:
        if colouring is None:
            _fail("instance: weights require colours")
        raw = doc["weights"]
        if not isinstance(raw, dict):
            _fail("instance: 'weights' must be an object")
        colours = set(colouring.vertex_colour) | set(colouring.token_colour)
        by_name = {str(c): c for c in colours}
        table = {}
        for key, val in raw.items():
            colour = by_name.get(key, key)
            table[colour] = _parse_weight(key, val)
        try:
            weights = WeightTable(table)
        except TreeswapError as exc:
            _fail(f"instance: bad weights: {exc}")
    try:
        return Instance(tree, tokens, colouring, weights)
    except TreeswapError as exc:
        _fail(f"instance: {exc}")


def _parse_weight(key: str, val) -> int | Fraction:
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        _fail(f"instance: weight for {key!r} must be a number")
    if isinstance(val, float):
        frac = Fraction(val).limit_denominator(2)
        if float(frac) != val:
            _fail(f"instance: weight for {key!r} must be a multiple of 1/2")
        return frac
    return val


def serialize_instance(inst: Instance) -> str:
    doc: dict[str, Any] = {
        "format": FORMAT,
        "n": inst.n,
        "edges": [list(e) for e in inst.tree.edges],
        "tokens": list(inst.start),
    }
    if inst.colouring is not None:
        doc["vertex_colours"] = list(inst.colouring.vertex_colour)
        doc["token_colours"] = list(inst.colouring.token_colour)
    if inst.weights is not None:
        doc["weights"] = {
            str(c): _num(w) for c, w in inst.weights.as_dict().items()
        }
    return json.dumps(doc)


def _num(value):
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else float(value)
    return value


def parse_solution(text: str):
    doc = _load_json(text, "solution")
    if not isinstance(doc, dict):
        _fail("solution: top level must be an object")
    if doc.get("format", FORMAT) != FORMAT:
        _fail(f"solution: unsupported format {doc.get('format')!r}")
    if "swaps" not in doc or not isinstance(doc["swaps"], list):
        _fail("solution: missing 'swaps' list")
    swaps = []
    for i, pair in enumerate(doc["swaps"]):
        if not isinstance(pair, list) or len(pair) != 2:
            _fail(f"solution: swap #{i} must be a pair")
        swaps.append((int(pair[0]), int(pair[1])))
    return swaps, doc


def serialize_solution(
    swaps, cost, length: int, meta: dict[str, Any] | None = None, stream: IO[str] | None = None
) -> str | None:
    """Serialize a solution; streams the swap list when given a file object."""
    head = {"format": FORMAT, "cost": _num(cost), "length": length}
    meta = meta or {}
    if stream is None:
        doc = dict(head)
        doc["swaps"] = [list(map(int, s)) for s in swaps]
        doc["meta"] = meta
        return json.dumps(doc)
    stream.write(
        f'{{"format": {FORMAT}, "cost": {json.dumps(_num(cost))}, "length": {length}, "swaps": ['
    )
    if isinstance(swaps, np.ndarray):
        rows = swaps.tolist()
    else:
        rows = [list(map(int, s)) for s in swaps]
    for i, row in enumerate(rows):
        stream.write(("," if i else "") + f"[{row[0]},{row[1]}]")
    stream.write(f'], "meta": {json.dumps(meta)}}}')
    return None
