"""JSON documents for diagrams, foliations, movies and grids.

``serialize`` writes canonical text (sorted keys, two-space indent, final
newline), so ``serialize(parse_document(text)) == text`` for canonical input.
"""

from __future__ import annotations

import json
from enum import Enum
from pathlib import Path
from typing import Any, Union

from .foliation import ClosedLeaf, FoliationState, Separatrix, Singularity
from .front import CrossingEvent, CuspEvent, TorusFrontDiagram
from .grid import BifurcationGrid, GridError
from .movie import EventKind, LeafSwing, Movie, MovieEvent, MovieError


class Schema(str, Enum):
    DIAGRAM = "diagram"
    FOLIATION = "foliation"
    MOVIE = "movie"
    GRID = "grid"


class ParseError(ValueError):
    def __init__(self, message: str, location: str = "", line: int | None = None):
        self.location = location
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if location:
            where.append(location)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


# helpers --------------------------------------------------------------------


def _obj(x, loc, required=(), optional=()) -> dict:
    if not isinstance(x, dict):
        raise ParseError("expected an object", loc)
    allowed = set(required) | set(optional)
    for k in x:
        if k not in allowed:
            raise ParseError(f"unknown field {k!r}", f"{loc}.{k}" if loc else k)
    for k in required:
        if k not in x:
            raise ParseError(f"missing field {k!r}", f"{loc}.{k}" if loc else k)
    return x


def _list(x, loc) -> list:
    if not isinstance(x, list):
        raise ParseError("expected an array", loc)
    return x


def _str(x, loc) -> str:
    if not isinstance(x, str):
        raise ParseError("expected a string", loc)
    return x


def _int(x, loc) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise ParseError("expected an integer", loc)
    return x


def _sign(x, loc) -> int:
    if _int(x, loc) not in (1, -1):
        raise ParseError("sign must be 1 or -1", loc)
    return x


def _enum(x, loc, choices):
    if x not in choices:
        raise ParseError(f"expected one of {sorted(choices)}, got {x!r}", loc)
    return x


def _join(loc, k):
    return f"{loc}.{k}" if loc else k


# diagrams -------------------------------------------------------------------


def diagram_from_json(doc: Any, loc: str = "") -> TorusFrontDiagram:
    d = _obj(doc, loc, ("homology", "events"), ("name",))
    h = _list(d["homology"], _join(loc, "homology"))
    if len(h) != 2:
        raise ParseError("homology needs two integers", _join(loc, "homology"))
    a, b = (_int(v, f"{_join(loc, 'homology')}[{i}]") for i, v in enumerate(h))
    events = []
    for i, e in enumerate(_list(d["events"], _join(loc, "events"))):
        eloc = f"{_join(loc, 'events')}[{i}]"
        if not isinstance(e, dict) or "type" not in e:
            raise ParseError("event needs a 'type'", eloc)
        kind = e["type"]
        if kind == "crossing":
            _obj(e, eloc, ("type", "id", "role", "sign"))
            events.append(
                CrossingEvent(
                    _str(e["id"], f"{eloc}.id"),
                    _enum(e["role"], f"{eloc}.role", {"over", "under"}),
                    _sign(e["sign"], f"{eloc}.sign"),
                )
            )
        elif kind == "cusp":
            _obj(e, eloc, ("type", "sign"))
            events.append(CuspEvent(_sign(e["sign"], f"{eloc}.sign")))
        else:
            raise ParseError(f"unknown event type {kind!r}", f"{eloc}.type")
    name = d.get("name")
    if name is not None:
        _str(name, _join(loc, "name"))
    return TorusFrontDiagram(tuple(events), (a, b), name)


def diagram_to_json(d: TorusFrontDiagram) -> dict:
    events = []
    for e in d.events:
        if isinstance(e, CrossingEvent):
            events.append({"type": "crossing", "id": e.crossing_id, "role": e.role.value, "sign": e.sign})
        else:
            events.append({"type": "cusp", "sign": e.sign})
    out = {"homology": [d.a, d.b], "events": events}
    if d.name is not None:
        out["name"] = d.name
    return out


# foliations -----------------------------------------------------------------


def foliation_from_json(doc: Any, loc: str = "") -> FoliationState:
    d = _obj(doc, loc, ("surface", "singularities", "separatrices"), ("closed_leaves", "boundary"))
    surface = _enum(d["surface"], _join(loc, "surface"), {"sphere", "disc"})
    sings = []
    for i, x in enumerate(_list(d["singularities"], _join(loc, "singularities"))):
        xl = f"{_join(loc, 'singularities')}[{i}]"
        _obj(x, xl, ("id", "sign", "kind"))
        sings.append(
            Singularity(
                _str(x["id"], f"{xl}.id"),
                _sign(x["sign"], f"{xl}.sign"),
                _enum(x["kind"], f"{xl}.kind", {"elliptic", "hyperbolic", "birthdeath"}),
            )
        )
    seps = []
    for i, x in enumerate(_list(d["separatrices"], _join(loc, "separatrices"))):
        xl = f"{_join(loc, 'separatrices')}[{i}]"
        _obj(x, xl, ("from", "to"))
        f = _obj(x["from"], f"{xl}.from", ("sing", "slot"))
        slot = _enum(
            f["slot"], f"{xl}.from.slot", {"stable1", "stable2", "unstable1", "unstable2", "bd_leaf"}
        )
        seps.append(Separatrix(_str(f["sing"], f"{xl}.from.sing"), slot, _str(x["to"], f"{xl}.to")))
    leaves = []
    for i, x in enumerate(_list(d.get("closed_leaves", []), _join(loc, "closed_leaves"))):
        xl = f"{_join(loc, 'closed_leaves')}[{i}]"
        _obj(x, xl, ("id", "holonomy"))
        hol = _enum(
            x["holonomy"], f"{xl}.holonomy",
            {"attracting", "repelling", "semistable_repelling_above", "semistable_repelling_below"},
        )
        leaves.append(ClosedLeaf(_str(x["id"], f"{xl}.id"), hol))
    boundary = d.get("boundary")
    if boundary is not None:
        boundary = tuple(_str(b, f"{_join(loc, 'boundary')}[{i}]") for i, b in enumerate(_list(boundary, _join(loc, "boundary"))))
    return FoliationState(surface, tuple(sings), tuple(seps), tuple(leaves), boundary)


def foliation_to_json(s: FoliationState) -> dict:
    out = {
        "surface": s.surface.value,
        "singularities": [{"id": x.id, "sign": x.sign, "kind": x.kind.value} for x in s.singularities],
        "separatrices": [{"from": {"sing": sp.sing, "slot": sp.slot}, "to": sp.to} for sp in s.separatrices],
        "closed_leaves": [{"id": c.id, "holonomy": c.holonomy.value} for c in s.closed_leaves],
    }
    if s.boundary is not None:
        out["boundary"] = list(s.boundary)
    return out


# movies ---------------------------------------------------------------------

_CROSSINGS = {EventKind.RETRO_CROSSING.value, EventKind.SAME_SIGN_CONNECTION.value}
_ORBITS = {EventKind.CLOSED_ORBIT_BIRTH.value, EventKind.CLOSED_ORBIT_DEATH.value}
_PAIRS = {EventKind.PAIR_CREATION.value, EventKind.PAIR_ELIMINATION.value}


def _slot_ref(x, loc) -> tuple[str, str]:
    _obj(x, loc, ("sing", "slot"))
    return _str(x["sing"], f"{loc}.sing"), _str(x["slot"], f"{loc}.slot")


def event_from_json(doc: Any, loc: str) -> MovieEvent:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError("event needs a 'kind'", loc)
    kind = doc["kind"]
    if kind in _CROSSINGS:
        _obj(doc, loc, ("kind", "connections"))
        swings = []
        for i, c in enumerate(_list(doc["connections"], f"{loc}.connections")):
            cl = f"{loc}.connections[{i}]"
            keys = ("unstable", "stable", "pre_target", "post_target", "pre_source", "post_source")
            _obj(c, cl, keys)
            swings.append(
                LeafSwing(
                    _slot_ref(c["unstable"], f"{cl}.unstable"),
                    _slot_ref(c["stable"], f"{cl}.stable"),
                    *(_str(c[k], f"{cl}.{k}") for k in keys[2:]),
                )
            )
        return MovieEvent(kind, swings=tuple(swings))
    if kind in _ORBITS:
        _obj(doc, loc, ("kind", "semistable", "created", "semistable_holonomy"))
        created = tuple(_str(c, f"{loc}.created[{i}]") for i, c in enumerate(_list(doc["created"], f"{loc}.created")))
        hol = _enum(
            doc["semistable_holonomy"], f"{loc}.semistable_holonomy",
            {"semistable_repelling_above", "semistable_repelling_below"},
        )
        return MovieEvent(
            kind, semistable=_str(doc["semistable"], f"{loc}.semistable"), created=created, semistable_holonomy=hol
        )
    if kind in _PAIRS:
        _obj(doc, loc, ("kind", "elliptic", "hyperbolic"))
        return MovieEvent(
            kind, elliptic=_str(doc["elliptic"], f"{loc}.elliptic"), hyperbolic=_str(doc["hyperbolic"], f"{loc}.hyperbolic")
        )
    raise ParseError(f"unknown event kind {kind!r}", f"{loc}.kind")


def event_to_json(e: MovieEvent) -> dict:
    out: dict = {"kind": e.kind.value}
    if e.kind.value in _CROSSINGS:
        out["connections"] = [
            {
                "unstable": {"sing": w.unstable[0], "slot": w.unstable[1]},
                "stable": {"sing": w.stable[0], "slot": w.stable[1]},
                "pre_target": w.pre_target,
                "post_target": w.post_target,
                "pre_source": w.pre_source,
                "post_source": w.post_source,
            }
            for w in e.swings
        ]
    elif e.kind.value in _ORBITS:
        out.update(semistable=e.semistable, created=list(e.created), semistable_holonomy=e.semistable_holonomy.value)
    else:
        out.update(elliptic=e.elliptic, hyperbolic=e.hyperbolic)
    return out


def movie_from_json(doc: Any, loc: str = "") -> Movie:
    d = _obj(doc, loc, ("states", "events"), ("name",))
    states = tuple(
        foliation_from_json(s, f"{_join(loc, 'states')}[{i}]") for i, s in enumerate(_list(d["states"], _join(loc, "states")))
    )
    events = tuple(
        event_from_json(e, f"{_join(loc, 'events')}[{i}]") for i, e in enumerate(_list(d["events"], _join(loc, "events")))
    )
    name = d.get("name")
    if name is not None:
        _str(name, _join(loc, "name"))
    return Movie(states, events, name)


def movie_to_json(m: Movie) -> dict:
    out = {"states": [foliation_to_json(s) for s in m.states], "events": [event_to_json(e) for e in m.events]}
    if m.name is not None:
        out["name"] = m.name
    return out


# grids ----------------------------------------------------------------------


def grid_from_json(doc: Any, loc: str = "") -> BifurcationGrid:
    d = _obj(doc, loc, ("cells",))
    rows = []
    for i, row in enumerate(_list(d["cells"], _join(loc, "cells"))):
        cells = []
        for j, c in enumerate(_list(row, f"cells[{i}]")):
            cl = f"cells[{i}][{j}]"
            if isinstance(c, dict) and "wall" in c:
                _obj(c, cl, ("wall",))
                if c["wall"] is not True:
                    raise ParseError("wall flag must be true", f"{cl}.wall")
                cells.append(None)
            else:
                _obj(c, cl, ("count",))
                cells.append(_int(c["count"], f"{cl}.count"))
        rows.append(tuple(cells))
    try:
        return BifurcationGrid(tuple(rows))
    except GridError as exc:
        raise ParseError(str(exc), _join(loc, "cells")) from exc


def grid_to_json(g: BifurcationGrid) -> dict:
    return {"cells": [[{"wall": True} if c is None else {"count": c} for c in row] for row in g.cells]}


# entry points ---------------------------------------------------------------

_READERS = {
    Schema.DIAGRAM: diagram_from_json,
    Schema.FOLIATION: foliation_from_json,
    Schema.MOVIE: movie_from_json,
    Schema.GRID: grid_from_json,
}

Document = Union[TorusFrontDiagram, FoliationState, Movie, BifurcationGrid]


def read_text(path_or_text: Union[str, Path]) -> str:
    if isinstance(path_or_text, Path):
        return path_or_text.read_text(encoding="utf-8")
    stripped = path_or_text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return path_or_text
    return Path(path_or_text).read_text(encoding="utf-8")


def parse_document(path_or_text: Union[str, Path], schema: Union[Schema, str]) -> Document:
    schema = Schema(schema)
    try:
        text = read_text(path_or_text)
    except OSError as exc:
        raise ParseError(f"cannot read document: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"column {exc.colno}", exc.lineno) from exc
    try:
        return _READERS[schema](doc)
    except (MovieError, GridError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc


def to_json(value: Document) -> dict:
    if isinstance(value, TorusFrontDiagram):
        return diagram_to_json(value)
    if isinstance(value, FoliationState):
        return foliation_to_json(value)
    if isinstance(value, Movie):
        return movie_to_json(value)
    if isinstance(value, BifurcationGrid):
        return grid_to_json(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize(value: Document) -> str:
    return dumps(to_json(value))
