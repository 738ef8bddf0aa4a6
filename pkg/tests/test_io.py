import json
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import given

from legunknot import figures
from legunknot.foliation import validate_state
from legunknot.front import TorusFrontDiagram, validate_diagram
from legunknot.io import ParseError, parse_document, serialize
from legunknot.movie import validate_movie

from .conftest import diagrams

CORPUS = Path(str(resources.files("legunknot") / "corpus"))
FILES = sorted(p.name for p in CORPUS.glob("*.json"))


def schema_for(name):
    if name.startswith("movie_"):
        return "movie"
    if name.startswith("grid_"):
        return "grid"
    text = (CORPUS / name).read_text()
    return "diagram" if '"homology"' in text else "foliation"


def test_corpus_matches_figures():
    docs = figures.corpus_documents()
    assert sorted(docs) == FILES
    for name, value in docs.items():
        assert (CORPUS / name).read_text(encoding="utf-8") == serialize(value), name


@pytest.mark.parametrize("name", FILES)
def test_corpus_round_trip_is_byte_identical(name):
    text = (CORPUS / name).read_text(encoding="utf-8")
    value = parse_document(CORPUS / name, schema_for(name))
    assert serialize(value) == text


@pytest.mark.parametrize("name", FILES)
def test_corpus_validates(name):
    value = parse_document(str(CORPUS / name), schema_for(name))
    kind = schema_for(name)
    if kind == "diagram":
        assert validate_diagram(value).ok
    elif kind == "foliation":
        assert validate_state(value).ok
    elif kind == "movie":
        assert validate_movie(value).ok


@given(diagrams())
def test_diagram_round_trip(d):
    text = serialize(d)
    back = parse_document(text, "diagram")
    assert back == d
    assert serialize(back) == text


def test_k11_parses_to_diagram():
    d = parse_document(CORPUS / "k11.json", "diagram")
    assert isinstance(d, TorusFrontDiagram)
    assert d.homology == (1, 1)


def _err(text, schema="diagram"):
    with pytest.raises(ParseError) as info:
        parse_document(text, schema)
    return info.value


def test_unknown_event_type_names_the_field():
    e = _err('{"homology": [1, 0], "events": [{"type": "cusp", "sign": 1}, {"type": "loop"}]}')
    assert e.location == "events[1].type"
    assert "loop" in str(e)


def test_syntax_error_reports_line():
    e = _err('{\n  "homology": [1, 0],\n  "events": [,]\n}')
    assert e.line == 3


@pytest.mark.parametrize(
    "doc,location",
    [
        ({"homology": [1], "events": []}, "homology"),
        ({"homology": [1, 0], "events": [], "extra": 1}, "extra"),
        ({"events": []}, "homology"),
        ({"homology": [1, 0], "events": [{"type": "cusp", "sign": 2}]}, "events[0].sign"),
        ({"homology": [1, "x"], "events": []}, "homology[1]"),
        ({"homology": [1, 0], "events": [{"type": "crossing", "id": "x", "role": "middle", "sign": 1}]}, "events[0].role"),
    ],
)
def test_diagram_field_errors(doc, location):
    assert _err(json.dumps(doc)).location == location


def test_foliation_and_movie_errors():
    e = _err('{"surface": "torus", "singularities": [], "separatrices": []}', "foliation")
    assert e.location == "surface"
    e = _err('{"states": [], "events": [{"kind": "teleport"}]}', "movie")
    assert e.location == "events[0].kind"
    e = _err('{"cells": [[{"count": 0}]]}', "grid")
    assert e.location == "cells"
    e = _err('{"cells": [[{"wall": false}]]}', "grid")
    assert e.location == "cells[0][0].wall"


def test_missing_file():
    with pytest.raises(ParseError):
        parse_document("/nonexistent/file.json", "diagram")


def test_unknown_schema():
    with pytest.raises(ValueError):
        parse_document("{}", "knot")
