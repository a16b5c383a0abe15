import json

import pytest
from hypothesis import given, settings, strategies as st

from toricstack.catalog import CATALOG, write_catalog
from toricstack.errors import InputError, NotSaturated
from toricstack.io import (
    SAFE_INT,
    decode,
    dumps,
    encode,
    envelope,
    flatten,
    load_file,
    loads,
    parse_envelope,
    parse_text,
    render_text,
)

keys = st.text("abcdefgh_", min_size=1, max_size=6)
leaves = st.one_of(
    st.integers(-2 ** 70, 2 ** 70),
    st.booleans(),
    st.none(),
    st.text("abc XYZ01-()[],:", max_size=8),
    st.lists(st.integers(-2 ** 60, 2 ** 60), max_size=4),
    st.lists(st.lists(st.integers(-9, 9), min_size=2, max_size=2), max_size=3),
)
reports = st.recursive(
    st.dictionaries(keys, leaves, min_size=1, max_size=4),
    lambda inner: st.dictionaries(keys, st.one_of(leaves, inner, st.lists(inner, min_size=1, max_size=2)),
                                  min_size=1, max_size=4),
    max_leaves=12,
)


@settings(max_examples=200, deadline=None)
@given(reports)
def test_json_round_trip(report):
    assert loads(dumps(report)) == report


@settings(max_examples=200, deadline=None)
@given(reports)
def test_text_is_a_projection_of_json(report):
    pairs = parse_text(render_text(report))
    assert pairs == [(k, decode(v)) for k, v in flatten(encode(report))]


def test_big_integers_become_strings():
    big = SAFE_INT + 1
    assert encode({"x": [big, -big, SAFE_INT]}) == {"x": [str(big), str(-big), SAFE_INT]}
    assert json.loads(dumps({"x": big})) == {"x": str(big)}
    assert loads(dumps({"x": big})) == {"x": big}


def test_small_numeric_strings_stay_strings():
    assert loads(dumps({"group": "0"})) == {"group": "0"}
    assert parse_text(render_text({"group": "0"})) == [("group", "0")]


def test_vectors_stay_on_one_line():
    text = dumps({"rows": [[1, 2], [3, 4]]})
    assert "[1, 2]" in text and "[3, 4]" in text


def test_text_layout():
    text = render_text({"group": "Z/2", "rows": [[0, 1]], "charts": [{"ok": True}, {"ok": False}]})
    assert text == "group: Z/2\nrows: [[0,1]]\ncharts.1.ok: true\ncharts.2.ok: false\n"


# -- input documents ---------------------------------------------------------------------------

def test_catalog_documents_parse():
    for name, doc in CATALOG.items():
        kind, _ = parse_envelope(loads(dumps(doc)))
        assert kind == doc["kind"], name


def test_repository_catalog_is_current(tmp_path):
    import pathlib
    shipped = pathlib.Path(__file__).resolve().parent.parent / "catalog"
    for path in write_catalog(str(tmp_path)):
        name = pathlib.Path(path).name
        assert (shipped / name).read_text() == pathlib.Path(path).read_text(), name


@pytest.mark.parametrize("doc, field", [
    ({"kind": "fan", "payload": {}}, "format_version"),
    ({"format_version": 2, "kind": "fan", "payload": {}}, "format_version"),
    (envelope("cube", {}), "kind"),
    (envelope("monoid", {"generators": [[1, 0], [0]], "rank": 2}), "payload.generators[1]"),
    (envelope("monoid", {"generators": [[1, "x"]], "rank": 2}), "payload.generators[0]"),
    (envelope("monoid", {"generators": [[1], [-1]], "rank": 1}), "payload.generators"),
    (envelope("monoid", {"generators": [[1]], "rank": 1, "mode": "loose"}), "payload.mode"),
    (envelope("action", {"group": {"free_rank": -1}, "weights": []}), "payload.group"),
    (envelope("action", {"group": {"free_rank": 0, "torsion": [4]}, "weights": [[2]]}), "payload.weights"),
    (envelope("fan", {"N": {"free_rank": 2}, "rays": [[1, 0]], "cones": [[2]]}), "payload.cones[0]"),
    (envelope("fan", {"N": {"free_rank": 2}, "rays": [[1, 0]], "cones": [[1]], "colour": 1}), "colour"),
    (envelope("morphism", {"source": {"generators": [[1]], "rank": 1}, "matrix": [[1, 2]]}),
     "payload.matrix[0]"),
])
def test_errors_name_the_field(doc, field):
    with pytest.raises(InputError) as err:
        parse_envelope(doc)
    assert field in str(err.value)


def test_strict_embedded_monoid():
    doc = envelope("monoid", {"generators": [[2, 0], [0, 2]], "mode": "strict"})
    assert parse_envelope(doc)[1].rank == 2
    doc = envelope("monoid", {"generators": [[2], [3]], "mode": "strict"})
    with pytest.raises(NotSaturated):
        parse_envelope(doc)


def test_load_file_errors(tmp_path):
    missing = tmp_path / "none.json"
    with pytest.raises(InputError, match="none.json"):
        load_file(str(missing))
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    with pytest.raises(InputError, match="invalid JSON"):
        load_file(str(bad))
    good = tmp_path / "fan.json"
    good.write_text(dumps(CATALOG["p2"]))
    with pytest.raises(InputError, match="needs monoid"):
        load_file(str(good), ("monoid",))
