import json

import pytest

from baseorder import io
from baseorder.catalog import mk4
from baseorder.core import PresentationError, uniform


def test_round_trip_catalog(catalog):
    for e in catalog:
        m = e.matroid
        assert io.loads(io.dumps(m)) == m, e.name
        assert io.canonical_hash(io.loads(io.dumps(m))) == io.canonical_hash(m)


def test_format_shape():
    d = io.matroid_to_dict(uniform(2, 4, list("wxyz")))
    assert d == {"ground": ["w", "x", "y", "z"],
                 "cyclic_flats": [{"set": [], "rank": 0}, {"set": ["w", "x", "y", "z"], "rank": 2}]}


def test_flats_sorted_by_size_then_members():
    d = io.matroid_to_dict(mk4())
    sizes = [len(f["set"]) for f in d["cyclic_flats"]]
    assert sizes == sorted(sizes)
    triangles = [f["set"] for f in d["cyclic_flats"] if len(f["set"]) == 3]
    assert triangles == [["a", "b", "d"], ["a", "c", "e"], ["b", "c", "f"], ["d", "e", "f"]]


def test_hash_ignores_flat_order_and_provenance():
    m = mk4()
    d = io.matroid_to_dict(m)
    d["cyclic_flats"].reverse()
    assert io.canonical_hash(io.matroid_from_dict(d)) == io.canonical_hash(m)
    assert io.loads(io.dumps(m, {"family": "mk4"})) == m


def test_bad_input():
    with pytest.raises(io.FormatError):
        io.loads("{not json")
    with pytest.raises(io.FormatError):
        io.matroid_from_dict({"ground": ["a"]})
    with pytest.raises(io.FormatError):
        io.matroid_from_dict({"ground": ["a"], "cyclic_flats": [{"set": ["z"], "rank": 0}]})
    with pytest.raises(PresentationError) as err:
        io.matroid_from_dict({"ground": ["a", "b"],
                              "cyclic_flats": [{"set": [], "rank": 0}, {"set": ["a"], "rank": 1}]})
    assert err.value.report.axiom == "Z2"


def test_save_load(tmp_path):
    path = tmp_path / "k4.json"
    io.save(mk4(), path, {"family": "mk4"})
    assert json.loads(path.read_text())["provenance"] == {"family": "mk4"}
    assert io.load(path) == mk4()
