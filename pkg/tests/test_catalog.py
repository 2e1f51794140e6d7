import json

import pytest

from gograph import catalog
from gograph.catalog import DefinitionError, UnknownId, load_definition, to_definition
from gograph.geodesic import build_system, solve_graph
from gograph.homogeneous import invariant_vectors

CASES = [(e.id, v) for e in catalog.entries() for v in ("default", *e.variants)]


def test_ids_and_groups():
    assert catalog.ids() == ["s5-su3", "s5-u3", "s7-sp2", "s7-sp2u1", "s7-sp2sp1", "cp2-su3", "cp3-sp2", "hp1-sp2"]
    assert all(e.description and e.group for e in catalog.entries())


def test_unknown_ids_and_variants():
    with pytest.raises(UnknownId, match="known"):
        catalog.get("s9")
    with pytest.raises(UnknownId, match="default, nr"):
        catalog.load("s5-u3", "other")


@pytest.mark.parametrize("id, variant", CASES)
def test_definition_round_trip(id, variant):
    loaded = catalog.load(id, variant)
    doc = to_definition(loaded)
    text = json.dumps(doc, sort_keys=True)
    again = load_definition(text)
    assert to_definition(again) == doc
    assert json.loads(text) == doc
    assert again.metric == loaded.metric
    assert again.space.m_labels == loaded.space.m_labels
    assert len(invariant_vectors(again.space)) == len(invariant_vectors(loaded.space))


def test_definition_file_gives_the_same_graph(tmp_path):
    loaded = catalog.load("s5-u3")
    path = tmp_path / "s5.json"
    path.write_text(json.dumps(to_definition(loaded)))
    again = load_definition(path)
    a = solve_graph(build_system(loaded.space, loaded.metric, None, "riemannian"))
    b = solve_graph(build_system(again.space, again.metric, None, "riemannian"))
    assert a.components == b.components


def test_sample_values_respect_constraints():
    for e in catalog.entries():
        assert set(e.sample) == set(e.params)
        for name, kind in e.params.items():
            if kind == "positive":
                assert e.sample[name] > 0


def _doc(**changes):
    doc = to_definition(catalog.load("s5-su3"))
    doc.update(changes)
    return doc


@pytest.mark.parametrize(
    "doc, message",
    [
        ("{not json", "not valid JSON"),
        ({"name": "x"}, "missing field"),
        (_doc(h_dim=2), "must equal"),
        (_doc(structure_constants=[[0, 1, 0, "1"], [0, 2, 1, "1"], [1, 2, 0, "1"]]), "Jacobi"),
        (_doc(structure_constants=[["H1", "nope", 0, "1"]]), "unknown basis label"),
        (_doc(structure_constants=[[0, 99, 0, "1"]]), "out of range"),
        (_doc(metric=[[1, 0, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, "c"]]), "not invariant"),
        (_doc(metric=[[1, 2], [3, 4]]), "bad metric"),
        (_doc(vector=["1", "0"]), "m_dim components"),
        (_doc(params={"c": "complex"}), "constraint"),
    ],
)
def test_definition_errors(doc, message):
    with pytest.raises(DefinitionError, match=message):
        load_definition(doc)


def test_non_reductive_definition():
    doc = to_definition(catalog.load("s5-su3"))
    assert doc["basis_labels"][3] == "X1"
    # move X1 into h: [X1, X2] then leaves h
    doc["h_dim"], doc["m_dim"] = 4, 4
    doc["metric"] = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    doc["coordinates"] = []
    doc.pop("vector")
    with pytest.raises(DefinitionError, match="not reductive"):
        load_definition(doc)
