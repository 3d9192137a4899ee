"""JSON round-trips for specs and bases, and the shipped catalog files."""

import json

import pytest

from uob.bases import abelian_basis, weyl_basis
from uob.catalog import catalog_names, catalog_spec, load_catalog_file
from uob.errors import DimensionMismatch
from uob.io import (
    basis_from_dict,
    basis_to_dict,
    load_basis,
    load_spec,
    save_basis,
    save_spec,
    spec_from_dict,
    spec_to_dict,
)
from uob.tower import basic_construction_basis, build_basic_construction


def test_spec_round_trip(tmp_path):
    spec = catalog_spec("m2_in_m2_plus_m4")
    path = tmp_path / "spec.json"
    save_spec(path, spec, "example")
    assert load_spec(path) == spec


def test_spec_from_dict_checks_consistency():
    doc = spec_to_dict(catalog_spec("c_in_m2"))
    doc["super_dims"] = [3]
    with pytest.raises(DimensionMismatch):
        spec_from_dict(doc)
    with pytest.raises(DimensionMismatch):
        spec_from_dict({"inclusion_matrix": [[1]]})


def test_basis_round_trip(tmp_path):
    b = abelian_basis(catalog_spec("c_in_m1_plus_m2"))
    path = tmp_path / "basis.json"
    save_basis(path, b, "example")
    loaded = load_basis(path)
    assert loaded.spec == b.spec
    assert loaded.d == b.d
    for W1, W2 in zip(b.elements, loaded.elements):
        assert W1.allclose(W2, 1e-15)


def test_basis_round_trip_without_spec():
    spec = catalog_spec("c2_in_m2")
    bc = build_basic_construction(spec)
    b = basic_construction_basis(bc, weyl_basis(spec))
    assert b.spec is None
    doc = json.loads(json.dumps(basis_to_dict(b)))
    loaded = basis_from_dict(doc)
    assert loaded.spec is None
    for W1, W2 in zip(b.elements, loaded.elements):
        assert W1.allclose(W2, 1e-15)


def test_trace_vector_field_defaults_to_markov():
    from uob.io import trace_state_from_dict

    spec = catalog_spec("m2_in_m2_plus_m4")
    doc = spec_to_dict(spec)
    phi = trace_state_from_dict(doc, spec)
    assert tuple(phi.trace_vector) == (2, 4)
    doc["trace_vector"] = [1, 1]
    assert tuple(trace_state_from_dict(doc, spec).trace_vector) == (1, 1)


def test_entries_are_plain_floats():
    doc = basis_to_dict(abelian_basis(catalog_spec("c_in_m2")))
    entry = doc["elements"][1][0][0]
    assert isinstance(entry, list) and len(entry) == 2
    assert all(isinstance(v, float) for v in entry)


def test_shipped_catalog_files_match_definitions():
    for name in catalog_names():
        assert load_catalog_file(name) == catalog_spec(name)
