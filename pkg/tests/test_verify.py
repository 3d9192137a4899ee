"""The verify suite must accept genuine bases and reject injected defects."""

import numpy as np

from uob.algebra import TracialState
from uob.bases import UnitaryBasis, abelian_basis, weyl_basis
from uob.catalog import catalog_spec
from uob.expectation import conditional_expectation, markov_expectation
from uob.verify import (
    all_passed,
    verify_basis,
    verify_expectation_axioms,
    verify_necessary_conditions,
    verify_orthonormality,
    verify_reconstruction,
    verify_trace_conditions,
    verify_unitary,
)


def test_good_bases_pass_everything():
    for b in (abelian_basis(catalog_spec("c_in_m1_plus_m2")), weyl_basis(catalog_spec("c2_in_m4"))):
        assert all_passed(verify_basis(b, seed=0))
        assert all_passed(verify_necessary_conditions(b))


def test_defect_duplicate_element():
    b = abelian_basis(catalog_spec("c_in_m2"))
    bad = UnitaryBasis(b.spec, (b.elements[0],) + b.elements[:-1], "defect")
    reports = verify_necessary_conditions(bad)
    failed = {r.name for r in reports if not r.passed}
    assert "orthonormality" in failed


def test_defect_wrong_cardinality():
    b = abelian_basis(catalog_spec("c_in_m3"))
    bad = UnitaryBasis(b.spec, b.elements[:-2], "defect")
    reports = verify_necessary_conditions(bad)
    failed = {r.name for r in reports if not r.passed}
    assert "cardinality" in failed
    # too few elements also break reconstruction
    E = markov_expectation(b.spec)
    assert not verify_reconstruction(bad, E, seed=1).passed


def test_defect_wrong_trace():
    # an expectation preserving the wrong tracial state fails the trace check
    spec = catalog_spec("m2_in_m2_plus_m4")
    wrong = TracialState(spec.super_algebra, (1, 1))  # Markov vector would be (2, 4)
    E_bad = lambda X: conditional_expectation(spec, wrong, X)
    reports = verify_trace_conditions(spec, E_bad)
    failed = {r.name for r in reports if not r.passed}
    assert "markov_preservation" in failed
    good = verify_trace_conditions(spec)
    assert all_passed(good)


def test_defect_nonunitary_element():
    b = abelian_basis(catalog_spec("c_in_m2"))
    scaled = tuple(W if j else 0.5 * W for j, W in enumerate(b.elements))
    bad = UnitaryBasis(b.spec, scaled, "defect")
    assert not verify_unitary(bad).passed


def test_spectral_failure_is_reported():
    reports = verify_trace_conditions(catalog_spec("c2_in_m3"))
    failed = {r.name for r in reports if not r.passed}
    assert "integer_eigenvector" in failed


def test_orthonormality_catches_phase_perturbation():
    b = weyl_basis(catalog_spec("c2_in_m2"))
    E = markov_expectation(b.spec)
    rot = tuple(W if j != 1 else np.exp(0.3j) * W for j, W in enumerate(b.elements))
    # a global phase keeps unitarity and orthonormality: both must still pass
    assert verify_unitary(UnitaryBasis(b.spec, rot, "phase")).passed
    assert verify_orthonormality(UnitaryBasis(b.spec, rot, "phase"), E).passed
    # but replacing an element by another basis element breaks orthonormality
    dup = tuple(W if j != 1 else b.elements[0] for j, W in enumerate(b.elements))
    assert not verify_orthonormality(UnitaryBasis(b.spec, dup, "dup"), E).passed


def test_expectation_axiom_reports_have_names():
    spec = catalog_spec("c_in_m2")
    E = markov_expectation(spec)
    reports = verify_expectation_axioms(E, E.phi, seed=3)
    assert {r.name for r in reports} == {
        "idempotence",
        "unitality",
        "positivity",
        "trace_preservation",
        "bimodule",
    }
    assert all_passed(reports)


def test_report_string_shape():
    b = abelian_basis(catalog_spec("c_in_m2"))
    r = verify_unitary(b)
    assert str(r).startswith("[PASS]")
    assert r.to_dict()["name"] == "unitary"
