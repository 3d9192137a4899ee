"""Spec validation, the integer spectral condition, Markov traces, embeddings."""

import math

import numpy as np
import pytest

from uob.catalog import catalog_names, catalog_spec, random_abelian_specs
from uob.errors import DimensionMismatch, DisconnectedDiagram, EmptyColumn
from uob.inclusion import (
    InclusionSpec,
    check_spectral_condition,
    embed,
    markov_trace,
    minimal_central_projections,
    unembed,
)

# hand integer arithmetic for the shipped catalog: name -> expected d (None = fails)
EXPECTED_D = {
    "c_in_m2": 4,
    "c_in_m3": 9,
    "c_in_m5": 25,
    "c_in_m1_plus_m2": 5,
    "c_in_m1_m1_m2": 6,
    "c2_in_m2": 2,
    "c2_in_m4": 8,
    "c2_in_m2_plus_m2": 4,
    "c3_in_m3": 3,
    "m2_in_m2_plus_m4": 5,
    "m2_in_m4": 4,
    "c2_in_m3": None,
}


def test_from_matrix_computes_super_dims():
    spec = InclusionSpec.from_matrix([[1], [2]], [2])
    assert spec.super_dims == (2, 4)
    spec.validate()


def test_validate_rejects_bad_dimension_count():
    with pytest.raises(DimensionMismatch):
        InclusionSpec(((1,),), (2,), (3,)).validate()


def test_validate_rejects_empty_column():
    with pytest.raises(EmptyColumn):
        InclusionSpec.from_matrix([[1, 0], [2, 0]], [1, 1]).validate()


def test_spectral_condition_catalog():
    for name in catalog_names():
        spec = catalog_spec(name)
        report = check_spectral_condition(spec)
        if EXPECTED_D[name] is None:
            assert not report.holds and report.d is None
        else:
            assert report.holds and report.d == EXPECTED_D[name]
            assert abs(report.norm_sq - report.d) < 1e-9
            assert report.quadratic_holds
            assert abs(report.entropy_value - math.log(report.d)) < 1e-12


def test_spectral_condition_on_random_specs():
    for spec in random_abelian_specs(10, seed=11):
        report = check_spectral_condition(spec)
        assert report.holds
        # direct integer recomputation
        A, m, n = spec.inclusion_matrix, spec.sub_dims, spec.super_dims
        for j in range(spec.r):
            assert sum(A[i][j] * n[i] for i in range(spec.s)) == report.d * m[j]


def test_markov_trace_matches_perron_eigenvector():
    spec = catalog_spec("m2_in_m2_plus_m4")
    phi = markov_trace(spec)
    A = np.array(spec.inclusion_matrix, float)
    v = np.array(phi.trace_vector, float)
    assert np.allclose(A @ A.T @ v, (np.linalg.norm(A, 2) ** 2) * v, atol=1e-9)


def test_markov_trace_without_spectral_condition():
    spec = catalog_spec("c2_in_m3")
    phi = markov_trace(spec)
    A = np.array(spec.inclusion_matrix, float)
    v = np.array(phi.trace_vector, float)
    lam = np.linalg.norm(A, 2) ** 2
    assert np.allclose(A @ A.T @ v, lam * v, atol=1e-9)


def test_markov_trace_rejects_disconnected():
    spec = InclusionSpec.from_matrix([[1, 0], [0, 1]], [1, 2])
    assert not spec.is_connected()
    with pytest.raises(DisconnectedDiagram):
        markov_trace(spec)


def test_embedding_positions_are_a_partition():
    spec = catalog_spec("m2_in_m2_plus_m4")
    emb = spec.embedding
    for i, n in enumerate(spec.super_dims):
        positions = [emb.position(i, j, k, l) for (j, k, l) in emb.labels(i)]
        assert sorted(positions) == list(range(n))


def test_embed_is_a_homomorphism():
    spec = catalog_spec("m2_in_m2_plus_m4")
    rng = np.random.default_rng(3)
    Y, Z = spec.sub_algebra.random(rng), spec.sub_algebra.random(rng)
    assert embed(spec, Y @ Z).allclose(embed(spec, Y) @ embed(spec, Z), 1e-10)
    assert embed(spec, spec.sub_algebra.identity()).allclose(spec.super_algebra.identity())
    assert unembed(spec, embed(spec, Y)).allclose(Y, 1e-12)


def test_minimal_central_projections_commute_and_partition():
    spec = catalog_spec("c2_in_m2_plus_m2")
    Ps, Qs = minimal_central_projections(spec)
    I = spec.super_algebra.identity()
    total_p = Ps[0]
    for P in Ps[1:]:
        total_p = total_p + P
    total_q = Qs[0]
    for Q in Qs[1:]:
        total_q = total_q + Q
    assert total_p.allclose(I) and total_q.allclose(I)
    for P in Ps:
        for Q in Qs:
            assert (P @ Q).allclose(Q @ P, 1e-12)


def test_transpose_spec():
    spec = catalog_spec("c_in_m1_plus_m2")
    t = spec.transpose()
    assert t.sub_dims == spec.super_dims
    assert t.super_dims == (sum(n * n for n in spec.super_dims),)
    # transpose of a spectral-condition inclusion again satisfies it, same d
    assert check_spectral_condition(t).d == check_spectral_condition(spec).d
