"""Concrete basic construction, dual expectation, and twisted bases."""

import numpy as np
import pytest

from uob.bases import abelian_basis, full_matrix_super_basis, weyl_basis
from uob.catalog import catalog_spec
from uob.errors import SpectralConditionFailed
from uob.inclusion import InclusionSpec, check_spectral_condition, embed
from uob.tower import (
    basic_construction_basis,
    basic_model_basis,
    build_basic_construction,
    dual_expectation,
    generated_algebra_sampler,
)
from uob.verify import (
    all_passed,
    verify_basis,
    verify_orthonormality,
    verify_reconstruction,
    verify_unitary,
)

TOWER_SPECS = ["c_in_m2", "c_in_m1_plus_m2", "c2_in_m2", "c2_in_m2_plus_m2", "m2_in_m4"]


def test_left_rep_is_a_homomorphism():
    spec = catalog_spec("c2_in_m2_plus_m2")
    bc = build_basic_construction(spec)
    rng = np.random.default_rng(0)
    X, Y = spec.super_algebra.random(rng), spec.super_algebra.random(rng)
    assert bc.left_rep(X @ Y).allclose(bc.left_rep(X) @ bc.left_rep(Y), 1e-10)
    assert bc.left_rep(X.adjoint()).allclose(bc.left_rep(X).adjoint(), 1e-12)
    I = spec.super_algebra.identity()
    assert bc.left_rep(I).allclose(bc.gns_algebra.identity(), 1e-12)


def test_gns_coefficients_reproduce_the_trace_inner_product():
    spec = catalog_spec("m2_in_m4")
    bc = build_basic_construction(spec)
    rng = np.random.default_rng(1)
    X, Y = spec.super_algebra.random(rng), spec.super_algebra.random(rng)
    assert abs(np.vdot(bc.coeff(X), bc.coeff(Y)) - bc.tau(X.adjoint() @ Y)) < 1e-10


def test_left_action_on_coefficient_vectors():
    spec = catalog_spec("c_in_m1_plus_m2")
    bc = build_basic_construction(spec)
    rng = np.random.default_rng(2)
    X, Y = spec.super_algebra.random(rng), spec.super_algebra.random(rng)
    assert np.allclose(bc.left_rep(X).data[0] @ bc.coeff(Y), bc.coeff(X @ Y), atol=1e-10)


def test_e1_is_a_projection_with_trace_one_over_d():
    for name in TOWER_SPECS:
        spec = catalog_spec(name)
        d = check_spectral_condition(spec).d
        bc = build_basic_construction(spec)
        assert np.allclose(bc.e1 @ bc.e1, bc.e1, atol=1e-10)
        assert np.allclose(bc.e1, bc.e1.conj().T, atol=1e-10)
        assert abs(bc.tr1(bc.e1_operator()) - 1 / d) < 1e-10


def test_e1_fixes_embedded_subalgebra_vectors():
    spec = catalog_spec("c2_in_m2_plus_m2")
    bc = build_basic_construction(spec)
    rng = np.random.default_rng(3)
    y = bc.coeff(embed(spec, spec.sub_algebra.random(rng)))
    assert np.allclose(bc.e1 @ y, y, atol=1e-10)


def test_trivial_inclusion_has_identity_e1():
    spec = InclusionSpec.from_matrix([[1]], [2])  # B = A = M_2
    bc = build_basic_construction(spec)
    assert np.allclose(bc.e1, np.eye(bc.gns_dim), atol=1e-10)


def test_build_requires_spectral_condition():
    with pytest.raises(SpectralConditionFailed):
        build_basic_construction(catalog_spec("c2_in_m3"))


def test_dual_expectation_of_e1():
    # E_1(e_1) = I / d, the hallmark of the dual expectation
    for name in TOWER_SPECS:
        spec = catalog_spec(name)
        d = check_spectral_condition(spec).d
        bc = build_basic_construction(spec)
        out = dual_expectation(bc, bc.e1_operator())
        target = (1 / d) * bc.gns_algebra.identity()
        assert out.allclose(target, 1e-9), name


def test_dual_expectation_fixes_left_rep():
    spec = catalog_spec("c_in_m1_plus_m2")
    bc = build_basic_construction(spec)
    rng = np.random.default_rng(4)
    L = bc.left_rep(spec.super_algebra.random(rng))
    assert dual_expectation(bc, L).allclose(L, 1e-9)


def test_basic_construction_basis_is_verified():
    for name in TOWER_SPECS:
        spec = catalog_spec(name)
        bc = build_basic_construction(spec)
        b0 = abelian_basis(spec) if all(m == 1 for m in spec.sub_dims) else None
        if b0 is None:
            from uob.bases import full_matrix_sub_basis

            b0 = full_matrix_sub_basis(spec)
        b1 = basic_construction_basis(bc, b0)
        E1 = lambda X: dual_expectation(bc, X)
        assert verify_unitary(b1).passed
        assert verify_orthonormality(b1, E1).passed
        sampler = generated_algebra_sampler(bc)
        assert verify_reconstruction(b1, E1, seed=5, sampler=sampler).passed


def test_basic_model_basis_carries_canonical_spec():
    b = basic_model_basis((1, 2))
    assert b.spec.sub_dims == (1, 2)
    assert b.spec.super_dims == (5,)
    assert all_passed(verify_basis(b, seed=6))


def test_tower_iteration_two_steps():
    # C in M_2 has basic construction M_2 in M_4 with transposed inclusion
    spec = catalog_spec("c_in_m2")
    bc = build_basic_construction(spec)
    b1 = basic_construction_basis(bc, abelian_basis(spec))
    assert b1.spec == spec.transpose()
    assert all_passed(verify_basis(b1, seed=7))
    # iterate: the next floor M_2 in M_4 also carries a verified basis
    b2 = full_matrix_super_basis(b1.spec)
    assert all_passed(verify_basis(b2, seed=7))


def test_entropy_value_is_log_index():
    import math

    for name in TOWER_SPECS:
        report = check_spectral_condition(catalog_spec(name))
        assert abs(report.entropy_value - math.log(report.norm_sq)) < 1e-9
