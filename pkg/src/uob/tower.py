"""Concrete Jones basic construction on L^2(A, tau) and its twisted bases.

A_1 = <A, e_1> is represented by operators on the GNS space of the Markov
trace: left multiplication becomes a unital *-homomorphism into M_D with
D = sum n_i^2, and e_1 is the orthogonal projection onto the copy of the
sub-algebra.  The GNS basis is ordered per super block by (column, row), so
left multiplication restricted to block i is I_{n_i} (x) X_i and, for the
transpose inclusion, lines up with the canonical embedding layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import BlockOperator, MultiMatrixAlgebra, TracialState, epsilon
from .bases import UnitaryBasis, abelian_basis
from .errors import PartitionOfUnityFailed, SpectralConditionFailed
from .expectation import _GramProjector, markov_expectation
from .inclusion import InclusionSpec, check_spectral_condition, embed

JONES_TOL = 1e-9
PARTITION_TOL = 1e-8
GS_RESIDUAL_TOL = 1e-12
DEFAULT_GNS_CAP = 256


def _gram_schmidt(vectors: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one reorthogonalization pass; columns in, columns out."""
    Q = np.array(vectors, dtype=complex)
    n = Q.shape[1]
    for _ in range(2):
        for a in range(n):
            for b in range(a):
                Q[:, a] -= (Q[:, b].conj() @ Q[:, a]) * Q[:, b]
            nrm = np.linalg.norm(Q[:, a])
            if nrm < GS_RESIDUAL_TOL:
                raise ValueError("degenerate vector family in Gram-Schmidt")
            Q[:, a] /= nrm
    resid = np.max(np.abs(Q.conj().T @ Q - np.eye(n)))
    if resid > GS_RESIDUAL_TOL:
        raise ValueError(f"orthonormalization residual {resid} above tolerance")
    return Q


@dataclass
class BasicConstruction:
    """A_1 = <A, e_1> acting on L^2(A, tau) for the Markov trace tau."""

    spec: InclusionSpec
    tau: TracialState
    gns_dim: int
    e1: np.ndarray
    _index: list = field(repr=False)
    _proj: _GramProjector | None = field(default=None, repr=False)

    @property
    def gns_algebra(self) -> MultiMatrixAlgebra:
        return MultiMatrixAlgebra((self.gns_dim,))

    def left_rep(self, x: BlockOperator) -> BlockOperator:
        """Left multiplication by x in the orthonormal GNS basis."""
        blocks = []
        for i, n in enumerate(self.spec.super_dims):
            blocks.append(np.kron(np.eye(n, dtype=complex), x.data[i]))
        D = self.gns_dim
        M = np.zeros((D, D), dtype=complex)
        off = 0
        for blk in blocks:
            m = blk.shape[0]
            M[off : off + m, off : off + m] = blk
            off += m
        return self.gns_algebra.operator([M])

    def coeff(self, x: BlockOperator) -> np.ndarray:
        """GNS coordinate vector of x in the orthonormal basis."""
        D = self.gns_dim
        c = np.empty(D, dtype=complex)
        for idx, (i, b, a) in enumerate(self._index):
            ni = self.spec.super_dims[i]
            c[idx] = np.sqrt(ni / D) * x.data[i][a, b]
        return c

    def tr1(self, X: BlockOperator) -> complex:
        """Normalized ambient matrix trace on the GNS space."""
        return complex(np.trace(X.data[0])) / self.gns_dim

    def e1_operator(self) -> BlockOperator:
        return self.gns_algebra.operator([self.e1])

    @property
    def tr1_state(self) -> TracialState:
        return TracialState(self.gns_algebra, (1,))


def build_basic_construction(
    spec: InclusionSpec, max_gns_dim: int = DEFAULT_GNS_CAP
) -> BasicConstruction:
    """Build <A, e_1> on L^2(A, tau); requires the spectral condition.

    Under it the normalized ambient trace on the GNS space restricts to the
    Markov trace on left-multiplication operators, which is validated here
    together with the Jones relation e1 x e1 = embed(E(x)) e1.
    """
    report = check_spectral_condition(spec)
    if not report.holds:
        raise SpectralConditionFailed("basic construction requires the spectral condition")
    tau = TracialState(spec.super_algebra, spec.super_dims)
    D = spec.super_algebra.vector_dim
    if D > max_gns_dim:
        raise ValueError(f"gns_dim {D} exceeds cap {max_gns_dim}")

    index = [
        (i, b, a)
        for i, n in enumerate(spec.super_dims)
        for b in range(n)
        for a in range(n)
    ]
    bc = BasicConstruction(spec, tau, D, np.zeros((D, D)), index)

    # e1: tau-orthonormalize the embedded matrix units of B and project.
    cols = []
    for _, unit in spec.sub_algebra.matrix_units():
        cols.append(bc.coeff(embed(spec, unit)))
    Q = _gram_schmidt(np.array(cols).T)
    bc.e1 = Q @ Q.conj().T

    _validate_basic_construction(bc)
    return bc


def _validate_basic_construction(bc: BasicConstruction):
    spec = bc.spec
    E = markov_expectation(spec)
    e1 = bc.e1
    worst_jones, worst_trace = 0.0, 0.0
    for _, unit in spec.super_algebra.matrix_units():
        L = bc.left_rep(unit).data[0]
        lhs = e1 @ L @ e1
        rhs = bc.left_rep(E(unit)).data[0] @ e1
        worst_jones = max(worst_jones, float(np.max(np.abs(lhs - rhs))))
        worst_trace = max(
            worst_trace, abs(np.trace(L) / bc.gns_dim - bc.tau(unit))
        )
    if worst_jones > JONES_TOL:
        raise AssertionError(f"Jones relation residual {worst_jones}")
    if worst_trace > 1e-10:
        raise AssertionError(f"Markov compatibility residual {worst_trace}")


def dual_expectation(bc: BasicConstruction, X: BlockOperator) -> BlockOperator:
    """tr1-preserving projection of a GNS-space operator onto left_rep(A)."""
    if bc._proj is None:
        basis = [bc.left_rep(u) for _, u in bc.spec.super_algebra.matrix_units()]
        bc._proj = _GramProjector(bc.tr1_state, basis)
    if isinstance(X, np.ndarray):
        X = bc.gns_algebra.operator([X])
    return bc._proj(X)


def generated_algebra_sampler(bc: BasicConstruction, count: int = 10):
    """Sampler of elements of <A, e1> for reconstruction checks.

    The generated algebra is spanned by L(x) together with L(x) e1 L(y); it is
    a proper subalgebra of the full GNS matrix algebra unless B = C.
    """
    e1 = bc.e1_operator()
    A = bc.spec.super_algebra

    def sampler(rng):
        out = [(f"left unit {lbl}", bc.left_rep(u)) for lbl, u in A.matrix_units()]
        for t in range(count):
            X = bc.left_rep(A.random(rng))
            X = X + bc.left_rep(A.random(rng)) @ e1 @ bc.left_rep(A.random(rng))
            out.append((f"random {t}", X))
        return out

    return sampler


def basic_construction_basis(bc: BasicConstruction, b: UnitaryBasis) -> UnitaryBasis:
    """Fourier-twisted basis W_j = sum_k epsilon(jk/d) U_k e1 U_k* for (A in A_1, E_1)."""
    d = b.d
    e1 = bc.e1_operator()
    terms = []
    for U in b.elements:
        L = bc.left_rep(U)
        terms.append(L @ e1 @ L.adjoint())
    total = bc.gns_algebra.zero()
    for t in terms:
        total = total + t
    if (total - bc.gns_algebra.identity()).norm_inf() > PARTITION_TOL:
        raise PartitionOfUnityFailed("sum of U e1 U* deviates from the identity")

    elements = []
    for j in range(d):
        W = bc.gns_algebra.zero()
        for k, t in enumerate(terms):
            W = W + epsilon(Fraction(j * k, d)) * t
        elements.append(W)

    # When B = C the model A_1 = M_D carries the canonical transpose spec.
    out_spec = None
    if bc.spec.r == 1 and bc.spec.sub_dims == (1,):
        out_spec = bc.spec.transpose()
        assert out_spec.super_dims == (bc.gns_dim,)
    return UnitaryBasis(out_spec, tuple(elements), "basic_construction")


def basic_model_basis(sub_dims) -> UnitaryBasis:
    """Basis for ((+)_j M_{m_j} in M_{sum m_j^2}) via the basic construction of C in B."""
    sub_dims = tuple(int(m) for m in sub_dims)
    spec0 = InclusionSpec.from_matrix([[m] for m in sub_dims], [1])
    b0 = abelian_basis(spec0)
    bc = build_basic_construction(spec0)
    return basic_construction_basis(bc, b0)
