"""Trace-preserving conditional expectations: pinch, weighted average, channel form.

The expectation onto the sub-algebra factors as E = E2 o E1: E1 pinches to
the sub-block diagonal (and preserves every trace), E2 averages matching
blocks with exact rational weights q_ij = p_i / sum_x p_x a_xj.  When the
preserved trace is the standard one, E is also a mixed unitary channel built
from one diagonal unitary and one cyclic block permutation per sub column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import BlockOperator, MultiMatrixAlgebra, TracialState, epsilon
from .errors import AlgebraMismatch, NonStandardTrace, NotPinched, SingularGram
from .inclusion import InclusionSpec, embed, markov_trace, unembed

PINCH_TOL = 1e-9
GRAM_COND_LIMIT = 1e12


@dataclass(frozen=True)
class ExpectationWeights:
    """Rational averaging weights q_ij for the block-averaging step E2."""

    spec: InclusionSpec
    trace_vector: tuple

    def __post_init__(self):
        p = tuple(self.trace_vector)
        if len(p) != self.spec.s:
            raise AlgebraMismatch("trace vector length does not match super-algebra")
        object.__setattr__(self, "trace_vector", p)

    def q(self, i: int, j: int):
        p = self.trace_vector
        denom = sum(p[x] * self.spec.a(x, j) for x in range(self.spec.s))
        if all(isinstance(v, int) for v in p):
            return Fraction(p[i], denom)
        return p[i] / denom

    @property
    def column_counts(self) -> tuple[int, ...]:
        """T_j = number of copies of sub block j inside the super-algebra."""
        return tuple(
            sum(self.spec.a(i, j) for i in range(self.spec.s)) for j in range(self.spec.r)
        )

    @property
    def total_count(self) -> int:
        return sum(self.column_counts)


def pinch_E1(spec: InclusionSpec, X: BlockOperator) -> BlockOperator:
    """Pinch X to the sub-block diagonal: sum_{ijk} P_ijk X P_ijk."""
    if X.algebra != spec.super_algebra:
        raise AlgebraMismatch("operand does not belong to the super-algebra")
    emb = spec.embedding
    data = []
    for i, n in enumerate(spec.super_dims):
        M = np.zeros((n, n), dtype=complex)
        for j, k, start in emb.sub_blocks(i):
            mj = spec.sub_dims[j]
            M[start : start + mj, start : start + mj] = X.data[i][
                start : start + mj, start : start + mj
            ]
        data.append(M)
    return spec.super_algebra.operator(data)


def average_E2(
    weights: ExpectationWeights, Y: BlockOperator, tol: float = PINCH_TOL
) -> BlockOperator:
    """q-weighted average over all copies of each sub block; lands in embed(B)."""
    spec = weights.spec
    if Y.algebra != spec.super_algebra:
        raise AlgebraMismatch("operand does not belong to the super-algebra")
    if (Y - pinch_E1(spec, Y)).norm_inf() > tol:
        raise NotPinched("input has off-block mass above tolerance")
    emb = spec.embedding
    averaged = []
    for j in range(spec.r):
        mj = spec.sub_dims[j]
        Z = np.zeros((mj, mj), dtype=complex)
        for v in range(spec.s):
            for w in range(spec.a(v, j)):
                start = emb.block_start(v, j, w)
                Z += float(weights.q(v, j)) * Y.data[v][start : start + mj, start : start + mj]
        averaged.append(Z)
    return embed(spec, spec.sub_algebra.operator(averaged))


def conditional_expectation(
    spec: InclusionSpec, phi: TracialState, X: BlockOperator
) -> BlockOperator:
    """The phi-preserving conditional expectation E = E2 o E1, in embedded form."""
    w = ExpectationWeights(spec, phi.trace_vector)
    return average_E2(w, pinch_E1(spec, X))


def conditional_expectation_compressed(
    spec: InclusionSpec, phi: TracialState, X: BlockOperator
) -> BlockOperator:
    """Same map, returned as an element of the sub-algebra."""
    return unembed(spec, conditional_expectation(spec, phi, X))


def markov_expectation(spec: InclusionSpec):
    """Callable E for the Markov-trace-preserving expectation, in embedded form.

    Uses the exact dimension-vector trace when the spectral condition holds
    (works on disconnected direct sums too); otherwise falls back to the
    numerically computed Markov trace.
    """
    from .inclusion import _spectral_quick

    holds, _ = _spectral_quick(spec)
    if holds:
        phi = TracialState(spec.super_algebra, spec.super_dims)
    else:
        phi = markov_trace(spec)
    weights = ExpectationWeights(spec, phi.trace_vector)

    def E(X: BlockOperator) -> BlockOperator:
        return average_E2(weights, pinch_E1(spec, X))

    E.phi = phi
    E.spec = spec
    return E


@dataclass(frozen=True)
class MixedUnitaryDecomposition:
    """E as a uniform average over L^x K^y conjugations on the ambient space.

    K is diagonal with T-th roots of unity; L_j cyclically permutes the T_j
    copies of sub block j.  The unitaries live in the ambient matrix algebra,
    not necessarily in the super-algebra itself.
    """

    spec: InclusionSpec
    K: np.ndarray
    L: tuple[np.ndarray, ...]
    column_counts: tuple[int, ...]
    # phase of K on sub-block (i, j, k) as an exact rational over T, and the
    # (i, k) cycle each L_j runs through
    k_phases: tuple = ()
    cycles: tuple = ()

    @property
    def total_count(self) -> int:
        return sum(self.column_counts)

    @property
    def weight(self) -> Fraction:
        prod = 1
        for t in self.column_counts:
            prod *= t
        return Fraction(1, prod * self.total_count)

    def unitaries(self):
        """All L_0^{x_0} ... L_{r-1}^{x_{r-1}} K^y in the average."""
        T = self.total_count
        Lpowers = []
        for Lj, Tj in zip(self.L, self.column_counts):
            powers = [np.eye(Lj.shape[0], dtype=complex)]
            for _ in range(Tj - 1):
                powers.append(Lj @ powers[-1])
            Lpowers.append(powers)
        Kpowers = [np.eye(self.K.shape[0], dtype=complex)]
        for _ in range(T - 1):
            Kpowers.append(self.K @ Kpowers[-1])
        for xs in itertools.product(*(range(Tj) for Tj in self.column_counts)):
            Lprod = Kpowers[0]
            for powers, x in zip(Lpowers, xs):
                Lprod = Lprod @ powers[x]
            for y in range(T):
                yield Lprod @ Kpowers[y]

    def apply(self, X) -> np.ndarray:
        """Average the unitary conjugations over a dense ambient matrix."""
        if isinstance(X, BlockOperator):
            X = X.to_dense()
        X = np.asarray(X, dtype=complex)
        out = np.zeros_like(X)
        for U in self.unitaries():
            out += U @ X @ U.conj().T
        return out * float(self.weight)


def mixed_unitary_channel(spec: InclusionSpec) -> MixedUnitaryDecomposition:
    """Mixed-unitary form of E for the standard trace (all Markov weights equal)."""
    spec.validate()
    p = markov_trace(spec).trace_vector
    if any(abs(v - p[0]) > 1e-12 for v in p):
        raise NonStandardTrace("mixed-unitary form requires equal trace weights")

    emb = spec.embedding
    N = spec.super_algebra.ambient_dim
    offsets = spec.super_algebra.block_offsets()
    w = ExpectationWeights(spec, tuple(1 for _ in range(spec.s)))
    T = w.total_count

    # K: scalar epsilon((cum + k) / T) on sub-block (i, j, k); the running sum
    # over (i1, j1) < (i, j) of a_{i1 j1} enumerates 0..T-1 across all blocks.
    diag = np.zeros(N, dtype=complex)
    k_phases = []
    cum = 0
    for i in range(spec.s):
        for j in range(spec.r):
            mj = spec.sub_dims[j]
            for k in range(spec.a(i, j)):
                x = Fraction(cum + k, T)
                start = offsets[i] + emb.block_start(i, j, k)
                diag[start : start + mj] = epsilon(x)
                k_phases.append(((i, j, k), x))
            cum += spec.a(i, j)
    K = np.diag(diag)

    # L_j: cyclic permutation of the (i, k) copies of sub block j, fixing l.
    Ls, cycles = [], []
    for j in range(spec.r):
        group = [(i, k) for i in range(spec.s) for k in range(spec.a(i, j))]
        cycles.append(tuple(group))
        L = np.eye(N, dtype=complex)
        if len(group) > 1:
            L = np.zeros((N, N), dtype=complex)
            mj = spec.sub_dims[j]
            starts = [offsets[i] + emb.block_start(i, j, k) for (i, k) in group]
            occupied = set()
            for src, tgt in zip(starts, starts[1:] + starts[:1]):
                for l in range(mj):
                    L[tgt + l, src + l] = 1.0
                    occupied.add(src + l)
            for x in range(N):
                if x not in occupied:
                    L[x, x] = 1.0
        Ls.append(L)
    return MixedUnitaryDecomposition(
        spec, K, tuple(Ls), w.column_counts, tuple(k_phases), tuple(cycles)
    )


class _GramProjector:
    """Orthogonal projection onto the span of a fixed operator family."""

    def __init__(self, phi: TracialState, basis: list[BlockOperator]):
        self.phi = phi
        self.basis = list(basis)
        n = len(self.basis)
        G = np.empty((n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                G[a, b] = phi.inner(self.basis[a], self.basis[b])
        if np.linalg.cond(G) > GRAM_COND_LIMIT:
            raise SingularGram("projection basis is numerically degenerate")
        self._G = G

    def __call__(self, X: BlockOperator) -> BlockOperator:
        v = np.array([self.phi.inner(S, X) for S in self.basis])
        c = np.linalg.solve(self._G, v)
        out = self.basis[0].algebra.zero()
        for ci, S in zip(c, self.basis):
            out = out + ci * S
        return out


def projection_expectation(
    phi: TracialState, subalgebra_basis, X: BlockOperator
) -> BlockOperator:
    """Trace-preserving expectation as orthogonal projection in the phi-inner product."""
    return _GramProjector(phi, list(subalgebra_basis))(X)
