"""Inclusion specifications, the spectral condition, Markov traces, embeddings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import BlockOperator, MultiMatrixAlgebra, TracialState
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    DisconnectedDiagram,
    EmptyColumn,
)

SPECTRAL_TOL = 1e-9


@dataclass(frozen=True)
class InclusionSpec:
    """The triple (A, m, n): inclusion matrix plus the two dimension vectors.

    inclusion_matrix is s x r with non-negative integer entries a_{ij}; block
    j of the sub-algebra appears a_{ij} times inside block i of the
    super-algebra.  Dimension counting forces A @ sub_dims == super_dims.
    """

    inclusion_matrix: tuple[tuple[int, ...], ...]
    sub_dims: tuple[int, ...]
    super_dims: tuple[int, ...]

    def __post_init__(self):
        mat = tuple(tuple(int(a) for a in row) for row in self.inclusion_matrix)
        sub = tuple(int(m) for m in self.sub_dims)
        sup = tuple(int(n) for n in self.super_dims)
        object.__setattr__(self, "inclusion_matrix", mat)
        object.__setattr__(self, "sub_dims", sub)
        object.__setattr__(self, "super_dims", sup)

    @classmethod
    def from_matrix(cls, inclusion_matrix, sub_dims) -> "InclusionSpec":
        """Build a spec computing super_dims = A @ sub_dims."""
        mat = [[int(a) for a in row] for row in inclusion_matrix]
        sub = [int(m) for m in sub_dims]
        sup = [sum(a * m for a, m in zip(row, sub)) for row in mat]
        return cls(tuple(map(tuple, mat)), tuple(sub), tuple(sup))

    @property
    def s(self) -> int:
        return len(self.super_dims)

    @property
    def r(self) -> int:
        return len(self.sub_dims)

    @cached_property
    def sub_algebra(self) -> MultiMatrixAlgebra:
        return MultiMatrixAlgebra(self.sub_dims)

    @cached_property
    def super_algebra(self) -> MultiMatrixAlgebra:
        return MultiMatrixAlgebra(self.super_dims)

    def a(self, i: int, j: int) -> int:
        return self.inclusion_matrix[i][j]

    def validate(self) -> "Embedding":
        """Check shape consistency, A @ m == n, and no empty column."""
        if len(self.inclusion_matrix) != self.s:
            raise DimensionMismatch("inclusion matrix row count does not match super_dims")
        for row in self.inclusion_matrix:
            if len(row) != self.r:
                raise DimensionMismatch("inclusion matrix column count does not match sub_dims")
            if any(a < 0 for a in row):
                raise DimensionMismatch("inclusion matrix entries must be non-negative")
        if any(m < 1 for m in self.sub_dims) or any(n < 1 for n in self.super_dims):
            raise DimensionMismatch("dimension vectors must be positive")
        for i, row in enumerate(self.inclusion_matrix):
            if sum(a * m for a, m in zip(row, self.sub_dims)) != self.super_dims[i]:
                raise DimensionMismatch(
                    f"block {i}: sum_j a_ij m_j = "
                    f"{sum(a * m for a, m in zip(row, self.sub_dims))} != {self.super_dims[i]}"
                )
        for j in range(self.r):
            if all(self.inclusion_matrix[i][j] == 0 for i in range(self.s)):
                raise EmptyColumn(f"column {j} of the inclusion matrix is zero")
        return self.embedding

    @cached_property
    def embedding(self) -> "Embedding":
        return Embedding(self)

    def is_connected(self) -> bool:
        """Connectivity of the Bratteli diagram viewed as a bipartite graph."""
        nodes = self.s + self.r
        adj = [[] for _ in range(nodes)]
        for i in range(self.s):
            for j in range(self.r):
                if self.inclusion_matrix[i][j] > 0:
                    adj[i].append(self.s + j)
                    adj[self.s + j].append(i)
        seen, stack = {0}, [0]
        while stack:
            for v in adj[stack.pop()]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == nodes

    def transpose(self) -> "InclusionSpec":
        """Spec of the basic-construction inclusion: matrix A^t, sub dims = n."""
        mat = tuple(
            tuple(self.inclusion_matrix[i][j] for i in range(self.s)) for j in range(self.r)
        )
        return InclusionSpec.from_matrix(mat, self.super_dims)


class Embedding:
    """Indexed orthonormal basis u_{ijkl} with its lexicographic global ordering.

    Within super block i the labels (j, k, l) with 0 <= j < r, 0 <= k < a_ij,
    0 <= l < m_j are ordered lexicographically; the position of u_{ijkl} is
    sum_{v<j} a_iv m_v + k m_j + l.
    """

    def __init__(self, spec: InclusionSpec):
        self.spec = spec

    def position(self, i: int, j: int, k: int, l: int = 0) -> int:
        spec = self.spec
        off = sum(spec.a(i, v) * spec.sub_dims[v] for v in range(j))
        return off + k * spec.sub_dims[j] + l

    def block_start(self, i: int, j: int, k: int) -> int:
        return self.position(i, j, k, 0)

    def sub_blocks(self, i: int):
        """Yield (j, k, start) for every sub-block inside super block i."""
        for j in range(self.spec.r):
            for k in range(self.spec.a(i, j)):
                yield j, k, self.block_start(i, j, k)

    def labels(self, i: int):
        """All labels (j, k, l) of super block i in lexicographic order."""
        out = []
        for j in range(self.spec.r):
            for k in range(self.spec.a(i, j)):
                for l in range(self.spec.sub_dims[j]):
                    out.append((j, k, l))
        return out

    @property
    def index_list(self):
        return [(i, j, k, l) for i in range(self.spec.s) for (j, k, l) in self.labels(i)]


@dataclass(frozen=True)
class SpectralReport:
    """Outcome of the necessary spectral/trace conditions."""

    holds: bool
    d: int | None
    markov_trace: TracialState | None
    quadratic_holds: bool
    entropy_value: float | None
    norm_sq: float
    connected: bool

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "d": self.d,
            "markov_trace_vector": list(self.markov_trace.trace_vector)
            if self.markov_trace is not None
            else None,
            "quadratic_holds": self.quadratic_holds,
            "entropy_value": self.entropy_value,
            "norm_sq": self.norm_sq,
            "connected": self.connected,
        }


def validate_spec(spec: InclusionSpec) -> Embedding:
    return spec.validate()


def _int_matvec(mat, vec):
    return [sum(a * v for a, v in zip(row, vec)) for row in mat]


def check_spectral_condition(spec: InclusionSpec) -> SpectralReport:
    """Decide A^t n == d m in exact integer arithmetic; cross-check d = ||A||^2."""
    spec.validate()
    A = spec.inclusion_matrix
    m, n = spec.sub_dims, spec.super_dims
    At = [[A[i][j] for i in range(spec.s)] for j in range(spec.r)]
    Atn = _int_matvec(At, n)

    holds, d = True, None
    for j in range(spec.r):
        if Atn[j] % m[j] != 0:
            holds = False
            break
        q = Atn[j] // m[j]
        if d is None:
            d = q
        elif q != d:
            holds = False
            break
    if not holds:
        d = None

    A_np = np.array(A, dtype=float)
    norm_sq = float(np.linalg.norm(A_np, ord=2) ** 2)

    connected = spec.is_connected()
    if holds:
        # Exact consequences A^t A m = d m and A A^t n = d n.
        assert _int_matvec(At, _int_matvec(A, m)) == [d * mj for mj in m]
        assert _int_matvec(A, _int_matvec(At, n)) == [d * ni for ni in n]
        if abs(norm_sq - d) > SPECTRAL_TOL:
            raise AssertionError(f"numerical ||A||^2 = {norm_sq} disagrees with d = {d}")
        quadratic = sum(ni * ni for ni in n) == d * sum(mj * mj for mj in m)
        trace = TracialState(spec.super_algebra, n)
        entropy = math.log(d)
    else:
        quadratic = False
        trace = None
        if connected:
            try:
                trace = markov_trace(spec)
            except DisconnectedDiagram:  # pragma: no cover
                trace = None
        entropy = None
    return SpectralReport(holds, d, trace, quadratic, entropy, norm_sq, connected)


def markov_trace(spec: InclusionSpec) -> TracialState:
    """The tracial state whose trace vector is the Perron eigenvector of A A^t.

    When the spectral condition holds the vector is returned exactly as the
    dimension vector n; otherwise it is computed numerically.  Disconnected
    diagrams are rejected because uniqueness fails.
    """
    spec.validate()
    if not spec.is_connected():
        raise DisconnectedDiagram("Markov trace is not unique on a disconnected diagram")
    report_holds, d = _spectral_quick(spec)
    if report_holds:
        return TracialState(spec.super_algebra, spec.super_dims)
    A = np.array(spec.inclusion_matrix, dtype=float)
    M = A @ A.T
    vals, vecs = np.linalg.eigh(M)
    v = vecs[:, -1]
    v = v * np.sign(v[np.argmax(np.abs(v))])
    if np.any(v <= 1e-12):
        raise DisconnectedDiagram("Perron eigenvector is not strictly positive")
    v = v / v.min()
    return TracialState(spec.super_algebra, tuple(float(x) for x in v))


def _spectral_quick(spec: InclusionSpec):
    A, m, n = spec.inclusion_matrix, spec.sub_dims, spec.super_dims
    d = None
    for j in range(spec.r):
        t = sum(A[i][j] * n[i] for i in range(spec.s))
        if t % m[j] != 0:
            return False, None
        q = t // m[j]
        if d is None:
            d = q
        elif q != d:
            return False, None
    return True, d


def embed(spec: InclusionSpec, Y: BlockOperator) -> BlockOperator:
    """Block-diagonal image of a sub-algebra element under the embedding layout."""
    if Y.algebra != spec.sub_algebra:
        raise AlgebraMismatch("operand does not belong to the sub-algebra")
    emb = spec.embedding
    data = []
    for i, n in enumerate(spec.super_dims):
        M = np.zeros((n, n), dtype=complex)
        for j, k, start in emb.sub_blocks(i):
            mj = spec.sub_dims[j]
            M[start : start + mj, start : start + mj] = Y.data[j]
        data.append(M)
    return spec.super_algebra.operator(data)


def unembed(spec: InclusionSpec, X: BlockOperator) -> BlockOperator:
    """Read a sub-algebra element back from its embedded image (first copy per column)."""
    if X.algebra != spec.super_algebra:
        raise AlgebraMismatch("operand does not belong to the super-algebra")
    emb = spec.embedding
    data = [None] * spec.r
    for i in range(spec.s):
        for j, k, start in emb.sub_blocks(i):
            if data[j] is None:
                mj = spec.sub_dims[j]
                data[j] = X.data[i][start : start + mj, start : start + mj]
    return spec.sub_algebra.operator(data)


def minimal_central_projections(spec: InclusionSpec):
    """(P_i, Q_j): block identities of A and embedded block identities of B."""
    spec.validate()
    sup = spec.super_algebra
    Ps = []
    for i, n in enumerate(spec.super_dims):
        data = [
            np.eye(n2, dtype=complex) if i2 == i else np.zeros((n2, n2), dtype=complex)
            for i2, n2 in enumerate(spec.super_dims)
        ]
        Ps.append(sup.operator(data))
    Qs = []
    for j, m in enumerate(spec.sub_dims):
        data = [
            np.eye(m2, dtype=complex) if j2 == j else np.zeros((m2, m2), dtype=complex)
            for j2, m2 in enumerate(spec.sub_dims)
        ]
        Qs.append(embed(spec, spec.sub_algebra.operator(data)))
    return Ps, Qs
