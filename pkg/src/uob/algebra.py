"""Multi-matrix algebras, block operators, exact phases, and the circulant toolkit.

All phase arithmetic is done with exact rationals (``fractions.Fraction``,
understood mod 1) and exponentiated once at the very end, so long phase sums
cancel without drift.  Circulant matrices are parametrized by their
eigenvalues and built from the entrywise formula, never by conjugating with
Fourier matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import AlgebraMismatch

# Phases are rationals mod 1; any Fraction-convertible value is accepted.
Phase = Fraction

DEFAULT_TOL = 1e-9


def epsilon(x) -> complex:
    """e^{2 pi i x} for a rational phase x. Unit modulus by construction."""
    x = Fraction(x) % 1
    return complex(np.exp(2j * np.pi * (x.numerator / x.denominator)))


def geometric_phase_sum(k: int, x) -> complex:
    """Sum_{j=0}^{k-1} epsilon(j x).

    Equals k when x is an integer and 0 when k*x is an integer but x is not;
    both special cases are decided exactly at the rational level.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    x = Fraction(x)
    if x.denominator == 1:
        return complex(k)
    if (k * x).denominator == 1:
        return 0j
    return sum(epsilon(j * x) for j in range(k))


def fourier_matrix(n: int) -> np.ndarray:
    """The n x n finite Fourier matrix (1/sqrt(n)) [epsilon(jk/n)]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    F = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            F[j, k] = epsilon(Fraction(j * k, n))
    return F / np.sqrt(n)


def circulant(eigenvalues) -> np.ndarray:
    """Circulant matrix C(b_0, ..., b_{n-1}) parametrized by its eigenvalues.

    Entry (j, k) is (1/n) sum_y b_y epsilon(y (k - j) / n); the diagonal is
    constant, equal to the mean of the eigenvalues.
    """
    b = list(eigenvalues)
    n = len(b)
    if n == 0:
        raise ValueError("eigenvalue list must be non-empty")
    # f[t] = sum_y b_y epsilon(y t / n); entry (j,k) is f[(k-j) mod n] / n.
    # This is C = F* D(b) F, so F C F* = D(b) and the eigenvector of b_y is
    # (epsilon(-jy/n))_j.
    f = np.array(
        [sum(b[y] * epsilon(Fraction(y * t, n)) for y in range(n)) for t in range(n)]
    )
    C = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            C[j, k] = f[(k - j) % n] / n
    return C


def quasi_circulant(d1, eigenvalues, d2) -> np.ndarray:
    """D(d1) C(eigenvalues) D(d2): diagonal times circulant times diagonal."""
    a = np.asarray(list(d1), dtype=complex)
    c = np.asarray(list(d2), dtype=complex)
    b = list(eigenvalues)
    if not (len(a) == len(b) == len(c)):
        raise ValueError("d1, eigenvalues, d2 must have the same length")
    C = circulant(b)
    return a[:, None] * C * c[None, :]


@dataclass(frozen=True)
class MultiMatrixAlgebra:
    """A finite direct sum of full complex matrix algebras M_{n_0} + ... + M_{n_{s-1}}."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(n) for n in self.blocks)
        if not blocks or any(n < 1 for n in blocks):
            raise ValueError("block dimensions must be a non-empty list of positive integers")
        object.__setattr__(self, "blocks", blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def ambient_dim(self) -> int:
        return sum(self.blocks)

    @property
    def vector_dim(self) -> int:
        """Dimension of the algebra as a vector space, sum of n_i^2."""
        return sum(n * n for n in self.blocks)

    def block_offsets(self) -> list[int]:
        offs, acc = [], 0
        for n in self.blocks:
            offs.append(acc)
            acc += n
        return offs

    def operator(self, data) -> "BlockOperator":
        return BlockOperator(self, tuple(np.asarray(d, dtype=complex) for d in data))

    def identity(self) -> "BlockOperator":
        return self.operator([np.eye(n) for n in self.blocks])

    def zero(self) -> "BlockOperator":
        return self.operator([np.zeros((n, n)) for n in self.blocks])

    def from_dense(self, M: np.ndarray) -> "BlockOperator":
        """Read the diagonal blocks of an ambient-dim square matrix."""
        M = np.asarray(M, dtype=complex)
        if M.shape != (self.ambient_dim, self.ambient_dim):
            raise AlgebraMismatch(f"expected {self.ambient_dim}x{self.ambient_dim} matrix")
        out, offs = [], self.block_offsets()
        for n, o in zip(self.blocks, offs):
            out.append(M[o : o + n, o : o + n])
        return self.operator(out)

    def random(self, rng: np.random.Generator) -> "BlockOperator":
        return self.operator(
            [rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) for n in self.blocks]
        )

    def random_unitary(self, rng: np.random.Generator) -> "BlockOperator":
        data = []
        for n in self.blocks:
            q, r = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
            data.append(q * (np.diag(r) / np.abs(np.diag(r))))
        return self.operator(data)

    def matrix_units(self):
        """Yield ((i, a, b), E) over all matrix units of every block."""
        for i, n in enumerate(self.blocks):
            for a in range(n):
                for b in range(n):
                    M = np.zeros((n, n), dtype=complex)
                    M[a, b] = 1.0
                    data = [
                        M if i2 == i else np.zeros((n2, n2), dtype=complex)
                        for i2, n2 in enumerate(self.blocks)
                    ]
                    yield (i, a, b), self.operator(data)


@dataclass(frozen=True)
class BlockOperator:
    """An element of a multi-matrix algebra as a list of dense complex blocks."""

    algebra: MultiMatrixAlgebra
    data: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.data) != self.algebra.num_blocks:
            raise AlgebraMismatch("block count does not match algebra")
        for n, d in zip(self.algebra.blocks, self.data):
            if d.shape != (n, n):
                raise AlgebraMismatch(f"block shape {d.shape} does not match size {n}")

    def _check(self, other: "BlockOperator"):
        if self.algebra != other.algebra:
            raise AlgebraMismatch("operands belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return self.algebra.operator([a + b for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check(other)
        return self.algebra.operator([a - b for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return self.algebra.operator([-a for a in self.data])

    def __mul__(self, scalar):
        return self.algebra.operator([complex(scalar) * a for a in self.data])

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        return self.algebra.operator([a @ b for a, b in zip(self.data, other.data)])

    def adjoint(self) -> "BlockOperator":
        return self.algebra.operator([a.conj().T for a in self.data])

    def to_dense(self) -> np.ndarray:
        N = self.algebra.ambient_dim
        M = np.zeros((N, N), dtype=complex)
        for n, o, d in zip(self.algebra.blocks, self.algebra.block_offsets(), self.data):
            M[o : o + n, o : o + n] = d
        return M

    def norm_inf(self) -> float:
        """Largest absolute entry across all blocks."""
        return max(float(np.max(np.abs(d))) if d.size else 0.0 for d in self.data)

    def block_traces(self) -> list[complex]:
        return [complex(np.trace(d)) for d in self.data]

    def allclose(self, other: "BlockOperator", tol: float = DEFAULT_TOL) -> bool:
        self._check(other)
        return (self - other).norm_inf() <= tol


@dataclass(frozen=True)
class TracialState:
    """A faithful tracial state given by a positive trace vector, stored up to scale.

    phi(X) = (sum_i p_i trace(X_i)) / (sum_i p_i n_i); normalization happens on
    evaluation so integer vectors stay exact.
    """

    algebra: MultiMatrixAlgebra
    trace_vector: tuple

    def __post_init__(self):
        p = tuple(self.trace_vector)
        if len(p) != self.algebra.num_blocks:
            raise AlgebraMismatch("trace vector length does not match algebra")
        if any(not (v > 0) for v in p):
            raise ValueError("trace vector entries must be strictly positive")
        object.__setattr__(self, "trace_vector", p)

    @property
    def weight(self):
        """Normalization sum_i p_i n_i."""
        return sum(p * n for p, n in zip(self.trace_vector, self.algebra.blocks))

    def __call__(self, X: BlockOperator) -> complex:
        if X.algebra != self.algebra:
            raise AlgebraMismatch("operator does not belong to the state's algebra")
        total = sum(p * t for p, t in zip(self.trace_vector, X.block_traces()))
        return complex(total) / float(self.weight)

    def inner(self, X: BlockOperator, Y: BlockOperator) -> complex:
        """GNS inner product <X, Y> = phi(X* Y)."""
        return self(X.adjoint() @ Y)


def trace_eval(phi: TracialState, X: BlockOperator) -> complex:
    return phi(X)


def hs_inner(phi: TracialState, X: BlockOperator, Y: BlockOperator) -> complex:
    return phi.inner(X, Y)
