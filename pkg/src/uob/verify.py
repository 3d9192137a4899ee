"""Independent numerical checks for bases, expectations, and the trace conditions.

Every checker takes an expectation as a plain callable E mapping a block
operator to a block operator of the same algebra (embedded form), so the
same code verifies both multi-matrix inclusions and concrete
basic-construction models.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import BlockOperator, TracialState
from .bases import UnitaryBasis
from .expectation import markov_expectation
from .inclusion import InclusionSpec

UNITARY_TOL = 1e-9
ORTHO_TOL = 1e-9
RECON_TOL = 1e-8
POSITIVITY_FLOOR = -1e-9
TRACE_TOL = 1e-10
N_RANDOM = 10


@dataclass
class VerificationReport:
    """One named check with its worst residual against a fixed tolerance."""

    name: str
    passed: bool
    residual: float
    tolerance: float
    witness: str = ""
    seed: int | None = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
        }
        if self.witness:
            out["witness"] = self.witness
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        msg = f"[{status}] {self.name}: residual {self.residual:.3e} (tol {self.tolerance:.0e})"
        if self.witness and not self.passed:
            msg += f" at {self.witness}"
        return msg


def _report(name, residual, tol, witness="", seed=None) -> VerificationReport:
    return VerificationReport(name, residual <= tol, float(residual), tol, witness, seed)


def verify_unitary(basis: UnitaryBasis, tol: float = UNITARY_TOL) -> VerificationReport:
    """Every element satisfies W W* = W* W = I."""
    worst, witness = 0.0, ""
    if not basis.elements:
        return _report("unitary", np.inf, tol, "empty basis")
    I = basis.elements[0].algebra.identity()
    for j, W in enumerate(basis.elements):
        r = max((W @ W.adjoint() - I).norm_inf(), (W.adjoint() @ W - I).norm_inf())
        if r > worst:
            worst, witness = r, f"element {j}"
    return _report("unitary", worst, tol, witness)


def verify_orthonormality(basis: UnitaryBasis, E, tol: float = ORTHO_TOL) -> VerificationReport:
    """E(W_j* W_k) = delta_jk I for the given expectation."""
    I = basis.elements[0].algebra.identity()
    zero = basis.elements[0].algebra.zero()
    worst, witness = 0.0, ""
    for j, Wj in enumerate(basis.elements):
        for k, Wk in enumerate(basis.elements):
            target = I if j == k else zero
            r = (E(Wj.adjoint() @ Wk) - target).norm_inf()
            if r > worst:
                worst, witness = r, f"pair ({j}, {k})"
    return _report("orthonormality", worst, tol, witness)


def verify_reconstruction(
    basis: UnitaryBasis, E, tol: float = RECON_TOL, seed: int = 0, sampler=None
) -> VerificationReport:
    """X = sum_j W_j E(W_j* X) on all matrix units and random operators.

    ``sampler(rng)`` may supply the (label, X) test family instead, for bases
    of a proper subalgebra of the ambient block algebra.
    """
    alg = basis.elements[0].algebra
    rng = np.random.default_rng(seed)
    if sampler is not None:
        samples = list(sampler(rng))
    else:
        samples = [(f"unit {lbl}", X) for lbl, X in alg.matrix_units()]
        samples += [(f"random {t}", alg.random(rng)) for t in range(N_RANDOM)]
    worst, witness = 0.0, ""
    for label, X in samples:
        acc = alg.zero()
        for W in basis.elements:
            acc = acc + W @ E(W.adjoint() @ X)
        r = (acc - X).norm_inf()
        if r > worst:
            worst, witness = r, label
    return _report("reconstruction", worst, tol, witness, seed=seed)


def verify_expectation_axioms(
    E, phi: TracialState, tol: float = ORTHO_TOL, seed: int = 0
) -> list[VerificationReport]:
    """Idempotence, unitality, positivity, phi-preservation, and the bimodule law."""
    alg = phi.algebra
    rng = np.random.default_rng(seed)
    Xs = [alg.random(rng) for _ in range(N_RANDOM)]

    reports = []
    worst = max((E(E(X)) - E(X)).norm_inf() for X in Xs)
    reports.append(_report("idempotence", worst, tol, seed=seed))

    reports.append(_report("unitality", (E(alg.identity()) - alg.identity()).norm_inf(), tol))

    # E(X* X) must stay positive semidefinite, up to a small negative floor.
    worst_neg = 0.0
    for X in Xs:
        Y = E(X.adjoint() @ X)
        for blk in Y.data:
            lo = float(np.min(np.linalg.eigvalsh((blk + blk.conj().T) / 2)))
            worst_neg = min(worst_neg, lo)
    reports.append(_report("positivity", -worst_neg, -POSITIVITY_FLOOR, seed=seed))

    worst = max(abs(phi(E(X)) - phi(X)) for X in Xs)
    reports.append(_report("trace_preservation", worst, TRACE_TOL, seed=seed))

    # E(E(X) Y E(Z)) = E(X) E(Y) E(Z): the range acts as a bimodule.
    worst = 0.0
    for t in range(N_RANDOM):
        X, Y, Z = (alg.random(rng) for _ in range(3))
        lhs = E(E(X) @ Y @ E(Z))
        rhs = E(X) @ E(Y) @ E(Z)
        worst = max(worst, (lhs - rhs).norm_inf())
    reports.append(_report("bimodule", worst, tol, seed=seed))
    return reports


def verify_trace_conditions(
    spec: InclusionSpec, E=None, tol: float = TRACE_TOL
) -> list[VerificationReport]:
    """Exact integer trace conditions plus trace preservation of E.

    Checks A^t n = d m and sum n_i^2 = d sum m_j^2 in integer arithmetic, and
    that E preserves the tracial state with trace vector n on all matrix units.
    """
    A, m, n = spec.inclusion_matrix, spec.sub_dims, spec.super_dims
    Atn = [sum(A[i][j] * n[i] for i in range(spec.s)) for j in range(spec.r)]
    ok, d = True, None
    for j in range(spec.r):
        if Atn[j] % m[j] != 0:
            ok = False
            break
        q = Atn[j] // m[j]
        d = q if d is None else d
        ok = ok and q == d
    reports = [_report("integer_eigenvector", 0.0 if ok else 1.0, 0.5, f"A^t n = {Atn}")]

    quad = ok and sum(x * x for x in n) == d * sum(x * x for x in m)
    reports.append(_report("quadratic_identity", 0.0 if quad else 1.0, 0.5))

    if E is None:
        E = markov_expectation(spec)
    phi = TracialState(spec.super_algebra, n)
    worst = 0.0
    for _, unit in spec.super_algebra.matrix_units():
        worst = max(worst, abs(phi(E(unit)) - phi(unit)))
    reports.append(_report("markov_preservation", worst, tol))
    return reports


def verify_necessary_conditions(
    basis: UnitaryBasis, E=None, tol: float = ORTHO_TOL
) -> list[VerificationReport]:
    """Necessary conditions a unitary orthonormal basis forces on its inclusion.

    Checks that the family really is orthonormal under E, that its size equals
    the integer eigenvalue d from A^t n = d m, the exact quadratic identity
    sum n_i^2 = d sum m_j^2, and that E preserves the trace with vector n.
    """
    spec = basis.spec
    if spec is None:
        raise ValueError("necessary-condition checks need an inclusion spec")
    if E is None:
        E = markov_expectation(spec)
    reports = [verify_unitary(basis), verify_orthonormality(basis, E, tol)]
    reports.extend(verify_trace_conditions(spec, E))
    reports.append(_cardinality_report(spec, basis))
    return reports


def _cardinality_report(spec: InclusionSpec, basis: UnitaryBasis) -> VerificationReport:
    """Basis size must equal the integer d with A^t n = d m."""
    A, m, n = spec.inclusion_matrix, spec.sub_dims, spec.super_dims
    t = sum(A[i][0] * n[i] for i in range(spec.s))
    d = t // m[0] if t % m[0] == 0 else None
    mismatch = 0.0 if d is not None and basis.d == d else 1.0
    return _report("cardinality", mismatch, 0.5, f"d = {basis.d}, expected {d}")


def verify_basis(
    basis: UnitaryBasis, E=None, seed: int = 0, recon_tol: float = RECON_TOL
) -> list[VerificationReport]:
    """Full certificate for a basis: structural checks plus the trace conditions."""
    if E is None:
        if basis.spec is None:
            raise ValueError("no expectation given and the basis carries no spec")
        E = markov_expectation(basis.spec)
    reports = [
        verify_unitary(basis),
        verify_orthonormality(basis, E),
        verify_reconstruction(basis, E, tol=recon_tol, seed=seed),
    ]
    if basis.spec is not None:
        reports.extend(verify_trace_conditions(basis.spec, E))
        reports.append(_cardinality_report(basis.spec, basis))
    return reports


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)
