"""Command line interface: check, basis, verify, channel, entropy.

Exit codes: 0 success, 1 a mathematical condition failed, 2 bad input,
3 no known construction applies to the spec.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import catalog
from .bases import (
    UnitaryBasis,
    abelian_basis,
    full_matrix_sub_basis,
    full_matrix_super_basis,
    weyl_basis,
)
from .errors import UobError
from .expectation import markov_expectation, mixed_unitary_channel
from .inclusion import InclusionSpec, check_spectral_condition
from .io import basis_to_dict, load_basis, load_spec
from .verify import all_passed, verify_basis

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_NO_CONSTRUCTION = 3

METHODS = ("auto", "abelian", "weyl", "tensor", "full_matrix_sub", "full_matrix_super", "basic")


def _resolve_spec(token: str) -> InclusionSpec:
    if token in catalog.catalog_names():
        return catalog.catalog_spec(token)
    if os.path.exists(token):
        return load_spec(token)
    raise FileNotFoundError(f"'{token}' is neither a catalog name nor a file")


def _basic_basis(spec: InclusionSpec) -> UnitaryBasis:
    """Basis via the basic construction; only for M_n containing B with A = m^t."""
    from .tower import basic_construction_basis, build_basic_construction

    if spec.s != 1 or spec.inclusion_matrix[0] != spec.sub_dims:
        raise UobError("basic method needs a single super block with a_j = m_j")
    base = InclusionSpec.from_matrix([[m] for m in spec.sub_dims], [1])
    b0 = abelian_basis(base)
    bc = build_basic_construction(base)
    return basic_construction_basis(bc, b0)


def _tensor_basis(spec: InclusionSpec) -> UnitaryBasis:
    """Strip the largest common full-matrix tensor factor M_g and recurse."""
    import math

    from .bases import identity_basis, tensor_basis

    g = math.gcd(*spec.sub_dims, *spec.super_dims)
    if g == 1:
        raise UobError("no common full-matrix tensor factor to split off")
    inner = InclusionSpec.from_matrix(spec.inclusion_matrix, [m // g for m in spec.sub_dims])
    b = tensor_basis(identity_basis(g), _construct(inner, "auto"))
    assert b.spec == spec
    return b


def _construct(spec: InclusionSpec, method: str) -> UnitaryBasis:
    if method == "abelian":
        return abelian_basis(spec)
    if method == "weyl":
        return weyl_basis(spec)
    if method == "tensor":
        return _tensor_basis(spec)
    if method == "full_matrix_sub":
        return full_matrix_sub_basis(spec)
    if method == "full_matrix_super":
        return full_matrix_super_basis(spec)
    if method == "basic":
        return _basic_basis(spec)
    last = None
    for builder in (abelian_basis, weyl_basis, full_matrix_sub_basis, full_matrix_super_basis):
        try:
            return builder(spec)
        except UobError as exc:
            last = exc
    raise UobError(f"no known construction applies: {last}")


def cmd_check(args) -> int:
    # exit 0 iff the spec itself is valid; a failing spectral condition is a
    # legitimate finding, not an error
    spec = _resolve_spec(args.spec)
    report = check_spectral_condition(spec)
    print(json.dumps(report.to_dict(), indent=1))
    return EXIT_OK


def cmd_entropy(args) -> int:
    spec = _resolve_spec(args.spec)
    report = check_spectral_condition(spec)
    if not report.holds:
        print("spectral condition fails; conditional entropy is not ln d", file=sys.stderr)
        return EXIT_FAILED
    print(f"{report.entropy_value:.12f}")
    return EXIT_OK


def cmd_basis(args) -> int:
    spec = _resolve_spec(args.spec)
    try:
        basis = _construct(spec, args.method)
    except UobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONSTRUCTION if args.method == "auto" else EXIT_FAILED
    reports = verify_basis(basis, seed=args.seed, recon_tol=args.tol)
    for r in reports:
        print(r)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(basis_to_dict(basis, args.spec), fh)
            fh.write("\n")
        print(f"wrote {basis.d} elements to {args.out}")
    return EXIT_OK if all_passed(reports) else EXIT_FAILED


def cmd_verify(args) -> int:
    basis = load_basis(args.basis)
    reports = verify_basis(basis, seed=args.seed, recon_tol=args.tol)
    for r in reports:
        print(r)
    return EXIT_OK if all_passed(reports) else EXIT_FAILED


def cmd_channel(args) -> int:
    spec = _resolve_spec(args.spec)
    dec = mixed_unitary_channel(spec)
    E = markov_expectation(spec)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(5):
        X = spec.super_algebra.random(rng)
        worst = max(worst, float(np.max(np.abs(dec.apply(X) - E(X).to_dense()))))
    count = 1
    for Tj in dec.column_counts:
        count *= Tj
    count *= dec.total_count
    print(
        json.dumps(
            {
                "unitary_count": count,
                "column_counts": list(dec.column_counts),
                "k_phases": {str(lbl): str(x) for lbl, x in dec.k_phases},
                "cycles": [[list(pos) for pos in cyc] for cyc in dec.cycles],
                "agreement_residual": worst,
            }
        )
    )
    return EXIT_OK if worst <= args.tol else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    tol_default = float(os.environ.get("UOB_TOL", "1e-8"))
    p = argparse.ArgumentParser(prog="uob", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=float, default=tol_default)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("check", help="test the integer spectral condition")
    sp.add_argument("spec", help="catalog name or spec JSON path")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("entropy", help="conditional entropy ln d")
    sp.add_argument("spec")
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("basis", help="construct and verify a unitary orthonormal basis")
    sp.add_argument("spec")
    sp.add_argument("--method", choices=METHODS, default="auto")
    sp.add_argument("--out", help="write the basis as JSON")
    common(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("verify", help="re-verify a basis JSON file")
    sp.add_argument("basis", help="basis JSON path")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("channel", help="mixed unitary form of the expectation")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(func=cmd_channel)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except UobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
