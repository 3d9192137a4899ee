"""JSON serialization for inclusion specs and bases."""

from __future__ import annotations

import json

import numpy as np

from .algebra import TracialState
from .bases import UnitaryBasis
from .errors import DimensionMismatch
from .inclusion import InclusionSpec, markov_trace


def spec_to_dict(spec: InclusionSpec, name: str = "") -> dict:
    out = {
        "inclusion_matrix": [list(row) for row in spec.inclusion_matrix],
        "sub_dims": list(spec.sub_dims),
        "super_dims": list(spec.super_dims),
    }
    if name:
        out["name"] = name
    return out


def spec_from_dict(doc: dict) -> InclusionSpec:
    try:
        mat = doc["inclusion_matrix"]
        sub = doc["sub_dims"]
    except (KeyError, TypeError) as exc:
        raise DimensionMismatch(f"missing field in spec document: {exc}")
    spec = InclusionSpec.from_matrix(mat, sub)
    if "super_dims" in doc and tuple(doc["super_dims"]) != spec.super_dims:
        raise DimensionMismatch("super_dims inconsistent with inclusion_matrix @ sub_dims")
    spec.validate()
    return spec


def trace_state_from_dict(doc: dict, spec: InclusionSpec) -> TracialState:
    """The document's trace_vector as a tracial state; defaults to the Markov trace."""
    if doc.get("trace_vector") is not None:
        return TracialState(spec.super_algebra, tuple(doc["trace_vector"]))
    return markov_trace(spec)


def _block_to_json(block: np.ndarray) -> list:
    """Flat row-major list of [re, im] pairs."""
    return [[float(z.real), float(z.imag)] for z in block.ravel()]


def _block_from_json(entries, n: int) -> np.ndarray:
    flat = np.array([complex(re, im) for re, im in entries])
    if flat.size != n * n:
        raise DimensionMismatch(f"block has {flat.size} entries, expected {n * n}")
    return flat.reshape(n, n)


def basis_to_dict(basis: UnitaryBasis, name: str = "") -> dict:
    out = {
        "d": basis.d,
        "provenance": basis.provenance,
        "elements": [[_block_to_json(blk) for blk in W.data] for W in basis.elements],
    }
    if basis.spec is not None:
        out["spec"] = spec_to_dict(basis.spec)
    else:
        out["spec"] = None
        out["block_dims"] = list(basis.elements[0].algebra.blocks)
    if name:
        out["name"] = name
    return out


def basis_from_dict(doc: dict) -> UnitaryBasis:
    spec = spec_from_dict(doc["spec"]) if doc.get("spec") is not None else None
    if spec is not None:
        alg = spec.super_algebra
    else:
        from .algebra import MultiMatrixAlgebra

        alg = MultiMatrixAlgebra(tuple(doc["block_dims"]))
    elements = []
    for blocks in doc["elements"]:
        if len(blocks) != alg.num_blocks:
            raise DimensionMismatch("element block count does not match algebra")
        elements.append(
            alg.operator([_block_from_json(b, n) for b, n in zip(blocks, alg.blocks)])
        )
    return UnitaryBasis(spec, tuple(elements), doc.get("provenance", "loaded"))


def save_spec(path, spec: InclusionSpec, name: str = ""):
    with open(path, "w") as fh:
        json.dump(spec_to_dict(spec, name), fh, indent=1)
        fh.write("\n")


def load_spec(path) -> InclusionSpec:
    with open(path) as fh:
        return spec_from_dict(json.load(fh))


def save_basis(path, basis: UnitaryBasis, name: str = ""):
    with open(path, "w") as fh:
        json.dump(basis_to_dict(basis, name), fh)
        fh.write("\n")


def load_basis(path) -> UnitaryBasis:
    with open(path) as fh:
        return basis_from_dict(json.load(fh))
