"""Named example inclusions shipped with the package, plus a random-spec generator."""

from __future__ import annotations

import itertools
import json
from importlib import resources

import numpy as np

from .inclusion import InclusionSpec, _spectral_quick
from .io import spec_from_dict

# name -> (inclusion_matrix, sub_dims); every spec except c2_in_m3 satisfies
# the integer spectral condition.
_CATALOG = {
    "c_in_m2": ([[2]], [1]),
    "c_in_m3": ([[3]], [1]),
    "c_in_m5": ([[5]], [1]),
    "c_in_m1_plus_m2": ([[1], [2]], [1]),
    "c_in_m1_m1_m2": ([[1], [1], [2]], [1]),
    "c2_in_m2": ([[1, 1]], [1, 1]),
    "c2_in_m4": ([[2, 2]], [1, 1]),
    "c2_in_m2_plus_m2": ([[1, 1], [1, 1]], [1, 1]),
    "c3_in_m3": ([[1, 1, 1]], [1, 1, 1]),
    "m2_in_m2_plus_m4": ([[1], [2]], [2]),
    "m2_in_m4": ([[2]], [2]),
    "c2_in_m3": ([[1, 2]], [1, 1]),
}


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def catalog_spec(name: str) -> InclusionSpec:
    mat, sub = _CATALOG[name]
    return InclusionSpec.from_matrix(mat, sub)


def load_catalog_file(name: str) -> InclusionSpec:
    """Load the shipped JSON document for a catalog entry."""
    text = resources.files("uob").joinpath("data", f"{name}.json").read_text()
    return spec_from_dict(json.loads(text))


def random_abelian_specs(count: int, seed: int, max_d: int = 36) -> list[InclusionSpec]:
    """Random abelian inclusions satisfying the integer spectral condition.

    Draws small integer matrices with all m_j = 1, keeps those where the
    column sums of n_i a_ij are constant (that constant is d) and d <= max_d.
    """
    rng = np.random.default_rng(seed)
    found = []
    while len(found) < count:
        s = int(rng.integers(1, 4))
        r = int(rng.integers(1, 4))
        mat = rng.integers(0, 3, size=(s, r))
        # no zero column, no zero row
        if np.any(mat.sum(axis=0) == 0) or np.any(mat.sum(axis=1) == 0):
            continue
        spec = InclusionSpec.from_matrix(mat.tolist(), [1] * r)
        holds, d = _spectral_quick(spec)
        if holds and d <= max_d:
            found.append(spec)
    return found


def exhaustive_abelian_specs(max_d: int = 12) -> list[InclusionSpec]:
    """All abelian specs with s, r <= 2, entries <= 3, spectral d <= max_d."""
    out = []
    for s, r in itertools.product((1, 2), (1, 2)):
        for entries in itertools.product(range(4), repeat=s * r):
            mat = [list(entries[i * r : (i + 1) * r]) for i in range(s)]
            if any(sum(mat[i][j] for i in range(s)) == 0 for j in range(r)):
                continue
            if any(sum(row) == 0 for row in mat):
                continue
            spec = InclusionSpec.from_matrix(mat, [1] * r)
            holds, d = _spectral_quick(spec)
            if holds and d <= max_d:
                out.append(spec)
    return out
