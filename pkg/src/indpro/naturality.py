"""
Solving families of linear matrix equations.

Natural transformations between diagrams, and the off-diagonal blocks of
extensions, are the solutions of homogeneous systems of the form
``sum_k L_k X_{key_k} R_k = 0``.  We flatten every unknown row-major and
use ``vec(L X R) = (L ⊗ R^T) vec(X)``.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Sequence, Tuple

import numpy as np

from .linalg import Mat, PrimeField, _rref

Term = Tuple[Hashable, Mat, Mat]


def solution_basis(field: PrimeField,
                   unknowns: Dict[Hashable, Tuple[int, int]],
                   equations: Sequence[Sequence[Term]]) -> List[Dict[Hashable, Mat]]:
    """
    Basis of the solution space of ``sum L X_key R = 0`` for every equation.

    ``unknowns`` maps a key to the (rows, cols) shape of its matrix.
    """
    p = field.p
    keys = list(unknowns)
    offsets = {}
    n = 0
    for k in keys:
        offsets[k] = n
        r, c = unknowns[k]
        n += r * c
    blocks = []
    for eq in equations:
        if not eq:
            continue
        m = eq[0][1].rows * eq[0][2].cols
        row = np.zeros((m, n), dtype=np.int64)
        for key, left, right in eq:
            r, c = unknowns[key]
            if left.cols != r or right.rows != c:
                raise ValueError(f"term shapes do not fit unknown {key!r}")
            o = offsets[key]
            row[:, o:o + r * c] = (row[:, o:o + r * c]
                                   + np.kron(left.array, right.array.T)) % p
        blocks.append(row)
    if n == 0:
        return []
    if blocks:
        system = np.vstack(blocks)
        red, piv = _rref(system, p)
    else:
        red, piv = np.zeros((0, n), dtype=np.int64), []
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for fc in free:
        v = np.zeros(n, dtype=np.int64)
        v[fc] = 1
        for row_idx, pc in enumerate(piv):
            v[pc] = (-red[row_idx, fc]) % p
        sol = {}
        for k in keys:
            r, c = unknowns[k]
            o = offsets[k]
            sol[k] = Mat._wrap(field, v[o:o + r * c].reshape(r, c).copy())
        basis.append(sol)
    return basis


def random_solution(field: PrimeField,
                    unknowns: Dict[Hashable, Tuple[int, int]],
                    basis: List[Dict[Hashable, Mat]],
                    rng: np.random.Generator) -> Dict[Hashable, Mat]:
    """A uniformly random element of the span of ``basis``."""
    p = field.p
    out = {k: np.zeros(shape, dtype=np.int64) for k, shape in unknowns.items()}
    coeffs = rng.integers(0, p, size=len(basis))
    for c, sol in zip(coeffs, basis):
        if c:
            for k in out:
                out[k] = (out[k] + int(c) * sol[k].array) % p
    return {k: Mat._wrap(field, a) for k, a in out.items()}
