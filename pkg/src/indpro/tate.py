"""
Worked Tate windows: Laurent-series lattice quotients, translations, and
random Kato windows built from interval modules.

The Laurent window on [lo, hi] has X(i, j) = t^-j k[[t]] / t^-i k[[t]] with
ordered basis t^-j, ..., t^-(i+1) (deep to shallow).  Both structure maps
are coordinate maps: the mono prepends a zero deep coordinate and the epi
drops the shallowest one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from .beilinson import Cell, PiWindow, URoof, conjugate, direct_sum
from .errors import PreconditionError, WindowError
from .indices import BicofinalMap
from .linalg import GF, Mat, _as_field, random_invertible

__all__ = [
    "LaurentSpec",
    "laurent_window",
    "reversal",
    "shift_lattice",
    "rectangle_module",
    "point_module",
    "fattened_corner",
    "random_kato_window",
    "random_pi_window",
]


@dataclass(frozen=True)
class LaurentSpec:
    p: int
    lo: int
    hi: int

    def __post_init__(self):
        GF(self.p)  # rejects non-primes
        if self.lo > self.hi:
            raise WindowError(f"lo={self.lo} exceeds hi={self.hi}", "bounds")


def _deep_pad(field, n: int) -> Mat:
    # [0; I]: (n+1) x n
    a = np.zeros((n + 1, n), dtype=np.int64)
    a[1:, :] = np.eye(n, dtype=np.int64)
    return Mat.from_array(field, a, cols=n)


def _drop_shallow(field, n: int) -> Mat:
    # [I 0]: (n-1) x n
    a = np.zeros((n - 1, n), dtype=np.int64)
    a[:, :n - 1] = np.eye(n - 1, dtype=np.int64)
    return Mat.from_array(field, a, cols=n)


def laurent_window(spec: Union[LaurentSpec, int], lo: Optional[int] = None,
                   hi: Optional[int] = None) -> PiWindow:
    """``laurent_window(LaurentSpec(p, lo, hi))`` or ``laurent_window(p, lo, hi)``."""
    if not isinstance(spec, LaurentSpec):
        spec = LaurentSpec(int(spec), lo, hi)
    F = GF(spec.p)
    return PiWindow.from_functions(
        F, spec.lo, spec.hi,
        lambda i, j: j - i,
        lambda i, j: _drop_shallow(F, j - i),
        lambda i, j: _deep_pad(F, j - i))


def reversal(field, n: int) -> Mat:
    """The basis-reversal permutation of F^n."""
    return Mat.from_array(_as_field(field), np.eye(n, dtype=np.int64)[::-1], cols=n)


def shift_lattice(X: PiWindow, n: int, target_hi: Optional[int] = None) -> URoof:
    """
    The translation of a Laurent window by n: a URoof X -> laurent(lo+n, target_hi)
    with phi(k) = k + n, sending each basis vector t^-k of X(i, j) to t^-(k+n).

    ``target_hi`` defaults to hi + n; it may be larger, never smaller.
    """
    p = X.field.p
    if X != laurent_window(p, X.lo, X.hi):
        raise PreconditionError("shift_lattice needs a Laurent window")
    thi = X.hi + n if target_hi is None else target_hi
    if thi < X.hi + n:
        raise WindowError(f"target top {thi} cannot absorb the shift to {X.hi + n}",
                          "underflow")
    Y = laurent_window(p, X.lo + n, thi)
    comps = {c: Mat.identity(X.field, X.dims[c]) for c in X.cells()}
    return URoof(X, Y, BicofinalMap.shift(n), comps)


# ---------------------------------------------------------------------------
# Interval modules


def rectangle_module(field, lo: int, hi: int, rows: Tuple[int, int],
                     cols: Tuple[int, int]) -> PiWindow:
    """
    F on the cells [a1, a2] x [b1, b2] (a2 < b1) of the window, identity maps
    inside the rectangle and zero maps elsewhere.
    """
    F = _as_field(field)
    (a1, a2), (b1, b2) = rows, cols
    if not (lo <= a1 <= a2 < b1 <= b2 <= hi):
        raise WindowError(f"rectangle {rows}x{cols} does not fit off-diagonal in [{lo}, {hi}]",
                          "rectangle")

    def inside(i, j):
        return a1 <= i <= a2 and b1 <= j <= b2

    def d(i, j):
        return 1 if inside(i, j) else 0

    def link(src, dst):
        if inside(*src) and inside(*dst):
            return Mat.identity(F, 1)
        return Mat.zeros(F, d(*dst), d(*src))

    return PiWindow.from_functions(F, lo, hi, d,
                                   lambda i, j: link((i, j), (i + 1, j)),
                                   lambda i, j: link((i, j), (i, j + 1)))


def point_module(field, lo: int, hi: int, k: int) -> PiWindow:
    """F on the cells with i < k <= j; lo < k <= hi.  Laurent windows are sums of these."""
    return rectangle_module(field, lo, hi, (lo, k - 1), (k, hi))


def fattened_corner(X: PiWindow, cell: Optional[Cell] = None) -> PiWindow:
    """
    X with one extra dimension at a single cell (default (lo, hi)) that no
    structure map sees.  The elementary square below it is not cartesian.
    """
    i, j = cell if cell is not None else (X.lo, X.hi)
    return direct_sum(X, rectangle_module(X.field, X.lo, X.hi, (i, i), (j, j)))


def _random_conjugate(W: PiWindow, rng: np.random.Generator) -> PiWindow:
    isos = {c: random_invertible(W.field, W.dims[c], rng) for c in W.cells()}
    return conjugate(W, isos)[0]


def _assemble(field, lo, hi, pieces: List[PiWindow], rng) -> PiWindow:
    W = direct_sum(*pieces) if pieces else PiWindow.zero(field, lo, hi)
    return _random_conjugate(W, rng)


def random_kato_window(p: int, lo: int, hi: int, max_dim: int,
                       seed: Union[int, np.random.Generator, None] = None) -> PiWindow:
    """
    A random admissible (hence Kato) window: point modules with random
    multiplicities, total dimension at most ``max_dim``, conjugated by random
    isomorphisms at every cell.
    """
    rng = np.random.default_rng(seed)
    F = GF(p)
    ks = list(range(lo + 1, hi + 1))
    pieces = []
    if ks:
        total = int(rng.integers(0, max_dim + 1))
        for k in rng.choice(ks, size=total):
            pieces.append(point_module(F, lo, hi, int(k)))
    return _assemble(F, lo, hi, pieces, rng)


def random_pi_window(p: int, lo: int, hi: int, max_dim: int,
                     seed: Union[int, np.random.Generator, None] = None) -> PiWindow:
    """
    A random window that need not be admissible: a conjugated sum of random
    rectangle modules, at most ``max_dim`` of them.
    """
    rng = np.random.default_rng(seed)
    F = GF(p)
    pieces = []
    if hi > lo:
        for _ in range(int(rng.integers(0, max_dim + 1))):
            a2 = int(rng.integers(lo, hi))
            b1 = int(rng.integers(a2 + 1, hi + 1))
            a1 = int(rng.integers(lo, a2 + 1))
            b2 = int(rng.integers(b1, hi + 1))
            pieces.append(rectangle_module(F, lo, hi, (a1, a2), (b1, b2)))
    return _assemble(F, lo, hi, pieces, rng)
