"""
Cofinal and bicofinal index maps.

A cofinal map of Z+ is stored as its values on a finite window
``0..N`` and continues with slope one beyond N; a bicofinal map of Z is
stored on ``lo..hi`` and continues with slope one on both sides.  The
affine tails make every such map a finite object, so equality and the
pointwise order are decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

from .errors import PreconditionError

__all__ = [
    "CofinalMap",
    "BicofinalMap",
    "PiPoint",
    "is_cofinal",
    "compose",
    "leq",
    "psi_of",
    "tilde_phi",
]


def _nondecreasing(values) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


@dataclass(frozen=True, eq=False)
class CofinalMap:
    """A map Z+ -> Z+ given by ``values`` on 0..N and n -> phi(N) + (n - N) after."""

    values: Tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise ValueError("a cofinal map needs at least one stored value")
        if min(vals) < 0:
            raise ValueError("a map of Z+ takes nonnegative values")
        object.__setattr__(self, "values", vals)

    @classmethod
    def identity(cls) -> "CofinalMap":
        return cls((0,))

    @classmethod
    def shift(cls, n: int) -> "CofinalMap":
        return cls((n,))

    @classmethod
    def from_function(cls, fn: Callable[[int], int], window: int) -> "CofinalMap":
        return cls(tuple(fn(i) for i in range(window + 1)))

    @property
    def window(self) -> int:
        """Last stored index N."""
        return len(self.values) - 1

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("cofinal maps are defined on Z+ only")
        N = self.window
        if n <= N:
            return self.values[n]
        return self.values[N] + (n - N)

    def canonical(self) -> Tuple[int, ...]:
        vals = list(self.values)
        while len(vals) > 1 and vals[-1] == vals[-2] + 1:
            vals.pop()
        return tuple(vals)

    def extended(self, window: int) -> "CofinalMap":
        """Same map, stored on at least 0..window."""
        return CofinalMap(tuple(self(i) for i in range(max(window, self.window) + 1)))

    def __eq__(self, other):
        if not isinstance(other, CofinalMap):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(("cofinal", self.canonical()))

    def __repr__(self):
        return f"CofinalMap({self.canonical()})"

    def is_cofinal(self) -> bool:
        return _nondecreasing(self.values)

    def __le__(self, other: "CofinalMap") -> bool:
        return leq(self, other)


@dataclass(frozen=True, eq=False)
class BicofinalMap:
    """A nondecreasing map Z -> Z stored on lo..lo+len-1 with slope-one tails."""

    lo: int
    values: Tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise ValueError("a bicofinal map needs at least one stored value")
        object.__setattr__(self, "lo", int(self.lo))
        object.__setattr__(self, "values", vals)

    @classmethod
    def identity(cls) -> "BicofinalMap":
        return cls(0, (0,))

    @classmethod
    def shift(cls, n: int) -> "BicofinalMap":
        return cls(0, (n,))

    @classmethod
    def from_function(cls, fn: Callable[[int], int], lo: int, hi: int) -> "BicofinalMap":
        return cls(lo, tuple(fn(i) for i in range(lo, hi + 1)))

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def __call__(self, n: int) -> int:
        if n < self.lo:
            return self.values[0] - (self.lo - n)
        if n > self.hi:
            return self.values[-1] + (n - self.hi)
        return self.values[n - self.lo]

    def canonical(self) -> Tuple[int, Tuple[int, ...]]:
        vals = list(self.values)
        lo = self.lo
        while len(vals) > 1 and vals[-1] == vals[-2] + 1:
            vals.pop()
        while len(vals) > 1 and vals[1] == vals[0] + 1:
            vals.pop(0)
            lo += 1
        if len(vals) == 1:
            # a pure translation: normalise the anchor to 0
            return 0, (vals[0] - lo,)
        return lo, tuple(vals)

    def extended(self, lo: int, hi: int) -> "BicofinalMap":
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        return BicofinalMap(lo, tuple(self(i) for i in range(lo, hi + 1)))

    def __eq__(self, other):
        if not isinstance(other, BicofinalMap):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(("bicofinal", self.canonical()))

    def __repr__(self):
        lo, vals = self.canonical()
        return f"BicofinalMap(lo={lo}, values={vals})"

    def is_bicofinal(self) -> bool:
        return _nondecreasing(self.values)

    def __le__(self, other: "BicofinalMap") -> bool:
        return leq(self, other)

    def pointwise_max(self, other: "BicofinalMap") -> "BicofinalMap":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return BicofinalMap(lo, tuple(max(self(i), other(i)) for i in range(lo, hi + 1)))


@dataclass(frozen=True)
class PiPoint:
    """A point (i, j) of the preorder Pi = {i <= j}."""

    i: int
    j: int

    def __post_init__(self):
        if self.i > self.j:
            raise ValueError(f"({self.i}, {self.j}) is not in Pi")

    def __iter__(self):
        return iter((self.i, self.j))

    def __le__(self, other):
        # the product order of Pi, not a total order
        return self.i <= other.i and self.j <= other.j


def is_cofinal(m: CofinalMap) -> bool:
    """Window values nondecreasing; the slope-one tail supplies lim = infinity."""
    return m.is_cofinal()


def compose(phi, psi):
    """The composite phi∘psi (apply psi first) of two (bi)cofinal maps."""
    if isinstance(phi, CofinalMap) and isinstance(psi, CofinalMap):
        # beyond this window psi lands past phi's window and both tails are affine
        n = psi.window + max(0, phi.window - psi(psi.window))
        return CofinalMap(tuple(phi(psi(i)) for i in range(n + 1)))
    if isinstance(phi, BicofinalMap) and isinstance(psi, BicofinalMap):
        lo = psi.lo - max(0, psi(psi.lo) - phi.lo)
        hi = psi.hi + max(0, phi.hi - psi(psi.hi))
        return BicofinalMap(lo, tuple(phi(psi(i)) for i in range(lo, hi + 1)))
    raise TypeError("compose needs two maps of the same kind")


def leq(phi, psi) -> bool:
    """Pointwise phi <= psi; past both windows the difference is constant."""
    if isinstance(phi, CofinalMap) and isinstance(psi, CofinalMap):
        top = max(phi.window, psi.window)
        return all(phi(i) <= psi(i) for i in range(top + 1))
    if isinstance(phi, BicofinalMap) and isinstance(psi, BicofinalMap):
        lo, hi = min(phi.lo, psi.lo), max(phi.hi, psi.hi)
        return all(phi(i) <= psi(i) for i in range(lo, hi + 1))
    raise TypeError("leq needs two maps of the same kind")


def psi_of(phi, up_to: int, lo: int = None):
    """
    The reindexing psi built from phi in the proof that S is localizing.

    For each j: if j is a value of phi, psi(j) is the largest i with
    phi(i) = j; otherwise, if some value of phi lies below j, psi(j) is the
    largest preimage of the largest such value j0; otherwise psi(j) = 0.
    Requires phi cofinal with id <= phi, and then psi <= id.

    For a CofinalMap the result is stored on 0..up_to.  For a
    BicofinalMap pass ``lo`` as well; the third case never occurs on Z.
    """
    if isinstance(phi, CofinalMap):
        if not phi.is_cofinal():
            raise PreconditionError("phi is not cofinal")
        if not leq(CofinalMap.identity(), phi):
            raise PreconditionError("psi_of needs id <= phi")
        # id <= phi puts every preimage of j at an index <= j
        return CofinalMap(tuple(_psi_value(phi, j, 0) for j in range(up_to + 1)))
    if isinstance(phi, BicofinalMap):
        if lo is None:
            raise TypeError("psi_of on a bicofinal map needs lo")
        if not phi.is_bicofinal():
            raise PreconditionError("phi is not bicofinal")
        if not leq(BicofinalMap.identity(), phi):
            raise PreconditionError("psi_of needs id <= phi")
        # phi tends to -infinity, so the downward scan always terminates
        return BicofinalMap(lo, tuple(_psi_value(phi, j, None) for j in range(lo, up_to + 1)))
    raise TypeError("psi_of needs a CofinalMap or BicofinalMap")


def _psi_value(phi, j: int, floor) -> int:
    # with id <= phi every i > j has phi(i) > j, so the first i <= j (scanning
    # down) with phi(i) <= j is the largest preimage of the largest value <= j
    i = j
    while floor is None or i >= floor:
        if phi(i) <= j:
            return i
        i -= 1
    return 0


def tilde_phi(phi: BicofinalMap) -> Callable[[PiPoint], PiPoint]:
    """The endomap (i, j) -> (phi(i), phi(j)) of Pi."""
    if not phi.is_bicofinal():
        raise PreconditionError("phi is not bicofinal")

    def act(pt) -> PiPoint:
        i, j = pt
        return PiPoint(phi(i), phi(j))

    return act
