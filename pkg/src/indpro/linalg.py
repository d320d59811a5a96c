"""
Exact linear algebra over a prime field GF(p).

Matrices act on column vectors, so ``g @ f`` is the composite "first f,
then g".  Every number is a residue in ``[0, p)``; nothing here ever
touches floating point.  Subspaces are stored through a canonical basis
(the nonzero rows of the reduced row echelon form of a spanning set,
written as columns) so that equality of subspaces is equality of
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DimensionError, FieldMismatchError, NonCommutingError

__all__ = [
    "PrimeField",
    "GF",
    "Mat",
    "Subspace",
    "SesTriple",
    "Square",
    "Pullback",
    "Pushout",
    "mat_compose",
    "rank",
    "rref",
    "kernel",
    "image",
    "cokernel",
    "cokernel_with_section",
    "intersect",
    "solve",
    "is_exact_at",
    "is_ses",
    "pullback",
    "pushout",
    "is_cartesian",
    "is_cocartesian",
    "hstack",
    "vstack",
    "block_diag",
    "random_mat",
    "random_invertible",
]

_MAX_P = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(p), 2 <= p < 2**31."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise TypeError("field modulus must be an integer")
        if not 2 <= self.p < _MAX_P:
            raise ValueError(f"modulus {self.p} outside [2, 2**31)")
        if not _is_prime(int(self.p)):
            raise ValueError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(int(p))


def _as_field(field) -> PrimeField:
    if isinstance(field, PrimeField):
        return field
    return GF(field)


def _same_field(*mats: "Mat") -> PrimeField:
    field = mats[0].field
    for m in mats[1:]:
        if m.field != field:
            raise FieldMismatchError(f"{field!r} vs {m.field!r}")
    return field


def _matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # int64 accumulation is exact while n*(p-1)**2 < 2**63
    n = a.shape[1]
    if n == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if n * (p - 1) ** 2 < 2**63:
        return (a @ b) % p
    out = (a.astype(object) @ b.astype(object)) % p
    return out.astype(np.int64)


class Mat:
    """
    An immutable ``rows x cols`` matrix over GF(p), i.e. a linear map
    from a ``cols``-dimensional space to a ``rows``-dimensional one.
    """

    __slots__ = ("field", "_a", "_hash")

    def __init__(self, field, rows: int, cols: int, entries: Sequence[int] = None):
        field = _as_field(field)
        if rows < 0 or cols < 0:
            raise DimensionError("negative dimension")
        if entries is None:
            a = np.zeros((rows, cols), dtype=np.int64)
        else:
            a = np.asarray(entries, dtype=object).reshape(-1)
            if a.size != rows * cols:
                raise DimensionError(
                    f"{a.size} entries for a {rows}x{cols} matrix")
            a = np.array([int(x) for x in a], dtype=np.int64).reshape(rows, cols)
        self._init(field, a % field.p)

    def _init(self, field, a):
        a.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def from_array(cls, field, array, cols: int = 0) -> "Mat":
        """Build from a nested list (or 2-d array); ``cols`` sizes an empty list."""
        field = _as_field(field)
        a = np.array(array, dtype=object)
        if a.size == 0:
            shape = a.shape if a.ndim == 2 else (0, cols)
            return cls.zeros(field, *shape)
        if a.ndim != 2:
            raise DimensionError("from_array expects a 2-d array")
        arr = np.array([[int(x) % field.p for x in row] for row in a], dtype=np.int64)
        return cls._wrap(field, arr)

    @classmethod
    def _wrap(cls, field: PrimeField, a: np.ndarray) -> "Mat":
        # trusted path: a is an int64 array already reduced mod p
        out = cls.__new__(cls)
        out._init(field, np.ascontiguousarray(a, dtype=np.int64))
        return out

    @classmethod
    def identity(cls, field, n: int) -> "Mat":
        return cls._wrap(_as_field(field), np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Mat":
        return cls._wrap(_as_field(field), np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 view of the entries."""
        return self._a

    @property
    def entries(self) -> tuple:
        return tuple(int(x) for x in self._a.reshape(-1))

    def tolist(self):
        return [[int(x) for x in row] for row in self._a]

    @property
    def T(self) -> "Mat":
        return Mat._wrap(self.field, self._a.T.copy())

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_compose(self, other)

    def __add__(self, other: "Mat") -> "Mat":
        field = _same_field(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Mat._wrap(field, (self._a + other._a) % field.p)

    def __sub__(self, other: "Mat") -> "Mat":
        field = _same_field(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Mat._wrap(field, (self._a - other._a) % field.p)

    def __neg__(self) -> "Mat":
        return Mat._wrap(self.field, (-self._a) % self.field.p)

    def scale(self, c: int) -> "Mat":
        return Mat._wrap(self.field, (self._a * (int(c) % self.field.p)) % self.field.p)

    def __getitem__(self, key) -> "Mat":
        a = self._a[key]
        if a.ndim != 2:
            raise IndexError("Mat slicing must keep two axes")
        return Mat._wrap(self.field, a.copy())

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.array_equal(self._a, other._a)))

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field.p, self.shape, self._a.tobytes()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Mat({self.field!r}, {self.rows}, {self.cols}, {list(self.entries)})"

    def is_zero(self) -> bool:
        return not self._a.any()

    def rank(self) -> int:
        return rank(self)

    def is_injective(self) -> bool:
        return rank(self) == self.cols

    def is_surjective(self) -> bool:
        return rank(self) == self.rows

    def is_iso(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise DimensionError("only square matrices are invertible")
        x = solve(self, Mat.identity(self.field, self.rows))
        if x is None:
            raise ValueError("matrix is singular")
        return x


def mat_compose(g: Mat, f: Mat) -> Mat:
    """The composite g∘f; requires ``f.rows == g.cols``."""
    field = _same_field(g, f)
    if f.rows != g.cols:
        raise DimensionError(
            f"cannot compose {g.rows}x{g.cols} after {f.rows}x{f.cols}")
    return Mat._wrap(field, _matmul(g._a, f._a, field.p))


def hstack(*mats: Mat) -> Mat:
    field = _same_field(*mats)
    if len({m.rows for m in mats}) > 1:
        raise DimensionError("hstack needs equal row counts")
    return Mat._wrap(field, np.hstack([m._a for m in mats]))


def vstack(*mats: Mat) -> Mat:
    field = _same_field(*mats)
    if len({m.cols for m in mats}) > 1:
        raise DimensionError("vstack needs equal column counts")
    return Mat._wrap(field, np.vstack([m._a for m in mats]))


def block_diag(*mats: Mat) -> Mat:
    field = _same_field(*mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    a = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        a[r:r + m.rows, c:c + m.cols] = m._a
        r += m.rows
        c += m.cols
    return Mat._wrap(field, a)


# ---------------------------------------------------------------------------
# Gaussian elimination


def _rref(a: np.ndarray, p: int):
    """Reduced row echelon form of ``a`` mod p, and its pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            # columns left of c are already zero in row r
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(f: Mat):
    """Return ``(R, pivots)`` with R the reduced row echelon form of f."""
    a, piv = _rref(f.array, f.field.p)
    return Mat._wrap(f.field, a), tuple(piv)


def rank(f: Mat) -> int:
    if f.rows == 0 or f.cols == 0:
        return 0
    return len(_rref(f.array, f.field.p)[1])


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    """
    Some X with ``a @ X == b``, or None when no solution exists.
    Free variables are set to zero.
    """
    field = _same_field(a, b)
    if a.rows != b.rows:
        raise DimensionError("solve needs a.rows == b.rows")
    n = a.cols
    aug = np.hstack([a.array, b.array])
    r, piv = _rref(aug, field.p)
    x = np.zeros((n, b.cols), dtype=np.int64)
    for k, c in enumerate(piv):
        if c >= n:
            return None
        x[c] = r[k, n:]
    return Mat._wrap(field, x)


# ---------------------------------------------------------------------------
# Subspaces


class Subspace:
    """
    A subspace of ``F^ambient_dim`` carried by its canonical basis: the
    nonzero rows of the RREF of any spanning set, stored as columns.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, field, ambient_dim: int, basis: Mat = None):
        field = _as_field(field)
        if basis is None:
            basis = Mat.zeros(field, ambient_dim, 0)
        if basis.rows != ambient_dim:
            raise DimensionError("basis vectors must live in the ambient space")
        if basis.cols:
            r, piv = _rref(basis.array.T, field.p)
            basis = Mat._wrap(field, r[:len(piv)].T.copy())
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, vectors: Mat) -> "Subspace":
        """Span of the columns of ``vectors``."""
        return cls(vectors.field, vectors.rows, vectors)

    @classmethod
    def full(cls, field, n: int) -> "Subspace":
        return cls(field, n, Mat.identity(field, n))

    @classmethod
    def zero(cls, field, n: int) -> "Subspace":
        return cls(field, n)

    @property
    def field(self) -> PrimeField:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, v: Mat) -> bool:
        return solve(self.basis, v) is not None

    def coordinates(self, v: Mat) -> Mat:
        """Coordinates of the columns of v in the canonical basis."""
        x = solve(self.basis, v)
        if x is None:
            raise ValueError("vectors do not lie in the subspace")
        return x

    def __le__(self, other: "Subspace") -> bool:
        return self.ambient_dim == other.ambient_dim and other.contains(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.tolist()})"


def kernel(f: Mat) -> Subspace:
    """The null space {v : f v = 0} as a Subspace of F^cols."""
    field = f.field
    n = f.cols
    if f.rows == 0:
        return Subspace.full(field, n)
    r, piv = _rref(f.array, field.p)
    free = [c for c in range(n) if c not in set(piv)]
    vecs = np.zeros((n, len(free)), dtype=np.int64)
    for k, c in enumerate(free):
        vecs[c, k] = 1
        for row, pc in enumerate(piv):
            vecs[pc, k] = (-r[row, c]) % field.p
    return Subspace(field, n, Mat._wrap(field, vecs))


def image(f: Mat) -> Subspace:
    """Column span of f."""
    return Subspace.span(f)


def cokernel_with_section(f: Mat):
    """
    The echelon-complement cokernel of f together with a section.

    Returns ``(q, s)`` where ``q: F^rows -> F^(rows - rank f)`` is
    surjective with kernel exactly ``image(f)``, and ``s`` is the
    inclusion of the non-pivot coordinates, so ``q @ s`` is the identity.
    """
    field = f.field
    n = f.rows
    im = image(f)
    if im.dim:
        r = im.basis.array.T  # canonical rows, RREF
        piv = [int(np.flatnonzero(row)[0]) for row in r]
    else:
        r = np.zeros((0, n), dtype=np.int64)
        piv = []
    rest = [c for c in range(n) if c not in set(piv)]
    q = np.zeros((len(rest), n), dtype=np.int64)
    for k, c in enumerate(rest):
        q[k, c] = 1
    # v - sum_k v[piv_k] r_k has zero pivot coordinates; read off the rest
    for k, pc in enumerate(piv):
        q[:, pc] = (-r[k, rest]) % field.p
    s = np.zeros((n, len(rest)), dtype=np.int64)
    for k, c in enumerate(rest):
        s[c, k] = 1
    return Mat._wrap(field, q), Mat._wrap(field, s)


def cokernel(f: Mat) -> Mat:
    """A surjection q with kernel(q) = image(f)."""
    return cokernel_with_section(f)[0]


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.zero(s1.field, s1.ambient_dim)
    k = kernel(hstack(s1.basis, -s2.basis))
    top = k.basis[:s1.dim, :]
    return Subspace.span(s1.basis @ top)


# ---------------------------------------------------------------------------
# Exactness


@dataclass(frozen=True)
class SesTriple:
    """A candidate short exact sequence ``0 -> a' -mono-> a -epi-> a'' -> 0``."""

    mono: Mat
    epi: Mat

    def __post_init__(self):
        _same_field(self.mono, self.epi)
        if self.mono.rows != self.epi.cols:
            raise DimensionError("mono and epi are not composable")


def is_exact_at(f: Mat, g: Mat) -> bool:
    """True iff image(f) == kernel(g)."""
    _same_field(f, g)
    if f.rows != g.cols:
        raise DimensionError("f and g are not composable")
    if not (g @ f).is_zero():
        return False
    return rank(f) + rank(g) == g.cols


def is_ses(t: SesTriple) -> bool:
    return (t.mono.is_injective() and t.epi.is_surjective()
            and is_exact_at(t.mono, t.epi))


# ---------------------------------------------------------------------------
# Pullbacks, pushouts and squares


class Pullback(NamedTuple):
    apex_dim: int
    to_b: Mat
    to_d: Mat


class Pushout(NamedTuple):
    apex_dim: int
    from_b: Mat
    from_d: Mat


def pullback(f: Mat, g: Mat) -> Pullback:
    """
    Pullback of ``b -f-> c <-g- d``: the kernel of ``f p1 - g p2`` on b⊕d,
    with legs ``p1 m`` and ``p2 m`` for the kernel inclusion m.
    """
    _same_field(f, g)
    if f.rows != g.rows:
        raise DimensionError("pullback needs a common codomain")
    m = kernel(hstack(f, -g)).basis
    return Pullback(m.cols, m[:f.cols, :], m[f.cols:, :])


def pushout(f: Mat, g: Mat) -> Pushout:
    """Pushout of ``b <-f- a -g-> d``: the cokernel of ``(f, -g)^T``."""
    _same_field(f, g)
    if f.cols != g.cols:
        raise DimensionError("pushout needs a common domain")
    q = cokernel(vstack(f, -g))
    return Pushout(q.rows, q[:, :f.rows], q[:, f.rows:])


@dataclass(frozen=True)
class Square:
    """
    A square of linear maps::

        a --top--> b
        |          |
       left      right
        v          v
        d -bottom-> c

    In an admissible square the horizontal maps are monos and the
    vertical maps are epis.
    """

    top: Mat
    left: Mat
    right: Mat
    bottom: Mat

    def __post_init__(self):
        _same_field(self.top, self.left, self.right, self.bottom)
        if self.top.cols != self.left.cols:
            raise DimensionError("top and left must share the corner a")
        if self.top.rows != self.right.cols:
            raise DimensionError("top and right must share the corner b")
        if self.left.rows != self.bottom.cols:
            raise DimensionError("left and bottom must share the corner d")
        if self.right.rows != self.bottom.rows:
            raise DimensionError("right and bottom must share the corner c")

    @property
    def dims(self):
        """Dimensions of the corners (a, b, d, c)."""
        return self.top.cols, self.top.rows, self.left.rows, self.right.rows

    def commutes(self) -> bool:
        return self.right @ self.top == self.bottom @ self.left

    def is_admissible(self) -> bool:
        return (self.top.is_injective() and self.bottom.is_injective()
                and self.left.is_surjective() and self.right.is_surjective())

    def _check(self):
        if not self.commutes():
            raise NonCommutingError("square does not commute")


def is_cartesian(sq: Square) -> bool:
    """
    True iff the canonical map from the corner a into the pullback of
    ``right`` and ``bottom`` is an isomorphism.

    Raises NonCommutingError on a non-commuting square.
    """
    sq._check()
    pb = pullback(sq.right, sq.bottom)
    if pb.apex_dim != sq.top.cols:
        return False
    u = solve(vstack(pb.to_b, pb.to_d), vstack(sq.top, sq.left))
    # the square commutes, so (top, left) lands in the kernel and u exists
    return u is not None and u.is_iso()


def is_cocartesian(sq: Square) -> bool:
    """
    True iff the canonical map from the pushout of ``top`` and ``left``
    to the corner c is an isomorphism.
    """
    sq._check()
    q, s = cokernel_with_section(vstack(sq.top, -sq.left))
    if q.rows != sq.right.rows:
        return False
    legs = hstack(sq.right, sq.bottom)
    v = legs @ s
    if v @ q != legs:
        return False
    return v.is_iso()


# ---------------------------------------------------------------------------
# Random matrices


def random_mat(field, rows: int, cols: int, rng: np.random.Generator) -> Mat:
    field = _as_field(field)
    return Mat._wrap(field, rng.integers(0, field.p, size=(rows, cols), dtype=np.int64))


def random_invertible(field, n: int, rng: np.random.Generator) -> Mat:
    field = _as_field(field)
    while True:
        m = random_mat(field, n, n, rng)
        if rank(m) == n:
            return m
