"""
Bifunctors on the preorder Pi = {(i, j) : i <= j}, truncated to a window.

A ``PiWindow`` on [lo, hi] stores the spaces X(i, j) for lo <= i <= j <= hi,
the pro-direction maps e(i, j): X(i, j) -> X(i+1, j) and the ind-direction
maps m(i, j): X(i, j) -> X(i, j+1).  Outside the window it is clamped: the
pro direction is constant below lo and the ind direction constant above
hi, so X(i, j) = X(max(i, lo), min(j, hi)), and 0 when that cell falls
below the diagonal.

Admissible windows (every X(i,j) -> X(i,k) -> X(j,k) exact) are the
objects of the Beilinson category; Kato windows are those whose
elementary squares are admissible, cartesian and cocartesian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Optional, Tuple

from .errors import DimensionError, NonCommutingError, PreconditionError, WindowError
from .indices import BicofinalMap, compose
from .linalg import (Mat, SesTriple, Square, _as_field, block_diag,
                     cokernel_with_section, hstack, is_cartesian, is_cocartesian,
                     is_ses, vstack)
from .naturality import random_solution, solution_basis
from .windows import IndWindow, ProWindow

__all__ = [
    "PiWindow",
    "PiStraightMorphism",
    "PiSes",
    "URoof",
    "GridView",
    "is_admissible",
    "is_kato",
    "kato_failure",
    "charac_roundtrip",
    "extend_bifunctor",
    "apply_tilde_phi",
    "uroof_equiv",
    "uroof_equiv_witness",
    "uroof_compose",
    "embed_ind_window",
    "embed_pro_window",
    "embed_object",
    "dualize",
    "direct_sum",
    "conjugate",
    "random_pi_morphism",
    "random_uroof",
]

Cell = Tuple[int, int]


class PiWindow:
    """
    A bifunctor Pi ∩ [lo, hi]^2 -> Vect_0(GF(p)) given by generators.

    ``dims`` maps every cell (i, j) to its dimension, ``epis`` every cell
    with i + 1 <= j to e(i, j), ``monos`` every cell with j + 1 <= hi to
    m(i, j).  The constructor checks shapes, d(i, i) = 0 and commutativity
    of all elementary squares; exactness is left to ``is_admissible``.
    """

    __slots__ = ("field", "lo", "hi", "dims", "epis", "monos", "_cache")

    def __init__(self, field, lo: int, hi: int, dims: Dict[Cell, int],
                 epis: Dict[Cell, Mat], monos: Dict[Cell, Mat]):
        field = _as_field(field)
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise WindowError(f"lo={lo} exceeds hi={hi}", "bounds")
        cells = [(i, j) for i in range(lo, hi + 1) for j in range(i, hi + 1)]
        dims = {tuple(c): int(d) for c, d in dims.items()}
        for c in cells:
            if c not in dims:
                raise WindowError(f"missing dimension at {c}", "missing_cell", c)
        for c in dims:
            if c not in set(cells):
                raise WindowError(f"cell {c} lies outside the window", "cell_range", c)
            if dims[c] < 0:
                raise WindowError(f"negative dimension at {c}", "dims", c)
        for i in range(lo, hi + 1):
            if dims[(i, i)] != 0:
                raise WindowError(f"diagonal cell ({i}, {i}) has dimension {dims[(i, i)]}",
                                  "diagonal", (i, i))
        epis = {tuple(c): m for c, m in epis.items()}
        monos = {tuple(c): m for c, m in monos.items()}
        need_e = {(i, j) for (i, j) in cells if i + 1 <= j}
        need_m = {(i, j) for (i, j) in cells if j + 1 <= hi}
        for name, got, need, step in (("e", epis, need_e, (1, 0)), ("m", monos, need_m, (0, 1))):
            if set(got) != need:
                extra = sorted(set(got) ^ need)
                raise WindowError(f"{name}-maps do not match the window at {extra[0]}",
                                  "missing_map", extra[0])
            for (i, j), f in got.items():
                if f.field != field:
                    raise WindowError(f"{name}({i},{j}) is over {f.field}", "field", (i, j))
                want = (dims[(i + step[0], j + step[1])], dims[(i, j)])
                if f.shape != want:
                    raise WindowError(f"{name}({i},{j}) has shape {f.shape}, expected {want}",
                                      "map_shape", (i, j))
        for i in range(lo, hi + 1):
            for j in range(i + 1, hi):
                if monos[(i + 1, j)] @ epis[(i, j)] != epis[(i, j + 1)] @ monos[(i, j)]:
                    raise WindowError(f"elementary square at ({i},{j}) does not commute",
                                      "commutes", (i, j))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "epis", epis)
        object.__setattr__(self, "monos", monos)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("PiWindow is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_functions(cls, field, lo: int, hi: int, dim: Callable[[int, int], int],
                       epi: Callable[[int, int], Mat], mono: Callable[[int, int], Mat]):
        cells = [(i, j) for i in range(lo, hi + 1) for j in range(i, hi + 1)]
        return cls(field, lo, hi, {c: dim(*c) for c in cells},
                   {c: epi(*c) for c in cells if c[0] + 1 <= c[1]},
                   {c: mono(*c) for c in cells if c[1] + 1 <= hi})

    @classmethod
    def zero(cls, field, lo: int, hi: int) -> "PiWindow":
        field = _as_field(field)
        return cls.from_functions(field, lo, hi, lambda i, j: 0,
                                  lambda i, j: Mat.zeros(field, 0, 0),
                                  lambda i, j: Mat.zeros(field, 0, 0))

    # -- queries ------------------------------------------------------------

    def cells(self) -> Iterator[Cell]:
        for i in range(self.lo, self.hi + 1):
            for j in range(i, self.hi + 1):
                yield (i, j)

    def clamp(self, i: int, j: int) -> Optional[Cell]:
        """The stored cell representing (i, j), or None when it is zero."""
        a, b = max(i, self.lo), min(j, self.hi)
        return (a, b) if a <= b else None

    def dim(self, i: int, j: int) -> int:
        c = self.clamp(i, j)
        return 0 if c is None else self.dims[c]

    def epi(self, i: int, j: int) -> Mat:
        return self.epis[(i, j)]

    def mono(self, i: int, j: int) -> Mat:
        return self.monos[(i, j)]

    def map(self, src: Cell, dst: Cell) -> Mat:
        """
        X(src -> dst) for src <= dst after clamping: monos along the row
        first, then epis down the column.
        """
        s, d = self.clamp(*src), self.clamp(*dst)
        rows = 0 if d is None else self.dims[d]
        cols = 0 if s is None else self.dims[s]
        if s is None or d is None:
            return Mat.zeros(self.field, rows, cols)
        if s[0] > d[0] or s[1] > d[1]:
            raise WindowError(f"no map from {src} to {dst}", "order", (src, dst))
        key = (s, d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        i, j = s
        out = Mat.identity(self.field, self.dims[s])
        for k in range(j, d[1]):
            out = self.monos[(i, k)] @ out
        for k in range(i, d[0]):
            out = self.epis[(k, d[1])] @ out
        self._cache[key] = out
        return out

    def triple(self, i: int, j: int, k: int) -> SesTriple:
        """X(i,j) -> X(i,k) -> X(j,k) for i <= j <= k."""
        return SesTriple(self.map((i, j), (i, k)), self.map((i, k), (j, k)))

    def elementary_squares(self) -> Iterator[Tuple[Cell, Square]]:
        """Squares X(i,j) -> X(i,j+1), X(i+1,j) -> X(i+1,j+1) with i < j < hi."""
        for i in range(self.lo, self.hi + 1):
            for j in range(i + 1, self.hi):
                yield (i, j), Square(top=self.monos[(i, j)], left=self.epis[(i, j)],
                                     right=self.epis[(i, j + 1)], bottom=self.monos[(i + 1, j)])

    def __eq__(self, other):
        if not isinstance(other, PiWindow):
            return NotImplemented
        return (self.field == other.field and self.lo == other.lo and self.hi == other.hi
                and self.dims == other.dims and self.epis == other.epis
                and self.monos == other.monos)

    def __hash__(self):
        return hash((self.field, self.lo, self.hi, tuple(sorted(self.dims.items()))))

    def __repr__(self):
        return f"PiWindow(p={self.field.p}, lo={self.lo}, hi={self.hi})"


# ---------------------------------------------------------------------------
# Morphisms and exact sequences


class PiStraightMorphism:
    """A natural transformation X -> Y of windows with the same bounds."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: PiWindow, target: PiWindow, components: Dict[Cell, Mat]):
        if (source.lo, source.hi) != (target.lo, target.hi):
            raise WindowError("straight morphisms need equal bounds", "bounds")
        comps = {tuple(c): f for c, f in components.items()}
        for c in source.cells():
            if c not in comps:
                raise WindowError(f"missing component at {c}", "missing_cell", c)
            if comps[c].shape != (target.dims[c], source.dims[c]):
                raise DimensionError(f"component {c} has shape {comps[c].shape}")
        for c, f in source.epis.items():
            if comps[(c[0] + 1, c[1])] @ f != target.epis[c] @ comps[c]:
                raise NonCommutingError(f"naturality fails for e at {c}")
        for c, f in source.monos.items():
            if comps[(c[0], c[1] + 1)] @ f != target.monos[c] @ comps[c]:
                raise NonCommutingError(f"naturality fails for m at {c}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("PiStraightMorphism is immutable")

    def __getitem__(self, cell: Cell) -> Mat:
        return self.components[tuple(cell)]

    @classmethod
    def identity(cls, X: PiWindow) -> "PiStraightMorphism":
        return cls(X, X, {c: Mat.identity(X.field, X.dims[c]) for c in X.cells()})

    def __eq__(self, other):
        if not isinstance(other, PiStraightMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __hash__(self):
        return hash((self.source, self.target))


class PiSes:
    """0 -> X -> Y -> Z -> 0 of windows, exact at every cell."""

    __slots__ = ("mono", "epi")

    def __init__(self, mono: PiStraightMorphism, epi: PiStraightMorphism):
        if mono.target != epi.source:
            raise WindowError("mono and epi are not composable", "endpoints")
        for c in mono.source.cells():
            if not is_ses(SesTriple(mono[c], epi[c])):
                raise WindowError(f"cell {c} is not a short exact sequence", "ses", c)
        object.__setattr__(self, "mono", mono)
        object.__setattr__(self, "epi", epi)

    def __setattr__(self, name, value):
        raise AttributeError("PiSes is immutable")

    @property
    def objects(self) -> Tuple[PiWindow, PiWindow, PiWindow]:
        return self.mono.source, self.mono.target, self.epi.target


# ---------------------------------------------------------------------------
# Predicates


def is_admissible(X: PiWindow) -> Tuple[bool, Optional[Tuple[int, int, int]]]:
    """
    Whether every X(i,j) -> X(i,k) -> X(j,k), lo <= i <= j <= k <= hi, is a
    short exact sequence; on failure also returns the first bad triple.
    """
    lo, hi = X.lo, X.hi
    for i in range(lo, hi + 1):
        for j in range(i, hi + 1):
            for k in range(j, hi + 1):
                if not is_ses(X.triple(i, j, k)):
                    return False, (i, j, k)
    return True, None


def kato_failure(X: PiWindow) -> Optional[Tuple[Cell, str]]:
    """The first elementary square that is not admissible/cartesian/cocartesian."""
    for cell, sq in X.elementary_squares():
        if not sq.is_admissible():
            return cell, "admissible"
        if not is_cartesian(sq):
            return cell, "cartesian"
        if not is_cocartesian(sq):
            return cell, "cocartesian"
    return None


def is_kato(X: PiWindow) -> bool:
    return kato_failure(X) is None


def charac_roundtrip(X: PiWindow) -> bool:
    """
    For all i <= i' <= j <= j': the sequence
    X(i,j) -> X(i,j') ⊕ X(i',j) -> X(i',j'), a -> (m a, e a), (b, c) -> e b - m c,
    is short exact.  With i' = j it is the admissibility triple (i, j, j').
    """
    if not is_kato(X):
        raise PreconditionError("charac_roundtrip needs a Kato window")
    lo, hi = X.lo, X.hi
    for i in range(lo, hi + 1):
        for i2 in range(i, hi + 1):
            for j in range(i2, hi + 1):
                for j2 in range(j, hi + 1):
                    a, b, c, d = (i, j), (i, j2), (i2, j), (i2, j2)
                    inc = vstack(X.map(a, b), X.map(a, c))
                    out = hstack(X.map(b, d), -X.map(c, d))
                    if not is_ses(SesTriple(inc, out)):
                        return False
    return True


# ---------------------------------------------------------------------------
# Full-grid extension


@dataclass(frozen=True)
class GridView:
    """X extended to all of [lo, hi]^2, zero below the diagonal."""

    window: PiWindow

    def dim(self, i: int, j: int) -> int:
        return self.window.dim(i, j) if i <= j else 0

    def map(self, src: Cell, dst: Cell) -> Mat:
        if src[0] > dst[0] or src[1] > dst[1]:
            raise WindowError(f"no map from {src} to {dst}", "order", (src, dst))
        if src[0] > src[1] or dst[0] > dst[1]:
            return Mat.zeros(self.window.field, self.dim(*dst), self.dim(*src))
        return self.window.map(src, dst)


def extend_bifunctor(X: PiWindow) -> GridView:
    return GridView(X)


# ---------------------------------------------------------------------------
# Reindexing along tilde-phi


def _preimage(phi: BicofinalMap, lo: int, hi: int) -> Optional[Tuple[int, int]]:
    # phi is nondecreasing with slope-one tails, so the preimage is an interval
    a = phi.lo - (phi(phi.lo) - lo) - 1
    b = phi.hi + (hi - phi(phi.hi)) + 1
    hits = [n for n in range(min(a, b), max(a, b) + 1) if lo <= phi(n) <= hi]
    if not hits:
        return None
    return hits[0], hits[-1]


def apply_tilde_phi(X: PiWindow, phi: BicofinalMap, lo: Optional[int] = None,
                    hi: Optional[int] = None) -> PiWindow:
    """
    X·tilde-phi: (i, j) -> X(phi(i), phi(j)) with composite structure maps.

    The output bounds default to the preimage {n : X.lo <= phi(n) <= X.hi};
    bounds for which phi leaves [X.lo, X.hi] are refused.
    """
    if not phi.is_bicofinal():
        raise PreconditionError("phi is not bicofinal")
    if lo is None or hi is None:
        pre = _preimage(phi, X.lo, X.hi)
        if pre is None:
            raise WindowError("phi misses the window entirely", "underflow")
        lo = pre[0] if lo is None else lo
        hi = pre[1] if hi is None else hi
    for n in (lo, hi):
        if not X.lo <= phi(n) <= X.hi:
            raise WindowError(f"phi({n}) = {phi(n)} leaves [{X.lo}, {X.hi}]", "underflow", (n,))
    return PiWindow.from_functions(
        X.field, lo, hi,
        lambda i, j: X.dim(phi(i), phi(j)),
        lambda i, j: X.map((phi(i), phi(j)), (phi(i + 1), phi(j))),
        lambda i, j: X.map((phi(i), phi(j)), (phi(i), phi(j + 1))))


# ---------------------------------------------------------------------------
# U-roofs


class URoof:
    """
    A roof X -> Y of Pi windows: a bicofinal phi and components
    f(i, j): X(i, j) -> Y(phi(i), phi(j)) (clamped in Y), natural on Pi.

    Components are given on every stored cell of X.  The roof must reach
    the bottom of Y, phi(X.lo) <= Y.lo: X is constant below X.lo, and only
    then do its components extend to all of Pi without choices.
    """

    __slots__ = ("source", "target", "phi", "components")

    def __init__(self, source: PiWindow, target: PiWindow, phi: BicofinalMap,
                 components: Dict[Cell, Mat]):
        if source.field != target.field:
            raise WindowError("endpoints live over different fields", "field")
        if not phi.is_bicofinal():
            raise PreconditionError("phi is not bicofinal")
        if phi(source.lo) > target.lo:
            raise WindowError(f"phi({source.lo}) = {phi(source.lo)} does not reach "
                              f"the bottom {target.lo} of the target", "underflow")
        comps = {tuple(c): f for c, f in components.items()}
        X, Y = source, target
        for c in X.cells():
            if c not in comps:
                raise WindowError(f"missing component at {c}", "missing_cell", c)
            want = (Y.dim(phi(c[0]), phi(c[1])), X.dims[c])
            if comps[c].shape != want:
                raise DimensionError(f"component {c} has shape {comps[c].shape}, expected {want}")
        for (i, j), f in X.epis.items():
            lhs = comps[(i + 1, j)] @ f
            rhs = Y.map((phi(i), phi(j)), (phi(i + 1), phi(j))) @ comps[(i, j)]
            if lhs != rhs:
                raise NonCommutingError(f"roof naturality fails for e at {(i, j)}")
        for (i, j), f in X.monos.items():
            lhs = comps[(i, j + 1)] @ f
            rhs = Y.map((phi(i), phi(j)), (phi(i), phi(j + 1))) @ comps[(i, j)]
            if lhs != rhs:
                raise NonCommutingError(f"roof naturality fails for m at {(i, j)}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("URoof is immutable")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.phi == other.phi and self.components == other.components)

    def __hash__(self):
        return hash((self.source, self.target, self.phi))

    def __repr__(self):
        return f"URoof({self.source!r} -> {self.target!r}, phi={self.phi!r})"

    def component(self, i: int, j: int) -> Mat:
        """f(i, j) for any i <= j, through the clamping of X."""
        X, Y, phi = self.source, self.target, self.phi
        c = X.clamp(i, j)
        rows = Y.dim(phi(i), phi(j))
        if c is None:
            return Mat.zeros(X.field, rows, 0)
        # below X.lo the target cell clamps to the same row (full reach);
        # above X.hi push forward along Y's monos
        return Y.map((phi(c[0]), phi(c[1])), (phi(i), phi(j))) @ self.components[c]

    @classmethod
    def identity(cls, X: PiWindow) -> "URoof":
        return cls(X, X, BicofinalMap.identity(),
                   {c: Mat.identity(X.field, X.dims[c]) for c in X.cells()})

    @classmethod
    def from_straight(cls, f: PiStraightMorphism) -> "URoof":
        return cls(f.source, f.target, BicofinalMap.identity(), dict(f.components))


def _shift_bound(phi: BicofinalMap) -> int:
    return max(phi(n) - n for n in range(phi.lo, phi.hi + 1))


def uroof_equiv_witness(r1: URoof, r2: URoof) -> Optional[BicofinalMap]:
    """
    A theta >= max(phi1, phi2) along which both roofs push to equal
    components on every cell of Pi, or None.

    For i far below the source window every theta(i) lies below Y.lo, and
    there the condition only involves the corner components pushed into
    Y(lo, hi).  If they agree, the translation by a large enough K is a
    witness: it sends every stored source row past Y.hi, where Y vanishes.
    So trying that translation decides the question.
    """
    if r1.source != r2.source or r1.target != r2.target:
        raise WindowError("uroof_equiv needs roofs with the same endpoints", "endpoints")
    X, Y = r1.source, r1.target
    K = max(_shift_bound(r1.phi), _shift_bound(r2.phi), Y.hi - X.lo + 1)
    theta = BicofinalMap.shift(K)
    # rows below Y.lo - K all push into row Y.lo, like the first row checked
    for i in range(Y.lo - K - 1, X.hi + 1):
        for j in range(max(i, X.lo), X.hi + 1):
            t = (theta(i), theta(j))
            a = Y.map((r1.phi(i), r1.phi(j)), t) @ r1.component(i, j)
            b = Y.map((r2.phi(i), r2.phi(j)), t) @ r2.component(i, j)
            if a != b:
                return None
    return theta


def uroof_equiv(r1: URoof, r2: URoof) -> bool:
    return uroof_equiv_witness(r1, r2) is not None


def uroof_compose(r2: URoof, r1: URoof) -> URoof:
    """r2∘r1 with reindexing phi2∘phi1."""
    if r1.target != r2.source:
        raise WindowError("roofs are not composable", "endpoints")
    X, phi = r1.source, r1.phi
    comps = {(i, j): r2.component(phi(i), phi(j)) @ r1.components[(i, j)]
             for (i, j) in X.cells()}
    return URoof(X, r2.target, compose(r2.phi, phi), comps)


# ---------------------------------------------------------------------------
# Embeddings and duality


def embed_ind_window(X: IndWindow, depth: int = 1) -> PiWindow:
    """
    The Pi window of a strict ind system, on [-depth, N]:
    X(i, j) = X_j for i < 0 <= j, X_j / X_i for 0 <= i <= j, and 0 for j < 0.
    Quotients are the canonical echelon-complement cokernels.
    """
    if not X.is_strict():
        raise PreconditionError("embed_ind_window needs a strict (injective) system")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    F, N = X.field, X.N
    quot: Dict[Cell, Tuple[Mat, Mat]] = {}

    def q_s(i, j):
        # quotient map X_j -> X(i,j) and a section of it
        if (i, j) not in quot:
            if i < 0:
                idm = Mat.identity(F, X.dim(j))
                quot[(i, j)] = (idm, idm)
            else:
                quot[(i, j)] = cokernel_with_section(X.transition(i, j))
        return quot[(i, j)]

    def dim(i, j):
        return 0 if j < 0 else q_s(i, j)[0].rows

    def epi(i, j):
        if j < 0:
            return Mat.zeros(F, 0, 0)
        return q_s(i + 1, j)[0] @ q_s(i, j)[1]

    def mono(i, j):
        if j < 0:
            return Mat.zeros(F, dim(i, j + 1), 0)
        return q_s(i, j + 1)[0] @ X.step(j) @ q_s(i, j)[1]

    return PiWindow.from_functions(F, -depth, N, dim, epi, mono)


def embed_pro_window(Y: ProWindow, depth: int = 1) -> PiWindow:
    """The Pi window of a strict pro system, on [-N, depth]; the dual of the ind embedding."""
    if not Y.is_strict():
        raise PreconditionError("embed_pro_window needs a strict (surjective) system")
    return dualize(embed_ind_window(Y.transpose(), depth))


def embed_object(field, dim: int) -> PiWindow:
    """A single space placed at the corner cell of a [-1, 0] window."""
    return embed_ind_window(IndWindow.constant(field, dim), 1)


def dualize(X: PiWindow) -> PiWindow:
    """X*(i, j) = X(-j, -i)^T on [-hi, -lo]; e and m swap roles under transposition."""
    return PiWindow.from_functions(
        X.field, -X.hi, -X.lo,
        lambda i, j: X.dims[(-j, -i)],
        lambda i, j: X.monos[(-j, -i - 1)].T,
        lambda i, j: X.epis[(-j - 1, -i)].T)


def direct_sum(*windows: PiWindow) -> PiWindow:
    if not windows:
        raise ValueError("direct_sum needs at least one window")
    X0 = windows[0]
    for W in windows[1:]:
        if (W.lo, W.hi, W.field) != (X0.lo, X0.hi, X0.field):
            raise WindowError("direct sums need equal bounds and field", "bounds")
    return PiWindow.from_functions(
        X0.field, X0.lo, X0.hi,
        lambda i, j: sum(W.dims[(i, j)] for W in windows),
        lambda i, j: block_diag(*(W.epis[(i, j)] for W in windows)),
        lambda i, j: block_diag(*(W.monos[(i, j)] for W in windows)))


def conjugate(X: PiWindow, isos: Dict[Cell, Mat]) -> Tuple[PiWindow, PiStraightMorphism]:
    """
    Transport X along invertible P(i, j): X(i, j) -> X'(i, j).  Returns X'
    and the straight isomorphism X -> X'.
    """
    inv = {c: isos[c].inverse() for c in X.cells()}
    Xp = PiWindow(X.field, X.lo, X.hi, X.dims,
                  {(i, j): isos[(i + 1, j)] @ e @ inv[(i, j)] for (i, j), e in X.epis.items()},
                  {(i, j): isos[(i, j + 1)] @ m @ inv[(i, j)] for (i, j), m in X.monos.items()})
    return Xp, PiStraightMorphism(X, Xp, {c: isos[c] for c in X.cells()})


# ---------------------------------------------------------------------------
# Random morphisms


def random_pi_morphism(X: PiWindow, Y: PiWindow, rng) -> PiStraightMorphism:
    """A uniformly random straight morphism X -> Y of windows with equal bounds."""
    if (X.lo, X.hi) != (Y.lo, Y.hi):
        raise WindowError("straight morphisms need equal bounds", "bounds")
    F = X.field
    unknowns = {c: (Y.dims[c], X.dims[c]) for c in X.cells()}
    eqs = []
    for (i, j), e in X.epis.items():
        t = (i + 1, j)
        eqs.append([(t, Mat.identity(F, Y.dims[t]), e),
                    ((i, j), -Y.epis[(i, j)], Mat.identity(F, X.dims[(i, j)]))])
    for (i, j), m in X.monos.items():
        t = (i, j + 1)
        eqs.append([(t, Mat.identity(F, Y.dims[t]), m),
                    ((i, j), -Y.monos[(i, j)], Mat.identity(F, X.dims[(i, j)]))])
    comps = random_solution(F, unknowns, solution_basis(F, unknowns, eqs), rng)
    return PiStraightMorphism(X, Y, comps)


def random_uroof(X: PiWindow, Y: PiWindow, phi: BicofinalMap, rng) -> URoof:
    """
    A uniformly random U-roof X -> Y with reindexing phi; phi must send
    X.lo to Y.lo and X.hi into [Y.lo, Y.hi].
    """
    f = random_pi_morphism(X, apply_tilde_phi(Y, phi, X.lo, X.hi), rng)
    return URoof(X, Y, phi, dict(f.components))
