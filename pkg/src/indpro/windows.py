"""
Countable ind- and pro-systems on finite windows, and their roof calculus.

An ``IndWindow`` stores X_0 -> X_1 -> ... -> X_N and denotes the system
that is constant (identity maps) beyond N; a ``ProWindow`` stores
X_0 <- X_1 <- ... <- X_N likewise.  With identity tails every limit,
colimit and roof search in the localized categories becomes finite.

Roofs on the pro side are handled by transposition: a pro roof
``X -> Y`` is the transpose of an ind roof ``Y* -> X*`` between the dual
ind systems, so a single roof engine serves both directions.
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DimensionError, NonCommutingError, PreconditionError, WindowError
from .indices import CofinalMap, compose, leq
from .linalg import Mat, Subspace, _as_field, image, intersect
from .naturality import random_solution, solution_basis

__all__ = [
    "IndWindow",
    "ProWindow",
    "StraightMorphism",
    "SRoof",
    "ProRoof",
    "Realization",
    "Strictification",
    "reindex",
    "sim_equal",
    "roof_equiv",
    "roof_equiv_witness",
    "roof_compose",
    "realize_ind",
    "realize_pro",
    "strictify_pro",
    "strictify_ind",
    "structure_morphism",
    "straight_compose",
    "straight_reindex",
    "natural_maps_basis",
    "random_straight_morphism",
    "random_roof",
]


# ---------------------------------------------------------------------------
# Windows


class _Window:
    """Shared storage and validation of ind and pro windows."""

    __slots__ = ("field", "dims", "maps", "_cache")
    kind = ""

    def __init__(self, field, dims: Sequence[int], maps: Sequence[Mat]):
        field = _as_field(field)
        dims = tuple(int(d) for d in dims)
        maps = tuple(maps)
        if not dims:
            raise WindowError("a window needs at least one object", "nonempty")
        if min(dims) < 0:
            raise WindowError("dimensions must be nonnegative", "dims")
        if len(maps) != len(dims) - 1:
            raise WindowError(f"expected {len(dims) - 1} maps, got {len(maps)}", "map_count")
        for i, m in enumerate(maps):
            if m.field != field:
                raise WindowError(f"map {i} is over {m.field}", "field", (i,))
            if m.shape != self._map_shape(dims, i):
                raise WindowError(
                    f"map {i} has shape {m.shape}, expected {self._map_shape(dims, i)}",
                    "map_shape", (i,))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @staticmethod
    def _map_shape(dims, i):
        raise NotImplementedError

    @property
    def N(self) -> int:
        """Last stored index."""
        return len(self.dims) - 1

    def dim(self, i: int) -> int:
        if i < 0:
            raise WindowError("windows are indexed by Z+", "index", (i,))
        return self.dims[min(i, self.N)]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.field == other.field and self.dims == other.dims
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.kind, self.field, self.dims, self.maps))

    def __repr__(self):
        return f"{type(self).__name__}(p={self.field.p}, dims={self.dims})"

    def _steps_composite(self, i: int, j: int) -> Mat:
        # composite of the stored steps between indices i <= j, in the
        # direction of the system; cached since roof searches ask repeatedly
        key = (i, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        top = min(j, self.N)
        if i >= top:
            out = Mat.identity(self.field, self.dim(i))
        else:
            out = self._compose_range(i, top)
        self._cache[key] = out
        return out


class IndWindow(_Window):
    """X_0 -> X_1 -> ... -> X_N with identity maps beyond N."""

    __slots__ = ()
    kind = "ind"

    @staticmethod
    def _map_shape(dims, i):
        return dims[i + 1], dims[i]

    def step(self, i: int) -> Mat:
        """X_i -> X_{i+1}."""
        if i < self.N:
            return self.maps[i]
        return Mat.identity(self.field, self.dim(i))

    def _compose_range(self, i, top):
        out = self.maps[i]
        for k in range(i + 1, top):
            out = self.maps[k] @ out
        return out

    def transition(self, i: int, j: int) -> Mat:
        """X(i -> j): X_i -> X_j for i <= j."""
        if i > j:
            raise WindowError(f"no ind transition from {i} to {j}", "order", (i, j))
        return self._steps_composite(i, j)

    def leg(self, i: int) -> Mat:
        """Cocone leg X_i -> X_N."""
        return self.transition(i, max(i, self.N))

    def is_strict(self) -> bool:
        return all(m.is_injective() for m in self.maps)

    def transpose(self) -> "ProWindow":
        """The dual pro system X*_0 <- X*_1 <- ..."""
        return ProWindow(self.field, self.dims, [m.T for m in self.maps])

    @classmethod
    def constant(cls, field, dim: int, length: int = 1) -> "IndWindow":
        field = _as_field(field)
        return cls(field, [dim] * length,
                   [Mat.identity(field, dim)] * (length - 1))


class ProWindow(_Window):
    """Y_0 <- Y_1 <- ... <- Y_N with identity maps beyond N; map i is Y_{i+1} -> Y_i."""

    __slots__ = ()
    kind = "pro"

    @staticmethod
    def _map_shape(dims, i):
        return dims[i], dims[i + 1]

    def step(self, i: int) -> Mat:
        """Y_{i+1} -> Y_i."""
        if i < self.N:
            return self.maps[i]
        return Mat.identity(self.field, self.dim(i))

    def _compose_range(self, i, top):
        out = self.maps[top - 1]
        for k in range(top - 2, i - 1, -1):
            out = self.maps[k] @ out
        return out

    def transition(self, j: int, i: int) -> Mat:
        """v_{ji}: Y_j -> Y_i for j >= i."""
        if i > j:
            raise WindowError(f"no pro transition from {j} to {i}", "order", (j, i))
        return self._steps_composite(i, j)

    def leg(self, i: int) -> Mat:
        """Cone leg Y_N -> Y_i."""
        return self.transition(max(i, self.N), i)

    def is_strict(self) -> bool:
        return all(m.is_surjective() for m in self.maps)

    def transpose(self) -> IndWindow:
        return IndWindow(self.field, self.dims, [m.T for m in self.maps])

    @classmethod
    def constant(cls, field, dim: int, length: int = 1) -> "ProWindow":
        field = _as_field(field)
        return cls(field, [dim] * length,
                   [Mat.identity(field, dim)] * (length - 1))


Window = Union[IndWindow, ProWindow]


def reindex(X: Window, phi: CofinalMap) -> Window:
    """
    The composite X·phi: (X·phi)_i = X_{phi(i)}, with structure maps the
    composites of X's maps between phi(i) and phi(i+1).
    """
    if not phi.is_cofinal():
        raise PreconditionError("phi is not cofinal")
    w = phi.window
    # past M the reindexed system sits in X's identity tail
    M = max(w, w + X.N - phi(w))
    dims = [X.dim(phi(i)) for i in range(M + 1)]
    if isinstance(X, IndWindow):
        maps = [X.transition(phi(i), phi(i + 1)) for i in range(M)]
    else:
        maps = [X.transition(phi(i + 1), phi(i)) for i in range(M)]
    return type(X)(X.field, dims, maps)


# ---------------------------------------------------------------------------
# Straight morphisms


def _same_window_kind(X, Y):
    if type(X) is not type(Y):
        raise WindowError("endpoints must both be ind or both be pro windows", "kind")
    if X.field != Y.field:
        raise WindowError("endpoints live over different fields", "field")


class StraightMorphism:
    """
    A natural transformation f: X -> Y of windows of the same kind.

    Components are stored for 0..L with L >= max(N_X, N_Y); the last one
    repeats forever, which is natural since both tails are identities.
    """

    __slots__ = ("source", "target", "components")

    def __init__(self, source: Window, target: Window, components: Sequence[Mat]):
        _same_window_kind(source, target)
        comps = tuple(components)
        need = max(source.N, target.N) + 1
        if len(comps) < need:
            raise WindowError(f"need at least {need} components, got {len(comps)}",
                              "component_count")
        for i, f in enumerate(comps):
            if f.shape != (target.dim(i), source.dim(i)):
                raise DimensionError(f"component {i} has shape {f.shape}")
        ind = isinstance(source, IndWindow)
        for i in range(len(comps) - 1):
            if ind:
                ok = target.step(i) @ comps[i] == comps[i + 1] @ source.step(i)
            else:
                ok = target.step(i) @ comps[i + 1] == comps[i] @ source.step(i)
            if not ok:
                raise NonCommutingError(f"naturality fails at index {i}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("StraightMorphism is immutable")

    @property
    def L(self) -> int:
        return len(self.components) - 1

    def component(self, i: int) -> Mat:
        return self.components[min(i, self.L)]

    def __eq__(self, other):
        if not isinstance(other, StraightMorphism):
            return NotImplemented
        L = max(self.L, other.L)
        return (self.source == other.source and self.target == other.target
                and all(self.component(i) == other.component(i) for i in range(L + 1)))

    def __hash__(self):
        return hash((self.source, self.target, self.component(self.L)))

    @classmethod
    def identity(cls, X: Window) -> "StraightMorphism":
        return cls(X, X, [Mat.identity(X.field, d) for d in X.dims])

    def as_roof(self) -> Union["SRoof", "ProRoof"]:
        """The roof with identity reindexing."""
        comps = list(self.components)
        if isinstance(self.source, IndWindow):
            return SRoof(self.source, self.target, CofinalMap.identity(), comps)
        return ProRoof(self.source, self.target, CofinalMap.identity(), comps)


def sim_equal(f: StraightMorphism, g: StraightMorphism) -> bool:
    """f ~ g: the components agree from some index on."""
    if f.source != g.source or f.target != g.target:
        raise WindowError("sim_equal needs morphisms with the same endpoints", "endpoints")
    # past both component windows nothing changes any more
    L = max(f.L, g.L)
    return f.component(L) == g.component(L)


def straight_compose(g: StraightMorphism, f: StraightMorphism) -> StraightMorphism:
    """g∘f."""
    if f.target != g.source:
        raise WindowError("morphisms are not composable", "endpoints")
    L = max(f.L, g.L)
    return StraightMorphism(f.source, g.target,
                            [g.component(i) @ f.component(i) for i in range(L + 1)])


def straight_reindex(f: StraightMorphism, phi: CofinalMap) -> StraightMorphism:
    """f·phi: X·phi -> Y·phi."""
    src, tgt = reindex(f.source, phi), reindex(f.target, phi)
    L = max(src.N, tgt.N)
    return StraightMorphism(src, tgt, [f.component(phi(i)) for i in range(L + 1)])


def structure_morphism(Y: Window, phi: CofinalMap) -> StraightMorphism:
    """
    The canonical morphism between Y and Y·phi for id <= phi: Y -> Y·phi
    on the ind side, Y·phi -> Y on the pro side.
    """
    if not leq(CofinalMap.identity(), phi):
        raise PreconditionError("structure_morphism needs id <= phi")
    Yp = reindex(Y, phi)
    L = max(Y.N, Yp.N)
    if isinstance(Y, IndWindow):
        return StraightMorphism(Y, Yp, [Y.transition(i, phi(i)) for i in range(L + 1)])
    return StraightMorphism(Yp, Y, [Y.transition(phi(i), i) for i in range(L + 1)])


# ---------------------------------------------------------------------------
# Roofs


class SRoof:
    """
    A roof X -> Y of ind windows: a reindexing phi and components
    f_i: X_i -> Y_{phi(i)} natural in i.

    Components are stored for 0..M with M >= N_X; beyond M they continue
    as f_i = Y(phi(M) -> phi(i)) f_M.
    """

    __slots__ = ("source", "target", "phi", "components")

    def __init__(self, source: IndWindow, target: IndWindow, phi: CofinalMap,
                 components: Sequence[Mat]):
        if not (isinstance(source, IndWindow) and isinstance(target, IndWindow)):
            raise WindowError("SRoof joins two ind windows", "kind")
        _same_window_kind(source, target)
        if not phi.is_cofinal():
            raise PreconditionError("phi is not cofinal")
        comps = tuple(components)
        if len(comps) < source.N + 1:
            raise WindowError(f"need at least {source.N + 1} components, got {len(comps)}",
                              "component_count")
        for i, f in enumerate(comps):
            if f.shape != (target.dim(phi(i)), source.dim(i)):
                raise DimensionError(f"component {i} has shape {f.shape}")
        for i in range(len(comps) - 1):
            if comps[i + 1] @ source.step(i) != target.transition(phi(i), phi(i + 1)) @ comps[i]:
                raise NonCommutingError(f"roof naturality fails at index {i}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("SRoof is immutable")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.phi == other.phi and self.components == other.components)

    def __hash__(self):
        return hash((self.source, self.target, self.phi))

    def __repr__(self):
        return f"SRoof({self.source!r} -> {self.target!r}, phi={self.phi!r})"

    @property
    def M(self) -> int:
        return len(self.components) - 1

    def component(self, i: int) -> Mat:
        if i <= self.M:
            return self.components[i]
        return self.target.transition(self.phi(self.M), self.phi(i)) @ self.components[self.M]

    def pushed(self, i: int, k: int) -> Mat:
        """Y(phi(i) -> k) f_i for k >= phi(i)."""
        return self.target.transition(self.phi(i), k) @ self.component(i)

    @classmethod
    def identity(cls, X: IndWindow) -> "SRoof":
        return cls(X, X, CofinalMap.identity(), [Mat.identity(X.field, d) for d in X.dims])


class ProRoof:
    """
    A roof X -> Y of pro windows: a reindexing phi of the source and
    components g_j: X_{phi(j)} -> Y_j, natural in j.

    Stored and validated as the transposed ind roof Y* -> X*.
    """

    __slots__ = ("source", "target", "phi", "components", "_dual")

    def __init__(self, source: ProWindow, target: ProWindow, phi: CofinalMap,
                 components: Sequence[Mat]):
        if not (isinstance(source, ProWindow) and isinstance(target, ProWindow)):
            raise WindowError("ProRoof joins two pro windows", "kind")
        comps = tuple(components)
        dual = SRoof(target.transpose(), source.transpose(), phi, [g.T for g in comps])
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "_dual", dual)

    def __setattr__(self, name, value):
        raise AttributeError("ProRoof is immutable")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.phi == other.phi and self.components == other.components)

    def __hash__(self):
        return hash((self.source, self.target, self.phi))

    def __repr__(self):
        return f"ProRoof({self.source!r} -> {self.target!r}, phi={self.phi!r})"

    def dual(self) -> SRoof:
        return self._dual

    @classmethod
    def from_dual(cls, r: SRoof) -> "ProRoof":
        return cls(r.target.transpose(), r.source.transpose(), r.phi,
                   [f.T for f in r.components])

    def component(self, j: int) -> Mat:
        return self._dual.component(j).T

    @classmethod
    def identity(cls, X: ProWindow) -> "ProRoof":
        return cls(X, X, CofinalMap.identity(), [Mat.identity(X.field, d) for d in X.dims])


def roof_equiv_witness(r1: SRoof, r2: SRoof) -> Optional[CofinalMap]:
    """
    A reindexing theta >= max(phi1, phi2) along which both roofs push to
    the same components, or None if no such theta exists.

    Once a pushed pair agrees at level k it agrees at every level above k,
    and past N_Y nothing changes, so the search per index stops at
    max(phi1(i), phi2(i), N_Y).
    """
    if r1.source != r2.source or r1.target != r2.target:
        raise WindowError("roof_equiv needs roofs with the same endpoints", "endpoints")
    Y = r1.target
    M = max(r1.M, r2.M, r1.phi.window, r2.phi.window, r1.source.N)
    theta: List[int] = []
    prev = 0
    for i in range(M + 1):
        start = max(r1.phi(i), r2.phi(i), prev)
        found = None
        for k in range(start, max(start, Y.N) + 1):
            if r1.pushed(i, k) == r2.pushed(i, k):
                found = k
                break
        if found is None:
            return None
        theta.append(found)
        prev = found
    return CofinalMap(tuple(theta))


def roof_equiv(r1, r2) -> bool:
    """Equality of two roofs in the localized category."""
    if isinstance(r1, ProRoof) and isinstance(r2, ProRoof):
        return roof_equiv_witness(r1.dual(), r2.dual()) is not None
    if isinstance(r1, SRoof) and isinstance(r2, SRoof):
        return roof_equiv_witness(r1, r2) is not None
    raise TypeError("roof_equiv needs two roofs of the same kind")


def roof_compose(r2, r1):
    """r2∘r1 for roofs X -> Y (r1) and Y -> Z (r2)."""
    if isinstance(r1, ProRoof) and isinstance(r2, ProRoof):
        if r1.target != r2.source:
            raise WindowError("roofs are not composable", "endpoints")
        return ProRoof.from_dual(roof_compose(r1.dual(), r2.dual()))
    if not (isinstance(r1, SRoof) and isinstance(r2, SRoof)):
        raise TypeError("roof_compose needs two roofs of the same kind")
    if r1.target != r2.source:
        raise WindowError("roofs are not composable", "endpoints")
    phi = r1.phi
    M = max(r1.M, phi.window)
    comps = [r2.component(phi(i)) @ r1.component(i) for i in range(M + 1)]
    return SRoof(r1.source, r2.target, compose(r2.phi, phi), comps)


# ---------------------------------------------------------------------------
# Realization


class Realization(NamedTuple):
    dim: int
    legs: Tuple[Mat, ...]


def realize_ind(X: IndWindow) -> Realization:
    """The colimit X_N with its cocone legs X_i -> X_N."""
    return Realization(X.dims[-1], tuple(X.leg(i) for i in range(X.N + 1)))


def realize_pro(Y: ProWindow) -> Realization:
    """The limit Y_N with its cone legs Y_N -> Y_j."""
    return Realization(Y.dims[-1], tuple(Y.leg(j) for j in range(Y.N + 1)))


# ---------------------------------------------------------------------------
# Strictification


class Strictification(NamedTuple):
    strict: Window
    fwd: Union[SRoof, ProRoof]
    bwd: Union[SRoof, ProRoof]
    steps: Tuple[int, ...]


def strictify_pro(Y: ProWindow) -> Strictification:
    """
    The strict pro system V'_j = ⋂_{i >= j} im(v_{ij}) isomorphic to Y.

    ``fwd``: Y' -> Y is the family of inclusions; ``bwd``: Y -> Y' reads
    v_{N j} into V'_j.  ``steps[j]`` counts the strict drops of dimension
    in the intersection loop for V'_j, which is at most dim Y_j.
    """
    F, N = Y.field, Y.N
    bases: List[Mat] = []
    steps: List[int] = []
    for j in range(N + 1):
        V = Subspace.full(F, Y.dim(j))
        drops = 0
        # past N the images no longer shrink
        for i in range(j + 1, N + 1):
            W = intersect(V, image(Y.transition(i, j)))
            if W.dim < V.dim:
                drops += 1
            V = W
        if drops > Y.dim(j):
            raise AssertionError("intersection loop failed to stabilize")
        bases.append(V.basis)
        steps.append(drops)
    sub = [Subspace(F, Y.dim(j), bases[j]) for j in range(N + 1)]
    maps = [sub[j].coordinates(Y.step(j) @ bases[j + 1]) for j in range(N)]
    strict = ProWindow(F, [b.cols for b in bases], maps)
    fwd = ProRoof(strict, Y, CofinalMap.identity(), bases)
    theta = CofinalMap(tuple(N for _ in range(N + 1)))
    bwd = ProRoof(Y, strict, theta,
                  [sub[j].coordinates(Y.transition(N, j)) for j in range(N + 1)])
    return Strictification(strict, fwd, bwd, tuple(steps))


def strictify_ind(X: IndWindow) -> Strictification:
    """
    The strict ind system X'_j = im(X_j -> X_N) isomorphic to X.

    ``fwd``: X -> X' corestricts the legs; ``bwd``: X' -> X includes
    X'_j into X_N.  ``steps`` records dim X_j - dim X'_j per index.
    """
    F, N = X.field, X.N
    subs = [image(X.leg(j)) for j in range(N + 1)]
    maps = [subs[j + 1].coordinates(subs[j].basis) for j in range(N)]
    strict = IndWindow(F, [s.dim for s in subs], maps)
    fwd = SRoof(X, strict, CofinalMap.identity(),
                [subs[j].coordinates(X.leg(j)) for j in range(N + 1)])
    theta = CofinalMap(tuple(N for _ in range(N + 1)))
    bwd = SRoof(strict, X, theta, [s.basis for s in subs])
    return Strictification(strict, fwd, bwd,
                           tuple(X.dim(j) - subs[j].dim for j in range(N + 1)))


# ---------------------------------------------------------------------------
# Random natural transformations


def natural_maps_basis(X: Window, Y: Window) -> List[Dict[int, Mat]]:
    """A basis of the straight morphisms X -> Y, as component dicts on 0..L."""
    _same_window_kind(X, Y)
    F = X.field
    L = max(X.N, Y.N)
    unknowns = {i: (Y.dim(i), X.dim(i)) for i in range(L + 1)}
    ind = isinstance(X, IndWindow)
    eqs = []
    for i in range(L):
        a, b = (i, i + 1) if ind else (i + 1, i)
        # Y.step(i) f_a - f_b X.step(i) = 0
        eqs.append([(a, Y.step(i), Mat.identity(F, X.dim(a))),
                    (b, -Mat.identity(F, Y.dim(b)), X.step(i))])
    return solution_basis(F, unknowns, eqs)


def random_straight_morphism(X: Window, Y: Window, rng: np.random.Generator) -> StraightMorphism:
    """A uniformly random straight morphism X -> Y."""
    L = max(X.N, Y.N)
    unknowns = {i: (Y.dim(i), X.dim(i)) for i in range(L + 1)}
    sol = random_solution(X.field, unknowns, natural_maps_basis(X, Y), rng)
    return StraightMorphism(X, Y, [sol[i] for i in range(L + 1)])


def random_roof(X: IndWindow, Y: IndWindow, phi: CofinalMap,
                rng: np.random.Generator) -> SRoof:
    """A random roof X -> Y with reindexing phi."""
    f = random_straight_morphism(X, reindex(Y, phi), rng)
    return SRoof(X, Y, phi, list(f.components))
