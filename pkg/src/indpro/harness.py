"""
Randomized generators and checkers for the structural theorems.

Every check follows the same shape: a generator builds a valid instance
(and verifies that it is valid), then the checker recomputes the claimed
conclusion from scratch.  Reports collect one line per trial.

Trial seeds are spawned from the master seed with ``SeedSequence`` so that
a report is reproducible bit for bit and any single trial can be replayed
from the seed printed on its line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .beilinson import (PiSes, PiStraightMorphism, PiWindow, embed_ind_window,
                        is_kato, kato_failure)
from .errors import PreconditionError
from .indices import CofinalMap, psi_of
from .linalg import (GF, Mat, PrimeField, SesTriple, Square, _as_field, block_diag,
                     hstack, is_cartesian, is_cocartesian, is_ses, pullback, pushout,
                     random_invertible, random_mat, solve, vstack)
from .naturality import random_solution, solution_basis
from .windows import (IndWindow, ProWindow, StraightMorphism, reindex, sim_equal,
                      random_straight_morphism, straight_compose, straight_reindex,
                      structure_morphism)

__all__ = [
    "TrialResult",
    "Report",
    "trial_seeds",
    "run_trials",
    "gen_random_ses",
    "gen_random_admissible_square",
    "random_injective",
    "random_surjective",
    "random_ind_window",
    "random_pro_window",
    "extend_diagram",
    "gen_extension",
    "ThreeSquaresInstance",
    "Grid3x3",
    "gen_three_squares",
    "gen_grid",
    "three_squares_check",
    "middle_3x3_check",
    "universal_property_trial",
    "extension_closure_check",
    "ind_closure_check",
    "pro_maps_trivial",
    "localizing_trial",
    "localizing_axioms_check",
    "HARNESSES",
    "HarnessParams",
]


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class TrialResult:
    trial: int
    seed: int
    ok: bool
    reason: str = ""
    # (kind, object) pairs describing a failing instance, for dumping
    instance: Tuple = ()

    def line(self) -> str:
        status = "ok" if self.ok else f"FAIL {self.reason}"
        return f"trial={self.trial} seed={self.seed} {status}"


@dataclass(frozen=True)
class Report:
    name: str
    seed: int
    results: Tuple[TrialResult, ...]

    @property
    def failures(self) -> int:
        return sum(1 for r in self.results if not r.ok)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        lines.append(f"trials={len(self.results)} failures={self.failures}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        body = {
            "harness": self.name,
            "seed": self.seed,
            "trials": len(self.results),
            "failures": self.failures,
            "results": [{"trial": r.trial, "seed": r.seed, "ok": r.ok, "reason": r.reason}
                        for r in self.results],
        }
        return json.dumps(body, sort_keys=True, indent=2) + "\n"


def trial_seeds(seed: int, trials: int) -> List[int]:
    """Independent 64-bit seeds for each trial, derived from ``seed``."""
    children = np.random.SeedSequence(int(seed)).spawn(trials)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


TrialFn = Callable[[np.random.Generator], Tuple[bool, str, Tuple]]


def run_trials(name: str, trials: int, seed: int, fn: TrialFn) -> Report:
    """Run ``fn`` once per derived seed; exceptions count as failures."""
    results = []
    for k, s in enumerate(trial_seeds(seed, trials)):
        rng = np.random.default_rng(s)
        try:
            ok, reason, inst = fn(rng)
        except PreconditionError as exc:
            ok, reason, inst = False, f"precondition: {exc}", ()
        results.append(TrialResult(k, s, bool(ok), reason, inst))
    return Report(name, int(seed), tuple(results))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# Small generators


def random_injective(field, rows: int, cols: int, rng) -> Mat:
    if cols > rows:
        raise ValueError("an injective map needs cols <= rows")
    return random_invertible(field, rows, rng)[:, :cols] if rows else Mat.zeros(field, 0, cols)


def random_surjective(field, rows: int, cols: int, rng) -> Mat:
    if rows > cols:
        raise ValueError("a surjective map needs rows <= cols")
    return random_invertible(field, cols, rng)[:rows, :] if cols else Mat.zeros(field, rows, 0)


def gen_random_ses(seed, max_dim: int, p: int = 2) -> SesTriple:
    """A conjugated split sequence a' -> a -> a'' with dim a <= max_dim."""
    if max_dim > 8:
        raise ValueError("max_dim is capped at 8")
    rng = _rng(seed)
    F = GF(p)
    n = int(rng.integers(0, max_dim + 1))
    k = int(rng.integers(0, n + 1))
    P = random_invertible(F, n, rng)
    A = random_invertible(F, k, rng)
    B = random_invertible(F, n - k, rng)
    inc = vstack(Mat.identity(F, k), Mat.zeros(F, n - k, k))
    proj = hstack(Mat.zeros(F, n - k, k), Mat.identity(F, n - k))
    t = SesTriple(P @ inc @ A, B @ proj @ P.inverse())
    assert is_ses(t)
    return t


# the admissible indecomposable squares (monos across, epis down), by support
_SQUARE_TYPES = ("full", "bc", "b", "ab")


def gen_random_admissible_square(seed, max_dim: int, p: int = 2,
                                 cartesian: Optional[bool] = True) -> Square:
    """
    A random admissible square: a sum of the indecomposable admissible
    squares, conjugated by an isomorphism at each corner.

    With ``cartesian=True`` the summand supported on b alone is excluded,
    and the square is cartesian; with False at least one such summand is
    included; with None the mix is random.
    """
    if max_dim > 8:
        raise ValueError("max_dim is capped at 8")
    rng = _rng(seed)
    F = GF(p)
    total = int(rng.integers(0 if cartesian is not False else 1, max_dim + 1))
    types = [t for t in _SQUARE_TYPES if not (cartesian is True and t == "b")]
    picks = list(rng.choice(types, size=total)) if total else []
    if cartesian is False and "b" not in picks:
        picks[int(rng.integers(0, len(picks)))] = "b"
    blocks = {"top": [], "left": [], "right": [], "bottom": []}
    dims = {"a": 0, "b": 0, "c": 0, "d": 0}
    for t in picks:
        supp = {"full": "abcd", "bc": "bc", "b": "b", "ab": "ab"}[t]
        for v in "abcd":
            dims[v] += v in supp
        for name, (s, d) in {"top": "ab", "left": "ad", "right": "bc", "bottom": "dc"}.items():
            blocks[name].append(Mat.identity(F, 1) if (s in supp and d in supp)
                                else Mat.zeros(F, int(d in supp), int(s in supp)))
    zero = lambda r, c: Mat.zeros(F, r, c)
    maps = {n: (block_diag(*b) if b else None) for n, b in blocks.items()}
    src = {"top": "a", "left": "a", "right": "b", "bottom": "d"}
    dst = {"top": "b", "left": "d", "right": "c", "bottom": "c"}
    P = {v: random_invertible(F, dims[v], rng) for v in "abcd"}
    out = {}
    for n in maps:
        m = maps[n] if maps[n] is not None else zero(dims[dst[n]], dims[src[n]])
        out[n] = P[dst[n]] @ m @ P[src[n]].inverse()
    sq = Square(**out)
    assert sq.commutes() and sq.is_admissible()
    return sq


def random_ind_window(field, N: int, max_dim: int, rng, strict: bool = False,
                      max_rank_drop: int = 1) -> IndWindow:
    """
    A random ind window on 0..N.  Strict windows have nondecreasing
    dimensions and injective maps; otherwise maps may lose rank.
    """
    F = _as_field(field)
    if strict:
        dims = sorted(int(d) for d in rng.integers(0, max_dim + 1, size=N + 1))
        maps = [random_injective(F, dims[i + 1], dims[i], rng) for i in range(N)]
        return IndWindow(F, dims, maps)
    dims = [int(d) for d in rng.integers(0, max_dim + 1, size=N + 1)]
    maps = []
    for i in range(N):
        r = max(0, min(dims[i], dims[i + 1]) - int(rng.integers(0, max_rank_drop + 1)))
        maps.append(random_mat(F, dims[i + 1], r, rng) @ random_mat(F, r, dims[i], rng))
    return IndWindow(F, dims, maps)


def random_pro_window(field, N: int, max_dim: int, rng, strict: bool = False,
                      max_rank_drop: int = 1) -> ProWindow:
    return random_ind_window(field, N, max_dim, rng, strict, max_rank_drop).transpose()


# ---------------------------------------------------------------------------
# Extensions of diagrams


def extend_diagram(field: PrimeField, dims_x: Dict[Hashable, int], dims_z: Dict[Hashable, int],
                   edges: Dict[Hashable, Tuple[Hashable, Hashable]],
                   maps_x: Dict[Hashable, Mat], maps_z: Dict[Hashable, Mat],
                   relations: Sequence[Tuple[Sequence[Hashable], Optional[Sequence[Hashable]]]],
                   rng: np.random.Generator, split: bool = False):
    """
    A random extension 0 -> X -> Y -> Z -> 0 of two representations of the
    same quiver with relations.

    Y(v) = X(v) ⊕ Z(v) with edge maps [[x, c], [0, z]], the off-diagonal
    blocks c drawn uniformly from the solutions of the relations; then
    every vertex is conjugated by a random isomorphism so nothing in the
    coordinates shows the splitting.  A relation is a pair of paths (edge
    names in the order they are applied); a second path of None means
    the first composes to zero.

    Returns (dims_y, maps_y, monos, epis) with monos X(v) -> Y(v) and
    epis Y(v) -> Z(v).
    """
    F = field
    shapes = {e: (dims_x[t], dims_z[s]) for e, (s, t) in edges.items()}
    if split:
        c = {e: Mat.zeros(F, *shapes[e]) for e in edges}
    else:
        eqs = []
        for path, other in relations:
            terms = _path_terms(F, path, edges, dims_x, dims_z, maps_x, maps_z, 1)
            if other is not None:
                terms += _path_terms(F, other, edges, dims_x, dims_z, maps_x, maps_z, -1)
            if terms:
                eqs.append(terms)
        c = random_solution(F, shapes, solution_basis(F, shapes, eqs), rng)
    dims_y = {v: dims_x[v] + dims_z[v] for v in dims_x}
    P = {v: random_invertible(F, dims_y[v], rng) for v in dims_y}
    Pinv = {v: P[v].inverse() for v in dims_y}
    maps_y = {}
    for e, (s, t) in edges.items():
        block = vstack(hstack(maps_x[e], c[e]),
                       hstack(Mat.zeros(F, dims_z[t], dims_x[s]), maps_z[e]))
        maps_y[e] = P[t] @ block @ Pinv[s]
    monos, epis = {}, {}
    for v in dims_y:
        x, z = dims_x[v], dims_z[v]
        monos[v] = P[v] @ vstack(Mat.identity(F, x), Mat.zeros(F, z, x))
        epis[v] = hstack(Mat.zeros(F, z, x), Mat.identity(F, z)) @ Pinv[v]
    return dims_y, maps_y, monos, epis


def _path_terms(F, path, edges, dims_x, dims_z, maps_x, maps_z, sign):
    # upper-right block of a product of block upper-triangular matrices
    terms = []
    for t, e in enumerate(path):
        left = Mat.identity(F, dims_x[edges[e][1]])
        for later in path[t + 1:]:
            left = maps_x[later] @ left
        right = Mat.identity(F, dims_z[edges[path[0]][0]])
        for earlier in path[:t]:
            right = maps_z[earlier] @ right
        terms.append((e, left.scale(sign % F.p), right))
    return terms


def gen_extension(X: PiWindow, Z: PiWindow, seed, split: bool = False) -> Tuple[PiWindow, PiSes]:
    """A random extension 0 -> X -> Y -> Z -> 0 of Pi windows, cellwise."""
    if (X.lo, X.hi, X.field) != (Z.lo, Z.hi, Z.field):
        raise PreconditionError("gen_extension needs windows with equal bounds and field")
    rng = _rng(seed)
    edges, maps_x, maps_z = {}, {}, {}
    for (i, j), e in X.epis.items():
        edges[("e", i, j)] = ((i, j), (i + 1, j))
        maps_x[("e", i, j)], maps_z[("e", i, j)] = e, Z.epis[(i, j)]
    for (i, j), m in X.monos.items():
        edges[("m", i, j)] = ((i, j), (i, j + 1))
        maps_x[("m", i, j)], maps_z[("m", i, j)] = m, Z.monos[(i, j)]
    relations = [([("e", i, j), ("m", i + 1, j)], [("m", i, j), ("e", i, j + 1)])
                 for (i, j), _ in X.elementary_squares()]
    dims_y, maps_y, monos, epis = extend_diagram(
        X.field, X.dims, Z.dims, edges, maps_x, maps_z, relations, rng, split)
    Y = PiWindow(X.field, X.lo, X.hi, dims_y,
                 {(i, j): maps_y[("e", i, j)] for (i, j) in X.epis},
                 {(i, j): maps_y[("m", i, j)] for (i, j) in X.monos})
    ses = PiSes(PiStraightMorphism(X, Y, monos), PiStraightMorphism(Y, Z, epis))
    return Y, ses


# ---------------------------------------------------------------------------
# Three squares and the middle 3x3 lemma


_SQ_EDGES = {"top": ("a", "b"), "left": ("a", "d"), "right": ("b", "c"), "bottom": ("d", "c")}


@dataclass(frozen=True)
class ThreeSquaresInstance:
    """
    Squares first (X' Y' T' Z'), second (X Y T Z), third (X'' Y'' T'' Z'')
    with corners a = X, b = Y, d = T, c = Z, and short exact sequences
    joining the corresponding corners.
    """

    first: Square
    second: Square
    third: Square
    ses_x: SesTriple
    ses_y: SesTriple
    ses_t: SesTriple
    ses_z: SesTriple

    def corner_ses(self) -> Dict[str, SesTriple]:
        return {"a": self.ses_x, "b": self.ses_y, "d": self.ses_t, "c": self.ses_z}


def _check_three_squares(inst: ThreeSquaresInstance):
    for name in ("first", "second", "third"):
        sq = getattr(inst, name)
        if not sq.commutes():
            raise PreconditionError(f"square {name} does not commute")
        if not sq.is_admissible():
            raise PreconditionError(f"square {name} is not admissible")
    if not is_cartesian(inst.first):
        raise PreconditionError("square first is not cartesian")
    if not is_cartesian(inst.third):
        raise PreconditionError("square third is not cartesian")
    ses = inst.corner_ses()
    for v, t in ses.items():
        if not is_ses(t):
            raise PreconditionError(f"corner {v}: sequence is not short exact")
    for e, (s, t) in _SQ_EDGES.items():
        e1, e2, e3 = (getattr(inst.first, e), getattr(inst.second, e), getattr(inst.third, e))
        if ses[t].mono @ e1 != e2 @ ses[s].mono:
            raise PreconditionError(f"cube face over edge {e} (first -> second) does not commute")
        if ses[t].epi @ e2 != e3 @ ses[s].epi:
            raise PreconditionError(f"cube face over edge {e} (second -> third) does not commute")


def three_squares_check(inst: ThreeSquaresInstance) -> bool:
    """Verify the hypotheses, then return whether the middle square is cartesian."""
    _check_three_squares(inst)
    return is_cartesian(inst.second)


def _square_maps(sq: Square):
    return {e: getattr(sq, e) for e in _SQ_EDGES}


def gen_three_squares(seed, max_dim: int = 4, p: int = 2) -> ThreeSquaresInstance:
    """Two random cartesian admissible squares and a random extension between them."""
    rng = _rng(seed)
    F = GF(p)
    first = gen_random_admissible_square(rng, max_dim, p)
    third = gen_random_admissible_square(rng, max_dim, p)
    dx = dict(zip("abdc", first.dims))
    dz = dict(zip("abdc", third.dims))
    rel = [(["top", "right"], ["left", "bottom"])]
    _, maps_y, monos, epis = extend_diagram(F, dx, dz, _SQ_EDGES, _square_maps(first),
                                            _square_maps(third), rel, rng)
    ses = {v: SesTriple(monos[v], epis[v]) for v in "abdc"}
    return ThreeSquaresInstance(first, Square(**maps_y), third,
                                ses["a"], ses["b"], ses["d"], ses["c"])


@dataclass(frozen=True)
class Grid3x3:
    """
    A 3x3 diagram of objects A[r][c].  ``rows[r]`` is the pair of maps
    A[r][0] -> A[r][1] -> A[r][2]; ``cols[c]`` is A[0][c] -> A[1][c] -> A[2][c].
    """

    rows: Tuple[Tuple[Mat, Mat], Tuple[Mat, Mat], Tuple[Mat, Mat]]
    cols: Tuple[Tuple[Mat, Mat], Tuple[Mat, Mat], Tuple[Mat, Mat]]


def middle_3x3_check(grid: Grid3x3) -> bool:
    """
    With the outer rows and all columns short exact, the grid commuting,
    and the middle row a complex, return whether the middle row is short exact.
    """
    for r in (0, 2):
        if not is_ses(SesTriple(*grid.rows[r])):
            raise PreconditionError(f"row {r} is not short exact")
    for c in range(3):
        if not is_ses(SesTriple(*grid.cols[c])):
            raise PreconditionError(f"column {c} is not short exact")
    for r in range(2):
        for c in range(2):
            if grid.cols[c + 1][r] @ grid.rows[r][c] != grid.rows[r + 1][c] @ grid.cols[c][r]:
                raise PreconditionError(f"cell square at row {r}, column {c} does not commute")
    f, g = grid.rows[1]
    if not (g @ f).is_zero():
        raise PreconditionError("middle row does not compose to zero")
    return is_ses(SesTriple(f, g))


def gen_grid(seed, max_dim: int = 4, p: int = 2) -> Grid3x3:
    """An extension of one short exact sequence by another, laid out as a 3x3 grid."""
    rng = _rng(seed)
    F = GF(p)
    top = gen_random_ses(rng, max_dim, p)
    bot = gen_random_ses(rng, max_dim, p)
    edges = {"m": (0, 1), "e": (1, 2)}
    dx = {0: top.mono.cols, 1: top.mono.rows, 2: top.epi.rows}
    dz = {0: bot.mono.cols, 1: bot.mono.rows, 2: bot.epi.rows}
    _, maps_y, monos, epis = extend_diagram(
        F, dx, dz, edges, {"m": top.mono, "e": top.epi}, {"m": bot.mono, "e": bot.epi},
        [(["m", "e"], None)], rng)
    return Grid3x3(rows=((top.mono, top.epi), (maps_y["m"], maps_y["e"]), (bot.mono, bot.epi)),
                   cols=tuple((monos[c], epis[c]) for c in range(3)))


# ---------------------------------------------------------------------------
# Pullbacks and pushouts


def _random_cone(F, unknowns, eqs, rng):
    return random_solution(F, unknowns, solution_basis(F, unknowns, eqs), rng)


def universal_property_trial(rng: np.random.Generator, p: int, max_dim: int = 4,
                             cone_dim: int = 3) -> Tuple[bool, str]:
    """
    One random cospan and one random span, each with a random commuting
    cone.  Check that the mediating map exists and is unique.
    """
    F = GF(p)
    dim = lambda: int(rng.integers(0, max_dim + 1))
    b, c, d, x = dim(), dim(), dim(), int(rng.integers(0, cone_dim + 1))
    f, g = random_mat(F, c, b, rng), random_mat(F, c, d, rng)
    pb = pullback(f, g)
    if f @ pb.to_b != g @ pb.to_d:
        return False, "pullback square does not commute"
    # a uniformly random commuting cone x -> b, x -> d with f u = g v
    cone = _random_cone(F, {"u": (b, x), "v": (d, x)},
                        [[("u", f, Mat.identity(F, x)), ("v", -g, Mat.identity(F, x))]], rng)
    u, v = cone["u"], cone["v"]
    legs = vstack(pb.to_b, pb.to_d)
    w = solve(legs, vstack(u, v))
    if w is None:
        return False, "no mediating map into the pullback"
    if not legs.is_injective():
        return False, "mediating map into the pullback is not unique"
    # the pullback holds every commuting cone: dim = dim ker [f, -g]
    if pb.apex_dim != b + d - hstack(f, -g).rank():
        return False, "pullback apex has the wrong dimension"
    a = dim()
    f2, g2 = random_mat(F, b, a, rng), random_mat(F, d, a, rng)
    po = pushout(f2, g2)
    if po.from_b @ f2 != po.from_d @ g2:
        return False, "pushout square does not commute"
    cocone = _random_cone(F, {"u": (x, b), "v": (x, d)},
                          [[("u", Mat.identity(F, x), f2), ("v", -Mat.identity(F, x), g2)]], rng)
    u2, v2 = cocone["u"], cocone["v"]
    colegs = hstack(po.from_b, po.from_d)
    w = solve(colegs.T, hstack(u2, v2).T)
    if w is None:
        return False, "no mediating map out of the pushout"
    if not colegs.is_surjective():
        return False, "mediating map out of the pushout is not unique"
    if po.apex_dim != b + d - vstack(f2, -g2).rank():
        return False, "pushout apex has the wrong dimension"
    return True, ""


# ---------------------------------------------------------------------------
# Closure of Kato and ind windows under extensions


def extension_closure_check(X: PiWindow, Z: PiWindow, trials: int, seed: int) -> Report:
    """For each trial, extend Z by X at random and check that the middle is Kato."""
    if not (is_kato(X) and is_kato(Z)):
        raise PreconditionError("extension_closure_check needs Kato windows")

    def trial(rng):
        Y, ses = gen_extension(X, Z, rng)
        bad = kato_failure(Y)
        if bad is None:
            return True, "", ()
        return False, f"square at {bad[0]} not {bad[1]}", (("pi_window", Y),)

    return run_trials("extension", trials, seed, trial)


def pro_maps_trivial(Y: PiWindow) -> Optional[str]:
    """
    For a window on [lo, hi] with lo < 0: None if every cell with j < 0 is
    zero and every e(i, j) with i + 1 < 0 is an isomorphism; else a reason.
    """
    for (i, j), d in Y.dims.items():
        if j < 0 and d:
            return f"cell ({i},{j}) is not zero"
    for (i, j), e in Y.epis.items():
        if i + 1 < 0 and not e.is_iso():
            return f"e({i},{j}) is not an isomorphism"
    return None


def ind_closure_check(X: PiWindow, Z: PiWindow, trials: int, seed: int) -> Report:
    """
    Extensions of embedded ind windows stay trivial in the pro direction:
    zero below j = 0, and isomorphisms e(i, j) for i + 1 < 0.
    """
    for W in (X, Z):
        if pro_maps_trivial(W) is not None:
            raise PreconditionError("ind_closure_check needs embedded ind windows")

    def trial(rng):
        Y, _ = gen_extension(X, Z, rng)
        why = pro_maps_trivial(Y)
        if why is None:
            return True, "", ()
        return False, why, (("pi_window", Y),)

    return run_trials("ind-closure", trials, seed, trial)


# ---------------------------------------------------------------------------
# Localizing axioms


def _killed_deformation(X: IndWindow, Y: IndWindow, phi: CofinalMap, rng) -> StraightMorphism:
    """A random natural delta: X -> Y with Y(i -> phi(i)) delta_i = 0 for every i."""
    F = X.field
    L = max(X.N, Y.N)
    unknowns = {i: (Y.dim(i), X.dim(i)) for i in range(L + 1)}
    eqs = []
    for i in range(L):
        eqs.append([(i, Y.step(i), Mat.identity(F, X.dim(i))),
                    (i + 1, -Mat.identity(F, Y.dim(i + 1)), X.step(i))])
    for i in range(L + 1):
        eqs.append([(i, Y.transition(i, phi(i)), Mat.identity(F, X.dim(i)))])
    sol = random_solution(F, unknowns, solution_basis(F, unknowns, eqs), rng)
    return StraightMorphism(X, Y, [sol[i] for i in range(L + 1)])


def _random_phi(rng, N: int) -> CofinalMap:
    # nondecreasing, id <= phi, with a random stretch
    vals, cur = [], 0
    for i in range(N + 1):
        cur = max(cur, i) + int(rng.integers(0, 3))
        vals.append(cur)
    return CofinalMap(tuple(vals))


def localizing_trial(rng: np.random.Generator, p: int = 2, max_dim: int = 3,
                     N: int = 3) -> Tuple[bool, str, Tuple]:
    """
    One instance of axioms (b) and (c) of the localizing system S.

    (b): for f: Y -> X and s: Y -> Y·phi, the square t f = (f·phi) s commutes.
    (c): with g = f + delta where s delta = 0, the reindexing psi built from
    phi gives f_j X(psi(j) -> j) = g_j X(psi(j) -> j) for every j with a
    value of phi at or below it, and f·t ~ g·t.
    """
    F = GF(p)
    X = random_ind_window(F, N, max_dim, rng, max_rank_drop=2)
    Y = random_ind_window(F, N, max_dim, rng, max_rank_drop=2)
    phi = _random_phi(rng, N)

    f = random_straight_morphism(Y, X, rng)
    s_y, s_x = structure_morphism(Y, phi), structure_morphism(X, phi)
    g = straight_reindex(f, phi)
    if straight_compose(s_x, f) != straight_compose(g, s_y):
        return False, "axiom (b) square does not commute", (("ind_window", X), ("ind_window", Y))

    f = random_straight_morphism(X, Y, rng)
    delta = _killed_deformation(X, Y, phi, rng)
    g = StraightMorphism(X, Y, [f.component(i) + delta.component(i)
                                for i in range(max(f.L, delta.L) + 1)])
    s = structure_morphism(Y, phi)
    if not sim_equal(straight_compose(s, f), straight_compose(s, g)):
        return False, "generator failed: s f and s g differ", ()
    top = max(X.N, Y.N, phi(max(X.N, Y.N))) + 1
    psi = psi_of(phi, top)
    image = {phi(i) for i in range(top + 1)}
    for j in range(top + 1):
        if not any(v <= j for v in image):
            continue  # the degenerate third case
        t = X.transition(psi(j), j)
        if f.component(j) @ t != g.component(j) @ t:
            return False, f"psi square fails at j={j}", (("ind_window", X), ("ind_window", Y))
    # f·t ~ g·t with t: X·psi -> X
    Xp = reindex(X, psi)
    L = max(Xp.N, X.N, f.L, g.L)
    t = StraightMorphism(Xp, X, [X.transition(psi(j), j) for j in range(L + 1)])
    if not sim_equal(straight_compose(f, t), straight_compose(g, t)):
        return False, "f t and g t are not equivalent", ()
    return True, "", ()


def localizing_axioms_check(trials: int, seed: int, p: int = 2, max_dim: int = 3) -> Report:
    return run_trials("localizing", trials, seed,
                      lambda rng: localizing_trial(rng, p, max_dim))


# ---------------------------------------------------------------------------
# Named harnesses for the command line


@dataclass(frozen=True)
class HarnessParams:
    p: int = 2
    max_dim: int = 3
    lo: int = 0
    hi: int = 4


def _h_localizing(prm: HarnessParams):
    return lambda rng: localizing_trial(rng, prm.p, prm.max_dim)


def _h_cartesian(prm: HarnessParams):
    def trial(rng):
        sq = gen_random_admissible_square(rng, prm.max_dim, prm.p, cartesian=None)
        a, b = is_cartesian(sq), is_cocartesian(sq)
        return a == b, "" if a == b else f"cartesian={a} cocartesian={b}", ()
    return trial


def _h_three_squares(prm: HarnessParams):
    def trial(rng):
        ok = three_squares_check(gen_three_squares(rng, prm.max_dim, prm.p))
        return ok, "" if ok else "middle square is not cartesian", ()
    return trial


def _h_middle(prm: HarnessParams):
    def trial(rng):
        ok = middle_3x3_check(gen_grid(rng, prm.max_dim, prm.p))
        return ok, "" if ok else "middle row is not short exact", ()
    return trial


def _h_extension(prm: HarnessParams):
    from .tate import random_kato_window

    def trial(rng):
        X = random_kato_window(prm.p, prm.lo, prm.hi, prm.max_dim, rng)
        Z = random_kato_window(prm.p, prm.lo, prm.hi, prm.max_dim, rng)
        Y, _ = gen_extension(X, Z, rng)
        bad = kato_failure(Y)
        if bad is None:
            return True, "", ()
        return False, f"square at {bad[0]} not {bad[1]}", (("pi_window", Y),)
    return trial


def _h_ind_closure(prm: HarnessParams):
    def trial(rng):
        F = GF(prm.p)
        N = max(prm.hi, 0)
        X = embed_ind_window(random_ind_window(F, N, prm.max_dim, rng, strict=True), 2)
        Z = embed_ind_window(random_ind_window(F, N, prm.max_dim, rng, strict=True), 2)
        Y, _ = gen_extension(X, Z, rng)
        why = pro_maps_trivial(Y)
        return why is None, why or "", (() if why is None else (("pi_window", Y),))
    return trial


HARNESSES: Dict[str, Callable[[HarnessParams], TrialFn]] = {
    "localizing": _h_localizing,
    "cartesian": _h_cartesian,
    "three-squares": _h_three_squares,
    "middle-3x3": _h_middle,
    "extension": _h_extension,
    "ind-closure": _h_ind_closure,
}
