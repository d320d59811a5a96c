import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from indpro.errors import NonCommutingError, PreconditionError, WindowError
from indpro.harness import random_ind_window, random_pro_window
from indpro.indices import CofinalMap, compose
from indpro.linalg import GF, Mat
from indpro.windows import (IndWindow, ProRoof, ProWindow, SRoof, StraightMorphism,
                            natural_maps_basis, realize_ind, reindex, roof_compose, roof_equiv,
                            roof_equiv_witness, sim_equal, straight_compose, strictify_ind,
                            strictify_pro, structure_morphism)
from indpro.windows import random_roof

from oracles import span_set

F2, F3 = GF(2), GF(3)


def M(F, rows):
    return Mat.from_array(F, rows)


def chain():
    return IndWindow(F2, [1, 2, 3], [M(F2, [[1], [0]]), M(F2, [[1, 0], [0, 1], [0, 0]])])


def colimit_oracle_equiv(r1: SRoof, r2: SRoof) -> bool:
    """Roofs agree in the ind category iff they induce the same map on colimits."""
    Y = r1.target
    top = max(r1.M, r2.M, r1.phi.window, r2.phi.window, r1.source.N) + 1
    return all(Y.leg(r1.phi(i)) @ r1.component(i) == Y.leg(r2.phi(i)) @ r2.component(i)
               if max(r1.phi(i), r2.phi(i)) <= Y.N else
               Y.transition(r1.phi(i), max(r1.phi(i), r2.phi(i), Y.N)) @ r1.component(i)
               == Y.transition(r2.phi(i), max(r1.phi(i), r2.phi(i), Y.N)) @ r2.component(i)
               for i in range(top + 1))


# -- windows and reindexing --------------------------------------------------

def test_identity_tail_and_transitions():
    X = chain()
    assert X.dim(7) == 3
    assert X.transition(0, 5) == M(F2, [[1], [0], [0]])
    assert X.step(9) == Mat.identity(F2, 3)


def test_window_validation():
    with pytest.raises(Exception):
        IndWindow(F2, [1, 2], [M(F2, [[1, 0]])])


def test_reindex_examples():
    X = chain()
    assert reindex(X, CofinalMap.identity()) == X
    shifted = reindex(X, CofinalMap.shift(1))
    assert list(shifted.dims) == [2, 3]
    rng = np.random.default_rng(3)
    Y = random_ind_window(F3, 4, 3, rng)
    D = reindex(Y, CofinalMap.from_function(lambda n: 2 * n, 4))
    for i in range(4):
        assert D.step(i) == Y.step(2 * i + 1) @ Y.step(2 * i)


def test_sim_equal_examples():
    X = IndWindow(F2, [1, 1], [M(F2, [[0]])])
    one, zero = Mat.identity(F2, 1), Mat.zeros(F2, 1, 1)
    f = StraightMorphism(X, X, [one, one])
    g = StraightMorphism(X, X, [zero, one])
    h = StraightMorphism(X, X, [one, zero])
    assert sim_equal(f, f)
    assert sim_equal(f, g)
    assert not sim_equal(f, h)


def test_naturality_is_enforced():
    X = chain()
    with pytest.raises(NonCommutingError):
        StraightMorphism(X, X, [Mat.identity(F2, 1), Mat.zeros(F2, 2, 2), Mat.identity(F2, 3)])


def test_natural_maps_basis_matches_enumeration():
    # every family of 1x1..2x2 components over GF(2), filtered by naturality
    X = IndWindow(F2, [1, 2], [M(F2, [[1], [1]])])
    Y = IndWindow(F2, [2, 2], [M(F2, [[1, 1], [0, 1]])])
    count = 0
    for e0 in itertools.product(range(2), repeat=2):
        for e1 in itertools.product(range(2), repeat=4):
            f0, f1 = M(F2, np.array(e0).reshape(2, 1)), M(F2, np.array(e1).reshape(2, 2))
            count += Y.step(0) @ f0 == f1 @ X.step(0)
    assert 2 ** len(natural_maps_basis(X, Y)) == count


# -- roofs -------------------------------------------------------------------

def _rand_roof(rng, F, X, Y):
    phi = CofinalMap(tuple(sorted(int(v) for v in rng.integers(0, 5, size=3))))
    return random_roof(X, Y, phi, rng)


def test_roof_equiv_examples():
    rng = np.random.default_rng(0)
    X, Y = random_ind_window(F3, 3, 3, rng), random_ind_window(F3, 3, 3, rng)
    r = _rand_roof(rng, F3, X, Y)
    assert roof_equiv(r, r)
    psi = CofinalMap(tuple(r.phi(i) + 1 for i in range(4)))
    pushed = SRoof(X, Y, psi, [r.pushed(i, psi(i)) for i in range(4)])
    assert roof_equiv(r, pushed)


def test_automorphism_at_stable_object_is_not_equivalent():
    Y = IndWindow(F2, [2, 2], [Mat.identity(F2, 2)])
    swap = M(F2, [[0, 1], [1, 0]])
    a = SRoof.identity(Y)
    b = SRoof(Y, Y, CofinalMap.identity(), [swap, swap])
    assert not roof_equiv(a, b)
    assert not colimit_oracle_equiv(a, b)


def test_roof_equiv_needs_same_endpoints():
    with pytest.raises(WindowError):
        roof_equiv_witness(SRoof.identity(chain()), SRoof.identity(IndWindow.constant(F2, 1)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_roof_equiv_matches_colimit_oracle(seed):
    rng = np.random.default_rng(seed)
    X, Y = random_ind_window(F2, 2, 2, rng), random_ind_window(F2, 3, 2, rng)
    r1, r2 = _rand_roof(rng, F2, X, Y), _rand_roof(rng, F2, X, Y)
    assert roof_equiv(r1, r2) == colimit_oracle_equiv(r1, r2)
    w = roof_equiv_witness(r1, r2)
    if w is not None:
        for i in range(w.window + 1):
            assert r1.pushed(i, w(i)) == r2.pushed(i, w(i))


def test_compose_with_identity_and_pure_reindex():
    rng = np.random.default_rng(5)
    X, Y = random_ind_window(F3, 3, 3, rng), random_ind_window(F3, 2, 3, rng)
    r = _rand_roof(rng, F3, X, Y)
    assert roof_equiv(roof_compose(r, SRoof.identity(X)), r)
    assert roof_equiv(roof_compose(SRoof.identity(Y), r), r)
    a, b = CofinalMap((1, 1, 3)), CofinalMap((0, 2))
    ra = SRoof(Y, Y, a, [Y.transition(i, a(i)) for i in range(3)])
    rb = SRoof(Y, Y, b, [Y.transition(i, b(i)) for i in range(3)])
    comp = roof_compose(rb, ra)
    assert comp.phi == compose(b, a)


def test_pro_roofs_through_duality():
    rng = np.random.default_rng(9)
    X = random_pro_window(F2, 3, 3, rng)
    r = ProRoof.identity(X)
    assert roof_equiv(r, r)
    assert ProRoof.from_dual(r.dual()) == r
    assert roof_equiv(roof_compose(r, r), r)
    with pytest.raises(TypeError):
        roof_equiv(r, SRoof.identity(X.transpose()))


# -- realization -------------------------------------------------------------

def test_realize_examples():
    C = IndWindow.constant(F2, 2, 3)
    R = realize_ind(C)
    assert R.dim == 2 and all(l == Mat.identity(F2, 2) for l in R.legs)
    R = realize_ind(chain())
    assert R.dim == 3
    X = IndWindow(F2, [2, 1], [M(F2, [[1, 1]])])
    R = realize_ind(X)
    assert R.dim == 1 and R.legs[0] == M(F2, [[1, 1]])


# -- strictification ---------------------------------------------------------

def _intersection_oracle(Y: ProWindow, j: int):
    """V'_j by brute force over the stored window, as a set of vectors."""
    p = Y.field.p
    out = span_set(Mat.identity(Y.field, Y.dim(j)).array, p, Y.dim(j))
    for i in range(j + 1, Y.N + 1):
        out &= span_set(Y.transition(i, j).array, p, Y.dim(j))
    return out


def test_idempotent_pro_example():
    P = M(F2, [[1, 0], [0, 0]])
    Y = ProWindow(F2, [2, 2, 2, 1], [P, P, M(F2, [[1], [0]])])
    S = strictify_pro(Y)
    assert list(S.strict.dims) == [1, 1, 1, 1]
    e1 = {(0, 0), (1, 0)}
    for j in range(3):
        assert span_set(S.fwd.components[j].array, 2, 2) == e1 == _intersection_oracle(Y, j)
    assert all(m == Mat.identity(F2, 1) for m in S.strict.maps)


def test_idempotent_constant_window_below_the_top():
    # with identity tails beyond the window the top object is never cut down
    P = M(F2, [[1, 0], [0, 0]])
    Y = ProWindow(F2, [2, 2, 2, 2], [P, P, P])
    S = strictify_pro(Y)
    assert list(S.strict.dims) == [1, 1, 1, 2]


def test_nilpotent_pro_example():
    Nil = M(F2, [[0, 1], [0, 0]])
    Y = ProWindow(F2, [2, 2, 2, 0], [Nil, Nil, Mat.zeros(F2, 2, 0)])
    S = strictify_pro(Y)
    assert list(S.strict.dims) == [0, 0, 0, 0]
    assert all(len(_intersection_oracle(Y, j)) == 1 for j in range(4))


def test_strictify_ind_examples():
    X = chain()
    S = strictify_ind(X)
    assert S.strict == X and set(S.steps) == {0}
    Nil = M(F2, [[0, 1], [0, 0]])
    S = strictify_ind(IndWindow(F2, [2, 2, 2], [Nil, Nil]))
    # images of Nil^2 = 0 and Nil in the top object
    assert list(S.strict.dims) == [0, 1, 2]
    S = strictify_ind(IndWindow(F2, [2, 1], [M(F2, [[1, 1]])]))
    assert list(S.strict.dims) == [1, 1] and S.strict.is_strict()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
def test_strictify_pro_random(seed, p):
    rng = np.random.default_rng(seed)
    F = GF(p)
    Y = random_pro_window(F, 4, 3, rng)
    S = strictify_pro(Y)
    assert S.strict.is_strict()
    for j in range(Y.N + 1):
        assert S.steps[j] <= Y.dim(j)
        assert span_set(S.fwd.components[j].array, p, Y.dim(j)) == _intersection_oracle(Y, j)
    assert roof_equiv(roof_compose(S.fwd, S.bwd), ProRoof.identity(Y))
    assert roof_equiv(roof_compose(S.bwd, S.fwd), ProRoof.identity(S.strict))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_strictify_ind_random(seed):
    rng = np.random.default_rng(seed)
    X = random_ind_window(F3, 4, 3, rng)
    S = strictify_ind(X)
    assert S.strict.is_strict()
    assert roof_equiv(roof_compose(S.bwd, S.fwd), SRoof.identity(X))
    assert roof_equiv(roof_compose(S.fwd, S.bwd), SRoof.identity(S.strict))


def test_structure_morphism_requires_id_below():
    with pytest.raises(PreconditionError):
        structure_morphism(chain(), CofinalMap((0, 0, 0)))
    f = structure_morphism(chain(), CofinalMap.shift(1))
    g = straight_compose(StraightMorphism.identity(f.target), f)
    assert g == f
