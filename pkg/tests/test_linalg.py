import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from indpro.errors import DimensionError, FieldMismatchError
from indpro.linalg import (GF, Mat, SesTriple, Square, Subspace, cokernel, cokernel_with_section,
                           image, intersect, is_cartesian, is_cocartesian, is_exact_at, is_ses,
                           kernel, pullback, pushout, random_invertible, random_mat, rank, solve)

from oracles import image_set, kernel_set, rank_by_enumeration, span_set, vectors

F2, F3 = GF(2), GF(3)


def M(F, rows):
    return Mat.from_array(F, rows)


def mats(p, max_dim=3):
    @st.composite
    def build(draw):
        r = draw(st.integers(0, max_dim))
        c = draw(st.integers(0, max_dim))
        e = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
        return Mat(GF(p), r, c, e)
    return build()


# -- worked examples --------------------------------------------------------

def test_compose_gf2_by_hand():
    assert M(F2, [[1, 1], [0, 1]]) @ M(F2, [[1, 0], [1, 1]]) == M(F2, [[0, 1], [1, 1]])


def test_kernel_of_row_vector():
    K = kernel(M(F2, [[1, 1]]))
    assert K.dim == 1
    assert span_set(K.basis.array, 2, 2) == kernel_set([[1, 1]], 2, 2) == {(0, 0), (1, 1)}


def test_cokernel_kills_first_basis_vector():
    q = cokernel(M(F3, [[1], [0]]))
    assert q.shape == (1, 2)
    assert kernel_set(q.array, 3, 2) == {(0, 0), (1, 0), (2, 0)}
    assert q.is_surjective()


def test_intersection_of_coordinate_planes():
    e = np.eye(3, dtype=np.int64)
    a = Subspace.span(M(F2, e[:, [0, 1]]))
    b = Subspace.span(M(F2, e[:, [1, 2]]))
    w = intersect(a, b)
    assert w.dim == 1 and w.contains(M(F2, [[0], [1], [0]]))


def test_exact_pair():
    assert is_exact_at(M(F2, [[1], [1]]), M(F2, [[1, 1]]))


def test_ses_examples():
    I2 = Mat.identity(F2, 2)
    assert is_ses(SesTriple(M(F3, [[1], [0]]), M(F3, [[0, 1]])))
    assert not is_ses(SesTriple(I2, I2))


def test_pullback_apex_dim_three():
    f = M(F2, [[1, 0]])
    pb = pullback(f, f)
    assert pb.apex_dim == 3
    # kernel of [f, -g] enumerated directly
    assert len(kernel_set([[1, 0, 1, 0]], 2, 4)) == 2 ** 3
    assert f @ pb.to_b == f @ pb.to_d


def test_pushout_identity_and_from_zero():
    I = Mat.identity(F3, 2)
    assert pushout(I, I).apex_dim == 2
    z1, z2 = Mat.zeros(F3, 2, 0), Mat.zeros(F3, 3, 0)
    assert pushout(z1, z2).apex_dim == 5


def test_pushout_two_surjections_against_dual_enumeration():
    f, g = M(F3, [[1, 0]]), M(F3, [[1, 1]])
    po = pushout(f, g)
    # the pushout is dual to the pullback of the transposes
    dual_kernel = kernel_set(np.hstack([f.T.array, -g.T.array]) % 3, 3, 2)
    assert 3 ** po.apex_dim == len(dual_kernel)
    assert po.from_b @ f == po.from_d @ g


def test_split_extension_square_is_cartesian():
    # a = F, b = F^2, d = 0, c = F: the mono F -> F^2 along the top,
    # the epi F^2 -> F down the right
    top = M(F2, [[1], [0]])
    left = Mat.zeros(F2, 0, 1)
    right = M(F2, [[0, 1]])
    bottom = Mat.zeros(F2, 1, 0)
    sq = Square(top, left, right, bottom)
    assert sq.commutes()
    assert pullback(right, bottom).apex_dim == 1
    assert is_cartesian(sq) and is_cocartesian(sq)


def test_errors():
    with pytest.raises(DimensionError):
        Mat.identity(F2, 2) @ Mat.identity(F2, 3)
    with pytest.raises(FieldMismatchError):
        Mat.identity(F2, 2) @ Mat.identity(F3, 2)


# -- oracle-backed properties ----------------------------------------------

@settings(max_examples=60, deadline=None)
@given(mats(3))
def test_rank_kernel_image_match_enumeration(f):
    r, c = f.shape
    assert rank(f) == rank_by_enumeration(f.array, 3, r, c)
    assert {tuple(v) for v in kernel_set(f.array, 3, c)} == span_set(kernel(f).basis.array, 3, c)
    assert image_set(f.array, 3, r, c) == span_set(image(f).basis.array, 3, r)


@settings(max_examples=60, deadline=None)
@given(mats(2))
def test_cokernel_section(f):
    q, s = cokernel_with_section(f)
    assert (q @ f).is_zero()
    assert q @ s == Mat.identity(F2, q.rows)
    assert q.rows == f.rows - rank(f)


@settings(max_examples=60, deadline=None)
@given(mats(3), st.integers(0, 2**32 - 1))
def test_solve_finds_a_solution_exactly_when_one_exists(a, seed):
    rng = np.random.default_rng(seed)
    b = random_mat(F3, a.rows, 1, rng)
    x = solve(a, b)
    reachable = tuple(b.array[:, 0]) in image_set(a.array, 3, *a.shape)
    assert (x is not None) == reachable
    if x is not None:
        assert a @ x == b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
def test_intersection_matches_enumeration(seed, p):
    rng = np.random.default_rng(seed)
    F = GF(p)
    n = 3
    a = random_mat(F, n, int(rng.integers(0, 3)), rng)
    b = random_mat(F, n, int(rng.integers(0, 3)), rng)
    w = intersect(Subspace.span(a), Subspace.span(b))
    assert span_set(w.basis.array, p, n) == span_set(a.array, p, n) & span_set(b.array, p, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_invertible_is_invertible(seed):
    rng = np.random.default_rng(seed)
    g = random_invertible(F3, 3, rng)
    assert g @ g.inverse() == Mat.identity(F3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_cartesian_checker_against_enumeration(seed):
    """A square is cartesian iff a -> b x_c d is an isomorphism, counted by brute force."""
    rng = np.random.default_rng(seed)
    F = F2
    da, db, dd, dc = (int(x) for x in rng.integers(0, 3, size=4))
    right, bottom = random_mat(F, dc, db, rng), random_mat(F, dc, dd, rng)
    top, left = random_mat(F, db, da, rng), random_mat(F, dd, da, rng)
    sq = Square(top, left, right, bottom)
    if not sq.commutes():
        return
    fibre = [(u, v) for u in vectors(2, db) for v in vectors(2, dd)
             if np.array_equal((right.array @ u) % 2, (bottom.array @ v) % 2)]
    hits = {}
    for x in vectors(2, da):
        key = (tuple((top.array @ x) % 2), tuple((left.array @ x) % 2))
        hits[key] = hits.get(key, 0) + 1
    bijective = len(hits) == len(fibre) == 2 ** da
    assert is_cartesian(sq) == bijective
