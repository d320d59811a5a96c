import itertools

import numpy as np
import pytest

from indpro.beilinson import (URoof, direct_sum, dualize, is_admissible, is_kato, uroof_compose,
                              uroof_equiv)
from indpro.errors import PreconditionError, WindowError
from indpro.linalg import GF, Mat
from indpro.tate import (LaurentSpec, fattened_corner, laurent_window, point_module,
                         random_kato_window, random_pi_window, reversal, shift_lattice)


def monomials(i, j):
    """Exponents of the ordered basis t^-j, ..., t^-(i+1) of the (i, j) cell."""
    return [-k for k in range(j, i, -1)]


def test_basic_shapes():
    assert laurent_window(2, 0, 0).dims == {(0, 0): 0}
    L = laurent_window(LaurentSpec(2, -2, 2))
    assert L.dim(-2, 2) == 4
    for i, j, k in itertools.combinations_with_replacement(range(-2, 3), 3):
        assert L.dim(i, j) + L.dim(j, k) == L.dim(i, k)
    with pytest.raises(ValueError):
        LaurentSpec(2, 1, 0)
    with pytest.raises(ValueError):
        LaurentSpec(4, 0, 1)


def test_structure_maps_on_monomials():
    """The mono adds t^-(j+1) at the deep end, the epi forgets t^-(i+1)."""
    L = laurent_window(3, -2, 3)
    for (i, j) in L.cells():
        basis = monomials(i, j)
        if j < L.hi:
            target = monomials(i, j + 1)
            m = L.mono(i, j).array
            for c, e in enumerate(basis):
                assert list(m[:, c]) == [int(t == e) for t in target]
        if i < j:
            target = monomials(i + 1, j)
            e_ = L.epi(i, j).array
            for c, e in enumerate(basis):
                assert list(e_[:, c]) == [int(t == e) for t in target]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_laurent_windows_are_kato(p):
    for span in range(1, 9):
        L = laurent_window(p, -(span // 2), span - span // 2)
        assert is_admissible(L)[0] and is_kato(L)


def test_laurent_is_a_sum_of_point_modules():
    F = GF(2)
    S = direct_sum(*[point_module(F, -2, 2, k) for k in range(-1, 3)])
    assert S.dims == laurent_window(2, -2, 2).dims


def test_dual_of_laurent_under_reversal():
    for span in range(0, 9):
        lo, hi = -(span // 2), span - span // 2
        D, Y = dualize(laurent_window(3, lo, hi)), laurent_window(3, -hi, -lo)
        F = D.field
        assert (D.lo, D.hi) == (Y.lo, Y.hi) and D.dims == Y.dims
        for (i, j), m in D.monos.items():
            assert reversal(F, Y.dims[(i, j + 1)]) @ m @ reversal(F, D.dims[(i, j)]) == Y.monos[(i, j)]
        for (i, j), e in D.epis.items():
            assert reversal(F, Y.dims[(i + 1, j)]) @ e @ reversal(F, D.dims[(i, j)]) == Y.epis[(i, j)]


def test_reversal_is_an_involution():
    R = reversal(GF(5), 4)
    assert R @ R == Mat.identity(GF(5), 4)


def test_shift_lattice():
    L = laurent_window(2, -2, 2)
    assert uroof_equiv(shift_lattice(L, 0), URoof.identity(L))
    there = shift_lattice(L, 1)
    assert (there.target.lo, there.target.hi) == (-1, 3)
    for (i, j) in L.cells():
        f = there.component(i, j)
        assert f.shape == (there.target.dim(i + 1, j + 1), L.dim(i, j)) and f.is_iso()
    back = shift_lattice(there.target, -1)
    assert uroof_equiv(uroof_compose(back, there), URoof.identity(L))
    with pytest.raises(WindowError):
        shift_lattice(L, 1, target_hi=2)
    with pytest.raises(PreconditionError):
        shift_lattice(fattened_corner(L), 1)


def test_random_generators_are_deterministic_and_kato():
    for seed in range(20):
        X = random_kato_window(3, -1, 3, 5, seed)
        assert X == random_kato_window(3, -1, 3, 5, seed)
        assert is_admissible(X)[0] and is_kato(X) and is_kato(dualize(X))
        assert random_pi_window(2, 0, 3, 3, seed) == random_pi_window(2, 0, 3, 3, seed)
    rng = np.random.default_rng(0)
    assert is_kato(random_kato_window(2, 0, 0, 3, rng))
