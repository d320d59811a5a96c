"""Regenerate the sample documents in fixtures/."""

from pathlib import Path

import numpy as np

from indpro import (GF, CofinalMap, IndWindow, Mat, ProWindow, SesTriple, SRoof, URoof,
                    dump, fattened_corner, laurent_window, rectangle_module, shift_lattice,
                    uroof_compose)
from indpro.harness import gen_random_ses, gen_three_squares, random_ind_window
from indpro.windows import random_roof

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    F2, F3 = GF(2), GF(3)

    L = laurent_window(2, -2, 2)
    dump(L, OUT / "laurent_p2_m2_2.json")
    dump(fattened_corner(L), OUT / "laurent_fattened.json")
    # a rectangle whose rows stop short of the top: the epi leaving it is not onto
    dump(rectangle_module(F2, 0, 3, (0, 1), (2, 2)), OUT / "rectangle_not_admissible.json")

    P = Mat.from_array(F2, [[1, 0], [0, 0]])
    Nil = Mat.from_array(F2, [[0, 1], [0, 0]])
    e1 = Mat.from_array(F2, [[1], [0]])
    dump(ProWindow(F2, [2, 2, 2, 1], [P, P, e1]), OUT / "pro_idempotent.json")
    dump(ProWindow(F2, [2, 2, 2, 0], [Nil, Nil, Mat.zeros(F2, 2, 0)]), OUT / "pro_nilpotent.json")
    dump(IndWindow(F2, [1, 2, 3], [Mat.from_array(F2, [[1], [0]]),
                                   Mat.from_array(F2, [[1, 0], [0, 1], [0, 0]])]),
         OUT / "ind_chain.json")

    rng = np.random.default_rng(7)
    X = random_ind_window(F3, 3, 3, rng)
    Y = random_ind_window(F3, 3, 3, rng)
    r = random_roof(X, Y, CofinalMap((0, 1, 1, 3)), rng)
    dump(r, OUT / "roof_a.json")
    # the same morphism pushed one step further along the target
    psi = CofinalMap((1, 2, 2, 4))
    pushed = SRoof(X, Y, psi, [Y.transition(r.phi(i), psi(i)) @ r.component(i)
                               for i in range(4)])
    dump(pushed, OUT / "roof_a_pushed.json")
    dump(SRoof(X, Y, r.phi, [f.scale(2) for f in r.components]), OUT / "roof_a_doubled.json")

    L3 = laurent_window(3, -2, 2)
    dump(URoof.identity(L3), OUT / "uroof_identity.json")
    there = shift_lattice(L3, 1)
    back = shift_lattice(there.target, -1)
    dump(uroof_compose(back, there), OUT / "uroof_shift_roundtrip.json")
    dump(URoof(L3, L3, URoof.identity(L3).phi,
               {c: f.scale(2) for c, f in URoof.identity(L3).components.items()}),
         OUT / "uroof_negated.json")

    dump(gen_random_ses(11, 4, 3), OUT / "ses_random.json")
    I2 = Mat.identity(F2, 2)
    dump(SesTriple(I2, I2), OUT / "ses_not_exact.json")
    dump(gen_three_squares(5, 3, 2), OUT / "three_squares.json")


if __name__ == "__main__":
    main()
