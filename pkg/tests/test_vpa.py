import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compalg.algebras import ALGEBRA_NAMES, CompositionAlgebra, build_named, check_composition, derivation_algebra
from compalg.vpa import (
    DegenerateComplement,
    InvalidVPA,
    LMap,
    VectorProductAlgebra,
    adjoin_unit,
    clifford_check,
    imaginary_part,
    verify_vpa,
    vpa_derivations,
)

F0, F1 = Fraction(0), Fraction(1)


def classical_cross():
    t = np.empty((3, 3, 3), dtype=object)
    t.fill(F0)
    for (i, j, k), s in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}.items():
        t[i, j, k] = Fraction(s)
        t[j, i, k] = Fraction(-s)
    dot = np.empty((3, 3), dtype=object)
    dot.fill(F0)
    for i in range(3):
        dot[i, i] = F1
    return VectorProductAlgebra("cross3", t, dot)


@pytest.fixture(params=ALGEBRA_NAMES)
def vpa(request):
    return imaginary_part(build_named(request.param))


def test_dimensions_are_hurwitz_numbers(vpa):
    assert vpa.dim in (0, 1, 3, 7)


def test_imaginary_parts_verify(vpa):
    report = verify_vpa(vpa)
    assert report.passed, report.witnesses


def test_clifford_relation(vpa):
    report = clifford_check(vpa)
    assert report.passed, report.witnesses


def test_round_trip_from_vpa(vpa):
    back = imaginary_part(adjoin_unit(vpa))
    assert (back.cross_table == vpa.cross_table).all()
    assert (back.dot == vpa.dot).all()


def test_round_trip_from_algebra():
    for name in ALGEBRA_NAMES:
        A = build_named(name)
        B = adjoin_unit(imaginary_part(A))
        assert (B.mul_table == A.mul_table).all()
        assert (B.form == A.form).all()


def test_imaginary_part_of_reals_is_empty():
    V = imaginary_part(build_named("reals"))
    assert V.dim == 0
    assert check_composition(adjoin_unit(V)).passed
    assert adjoin_unit(V).dim == 1


def test_quaternion_imaginary_is_cross_product_up_to_orientation():
    V = imaginary_part(build_named("quaternions"))
    assert V.dim == 3
    # our doubling convention produces the opposite orientation of the
    # textbook cross product: b_i x b_j = -eps_{ijk} b_k
    eps = {(0, 1, 2): -1, (1, 2, 0): -1, (2, 0, 1): -1}
    for (i, j, k), s in eps.items():
        got = V.cross_coords(
            [F1 if t == i else F0 for t in range(3)],
            [F1 if t == j else F0 for t in range(3)],
        )
        assert got == tuple(Fraction(s) if t == k else F0 for t in range(3))
    # swapping two basis vectors restores the classical table
    perm = [1, 0, 2]
    t = np.empty((3, 3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                t[i, j, k] = V.cross_table[perm[i], perm[j], perm[k]]
    dot = np.empty((3, 3), dtype=object)
    for i in range(3):
        for j in range(3):
            dot[i, j] = V.dot[perm[i], perm[j]]
    W = VectorProductAlgebra("flipped", t, dot)
    C = classical_cross()
    assert (W.cross_table == C.cross_table).all()
    assert (W.dot == C.dot).all()


def test_classical_cross_product_passes():
    C = classical_cross()
    assert verify_vpa(C).passed
    assert clifford_check(C).passed
    Q = adjoin_unit(C)
    assert check_composition(Q).passed


def test_sign_flip_negative_control():
    # flipping one structure constant (and its antisymmetric partner, so the
    # failure is in the product identity, not mere antisymmetry) must fail
    C = classical_cross()
    t = np.array(C.cross_table, dtype=object)
    t[0, 1, 2] = -t[0, 1, 2]
    t[1, 0, 2] = -t[1, 0, 2]
    bad = VectorProductAlgebra("bad3", t, C.dot)
    report = verify_vpa(bad)
    assert not report.passed
    tag = report.witnesses[0][0]
    assert tag[0] in ("vpa-identity", "form-associativity")
    with pytest.raises(InvalidVPA):
        adjoin_unit(bad)


def test_perturbed_dim7_fails_clifford():
    V = imaginary_part(build_named("octonions"))
    t = np.array(V.cross_table, dtype=object)
    t[0, 1, :] = -t[0, 1, :]
    t[1, 0, :] = -t[1, 0, :]
    bad = VectorProductAlgebra("bad7", t, V.dot)
    assert not clifford_check(bad).passed
    assert not verify_vpa(bad).passed


def test_l_map_squares():
    rng = random.Random(7)
    for name in ALGEBRA_NAMES:
        V = imaginary_part(build_named(name))
        d = V.dim
        eye = np.array([[F1 if i == j else F0 for j in range(d + 1)] for i in range(d + 1)], dtype=object)
        for _ in range(50):
            u = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(d)]
            L = LMap(V, u).matrix
            norm = V.dot_coords(u, u)
            sq = np.tensordot(L, L, axes=([1], [0]))
            assert (sq == -norm * eye).all()


def test_derivations_match_parent_algebra():
    for name in ALGEBRA_NAMES:
        A = build_named(name)
        V = imaginary_part(A)
        assert len(vpa_derivations(V)) == len(derivation_algebra(A))


def test_degenerate_complement_raises():
    # defensive branch: a fake dim-2 "algebra" whose form vanishes off the unit
    t = np.empty((2, 2, 2), dtype=object)
    t.fill(F0)
    t[0, 0, 0] = t[0, 1, 1] = t[1, 0, 1] = F1
    form = np.array([[F1, F0], [F0, F0]], dtype=object)
    fake = CompositionAlgebra("fake", t, form)
    with pytest.raises(DegenerateComplement):
        imaginary_part(fake)


def test_json_round_trip():
    V = imaginary_part(build_named("split_octonions"))
    W = VectorProductAlgebra.from_json(V.to_json())
    assert W == V


coords7 = st.lists(st.integers(-3, 3), min_size=7, max_size=7)


@settings(max_examples=20, deadline=None)
@given(coords7, coords7, coords7)
def test_vpa_identity_on_random_vectors(xs, ys, zs):
    V = imaginary_part(build_named("octonions"))
    x, y, z = [tuple(map(Fraction, v)) for v in (xs, ys, zs)]
    lhs = tuple(
        a + b
        for a, b in zip(V.cross_coords(V.cross_coords(x, y), z), V.cross_coords(V.cross_coords(z, y), x))
    )
    gxz, gxy, gzy = V.dot_coords(x, z), V.dot_coords(x, y), V.dot_coords(z, y)
    rhs = tuple(2 * gxz * yi - gxy * zi - gzy * xi for yi, zi, xi in zip(y, z, x))
    assert lhs == rhs
