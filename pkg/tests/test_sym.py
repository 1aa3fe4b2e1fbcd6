from fractions import Fraction

import numpy as np
import pytest

from compalg.algebras import ALGEBRA_NAMES, CompositionAlgebra, build_named
from compalg.sym import (
    HyperbolicSpace,
    NotSpecial,
    System,
    build_system,
    extract_triality,
    verify_special,
    verify_system,
)
from compalg.triality import spin_rep, triality_from_algebra, verify_triality

F0 = Fraction(0)
F1 = Fraction(1)


@pytest.fixture(params=ALGEBRA_NAMES, scope="module")
def algebra(request):
    return build_named(request.param)


@pytest.fixture(scope="module")
def system(algebra):
    return build_system(algebra)


def corrupted_octonions():
    O = build_named("octonions")
    table = np.array(O.mul_table, dtype=object).copy()
    table[1, 2, 3] = -table[1, 2, 3] + 1
    return CompositionAlgebra("bad-oct", table, O.form)


# ------------------------------------------------------------ construction


def test_hyperbolic_plane_form():
    H = HyperbolicSpace()
    assert H.labels == ("alpha", "beta")
    f = H.form
    assert f[0, 0] == 0 and f[1, 1] == 0
    assert f[0, 1] == Fraction(1, 2) and f[1, 0] == Fraction(1, 2)


def test_system_dimensions(algebra, system):
    sys = system
    assert sys.vdim == algebra.dim + 2
    assert sys.sdim == 2 * algebra.dim
    assert len(sys.rho) == sys.vdim
    assert sys.gamma.shape == (sys.sdim, sys.sdim, sys.vdim)


def test_expected_v_dimensions():
    dims = {"reals": 3, "complexes": 4, "quaternions": 6, "octonions": 10}
    for name, dv in dims.items():
        assert build_system(build_named(name)).vdim == dv


def test_idempotent_decomposition():
    # the two hyperbolic generators anticommute to the identity on K^4
    sys = build_system(build_named("quaternions"))
    alpha, beta = sys.rho[sys.kdim], sys.rho[sys.kdim + 1]
    both = np.dot(alpha, beta) + np.dot(beta, alpha)
    n = 4 * sys.kdim
    for r in range(n):
        for c in range(n):
            assert both[r, c] == (F1 if r == c else F0)
    # and each one individually squares to zero
    assert (np.dot(alpha, alpha) == F0).all()
    assert (np.dot(beta, beta) == F0).all()


def test_system_validation():
    sys = build_system(build_named("complexes"))
    with pytest.raises(ValueError):
        System(sys.name, sys.kdim, sys.form[:3, :3], sys.rho, sys.pairing,
               sys.gamma)
    with pytest.raises(ValueError):
        System(sys.name, sys.kdim, sys.form, sys.rho[:-1], sys.pairing,
               sys.gamma)
    degenerate = np.array(sys.pairing, dtype=object).copy()
    degenerate[:, 0] = F0
    with pytest.raises(ValueError):
        System(sys.name, sys.kdim, sys.form, sys.rho, degenerate, sys.gamma)


def test_gamma_closed_form():
    # K part conj(u'y + u y'), H coefficients -2<u,u'> and 2<y,y'>
    A = build_named("quaternions")
    sys = build_system(A)
    d = A.dim
    rng_pairs = [(0, 1), (1, 2), (3, 3), (2, 0)]
    for i, j in rng_pairs:
        u = tuple(F1 if k == i else F0 for k in range(d))
        y = tuple(F1 if k == j else F0 for k in range(d))
        # s = (u, 0), t = (0, y) picks out the cross terms
        a, b = i, d + j
        k_part = tuple(sys.gamma[a, b, m] for m in range(d))
        expect = A.conj_coords(A.mul_coords(u, y))
        assert k_part == tuple(expect)
        assert sys.gamma[a, b, d] == 0  # alpha coefficient of a cross pair
        assert sys.gamma[a, b, d + 1] == 0
    # diagonal u-u pair: only the alpha coefficient survives
    assert sys.gamma[1, 1, d] == -2 * A.form[1, 1]
    assert sys.gamma[1, 1, d + 1] == 0


# -------------------------------------------------------------- the checks


def test_verify_system_all_algebras(system):
    report = verify_system(system)
    assert report.clifford_ok, report.witnesses
    assert report.symmetry_ok
    assert report.eq_ok
    assert report.special_ok is None
    assert report.passed


def test_verify_special_all_algebras(system):
    report = verify_special(system)
    assert report.special_ok, report.witnesses
    assert report.passed
    assert report.witnesses == []


def test_zeroed_alpha_breaks_clifford():
    sys = build_system(build_named("quaternions"))
    rho = list(sys.rho)
    rho[sys.kdim] = np.full(rho[sys.kdim].shape, F0, dtype=object)
    broken = System(sys.name, sys.kdim, sys.form, rho, sys.pairing, sys.gamma)
    report = verify_system(broken)
    assert not report.clifford_ok
    assert any(w[0] == "clifford" for w in report.witnesses)


def test_tampered_gamma_breaks_symmetry_and_eq():
    sys = build_system(build_named("complexes"))
    gamma = np.array(sys.gamma, dtype=object).copy()
    gamma[0, 1, 0] += 1
    tampered = System(sys.name, sys.kdim, sys.form, sys.rho, sys.pairing, gamma)
    report = verify_system(tampered)
    assert not report.symmetry_ok
    assert not report.eq_ok
    assert report.clifford_ok  # rho itself is untouched


def test_corrupted_product_fails_pol_with_quadruple():
    report = verify_special(build_system(corrupted_octonions()))
    assert report.special_ok is False
    quadruples = [w for w in report.witnesses if w[0] == "special"]
    assert quadruples, report.witnesses
    assert len(quadruples[0]) == 5


# --------------------------------------------------------------- extraction


def test_extraction_matches_algebra_triality(algebra, system):
    got = extract_triality(system)
    ref = triality_from_algebra(algebra)
    assert np.array_equal(got.tensor, ref.tensor)
    for f_got, f_ref in zip(got.forms, ref.forms):
        assert np.array_equal(f_got, f_ref)
    assert verify_triality(got).passed


def test_extraction_of_reals_is_one_dimensional():
    T = extract_triality(build_system(build_named("reals")))
    assert T.dims == (1, 1, 1)
    assert T.tensor[0, 0, 0] == 1


def test_extraction_refuses_corrupted_system():
    with pytest.raises(NotSpecial):
        extract_triality(build_system(corrupted_octonions()))


def test_rho_restriction_agrees_with_spin_rep(algebra, system):
    # the (u, v) corner of the system action is the double-sided
    # multiplication action on K + K, block for block
    rho = spin_rep(algebra)
    d = algebra.dim
    for i in range(d):
        assert np.array_equal(system.rho[i][:2 * d, :2 * d], rho.matrices[i])
