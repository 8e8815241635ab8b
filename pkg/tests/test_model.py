import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sixvertex import numeric as nm
from sixvertex.errors import InvalidInputError, SingularParameterError
from sixvertex.model import (SAFE_MARGIN, SpectralParams, a_eig, d_eig, f_fun, g_fun, phi, random_params,
                             ratio_gf, vertex_weights)

from _util import rel

finite = st.floats(-1.5, 1.5)
cplx = st.builds(complex, finite, finite)


def test_weights_free_fermion_point():
    w = vertex_weights(0.3, 0.3, 1j * math.pi / 4)
    assert abs(w.a - 1j / math.sqrt(2)) < 1e-15
    assert abs(w.b + 1j / math.sqrt(2)) < 1e-15
    assert abs(w.c - 1j) < 1e-15


def test_weights_ice_point_moduli():
    w = vertex_weights(1j * math.pi / 2, 0, 1j * math.pi / 6)
    for x in w:
        assert abs(abs(x) - math.sqrt(3) / 2) < 1e-15


def test_weights_zero_eta():
    w = vertex_weights(0.4 + 0.1j, -0.2, 0)
    assert w.c == 0
    assert w.a == w.b


def test_phi_free_fermion_point():
    assert abs(phi(0.1, 0.1, 1j * math.pi / 4) - 2j) < 1e-15


def test_phi_zero_eta():
    assert phi(0.5, 0.1, 0) == 0


def test_phi_pole_raises():
    with pytest.raises(SingularParameterError):
        phi(0.5, 0.0, 0.5)


@settings(max_examples=50, deadline=None)
@given(cplx, cplx, cplx)
def test_phi_times_ab_is_c(lam, nu, eta):
    w = vertex_weights(lam, nu, eta)
    if min(abs(w.a), abs(w.b)) < 1e-3:
        return
    p = phi(lam, nu, eta)
    assert abs(p * w.a * w.b - w.c) <= 1e-12 * max(1.0, abs(w.c))
    assert rel(p, w.c / (w.a * w.b)) < 1e-12


def test_ratio_gf_at_coincidence():
    assert abs(ratio_gf(0.3 + 0.2j, 0.3 + 0.2j, 0.4) - 1) < 1e-15


@settings(max_examples=50, deadline=None)
@given(cplx, cplx, cplx)
def test_ratio_gf_is_g_over_f(lp, l, eta):
    if abs(cmath.sinh(l - lp)) < 1e-3 or abs(cmath.sinh(l - lp + 2 * eta)) < 1e-3:
        return
    assert rel(ratio_gf(lp, l, eta), g_fun(lp, l, eta) / f_fun(lp, l, eta)) < 1e-11


def test_f_g_at_zero_eta():
    assert abs(f_fun(0.1, 0.7, 0) - 1) < 1e-15
    assert g_fun(0.1, 0.7, 0) == 0


def test_f_zero_when_shift_is_minus_two_eta():
    eta = 0.2 + 0.1j
    assert abs(f_fun(0.5 + 2 * eta, 0.5, eta)) < 1e-15


def test_f_g_coincident_raise():
    for fn in (f_fun, g_fun):
        with pytest.raises(SingularParameterError):
            fn(0.4, 0.4, 0.3)


def test_eigenvalues_single_site():
    p = SpectralParams([0.2], [0.2], 0.35)
    assert abs(a_eig(0.2, p) - math.sinh(0.35)) < 1e-15
    assert abs(d_eig(0.2, p) + math.sinh(0.35)) < 1e-15


def test_eigenvalue_empty_subset():
    p = SpectralParams([0.2], [0.1], 0.35)
    assert a_eig(0.7, p, range(1, 1)) == 1


def test_eigenvalue_is_product_of_weights():
    p = random_params(5, seed=11)
    lam = 0.3 - 0.2j
    want = np.prod([vertex_weights(lam, nu, p.eta).a for nu in p.nus])
    assert rel(a_eig(lam, p), want) < 1e-12
    want = np.prod([vertex_weights(lam, nu, p.eta).b for nu in p.nus])
    assert rel(d_eig(lam, p), want) < 1e-12


def test_free_fermion_condition_homogeneous_weights():
    # after multiplying by -i: a = sin(x + pi/4), b = sin(x - pi/4), c = 1
    for x in np.linspace(-1.5, 1.5, 13):
        w = vertex_weights(1j * x, 0, 1j * math.pi / 4)
        a, b, c = (-1j * v for v in w)
        assert abs(a * a + b * b - c * c) < 1e-12
        # with nu = -pi/4 the weights are cos and sin
        w = vertex_weights(1j * x, -1j * math.pi / 4, 1j * math.pi / 4)
        a, b, c = (-1j * v for v in w)
        assert abs(a - math.cos(x)) < 1e-12 and abs(b - math.sin(x)) < 1e-12
        assert abs(abs(a) ** 2 + abs(b) ** 2 - abs(c) ** 2) < 1e-12


def test_spectral_params_validation():
    with pytest.raises(InvalidInputError):
        SpectralParams([0.1, 0.2], [0.3], 0.5)
    with pytest.raises(InvalidInputError):
        SpectralParams([], [], 0.5)


def test_require_distinct_detects_shift_by_i_pi():
    p = SpectralParams([0.1, 0.1 + 1j * math.pi], [0.3, 0.4], 0.5)
    with pytest.raises(SingularParameterError):
        p.require_distinct()


def test_without_and_reversed():
    p = SpectralParams([1, 2, 3], [4, 5, 6], 0.5)
    q = p.without(row=1, col=0)
    assert q.lambdas == (1, 3) and q.nus == (5, 6)
    r = p.reversed()
    assert r.lambdas == (3, 2, 1) and r.nus == (6, 5, 4)


def test_scalars_follow_working_precision():
    p = SpectralParams([0.1], [0.2], 0.3)
    assert isinstance(p.scalars()[2], complex)
    with nm.precision(120):
        assert p.scalars()[0][0].context.prec == 120


def test_random_params_reproducible_and_clear_of_poles():
    p, q = random_params(4, seed=3), random_params(4, seed=3)
    assert p == q
    for lam in p.lambdas:
        for nu in p.nus:
            w = vertex_weights(lam, nu, p.eta)
            assert abs(w.a) > SAFE_MARGIN and abs(w.b) > SAFE_MARGIN
    for xs in (p.lambdas, p.nus):
        for i in range(4):
            for j in range(i + 1, 4):
                assert abs(cmath.sinh(xs[i] - xs[j])) > SAFE_MARGIN


def test_random_params_fixed_eta():
    assert random_params(3, seed=1, eta=0.3).eta == 0.3
