from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler.characters import parse_character, quadratic_character, trivial_character
from qeuler.errors import InvalidRequest
from qeuler.zeta import (
    ZetaRequest,
    _gamma_integral,
    interpolation_check,
    l_multiple,
    mellin_check,
    tail_bound,
    zeta_multiple,
    zeta_partial,
)

import numpy as np


def req(s=2, x=1, q=0.5, w=(1,), a=(1,), chi=None, tol=1e-10):
    return ZetaRequest(s, x, q, len(w), w, a, chi, tol)


def test_geometric_example():
    v = zeta_multiple(req(s=0))
    assert abs(v.value - 2 / 3) <= v.abs_error <= 1e-10


def test_request_validation():
    with pytest.raises(InvalidRequest):
        req(a=(0,))
    with pytest.raises(InvalidRequest):
        req(x=0)
    with pytest.raises(InvalidRequest):
        req(q=1.0)
    with pytest.raises(InvalidRequest):
        req(w=(1, 2), a=(1,))
    with pytest.raises(InvalidRequest):
        l_multiple(req())


def test_tail_bound_self_consistency():
    r = req(s=2, w=(1, 2), a=(1, 1))
    for M in (4, 10, 20):
        v0, tb = zeta_partial(r, M)
        v4, _ = zeta_partial(r, M + 4)
        assert abs(v0 - v4) <= tb.bound
        assert tb.truncation_radius == M
    full = zeta_multiple(r)
    v2, _ = zeta_partial(r, 42)
    assert abs(full.value - v2) <= full.abs_error


@settings(max_examples=30, deadline=None)
@given(st.complex_numbers(min_magnitude=0, max_magnitude=4, allow_nan=False, allow_infinity=False),
       st.sampled_from([((1,), (1,)), ((1, 2), (1, 1)), ((2, 1), (1, 2))]),
       st.sampled_from([0.5, 1 / 3, 0.7]), st.integers(0, 15))
def test_tail_bound_soundness_property(s, wa, q, M):
    w, a = wa
    r = req(s=s, w=w, a=a, q=q)
    v0, tb = zeta_partial(r, M)
    v4, _ = zeta_partial(r, M + 4)
    assert abs(v0 - v4) <= tb.bound * (1 + 1e-12) + 1e-13


def test_conjugate_symmetry():
    for s in (2 + 1j, 0.5 - 3j, -1 + 0.5j):
        a = zeta_multiple(req(s=s, w=(1, 2), a=(1, 1)))
        b = zeta_multiple(req(s=s.conjugate(), w=(1, 2), a=(1, 1)))
        assert abs(a.value - b.value.conjugate()) <= 1e-12


def test_trivial_character_bitwise():
    for s in (0, 2, 1.5 + 2j):
        a = zeta_multiple(req(s=s, w=(1, 2), a=(2, 1)))
        b = l_multiple(req(s=s, w=(1, 2), a=(2, 1), chi=trivial_character()))
        assert a == b


def test_lacunary_example():
    q = F(1, 2)
    # one period: chi(1)(-q) + chi(2)(q^2) = -q - q^2, repeating with ratio -q^3
    want = (-q - q * q) / (1 + q ** 3)
    v = l_multiple(req(s=0, chi=quadratic_character(3)))
    assert abs(v.value - float(want)) <= v.abs_error


def test_interpolation_examples():
    rep = interpolation_check(0, req(s=0, q=F(1, 2)))
    assert rep.R == F(4, 3)
    assert abs(rep.L.value - 2 / 3) <= 1e-10
    assert abs(rep.residual_stated - 2) <= 1e-9
    assert rep.passed
    rep = interpolation_check(1, req(q=F(1, 2)), tol=1e-10)
    assert rep.passed


def test_interpolation_chi():
    for n in range(4):
        rep = interpolation_check(n, req(q=F(1, 3), w=(1, 2), a=(1, 2), chi=quadratic_character(3)))
        assert rep.passed, rep


def test_interpolation_needs_integers():
    with pytest.raises(InvalidRequest):
        interpolation_check(1, req(x=1.5))


def test_mellin_examples():
    for s in (2, 1):
        rep = mellin_check(s, req(s=s))
        assert rep.passed and rep.difference <= 1e-6
    rep = mellin_check(1.5 + 0.5j, req(w=(1, 2), a=(1, 1)))
    assert rep.passed
    with pytest.raises(InvalidRequest):
        mellin_check(0.25, req())


def test_single_term_gamma_integral():
    for s in (0.5, 1.0, 2.5, 1 + 1j):
        val, err = _gamma_integral(np.array([1.0]), np.array([1.0]), complex(s))
        assert abs(val - 1) <= 1e-9


def test_complex_character_l_value():
    chi = parse_character("5:0,1,w4^1,w4^3,-1")
    v = l_multiple(req(s=1, a=(2,), chi=chi))
    # the lacunary geometric sum with period 5: terms chi(m) (-1)^m q^(2m) / [1+m]
    total = 0
    for m in range(200):
        c = [0, 1, 1j, -1j, -1][m % 5]
        total += c * (-1) ** m * 0.25 ** m / ((1 - 0.5 ** (1 + m)) / 0.5)
    assert abs(v.value - total) <= v.abs_error + 1e-14
