from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler._shells import compositions, shell_tail_bound, shells_needed
from qeuler.characters import quadratic_character
from qeuler.errors import SeriesNotConvergent
from qeuler.families import FamilySpec, closed_form, euler_q_hr_series, series_partial, series_value
from qeuler.qcore import QContext

CHI3 = quadratic_character(3)


def exact(spec, n, x, q):
    return float(closed_form(spec, n, x, QContext.exact(q)).value)


def test_compositions():
    c = compositions(3, 4)
    assert len(c) == 15
    assert (c.sum(axis=1) == 4).all()
    assert len({tuple(row) for row in c}) == 15


def test_tail_bound_against_direct_sum():
    from math import comb
    for r, rho, M in [(1, 0.5, 3), (2, 0.9, 10), (3, 0.3, 0)]:
        direct = sum(comb(k + r - 1, r - 1) * rho ** k for k in range(M + 1, 5000))
        assert direct <= shell_tail_bound(r, rho, M) <= direct * (1 + 1e-4)
    assert shell_tail_bound(2, 0.5, shells_needed(2, 0.5, 1e-12)) <= 1e-12


def test_plain_abel_n0():
    ev = series_value(FamilySpec.plain(), 0, 0, QContext.float(0.5), 1e-8)
    assert ev.method == "series_abel"
    assert abs(ev.value.value - 1) <= ev.error_bound <= 1e-8


def test_direct_twisted_example():
    spec = FamilySpec.barnes_twisted((1,), (1,))
    ev = series_value(spec, 1, 1, QContext.float(0.5), 1e-10)
    assert ev.method == "series_direct"
    assert abs(ev.value.value - exact(spec, 1, 1, F(1, 2))) <= 1e-10


def test_order_r_abel_example():
    spec = FamilySpec.order_r(2)
    ev = series_value(spec, 1, 0, QContext.float(0.5), 1e-6)
    err = abs(ev.value.value - exact(spec, 1, 0, F(1, 2)))
    assert err <= ev.error_bound <= 1e-6


def test_chi_order_abel_example():
    spec = FamilySpec.chi_order_r(CHI3, 2)
    ev = series_value(spec, 0, 0, QContext.float(0.5), 1e-6)
    assert abs(ev.value.value - 4) <= ev.error_bound <= 1e-6


def test_chi_twisted_direct_example():
    spec = FamilySpec.chi_barnes_twisted(CHI3, (1,), (1,))
    ev = series_value(spec, 0, 0, QContext.float(0.5), 1e-10)
    assert abs(ev.value.value - exact(spec, 0, 0, F(1, 2))) <= 1e-10


def test_hr_qbinomial_series():
    ev = euler_q_hr_series(1, 0, QContext.float(0.5), 3, 2, 1e-10)
    assert abs(ev.value.value - exact(FamilySpec.extended_hr(3, 2), 1, 0, F(1, 2))) <= 1e-10
    with pytest.raises(SeriesNotConvergent):
        euler_q_hr_series(1, 0, QContext.float(0.5), 2, 2)


def test_hr_direct_multiseries():
    spec = FamilySpec.extended_hr(4, 2)  # twists 3 and 2
    ev = series_value(spec, 2, 1, QContext.float(1 / 3), 1e-10)
    assert ev.method == "series_direct"
    assert abs(ev.value.value - exact(spec, 2, 1, F(1, 3))) <= 1e-10


def test_negative_twist_rejected():
    with pytest.raises(SeriesNotConvergent):
        series_value(FamilySpec.extended_hr(0, 2), 1, 0, QContext.float(0.5), 1e-6)
    with pytest.raises(SeriesNotConvergent):
        series_value(FamilySpec.plain(), 1, 0, QContext.float(1.5), 1e-6)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([((1,), (1,)), ((1, 2), (1, 1)), ((2, 1), (3, 1)), ((1, 1, 1), (1, 2, 2))]),
       st.integers(0, 4), st.integers(0, 2), st.sampled_from([0.5, 1 / 3, 0.6]), st.integers(0, 12))
def test_partial_sum_bound_is_sound(wa, n, x, q, M):
    w, a = wa
    spec = FamilySpec.barnes_twisted(w, a)
    val, tail, rounding = series_partial(spec, n, x, QContext.float(q), M)
    truth = exact(spec, n, x, F(q))
    assert abs(val - truth) <= tail + rounding + 1e-15 * abs(truth)
