import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler.characters import quadratic_character
from qeuler.errors import NoConvergence, NonUnitDivision
from qeuler.families import FamilySpec, closed_form
from qeuler.padic import (
    PAdicContext,
    QPAdic,
    family_integral,
    fermionic_integral,
    fermionic_integral_level,
    iterated_integral,
    moment,
    pointwise,
    polynomial_integrand,
    q_bracket_residues,
    shift_identity_residual,
)
from qeuler.qcore import QContext

ONE = QPAdic(1)


def closed(spec, n, x, q):
    return closed_form(spec, n, x, QContext.exact(F(q))).value


def test_context_validation():
    with pytest.raises(ValueError):
        PAdicContext(2, 3)
    with pytest.raises(ValueError):
        PAdicContext(9, 3)
    with pytest.raises(ValueError):
        PAdicContext(5, 0)
    with pytest.raises(ValueError):
        QPAdic(2).check(PAdicContext(3, 4))


def test_residue_arithmetic():
    ctx = PAdicContext(3, 6)
    half = ctx.number(F(-1, 2))
    assert half.residue == 364
    assert half * 2 == -1
    assert (ctx.number(5) / 7) * 7 == 5
    assert ctx.number(9).known_valuation == 2
    with pytest.raises(NonUnitDivision):
        ctx.number(5) / 3
    with pytest.raises(NonUnitDivision):
        ctx.number(F(1, 3))


def test_constant_integrand_is_one():
    ctx = PAdicContext(5, 4)
    for q in (1, 6, 11):
        for N in (1, 2, 3):
            assert fermionic_integral_level(polynomial_integrand([1], ctx), QPAdic(q), N, ctx) == 1
    assert fermionic_integral(polynomial_integrand([7], ctx), QPAdic(6), ctx) == 7


def test_identity_levels():
    ctx = PAdicContext(3, 6)
    f = polynomial_integrand([0, 1], ctx)
    assert [fermionic_integral_level(f, ONE, N, ctx).residue for N in (1, 2, 3)] == [1, 4, 13]
    assert fermionic_integral(f, ONE, ctx).residue == 364


def test_pointwise_matches_vectorized():
    ctx = PAdicContext(5, 3)
    vec = polynomial_integrand([1, F(1, 2), 3], ctx)
    pw = pointwise(lambda x: 1 + F(x, 2) + 3 * x * x, ctx)
    assert fermionic_integral_level(vec, ONE, 3, ctx) == fermionic_integral_level(pw, ONE, 3, ctx)


def test_q_bracket_residues():
    ctx = PAdicContext(3, 5)
    q = QPAdic(4)
    ys = np.arange(-4, 12)
    got = q_bracket_residues(ys, q, ctx)
    for y, g in zip(ys.tolist(), got.tolist()):
        assert ctx.number((1 - F(4) ** y) / (1 - F(4))).residue == g


def test_bracket_moment_examples():
    ctx = PAdicContext(3, 6)
    assert moment(0, 2, QPAdic(4), ctx) == 1
    assert moment(1, 0, QPAdic(4), ctx) == ctx.number(F(-1, 5))
    c5 = PAdicContext(5, 4)
    assert moment(2, 1, QPAdic(6), c5) == c5.number(closed(FamilySpec.plain(), 2, 1, 6))


def test_shift_identity_examples():
    ctx = PAdicContext(3, 6)
    assert shift_identity_residual(polynomial_integrand([1], ctx), 1, ctx).is_zero()
    assert shift_identity_residual(polynomial_integrand([0, 1], ctx), 1, ctx).is_zero()
    c5 = PAdicContext(5, 5)
    assert shift_identity_residual(polynomial_integrand([0, 0, 1], c5), 2, c5).is_zero()


def test_no_convergence_for_non_lipschitz_input():
    ctx = PAdicContext(3, 4)
    # an integrand that depends on the level itself never settles
    f = lambda xs: np.full(len(xs), len(xs).bit_length(), dtype=np.int64)
    with pytest.raises(NoConvergence):
        fermionic_integral(f, ONE, ctx, n_max=7)


def test_iterated_against_brute_force_double_sum():
    ctx = PAdicContext(3, 3)
    q = QPAdic(4)
    mod = ctx.modulus
    for n in range(4):
        for N in (3, 4):
            ys = np.arange(3 ** N)
            y1, y2 = np.meshgrid(ys, ys, indexing="ij")
            vals = q_bracket_residues((1 + y1 + 2 * y2).ravel(), q, ctx)
            vals = np.array([pow(int(v), n, mod) for v in vals.tolist()])
            sign = np.where(((y1 + y2) % 2).ravel() == 1, -1, 1)
            level = int((vals * sign).sum()) % mod
            if N == 4:
                assert level == iterated_integral(n, 1, q, ctx, (1, 2)).residue


@pytest.mark.parametrize("p,M", [(3, 5), (5, 3), (7, 3)])
def test_families_match_closed_forms(p, M):
    ctx = PAdicContext(p, M)
    specs = [FamilySpec.plain(), FamilySpec.order_r(3), FamilySpec.barnes((2, 3)),
             FamilySpec.barnes_twisted((1, 2), (2, 0)), FamilySpec.extended_hr(1, 2),
             FamilySpec.chi(quadratic_character(5)), FamilySpec.chi_order_r(quadratic_character(3), 2)]
    for q in (1 + p, 1 + 2 * p, F(1 + p * p, 1 + p)):
        for spec in specs:
            for n in range(5):
                for x in (0, 2, -1):
                    got = family_integral(spec, n, x, QPAdic(q), ctx)
                    assert got == ctx.number(closed(spec, n, x, q)), (spec, n, x, q)


def test_complex_character_rejected():
    from qeuler.characters import parse_character
    ctx = PAdicContext(5, 3)
    with pytest.raises(ValueError):
        family_integral(FamilySpec.chi(parse_character("5:0,1,w4^1,w4^3,-1")), 1, 0, QPAdic(6), ctx)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 4),
       st.lists(st.tuples(st.integers(-9, 9), st.sampled_from([1, 2, 4])), min_size=1, max_size=5),
       st.integers(1, 3))
def test_shift_identity_property(p, M, coeffs, n):
    ctx = PAdicContext(p, M)
    coeffs = [F(a, b) for a, b in coeffs]
    assert shift_identity_residual(polynomial_integrand(coeffs, ctx), n, ctx).is_zero()


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(3, 5), (5, 4), (7, 3)]), st.integers(0, 6), st.integers(0, 2), st.integers(1, 2))
def test_moment_property(pm, n, x, k):
    p, M = pm
    ctx = PAdicContext(p, M)
    q = 1 + k * p
    assert moment(n, x, QPAdic(q), ctx) == ctx.number(closed(FamilySpec.plain(), n, x, q))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 6), st.integers(1, 3))
def test_stabilizes_within_two_levels(p, deg, k):
    M = 3
    ctx = PAdicContext(p, M)
    f = polynomial_integrand([F(j + 1, 2) for j in range(deg + 1)], ctx)
    q = QPAdic(1 + k * p)
    # starting at level M, agreement must come by M + 2
    fermionic_integral(f, q, ctx, n_max=M + 2)
