import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuler.characters import (
    RootOfUnity,
    character_from_table,
    evaluate,
    is_squarefree,
    jacobi_symbol,
    parse_character,
    quadratic_character,
    trivial_character,
)
from qeuler.errors import EvenConductor, NonRealValueInExactMode, NotMultiplicative, NotSquarefree, WrongSupport
from qeuler.qcore import EXACT, FLOAT


def test_table_examples():
    triv = character_from_table(1, [1])
    assert all(evaluate(triv, m, EXACT) == 1 for m in range(-5, 5))
    chi3 = character_from_table(3, [0, 1, -1])
    assert chi3.table() == [0, 1, -1]
    principal = character_from_table(3, [0, 1, 1])
    assert principal.is_principal
    with pytest.raises(WrongSupport):
        character_from_table(3, [1, 1, 1])


def test_validation_errors():
    with pytest.raises(EvenConductor):
        character_from_table(4, [0, 1, 0, -1])
    with pytest.raises(NotMultiplicative):
        character_from_table(5, [0, 1, 1, -1, 1])
    with pytest.raises(WrongSupport):
        character_from_table(9, [0, 1, 1, 0, 1, 1, 1, 1, 1])
    with pytest.raises(ValueError):
        character_from_table(3, [0, 1])


def test_quadratic_examples():
    assert quadratic_character(3).table() == [0, 1, -1]
    assert quadratic_character(5).table() == [0, 1, -1, -1, 1]
    assert evaluate(quadratic_character(15), 2, EXACT) == 1
    with pytest.raises(NotSquarefree):
        quadratic_character(9)
    with pytest.raises(EvenConductor):
        quadratic_character(6)


def test_jacobi_against_euler_criterion():
    for p in (3, 5, 7, 11, 13):
        for a in range(p):
            legendre = pow(a, (p - 1) // 2, p)
            legendre = -1 if legendre == p - 1 else legendre
            assert jacobi_symbol(a, p) == legendre


def test_evaluate():
    assert evaluate(trivial_character(), 17, EXACT) == 1
    assert evaluate(quadratic_character(3), 5, EXACT) == -1
    chi = character_from_table(5, [0, 1, RootOfUnity(4, 1), RootOfUnity(4, 3), -1])
    v = evaluate(chi, 2, FLOAT)
    assert v.contains(1j)
    assert abs(v.value - 1j) <= 4 * 2.0 ** -52
    with pytest.raises(NonRealValueInExactMode):
        evaluate(chi, 2, EXACT)


odd_squarefree = [f for f in range(3, 46, 2) if is_squarefree(f)]


@pytest.mark.parametrize("f", odd_squarefree)
def test_quadratic_passes_validation(f):
    chi = quadratic_character(f)
    again = character_from_table(f, chi.table())
    assert again.table() == chi.table()
    if not chi.is_principal:
        assert sum(chi.table()) == 0


@given(st.sampled_from(odd_squarefree), st.integers(-200, 200))
def test_periodicity(f, m):
    chi = quadratic_character(f)
    assert evaluate(chi, m + f, EXACT) == evaluate(chi, m, EXACT)


def test_float_orthogonality_complex():
    chi = character_from_table(5, [0, 1, RootOfUnity(4, 1), RootOfUnity(4, 3), -1])
    total = sum(evaluate(chi, a, FLOAT).value for a in range(5))
    assert abs(total) <= 1e-12


def test_parse():
    assert parse_character("quad:5").table() == [0, 1, -1, -1, 1]
    assert parse_character("3:0,1,-1").table() == [0, 1, -1]
    chi = parse_character("5:0,1,w4^1,w4^3,-1")
    assert not chi.is_real
    with pytest.raises(ValueError):
        parse_character("nonsense")
