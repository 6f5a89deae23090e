import random

import pytest

from parnum import poly
from parnum.errors import NotSquareError
from parnum.intmat import (
    IntegerMatrix,
    char_poly,
    inverse_unimodular,
    smith_normal_form,
)


def _char_poly_2x2_oracle(m):
    """det(xI - M) for 2x2 by hand: x^2 - (a+d)x + (ad - bc)."""
    (a, b), (c, d) = m.entries
    return (a * d - b * c, -(a + d), 1)


def test_char_poly_examples():
    companion = IntegerMatrix([[0, 1], [1, 1]])
    assert char_poly(companion) == (-1, -1, 1)
    assert char_poly(IntegerMatrix.identity(2)) == (1, -2, 1)
    m = IntegerMatrix([[0, -2], [-2, -2]])
    assert char_poly(m) == (-4, 2, 1)
    assert char_poly(m) == _char_poly_2x2_oracle(m)


def test_char_poly_matches_det():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = IntegerMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        cp = char_poly(m)
        assert cp[-1] == 1 and len(cp) == n + 1
        assert poly.evaluate(cp, 0) == (-1) ** n * m.det()


def test_char_poly_not_square():
    with pytest.raises(NotSquareError):
        char_poly(IntegerMatrix([[1, 2]]))


def test_snf_examples():
    ident = IntegerMatrix.identity(3)
    snf = smith_normal_form(ident)
    assert snf.U == ident and snf.V == ident and snf.D == ident

    diag = IntegerMatrix([[2, 0], [0, 4]])
    assert smith_normal_form(diag).diagonal() == (2, 4)

    m = IntegerMatrix([[0, -2], [-2, -2]])
    snf = smith_normal_form(m)
    assert snf.diagonal() == (2, 2)
    assert snf.U * m * snf.V == snf.D


def test_snf_random_properties():
    rng = random.Random(99)
    for _ in range(60):
        n = rng.randint(1, 4)
        m = IntegerMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        snf = smith_normal_form(m)
        assert snf.U * m * snf.V == snf.D
        assert abs(snf.U.det()) == 1
        assert abs(snf.V.det()) == 1
        diag = snf.diagonal()
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            if a == 0:
                assert b == 0
            else:
                assert b % a == 0
        prod = 1
        for d in diag:
            prod *= d
        assert prod == abs(m.det())


def test_snf_deterministic():
    m = IntegerMatrix([[6, 4, 1], [4, 2, 0], [3, 0, 9]])
    a = smith_normal_form(m)
    b = smith_normal_form(m)
    assert a.U == b.U and a.V == b.V and a.D == b.D


def test_inverse_unimodular():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = smith_normal_form(
            IntegerMatrix([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        ).U
        inv = inverse_unimodular(m)
        assert m * inv == IntegerMatrix.identity(n)


def test_matrix_ops():
    a = IntegerMatrix([[1, 2], [3, 4]])
    b = IntegerMatrix([[0, 1], [1, 0]])
    assert a * b == IntegerMatrix([[2, 1], [4, 3]])
    assert a.apply((1, 1)) == (3, 7)
    assert (a - a) == IntegerMatrix.zeros(2, 2)
    assert a.transpose().entries == ((1, 3), (2, 4))
