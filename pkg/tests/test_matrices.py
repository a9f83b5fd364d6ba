import random
from fractions import Fraction

import pytest

from fibcalc.errors import RankMismatchError
from fibcalc.laurent import LaurentPoly
from fibcalc.matrices import (IntMatrix, block_diag, char_poly, in_row_span,
                              laurent_det, smith_diagonal, smith_normal_form,
                              solve_int)


def fraction_det(m: IntMatrix) -> Fraction:
    """Independent determinant oracle: Gaussian elimination over Q."""
    n = m.rows
    a = [[Fraction(x) for x in row] for row in m.entries]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def test_det_against_oracle():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(0, 6)
        m = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(n)]
                                 for _ in range(n)]) if n else IntMatrix.identity(0)
        assert m.det() == int(fraction_det(m))


def test_char_poly_examples():
    assert char_poly(IntMatrix.identity(2)) == LaurentPoly.from_dict({0: 1, 1: -2, 2: 1})
    a = IntMatrix.from_rows([[0, 1], [-1, 1]])
    assert char_poly(a) == LaurentPoly.from_dict({0: 1, 1: -1, 2: 1})
    assert char_poly(IntMatrix.identity(0)) == LaurentPoly.one()


def test_char_poly_block_multiplicativity():
    rng = random.Random(5)
    for _ in range(20):
        na, nb = rng.randint(1, 3), rng.randint(1, 3)
        a = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(na)] for _ in range(na)])
        b = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(nb)] for _ in range(nb)])
        assert char_poly(block_diag(a, b)) == char_poly(a) * char_poly(b)


def test_char_poly_matches_pointwise_oracle():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(1, 5)
        a = IntMatrix.from_rows([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
        p = char_poly(a)
        for t0 in range(-3, 4):
            shifted = IntMatrix.from_rows(
                [[(t0 if i == j else 0) - a.entries[i][j] for j in range(n)]
                 for i in range(n)])
            assert p.evaluate(t0) == int(fraction_det(shifted))


def test_char_poly_requires_square():
    with pytest.raises(RankMismatchError):
        char_poly(IntMatrix.zeros(2, 3))


def test_laurent_det_small():
    t = LaurentPoly.t()
    one = LaurentPoly.one()
    grid = [[t, one], [one, t]]
    assert laurent_det(grid) == t * t - one
    assert laurent_det([]) == one


def check_snf_contract(a: IntMatrix):
    d, u, v = smith_normal_form(a)
    assert u.mul(a).mul(v) == d
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d.entries[i][j] == 0
    diag = [d.entries[i][i] for i in range(min(a.rows, a.cols))]
    nonzero = [x for x in diag if x != 0]
    assert all(x > 0 for x in nonzero)
    assert diag == nonzero + [0] * (len(diag) - len(nonzero))
    for i in range(len(nonzero) - 1):
        assert nonzero[i + 1] % nonzero[i] == 0
    if a.rows:
        assert abs(fraction_det(u)) == 1
    if a.cols:
        assert abs(fraction_det(v)) == 1


def test_snf_examples():
    d, u, v = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert [d.entries[0][0], d.entries[1][1]] == [1, 6]
    z = IntMatrix.zeros(2, 3)
    d, u, v = smith_normal_form(z)
    assert d == z and u == IntMatrix.identity(2) and v == IntMatrix.identity(3)
    d, _, _ = smith_normal_form(IntMatrix.identity(3))
    assert d == IntMatrix.identity(3)


def test_snf_contract_random_5x5():
    rng = random.Random(97)
    for _ in range(120):
        a = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)])
        check_snf_contract(a)


def test_snf_contract_rectangular():
    rng = random.Random(41)
    for _ in range(60):
        r, c = rng.randint(0, 5), rng.randint(0, 5)
        a = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(c)]
                                 for _ in range(r)]) if r else IntMatrix.zeros(0, c)
        check_snf_contract(a)


def test_smith_diagonal():
    assert smith_diagonal(IntMatrix.from_rows([[2, 0], [0, 3]])) == [1, 6]


def test_solve_int_and_row_span():
    a = IntMatrix.from_rows([[2, 0], [0, 4]])
    assert solve_int(a, (4, 8)) == (2, 2)
    assert solve_int(a, (1, 0)) is None
    basis = IntMatrix.from_rows([[1, 1, 0], [0, 2, 2]])
    assert in_row_span(basis, (1, 3, 2))
    assert not in_row_span(basis, (0, 1, 1))


def test_inverse_unimodular():
    m = IntMatrix.from_rows([[1, 2], [1, 3]])
    assert m.mul(m.inverse_unimodular()) == IntMatrix.identity(2)
    with pytest.raises(Exception):
        IntMatrix.from_rows([[2, 0], [0, 2]]).inverse_unimodular()


def test_power_negative():
    m = IntMatrix.from_rows([[1, 1], [0, 1]])
    assert m.power(-2) == IntMatrix.from_rows([[1, -2], [0, 1]])
