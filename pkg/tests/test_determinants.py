import random
from fractions import Fraction

import pytest

import casorati.determinants as det_mod
from casorati.determinants import (
    DeterminantBudgetError,
    casoratian_imag,
    casoratian_real,
    casoratian_real_grid,
    cofactor_det,
    fraction_free_det,
    wronskian,
    wronskian_over_base,
)
from casorati.gridfn import GridFn, WindowError, sample_poly_exact
from casorati.poly import ExpPoly, Poly
from casorati.sampling import random_poly

x = Poly.x()


def rng_polys(seed, count, deg=2, bound=9):
    rng = random.Random(seed)
    return [random_poly(rng, deg, bound, nonzero=True) for _ in range(count)]


def test_fraction_free_examples():
    assert fraction_free_det([[Poly.one()]]) == Poly.one()
    assert fraction_free_det([[x, Poly.one()], [Poly.one(), Poly.zero()]]) == Poly.constant(-1)
    assert fraction_free_det([]) == Poly.one()


def test_fraction_free_matches_cofactor_oracle():
    rng = random.Random(4)
    for trial in range(12):
        n = rng.randint(1, 5)
        matrix = [[random_poly(rng, 2, 9) for _ in range(n)] for _ in range(n)]
        assert fraction_free_det(matrix) == cofactor_det(matrix), f"trial {trial}"


def test_fraction_free_zero_pivots():
    matrix = [[Poly.zero(), x], [x + 1, Poly.one()]]
    assert fraction_free_det(matrix) == cofactor_det(matrix)
    singular = [[Poly.zero(), Poly.zero()], [x, x]]
    assert fraction_free_det(singular).is_zero()


def test_budget_guard():
    old = det_mod.COEFF_BIT_BUDGET
    det_mod.COEFF_BIT_BUDGET = 8
    try:
        big = Poly.constant(Fraction(10 ** 9))
        matrix = [[big * x, big], [big, big * x]]
        with pytest.raises(DeterminantBudgetError):
            fraction_free_det(matrix)
    finally:
        det_mod.COEFF_BIT_BUDGET = old


def test_wronskian_examples():
    assert wronskian([]) == ExpPoly.one()
    assert wronskian([ExpPoly(Poly.one()), ExpPoly(x)]).p == Poly.one()
    assert wronskian([ExpPoly(x), ExpPoly(x * x)]).p == x * x
    w = wronskian([ExpPoly(Poly.one(), a=1), ExpPoly(Poly.one(), a=-1)])
    assert w.p == -2 * x and w.pair == (Fraction(0), Fraction(0))


def test_casoratian_imag_examples():
    assert casoratian_imag([], 1) == Poly.one()
    assert casoratian_imag([Poly.one(), x], 1) == Poly.one()
    assert casoratian_imag([x, x * x], 2) == 2 * x * x + Poly.constant(2)
    f = 3 * x * x + 1
    assert casoratian_imag([f], 1) == f
    with pytest.raises(ValueError):
        casoratian_imag([x], 0)


def test_casoratian_real_examples():
    assert casoratian_real([]) == Poly.one()
    assert casoratian_real([Poly.one(), x]) == Poly.one()
    assert casoratian_real([x, x * x]) == x * (x + 1)
    f = x ** 3 - 2
    assert casoratian_real([f]) == f


@pytest.mark.parametrize("family", ["wronskian", "imag", "real"])
def test_antisymmetry(family):
    rng = random.Random(11)
    for _ in range(8):
        fs = [random_poly(rng, 3, 9, nonzero=True) for _ in range(3)]
        if family == "wronskian":
            base = wronskian([ExpPoly(f) for f in fs]).p
            swapped = wronskian([ExpPoly(fs[1]), ExpPoly(fs[0]), ExpPoly(fs[2])]).p
        elif family == "imag":
            base = casoratian_imag(fs, Fraction(1, 2))
            swapped = casoratian_imag([fs[1], fs[0], fs[2]], Fraction(1, 2))
        else:
            base = casoratian_real(fs)
            swapped = casoratian_real([fs[1], fs[0], fs[2]])
        assert swapped == -base


def test_linearity_in_slot():
    rng = random.Random(13)
    alpha, beta = Fraction(3, 2), Fraction(-2, 5)
    for _ in range(6):
        fs = [random_poly(rng, 3, 9, nonzero=True) for _ in range(2)]
        f, g = random_poly(rng, 3, 9), random_poly(rng, 3, 9)
        combo = alpha * f + beta * g
        for fam in (lambda hs: wronskian([ExpPoly(h) for h in hs]).p,
                    lambda hs: casoratian_imag(hs, Fraction(1)),
                    casoratian_real):
            lhs = fam([fs[0], combo, fs[1]])
            rhs = alpha * fam([fs[0], f, fs[1]]) + beta * fam([fs[0], g, fs[1]])
            assert lhs == rhs


def test_reality_of_imag_casoratian():
    rng = random.Random(17)
    for _ in range(10):
        n = rng.randint(1, 4)
        fs = [random_poly(rng, 4, 9) for _ in range(n)]
        out = casoratian_imag(fs, Fraction(1, 2))
        assert out.is_real()


def test_grid_matches_polynomial_backend():
    rng = random.Random(19)
    fs = [random_poly(rng, 3, 5, nonzero=True) for _ in range(3)]
    exact = casoratian_real(fs)
    grids = [sample_poly_exact(f, 10) for f in fs]
    grid_out = casoratian_real_grid(grids)
    assert grid_out.x_max == 10 - 2
    for pt in range(grid_out.x_max + 1):
        assert grid_out(pt) == exact(pt).re


def test_grid_window_underflow():
    grids = [GridFn([Fraction(1)]), GridFn([Fraction(2)])]
    with pytest.raises(WindowError, match="x_max >= 1"):
        casoratian_real_grid(grids)


def test_wronskian_over_base_matches_direct_ratio():
    """W[n1/b, n2/b] computed generically equals the collapsed form."""
    rng = random.Random(23)
    base = ExpPoly(random_poly(rng, 2, 5, nonzero=True), a=1)
    nums = [ExpPoly(random_poly(rng, 3, 5, nonzero=True), a=-1) for _ in range(2)]
    det, power = wronskian_over_base(nums, base)
    # oracle: 2x2 quotient-rule determinant cleared over base^3
    n1, n2 = nums
    direct = (n1 * (n2.derivative() * base - n2 * base.derivative())
              - n2 * (n1.derivative() * base - n1 * base.derivative()))
    assert power == 3
    assert det == direct
