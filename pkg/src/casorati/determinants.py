"""The three determinant families: Wronskian, imaginary-shift and real-shift
Casoratians, over exact polynomial entries (plus a grid backend for the
real-shift family).

The workhorse is fraction-free (Bareiss) elimination with exact division and
sign-tracked row interchanges for zero pivots; ``cofactor_det`` is the
independent expansion kept as the cross-check oracle.  Empty input returns 1
for all three families.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .gridfn import GridFn, WindowError
from .poly import ExpPoly, Poly, as_poly
from .scalars import GaussianRational, i_power, rational

# Abort knob for runaway exact computations; see DeterminantBudgetError.
COEFF_BIT_BUDGET = 10 ** 6


class DeterminantBudgetError(RuntimeError):
    """A single determinant exceeded the coefficient bit-size budget."""


class LinearDependenceError(ValueError):
    """Seed functions were linearly dependent (identically zero determinant)."""


def _check_budget(p: Poly) -> None:
    if p.max_coeff_bits() > COEFF_BIT_BUDGET:
        raise DeterminantBudgetError(
            f"coefficient size exceeded {COEFF_BIT_BUDGET} bits")


def fraction_free_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant of a square Poly matrix by Bareiss elimination.

    Division by the previous pivot is exact (Sylvester identity); zero pivots
    are cured by row interchange, and an unsalvageable pivot column means the
    determinant is zero.
    """
    n = len(matrix)
    if n == 0:
        return Poly.one()
    rows = [[as_poly(e) for e in row] for row in matrix]
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    if n == 1:
        return rows[0][0]
    sign = 1
    prev = Poly.one()
    for k in range(n - 1):
        if rows[k][k].is_zero():
            for r in range(k + 1, n):
                if not rows[r][k].is_zero():
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Poly.zero()
        pivot = rows[k][k]
        for i in range(k + 1, n):
            row_i = rows[i]
            row_k = rows[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - lead * row_k[j]
                row_i[j] = num.exact_div(prev)
                _check_budget(row_i[j])
            row_i[k] = Poly.zero()
        prev = pivot
    result = rows[n - 1][n - 1]
    return result if sign > 0 else -result


def cofactor_det(matrix: Sequence[Sequence], zero=None, one=None):
    """Determinant by first-row cofactor expansion (generic ring elements).

    Exponential in n; kept as the independent oracle and as the evaluator for
    entries without exact division (e.g. ExpRatio).
    """
    n = len(matrix)
    if n == 0:
        return Poly.one() if one is None else one
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")

    def minor_det(rows: tuple[int, ...], cols: tuple[int, ...]):
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        total = None
        r = rows[0]
        rest = rows[1:]
        for idx, c in enumerate(cols):
            entry = matrix[r][c]
            sub_cols = cols[:idx] + cols[idx + 1:]
            term = entry * minor_det(rest, sub_cols)
            if idx % 2 == 1:
                term = -term
            total = term if total is None else total + term
        return total

    return minor_det(tuple(range(n)), tuple(range(n)))


def det_exact_scalar(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Fraction-free determinant for exact scalar entries."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = [list(map(Fraction, row)) for row in matrix]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            lead = rows[i][k]
            for j in range(k + 1, n):
                rows[i][j] = (pivot * rows[i][j] - lead * rows[k][j]) / prev
            rows[i][k] = Fraction(0)
        prev = pivot
    return sign * rows[n - 1][n - 1]


def det_float_scalar(matrix) -> object:
    """LU determinant with partial pivoting for big-float entries."""
    n = len(matrix)
    if n == 0:
        return 1
    rows = [list(row) for row in matrix]
    det = None
    sign = 1
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda r: abs(rows[r][k]))
        if rows[pivot_row][k] == 0:
            return rows[0][0] * 0
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        det = pivot if det is None else det * pivot
        for i in range(k + 1, n):
            factor = rows[i][k] / pivot
            for j in range(k + 1, n):
                rows[i][j] = rows[i][j] - factor * rows[k][j]
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# Wronskian
# ---------------------------------------------------------------------------

def wronskian(fs: Sequence[ExpPoly]) -> ExpPoly:
    """W[f_1, ..., f_n]: determinant of successive derivatives; W[.] = 1.

    Each column's exponential prefactor factors out of the determinant by
    multilinearity, leaving the fraction-free determinant of polynomial
    parts under the drift derivative p -> p' + (a*x + b/2)*p.
    """
    fs = [f if isinstance(f, ExpPoly) else ExpPoly(f) for f in fs]
    n = len(fs)
    if n == 0:
        return ExpPoly.one()
    a_total = sum((f.a for f in fs), rational(0))
    b_total = sum((f.b for f in fs), rational(0))
    columns = []
    for f in fs:
        col = [f.p]
        drift = Poly([f.b / 2, f.a])
        for _ in range(n - 1):
            col.append(col[-1].derivative() + drift * col[-1])
        columns.append(col)
    matrix = [[columns[k][j] for k in range(n)] for j in range(n)]
    return ExpPoly(fraction_free_det(matrix), a_total, b_total)


def wronskian_poly(fs: Sequence[Poly]) -> Poly:
    """Plain polynomial Wronskian (the gamma -> 0 target of the limit check)."""
    return wronskian([ExpPoly(f) for f in fs]).p


def wronskian_over_base(nums: Sequence[ExpPoly], base: ExpPoly,
                        power: int = 1) -> tuple[ExpPoly, int]:
    """Wronskian of m quotients num_j / base^power sharing one base.

    d/dx (n / base^k) = (n' base - k n base') / base^{k+1} stays in the
    class, so row j carries the uniform power ``power + j`` and the whole
    determinant collapses onto (numerator, K) with
    K = m*power + m(m-1)/2; the numerator is a cofactor determinant of
    ExpPoly entries (additions combine same-row-set terms, so exponent
    pairs always match).
    """
    m = len(nums)
    if m == 0:
        return ExpPoly.one(), 0
    if base.is_zero():
        raise ZeroDivisionError("wronskian_over_base with zero base")
    base_d = base.derivative()
    rows = [list(nums)]
    k = power
    for _ in range(m - 1):
        rows.append([n.derivative() * base - k * (n * base_d) for n in rows[-1]])
        k += 1
    det = cofactor_det(rows)
    big_k = m * power + (m * (m - 1)) // 2
    return det, big_k


# ---------------------------------------------------------------------------
# Imaginary-shift Casoratian
# ---------------------------------------------------------------------------

def imag_shift_points(n: int, gamma: Fraction) -> list[GaussianRational]:
    """The n shifted arguments x_j = x + i*((n+1)/2 - j)*gamma, j = 1..n."""
    g = rational(gamma)
    return [GaussianRational(0, (Fraction(n + 1, 2) - j) * g) for j in range(1, n + 1)]


def casoratian_imag(fs: Sequence[Poly], gamma) -> Poly:
    """W_gamma[f_1, ..., f_n]: i^{n(n-1)/2} det f_k(x + i((n+1)/2 - j) gamma)."""
    g = rational(gamma)
    if g == 0:
        raise ValueError("casoratian_imag needs nonzero gamma")
    fs = [as_poly(f) for f in fs]
    n = len(fs)
    if n == 0:
        return Poly.one()
    deltas = imag_shift_points(n, g)
    matrix = [[fs[k].shift(deltas[j]) for k in range(n)] for j in range(n)]
    det = fraction_free_det(matrix)
    return det * i_power((n * (n - 1)) // 2)


def casoratian_imag_at(fs: Sequence[Poly], gamma, delta: GaussianRational) -> Poly:
    """W_gamma[fs](x + delta) as a polynomial in x."""
    return casoratian_imag(fs, gamma).shift(delta)


# ---------------------------------------------------------------------------
# Real-shift Casoratian
# ---------------------------------------------------------------------------

def casoratian_real(fs: Sequence[Poly]) -> Poly:
    """W_C[f_1, ..., f_n]: det f_k(x + j - 1); W_C[.] = 1."""
    fs = [as_poly(f) for f in fs]
    n = len(fs)
    if n == 0:
        return Poly.one()
    matrix = [[fs[k].shift(j) for k in range(n)] for j in range(n)]
    return fraction_free_det(matrix)


def casoratian_real_grid(fs: Sequence[GridFn]) -> GridFn:
    """Grid-backend W_C: result lives on the window shrunk by n - 1."""
    n = len(fs)
    if n == 0:
        raise ValueError("casoratian_real_grid needs at least one function; "
                         "use the n = 0 convention (constant 1) upstream")
    x_max = min(f.x_max for f in fs)
    out_max = x_max - (n - 1)
    if out_max < 0:
        raise WindowError(
            f"window too small for a {n}-function Casoratian: need x_max >= {n - 1}")
    exact = all(isinstance(f(0), Fraction) for f in fs)
    det = det_exact_scalar if exact else det_float_scalar
    values = []
    for x in range(out_max + 1):
        matrix = [[fs[k](x + j) for k in range(n)] for j in range(n)]
        values.append(det(matrix))
    return GridFn(values)
