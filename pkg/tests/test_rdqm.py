from fractions import Fraction

import mpmath
import pytest

from casorati.determinants import casoratian_real_grid
from casorati.gridfn import GridFn, WindowError
from casorati.rdqm import (
    NegativeRadicandError,
    apply_hamiltonian,
    build_meixner_model,
    darboux_chain_replay,
    darboux_step_replay,
    deformed_eigenfunctions,
    deformed_potentials_bd,
    dense_hamiltonian,
    check_definite_sign,
    factorization_pair,
    meixner_polynomial,
    residual,
    shift_matrices,
    sign_conjecture_check,
    sign_identity_sweep,
    solve_seed_at_energy,
    spectrum_check,
    two_path_compare_rdqm,
)
from casorati.scalars import working_precision
from casorati.seeds import IndexSet, sign_factor
from casorati.tridiag import lowest_eigenvalues

BITS = 192
TOL = mpmath.mpf(10) ** -20


@pytest.fixture(scope="module")
def model():
    return build_meixner_model(Fraction(2), Fraction(1, 3), n_max=8, x_max=60,
                               precision_bits=BITS)


def test_model_normalization_and_order(model):
    assert all(model.eigen(n)(0) == 1 for n in range(9))
    assert [model.eigen_energy(n) for n in range(4)] == [0, 1, 2, 3]
    assert meixner_polynomial(0, Fraction(2), Fraction(1, 3)) == __import__(
        "casorati.poly", fromlist=["Poly"]).Poly.one()


def test_model_residuals(model):
    tolerance = mpmath.mpf(10) ** -(BITS // 4)
    for n in range(9):
        assert residual(model, model.eigen(n), n) <= tolerance


def test_seed_row0_identity(model):
    """Row 0 fixes psi(1): -sqrt(B(0)D(1)) psi(1) + B(0) psi(0) = E psi(0)."""
    seed = solve_seed_at_energy(model, Fraction(-3, 5))
    with working_precision(BITS):
        b0 = model.b_grid(0)
        lhs = -mpmath.sqrt(b0 * model.d_grid(1)) * seed(1) + b0 * seed(0)
        assert abs(lhs - mpmath.mpf(Fraction(-3, 5).numerator) / 5 * 1) < mpmath.mpf(10) ** -40


def test_seed_positive_energy_rejected(model):
    with pytest.raises(ValueError):
        solve_seed_at_energy(model, Fraction(1, 2))


def test_seed_reproduces_eigenfunction_up_to_normalization(model):
    """Marching the recurrence at E = E_n recovers phi_n (cross-check)."""
    with working_precision(BITS):
        energy = mpmath.mpf(2)
        b, d = model.b_grid, model.d_grid
        off0 = mpmath.sqrt(b(0) * d(1))
        psi = [mpmath.mpf(1), (b(0) - energy) / off0]
        for x_pt in range(1, 30):
            nxt = ((b(x_pt) + d(x_pt) - energy) * psi[x_pt]
                   - mpmath.sqrt(b(x_pt - 1) * d(x_pt)) * psi[x_pt - 1]) \
                / mpmath.sqrt(b(x_pt) * d(x_pt + 1))
            psi.append(nxt)
        phi2 = model.eigen(2)
        for x_pt in range(25):
            assert abs(psi[x_pt] - phi2(x_pt)) < mpmath.mpf(10) ** -40


def test_seeds_linearly_independent(model):
    s1 = solve_seed_at_energy(model, Fraction(-3, 5))
    s2 = solve_seed_at_energy(model, Fraction(-17, 10))
    assert check_definite_sign(s1) and check_definite_sign(s2)
    with working_precision(BITS):
        cas = casoratian_real_grid([s1, s2])
        assert all(v != 0 for v in cas.values)


def test_sign_factor_examples():
    assert sign_factor([Fraction(5)]) == 1
    assert sign_factor([3, -1, 2]) == -1
    for m in range(2, 6):
        ascending = list(range(m))
        assert sign_factor(ascending) == (-1) ** (m * (m - 1) // 2)
    with pytest.raises(ValueError):
        sign_factor([1, 1])


def test_deformed_potentials_trivial_and_single(model):
    with working_precision(BITS):
        b0, d0, pos = deformed_potentials_bd(model.b_grid, model.d_grid, [],
                                             model.eigen(0), BITS)
        for x_pt in range(0, 20):
            assert abs(b0(x_pt) - model.b_grid(x_pt)) < mpmath.mpf(10) ** -40
            assert abs(d0(x_pt) - model.d_grid(x_pt)) < mpmath.mpf(10) ** -40
        b1, d1, pos1 = deformed_potentials_bd(model.b_grid, model.d_grid,
                                              [model.eigen(0)], model.eigen(1), BITS)
        assert d1(0) == 0
        assert pos1["b_positive"] and pos1["d_positive_interior"]


def test_deformed_eigenfunction_residual(model):
    with working_precision(BITS):
        b1, d1, _ = deformed_potentials_bd(model.b_grid, model.d_grid,
                                           [model.eigen(0)], model.eigen(1), BITS)
        phi = deformed_eigenfunctions(model.b_grid, model.d_grid,
                                      [model.eigen(0)], [Fraction(0)],
                                      model.eigen(1), BITS)
        h_phi = apply_hamiltonian(b1, d1, phi, energy_shift=mpmath.mpf(1))
        res = max(abs(h_phi(x) - phi(x)) for x in range(h_phi.x_max + 1))
        res /= max(abs(v) for v in phi.values[:h_phi.x_max + 1])
        assert res < mpmath.mpf(10) ** -40
        # M = 0 returns phi unchanged
        assert deformed_eigenfunctions(model.b_grid, model.d_grid, [], [],
                                       model.eigen(2), BITS) is model.eigen(2)


def test_sign_conjecture_and_negative_radicand(model):
    seeds = [solve_seed_at_energy(model, Fraction(-3, 5)),
             solve_seed_at_energy(model, Fraction(-17, 10))]
    assert sign_conjecture_check(seeds, [Fraction(-3, 5), Fraction(-17, 10)])
    # an intermediate seed set violating admissibility trips the real-root guard
    with working_precision(BITS):
        bad = [seeds[0], seeds[1], model.eigen(1)]
        with pytest.raises(NegativeRadicandError):
            deformed_eigenfunctions(model.b_grid, model.d_grid, bad,
                                    [Fraction(-3, 5), Fraction(-17, 10), Fraction(1)],
                                    model.eigen(0), BITS)


def test_step_replay_first_step(model):
    seed = solve_seed_at_energy(model, Fraction(-3, 5))
    report = darboux_step_replay(model.b_grid, model.d_grid, [seed],
                                 [Fraction(-3, 5)], 0, model.eigen(0), TOL, BITS)
    assert report.passed and report.params["eps_next_combinatorial"] == 1


def test_step_replay_out_of_order_sign(model):
    s_low = solve_seed_at_energy(model, Fraction(-17, 10))
    s_high = solve_seed_at_energy(model, Fraction(-3, 5))
    report = darboux_step_replay(model.b_grid, model.d_grid, [s_low, s_high],
                                 [Fraction(-17, 10), Fraction(-3, 5)], 1,
                                 model.eigen(0), TOL, BITS)
    assert report.passed
    assert report.params["sigma_s1"] == -1 == report.params["eps_next_combinatorial"]


def test_step_replay_anchor_violation_reported(model):
    report = darboux_step_replay(model.b_grid, model.d_grid,
                                 [model.eigen(1), model.eigen(2)],
                                 [Fraction(1), Fraction(2)], 1,
                                 model.eigen(0), TOL, BITS)
    assert not report.passed and report.inconclusive
    assert "anchor" in report.note


def test_full_chain_replay(model):
    seeds = [solve_seed_at_energy(model, Fraction(-3, 5)),
             solve_seed_at_energy(model, Fraction(-17, 10)),
             model.eigen(1), model.eigen(2)]
    energies = [Fraction(-3, 5), Fraction(-17, 10), Fraction(1), Fraction(2)]
    reports = darboux_chain_replay(model.b_grid, model.d_grid, seeds, energies,
                                   model.eigen(0), TOL, BITS)
    assert len(reports) == 4 and all(r.passed for r in reports)
    assert reports[-1].params["eps_next_combinatorial"] == -1


def test_two_path_and_permutation_invariance(model):
    report = two_path_compare_rdqm(model, [Fraction(-3, 5), Fraction(-17, 10)],
                                   [1, 2], 0, TOL, compare_up_to=30)
    assert report.passed
    assert mpmath.mpf(report.params["max_relative_deviation"]) <= TOL
    assert report.params["sign_identity_all_orderings"]
    assert report.params["epsilon"] == -1


def test_two_path_rejects_deleted_level(model):
    with pytest.raises(ValueError):
        two_path_compare_rdqm(model, [Fraction(-3, 5)], [1, 2], 2, TOL)


def test_two_path_requires_monotone_energies(model):
    with pytest.raises(ValueError):
        two_path_compare_rdqm(model, [Fraction(-17, 10), Fraction(-3, 5)], [1], 0, TOL)


def test_sign_identity_sweep():
    assert sign_identity_sweep([Fraction(-3, 5), Fraction(-17, 10)], [1, 2])
    assert sign_identity_sweep([Fraction(-1)], [Fraction(1)])
    assert sign_identity_sweep([], [1, 2])
    # the index-set variant
    idx = IndexSet(d_v=("v0",), d_e=(1,), v_energies=(Fraction(-1),),
                   e_energies=(Fraction(1),))
    assert idx.epsilon() == -1 and idx.sign_identity_holds()
    assert idx.mu == 0


def test_spectrum_checks(model):
    # truncation error at N = 45 on this window is ~4e-7 for the 5th value
    kwargs = dict(match_tolerance=mpmath.mpf(10) ** -5,
                  sensitivity_threshold=mpmath.mpf(10) ** -5)
    plain = spectrum_check(model, [], [], 45, 5, **kwargs)
    assert plain["matched"] and plain["expected"] == ["0", "1", "2", "3", "4"]
    deleted = spectrum_check(model, [Fraction(-3, 5), Fraction(-17, 10)], [1, 2],
                             45, 5, **kwargs)
    assert deleted["matched"] and deleted["expected"] == ["0", "3", "4", "5", "6"]
    iso = spectrum_check(model, [Fraction(-3, 5)], [], 45, 5, **kwargs)
    assert iso["matched"] and iso["expected"] == ["0", "1", "2", "3", "4"]


def test_spectrum_against_scipy_oracle(model):
    """Independent cross-check of the Sturm bisection path in float64."""
    scipy_linalg = pytest.importorskip("scipy.linalg")
    with working_precision(BITS):
        size = 30
        diag = [float(model.b_grid(x) + model.d_grid(x)) for x in range(size)]
        off = [float(-mpmath.sqrt(model.b_grid(x) * model.d_grid(x + 1)))
               for x in range(size - 1)]
        mine = lowest_eigenvalues([mpmath.mpf(v) for v in diag],
                                  [mpmath.mpf(v) for v in off], 4)
    theirs = scipy_linalg.eigh_tridiagonal(diag, off, eigvals_only=True)
    for a, b in zip(mine, sorted(theirs)[:4]):
        assert abs(float(a) - b) < 1e-8


def test_factorization_consistency(model):
    """A^T A reproduces the tri-diagonal matrix entrywise."""
    with working_precision(BITS):
        size = 12
        a, at = factorization_pair(model.b_grid, model.d_grid, size)
        product = [[sum(at[i][k] * a[k][j] for k in range(size)) for j in range(size)]
                   for i in range(size)]
        h = dense_hamiltonian(model.b_grid, model.d_grid, size)
        # bits/4 relative: bits/2 would sit below the working epsilon
        tolerance = mpmath.mpf(10) ** -(BITS // 4)
        for i in range(size - 1):           # last row feels the truncation edge
            for j in range(size - 1):
                assert abs(product[i][j] - h[i][j]) <= tolerance * (1 + abs(h[i][j]))


def test_shift_matrices_not_inverse():
    """e^+ e^- == 1 but e^- e^+ != 1 on the truncated representation."""
    size = 6
    up, down = shift_matrices(size)

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)]
                for i in range(size)]

    forward = matmul(up, down)
    backward = matmul(down, up)
    identity = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    assert all(forward[i][j] == identity[i][j] for i in range(size - 1) for j in range(size))
    assert backward != identity
    assert backward[0][0] == 0   # the corner betrays the one-sided inverse


def test_window_errors(model):
    tiny = GridFn([mpmath.mpf(1), mpmath.mpf(2)])
    other = GridFn([mpmath.mpf(1), mpmath.mpf(1)])
    with pytest.raises(WindowError):
        deformed_potentials_bd(tiny, tiny, [tiny], other, BITS)


def test_model_parameter_validation():
    with pytest.raises(ValueError):
        build_meixner_model(Fraction(-1), Fraction(1, 3), 2, 10)
    with pytest.raises(ValueError):
        build_meixner_model(Fraction(2), Fraction(3, 2), 2, 10)
    with pytest.raises(ValueError):
        build_meixner_model(Fraction(2), Fraction(0), 2, 10)


def test_singular_deformation_names_location(model):
    """A seed Casoratian zero inside the window is reported with its x."""
    from casorati.rdqm import SingularDeformationError
    with working_precision(BITS):
        # phi_1 vanishes at x = 1, so the 1-seed Casoratian is zero there
        with pytest.raises(SingularDeformationError, match="x = 1"):
            deformed_potentials_bd(model.b_grid, model.d_grid,
                                   [model.eigen(1)], model.eigen(0), BITS)


def test_deformed_potentials_seed_order_invariant(model):
    """Permuting seeds flips the Casoratian sign only; the potential ratios
    cancel it, while eps_D tracks the energy-order parity."""
    s1 = solve_seed_at_energy(model, Fraction(-3, 5))
    s2 = solve_seed_at_energy(model, Fraction(-17, 10))
    with working_precision(BITS):
        b_a, d_a, _ = deformed_potentials_bd(model.b_grid, model.d_grid,
                                             [s1, s2], model.eigen(0), BITS)
        b_b, d_b, _ = deformed_potentials_bd(model.b_grid, model.d_grid,
                                             [s2, s1], model.eigen(0), BITS)
        for x_pt in range(min(b_a.x_max, b_b.x_max) + 1):
            assert abs(b_a(x_pt) - b_b(x_pt)) <= mpmath.mpf(10) ** -40 * (1 + abs(b_a(x_pt)))
            assert abs(d_a(x_pt) - d_b(x_pt)) <= mpmath.mpf(10) ** -40 * (1 + abs(d_a(x_pt)))
    assert sign_factor([Fraction(-3, 5), Fraction(-17, 10)]) == 1
    assert sign_factor([Fraction(-17, 10), Fraction(-3, 5)]) == -1
