import itertools

import pytest

from casorati.determinants import wronskian
from casorati.oqm import (
    OqmModel,
    SeedDependenceError,
    StateDeletedError,
    build_harmonic_model,
    deformed_eigenfunction,
    deformed_potential,
    degree_census,
    staged_eigenfunction,
    two_path_compare,
    verify_schrodinger,
)
from casorati.poly import ExpPoly, Poly, RationalFn
from casorati.seeds import krein_adler_check

x = Poly.x()


@pytest.fixture(scope="module")
def model() -> OqmModel:
    return build_harmonic_model(n_max=6, v_max=3)


def test_model_construction_verified(model):
    # load-time checks passed (construction would have raised otherwise)
    assert model.eigen_energy(0) == 0
    assert [model.eigen_energy(n) for n in range(4)] == [0, 2, 4, 6]
    assert [model.aux_energy(v) for v in range(3)] == [-2, -4, -6]
    assert model.eigen(1).p.degree == 1      # first excited level is linear
    assert all(model.aux_energy(v) < 0 for v in range(4))


def test_verify_schrodinger_examples(model):
    phi0 = model.eigen(0)
    assert verify_schrodinger(model.potential, phi0, 1)          # pre-shift
    assert not verify_schrodinger(model.potential, phi0, 3)      # wrong eigenvalue
    assert verify_schrodinger(Poly([-2, 0, 1]), ExpPoly(x, a=-1), 1)
    assert verify_schrodinger(model.potential, model.aux_state(0), -1)


def test_deformed_potential_examples(model):
    assert deformed_potential(model, [model.aux_state(0)]) == RationalFn(Poly([-2, 0, 1]))
    assert deformed_potential(model, []) == RationalFn(model.potential)
    with pytest.raises(SeedDependenceError):
        deformed_potential(model, [model.eigen(0), 2 * model.eigen(0)])


def test_deformed_eigenfunction_examples(model):
    psi0 = model.aux_state(0)
    u_d = deformed_potential(model, [psi0])
    phi_d0 = deformed_eigenfunction(model, [psi0], 0)
    reduced = phi_d0.reduce()
    assert reduced.q.num == -2 * x or reduced.q.num == Poly([0, 1])  # -2x up to normalization
    assert verify_schrodinger(u_d, phi_d0, model.raw_energy(0))
    assert deformed_eigenfunction(model, [], 2).q == RationalFn(model.eigen(2).p)
    with pytest.raises(StateDeletedError):
        deformed_eigenfunction(model, [model.eigen(1)], 1)
    # single eigenstate seed: remaining levels stay exact solutions
    u_d1 = deformed_potential(model, [model.eigen(1)])
    for n in (0, 2, 3):
        phi = deformed_eigenfunction(model, [model.eigen(1)], n)
        assert verify_schrodinger(u_d1, phi, model.raw_energy(model.eigen_energy(n)))


def test_krein_adler_examples():
    assert krein_adler_check([1, 2])
    assert not krein_adler_check([2])
    for n0 in range(4):
        assert krein_adler_check(list(range(n0 + 1)))   # prefix sets always pass
    assert krein_adler_check([])


def test_two_path_trivial_cases(model):
    assert two_path_compare(model, (), (1, 2), 0).passed     # no virtual seeds
    assert two_path_compare(model, (0,), (), 3).passed       # no eigen seeds
    assert two_path_compare(model, (0, 1), (), 4).passed


def test_two_path_mixed_cases(model):
    for d_v, d_e, n in [((0,), (1, 2), 0), ((0, 1), (1, 2), 0),
                        ((0, 1), (1, 2), 3), ((1,), (0, 1), 2)]:
        report = two_path_compare(model, d_v, d_e, n)
        assert report.passed, (d_v, d_e, n)


def test_two_path_full_sweep(model):
    """All (d_v, d_e) with M_v <= 2, M_e <= 2, n <= 4."""
    v_choices = [(), (0,), (1,), (0, 1)]
    e_choices = [(), (1, 2), (0, 1), (2, 3)]
    for d_v, d_e in itertools.product(v_choices, e_choices):
        for n in range(5):
            if n in d_e:
                continue
            assert two_path_compare(model, d_v, d_e, n).passed, (d_v, d_e, n)


def test_seed_order_invariance(model):
    seeds = [model.aux_state(0), model.eigen(1), model.eigen(2)]
    permuted = [model.eigen(2), model.aux_state(0), model.eigen(1)]
    assert deformed_potential(model, seeds) == deformed_potential(model, permuted)
    lhs = deformed_eigenfunction(model, seeds, 0).reduce()
    rhs = deformed_eigenfunction(model, permuted, 0).reduce()
    assert lhs.q.num == rhs.q.num and lhs.q.den == rhs.q.den
    # the Wronskian itself only flips sign under a transposition
    w1 = wronskian(seeds)
    w2 = wronskian([seeds[1], seeds[0], seeds[2]])
    assert w2.p == -w1.p


def test_degree_census_examples(model):
    empty = degree_census(model, (), (), 5)
    assert empty.missing == () and empty.classification == "case-1"
    virtual_only = degree_census(model, (0,), (), 5)
    assert virtual_only.missing == (0,) and virtual_only.classification == "case-1"
    deleted = degree_census(model, (), (1, 2), 6)
    assert deleted.missing == (1, 2) and deleted.classification == "case-2"
    staged = degree_census(model, (), (1, 2), 6, staged=True)
    assert staged == deleted


def test_degree_census_path_independent(model):
    for d_v, d_e in [((0,), (1, 2)), ((0, 1), (1, 2)), ((1,), ())]:
        one = degree_census(model, d_v, d_e, 6)
        two = degree_census(model, d_v, d_e, 6, staged=True)
        assert one == two, (d_v, d_e)


def test_staged_deletion_guard(model):
    with pytest.raises(StateDeletedError):
        staged_eigenfunction(model, (0,), (1, 2), 2)


def test_regularity_probe_reported(model):
    report = two_path_compare(model, (0,), (1, 2), 0)
    assert "denominator_sign_change" in report.params
