import math

import numpy as np
import pytest

from respole import (
    ParameterError,
    PoleClass,
    SpectralPole,
    bound_energies_from_truncation,
    build_report,
    classify,
    closed_form_eps0,
    energy_from_z,
    feshbach_pole_search,
    finite_lattice_hamiltonian,
    k_from_z,
    make_tdot,
    pole_residual_report,
    pole_set_distance,
    solve_poles,
)


def test_small_lattice_assembly():
    lat = finite_lattice_hamiltonian(make_tdot(1.0, 1.0, 0.0), 1)
    # rows: x=-1, x=0, x=+1, dot
    expected = np.array(
        [
            [0.0, -1.0, 0.0, 0.0],
            [-1.0, 0.0, -1.0, -1.0],
            [0.0, -1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
        ]
    )
    assert np.array_equal(lat.matrix, expected)
    assert lat.contact_index == 1
    with pytest.raises(ParameterError):
        finite_lattice_hamiltonian(make_tdot(1.0, 1.0, 0.0), 0)


def test_small_lattice_eigenvalues_satisfy_char_poly():
    lat = finite_lattice_hamiltonian(make_tdot(1.0, 1.0, 0.0), 1)
    evals = np.linalg.eigvalsh(lat.matrix)
    for e in evals:
        # residual of det(H - e I) via an LU determinant
        assert abs(np.linalg.det(lat.matrix - e * np.eye(4))) < 1e-12


def test_generalized_lattice_assembly():
    from respole import DeviceSpec

    spec = DeviceSpec(3, (0.1, 0.5, -0.2), ((0, 1, -0.8), (1, 2, -0.6)), 0, 1.0)
    lat = finite_lattice_hamiltonian(spec, 2)
    # 5 lead sites + 2 extra device sites
    assert lat.matrix.shape == (7, 7)
    assert lat.matrix[2, 2] == 0.1       # contact onsite sits at x = 0
    assert lat.matrix[5, 5] == 0.5
    assert lat.matrix[6, 6] == -0.2
    assert lat.matrix[2, 5] == -0.8
    assert lat.matrix[5, 6] == -0.6
    assert np.array_equal(lat.matrix, lat.matrix.T)


def test_bound_energies_match_closed_form():
    vals = bound_energies_from_truncation(make_tdot(1.0, 1.0, 0.0), 200)
    cf = closed_form_eps0(1.0, 1.0)
    assert len(vals) == 2
    assert vals[0] == pytest.approx(-(cf.p + cf.q), abs=1e-8)
    assert vals[1] == pytest.approx(+(cf.p + cf.q), abs=1e-8)


def test_bound_energies_match_solver_with_detuned_dot():
    spec = make_tdot(1.0, 1.0, 3.0)
    vals = bound_energies_from_truncation(spec, 200)
    sieg = sorted(
        p.E.real for p in solve_poles(spec)
        if p.pole_class in (PoleClass.BOUND_LOWER, PoleClass.BOUND_UPPER)
    )
    assert len(vals) == len(sieg) == 2
    for a, b in zip(vals, sieg):
        assert abs(a - b) < 1e-8


def test_bound_energies_decoupled_limit_empty():
    vals = bound_energies_from_truncation(make_tdot(1.0, 1e-12, 0.0), 200)
    assert vals == []


def test_bound_count_matches_over_grid():
    for t1 in (0.5, 1.0, 2.0):
        for ed in (-3.0, -1.0, 0.0, 1.0, 3.0):
            spec = make_tdot(1.0, t1, ed)
            lattice = bound_energies_from_truncation(spec, 200)
            bound = [
                p for p in solve_poles(spec)
                if p.pole_class in (PoleClass.BOUND_LOWER, PoleClass.BOUND_UPPER)
            ]
            assert len(lattice) == len(bound)


def test_bound_energy_convergence_in_lattice_size():
    # measurable but converged truncation error: moderate binding
    spec = make_tdot(1.0, 0.5, 0.0)
    exact = sorted(
        p.E.real for p in solve_poles(spec)
        if p.pole_class in (PoleClass.BOUND_LOWER, PoleClass.BOUND_UPPER)
    )
    err = {}
    for n in (100, 200):
        vals = bound_energies_from_truncation(spec, n)
        err[n] = max(abs(a - b) for a, b in zip(vals, exact))
    assert err[200] < err[100] < 1e-6


def test_truncation_needs_enough_sites():
    with pytest.raises(ParameterError):
        bound_energies_from_truncation(make_tdot(1.0, 1.0, 0.0), 5)


def test_residual_report_closed_form_poles():
    spec = make_tdot(1.0, 1.0, 0.0)
    report = pole_residual_report(spec, solve_poles(spec))
    assert len(report) == 4
    for rec in report:
        assert rec.secular < 1e-12
        assert rec.lattice_row_dev < 1e-12


def test_residual_report_perturbed_root():
    # oracle first: |P(0.79)| / 0.79^2 with P the quartic z^4 + z^2 - 1
    z = 0.79
    expected = abs(z**4 + z**2 - 1.0) / z**2
    assert expected == pytest.approx(0.0217927, abs=1e-7)
    E = energy_from_z(z, 1.0)
    fake = SpectralPole(
        z=complex(z), k=k_from_z(z), E=E, pole_class=classify(z),
        amps=(1.0 + 0j, -1.0 / E),
    )
    (rec,) = pole_residual_report(make_tdot(1.0, 1.0, 0.0), [fake])
    assert rec.secular == pytest.approx(expected, abs=1e-9)
    # dot row is exact by construction; the contact row carries det/(E - eps_d)
    assert rec.lattice_row_dev == pytest.approx(expected / abs(E), abs=1e-9)


def test_residual_report_empty():
    assert pole_residual_report(make_tdot(1.0, 1.0, 0.0), []) == []


def test_pole_set_distance():
    spec = make_tdot(1.0, 0.8, 0.4)
    a = solve_poles(spec)
    b = feshbach_pole_search(spec)
    assert pole_set_distance(a, b) < 1e-9
    assert pole_set_distance(a, a[:3]) == math.inf
    assert pole_set_distance([], []) == 0.0


def test_build_report_structure():
    report = build_report(make_tdot(1.0, 1.0, 0.0), 200)
    assert set(report) == {"poles", "bound_compare"}
    assert len(report["poles"]) == 4
    for entry in report["poles"]:
        assert set(entry) == {"z", "residual", "lattice_row_dev", "class"}
        assert entry["residual"] < 1e-10
        assert entry["lattice_row_dev"] < 1e-10
    bc = report["bound_compare"]
    assert len(bc["siegert"]) == len(bc["lattice"]) == 2
    assert bc["max_abs_diff"] < 1e-8
