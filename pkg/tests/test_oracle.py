import math

import pytest

from hulthen import (
    BracketError,
    PotentialParams,
    QuantumNumbers,
    QuadratureError,
    ShootingConfig,
    adaptive_quad,
    approximation_error,
    bound_state_count,
    count_bound_states,
    default_config,
    energy,
    interior_nodes,
    solve_exact,
)

ANCHOR = PotentialParams(Z=1.0, alpha=0.05)


def test_config_validation():
    with pytest.raises(ValueError):
        ShootingConfig(r_min=1.0, r_max=0.5, energy_bracket=(-1.0, -0.5))
    with pytest.raises(ValueError):
        ShootingConfig(r_min=0.1, r_max=10.0, energy_bracket=(-0.5, -1.0))
    with pytest.raises(ValueError):
        ShootingConfig(r_min=0.1, r_max=10.0, energy_bracket=(-1.0, 0.5))
    with pytest.raises(ValueError):
        ShootingConfig(r_min=0.1, r_max=10.0, energy_bracket=(-1.0, -0.5), tolerance=0.0)


def test_interior_nodes_mapping():
    assert interior_nodes(QuantumNumbers(2, 0), 3) == 2
    assert interior_nodes(QuantumNumbers(2, 1), 3) == 2
    assert interior_nodes(QuantumNumbers(2, 0), 1) == 1  # boundary root in D=1
    assert interior_nodes(QuantumNumbers(1, 0), 2) == 1


def test_exact_s_wave_anchor():
    # gamma vanishes at l = 0, D = 3, so the closed form is exact and the
    # integrator must reproduce it
    qn = QuantumNumbers(0, 0)
    cfg = default_config(ANCHOR, qn)
    res = solve_exact(ANCHOR, 0, 0, cfg)
    assert res.converged
    assert res.node_count == 0
    assert res.residual <= cfg.tolerance
    assert res.energy == pytest.approx(-0.4753125, rel=1e-6)


def test_d1_state():
    p1 = PotentialParams(Z=1.0, alpha=0.05, D=1)
    qn = QuantumNumbers(2, 0)
    st = energy(p1, qn)
    cfg = default_config(p1, qn)
    res = solve_exact(p1, 0, interior_nodes(qn, 1), cfg)
    assert res.energy == pytest.approx(st.energy, rel=1e-6)


def test_coulomb_override():
    # swapping in -Z/r reproduces the hydrogen ground state
    cfg = ShootingConfig(
        r_min=1e-6, r_max=40.0, energy_bracket=(-0.6, -0.4), tolerance=1e-10
    )
    res = solve_exact(ANCHOR, 0, 0, cfg, potential=lambda r: -1.0 / r)
    assert res.energy == pytest.approx(-0.5, rel=1e-6)


def test_eigenvalue_ordering():
    energies = []
    for k in range(0, 3):
        qn = QuantumNumbers(k, 0)
        cfg = default_config(ANCHOR, qn)
        energies.append(solve_exact(ANCHOR, 0, k, cfg).energy)
    assert energies[0] < energies[1] < energies[2]


def test_grid_refinement_contract():
    qn = QuantumNumbers(0, 0)
    cfg_a = default_config(ANCHOR, qn, step_count=12000, tolerance=1e-9)
    cfg_b = default_config(ANCHOR, qn, step_count=24000, tolerance=1e-9)
    e_a = solve_exact(ANCHOR, 0, 0, cfg_a).energy
    e_b = solve_exact(ANCHOR, 0, 0, cfg_b).energy
    assert abs(e_a - e_b) < 4.0 * 1e-9


def test_bracket_error():
    # a bracket above the ground state (toward zero) cannot straddle it
    cfg = ShootingConfig(
        r_min=1e-6 / 0.05,
        r_max=400.0,
        energy_bracket=(-0.2, -0.15),
        tolerance=1e-9,
    )
    with pytest.raises(BracketError):
        solve_exact(ANCHOR, 0, 0, cfg)


def test_count_matches_closed_form():
    for alpha in (0.05, 0.1):
        params = PotentialParams(Z=1.0, alpha=alpha)
        assert count_bound_states(params, 0) == bound_state_count(params, 0)


def test_approximation_error_exact_case():
    # s-wave in D = 3: no centrifugal term, error at solver tolerance
    err = approximation_error(ANCHOR, QuantumNumbers(0, 0))
    assert err < 1e-7


def test_approximation_error_nonzero_gamma():
    # D = 5, l = 0 has gamma = 2: the closed form is genuinely approximate
    p5 = PotentialParams(Z=1.0, alpha=0.1, D=5)
    err = approximation_error(p5, QuantumNumbers(0, 0))
    assert err > 1e-5


def test_adaptive_quad_examples():
    assert adaptive_quad(lambda x: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-13)
    val = adaptive_quad(lambda x: x**-0.5 if x > 0 else 0.0, 0.0, 1.0, abs_tol=1e-10)
    assert val == pytest.approx(2.0, abs=1e-9)
    val = adaptive_quad(lambda x: math.exp(-x), 0.0, 40.0, abs_tol=1e-12)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_adaptive_quad_errors():
    with pytest.raises(ValueError):
        adaptive_quad(lambda x: 1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        adaptive_quad(lambda x: 1.0, 0.0, 1.0, abs_tol=0.0)
    with pytest.raises(QuadratureError):
        # non-finite integrand sample (the first panel center is 0.5)
        adaptive_quad(lambda x: math.inf if x == 0.5 else 1.0, 0.0, 1.0)
    with pytest.raises(QuadratureError):
        adaptive_quad(
            lambda x: x**-0.999 if x > 0 else 0.0, 0.0, 1.0, abs_tol=1e-10, max_intervals=20
        )
