import dataclasses
import math

import numpy as np
import pytest

from orthoglide import (
    G,
    G_T,
    NumericalError,
    TreeState,
    chain_bias_h,
    chain_inertia_A,
    chain_jacobian,
    chain_jacobian_inverse,
    chain_kinetic_energy,
    chain_reaction_force,
    chain_torques_H,
    closure_expand,
    composite_tree_inertia,
    model_with_gravity,
    tree_newton_euler,
)
from orthoglide.verify import _tree_potential

HALF_PI = math.pi / 2


def _rand_q(rng):
    return np.array([rng.uniform(-0.2, 0.2), -HALF_PI + rng.uniform(-1.1, 1.1), rng.uniform(-1.1, 1.1)])


def test_reduction_matrix_values():
    assert np.array_equal(G_T, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, -1, 0], [0, 0, 1, -1, 0, 1]])
    assert np.array_equal(G, G_T.T)


def test_closure_expand_pinned():
    ts = closure_expand((0.1, -1.2, 0.4), (1.0, 2.0, 3.0), (-1.0, 0.5, 2.0))
    assert np.allclose(ts.q, [0.1, -1.2, 0.4, -0.4, 1.2 - HALF_PI, 0.4], atol=1e-15)
    assert np.array_equal(ts.qd, G @ [1.0, 2.0, 3.0])
    assert np.array_equal(ts.qdd, G @ [-1.0, 0.5, 2.0])


def test_static_tree_efforts_match_potential_gradient(model, rng):
    h = 1e-6
    for _ in range(5):
        i = int(rng.integers(0, 3))
        q6 = rng.uniform(-1.0, 1.0, 6)
        q6[4] -= HALF_PI
        gam = tree_newton_euler(model, i, TreeState(q6, np.zeros(6), np.zeros(6)))
        for k in range(6):
            e = np.zeros(6)
            e[k] = h
            g_fd = (_tree_potential(model, i, q6 + e) - _tree_potential(model, i, q6 - e)) / (2 * h)
            assert abs(gam[k] - g_fd) < 1e-7 * (1 + abs(gam[k]))


def test_torque_decomposition(model, rng):
    for _ in range(10):
        i = int(rng.integers(0, 3))
        q = _rand_q(rng)
        qd = rng.normal(0, 1, 3)
        qdd = rng.normal(0, 2, 3)
        H = chain_torques_H(model, i, q, qd, qdd)
        A = chain_inertia_A(model, i, q)
        h = chain_bias_h(model, i, q, qd)
        assert np.abs(H - (A @ qdd + h)).max() < 1e-11


def test_inertia_matches_reduced_composite(model, rng):
    # independent route: congruence of the 6x6 composite-rigid-body matrix
    for _ in range(5):
        i = int(rng.integers(0, 3))
        q = _rand_q(rng)
        A = chain_inertia_A(model, i, q)
        M_tree = composite_tree_inertia(model, i, closure_expand(q).q)
        assert np.abs(A - G.T @ M_tree @ G).max() < 1e-12


def test_inertia_symmetric_positive_definite(model, rng):
    for _ in range(10):
        i = int(rng.integers(0, 3))
        A = chain_inertia_A(model, i, _rand_q(rng))
        assert np.abs(A - A.T).max() < 1e-12
        assert np.linalg.eigvalsh(A).min() > 0.0


def test_kinetic_energy_is_the_inertia_quadratic(model, rng):
    for _ in range(10):
        i = int(rng.integers(0, 3))
        q = _rand_q(rng)
        qd = rng.normal(0, 1, 3)
        T = chain_kinetic_energy(model, i, q, qd)
        assert abs(T - 0.5 * qd @ chain_inertia_A(model, i, q) @ qd) < 1e-12 * (1 + T)
        assert T >= 0.0


def test_gravity_override_and_zero_gravity_bias(model, rng):
    q = _rand_q(rng)
    qd = rng.normal(0, 1, 3)
    h_full = chain_bias_h(model, 0, q, qd)
    h_nog = chain_bias_h(model, 0, q, qd, gravity=(0, 0, 0))
    h_grav = chain_bias_h(model, 0, q, np.zeros(3))
    # bias splits into a pure velocity part and a pure gravity part
    assert np.abs(h_full - (h_nog + h_grav)).max() < 1e-11
    assert np.abs(chain_bias_h(model, 0, q, np.zeros(3), gravity=(0, 0, 0))).max() == 0.0


def test_external_force_enters_through_jacobian_transpose(model, rng):
    for _ in range(5):
        i = int(rng.integers(0, 3))
        q = _rand_q(rng)
        qd = rng.normal(0, 1, 3)
        qdd = rng.normal(0, 1, 3)
        F = rng.normal(0, 5, 3)
        dH = chain_torques_H(model, i, q, qd, qdd, f_ext=F) - chain_torques_H(model, i, q, qd, qdd)
        assert np.abs(dH - chain_jacobian(model, i, q).T @ F).max() < 1e-11


def test_reaction_force_unit_effort_is_inverse_row(model, rng):
    m0 = model_with_gravity(model, (0, 0, 0))
    zero = np.zeros(3)
    for _ in range(5):
        i = int(rng.integers(0, 3))
        q = _rand_q(rng)
        f = chain_reaction_force(m0, i, q, zero, zero, 1.0)
        assert np.abs(f - chain_jacobian_inverse(m0, i, q)[0]).max() < 1e-12


def test_corrupted_inertia_trips_symmetry_guard(model):
    bad_J = model.chains[0].links[2].inertia.copy()
    # axial direction of the asymmetric part must not line up with the joint
    # axis, or the defect cancels out of every torque projection
    bad_J[1, 2] += 1e-3
    bad_link = dataclasses.replace(model.chains[0].links[2], inertia=bad_J)
    links = list(model.chains[0].links)
    links[2] = bad_link
    bad_chain = dataclasses.replace(model.chains[0], links=tuple(links))
    bad_model = dataclasses.replace(model, chains=(bad_chain,) + model.chains[1:])
    with pytest.raises(NumericalError):
        chain_inertia_A(bad_model, 0, (0.0, -1.3, 0.3))
    # untouched chains keep working
    chain_inertia_A(bad_model, 1, (0.0, -1.3, 0.3))
