import math

import numpy as np
import pytest

from orthoglide import (
    CSV_HEADER,
    OutOfWorkspace,
    ParseError,
    SimConfig,
    ValidationError,
    feedforward_torque,
    model_with_gravity,
    quintic_path,
    read_trajectory_csv,
    read_trajectory_json,
    simulate,
    torque_from_table,
    write_trajectory_csv,
    write_trajectory_json,
)

P_HOME = (0.0, 0.0, 0.6)


def test_quintic_endpoints_and_clamps():
    path = quintic_path((0.0, 0.0, 0.6), (0.06, -0.05, 0.55), 0.4)
    for t, target in ((0.0, (0.0, 0.0, 0.6)), (0.4, (0.06, -0.05, 0.55))):
        P, V, A = path(t)
        assert np.allclose(P, target, atol=1e-15)
        assert np.all(V == 0.0) and np.all(A == 0.0)
    # clamped outside the interval
    assert np.array_equal(path(-1.0)[0], path(0.0)[0])
    assert np.array_equal(path(9.0)[0], path(0.4)[0])


def test_quintic_derivatives_consistent():
    path = quintic_path((0.0, 0.0, 0.6), (0.06, -0.05, 0.55), 0.4)
    h = 1e-6
    for t in (0.05, 0.13, 0.2, 0.31):
        P0, V0, A0 = path(t)
        Pm, Vm, _ = path(t - h)
        Pp, Vp, _ = path(t + h)
        assert np.abs((Pp - Pm) / (2 * h) - V0).max() < 1e-8
        assert np.abs((Vp - Vm) / (2 * h) - A0).max() < 1e-7


def test_quintic_rejects_bad_inputs(model):
    with pytest.raises(ValidationError):
        quintic_path(P_HOME, (0.0, 0.0, 0.5), 0.0)
    with pytest.raises(OutOfWorkspace):
        quintic_path(P_HOME, (0.0, 0.0, 1.5), 1.0, model=model)
    # without a model the endpoints are not checked
    quintic_path(P_HOME, (0.0, 0.0, 1.5), 1.0)


def test_torque_table_zero_order_hold():
    fn = torque_from_table([0.0, 0.1, 0.2], [[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert np.array_equal(fn(-5.0), [1, 0, 0])
    assert np.array_equal(fn(0.05), [1, 0, 0])
    assert np.array_equal(fn(0.1), [0, 2, 0])
    assert np.array_equal(fn(0.15), [0, 2, 0])
    assert np.array_equal(fn(7.0), [0, 0, 3])
    with pytest.raises(ValidationError):
        torque_from_table([], [])
    with pytest.raises(ValidationError):
        torque_from_table([0.2, 0.1], [[0, 0, 0], [0, 0, 0]])


def test_free_floating_at_rest_stays_put_bitwise(model):
    m0 = model_with_gravity(model, (0.0, 0.0, 0.0))
    res = simulate(m0, P_HOME, (0.0, 0.0, 0.0), config=SimConfig(dt=1e-3, t_end=0.05))
    assert res.completed and res.stop_reason is None
    for s in res.samples:
        assert np.array_equal(s.P, np.asarray(P_HOME))
        assert np.all(s.V == 0.0) and np.all(s.A == 0.0)
        assert np.all(s.Gamma == 0.0)


def _track_error(model, dt, integrator):
    path = quintic_path(P_HOME, (0.06, -0.05, 0.55), 0.2, model=model)
    fn = feedforward_torque(model, path)
    res = simulate(
        model, P_HOME, (0.0, 0.0, 0.0),
        torque_fn=fn,
        config=SimConfig(dt=dt, t_end=0.2, integrator=integrator, record_every=50),
    )
    assert res.completed
    last = res.samples[-1]
    P_ref, V_ref, _ = path(last.t)
    return max(np.abs(last.P - P_ref).max(), np.abs(last.V - V_ref).max())


def test_rk4_error_shrinks_at_fourth_order(model):
    e_coarse = _track_error(model, 4e-3, "rk4")
    e_fine = _track_error(model, 2e-3, "rk4")
    assert e_coarse < 1e-6
    assert e_coarse / e_fine >= 8.0


def test_euler_error_shrinks_at_first_order(model):
    e_coarse = _track_error(model, 4e-3, "euler")
    e_fine = _track_error(model, 2e-3, "euler")
    assert 1.5 <= e_coarse / e_fine <= 3.0
    # and rk4 beats euler outright at the same step
    assert _track_error(model, 4e-3, "rk4") < e_coarse / 100.0


def test_workspace_exit_stops_run_with_reason(model):
    res = simulate(
        model, P_HOME, (0.0, 0.0, 0.0),
        torque_fn=lambda t: np.array([0.0, 300.0, 0.0]),
        config=SimConfig(dt=1e-3, t_end=2.0),
    )
    assert not res.completed
    assert "arcsine" in res.stop_reason
    assert len(res.samples) >= 1
    assert res.samples[-1].t < 2.0


def test_initial_state_outside_workspace_raises(model):
    with pytest.raises(OutOfWorkspace) as err:
        simulate(model, (0.0, 0.0, 1.5), (0.0, 0.0, 0.0))
    assert err.value.chain == 2
    assert err.value.arcsine == 1


def test_record_every_thins_but_keeps_last(model):
    cfg = SimConfig(dt=1e-3, t_end=0.01, record_every=3)
    res = simulate(model, P_HOME, (0.0, 0.0, 0.0), config=cfg)
    times = [s.t for s in res.samples]
    assert times == pytest.approx([0.0, 0.003, 0.006, 0.009, 0.01], abs=1e-12)


def test_simulation_is_deterministic(model):
    cfg = SimConfig(dt=1e-3, t_end=0.02)
    a = simulate(model, P_HOME, (0.01, 0.0, 0.0), config=cfg)
    b = simulate(model, P_HOME, (0.01, 0.0, 0.0), config=cfg)
    for sa, sb in zip(a.samples, b.samples):
        assert sa.t == sb.t
        assert np.array_equal(sa.P, sb.P)
        assert np.array_equal(sa.V, sb.V)
        assert np.array_equal(sa.Gamma, sb.Gamma)


def test_csv_round_trip_is_exact(model, tmp_path):
    res = simulate(model, P_HOME, (0.01, -0.02, 0.0), config=SimConfig(dt=1e-3, t_end=0.01))
    out = tmp_path / "run.csv"
    write_trajectory_csv(res.samples, out)
    assert out.read_text().splitlines()[0] == CSV_HEADER
    back = read_trajectory_csv(out)
    assert len(back) == len(res.samples)
    for s, r in zip(res.samples, back):
        assert r.t == s.t
        assert np.array_equal(r.P, s.P)
        assert np.array_equal(r.V, s.V)
        assert np.array_equal(r.A, s.A)
        assert np.array_equal(r.L, s.L)
        assert np.array_equal(r.Gamma, s.Gamma)
        assert r.Ldot is None


def test_csv_header_is_checked(model, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,x\n0.0,1.0\n")
    with pytest.raises(ParseError):
        read_trajectory_csv(bad)


def test_json_round_trip_keeps_joint_rates(model, tmp_path):
    res = simulate(model, P_HOME, (0.01, -0.02, 0.0), config=SimConfig(dt=1e-3, t_end=0.01))
    out = tmp_path / "run.json"
    write_trajectory_json(res.samples, out)
    back = read_trajectory_json(out)
    assert len(back) == len(res.samples)
    for s, r in zip(res.samples, back):
        assert r.t == s.t
        assert np.array_equal(r.P, s.P)
        assert np.array_equal(r.Ldot, s.Ldot)


def test_bad_run_settings_rejected(model):
    with pytest.raises(ValidationError):
        simulate(model, P_HOME, (0, 0, 0), config=SimConfig(integrator="rk5"))
    with pytest.raises(ValidationError):
        simulate(model, P_HOME, (0, 0, 0), config=SimConfig(dt=0.0))
    with pytest.raises(ValidationError):
        simulate(model, P_HOME, (0, 0, 0), config=SimConfig(t_end=-1.0))
    with pytest.raises(ValidationError):
        simulate(model, P_HOME, (0, 0, 0), config=SimConfig(record_every=0))
