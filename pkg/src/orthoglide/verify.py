"""Self-verification: independent oracles and a named battery of checks.

Every load-bearing quantity in the package is cross-checked here against an
implementation that takes a different route to the same number: finite
differences for Jacobians and gradients, energy bookkeeping for the
dynamics, a composite-rigid-body construction for the tree inertia, and a
Lagrangian reconstruction of the actuator efforts. run_verification drives
the whole battery with seeded sampling and returns one report per check.

Sample counts scale with the n_samples argument (their documented values
hold at n_samples=100). Tolerances can be overridden per check, either by
the [verify] section of a model config or by the tolerances argument.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .chain_dynamics import (
    G_T,
    TreeState,
    chain_bias_h,
    chain_inertia_A,
    chain_kinetic_energy,
    chain_reaction_force,
    chain_torques_H,
    closure_expand,
    tree_newton_euler,
)
from .errors import NumericalError, OrthoglideError, OutOfWorkspace
from .kinematics import (
    chain_forward_point,
    chain_frames,
    chain_jacobian,
    chain_jacobian_dot,
    chain_jacobian_inverse,
    igm,
    ik_acceleration,
    ik_velocity,
    parallelogram_gap,
    robot_jacobian_inverse,
)
from .model import model_with_gravity
from .robot_dynamics import (
    assemble_robot_dyn,
    direct_dynamics,
    inverse_dynamics,
    platform_force,
)
from .simulate import SimConfig, feedforward_torque, quintic_path, simulate

DEFAULT_SEED = 42


# ---------------------------------------------------------------------------
# energies


def _tree_frames(pack, q6):
    q7 = np.zeros(7)
    q7[:5] = q6[:5]
    q7[6] = q6[5]
    R = np.empty((7, 3, 3))
    O = np.empty((7, 3))
    _kernels.chain_frames(pack.mdh7, pack.parents7, q7, R, O)
    return R, O


def _tree_potential(model, i, q6) -> float:
    """Gravity potential of the free 7-body tree of chain i."""
    pack = model._packs[i]
    R, O = _tree_frames(pack, np.asarray(q6, dtype=float).reshape(6))
    g = model.gravity
    U = 0.0
    for b in range(7):
        M = pack.inertia7[b, 0]
        ms = pack.inertia7[b, 1:4]
        U -= g @ (M * O[b] + R[b] @ ms)
    return float(U)


def chain_potential_energy(model, i, q) -> float:
    """Gravity potential of chain i at free coordinates q = (q1, q2, q3)."""
    return _tree_potential(model, i, closure_expand(q).q)


def potential_energy(model, p) -> float:
    """Gravity potential of the whole robot at platform point p."""
    p = np.asarray(p, dtype=float).reshape(3)
    _, chain_q = igm(model, p)
    U = -model.platform_mass * float(model.gravity @ p)
    for i in range(3):
        U += chain_potential_energy(model, i, chain_q[i])
    return U


def kinetic_energy(model, p, v) -> float:
    """Kinetic energy of the whole robot at platform state (p, v)."""
    v = np.asarray(v, dtype=float).reshape(3)
    _, chain_q = igm(model, p)
    _, chain_qd = ik_velocity(model, chain_q, v)
    T = 0.5 * model.platform_mass * float(v @ v)
    for i in range(3):
        T += chain_kinetic_energy(model, i, chain_q[i], chain_qd[i])
    return T


def total_energy(model, p, v) -> float:
    return kinetic_energy(model, p, v) + potential_energy(model, p)


# ---------------------------------------------------------------------------
# oracles


def lagrangian_idm_oracle(model, p, v, vdot) -> np.ndarray:
    """Actuator efforts reconstructed from energies alone.

    Builds d/dt(dT/dV) - dT/dP + dU/dP by nested central differences and
    maps the resulting platform force to the actuators. Shares no dynamics
    code with the recursive implementation; good to about 1e-7 relative.
    The velocity gradient uses a large step because T is exactly quadratic
    in V, which keeps roundoff out of the outer time derivative.
    """
    p = np.asarray(p, dtype=float).reshape(3)
    v = np.asarray(v, dtype=float).reshape(3)
    vdot = np.asarray(vdot, dtype=float).reshape(3)
    h_v = 0.1
    h_t = 1e-6
    h_p = 1e-6

    def dT_dV(pp, vv):
        out = np.empty(3)
        for k in range(3):
            e = np.zeros(3)
            e[k] = h_v
            out[k] = (kinetic_energy(model, pp, vv + e) - kinetic_energy(model, pp, vv - e)) / (2.0 * h_v)
        return out

    p_plus = p + h_t * v + 0.5 * h_t * h_t * vdot
    p_minus = p - h_t * v + 0.5 * h_t * h_t * vdot
    v_plus = v + h_t * vdot
    v_minus = v - h_t * vdot
    ddt_dT_dV = (dT_dV(p_plus, v_plus) - dT_dV(p_minus, v_minus)) / (2.0 * h_t)

    dT_dP = np.empty(3)
    dU_dP = np.empty(3)
    for k in range(3):
        e = np.zeros(3)
        e[k] = h_p
        dT_dP[k] = (kinetic_energy(model, p + e, v) - kinetic_energy(model, p - e, v)) / (2.0 * h_p)
        dU_dP[k] = (potential_energy(model, p + e) - potential_energy(model, p - e)) / (2.0 * h_p)

    f_cart = ddt_dT_dV - dT_dP + dU_dP
    _, chain_q = igm(model, p)
    Jp_inv = robot_jacobian_inverse(model, chain_q)
    return np.linalg.solve(Jp_inv.T, f_cart)


def _skew(u):
    return np.array([[0.0, -u[2], u[1]], [u[2], 0.0, -u[0]], [-u[1], u[0], 0.0]])


def composite_tree_inertia(model, i, q_tree) -> np.ndarray:
    """6x6 inertia of chain i's free tree by composite-rigid-body assembly.

    Works entirely in world coordinates about the world origin, so it shares
    nothing with the recursive sweep it is checked against.
    """
    pack = model._packs[i]
    q6 = np.asarray(q_tree, dtype=float).reshape(6)
    R, O = _tree_frames(pack, q6)
    Ms = np.zeros(7)
    hs = np.zeros((7, 3))
    Js = np.zeros((7, 3, 3))
    for b in range(7):
        M = pack.inertia7[b, 0]
        ms = pack.inertia7[b, 1:4]
        J = pack.inertia7[b, 4:13].reshape(3, 3)
        h_w = R[b] @ ms
        Sp = _skew(O[b])
        Sh = _skew(h_w)
        Ms[b] = M
        hs[b] = h_w + M * O[b]
        Js[b] = R[b] @ J @ R[b].T - Sp @ Sh - Sh @ Sp - M * (Sp @ Sp)
    for b in range(6, 0, -1):
        par = pack.parents7[b]
        Ms[par] += Ms[b]
        hs[par] += hs[b]
        Js[par] += Js[b]

    joint_rows = (0, 1, 2, 3, 4, 6)
    row_to_idx = {r: k for k, r in enumerate(joint_rows)}
    screws = {}
    for row in joint_rows:
        axis = R[row][:, 2]
        if pack.types7[row] == 1:
            screws[row] = (np.zeros(3), axis.copy())
        else:
            screws[row] = (axis.copy(), np.cross(O[row], axis))

    Mt = np.zeros((6, 6))
    for jj, rj in enumerate(joint_rows):
        w, v0 = screws[rj]
        pdot = Ms[rj] * v0 + np.cross(w, hs[rj])
        ldot = np.cross(hs[rj], v0) + Js[rj] @ w
        r = rj
        while r >= 0:
            if r in row_to_idx:
                wk, vk = screws[r]
                Mt[row_to_idx[r], jj] = wk @ ldot + vk @ pdot
            r = int(pack.parents7[r])
    iu = np.triu_indices(6, 1)
    Mt[(iu[1], iu[0])] = Mt[iu]
    return Mt


# ---------------------------------------------------------------------------
# seeded sampling helpers


def sample_platform_points(model, rng, n, margin=0.15):
    """Interior platform points, rejection sampled inside a centered ball.

    Points are kept only if every chain reaches them with |cos q3| and
    |sin q2| at least margin, which keeps finite-difference checks away
    from the fold singularities.
    """
    chain0 = model.chains[0]
    pack0 = model._packs[0]
    center = pack0.anchor + pack0.axis * (chain0.d4 + chain0.d6)
    radius = 0.3 * chain0.d4
    pts = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 400 * n + 400:
            raise NumericalError("workspace interior sampling failed; model too constrained")
        x = rng.normal(size=3)
        nx = float(np.linalg.norm(x))
        if nx < 1e-12:
            continue
        p = center + radius * (rng.random() ** (1.0 / 3.0)) * x / nx
        try:
            _, chain_q = igm(model, p)
        except OutOfWorkspace:
            continue
        ok = True
        for i in range(3):
            if abs(math.cos(chain_q[i, 2])) < margin or abs(math.sin(chain_q[i, 1])) < margin:
                ok = False
                break
        if ok:
            pts.append(p)
    return pts


def _sample_state(model, rng):
    p = sample_platform_points(model, rng, 1)[0]
    v = rng.normal(0.0, 0.3, 3)
    a = rng.normal(0.0, 1.0, 3)
    return p, v, a


def _sample_chain_q(rng):
    q1 = rng.uniform(-0.2, 0.2)
    q2 = -0.5 * math.pi + rng.uniform(-1.2, 1.2)
    q3 = rng.uniform(-1.2, 1.2)
    return np.array([q1, q2, q3])


def _sample_tree_q(rng):
    q6 = rng.uniform(-1.2, 1.2, 6)
    q6[0] = rng.uniform(-0.2, 0.2)
    q6[4] -= 0.5 * math.pi
    return q6


# ---------------------------------------------------------------------------
# the check battery


@dataclass(frozen=True)
class OracleReport:
    check_name: str
    max_rel_err: float
    samples: int
    tolerance: float
    passed: bool

    def as_dict(self):
        return {
            "check_name": self.check_name,
            "max_rel_err": self.max_rel_err,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _rel(delta, ref) -> float:
    return float(np.abs(delta).max() / (1.0 + np.abs(ref).max()))


def _check_igm_round_trip(model, rng, n):
    worst = 0.0
    for p in sample_platform_points(model, rng, n):
        _, chain_q = igm(model, p)
        for i in range(3):
            worst = max(worst, float(np.abs(chain_forward_point(model, i, chain_q[i]) - p).max()))
    return worst, n


def _check_jacobian_fd(model, rng, n):
    h = 1e-6
    worst = 0.0
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q = _sample_chain_q(rng)
        J = chain_jacobian(model, i, q)
        Jfd = np.empty((3, 3))
        for k in range(3):
            e = np.zeros(3)
            e[k] = h
            Jfd[:, k] = (chain_forward_point(model, i, q + e) - chain_forward_point(model, i, q - e)) / (2.0 * h)
        worst = max(worst, _rel(J - Jfd, J))
    return worst, n


def _check_jacobian_inverse_identity(model, rng, n):
    worst = 0.0
    eye = np.eye(3)
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q = _sample_chain_q(rng)
        prod = chain_jacobian(model, i, q) @ chain_jacobian_inverse(model, i, q)
        worst = max(worst, float(np.abs(prod - eye).max()))
    return worst, n


def _check_robot_rows(model, rng, n):
    worst = 0.0
    for p in sample_platform_points(model, rng, n):
        _, chain_q = igm(model, p)
        Jp_inv = robot_jacobian_inverse(model, chain_q)
        for i in range(3):
            row = chain_jacobian_inverse(model, i, chain_q[i])[0]
            worst = max(worst, float(np.abs(Jp_inv[i] - row).max()))
    return worst, n


def _check_jacobian_dot_fd(model, rng, n):
    h = 1e-6
    worst = 0.0
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q = _sample_chain_q(rng)
        qd = rng.normal(0.0, 1.0, 3)
        Jd = chain_jacobian_dot(model, i, q, qd)
        Jfd = (chain_jacobian(model, i, q + h * qd) - chain_jacobian(model, i, q - h * qd)) / (2.0 * h)
        worst = max(worst, _rel(Jd - Jfd, Jd))
    return worst, n


def _check_acceleration_consistency(model, rng, n):
    h = 1e-4
    worst = 0.0
    used = 0
    for _ in range(n):
        a, b = sample_platform_points(model, rng, 2)
        path = quintic_path(a, b, 1.0, model=model)
        for t in (0.2, 0.35, 0.5, 0.65, 0.8):
            P, V, A = path(t)
            _, cq = igm(model, P)
            _, cqm = igm(model, path(t - h)[0])
            _, cqp = igm(model, path(t + h)[0])
            _, cqd = ik_velocity(model, cq, V)
            for i in range(3):
                qdd = ik_acceleration(model, i, cq[i], cqd[i], A)
                qdd_fd = (cqp[i] - 2.0 * cq[i] + cqm[i]) / (h * h)
                qd_fd = (cqp[i] - cqm[i]) / (2.0 * h)
                worst = max(worst, _rel(qdd - qdd_fd, qdd))
                worst = max(worst, _rel(cqd[i] - qd_fd, cqd[i]))
            used += 1
    return worst, used


def _check_closure_gap(model, rng, n):
    worst = 0.0
    for _ in range(n):
        i = int(rng.integers(0, 3))
        worst = max(worst, parallelogram_gap(model, i, _sample_chain_q(rng)))
    return worst, n


def _check_wrist_axis(model, rng, n):
    worst = 0.0
    for _ in range(n):
        i = int(rng.integers(0, 3))
        R, _ = chain_frames(model, i, _sample_chain_q(rng))
        worst = max(worst, float(np.abs(R[4][:, 0] - model._packs[i].axis).max()))
    return worst, n


def _check_tree_inertia_crb(model, rng, n):
    worst = 0.0
    zero_g = np.zeros(3)
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q6 = _sample_tree_q(rng)
        M_crb = composite_tree_inertia(model, i, q6)
        M_ne = np.empty((6, 6))
        for k in range(6):
            e = np.zeros(6)
            e[k] = 1.0
            ts = TreeState(q=q6, qd=np.zeros(6), qdd=e)
            M_ne[:, k] = tree_newton_euler(model, i, ts, gravity=zero_g)
        worst = max(worst, _rel(M_ne - M_crb, M_crb))
    return worst, n


def _check_gravity_gradient(model, rng, n):
    h = 1e-6
    worst = 0.0
    zero6 = np.zeros(6)
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q6 = _sample_tree_q(rng)
        gam = tree_newton_euler(model, i, TreeState(q=q6, qd=zero6, qdd=zero6))
        grad = np.empty(6)
        for k in range(6):
            e = np.zeros(6)
            e[k] = h
            grad[k] = (_tree_potential(model, i, q6 + e) - _tree_potential(model, i, q6 - e)) / (2.0 * h)
        worst = max(worst, _rel(gam - grad, gam))
    return worst, n


def _check_torque_decomposition(model, rng, n):
    worst = 0.0
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q = _sample_chain_q(rng)
        qd = rng.normal(0.0, 1.0, 3)
        qdd = rng.normal(0.0, 2.0, 3)
        H = chain_torques_H(model, i, q, qd, qdd)
        recomposed = chain_inertia_A(model, i, q) @ qdd + chain_bias_h(model, i, q, qd)
        worst = max(worst, _rel(H - recomposed, H))
    return worst, n


def _check_inertia_symmetry(model, rng, n):
    worst = 0.0
    zero_g = np.zeros(3)
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q = _sample_chain_q(rng)
        A = np.empty((3, 3))
        for k in range(3):
            qdd = np.zeros(3)
            qdd[k] = 1.0
            A[:, k] = G_T @ tree_newton_euler(model, i, closure_expand(q, None, qdd), gravity=zero_g)
        worst = max(worst, float(np.abs(A - A.T).max() / max(1.0, np.abs(A).max())))
    return worst, n


def _check_inertia_spd(model, rng, n):
    worst = 0.0
    for _ in range(n):
        i = int(rng.integers(0, 3))
        A = chain_inertia_A(model, i, _sample_chain_q(rng))
        lam = float(np.linalg.eigvalsh(A).min())
        worst = max(worst, max(0.0, -lam) / max(1.0, float(np.abs(A).max())))
    for p in sample_platform_points(model, rng, max(1, n // 4)):
        _, cq = igm(model, p)
        A_robot, _ = assemble_robot_dyn(model, cq, np.zeros((3, 3)))
        lam = float(np.linalg.eigvalsh(A_robot).min())
        worst = max(worst, max(0.0, -lam) / max(1.0, float(np.abs(A_robot).max())))
    return worst, n


def _check_chain_kinetic_quadratic(model, rng, n):
    worst = 0.0
    for _ in range(n):
        i = int(rng.integers(0, 3))
        q = _sample_chain_q(rng)
        qd = rng.normal(0.0, 1.0, 3)
        T = chain_kinetic_energy(model, i, q, qd)
        Tq = 0.5 * float(qd @ chain_inertia_A(model, i, q) @ qd)
        worst = max(worst, abs(T - Tq) / (1.0 + abs(T)))
    return worst, n


def _check_robot_kinetic_quadratic(model, rng, n):
    worst = 0.0
    for _ in range(n):
        p, v, _ = _sample_state(model, rng)
        _, cq = igm(model, p)
        _, cqd = ik_velocity(model, cq, v)
        A_robot, _ = assemble_robot_dyn(model, cq, cqd)
        T = kinetic_energy(model, p, v)
        Tq = 0.5 * float(v @ A_robot @ v)
        worst = max(worst, abs(T - Tq) / (1.0 + abs(T)))
    return worst, n


def _check_lagrangian(model, rng, n):
    worst = 0.0
    for _ in range(n):
        p, v, a = _sample_state(model, rng)
        gam = inverse_dynamics(model, p, v, a)
        gam_oracle = lagrangian_idm_oracle(model, p, v, a)
        worst = max(worst, _rel(gam - gam_oracle, gam))
    return worst, n


def _check_reaction_balance(model, rng, n):
    worst = 0.0
    for _ in range(n):
        p, v, a = _sample_state(model, rng)
        gam = inverse_dynamics(model, p, v, a)
        _, cq = igm(model, p)
        _, cqd = ik_velocity(model, cq, v)
        total = np.zeros(3)
        for i in range(3):
            qdd = ik_acceleration(model, i, cq[i], cqd[i], a)
            total += chain_reaction_force(model, i, cq[i], cqd[i], qdd, gam[i])
        worst = max(worst, float(np.abs(total - platform_force(model, a)).max()))
    return worst, n


def _check_reaction_unit_column(model, rng, n):
    worst = 0.0
    m0 = model_with_gravity(model, (0.0, 0.0, 0.0))
    zero = np.zeros(3)
    for p in sample_platform_points(model, rng, n):
        _, cq = igm(m0, p)
        Jp_inv = robot_jacobian_inverse(m0, cq)
        for i in range(3):
            f = chain_reaction_force(m0, i, cq[i], zero, zero, 1.0)
            worst = max(worst, float(np.abs(f - Jp_inv[i]).max()))
    return worst, n


def _check_idm_ddm_round_trip(model, rng, n):
    worst = 0.0
    for _ in range(n):
        p, v, a = _sample_state(model, rng)
        gam = inverse_dynamics(model, p, v, a)
        a2 = direct_dynamics(model, p, v, gam)
        worst = max(worst, _rel(a2 - a, a))
    return worst, n


def _check_static_gradient(model, rng, n):
    h = 1e-6
    worst = 0.0
    zero = np.zeros(3)
    for p in sample_platform_points(model, rng, n):
        gam = inverse_dynamics(model, p, zero, zero)
        grad = np.empty(3)
        for k in range(3):
            e = np.zeros(3)
            e[k] = h
            grad[k] = (potential_energy(model, p + e) - potential_energy(model, p - e)) / (2.0 * h)
        _, cq = igm(model, p)
        expected = np.linalg.solve(robot_jacobian_inverse(model, cq).T, grad)
        worst = max(worst, _rel(gam - expected, gam))
    return worst, n


_DRIFT_GRAVITY = (0.0, 0.0, -0.2)
_DRIFT_V0 = (0.05, -0.04, 0.03)


def _drift_model(model):
    # full gravity would pull the free assembly out of the workspace in well
    # under a second, so the conservation run uses a weak field; RK4 drift
    # is field-independent in character
    return model_with_gravity(model, _DRIFT_GRAVITY)


def _check_energy_drift(model, rng, n):
    m = _drift_model(model)
    chain0 = model.chains[0]
    pack0 = model._packs[0]
    p0 = pack0.anchor + pack0.axis * (chain0.d4 + chain0.d6)
    res = simulate(m, p0, _DRIFT_V0, None, SimConfig(dt=1e-4, t_end=1.0, record_every=10))
    if not res.completed:
        raise NumericalError("conservation run left the workspace: %s" % res.stop_reason)
    E = np.array([total_energy(m, s.P, s.V) for s in res.samples])
    T = np.array([kinetic_energy(m, s.P, s.V) for s in res.samples])
    # the potential offset is arbitrary, so normalize drift by the actual
    # energy exchange seen during the run
    scale = max(float(T.max()), float(np.ptp(E - T)), 1e-9)
    drift = float(E.max() - E.min()) / scale
    return drift, len(res.samples)


def _tracking_setup(model, rng):
    a, b = sample_platform_points(model, rng, 2)
    path = quintic_path(a, b, 0.5, model=model)
    return path, a


def _check_tracking(model, rng, n):
    path, p0 = _tracking_setup(model, rng)
    torque = feedforward_torque(model, path)
    res = simulate(model, p0, np.zeros(3), torque, SimConfig(dt=1e-4, t_end=0.5, record_every=10))
    if not res.completed:
        raise NumericalError("tracking run left the workspace: %s" % res.stop_reason)
    worst = 0.0
    for s in res.samples:
        worst = max(worst, float(np.linalg.norm(s.P - path(s.t)[0])))
    return worst, len(res.samples)


def _check_power_balance(model, rng, n):
    path, p0 = _tracking_setup(model, rng)
    torque = feedforward_torque(model, path)
    dt = 5e-4
    res = simulate(model, p0, np.zeros(3), torque, SimConfig(dt=dt, t_end=0.5))
    if not res.completed:
        raise NumericalError("power balance run left the workspace: %s" % res.stop_reason)
    samples = res.samples
    E = np.array([total_energy(model, s.P, s.V) for s in samples])
    P_in = np.array([float(s.Gamma @ s.Ldot) for s in samples])
    scale = 1.0 + float(np.abs(P_in).max())
    worst = 0.0
    for k in range(1, len(samples) - 1):
        dEdt = (E[k + 1] - E[k - 1]) / (2.0 * dt)
        worst = max(worst, abs(dEdt - P_in[k]) / scale)
    return worst, len(samples) - 2


def _check_isotropic_inverse(model, rng, n):
    # the actuator axes meet at one point; there every chain folds to its
    # reference angles and the velocity map rows become the axis directions
    A = np.zeros((3, 3))
    b = np.zeros(3)
    axes = np.empty((3, 3))
    for i, pack in enumerate(model._packs):
        u = pack.axis
        P = np.eye(3) - np.outer(u, u)
        A += P
        b += P @ pack.anchor
        axes[i] = u
    K = np.linalg.solve(A, b)
    _, cq = igm(model, K)
    Jp_inv = robot_jacobian_inverse(model, cq)
    return float(np.abs(Jp_inv - axes).max()), 1


_CHECKS = (
    ("igm_forward_round_trip", 1000, 1e-9, _check_igm_round_trip),
    ("jacobian_fd", 200, 1e-6, _check_jacobian_fd),
    ("jacobian_inverse_identity", 1000, 1e-10, _check_jacobian_inverse_identity),
    ("robot_rows_match_chains", 100, 0.0, _check_robot_rows),
    ("jacobian_dot_fd", 200, 1e-5, _check_jacobian_dot_fd),
    ("acceleration_consistency", 10, 1e-4, _check_acceleration_consistency),
    ("closure_gap", 100, 1e-12, _check_closure_gap),
    ("wrist_axis_fixed", 100, 1e-12, _check_wrist_axis),
    ("tree_inertia_crb", 50, 1e-9, _check_tree_inertia_crb),
    ("gravity_vs_potential_gradient", 100, 1e-5, _check_gravity_gradient),
    ("torque_decomposition", 100, 1e-9, _check_torque_decomposition),
    ("inertia_symmetry", 100, 1e-10, _check_inertia_symmetry),
    ("inertia_positive_definite", 100, 0.0, _check_inertia_spd),
    ("chain_kinetic_quadratic", 100, 1e-9, _check_chain_kinetic_quadratic),
    ("robot_kinetic_quadratic", 100, 1e-9, _check_robot_kinetic_quadratic),
    ("lagrangian_match", 200, 1e-4, _check_lagrangian),
    ("reaction_balance", 100, 1e-9, _check_reaction_balance),
    ("reaction_unit_column", 100, 1e-12, _check_reaction_unit_column),
    ("idm_ddm_round_trip", 1000, 1e-8, _check_idm_ddm_round_trip),
    ("static_vs_potential_gradient", 100, 1e-5, _check_static_gradient),
    ("power_balance", 1, 1e-4, _check_power_balance),
    ("energy_drift_conservative", 1, 1e-6, _check_energy_drift),
    ("tracking_error", 1, 1e-5, _check_tracking),
    ("isotropic_inverse", 1, 1e-10, _check_isotropic_inverse),
)

TOLERANCES = {name: tol for name, _, tol, _ in _CHECKS}
SAMPLE_COUNTS = {name: cnt for name, cnt, _, _ in _CHECKS}
CHECK_NAMES = tuple(name for name, _, _, _ in _CHECKS)


def run_verification(model, seed=DEFAULT_SEED, n_samples=100, tolerances=None, checks=None):
    """Run the check battery and return a list of OracleReport.

    checks, when given, restricts the battery to those names. Each check
    draws from its own seeded stream, so a subset run reproduces exactly
    what the full run sees. A check that raises records an infinite error
    instead of aborting the battery.
    """
    tols = dict(TOLERANCES)
    for src in (model.verify_overrides, tolerances or {}):
        for key, val in src.items():
            if key not in tols:
                raise NumericalError("unknown verification check '%s'" % key)
            tols[key] = float(val)
    if checks is not None:
        unknown = [c for c in checks if c not in TOLERANCES]
        if unknown:
            raise NumericalError("unknown verification check '%s'" % unknown[0])
        selected = [row for row in _CHECKS if row[0] in set(checks)]
    else:
        selected = list(_CHECKS)

    reports = []
    for name, count, _, fn in selected:
        n = max(1, int(round(count * n_samples / 100.0)))
        rng = np.random.default_rng([seed, zlib.crc32(name.encode("ascii"))])
        try:
            err, used = fn(model, rng, n)
        except OrthoglideError:
            err, used = float("inf"), 0
        tol = tols[name]
        reports.append(OracleReport(name, float(err), int(used), float(tol), bool(err <= tol)))
    return reports


def reports_by_name(reports):
    return {r.check_name: r for r in reports}


def format_report_table(reports) -> str:
    width = max(len(r.check_name) for r in reports)
    lines = []
    for r in reports:
        lines.append(
            "%-*s  %s  max_err=%-12.5g tol=%-8.3g n=%d"
            % (width, r.check_name, "pass" if r.passed else "FAIL", r.max_rel_err, r.tolerance, r.samples)
        )
    return "\n".join(lines)
