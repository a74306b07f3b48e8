"""Closed-form kinematics: inverse geometry, chain Jacobians, their rates.

Chain indices are 0-based throughout the package (0, 1, 2); error messages
report them 1-based to match the config section names. Per-chain joint
coordinates are (q1, q2, q3): actuator travel, shoulder angle, elbow angle.
q2 lives in [-pi, 0] on the working branch and q3 in [-pi/2, pi/2].
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .errors import ChainSingular, OutOfWorkspace

_HALF_PI = math.pi / 2.0
_ASIN_EDGE = 1.0 - 1e-12


def igm(model, p):
    """Inverse geometry: platform point -> actuator travels and chain angles.

    Returns (L, chain_q) where L is the (3,) vector of prismatic travels and
    chain_q is (3, 3) with row i holding (q1, q2, q3) of chain i. Raises
    OutOfWorkspace when any chain cannot reach p.
    """
    p = np.asarray(p, dtype=float).reshape(3)
    L = np.empty(3)
    chain_q = np.empty((3, 3))
    for i in range(3):
        pack = model._packs[i]
        rel = p - pack.anchor
        R = pack.R_base
        ux = R[0, 0] * rel[0] + R[1, 0] * rel[1] + R[2, 0] * rel[2]
        uy = R[0, 1] * rel[0] + R[1, 1] * rel[1] + R[2, 1] * rel[2]
        uz = R[0, 2] * rel[0] + R[1, 2] * rel[1] + R[2, 2] * rel[2]
        d4 = pack.d4
        arg1 = -uy / d4
        if not (-_ASIN_EDGE <= arg1 <= _ASIN_EDGE):
            raise OutOfWorkspace(i + 1, 1, arg1)
        q3 = math.asin(arg1)
        c3 = math.cos(q3)
        arg2 = -ux / (c3 * d4)
        if not (-_ASIN_EDGE <= arg2 <= _ASIN_EDGE):
            raise OutOfWorkspace(i + 1, 2, arg2)
        u2 = math.asin(arg2)
        q2 = -(u2 + _HALF_PI)
        q1 = uz - pack.d6 - d4 * c3 * math.cos(u2)
        L[i] = q1
        chain_q[i, 0] = q1
        chain_q[i, 1] = q2
        chain_q[i, 2] = q3
    return L, chain_q


def chain_frames(model, i, q):
    """World rotation and origin of all nine frames of chain i.

    q is (q1, q2, q3); the slaved angles follow the closure. Returns
    (R, O) with shapes (9, 3, 3) and (9, 3); row k belongs to frame k+1.
    """
    q1, q2, q3 = (float(x) for x in q)
    pack = model._packs[i]
    qv = np.array([q1, q2, q3, -q3, -q2 - _HALF_PI, 0.0, q3, -q3, 0.0])
    R = np.empty((9, 3, 3))
    O = np.empty((9, 3))
    _kernels.chain_frames(pack.mdh9, pack.parents9, qv, R, O)
    return R, O


def chain_forward_point(model, i, q):
    """Platform point reached by chain i at joint values q = (q1, q2, q3)."""
    _, O = chain_frames(model, i, q)
    return O[5].copy()


def parallelogram_gap(model, i, q) -> float:
    """Distance between the two bar tips that the closure should weld.

    Zero (to roundoff) for any q; a nonzero value means broken geometry.
    """
    _, O = chain_frames(model, i, q)
    return float(np.linalg.norm(O[7] - O[8]))


def _local_jacobian(pack, q2, q3):
    d4 = pack.d4
    c2, s2 = math.cos(q2), math.sin(q2)
    c3, s3 = math.cos(q3), math.sin(q3)
    J = np.zeros((3, 3))
    J[0, 1] = -d4 * c3 * s2
    J[0, 2] = -d4 * s3 * c2
    J[1, 2] = -d4 * c3
    J[2, 0] = 1.0
    J[2, 1] = -d4 * c3 * c2
    J[2, 2] = d4 * s3 * s2
    return J


def chain_jacobian(model, i, q):
    """3x3 map (q1dot, q2dot, q3dot) -> platform velocity, world frame."""
    pack = model._packs[i]
    return pack.R_base @ _local_jacobian(pack, float(q[1]), float(q[2]))


def chain_jacobian_dot(model, i, q, qd):
    """Time derivative of chain_jacobian at (q, qd)."""
    pack = model._packs[i]
    d4 = pack.d4
    q2, q3 = float(q[1]), float(q[2])
    qd2, qd3 = float(qd[1]), float(qd[2])
    c2, s2 = math.cos(q2), math.sin(q2)
    c3, s3 = math.cos(q3), math.sin(q3)
    Jd = np.zeros((3, 3))
    Jd[0, 1] = d4 * (s3 * s2 * qd3 - c3 * c2 * qd2)
    Jd[0, 2] = d4 * (s3 * s2 * qd2 - c3 * c2 * qd3)
    Jd[1, 2] = d4 * s3 * qd3
    Jd[2, 1] = d4 * (s3 * c2 * qd3 + c3 * s2 * qd2)
    Jd[2, 2] = d4 * (c3 * s2 * qd3 + s3 * c2 * qd2)
    return pack.R_base @ Jd


def chain_jacobian_inverse(model, i, q):
    """Numerical inverse of the chain Jacobian.

    The Jacobian determinant is d4^2 cos^2(q3) sin(q2); either factor near
    zero means the chain is at a fold and the inverse is refused.
    """
    q2, q3 = float(q[1]), float(q[2])
    if abs(math.cos(q3)) <= 1e-9:
        raise ChainSingular(i + 1, "cos(q3) = %.3g" % math.cos(q3))
    if abs(math.sin(q2)) <= 1e-9:
        raise ChainSingular(i + 1, "sin(q2) = %.3g" % math.sin(q2))
    J = chain_jacobian(model, i, q)
    try:
        return np.linalg.inv(J)
    except np.linalg.LinAlgError:  # pragma: no cover
        raise ChainSingular(i + 1, "matrix inversion failed") from None


def robot_jacobian_inverse(model, chain_q):
    """3x3 map platform velocity -> actuator rates.

    Row i is the first row of chain i's inverse Jacobian, so the result is
    exactly consistent with ik_velocity.
    """
    chain_q = np.asarray(chain_q, dtype=float).reshape(3, 3)
    Jp_inv = np.empty((3, 3))
    for i in range(3):
        Jp_inv[i] = chain_jacobian_inverse(model, i, chain_q[i])[0]
    return Jp_inv


def ik_velocity(model, chain_q, v_p):
    """Actuator and chain joint rates for a platform velocity.

    Returns (Ldot, chain_qd): the (3,) actuator rate vector and the (3, 3)
    array of per-chain joint rates.
    """
    chain_q = np.asarray(chain_q, dtype=float).reshape(3, 3)
    v_p = np.asarray(v_p, dtype=float).reshape(3)
    Ldot = np.empty(3)
    chain_qd = np.empty((3, 3))
    for i in range(3):
        qd = chain_jacobian_inverse(model, i, chain_q[i]) @ v_p
        chain_qd[i] = qd
        Ldot[i] = qd[0]
    return Ldot, chain_qd


def ik_acceleration(model, i, q, qd, vdot_p):
    """Chain joint accelerations given joint state and platform acceleration."""
    vdot_p = np.asarray(vdot_p, dtype=float).reshape(3)
    qd = np.asarray(qd, dtype=float).reshape(3)
    Jinv = chain_jacobian_inverse(model, i, q)
    Jd = chain_jacobian_dot(model, i, q, qd)
    return Jinv @ (vdot_p - Jd @ qd)
