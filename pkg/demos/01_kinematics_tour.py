"""
Kinematics tour
===============

Walks the geometry layer end to end: inverse geometry for a platform
point, forward reconstruction through the frame chain, Jacobians, and
the two fold singularities that bound each chain's working branch.
"""

import numpy as np

from orthoglide import (
    ChainSingular,
    OutOfWorkspace,
    chain_forward_point,
    chain_jacobian,
    chain_jacobian_inverse,
    default_model,
    igm,
    ik_velocity,
    parallelogram_gap,
    robot_jacobian_inverse,
)

model = default_model()

# a comfortable interior point: straight under the first rail
P = np.array([0.0, 0.0, 0.6])
L, chain_q = igm(model, P)
print("platform point:", P)
print("actuated joints L:", L)
for i in range(3):
    print("chain %d joints (q1, q2, q3): %s" % (i + 1, np.round(chain_q[i], 6)))

# forward reconstruction must land back on P for every chain
for i in range(3):
    P_back = chain_forward_point(model, i, chain_q[i])
    print("chain %d forward point error: %.3e" % (i + 1, np.abs(P_back - P).max()))
    # the parallelogram stays closed too
    print("chain %d closure gap: %.3e" % (i + 1, parallelogram_gap(model, i, chain_q[i])))

# velocity level: platform velocity maps to joint rates through each chain
V = np.array([0.05, -0.02, 0.04])
Ldot, chain_qd = ik_velocity(model, chain_q, V)
print("\nplatform velocity:", V)
print("rail rates Ldot:", np.round(Ldot, 6))
for i in range(3):
    J = chain_jacobian(model, i, chain_q[i])
    print("chain %d J @ qd reproduces V: %.3e" % (i + 1, np.abs(J @ chain_qd[i] - V).max()))

# the robot-level inverse Jacobian stacks the first row of each chain inverse
Jp_inv = robot_jacobian_inverse(model, chain_q)
print("\nrobot inverse Jacobian:\n", np.round(Jp_inv, 6))
print("Jp_inv @ V equals Ldot: %.3e" % np.abs(Jp_inv @ V - Ldot).max())

# at the pose where the three rail axes meet, velocity amplification is
# exactly one: the inverse Jacobian becomes a permutation
P_iso = np.array([0.0, 0.0, 0.2])
_, q_iso = igm(model, P_iso)
print("\nisotropic pose inverse Jacobian:\n", np.round(robot_jacobian_inverse(model, q_iso), 12))

# outside the reachable shell the arcsine argument leaves [-1, 1]
try:
    igm(model, (0.0, 0.0, 1.5))
except OutOfWorkspace as exc:
    print("\nout of reach:", exc)

# folding the parallelogram flat (q3 = pi/2) kills the Jacobian
try:
    chain_jacobian_inverse(model, 0, (0.0, -np.pi / 2, np.pi / 2))
except ChainSingular as exc:
    print("singular fold:", exc)
