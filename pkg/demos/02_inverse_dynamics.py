"""
Inverse dynamics walk-through
=============================

Builds the actuator forces for a platform motion state from the chain
level up: tree recursion per chain, inertia/bias split, pull-back to
platform coordinates, and the final force balance check.
"""

import numpy as np

from orthoglide import (
    cartesian_chain_model,
    chain_bias_h,
    chain_inertia_A,
    chain_reaction_force,
    chain_torques_H,
    default_model,
    igm,
    ik_acceleration,
    ik_velocity,
    inverse_dynamics,
    platform_force,
    robot_jacobian_inverse,
)

model = default_model()

# pick a motion state: position, velocity, acceleration of the platform
P = np.array([0.03, -0.04, 0.58])
V = np.array([0.10, 0.05, -0.08])
A = np.array([0.50, -0.30, 0.90])

L, chain_q = igm(model, P)
Ldot, chain_qd = ik_velocity(model, chain_q, V)

print("state P=%s V=%s Vdot=%s" % (P, V, A))

# chain level: each leg is a small serial tree; its torque vector splits
# into inertia times acceleration plus a velocity/gravity bias
for i in range(3):
    qdd = ik_acceleration(model, i, chain_q[i], chain_qd[i], A)
    H = chain_torques_H(model, i, chain_q[i], chain_qd[i], qdd)
    A_i = chain_inertia_A(model, i, chain_q[i])
    h_i = chain_bias_h(model, i, chain_q[i], chain_qd[i])
    print("chain %d: H=%s  split error %.2e"
          % (i + 1, np.round(H, 4), np.abs(H - (A_i @ qdd + h_i)).max()))

# the same model mapped to platform coordinates (congruence through the
# chain Jacobian inverse)
for i in range(3):
    A_x, h_x = cartesian_chain_model(model, i, chain_q[i], chain_qd[i])
    print("chain %d pulled-back inertia eigenvalues: %s"
          % (i + 1, np.round(np.linalg.eigvalsh(A_x), 4)))

# robot level: one call does all of the above and solves for the rail forces
Gamma = inverse_dynamics(model, P, V, A)
print("\nactuator forces Gamma:", np.round(Gamma, 6))

# sanity: the three chain reactions on the platform must balance the
# platform's own inertia and weight
total = np.zeros(3)
for i in range(3):
    qdd = ik_acceleration(model, i, chain_q[i], chain_qd[i], A)
    total += chain_reaction_force(model, i, chain_q[i], chain_qd[i], qdd, Gamma[i])
print("reaction balance error: %.3e" % np.abs(total - platform_force(model, A)).max())

# static special case: holding still costs exactly the gravity load
Gamma_hold = inverse_dynamics(model, P, np.zeros(3), np.zeros(3))
print("\nholding forces at rest:", np.round(Gamma_hold, 6))
Jp_inv = robot_jacobian_inverse(model, chain_q)
print("platform weight through the structure:",
      np.round(np.linalg.solve(Jp_inv.T, -model.platform_mass * model.gravity), 6),
      "(differs from holding forces by the leg weights)")
