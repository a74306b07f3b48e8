"""Kinematics and dynamics engine for a 3-DOF translational parallel robot.

Quick start:

    from orthoglide import default_model, igm, inverse_dynamics
    m = default_model()
    L, chain_q = igm(m, (0.0, 0.0, 0.6))
    gamma = inverse_dynamics(m, (0.0, 0.0, 0.6), (0.1, 0, 0), (0, 0, 1.0))
"""

from .errors import (
    ChainSingular,
    NumericalError,
    OrthoglideError,
    OutOfWorkspace,
    ParseError,
    ValidationError,
)
from .model import (
    DEFAULT_CONFIG,
    ChainGeometry,
    LinkInertia,
    MdhJointParams,
    RobotModel,
    default_model,
    dumps_model,
    frame_transform,
    load_model,
    model_with_gravity,
    validate_model,
)
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
from .chain_dynamics import (
    G,
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
from .robot_dynamics import (
    assemble_robot_dyn,
    cartesian_chain_model,
    direct_dynamics,
    inverse_dynamics,
    platform_force,
)
from .simulate import (
    CSV_HEADER,
    SimConfig,
    SimResult,
    TrajectorySample,
    feedforward_torque,
    quintic_path,
    read_trajectory_csv,
    read_trajectory_json,
    simulate,
    torque_from_table,
    write_trajectory_csv,
    write_trajectory_json,
)
from .verify import (
    CHECK_NAMES,
    DEFAULT_SEED,
    SAMPLE_COUNTS,
    TOLERANCES,
    OracleReport,
    chain_potential_energy,
    composite_tree_inertia,
    format_report_table,
    kinetic_energy,
    lagrangian_idm_oracle,
    potential_energy,
    reports_by_name,
    run_verification,
    total_energy,
)

__version__ = "0.1.0"

__all__ = [
    "CHECK_NAMES",
    "CSV_HEADER",
    "ChainGeometry",
    "ChainSingular",
    "DEFAULT_CONFIG",
    "DEFAULT_SEED",
    "G",
    "G_T",
    "LinkInertia",
    "MdhJointParams",
    "NumericalError",
    "OracleReport",
    "OrthoglideError",
    "OutOfWorkspace",
    "ParseError",
    "RobotModel",
    "SAMPLE_COUNTS",
    "SimConfig",
    "SimResult",
    "TOLERANCES",
    "TrajectorySample",
    "TreeState",
    "ValidationError",
    "assemble_robot_dyn",
    "cartesian_chain_model",
    "chain_bias_h",
    "chain_forward_point",
    "chain_frames",
    "chain_inertia_A",
    "chain_jacobian",
    "chain_jacobian_dot",
    "chain_jacobian_inverse",
    "chain_kinetic_energy",
    "chain_potential_energy",
    "chain_reaction_force",
    "chain_torques_H",
    "closure_expand",
    "composite_tree_inertia",
    "default_model",
    "direct_dynamics",
    "dumps_model",
    "feedforward_torque",
    "format_report_table",
    "frame_transform",
    "igm",
    "ik_acceleration",
    "ik_velocity",
    "inverse_dynamics",
    "kinetic_energy",
    "lagrangian_idm_oracle",
    "load_model",
    "model_with_gravity",
    "parallelogram_gap",
    "platform_force",
    "potential_energy",
    "quintic_path",
    "read_trajectory_csv",
    "read_trajectory_json",
    "reports_by_name",
    "robot_jacobian_inverse",
    "run_verification",
    "simulate",
    "torque_from_table",
    "total_energy",
    "tree_newton_euler",
    "validate_model",
    "write_trajectory_csv",
    "write_trajectory_json",
]
