"""Fixed-step simulation of the platform dynamics plus trajectory I/O.

State is the platform point and its velocity. Integrators are classic RK4
(default) and explicit Euler, both on a fixed grid t_k = k dt. Recorded
samples carry the platform state, the platform acceleration, the actuator
travels, rates and efforts at the sample instant.

CSV files use exactly this header and column order:

    t,Px,Py,Pz,Vx,Vy,Vz,Ax,Ay,Az,L1,L2,L3,G1,G2,G3

Numbers are written with repr, so rereading a file reproduces the values
bit for bit. Actuator rates are not part of the CSV contract; the JSON
format keeps every sample field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import OutOfWorkspace, ParseError, ValidationError
from .kinematics import igm, ik_velocity
from .robot_dynamics import direct_dynamics, inverse_dynamics

CSV_HEADER = "t,Px,Py,Pz,Vx,Vy,Vz,Ax,Ay,Az,L1,L2,L3,G1,G2,G3"


@dataclass(frozen=True)
class TrajectorySample:
    """One recorded instant. Ldot is None for samples read back from CSV."""

    t: float
    P: np.ndarray
    V: np.ndarray
    A: np.ndarray
    L: np.ndarray
    Ldot: np.ndarray | None
    Gamma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        for name in ("P", "V", "A", "L", "Gamma"):
            v = np.array(getattr(self, name), dtype=float).reshape(3).copy()
            v.flags.writeable = False
            object.__setattr__(self, name, v)
        if self.Ldot is not None:
            v = np.array(self.Ldot, dtype=float).reshape(3).copy()
            v.flags.writeable = False
            object.__setattr__(self, "Ldot", v)


@dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-4
    t_end: float = 1.0
    integrator: str = "rk4"
    record_every: int = 1


@dataclass
class SimResult:
    """samples recorded so far; completed is False when the run stopped
    early (stop_reason says why, currently always a workspace exit)."""

    samples: list
    completed: bool
    stop_reason: str | None = None
    config: SimConfig = field(default_factory=SimConfig)


def quintic_path(p_start, p_end, duration, model=None):
    """Rest-to-rest point trajectory with zero end velocity and acceleration.

    Returns path(t) -> (P, V, A). Outside [0, duration] the path clamps to
    the endpoints at rest. When a model is given, both endpoints are
    checked against the workspace up front.
    """
    p0 = np.asarray(p_start, dtype=float).reshape(3).copy()
    p1 = np.asarray(p_end, dtype=float).reshape(3).copy()
    T = float(duration)
    if not T > 0.0:
        raise ValidationError("path duration must be positive")
    if model is not None:
        igm(model, p0)
        igm(model, p1)
    dp = p1 - p0
    zero = np.zeros(3)

    def path(t):
        tau = t / T
        if tau <= 0.0:
            return p0.copy(), zero.copy(), zero.copy()
        if tau >= 1.0:
            return p1.copy(), zero.copy(), zero.copy()
        s = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau))
        sd = tau * tau * (30.0 + tau * (-60.0 + 30.0 * tau)) / T
        sdd = tau * (60.0 + tau * (-180.0 + 120.0 * tau)) / (T * T)
        return p0 + s * dp, sd * dp, sdd * dp

    return path


def torque_from_table(times, values):
    """Zero-order-hold torque lookup: gamma(t) = row of the latest time <= t."""
    times = np.asarray(times, dtype=float).reshape(-1)
    values = np.asarray(values, dtype=float).reshape(len(times), 3)
    if len(times) == 0:
        raise ValidationError("torque table is empty")
    if np.any(np.diff(times) < 0.0):
        raise ValidationError("torque table times must be nondecreasing")

    def fn(t):
        k = int(np.searchsorted(times, t, side="right")) - 1
        if k < 0:
            k = 0
        return values[k]

    return fn


def feedforward_torque(model, path):
    """Torque function tracking a path open loop via inverse dynamics."""

    def fn(t):
        P, V, A = path(t)
        return inverse_dynamics(model, P, V, A)

    return fn


def _zero_torque(t):
    return np.zeros(3)


def simulate(model, p0, v0, torque_fn=None, config: SimConfig | None = None) -> SimResult:
    """Integrate the platform dynamics from (p0, v0) under torque_fn.

    The initial state must be inside the workspace (OutOfWorkspace
    propagates). If the trajectory later leaves the workspace the run stops
    and the result carries completed=False with the recorded prefix.
    """
    cfg = config if config is not None else SimConfig()
    if cfg.integrator not in ("rk4", "euler"):
        raise ValidationError("unknown integrator '%s'" % cfg.integrator)
    if not (cfg.dt > 0.0):
        raise ValidationError("dt must be positive")
    if cfg.t_end < 0.0:
        raise ValidationError("t_end must be nonnegative")
    if cfg.record_every < 1:
        raise ValidationError("record_every must be >= 1")
    fn = torque_fn if torque_fn is not None else _zero_torque

    P = np.asarray(p0, dtype=float).reshape(3).copy()
    V = np.asarray(v0, dtype=float).reshape(3).copy()
    dt = cfg.dt
    n_steps = int(round(cfg.t_end / dt))

    samples = []

    def record(t, P, V, acc, gamma):
        L, chain_q = igm(model, P)
        Ldot, _ = ik_velocity(model, chain_q, V)
        samples.append(TrajectorySample(t=t, P=P, V=V, A=acc, L=L, Ldot=Ldot, Gamma=gamma))

    # first sample: workspace errors here are the caller's problem
    gamma = np.asarray(fn(0.0), dtype=float).reshape(3)
    acc = direct_dynamics(model, P, V, gamma)
    record(0.0, P, V, acc, gamma)

    for k in range(n_steps):
        t = k * dt
        try:
            if cfg.integrator == "euler":
                P_next = P + dt * V
                V_next = V + dt * acc
            else:
                k1p, k1v = V, acc
                g2 = np.asarray(fn(t + 0.5 * dt), dtype=float).reshape(3)
                k2v = direct_dynamics(model, P + 0.5 * dt * k1p, V + 0.5 * dt * k1v, g2)
                k2p = V + 0.5 * dt * k1v
                k3v = direct_dynamics(model, P + 0.5 * dt * k2p, V + 0.5 * dt * k2v, g2)
                k3p = V + 0.5 * dt * k2v
                g4 = np.asarray(fn(t + dt), dtype=float).reshape(3)
                k4v = direct_dynamics(model, P + dt * k3p, V + dt * k3v, g4)
                k4p = V + dt * k3v
                P_next = P + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
                V_next = V + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            t_next = (k + 1) * dt
            gamma = np.asarray(fn(t_next), dtype=float).reshape(3)
            acc = direct_dynamics(model, P_next, V_next, gamma)
        except OutOfWorkspace as exc:
            return SimResult(samples, False, str(exc), cfg)
        P, V = P_next, V_next
        if (k + 1) % cfg.record_every == 0 or k + 1 == n_steps:
            record(t_next, P, V, acc, gamma)

    return SimResult(samples, True, None, cfg)


# ---------------------------------------------------------------------------
# trajectory files


def _r(x) -> str:
    return repr(float(x))


def write_trajectory_csv(samples, path) -> None:
    lines = [CSV_HEADER]
    for s in samples:
        row = [_r(s.t)]
        row += [_r(x) for x in s.P]
        row += [_r(x) for x in s.V]
        row += [_r(x) for x in s.A]
        row += [_r(x) for x in s.L]
        row += [_r(x) for x in s.Gamma]
        lines.append(",".join(row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_trajectory_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ParseError("bad trajectory CSV header")
    samples = []
    for ln in lines[1:]:
        vals = [float(x) for x in ln.split(",")]
        if len(vals) != 16:
            raise ParseError("bad trajectory CSV row: expected 16 columns")
        samples.append(
            TrajectorySample(
                t=vals[0], P=vals[1:4], V=vals[4:7], A=vals[7:10],
                L=vals[10:13], Ldot=None, Gamma=vals[13:16],
            )
        )
    return samples


def write_trajectory_json(samples, path) -> None:
    data = {
        "samples": [
            {
                "t": s.t,
                "P": list(map(float, s.P)),
                "V": list(map(float, s.V)),
                "A": list(map(float, s.A)),
                "L": list(map(float, s.L)),
                "Ldot": None if s.Ldot is None else list(map(float, s.Ldot)),
                "Gamma": list(map(float, s.Gamma)),
            }
            for s in samples
        ]
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def read_trajectory_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    samples = []
    for s in data["samples"]:
        samples.append(
            TrajectorySample(
                t=s["t"], P=s["P"], V=s["V"], A=s["A"], L=s["L"],
                Ldot=s.get("Ldot"), Gamma=s["Gamma"],
            )
        )
    return samples
