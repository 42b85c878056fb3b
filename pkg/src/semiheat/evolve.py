"""Method-of-lines time integration of u_t = Lap(u) + |u|^p.

The step is a Strang splitting: the reaction is advanced a half step with
its exact pointwise flow (no linear solve, see reaction_ode.reaction_flow),
the diffusion is one implicit Euler solve (a single banded or cyclic-banded
system), then the reaction finishes the step with the second exact half
flow.  Consequences used throughout the tests:

* spatially constant data reduces exactly to the scalar ODE (the diffusion
  solve preserves constants exactly, the reaction flow is exact);
* nonnegative data stays nonnegative on the closed kinds (the implicit
  matrix is an M-matrix there), and in practice on the radial kind too;
* the adaptive cap dt <= C_DT * (max|u|)^(1-p) keeps the reaction flow well
  inside each node's blow-up time.

Backward integration of the PDE is deliberately absent: backward heat flow
is ill-posed.  Ancient behavior is approximated by starting far in the past
(ancient_approximation) and running forward.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .geometry import (
    DiscreteManifold,
    _aligned_values,
    implicit_diffusion_solve,
    laplacian_spectrum,
)
from .reaction_ode import C_DT, _TINY, reaction_flow, trivial_ancient, validate_exponent


class SolverAbort(RuntimeError):
    """Non-finite values appeared during stepping; the run is invalid."""


@dataclass(frozen=True)
class EvolveControls:
    """Stepping knobs.  blow_threshold below 1e6 would put termination inside
    the regime where fitted constants are still being measured."""

    dt_max: float = 0.01
    blow_threshold: float = 1e8
    reaction_on: bool = True
    snapshot_every: int = 1

    def __post_init__(self):
        if self.dt_max <= 0:
            raise ValueError("dt_max must be positive")
        if self.blow_threshold < 1e6:
            raise ValueError("blow_threshold must be at least 1e6")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be at least 1")


@dataclass(frozen=True)
class BlowupInfo:
    detected_time: float
    method: str  # "threshold"


@dataclass
class Trajectory:
    """Snapshots of one PDE run plus the per-step log.

    ``times``/``snapshots`` hold the stored states (cadence controlled by
    EvolveControls.snapshot_every; first and last states always included).
    ``step_times``/``step_dt``/``step_max``/``step_min`` log every accepted
    step.  ``blowup`` is present only when the run terminated by threshold
    crossing; ``negative_data`` flags runs started from sign-mixed or
    negative data (meaningful forward only; they blow down in finite
    backward time).
    """

    manifold: DiscreteManifold
    times: np.ndarray
    snapshots: np.ndarray
    step_times: np.ndarray
    step_dt: np.ndarray
    step_max: np.ndarray
    step_min: np.ndarray
    blowup: BlowupInfo | None = None
    negative_data: bool = False

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.snapshots = np.asarray(self.snapshots, dtype=float)
        if self.times.size >= 2 and not np.all(np.diff(self.times) > 0):
            raise ValueError("snapshot times must be strictly increasing")
        if self.snapshots.shape != (self.times.size, self.manifold.node_count):
            raise ValueError("snapshot block must be (n_times, n_nodes)")

    @property
    def snapshot_max(self) -> np.ndarray:
        return np.max(self.snapshots, axis=1)

    @property
    def snapshot_min(self) -> np.ndarray:
        return np.min(self.snapshots, axis=1)

    def slice_time(self, t_lo: float, t_hi: float) -> "Trajectory":
        """Restrict to snapshots (and step-log entries) with t in [t_lo, t_hi].
        Blow-up info is kept only if it falls inside the slice."""
        keep = (self.times >= t_lo) & (self.times <= t_hi)
        if not np.any(keep):
            raise ValueError("empty time slice")
        keep_steps = (self.step_times >= t_lo) & (self.step_times <= t_hi)
        blow = self.blowup
        if blow is not None and not (t_lo <= blow.detected_time <= t_hi):
            blow = None
        return Trajectory(
            manifold=self.manifold,
            times=self.times[keep],
            snapshots=self.snapshots[keep],
            step_times=self.step_times[keep_steps],
            step_dt=self.step_dt[keep_steps],
            step_max=self.step_max[keep_steps],
            step_min=self.step_min[keep_steps],
            blowup=blow,
            negative_data=self.negative_data,
        )


def trajectory_from_samples(m: DiscreteManifold, times, snapshots) -> Trajectory:
    """Wrap externally computed states (e.g. a closed-form solution sampled
    on a grid) as a Trajectory with a synthetic step log."""
    times = np.asarray(times, dtype=float)
    snaps = np.asarray(snapshots, dtype=float)
    if not np.all(np.isfinite(snaps)):
        raise ValueError("snapshots must be finite")
    return Trajectory(
        manifold=m,
        times=times,
        snapshots=snaps,
        step_times=times[1:],
        step_dt=np.diff(times),
        step_max=np.max(snaps, axis=1)[1:],
        step_min=np.min(snaps, axis=1)[1:],
        blowup=None,
        negative_data=bool(np.min(snaps[0]) < 0),
    )


def evolve(
    m: DiscreteManifold,
    u0,
    t0: float,
    t1: float,
    p: float,
    controls: EvolveControls | None = None,
) -> Trajectory:
    """Integrate u_t = Lap(u) + |u|^p from u(t0) = u0 up to t1.

    Terminates early with blow-up info once max u exceeds the threshold.
    For spatially constant u0 the result matches integrate_scalar_ode to
    roundoff.  Raises SolverAbort if non-finite values ever appear (they are
    never clamped).
    """
    p = validate_exponent(p)
    controls = controls or EvolveControls()
    if not t0 < t1:
        raise ValueError("need t0 < t1")
    u = _aligned_values(m, u0).copy()
    if not np.all(np.isfinite(u)):
        raise ValueError("initial data must be finite")

    times = [float(t0)]
    snaps = [u.copy()]
    step_times, step_dt, step_max, step_min = [], [], [], []
    blowup = None
    negative_data = bool(u.min() < 0)

    t = float(t0)
    step_index = 0
    tiny_horizon = 1e-14 * max(1.0, abs(t1))
    while t1 - t > tiny_horizon:
        mag = float(np.max(np.abs(u)))
        cap = C_DT * mag ** (1.0 - p) if (mag > _TINY and controls.reaction_on) else np.inf
        dt = min(controls.dt_max, cap, t1 - t)
        if controls.reaction_on:
            u = reaction_flow(u, p, 0.5 * dt)
        u = implicit_diffusion_solve(m, u, dt)
        if controls.reaction_on:
            u = reaction_flow(u, p, 0.5 * dt)
        t += dt
        step_index += 1
        if not np.all(np.isfinite(u)):
            raise SolverAbort(f"non-finite values at t = {t}")
        umax = float(u.max())
        umin = float(u.min())
        step_times.append(t)
        step_dt.append(dt)
        step_max.append(umax)
        step_min.append(umin)
        crossed = umax > controls.blow_threshold
        if step_index % controls.snapshot_every == 0 or t1 - t <= tiny_horizon or crossed:
            times.append(t)
            snaps.append(u.copy())
        if crossed:
            blowup = BlowupInfo(detected_time=t, method="threshold")
            break

    return Trajectory(
        manifold=m,
        times=np.asarray(times),
        snapshots=np.asarray(snaps),
        step_times=np.asarray(step_times),
        step_dt=np.asarray(step_dt),
        step_max=np.asarray(step_max),
        step_min=np.asarray(step_min),
        blowup=blowup,
        negative_data=negative_data,
    )


# least-squares window for the blow-up extrapolation: (max u)^(1-p) is
# empirically linear over the last two decades of growth
DETECTION_WINDOW = 20


def detect_blowup(traj: Trajectory, p: float) -> float:
    """Estimate the blow-up time by extrapolating (max u)^(1-p) to zero.

    Accepts trajectories that terminated by threshold crossing, and also
    sampled trajectories whose (max u)^(1-p) tail is strictly decreasing
    (the quantity is exactly linear for trivial-type blow-up).  Raises if
    the trajectory shows no blow-up trend.
    """
    p = validate_exponent(p)
    mx = traj.snapshot_max
    if mx.size < 3:
        raise ValueError("too few snapshots for blow-up detection")
    if np.any(mx <= 0):
        raise ValueError("blow-up detection expects positive max u")
    w = min(DETECTION_WINDOW, mx.size)
    tt = traj.times[-w:]
    yy = mx[-w:] ** (1.0 - p)
    slope, intercept = np.polyfit(tt, yy, 1)
    if traj.blowup is None and slope >= 0:
        raise ValueError("trajectory did not blow up")
    if slope >= 0:
        raise ValueError("blow-up tail is not decreasing; detection invalid")
    return float(-intercept / slope)


def ancient_approximation(
    m: DiscreteManifold,
    p: float,
    T_blow: float,
    t_start: float,
    eps: float,
    mode_index: int,
    controls: EvolveControls | None = None,
) -> Trajectory:
    """Forward construction approximating an ancient solution.

    Starts at t_start (far in the past; T_blow - t_start >= 10 enforced) from
    the trivial profile times (1 + eps * mode), where mode is the selected
    discrete eigenmode normalized to sup-norm 1, then evolves forward until
    the blow-up threshold terminates the run.
    """
    p = validate_exponent(p)
    if T_blow - t_start < 10.0:
        raise ValueError("t_start must precede T_blow by at least 10")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if eps >= 1:
        raise ValueError("eps >= 1 would make the initial data change sign")
    lam, modes = laplacian_spectrum(m)
    if not 0 <= mode_index < lam.size:
        raise ValueError("mode_index out of range")
    background = trivial_ancient(p, T_blow, t_start)
    u0 = background * (1.0 + eps * modes[:, mode_index])
    return evolve(m, u0, t_start, T_blow + 1.0, p, controls)


def export_trajectory(traj: Trajectory, csv_path, sidecar_path=None, meta: dict | None = None):
    """Write the trajectory as CSV (t, node_index, u) with a JSON sidecar
    carrying the step log, blow-up info, and any caller metadata (the
    experiment runner passes its config hash through here)."""
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "node_index", "u"])
        for t, snap in zip(traj.times, traj.snapshots):
            for idx, val in enumerate(snap):
                writer.writerow([repr(float(t)), idx, repr(float(val))])
    if sidecar_path is not None:
        sidecar = {
            "manifold": {
                "kind": traj.manifold.kind,
                "n": traj.manifold.n,
                "radius_or_length": traj.manifold.radius_or_length,
                "node_count": traj.manifold.node_count,
            },
            "step_log": {
                "t": traj.step_times.tolist(),
                "dt": traj.step_dt.tolist(),
                "max_u": traj.step_max.tolist(),
                "min_u": traj.step_min.tolist(),
            },
            "blowup": None
            if traj.blowup is None
            else {"detected_time": traj.blowup.detected_time, "method": traj.blowup.method},
            "negative_data": traj.negative_data,
            "meta": meta or {},
        }
        with open(sidecar_path, "w") as fh:
            json.dump(sidecar, fh, indent=1, sort_keys=True)
