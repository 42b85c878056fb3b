"""Checkers: evaluate both sides of each inequality along a trajectory.

Every checker returns an EstimateReport with the same shape: per-snapshot
LHS / structural RHS / ratio arrays, a fitted constant C_fit (the worst
ratio over the admitted window), a cap, and pass <=> C_fit <= C_cap.  The
classical constants are never assumed; the fitted value and its stability
under refinement are the contract.

Discrete differential inequalities are tested against the scheme tolerance
tol = c1 * dt + c2 * h^2 with c1 = c2 = 10 * (max |u|)^p over the window
(first-order time error plus second-order space error, scaled by the
reaction magnitude).

Balls B_rho(x0) are coordinate intervals around the pole (zonal), the origin
(radial), or x = 0 with wraparound (circle/torus): the only geodesic balls
the symmetric reductions can represent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .evolve import Trajectory
from .geometry import (
    CLOSED_KINDS,
    DiscreteManifold,
    PERIODIC_KINDS,
    build_manifold,
    curvature_bound,
    gradient_norm,
    laplace_beltrami,
    laplacian_spectrum,
)
from .reaction_ode import ode_lower_envelope, validate_exponent

NONNEG_FLOOR = -1e-10  # nonnegative data may dip at most this far below zero
U_FLOOR_FACTOR = 1e-12  # default u_floor = factor * D inside log(D/u)
TOL_COEFF = 10.0


class ExponentRegimeError(ValueError):
    """The requested check's hypothesis excludes this (n, p)."""


@dataclass(frozen=True)
class EstimateParams:
    """Window and inequality parameters; only the fields a given checker
    needs have to be set.  K defaults to the trajectory manifold's curvature
    bound when left as None; u_floor defaults to 1e-12 * D."""

    D: float | None = None
    K: float | None = None
    R: float | None = None
    T: float | None = None
    T0: float | None = None
    delta: float | None = None
    L: float | None = None
    A: float | None = None
    r0: float | None = None
    u_floor: float | None = None

    def __post_init__(self):
        if self.D is not None and self.D <= 0:
            raise ValueError("D must be positive")
        if self.K is not None and self.K < 0:
            raise ValueError("K must be nonnegative")
        for name in ("R", "T", "L", "A", "r0", "u_floor"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise ValueError(f"{name} must be positive")
        if self.delta is not None and not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie strictly between 0 and 1")


@dataclass
class EstimateReport:
    """Uniform record of one inequality check.

    ``times``/``lhs``/``rhs``/``ratio`` are aligned per-snapshot arrays (for
    the positivity check, per snapshot pair; for the triviality check, per
    evaluated interval); ``extras`` carries named auxiliary fields such as
    the substitution fields of the gradient check.
    """

    inequality_id: str
    times: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    ratio: np.ndarray
    c_fit: float
    c_cap: float
    passed: bool
    diagnostics: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.c_fit < 0:
            raise ValueError("fitted constant must be nonnegative")
        if self.passed != (self.c_fit <= self.c_cap):
            raise ValueError("pass flag must equal c_fit <= c_cap")

    def to_json_dict(self) -> dict:
        def clean(x):
            if isinstance(x, np.ndarray):
                return x.tolist()
            if isinstance(x, (np.floating, np.integer)):
                return x.item()
            if isinstance(x, np.bool_):
                return bool(x)
            if isinstance(x, dict):
                return {k: clean(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [clean(v) for v in x]
            if isinstance(x, float) and math.isinf(x):
                return "inf"
            return x

        return {
            "inequality_id": self.inequality_id,
            "times": self.times.tolist(),
            "lhs": self.lhs.tolist(),
            "rhs": self.rhs.tolist(),
            "ratio": self.ratio.tolist(),
            "c_fit": clean(float(self.c_fit)),
            "c_cap": clean(float(self.c_cap)),
            "passed": bool(self.passed),
            "diagnostics": clean(self.diagnostics),
            "extras": clean(self.extras),
        }

    def csv_rows(self):
        for t, a, b, r in zip(self.times, self.lhs, self.rhs, self.ratio):
            yield [repr(float(t)), repr(float(a)), repr(float(b)), repr(float(r))]


def _finalize(**kw) -> EstimateReport:
    # keep the c_fit >= 0 and pass <=> (c_fit <= c_cap) invariants in one place
    c_fit = max(0.0, float(kw.pop("c_fit")))
    c_cap = float(kw.pop("c_cap"))
    return EstimateReport(c_fit=c_fit, c_cap=c_cap, passed=bool(c_fit <= c_cap), **kw)


def scheme_tolerance(traj: Trajectory, p: float, dt: float | None = None) -> float:
    """tol = 10 (max|u|)^p (dt + h^2), with dt the largest step unless given."""
    mag = float(np.max(np.abs(traj.snapshots)))
    if dt is None:
        dt = float(np.max(traj.step_dt)) if traj.step_dt.size else 0.0
    h = traj.manifold.spacing
    return TOL_COEFF * mag**p * (dt + h * h)


def _ball_limit(m: DiscreteManifold) -> float:
    if m.kind == "sphere_zonal":
        return math.pi * m.radius_or_length
    if m.kind in PERIODIC_KINDS:
        return 0.5 * m.radius_or_length
    return m.radius_or_length


def ball_mask(m: DiscreteManifold, radius: float) -> np.ndarray:
    """Nodes within geodesic distance ``radius`` of the base point (pole,
    origin, or x = 0 with wraparound)."""
    if radius > _ball_limit(m) + 1e-12:
        raise ValueError("ball exceeds the manifold diameter")
    if m.kind == "sphere_zonal":
        dist = m.nodes * m.radius_or_length
    elif m.kind in PERIODIC_KINDS:
        dist = np.minimum(m.nodes, m.radius_or_length - m.nodes)
    else:
        dist = m.nodes
    return dist <= radius + 1e-12


def _exponent_gate(n: int, p: float):
    # literal hypothesis window 1 < p < n(n+2)/(n-1)^2; the bound is infinite
    # in the one-dimensional reduction
    if n >= 2:
        threshold = n * (n + 2) / (n - 1) ** 2
        if p >= threshold:
            raise ExponentRegimeError(
                f"p = {p:g} outside the hypothesis window 1 < p < {threshold:g} for n = {n}"
            )


# ---------------------------------------------------------------------------
# positivity / minimum ODE comparison


def check_positivity_min_ode(traj: Trajectory, p: float) -> EstimateReport:
    """v(t) = min_x u must satisfy the discrete version of v' >= |v|^p, and
    nonnegative data must stay above NONNEG_FLOOR.

    The per-pair violation is measured against the scheme tolerance with that
    pair's own dt; C_fit is the worst violation-to-tolerance ratio (folding
    in the negativity excess for nonnegative data), so C_cap = 1.
    """
    p = validate_exponent(p)
    if traj.times.size < 3:
        raise ValueError("need at least three snapshots")
    v = traj.snapshot_min
    t = traj.times
    dts = np.diff(t)
    mag = float(np.max(np.abs(traj.snapshots)))
    h = traj.manifold.spacing
    tol = TOL_COEFF * mag**p * (dts + h * h)

    rate = np.diff(v) / dts
    required = np.abs(v[:-1]) ** p
    violation = required - rate
    ratio = violation / np.maximum(tol, 1e-300)  # identically zero data has tol 0

    nonneg_data = bool(v[0] >= 0.0)
    min_over_window = float(np.min(v))
    c_fit = float(np.max(ratio))
    if nonneg_data:
        c_fit = max(c_fit, min_over_window / NONNEG_FLOOR)

    worst_idx = int(np.argmax(ratio))
    return _finalize(
        inequality_id="min_ode_comparison",
        times=t[:-1],
        lhs=violation,
        rhs=tol,
        ratio=ratio,
        c_fit=c_fit,
        c_cap=1.0,
        diagnostics={
            "min_over_window": min_over_window,
            "nonnegative_data": nonneg_data,
            "worst_pair_time": float(t[worst_idx]),
            "worst_violation": float(violation[worst_idx]),
        },
    )


# ---------------------------------------------------------------------------
# gradient estimate

_GRADIENT_VARIANTS = ("local", "global", "ancient")


def check_gradient_estimate(
    traj: Trajectory,
    params: EstimateParams,
    variant: str,
    p: float,
    c_cap: float = math.inf,
    grad_tol: float = 1e-6,
) -> EstimateReport:
    """Pointwise ratio of |grad u| / u against S * (1 + log(D / u)).

    The structural factor is
        S = 1/R + 1/sqrt(T) + sqrt((p D^(p-1) - (n-1) K)+)   (local)
        S =       1/sqrt(T) + sqrt((p D^(p-1) - (n-1) K)+)   (global)
        S =                   sqrt((p D^(p-1) - (n-1) K)+)   (ancient)
    evaluated over the shrunken window: inner half-ball over the last
    quarter of [T0 - T, T0] (local), last quarter of the window over all
    nodes (global), or every stored snapshot (ancient).  D must bound u on
    the full window.  When the ancient variant degenerates
    (p D^(p-1) <= (n-1) K, so S = 0) the check instead asserts
    max |grad u| <= grad_tol.

    extras at the maximizing snapshot: "f" = log(u / D) (with the u_floor
    regularization) and "w" = |grad f|^2 / (1 - f)^2.
    """
    p = validate_exponent(p)
    if variant not in _GRADIENT_VARIANTS:
        raise ValueError(f"unknown gradient variant {variant!r}")
    m = traj.manifold
    if np.any(traj.snapshots <= 0):
        raise ValueError("gradient check requires strictly positive snapshots")
    if params.D is None:
        raise ValueError("gradient check requires the sup bound D")
    D = params.D
    K = params.K if params.K is not None else curvature_bound(m)
    n = m.n
    u_floor = params.u_floor if params.u_floor is not None else U_FLOOR_FACTOR * D

    t = traj.times
    full_time, sub_time, full_nodes, sub_nodes = _gradient_windows(traj, params, variant)
    window_max = float(np.max(traj.snapshots[full_time][:, full_nodes]))
    if window_max > D * (1.0 + 1e-12):
        raise ValueError(f"D = {D:g} is below the window maximum {window_max:g}")

    base = p * D ** (p - 1.0) - (n - 1) * K
    degenerate = variant == "ancient" and base <= 0.0
    S = 0.0 if base <= 0.0 else math.sqrt(base)
    if variant == "local":
        S = 1.0 / params.R + 1.0 / math.sqrt(params.T) + S
    elif variant == "global":
        S = 1.0 / math.sqrt(params.T) + S

    sub_idx = np.flatnonzero(sub_time)
    times_out, lhs_out, rhs_out, ratio_out = [], [], [], []
    best = (-math.inf, None, None)  # (ratio, snapshot index, node index)
    for k in sub_idx:
        u = traj.snapshots[k]
        grad = gradient_norm(m, u)
        if degenerate:
            gsel = grad[sub_nodes]
            j = int(np.argmax(gsel))
            times_out.append(t[k])
            lhs_out.append(float(gsel[j]))
            rhs_out.append(grad_tol)
            ratio_out.append(float(gsel[j]) / grad_tol)
            if gsel[j] > best[0]:
                best = (float(gsel[j]), k, int(np.flatnonzero(sub_nodes)[j]))
            continue
        u_reg = np.maximum(u, u_floor)
        numer = grad / u
        denom = S * (1.0 + np.log(D / u_reg))
        point_ratio = numer[sub_nodes] / denom[sub_nodes]
        j = int(np.argmax(point_ratio))
        times_out.append(t[k])
        lhs_out.append(float(numer[sub_nodes][j]))
        rhs_out.append(float(denom[sub_nodes][j]))
        ratio_out.append(float(point_ratio[j]))
        if point_ratio[j] > best[0]:
            best = (float(point_ratio[j]), k, int(np.flatnonzero(sub_nodes)[j]))

    c_fit = max(ratio_out) if not degenerate else max(lhs_out)
    cap = grad_tol if degenerate else c_cap

    k_best = best[1]
    u_best = np.maximum(traj.snapshots[k_best], u_floor)
    f_field = np.log(u_best / D)
    grad_f = gradient_norm(m, f_field)
    w_field = grad_f**2 / (1.0 - f_field) ** 2

    return _finalize(
        inequality_id="gradient_log_bound",
        times=np.asarray(times_out),
        lhs=np.asarray(lhs_out),
        rhs=np.asarray(rhs_out),
        ratio=np.asarray(ratio_out),
        c_fit=c_fit,
        c_cap=cap,
        diagnostics={
            "variant": variant,
            "degenerate": degenerate,
            "structural_factor": S,
            "curvature_term": base,
            "max_time": float(t[k_best]),
            "max_node": best[2],
            "window_max_u": window_max,
        },
        extras={"f": f_field, "w": w_field},
    )


def _gradient_windows(traj: Trajectory, params: EstimateParams, variant: str):
    m = traj.manifold
    t = traj.times
    if variant == "local":
        if params.R is None or params.T is None:
            raise ValueError("local variant requires R and T")
        T0 = params.T0 if params.T0 is not None else float(t[-1])
        full_time = (t >= T0 - params.T - 1e-12) & (t <= T0 + 1e-12)
        sub_time = (t >= T0 - params.T / 4.0 - 1e-12) & (t <= T0 + 1e-12)
        full_nodes = ball_mask(m, params.R)
        sub_nodes = ball_mask(m, params.R / 2.0)
    elif variant == "global":
        if params.T is None:
            raise ValueError("global variant requires T")
        T0 = params.T0 if params.T0 is not None else float(t[-1])
        full_time = (t >= T0 - params.T - 1e-12) & (t <= T0 + 1e-12)
        sub_time = (t >= T0 - params.T / 4.0 - 1e-12) & (t <= T0 + 1e-12)
        full_nodes = np.ones(m.node_count, dtype=bool)
        sub_nodes = full_nodes
    else:  # ancient
        full_time = np.ones(t.size, dtype=bool)
        sub_time = full_time
        full_nodes = np.ones(m.node_count, dtype=bool)
        sub_nodes = full_nodes
    if not np.any(full_time) or not np.any(sub_time):
        raise ValueError("window selects no snapshots")
    return full_time, sub_time, full_nodes, sub_nodes


# ---------------------------------------------------------------------------
# decay and universal bounds


def check_decay(traj: Trajectory, T_blow: float, p: float, c_cap: float = math.inf) -> EstimateReport:
    """C_fit = max over snapshots of (max_x u) * (T_blow - t)^(1/(p-1)).

    Also reports (as a diagnostic, not a gate) whether max_x u vanishes
    backward along the stored window.  The hypothesis window
    1 < p < n(n+2)/(n-1)^2 is enforced for n >= 2.
    """
    p = validate_exponent(p)
    _exponent_gate(traj.manifold.n, p)
    t = traj.times
    if np.any(t >= T_blow):
        raise ValueError("all snapshots must lie strictly before T_blow")
    mx = traj.snapshot_max
    rhs = (T_blow - t) ** (-1.0 / (p - 1.0))
    ratio = mx / rhs
    c_fit = float(np.max(ratio))
    first, last = float(mx[0]), float(mx[-1])
    return _finalize(
        inequality_id="decay_envelope",
        times=t,
        lhs=mx,
        rhs=rhs,
        ratio=ratio,
        c_fit=c_fit,
        c_cap=c_cap,
        diagnostics={
            "backward_vanishing": bool(first <= 0.1 * last),
            "first_to_last_max_ratio": first / last if last > 0 else math.inf,
            "max_time": float(t[int(np.argmax(ratio))]),
        },
    )


def check_universal(
    traj: Trajectory, T0: float, T: float, p: float, c_cap: float = math.inf
) -> EstimateReport:
    """C_fit = max over (x, t) of
    [u + |grad u|^(2/(p+1))] / [|t - T0|^(-1/(p-1)) + |T - t|^(-1/(p-1))]
    on a window (T0, T) containing all snapshots strictly."""
    p = validate_exponent(p)
    _exponent_gate(traj.manifold.n, p)
    t = traj.times
    if np.any(t <= T0) or np.any(t >= T):
        raise ValueError("all snapshots must lie strictly inside (T0, T)")
    m = traj.manifold
    lhs, rhs, ratio = [], [], []
    for k, tk in enumerate(t):
        u = traj.snapshots[k]
        grad = gradient_norm(m, u)
        num = u + grad ** (2.0 / (p + 1.0))
        j = int(np.argmax(num))
        bracket = abs(tk - T0) ** (-1.0 / (p - 1.0)) + abs(T - tk) ** (-1.0 / (p - 1.0))
        lhs.append(float(num[j]))
        rhs.append(bracket)
        ratio.append(float(num[j]) / bracket)
    ratio = np.asarray(ratio)
    return _finalize(
        inequality_id="universal_spacetime_bound",
        times=t,
        lhs=np.asarray(lhs),
        rhs=np.asarray(rhs),
        ratio=ratio,
        c_fit=float(np.max(ratio)),
        c_cap=c_cap,
        diagnostics={"max_time": float(t[int(np.argmax(ratio))])},
    )


# ---------------------------------------------------------------------------
# ball lower bound


def lemma_admissibility_min(n: int, T: float, r0: float, K: float) -> float:
    """Smallest admissible ball-scale factor:
    4 + 2(n-1) T / r0^2 + 2(n-1) T sqrt(K) / r0."""
    return 4.0 + 2.0 * (n - 1) * T / r0**2 + 2.0 * (n - 1) * T * math.sqrt(K) / r0


def check_lower_bound_lemma(
    traj: Trajectory, params: EstimateParams, C_delta_cap: float, p: float
) -> EstimateReport:
    """On the inner quarter ball B_{A r0 / 4}, u must stay above
    min(envelope(t - t_start), -C_delta_cap / (A r0)^(2/(p-1))) - tol
    at every stored time.

    Preconditions checked, not assumed: u >= -L on B_{A r0} at the window
    start, and A at least the admissibility minimum (the error message
    carries the required value).  The ratio column carries the pointwise
    margin u_min - bound; C_fit is the clamped worst bound excess, so with
    C_cap = 0 the check passes exactly when the worst margin is nonnegative.
    """
    p = validate_exponent(p)
    if params.delta is None or params.L is None or params.A is None or params.r0 is None:
        raise ValueError("lower-bound check requires delta, L, A, r0")
    m = traj.manifold
    t = traj.times
    K = params.K if params.K is not None else curvature_bound(m)
    T = params.T if params.T is not None else float(t[-1] - t[0])
    if T <= 0:
        raise ValueError("window length must be positive")
    a_min = lemma_admissibility_min(m.n, T, params.r0, K)
    if params.A < a_min - 1e-12:
        raise ValueError(
            f"A = {params.A:g} is below the admissibility minimum {a_min:g}"
        )
    outer = ball_mask(m, params.A * params.r0)
    inner = ball_mask(m, params.A * params.r0 / 4.0)
    start_min = float(np.min(traj.snapshots[0][outer]))
    if start_min < -params.L - 1e-12:
        raise ValueError(
            f"initial data reaches {start_min:g} on the outer ball, below -L = {-params.L:g}"
        )

    tol = scheme_tolerance(traj, p)
    cap_branch = -C_delta_cap / (params.A * params.r0) ** (2.0 / (p - 1.0))
    t0 = float(t[0])
    u_min = np.array([float(np.min(traj.snapshots[k][inner])) for k in range(t.size)])
    envelope = np.array([ode_lower_envelope(p, params.delta, params.L, tk - t0) for tk in t])
    bound = np.minimum(envelope, cap_branch) - tol
    margin = u_min - bound
    worst = int(np.argmin(margin))
    return _finalize(
        inequality_id="ball_lower_bound",
        times=t,
        lhs=u_min,
        rhs=bound,
        ratio=margin,
        c_fit=-float(margin[worst]),
        c_cap=0.0,
        diagnostics={
            "worst_margin": float(margin[worst]),
            "worst_time": float(t[worst]),
            "admissibility_min": a_min,
            "second_branch_bound": cap_branch,
            "scheme_tol": tol,
            "start_min_outer_ball": start_min,
        },
    )


# ---------------------------------------------------------------------------
# triviality mechanism


def check_triviality(
    traj: Trajectory,
    m: DiscreteManifold,
    p: float,
    rate_tol: float = 0.2,
    osc_floor: float = 1e-10,
) -> EstimateReport:
    """Oscillation-decay test behind the triviality threshold
    Theta = ((n-1) K / p)^(1/(p-1)).

    The stored window is cut into unit time intervals (a partial tail
    shorter than 0.5 is dropped).  On every interval whose running maximum
    stays at or below Theta, the oscillation contraction factor
    osc(t2)/osc(t1) must not exceed exp(-(lambda1 - p max_u^(p-1)) dt),
    with lambda1 the first nonzero Laplacian eigenvalue and max_u the
    interval maximum (the most conservative linearization on the interval).
    C_cap = 1 + rate_tol; intervals whose oscillation starts at or below
    osc_floor pass outright.  Verdict "trivial-limit" iff every evaluated
    interval passed.
    """
    p = validate_exponent(p)
    if m.kind not in CLOSED_KINDS:
        raise ValueError("triviality check requires a compact manifold")
    if m.ricci_lower <= 0:
        raise ValueError("triviality check requires a positive Ricci lower bound")
    K = curvature_bound(m)
    theta = ((m.n - 1) * K / p) ** (1.0 / (p - 1.0))
    evals, _ = laplacian_spectrum(m)
    lambda1 = float(evals[1])

    t = traj.times
    mx = traj.snapshot_max
    osc = traj.snapshot_max - traj.snapshot_min

    times_out, lhs_out, rhs_out, ratio_out = [], [], [], []
    skipped_above = 0
    a = float(t[0])
    while a < float(t[-1]) - 1e-12:
        b = min(a + 1.0, float(t[-1]))
        if b - a < 0.5:
            break
        i0 = int(np.searchsorted(t, a - 1e-12, side="left"))
        i1 = int(np.searchsorted(t, b + 1e-12, side="right")) - 1
        a = b
        if i1 <= i0:
            continue
        dt = float(t[i1] - t[i0])
        mxbar = float(np.max(mx[i0 : i1 + 1]))
        if mxbar > theta + 1e-12:
            skipped_above += 1
            continue
        factor_allowed = math.exp(-(lambda1 - p * max(mxbar, 0.0) ** (p - 1.0)) * dt)
        if osc[i0] <= osc_floor:
            times_out.append(float(t[i0]))
            lhs_out.append(float(osc[i1]))
            rhs_out.append(factor_allowed)
            ratio_out.append(0.0)
            continue
        factor = float(osc[i1] / osc[i0])
        times_out.append(float(t[i0]))
        lhs_out.append(factor)
        rhs_out.append(factor_allowed)
        ratio_out.append(factor / factor_allowed)

    c_fit = max(ratio_out) if ratio_out else 0.0
    report = _finalize(
        inequality_id="oscillation_linearized_decay",
        times=np.asarray(times_out),
        lhs=np.asarray(lhs_out),
        rhs=np.asarray(rhs_out),
        ratio=np.asarray(ratio_out),
        c_fit=c_fit,
        c_cap=1.0 + rate_tol,
        diagnostics={
            "threshold": theta,
            "lambda1": lambda1,
            "intervals_evaluated": len(ratio_out),
            "intervals_above_threshold": skipped_above,
            "max_background": float(np.max(mx)),
        },
        extras={"osc": osc, "max_u": mx, "snapshot_times": t},
    )
    report.diagnostics["verdict"] = "trivial-limit" if report.passed else "nontrivial"
    return report


# ---------------------------------------------------------------------------
# static solution residual and exponent thresholds


def talenti_residual(n: int, grid_count: int, R_max: float) -> float:
    """Max interior residual of the static profile
    u(r) = (n(n-2) / (n(n-2) + r^2))^((n-2)/2)
    under Delta u + u^((n+2)/(n-2)) on the radial model."""
    if n < 3:
        raise ValueError("the static profile requires n >= 3")
    m = build_manifold("euclidean_radial", n=n, radius_or_length=R_max, node_count=grid_count)
    r = m.nodes
    c = float(n * (n - 2))
    u = (c / (c + r * r)) ** ((n - 2) / 2.0)
    residual = laplace_beltrami(m, u) + u ** ((n + 2) / (n - 2))
    return float(np.max(np.abs(residual[1:-1])))


EXPONENT_REGIMES = (
    "below_threshold",
    "open_gap",
    "sobolev_critical_or_above",
    "low_dimension_all_subcritical",
)


def exponent_regime(n: int, p: float) -> str:
    """Classify p against n(n+2)/(n-1)^2 and the Sobolev exponent
    (n+2)/(n-2); for n in {1, 2} both thresholds are infinite."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    p = validate_exponent(p)
    if n <= 2:
        return "low_dimension_all_subcritical"
    gap_threshold = n * (n + 2) / (n - 1) ** 2
    sobolev = (n + 2) / (n - 2)
    if p < gap_threshold:
        return "below_threshold"
    if p < sobolev:
        return "open_gap"
    return "sobolev_critical_or_above"
