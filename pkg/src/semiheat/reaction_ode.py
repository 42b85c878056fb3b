"""The spatially constant reduction v' = |v|^p.

Closed forms for the one-parameter family of blow-up solutions, the lower
comparison envelope used by the ball estimate, and a small adaptive
integrator that serves as the comparison oracle for the PDE runs.  The
integrator advances each step with the exact flow of the ODE (closed form by
sign), so its error is pure roundoff; the stepping and the blow-up threshold
logic are what is actually under test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# p must exceed 1 by at least this; every 1/(p-1) exponent degenerates at p = 1
P_FLOOR = 1e-9

# scalar oracle stops once |v| passes this (relative distance to the true
# blow-up time is then <= threshold^(1-p)/(p-1))
BLOW_THRESHOLD = 1e8

# adaptive step factor: dt = C_DT * |v|^(1-p) equidistributes the blow-up
# variable |v|^(1-p), which is linear in t along the trivial solution
C_DT = 0.01

_TINY = 1e-100


def validate_exponent(p: float) -> float:
    p = float(p)
    if not p > 1.0 + P_FLOOR:
        raise ValueError(f"exponent p must exceed 1 (got {p})")
    return p


@dataclass(frozen=True)
class ReactionParams:
    """Record for the reaction exponent."""

    p: float

    def __post_init__(self):
        validate_exponent(self.p)


@dataclass
class ScalarTrajectory:
    """Time series of a scalar quantity, e.g. min_x u along a PDE run.

    ``blowup_time`` is only set for forward blow-up; it always exceeds the
    last stored time (a backward singularity is never recorded here).
    """

    times: np.ndarray
    values: np.ndarray
    blowup_time: float | None = None

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.size != self.values.size:
            raise ValueError("times and values must have equal length")
        if self.times.size >= 2 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")
        if self.blowup_time is not None and self.blowup_time <= self.times[-1]:
            raise ValueError("blowup_time must exceed the last stored time")


def trivial_ancient(p: float, T_blow: float, t) -> float | np.ndarray:
    """The positive solution of v' = v^p blowing up at T_blow:
    [(p-1)(T_blow - t)]^(-1/(p-1)), defined for t < T_blow."""
    p = validate_exponent(p)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr >= T_blow):
        raise ValueError("trivial_ancient requires t < T_blow")
    out = ((p - 1.0) * (T_blow - t_arr)) ** (-1.0 / (p - 1.0))
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(out)
    return out


def blowup_time_from_min(p: float, v0: float) -> float:
    """Blow-up time of v' = v^p from v(0) = v0 > 0: v0^(1-p)/(p-1).
    By comparison this also bounds the PDE blow-up time from min u0."""
    p = validate_exponent(p)
    if v0 <= 0:
        raise ValueError("v0 must be positive")
    return v0 ** (1.0 - p) / (p - 1.0)


def ode_lower_envelope(p: float, delta: float, L: float, t) -> float | np.ndarray:
    """First branch of the ball lower bound:
    -((1-delta)(p-1) t + L^(1-p))^(1/(1-p)), for t >= 0.

    Increasing in t, decreasing in delta (the slack factor 1-delta shrinks
    the bracket); never crosses zero.
    """
    p = validate_exponent(p)
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie strictly between 0 and 1")
    if L <= 0:
        raise ValueError("L must be positive")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("envelope is defined for t >= 0")
    bracket = (1.0 - delta) * (p - 1.0) * t_arr + L ** (1.0 - p)
    out = -(bracket ** (-1.0 / (p - 1.0)))
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(out)
    return out


def reaction_flow(values, p: float, dt: float):
    """Advance v' = |v|^p exactly by dt, elementwise.

    Positive entries: (v^(1-p) - (p-1) dt)^(-1/(p-1)); negative entries mirror
    with the opposite sign in the bracket.  Entries below 1e-100 in magnitude
    are left unchanged (their change is O(|v|^p dt), far below roundoff of
    anything else).  Raises if dt crosses an entry's blow-up time; callers cap
    dt at C_DT * max|v|^(1-p), which keeps the bracket positive.
    """
    v = np.asarray(values, dtype=float)
    scalar = v.ndim == 0
    v = np.atleast_1d(v).copy()
    a = (p - 1.0) * dt
    pos = v > _TINY
    neg = v < -_TINY
    if np.any(pos):
        bracket = v[pos] ** (1.0 - p) - a
        if np.any(bracket <= 0):
            raise FloatingPointError("reaction step crossed a blow-up time")
        v[pos] = bracket ** (-1.0 / (p - 1.0))
    if np.any(neg):
        bracket = (-v[neg]) ** (1.0 - p) + a
        if np.any(bracket <= 0):
            raise FloatingPointError("reaction step crossed a blow-down time")
        v[neg] = -(bracket ** (-1.0 / (p - 1.0)))
    if scalar:
        return float(v[0])
    return v


def integrate_scalar_ode(p: float, v0: float, t_span, dt_max: float = 0.01) -> ScalarTrajectory:
    """Adaptive integration of v' = |v|^p over t_span = (t0, t1).

    Steps with the exact flow under dt = min(dt_max, C_DT |v|^(1-p)), so the
    result matches the closed form to roundoff on non-blow-up spans.  Forward
    runs stop early once |v| exceeds BLOW_THRESHOLD and record the (then
    essentially exact) blow-up time.  Backward spans are integrated backward
    but stored with times ascending; a backward singularity stops the run
    without recording a blow-up time.
    """
    p = validate_exponent(p)
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not (math.isfinite(t0) and math.isfinite(t1)) or t0 == t1:
        raise ValueError("t_span must be a finite nondegenerate interval")
    forward = t1 > t0
    sign = 1.0 if forward else -1.0

    times = [t0]
    values = [float(v0)]
    t, v = t0, float(v0)
    blowup_time = None
    while (t1 - t) * sign > 1e-14 * max(1.0, abs(t1)):
        mag = abs(v)
        cap = C_DT * mag ** (1.0 - p) if mag > _TINY else math.inf
        dt = min(dt_max, cap, (t1 - t) * sign)
        try:
            v = reaction_flow(v, p, sign * dt)
        except FloatingPointError:
            break
        t = t + sign * dt
        times.append(t)
        values.append(v)
        if abs(v) > BLOW_THRESHOLD:
            if forward and v > 0:
                # remaining life of the exact solution from here
                blowup_time = t + v ** (1.0 - p) / (p - 1.0)
            break

    times = np.asarray(times)
    values = np.asarray(values)
    if not forward:
        times = times[::-1]
        values = values[::-1]
    return ScalarTrajectory(times=times, values=values, blowup_time=blowup_time)
