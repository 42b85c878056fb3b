"""Smooth cutoff profiles and numerical certification of their inequalities.

The base profile eta is a polynomial smoothstep on [3/4, 1]: identically 1
below 3/4, identically 0 above 1, and vanishing to order exactly k at the
right joint (eta ~ c (1-s)^k there), with a C^k left joint.  The working
cutoff is phi = eta^q.  Certification means: the grid maximum of a ratio
like |2 phi'^2/phi - phi''| / phi^(1/p) stays bounded under grid refinement
(<= 5% growth per doubling), in which case the observed maximum is reported
as the fitted constant.  Power counting on eta ~ (1-s)^k shows the ratio
behaves like (1-s)^(kq - 2 - kq/p) near the right joint, so boundedness is
equivalent to kq >= 2p/(p-1); the default q is the smallest integer
satisfying that with k = 3.

All derivatives are closed-form polynomial evaluations, never differences.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

_PLATEAU_END = 0.75
_SUPPORT_END = 1.0


def _eta_polynomial(k: int) -> Polynomial:
    # eta(z) = sum_{j<=k} C(2k, j) z^j (1-z)^(2k-j): the unique degree-2k
    # polynomial with eta(0)=1 to order k+1 and a zero of order exactly k at 1
    z = Polynomial([0.0, 1.0])
    one_minus = Polynomial([1.0, -1.0])
    eta = Polynomial([0.0])
    for j in range(k + 1):
        eta = eta + math.comb(2 * k, j) * z**j * one_minus ** (2 * k - j)
    return eta


def default_power(p: float) -> int:
    """Default exponent q = ceil(2p/(p-1)); with any k >= 2 this satisfies
    the certification condition kq >= 2p/(p-1) with margin."""
    return max(1, math.ceil(2.0 * p / (p - 1.0)))


@dataclass(frozen=True)
class SmoothCutoff:
    """Sampled cutoff profile with closed-form derivative values.

    phi lives in [0,1], equals 1 on grid points <= 3/4, equals 0 from 1 on,
    and is nonincreasing.  ``certified`` accumulates fitted constants keyed
    by inequality name; it is the one mutable field.
    """

    grid: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    d2phi: np.ndarray
    k: int
    q: int
    certified: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(self.phi < -1e-12) or np.any(self.phi > 1.0 + 1e-12):
            raise ValueError("phi must take values in [0, 1]")
        plateau = self.grid <= _PLATEAU_END
        if not np.allclose(self.phi[plateau], 1.0, atol=1e-12):
            raise ValueError("phi must equal 1 up to the plateau end")
        outside = self.grid >= _SUPPORT_END
        if not np.allclose(self.phi[outside], 0.0, atol=1e-12):
            raise ValueError("phi must vanish beyond the support end")
        if np.any(np.diff(self.phi) > 1e-12):
            raise ValueError("phi must be nonincreasing")
        if np.any(self.dphi > 1e-12):
            raise ValueError("dphi must be nonpositive")

    def at(self, s):
        """Evaluate (phi, phi', phi'') at arbitrary points."""
        return _evaluate(self.k, self.q, s)


def _evaluate(k: int, q: int, s):
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    eta = _eta_polynomial(k)
    deta = eta.deriv()
    d2eta = eta.deriv(2)
    # map [3/4, 1] to the unit interval; chain-rule factor 4 per derivative
    z = (s_arr - _PLATEAU_END) / (_SUPPORT_END - _PLATEAU_END)
    scale = 1.0 / (_SUPPORT_END - _PLATEAU_END)

    phi = np.ones_like(s_arr)
    dphi = np.zeros_like(s_arr)
    d2phi = np.zeros_like(s_arr)
    mid = (z > 0.0) & (z < 1.0)
    zm = z[mid]
    e = eta(zm)
    de = deta(zm)
    d2e = d2eta(zm)
    phi[mid] = e**q
    dphi[mid] = q * e ** (q - 1) * de * scale
    second = q * e ** (q - 1) * d2e
    if q >= 2:
        second = second + q * (q - 1) * e ** (q - 2) * de**2
    d2phi[mid] = second * scale**2
    phi[z >= 1.0] = 0.0
    dphi[z >= 1.0] = 0.0
    d2phi[z >= 1.0] = 0.0
    if np.isscalar(s) or np.asarray(s).ndim == 0:
        return float(phi[0]), float(dphi[0]), float(d2phi[0])
    return phi, dphi, d2phi


def build_phi(p: float, k: int = 3, q: int | None = None, grid_count: int = 1024) -> SmoothCutoff:
    """Build phi = eta^q sampled (with exact derivatives) on [0, 1].

    q defaults to the smallest integer with k*q >= 2p/(p-1), the sufficient
    condition for the reaction-power inequality to certify.
    """
    if p <= 1:
        raise ValueError("p must exceed 1")
    if k < 2:
        raise ValueError("flatness order k must be at least 2")
    if grid_count < 256:
        raise ValueError("grid_count must be at least 256")
    if q is None:
        q = default_power(p)
    if q < 1:
        raise ValueError("power q must be at least 1")
    grid = np.linspace(0.0, 1.0, grid_count)
    phi, dphi, d2phi = _evaluate(k, q, grid)
    return SmoothCutoff(grid=grid, phi=phi, dphi=dphi, d2phi=d2phi, k=int(k), q=int(q))


@dataclass
class CertificationResult:
    """Outcome of a refinement-stability certification."""

    constant: float
    diverged: bool
    level_maxima: list

    def to_json_dict(self):
        return {
            "constant": self.constant,
            "diverged": self.diverged,
            "level_maxima": list(self.level_maxima),
        }


# a certified constant may grow at most this factor per grid doubling
_STABILITY_RATIO = 1.05


def _certify_ratio(k, q, numerator_fn, base_count, levels):
    maxima = []
    for level in range(levels):
        count = base_count * 2**level
        s = np.linspace(0.0, 1.0, count)
        phi, dphi, d2phi = _evaluate(k, q, s)
        mask = phi > 0.0
        vals = numerator_fn(phi[mask], dphi[mask], d2phi[mask])
        maxima.append(float(np.max(vals)))
    diverged = any(
        maxima[i + 1] > _STABILITY_RATIO * maxima[i] for i in range(len(maxima) - 1)
    )
    return CertificationResult(constant=maxima[-1], diverged=diverged, level_maxima=maxima)


def verify_phi_inequality(c: SmoothCutoff, p: float, refinement_levels: int = 3) -> CertificationResult:
    """Certify |2 phi'^2 / phi - phi''| <= C phi^(1/p) by refinement.

    Returns the fitted C (the finest-level grid maximum of the ratio) when
    the level maxima are stable, or a divergence flag when they grow by more
    than 5% per doubling, which happens exactly when kq < 2p/(p-1).
    """
    if refinement_levels < 2:
        raise ValueError("need at least two refinement levels")

    def ratio(phi, dphi, d2phi):
        return np.abs(2.0 * dphi**2 / phi - d2phi) / phi ** (1.0 / p)

    result = _certify_ratio(c.k, c.q, ratio, c.grid.size, refinement_levels)
    c.certified[f"reaction_power_ratio_p={p:g}"] = result.constant if not result.diverged else math.inf
    return result


@dataclass
class SpaceTimeCutoff:
    """Separable cutoff psi(r, t) = phi_space(r / R) * phi_time((T0 - t) / T).

    Equals 1 for r <= 3R/4 and t within the last three quarters of the
    window, vanishes for r >= R or t <= T0 - T.  ``certified`` maps each
    requested derivative-ratio inequality to its CertificationResult; the
    stored constants are for the normalized profiles, so the physical bounds
    carry 1/R, 1/R^2, and 1/T factors respectively.
    """

    space: SmoothCutoff
    time: SmoothCutoff
    R: float
    T: float
    certified: dict = field(default_factory=dict)

    def value(self, r, t, T0: float = 0.0):
        ps, _, _ = self.space.at(np.asarray(r, dtype=float) / self.R)
        pt, _, _ = self.time.at((T0 - np.asarray(t, dtype=float)) / self.T)
        return ps * pt

    def certification_json(self) -> str:
        payload = {key: res.to_json_dict() for key, res in sorted(self.certified.items())}
        return json.dumps(payload, indent=1, sort_keys=True)


def build_liyau_psi(
    R: float,
    T: float,
    a_list,
    k: int = 3,
    q: int = 4,
    grid_count: int = 1024,
    refinement_levels: int = 3,
) -> SpaceTimeCutoff:
    """Build and certify the space-time cutoff used to localize gradient
    bounds on a parabolic cylinder of radius R and depth T.

    For each a in a_list (all in (0,1)) the profile ratios |phi'| / phi^a and
    |phi''| / phi^a are certified by refinement stability, and the time
    profile's |phi'| / phi^(1/2) bound is certified once.
    """
    if R <= 0 or T <= 0:
        raise ValueError("R and T must be positive")
    for a in a_list:
        if not 0.0 < a < 1.0:
            raise ValueError("every exponent a must lie strictly between 0 and 1")
    space = build_phi(p=2.0, k=k, q=q, grid_count=grid_count)
    time = build_phi(p=2.0, k=k, q=q, grid_count=grid_count)
    stc = SpaceTimeCutoff(space=space, time=time, R=float(R), T=float(T))

    for a in a_list:
        first = _certify_ratio(
            k, q, lambda phi, dphi, d2phi, a=a: np.abs(dphi) / phi**a, grid_count, refinement_levels
        )
        second = _certify_ratio(
            k, q, lambda phi, dphi, d2phi, a=a: np.abs(d2phi) / phi**a, grid_count, refinement_levels
        )
        stc.certified[f"space_first_derivative_a={a:g}"] = first
        stc.certified[f"space_second_derivative_a={a:g}"] = second
    stc.certified["time_first_derivative_a=0.5"] = _certify_ratio(
        k, q, lambda phi, dphi, d2phi: np.abs(dphi) / phi**0.5, grid_count, refinement_levels
    )
    return stc


def export_cutoff_csv(c: SmoothCutoff, path):
    """Profile table (s, phi, phi', phi'') for plotting."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "phi", "dphi", "d2phi"])
        for row in zip(c.grid, c.phi, c.dphi, c.d2phi):
            writer.writerow([repr(float(v)) for v in row])
