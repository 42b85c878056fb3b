import math

import numpy as np
import pytest

from semiheat import (
    ReactionParams,
    blowup_time_from_min,
    integrate_scalar_ode,
    ode_lower_envelope,
    reaction_flow,
    trivial_ancient,
    validate_exponent,
)


def closed_form(p, v0, t):
    # signed solution of v' = |v|^p from v(0) = v0
    if v0 > 0:
        return (v0 ** (1 - p) - (p - 1) * t) ** (-1 / (p - 1))
    return -((-v0) ** (1 - p) + (p - 1) * t) ** (-1 / (p - 1))


def test_validate_exponent():
    assert validate_exponent(2.0) == 2.0
    with pytest.raises(ValueError):
        validate_exponent(1.0)
    with pytest.raises(ValueError):
        validate_exponent(1.0 + 1e-10)
    with pytest.raises(ValueError):
        ReactionParams(p=0.5)


def test_trivial_ancient_values():
    assert trivial_ancient(2.0, 0.0, -1.0) == pytest.approx(1.0)
    assert trivial_ancient(3.0, 0.0, -2.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        trivial_ancient(2.0, 0.0, 0.0)


def test_trivial_ancient_solves_the_ode():
    h = 1e-6
    deriv = (trivial_ancient(2.0, 0.0, -1.0 + h) - trivial_ancient(2.0, 0.0, -1.0 - h)) / (2 * h)
    assert deriv == pytest.approx(trivial_ancient(2.0, 0.0, -1.0) ** 2, abs=1e-6)


def test_trivial_ancient_monotone_and_identity():
    for p in (1.5, 2.0, 3.0):
        ts = np.linspace(-9.0, -0.5, 40)
        vals = trivial_ancient(p, 0.0, ts)
        assert np.all(np.diff(vals) > 0)
        ident = vals * ((p - 1) * (0.0 - ts)) ** (1.0 / (p - 1.0))
        assert np.max(np.abs(ident - 1.0)) <= 1e-12


def test_blowup_time_from_min():
    assert blowup_time_from_min(2.0, 1.0) == pytest.approx(1.0)
    assert blowup_time_from_min(2.0, 2.0) == pytest.approx(0.5)
    assert blowup_time_from_min(3.0, 1.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        blowup_time_from_min(2.0, 0.0)


def test_ode_lower_envelope_values():
    assert ode_lower_envelope(2.0, 0.5, 1.0, 1.0) == pytest.approx(-2.0 / 3.0)
    assert ode_lower_envelope(2.0, 0.5, 1.0, 0.0) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        ode_lower_envelope(2.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        ode_lower_envelope(2.0, 1.0, 1.0, 1.0)


def test_ode_lower_envelope_monotonicity():
    ts = np.linspace(0.0, 5.0, 30)
    vals = ode_lower_envelope(2.0, 0.3, 1.5, ts)
    assert np.all(vals < 0.0)
    assert np.all(np.diff(vals) > 0)
    # larger delta weakens the bound: envelope decreases in delta
    assert ode_lower_envelope(2.0, 0.8, 1.5, 2.0) < ode_lower_envelope(2.0, 0.2, 1.5, 2.0)
    # and stays below the exact scalar solution -L/(1 + L t) for p = 2
    for delta in (0.1, 0.5, 0.9):
        env = ode_lower_envelope(2.0, delta, 1.0, ts[1:])
        exact = -1.0 / (1.0 + ts[1:])
        assert np.all(env <= exact)


def test_reaction_flow_matches_closed_form():
    for p in (1.5, 2.0, 3.0):
        for v0 in (-2.0, -0.5, 0.0, 0.5, 2.0):
            out = reaction_flow(np.array([v0]), p, 0.01)[0]
            if v0 == 0.0:
                assert out == 0.0
            else:
                assert out == pytest.approx(closed_form(p, v0, 0.01), rel=1e-12)


def test_reaction_flow_signals_blowup_inside_step():
    with pytest.raises(FloatingPointError):
        reaction_flow(np.array([10.0]), 2.0, 1.0)  # blow-up time 0.1 < dt


def test_integrate_forward_positive():
    traj = integrate_scalar_ode(2.0, 1.0, (0.0, 0.9))
    assert traj.values[-1] == pytest.approx(10.0, abs=1e-6)
    assert traj.blowup_time is None


def test_integrate_forward_negative():
    traj = integrate_scalar_ode(2.0, -1.0, (0.0, 1.0))
    assert traj.values[-1] == pytest.approx(-0.5, abs=1e-6)


def test_integrate_backward_negative_blowdown():
    traj = integrate_scalar_ode(2.0, -1.0, (0.0, -0.9))
    assert np.all(np.diff(traj.times) > 0)
    assert traj.values[0] == pytest.approx(-10.0, abs=1e-4)


def test_integrate_records_blowup_time():
    traj = integrate_scalar_ode(2.0, 1.0, (0.0, 5.0))
    assert traj.blowup_time is not None
    assert traj.blowup_time == pytest.approx(1.0, abs=1e-6)
    assert traj.blowup_time > traj.times[-1]


def test_integrate_reproduces_trivial_ancient():
    for p in (1.5, 2.0, 3.0):
        v0 = trivial_ancient(p, 0.0, -3.0)
        traj = integrate_scalar_ode(p, v0, (-3.0, -0.5))
        ref = trivial_ancient(p, 0.0, traj.times)
        rel = np.max(np.abs(traj.values - ref) / ref)
        assert rel <= 1e-7


def test_relative_error_contract_on_non_blowup_span():
    for p, v0 in [(1.5, 0.5), (2.0, 2.0), (3.0, 1.0)]:
        t_end = 0.5 * blowup_time_from_min(p, v0)
        traj = integrate_scalar_ode(p, v0, (0.0, t_end))
        ref = np.array([closed_form(p, v0, t) for t in traj.times])
        assert np.max(np.abs(traj.values - ref) / np.abs(ref)) <= 1e-8


def test_scalar_trajectory_invariants():
    traj = integrate_scalar_ode(2.0, 1.0, (0.0, 0.5))
    assert np.all(np.diff(traj.times) > 0)
    assert np.all(np.isfinite(traj.values))
    assert math.isfinite(traj.values[-1])
