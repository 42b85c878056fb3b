import numpy as np
import pytest

from semiheat import (
    CLOSED_KINDS,
    ScalarField,
    build_manifold,
    curvature_bound,
    gradient_norm,
    implicit_diffusion_solve,
    laplace_beltrami,
    laplacian_spectrum,
)


def test_build_round_sphere_curvature():
    m = build_manifold("sphere_zonal", 2, 1.0, 256)
    assert m.ricci_lower == pytest.approx(1.0)
    assert curvature_bound(m) == pytest.approx(1.0)
    assert m.node_count == 256
    assert m.nodes[0] == 0.0 and m.nodes[-1] == pytest.approx(np.pi)


def test_build_flat_kinds_have_zero_ricci():
    circle = build_manifold("circle", 1, 2 * np.pi, 128)
    radial = build_manifold("euclidean_radial", 4, 20.0, 2000)
    assert circle.ricci_lower == 0.0
    assert radial.ricci_lower == 0.0
    assert curvature_bound(circle) == 0.0


def test_build_manifold_rejects_bad_combinations():
    with pytest.raises(ValueError):
        build_manifold("klein_bottle", 2, 1.0, 64)
    with pytest.raises(ValueError):
        build_manifold("sphere_zonal", 1, 1.0, 64)
    with pytest.raises(ValueError):
        build_manifold("circle", 2, 1.0, 64)
    with pytest.raises(ValueError):
        build_manifold("euclidean_radial", 4, -3.0, 64)
    with pytest.raises(ValueError):
        build_manifold("sphere_zonal", 2, 1.0, 8)


def test_scalar_field_validation():
    with pytest.raises(ValueError):
        ScalarField(np.ones((4, 8)))
    with pytest.raises(ValueError):
        ScalarField(np.full(32, np.nan))


def test_laplacian_of_constant_is_zero():
    for kind, n in [("sphere_zonal", 2), ("circle", 1), ("flat_torus_1d", 1)]:
        m = build_manifold(kind, n, 2.0, 96)
        out = laplace_beltrami(m, np.full(m.node_count, 3.7))
        assert np.max(np.abs(out)) <= 1e-12
    m = build_manifold("euclidean_radial", 3, 10.0, 96)
    out = laplace_beltrami(m, np.full(m.node_count, 3.7))
    assert np.max(np.abs(out)) <= 1e-12


def test_zonal_eigenfunction_and_convergence_order():
    # cos(theta) is the first Legendre mode: Lap u = -2 u on the unit S^2
    errs = []
    for N in (128, 256, 512):
        m = build_manifold("sphere_zonal", 2, 1.0, N)
        u = np.cos(m.nodes)
        err = np.max(np.abs(laplace_beltrami(m, u) + 2.0 * u))
        errs.append(err)
    order1 = np.log2(errs[0] / errs[1])
    order2 = np.log2(errs[1] / errs[2])
    assert 1.8 <= order1 <= 2.2
    assert 1.8 <= order2 <= 2.2


def test_circle_sine_laplacian():
    m = build_manifold("circle", 1, 2 * np.pi, 256)
    u = np.sin(m.nodes)
    err = np.max(np.abs(laplace_beltrami(m, u) + u))
    assert err <= 5.0 * m.spacing**2


def test_gradient_norm_examples():
    m = build_manifold("circle", 1, 2 * np.pi, 256)
    g = gradient_norm(m, np.sin(m.nodes))
    assert np.max(np.abs(g - np.abs(np.cos(m.nodes)))) <= 5.0 * m.spacing**2

    m2 = build_manifold("sphere_zonal", 2, 2.0, 256)
    g2 = gradient_norm(m2, np.cos(m2.nodes))
    assert np.max(np.abs(g2 - np.abs(np.sin(m2.nodes)) / 2.0)) <= 5.0 * m2.spacing**2

    const = gradient_norm(m, np.full(m.node_count, 4.0))
    assert np.max(np.abs(const)) == 0.0


def test_gradient_norm_nonnegative():
    m = build_manifold("sphere_zonal", 2, 1.0, 96)
    rng = np.random.default_rng(3)
    for _ in range(4):
        assert np.min(gradient_norm(m, rng.normal(size=m.node_count))) >= 0.0


def test_self_adjointness_in_weighted_inner_product():
    rng = np.random.default_rng(11)
    for kind, n in [("sphere_zonal", 3), ("circle", 1), ("flat_torus_1d", 1)]:
        m = build_manifold(kind, n, 2.5, 200)
        a = rng.normal(size=m.node_count)
        b = rng.normal(size=m.node_count)
        la = laplace_beltrami(m, a)
        lb = laplace_beltrami(m, b)
        w = m.volume_weights
        gap = abs(np.sum(w * la * b) - np.sum(w * a * lb))
        assert gap <= 1e-10 * np.linalg.norm(a) * np.linalg.norm(b)


def test_discrete_divergence_theorem_closed_kinds():
    rng = np.random.default_rng(5)
    for kind, n in [("sphere_zonal", 2), ("circle", 1), ("flat_torus_1d", 1)]:
        assert kind in CLOSED_KINDS
        m = build_manifold(kind, n, 3.0, 180)
        u = rng.normal(size=m.node_count)
        total = np.sum(m.volume_weights * laplace_beltrami(m, u))
        assert abs(total) <= 1e-10 * np.max(np.abs(u))


def test_sphere_spectrum_matches_round_values():
    m = build_manifold("sphere_zonal", 2, 1.0, 256)
    lam, modes = laplacian_spectrum(m)
    assert abs(lam[0]) <= 1e-8
    # zonal eigenvalues are l(l+1): 2, 6, 12, ...
    assert lam[1] == pytest.approx(2.0, rel=1e-3)
    assert lam[2] == pytest.approx(6.0, rel=1e-3)
    assert np.max(np.abs(modes[:, 1])) == pytest.approx(1.0)


def test_circle_spectrum_wavenumbers():
    m = build_manifold("circle", 1, 2 * np.pi, 128)
    lam, _ = laplacian_spectrum(m)
    # k^2 with multiplicity two for k >= 1
    assert lam[1] == pytest.approx(1.0, rel=1e-3)
    assert lam[2] == pytest.approx(1.0, rel=1e-3)
    assert lam[3] == pytest.approx(4.0, rel=4e-3)


def test_spectrum_rejects_open_kind():
    m = build_manifold("euclidean_radial", 3, 5.0, 64)
    with pytest.raises(ValueError):
        laplacian_spectrum(m)


def test_implicit_diffusion_preserves_constants_and_decays_modes():
    m = build_manifold("circle", 1, 2 * np.pi, 128)
    const = np.full(m.node_count, 2.5)
    out = implicit_diffusion_solve(m, const, 0.37)
    assert np.max(np.abs(out - 2.5)) <= 1e-12

    u = np.sin(m.nodes)
    dt = 0.05
    out = implicit_diffusion_solve(m, u, dt)
    lam, _ = laplacian_spectrum(m)
    expected = u / (1.0 + dt * lam[1])
    assert np.max(np.abs(out - expected)) <= 1e-6


def test_implicit_diffusion_keeps_nonnegative_data_nonnegative():
    for kind, n in [("sphere_zonal", 2), ("flat_torus_1d", 1), ("euclidean_radial", 3)]:
        m = build_manifold(kind, n, 4.0, 128)
        u = np.maximum(np.sin(7.0 * m.nodes), 0.0)
        out = u.copy()
        for _ in range(50):
            out = implicit_diffusion_solve(m, out, 0.02)
        assert float(np.min(out)) >= -1e-13


def test_misaligned_field_rejected():
    m = build_manifold("circle", 1, 2 * np.pi, 64)
    with pytest.raises(ValueError):
        laplace_beltrami(m, np.ones(63))
    with pytest.raises(ValueError):
        gradient_norm(m, np.ones(65))
