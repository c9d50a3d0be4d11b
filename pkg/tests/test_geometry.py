"""Grid geometry: derivatives, curvature formulas, and the diffusion term."""

import math

import numpy as np
import pytest

from hcflow import (
    AxisymmetricProfile,
    GeometryCache,
    derivatives_on_grid,
    graph_speed_v,
    min_pair_product,
    parse_speed,
    principal_curvatures,
    sectional_margin,
    speed_diffusion_term,
    support_function,
)
from hcflow.errors import ConfigError, DomainError
from hcflow.geometry import contraction_rhs

SPEED = parse_speed("sigma(k=2)")


def _grid(m):
    return np.linspace(0.0, math.pi, m + 1)


def off_center_sphere(theta, center, radius):
    """Radial graph of the geodesic sphere of the given radius whose center
    sits at distance `center` along the polar axis, from the implicit
    relation cosh(c) cosh(u) - sinh(c) sinh(u) cos(theta) = cosh(R)."""
    u = np.full_like(theta, radius)
    for _ in range(60):
        f = (math.cosh(center) * np.cosh(u)
             - math.sinh(center) * np.sinh(u) * np.cos(theta)
             - math.cosh(radius))
        df = (math.cosh(center) * np.sinh(u)
              - math.sinh(center) * np.cosh(u) * np.cos(theta))
        u = u - f / df
    return u


def test_spectral_derivatives_exact_on_cosines():
    theta = _grid(128)
    u = np.cos(theta) + 0.3 * np.cos(3.0 * theta)
    du, d2u = derivatives_on_grid(u, method="spectral")
    assert np.max(np.abs(du + np.sin(theta) + 0.9 * np.sin(3 * theta))) <= 1e-11
    assert np.max(np.abs(d2u + np.cos(theta) + 2.7 * np.cos(3 * theta))) <= 1e-10
    # constants differentiate to exact zero
    dz, d2z = derivatives_on_grid(np.full(129, 2.5), method="spectral")
    assert np.max(np.abs(dz)) == 0.0
    assert np.max(np.abs(d2z)) == 0.0


def test_stencil_derivatives_second_order():
    errs = []
    for m in (64, 128, 256):
        theta = _grid(m)
        u = np.cos(2.0 * theta)
        du, d2u = derivatives_on_grid(u, method="stencil")
        errs.append(np.max(np.abs(d2u + 4.0 * np.cos(2.0 * theta))))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.1)


def test_derivative_method_validation():
    with pytest.raises(ConfigError):
        derivatives_on_grid(np.ones(129), method="mystery")
    with pytest.raises(ConfigError):
        derivatives_on_grid(np.ones(5))


def test_sphere_curvatures_exact():
    for r in (0.5, 1.0, 2.0):
        u = np.full(129, r)
        du, d2u = derivatives_on_grid(u, method="spectral")
        kmer, krot = principal_curvatures(u, du, d2u)
        ct = math.cosh(r) / math.sinh(r)
        assert np.max(np.abs(kmer - ct)) <= 1e-12
        assert np.max(np.abs(krot - ct)) <= 1e-12
        assert np.max(np.abs(graph_speed_v(u, du) - 1.0)) <= 1e-12
        assert np.max(np.abs(support_function(u, du) - math.sinh(r))) <= 1e-12


def test_off_center_sphere_closed_form_oracle():
    # a sphere seen from a displaced origin has nonconstant u, u', u''
    # but both principal curvatures must still equal coth(R) everywhere
    theta = _grid(256)
    u = off_center_sphere(theta, 0.3, 1.0)
    assert u.min() == pytest.approx(0.7, abs=1e-12)
    assert u.max() == pytest.approx(1.3, abs=1e-12)
    ct = math.cosh(1.0) / math.sinh(1.0)

    du, d2u = derivatives_on_grid(u, method="spectral")
    kmer, krot = principal_curvatures(u, du, d2u)
    assert np.max(np.abs(kmer - ct)) <= 1e-9
    assert np.max(np.abs(krot - ct)) <= 1e-9

    du, d2u = derivatives_on_grid(u, method="stencil")
    kmer, krot = principal_curvatures(u, du, d2u)
    assert np.max(np.abs(kmer - ct)) <= 1e-4
    assert np.max(np.abs(krot - ct)) <= 1e-4


def test_poles_are_umbilic():
    theta = _grid(128)
    u = 1.0 + 0.03 * np.cos(theta) + 0.02 * np.cos(3.0 * theta)
    du, d2u = derivatives_on_grid(u, method="spectral")
    kmer, krot = principal_curvatures(u, du, d2u)
    for pole in (0, -1):
        assert kmer[pole] == krot[pole]


def test_cache_consistency():
    theta = _grid(128)
    u = 1.0 + 0.05 * np.cos(2.0 * theta)
    cache = GeometryCache.from_profile(
        AxisymmetricProfile(dimension=3, u=u), SPEED)
    lam = np.sinh(u)
    assert np.allclose(cache.w2, lam * lam + cache.du ** 2, rtol=1e-14)
    assert np.allclose(cache.chi, lam / cache.v, rtol=1e-13)
    assert np.allclose(cache.norm_a2,
                       cache.kappa_mer ** 2 + 2.0 * cache.kappa_rot ** 2,
                       rtol=1e-13)
    kap = np.stack([cache.kappa_mer, cache.kappa_rot, cache.kappa_rot], axis=1)
    assert np.allclose(cache.speed, SPEED.value(kap), rtol=1e-14)
    assert np.allclose(contraction_rhs(u, 3, SPEED), -cache.v * cache.speed,
                       rtol=1e-14)


def test_min_pair_product_dimension_split():
    theta = _grid(128)
    u = 1.0 + 0.05 * np.cos(2.0 * theta)
    cache3 = GeometryCache.from_profile(
        AxisymmetricProfile(dimension=3, u=u), SPEED)
    mixed = cache3.kappa_mer * cache3.kappa_rot
    rot_pair = cache3.kappa_rot ** 2
    assert np.allclose(min_pair_product(cache3), np.minimum(mixed, rot_pair))
    # with n = 2 there is no pair inside the rotational eigenspace
    cache2 = GeometryCache.from_profile(
        AxisymmetricProfile(dimension=2, u=u), parse_speed("sigma(k=2)"))
    assert np.allclose(min_pair_product(cache2),
                       cache2.kappa_mer * cache2.kappa_rot)


def test_sectional_margin_sphere():
    u = np.full(129, 1.0)
    cache = GeometryCache.from_profile(
        AxisymmetricProfile(dimension=3, u=u), SPEED)
    csch2 = 1.0 / math.sinh(1.0) ** 2
    assert sectional_margin(cache, 0.0) == pytest.approx(csch2, rel=1e-12)
    coth2 = (math.cosh(1.0) / math.sinh(1.0)) ** 2
    assert sectional_margin(cache, 0.1) == pytest.approx(
        csch2 - 0.1 * coth2, rel=1e-12)
    assert cache.psc_ok


def test_speed_diffusion_vanishes_on_sphere():
    u = np.full(129, 1.0)
    cache = GeometryCache.from_profile(
        AxisymmetricProfile(dimension=3, u=u), SPEED)
    assert np.max(np.abs(speed_diffusion_term(cache))) <= 1e-10


def test_speed_diffusion_sign_at_interior_max():
    # at a strict interior max of F along a concave-speed surface the
    # diffusion term must push F down: gradient terms vanish, second
    # derivative is negative, and the speed derivative weights are positive
    theta = _grid(256)
    u = 1.0 + 0.05 * np.cos(2.0 * theta)
    cache = GeometryCache.from_profile(
        AxisymmetricProfile(dimension=3, u=u), SPEED)
    node = int(np.argmax(cache.speed))
    if 0 < node < 256:
        assert speed_diffusion_term(cache)[node] < 0.0


def test_profile_validation():
    with pytest.raises(ConfigError):
        AxisymmetricProfile(dimension=3, u=np.ones(5))
    with pytest.raises(ConfigError):
        AxisymmetricProfile(dimension=1, u=np.ones(129))
    with pytest.raises(DomainError):
        AxisymmetricProfile(dimension=3, u=np.zeros(129))
    with pytest.raises(DomainError):
        AxisymmetricProfile(dimension=3, u=np.full(129, math.nan))
    bad = np.ones(129)
    bad[3] = -0.2
    with pytest.raises(DomainError):
        contraction_rhs(bad, 3, SPEED)


def test_cone_violation_raises_domain_error():
    # strong pinching makes a curvature nonpositive inside the speed call
    theta = _grid(128)
    u = 1.0 + 0.9 * np.cos(2.0 * theta)
    with pytest.raises(DomainError):
        GeometryCache.from_profile(AxisymmetricProfile(dimension=3, u=u), SPEED)
