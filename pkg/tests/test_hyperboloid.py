"""Embedding oracle: Minkowski algebra and finite-difference curvatures."""

import math

import numpy as np
import pytest

from hcflow import (
    embed,
    fd_fundamental_forms,
    geodesic_distance,
    minkowski_inner,
)
from hcflow.errors import ContractError


def off_center_sphere_u(center, radius):
    """Scalar radial-graph function of an off-axis-centered geodesic sphere."""
    def u_func(theta):
        u = radius
        for _ in range(60):
            f = (math.cosh(center) * math.cosh(u)
                 - math.sinh(center) * math.sinh(u) * math.cos(theta)
                 - math.cosh(radius))
            df = (math.cosh(center) * math.sinh(u)
                  - math.sinh(center) * math.cosh(u) * math.cos(theta))
            u = u - f / df
        return u
    return u_func


def test_embedding_lies_on_hyperboloid():
    u_func = lambda th: 1.0 + 0.05 * math.cos(2.0 * th)
    for theta in (0.3, 1.0, 2.0, 2.8):
        for phi in (0.0, 0.7):
            x = embed(u_func, theta, phi)
            assert minkowski_inner(x.coords, x.coords) == pytest.approx(
                -1.0, abs=1e-12)
            assert x.coords[0] >= 1.0


def test_geodesic_distance_radial():
    # two points on the same ray differ by their graph radii; arccosh near 1
    # turns eps-level inner-product roundoff into sqrt(eps) distance, hence
    # the 1e-7 budget for the coincident case
    for u1, u2 in ((0.5, 1.5), (1.0, 1.0), (2.0, 0.3)):
        x = embed(lambda th: u1, 1.2)
        y = embed(lambda th: u2, 1.2)
        assert geodesic_distance(x, y) == pytest.approx(abs(u1 - u2), abs=1e-7)


def test_fd_forms_sphere():
    ct = math.cosh(1.0) / math.sinh(1.0)
    for theta in (0.5, 1.0, 1.8, 2.6):
        forms = fd_fundamental_forms(lambda th: 1.0, theta)
        assert forms.kappa_mer == pytest.approx(ct, abs=1e-7)
        assert forms.kappa_rot == pytest.approx(ct, abs=1e-7)


def test_fd_forms_off_center_sphere():
    # the oracle itself against the closed form, at points with u' != 0
    u_func = off_center_sphere_u(0.3, 1.0)
    ct = math.cosh(1.0) / math.sinh(1.0)
    for theta in (0.6, 1.3, 2.2):
        forms = fd_fundamental_forms(u_func, theta)
        assert forms.kappa_mer == pytest.approx(ct, abs=1e-6)
        assert forms.kappa_rot == pytest.approx(ct, abs=1e-6)


def test_fd_forms_shapes_and_symmetry():
    forms = fd_fundamental_forms(lambda th: 1.0 + 0.05 * math.cos(2 * th), 1.1)
    assert forms.metric.shape == (2, 2)
    assert forms.second_form.shape == (2, 2)
    assert forms.second_form[0, 1] == forms.second_form[1, 0]
    assert forms.metric[0, 0] > 0.0 and forms.metric[1, 1] > 0.0


def test_fd_forms_contract_checks():
    sphere = lambda th: 1.0
    with pytest.raises(ContractError):
        fd_fundamental_forms(sphere, 0.01)            # too close to a pole
    with pytest.raises(ContractError):
        fd_fundamental_forms(sphere, 1.0, h_step=1e-6)  # step below contract
    with pytest.raises(ContractError):
        fd_fundamental_forms(sphere, 1.0, h_step=1e-2)  # step above contract
