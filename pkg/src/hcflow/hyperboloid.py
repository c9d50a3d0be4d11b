"""Independent curvature oracle in the hyperboloid (Minkowski) model.

Hyperbolic (n+1)-space is realised as the upper hyperboloid
{x : <x, x> = -1, x_0 > 0} in R^{n+1,1} with the Lorentzian product
<x, y> = -x_0 y_0 + sum_i x_i y_i.  An axisymmetric radial graph embeds as

    X(theta, phi) = (cosh u(theta), sinh u(theta) * omega(theta, phi)),

where omega = (cos theta, sin theta * eta(phi)) is the polar
parametrisation of the unit n-sphere and eta(phi) walks a great circle of
the orbit sphere S^{n-1}.

Everything here is computed by central finite differences of the embedding
alone: tangents, the outward unit normal (by Lorentzian orthogonality to
the full tangent space), and the second fundamental form by differencing
the normal field.  No formula is shared with the ``geometry`` module, so
agreement between the two is a genuine cross-check, not a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .errors import ContractError

__all__ = [
    "MinkowskiPoint",
    "minkowski_inner",
    "embed",
    "geodesic_distance",
    "FundamentalForms",
    "fd_fundamental_forms",
]

H_STEP_MIN, H_STEP_MAX = 1e-5, 1e-3
POLE_MARGIN = 0.05  # oracle domain is theta in (margin, pi - margin)
HYPERBOLOID_TOL = 1e-12


def minkowski_inner(x, y) -> float:
    """Lorentzian inner product -x_0 y_0 + sum_{i>0} x_i y_i."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return float(np.dot(x[1:], y[1:]) - x[0] * y[0])


@dataclass(frozen=True)
class MinkowskiPoint:
    """A point of the upper hyperboloid, <x, x> = -1 within 1e-12."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        norm = minkowski_inner(c, c)
        if abs(norm + 1.0) > HYPERBOLOID_TOL or c[0] <= 0.0:
            raise ContractError(
                f"point is off the unit hyperboloid: <x,x> = {norm!r}")
        object.__setattr__(self, "coords", c)


def _omega(theta: float, phi: float, dimension: int,
           axis_pair: Tuple[int, int]) -> np.ndarray:
    """Unit vector of S^n: (cos theta, sin theta * eta(phi)) in R^{n+1}."""
    a, b = axis_pair
    if a == b or not (0 <= a < dimension and 0 <= b < dimension):
        raise ContractError(f"invalid azimuth axis pair {axis_pair} for n={dimension}")
    eta = np.zeros(dimension)
    eta[a] = math.cos(phi)
    eta[b] = math.sin(phi)
    out = np.zeros(dimension + 1)
    out[0] = math.cos(theta)
    out[1:] = math.sin(theta) * eta
    return out


def _embed_raw(u_func: Callable[[float], float], theta: float, phi: float,
               dimension: int, axis_pair: Tuple[int, int]) -> np.ndarray:
    u = float(u_func(theta))
    out = np.empty(dimension + 2)
    out[0] = math.cosh(u)
    out[1:] = math.sinh(u) * _omega(theta, phi, dimension, axis_pair)
    return out


def embed(u_func: Callable[[float], float], theta: float, phi: float = 0.0,
          dimension: int = 3, axis_pair: Tuple[int, int] = (0, 1)) -> MinkowskiPoint:
    """Embed the graph point at polar angle theta, azimuth phi."""
    return MinkowskiPoint(_embed_raw(u_func, theta, phi, dimension, axis_pair))


def geodesic_distance(x: MinkowskiPoint, y: MinkowskiPoint) -> float:
    """Hyperbolic distance arccosh(-<x, y>)."""
    return math.acosh(max(1.0, -minkowski_inner(x.coords, y.coords)))


def _radial_direction(u_func, theta: float, phi: float, dimension: int,
                      axis_pair) -> np.ndarray:
    u = float(u_func(theta))
    out = np.empty(dimension + 2)
    out[0] = math.sinh(u)
    out[1:] = math.cosh(u) * _omega(theta, phi, dimension, axis_pair)
    return out


def _unit_normal(u_func, theta: float, phi: float, h: float, dimension: int,
                 axis_pair) -> np.ndarray:
    """Outward unit normal by Lorentzian orthogonality to the tangent space.

    The tangent space at the point is spanned by finite-difference theta and
    phi tangents together with the exact orbit directions of S^{n-1}
    orthogonal to the sampled azimuth plane; the normal is the Lorentzian
    unit vector orthogonal to all of them and to the position itself,
    oriented to have positive product with the radial direction.
    """
    x = _embed_raw(u_func, theta, phi, dimension, axis_pair)
    t_th = (_embed_raw(u_func, theta + h, phi, dimension, axis_pair)
            - _embed_raw(u_func, theta - h, phi, dimension, axis_pair)) / (2.0 * h)
    t_ph = (_embed_raw(u_func, theta, phi + h, dimension, axis_pair)
            - _embed_raw(u_func, theta, phi - h, dimension, axis_pair)) / (2.0 * h)

    eta_metric = np.ones(dimension + 2)
    eta_metric[0] = -1.0
    rows = [eta_metric * x, eta_metric * t_th, eta_metric * t_ph]
    a, b = axis_pair
    for c in range(dimension):
        if c not in (a, b):
            row = np.zeros(dimension + 2)
            row[2 + c] = 1.0
            rows.append(row)
    _, _, vt = np.linalg.svd(np.vstack(rows))
    nu = vt[-1]
    norm = minkowski_inner(nu, nu)
    if norm <= 0.0:
        raise ContractError("normal direction degenerated (timelike null space)")
    nu = nu / math.sqrt(norm)
    if minkowski_inner(nu, _radial_direction(u_func, theta, phi, dimension,
                                             axis_pair)) < 0.0:
        nu = -nu
    return nu


@dataclass(frozen=True)
class FundamentalForms:
    """First and second fundamental forms in the (theta, phi) chart."""

    metric: np.ndarray
    second_form: np.ndarray
    kappa_mer: float
    kappa_rot: float


def fd_fundamental_forms(u_func: Callable[[float], float], theta: float,
                         h_step: float = 1e-4, dimension: int = 3,
                         phi: float = 0.0,
                         axis_pair: Tuple[int, int] = (0, 1)) -> FundamentalForms:
    """Fundamental forms and principal curvatures by central differences.

    ``theta`` must stay away from the poles (margin 0.05); use the analytic
    umbilic limit there instead.  ``h_step`` is clamped to [1e-5, 1e-3] by
    contract: below, normal differencing drowns in roundoff, above, the
    O(h^2) truncation exceeds the agreement budget.
    """
    if not (H_STEP_MIN <= h_step <= H_STEP_MAX):
        raise ContractError(
            f"h_step must lie in [{H_STEP_MIN:g}, {H_STEP_MAX:g}], got {h_step:g}")
    if not (POLE_MARGIN < theta < math.pi - POLE_MARGIN):
        raise ContractError(
            "theta too close to a pole for finite differencing; "
            "use the analytic umbilic limit there")

    h = h_step
    args = (dimension, axis_pair)
    t_th = (_embed_raw(u_func, theta + h, phi, *args)
            - _embed_raw(u_func, theta - h, phi, *args)) / (2.0 * h)
    t_ph = (_embed_raw(u_func, theta, phi + h, *args)
            - _embed_raw(u_func, theta, phi - h, *args)) / (2.0 * h)

    g = np.array([
        [minkowski_inner(t_th, t_th), minkowski_inner(t_th, t_ph)],
        [minkowski_inner(t_ph, t_th), minkowski_inner(t_ph, t_ph)],
    ])

    dn_th = (_unit_normal(u_func, theta + h, phi, h, *args)
             - _unit_normal(u_func, theta - h, phi, h, *args)) / (2.0 * h)
    dn_ph = (_unit_normal(u_func, theta, phi + h, h, *args)
             - _unit_normal(u_func, theta, phi - h, h, *args)) / (2.0 * h)

    h_cross = 0.5 * (minkowski_inner(dn_th, t_ph) + minkowski_inner(dn_ph, t_th))
    second = np.array([
        [minkowski_inner(dn_th, t_th), h_cross],
        [h_cross, minkowski_inner(dn_ph, t_ph)],
    ])

    shape_op = np.linalg.solve(g, second)
    eigvals, eigvecs = np.linalg.eig(shape_op)
    eigvals = eigvals.real
    # the eigenvector dominated by the theta coordinate belongs to the
    # meridian curvature; the chart is orthogonal so this is unambiguous
    mer_idx = int(np.argmax(np.abs(eigvecs[0, :])))
    kappa_mer = float(eigvals[mer_idx])
    kappa_rot = float(eigvals[1 - mer_idx])
    return FundamentalForms(metric=g, second_form=second,
                            kappa_mer=kappa_mer, kappa_rot=kappa_rot)
