"""Axisymmetric radial graphs in hyperbolic space and their curvature data.

A hypersurface of dimension n in hyperbolic (n+1)-space is described as a
radial graph u(theta) over the polar angle theta in [0, pi] of the unit
n-sphere, rotationally symmetric about the polar axis.  With lam = sinh(u)
the warping factor, the relevant pointwise quantities are

    v       = sqrt(1 + u'^2 / lam^2)            (graph gradient factor)
    W       = lam * v = sqrt(lam^2 + u'^2)
    k_mer   = (-lam u'' + 2 lam' u'^2 + lam^2 lam') / W^3
    k_rot   = (lam' - u' cot(theta) / lam) / W   (multiplicity n - 1)
    chi     = lam / v                            (support function)

At the poles u' = 0 and k_rot is replaced by its limit
(lam lam' - u'') / lam^2, which also equals k_mer there: the poles are
umbilic.  The same formulas written for a round sphere u == r0 collapse to
coth(r0) for both curvatures, and the full arrays are cross-checked against
an independent finite-difference oracle in the hyperboloid model (see the
``hyperboloid`` module).

Derivatives on the grid come in two flavours: plain second-order central
stencils, and a cosine-series (even extension) pseudospectral method.  The
spectral path is the default for curvature caches because smooth profiles
then carry derivative errors far below the 1e-6 oracle-agreement budget,
while the stencil path keeps the textbook Richardson behaviour used by the
refinement tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ConfigError, ContractError, DomainError
from .speeds import CurvatureSpeed

__all__ = [
    "AxisymmetricProfile",
    "GeometryCache",
    "derivatives_on_grid",
    "graph_speed_v",
    "principal_curvatures",
    "support_function",
    "sectional_margin",
    "min_pair_product",
    "contraction_rhs",
    "speed_diffusion_term",
]

MIN_GRID = 8  # coarsest admissible grid (number of intervals)

_GRID_CACHE: dict = {}


def _grid_trig(m: int) -> Tuple[np.ndarray, np.ndarray]:
    """Per-grid constants: theta nodes and cot(theta) on the interior."""
    hit = _GRID_CACHE.get(m)
    if hit is None:
        theta = np.linspace(0.0, math.pi, m + 1)
        cot = np.cos(theta[1:-1]) / np.sin(theta[1:-1])
        theta.flags.writeable = False
        cot.flags.writeable = False
        hit = (theta, cot)
        _GRID_CACHE[m] = hit
    return hit


@dataclass(frozen=True)
class AxisymmetricProfile:
    """Radial graph sampled on the uniform polar grid theta_m = m*pi/M.

    Parameters
    ----------
    dimension : hypersurface dimension n >= 2.
    u : array of M+1 positive radii, endpoints at the poles.
    t : flow time attached to this snapshot.
    """

    dimension: int
    u: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        if u.ndim != 1 or u.shape[0] < MIN_GRID + 1:
            raise ConfigError(
                f"profile needs at least {MIN_GRID + 1} nodes, got shape {u.shape}")
        # min catches nonpositive and NaN in one pass, max catches +inf
        if not (float(np.min(u)) > 0.0 and float(np.max(u)) < np.inf):
            raise DomainError("profile radii must be positive and finite")
        if self.dimension < 2:
            raise ConfigError("hypersurface dimension must be at least 2")
        object.__setattr__(self, "u", u)

    @property
    def intervals(self) -> int:
        return self.u.shape[0] - 1

    @property
    def theta(self) -> np.ndarray:
        return _grid_trig(self.u.shape[0] - 1)[0]


def derivatives_on_grid(u, method: str = "stencil") -> Tuple[np.ndarray, np.ndarray]:
    """First and second theta-derivatives of a symmetric grid function.

    The function is assumed smooth on the sphere, i.e. even across both
    poles; the symmetry supplies the ghost nodes u(-h) = u(h), forces
    u'(0) = u'(pi) = 0, and gives the one-sided second derivative
    2 (u_1 - u_0)/h^2 at the poles.
    """
    u = np.asarray(u, dtype=float)
    m = u.shape[0] - 1
    if m < MIN_GRID:
        raise ConfigError(f"grid must have at least {MIN_GRID} intervals, got {m}")
    if method == "stencil":
        h = math.pi / m
        du = np.empty_like(u)
        d2u = np.empty_like(u)
        du[1:-1] = (u[2:] - u[:-2]) / (2.0 * h)
        du[0] = du[-1] = 0.0
        d2u[1:-1] = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
        d2u[0] = 2.0 * (u[1] - u[0]) / (h * h)
        d2u[-1] = 2.0 * (u[-2] - u[-1]) / (h * h)
        return du, d2u
    if method == "spectral":
        # cosine series via an even periodic extension of length 2M; a
        # constant is removed first so constants differentiate to exact
        # zeros instead of amplified k=0 roundoff
        shifted = u - u[0]
        ext = np.concatenate([shifted, shifted[-2:0:-1]])
        coef = np.fft.rfft(ext)
        k = np.arange(m + 1)
        dcoef = 1j * k * coef
        dcoef[-1] = 0.0  # Nyquist mode has no odd derivative on the grid
        du = np.fft.irfft(dcoef, n=2 * m)[:m + 1]
        d2u = np.fft.irfft(-(k * k) * coef, n=2 * m)[:m + 1]
        du[0] = du[-1] = 0.0
        return du, d2u
    raise ConfigError(f"unknown derivative method {method!r}")


def graph_speed_v(u, du) -> np.ndarray:
    """Gradient factor v = sqrt(1 + u'^2 / sinh(u)^2)."""
    u = np.asarray(u, dtype=float)
    du = np.asarray(du, dtype=float)
    lam = np.sinh(u)
    return np.sqrt(1.0 + (du / lam) ** 2)


def _curvature_core(du, d2u, lam, dlam, w, w2) -> Tuple[np.ndarray, np.ndarray]:
    """Curvature formulas given the shared transcendental prework."""
    w3 = w2 * w
    kmer = (-lam * d2u + 2.0 * dlam * du * du + lam * lam * dlam) / w3

    krot = np.empty_like(lam)
    cot = _grid_trig(lam.shape[0] - 1)[1]
    krot[1:-1] = (dlam[1:-1] - du[1:-1] * cot / lam[1:-1]) / w[1:-1]
    for pole in (0, -1):
        krot[pole] = (dlam[pole] - d2u[pole] / lam[pole]) / w[pole]
        kmer[pole] = krot[pole]
    return kmer, krot


def principal_curvatures(u, du, d2u) -> Tuple[np.ndarray, np.ndarray]:
    """Meridian and rotational principal curvatures of the graph.

    Returns (k_mer, k_rot); k_rot carries multiplicity n-1.  Both pole
    values are set to the rotational limit, which coincides with the
    meridian formula there (umbilic poles).
    """
    u = np.asarray(u, dtype=float)
    lam = np.sinh(u)
    dlam = np.cosh(u)
    w2 = lam * lam + du * du
    w = np.sqrt(w2)
    return _curvature_core(du, d2u, lam, dlam, w, w2)


def support_function(u, du) -> np.ndarray:
    """Hyperbolic support function chi = sinh(u) / v of the graph."""
    return np.sinh(np.asarray(u, dtype=float)) / graph_speed_v(u, du)


@dataclass(frozen=True)
class GeometryCache:
    """All pointwise geometric data of a profile needed by the flow.

    Built once per evaluation of the right-hand side; everything is a
    vectorised array over the grid.  ``speed`` is the curvature function F
    evaluated at (k_mer, k_rot, ..., k_rot), ``grad_mer``/``grad_rot`` the
    corresponding first derivatives, used for the step-size rule and the
    diffusion term of the speed evolution identity.
    """

    profile: AxisymmetricProfile
    du: np.ndarray
    d2u: np.ndarray
    v: np.ndarray
    w2: np.ndarray
    kappa_mer: np.ndarray
    kappa_rot: np.ndarray
    speed: np.ndarray
    grad_mer: np.ndarray
    grad_rot: np.ndarray
    chi: np.ndarray
    norm_a2: np.ndarray
    method: str

    @classmethod
    def from_profile(cls, profile: AxisymmetricProfile, speed: CurvatureSpeed,
                     method: str = "spectral") -> "GeometryCache":
        n = profile.dimension
        u = profile.u
        du, d2u = derivatives_on_grid(u, method=method)
        lam = np.sinh(u)
        dlam = np.cosh(u)
        w2 = lam * lam + du * du
        w = np.sqrt(w2)
        kmer, krot = _curvature_core(du, d2u, lam, dlam, w, w2)
        kap = np.empty((u.shape[0], n))
        kap[:, 0] = kmer
        kap[:, 1:] = krot[:, None]
        f, grad = speed.value_gradient(kap)  # validates the positive cone
        if not float(np.max(f)) < np.inf:
            raise DomainError("curvature speed is not finite on the grid")
        return cls(
            profile=profile,
            du=du,
            d2u=d2u,
            v=w / lam,
            w2=w2,
            kappa_mer=kmer,
            kappa_rot=krot,
            speed=f,
            grad_mer=grad[:, 0],
            grad_rot=grad[:, 1],
            chi=lam * lam / w,
            norm_a2=kmer * kmer + (n - 1) * krot * krot,
            method=method,
        )

    @property
    def theta(self) -> np.ndarray:
        return self.profile.theta

    @property
    def psc_ok(self) -> bool:
        return sectional_margin(self, 0.0) > 0.0


def contraction_rhs(u: np.ndarray, dimension: int, speed: CurvatureSpeed,
                    method: str = "spectral") -> np.ndarray:
    """Right-hand side -v F of the graph flow, without gradient work.

    Fast path for the inner stage of a time step: performs the same
    validity checks as a full GeometryCache (positive radii, curvature
    in the positive cone, finite speed) but evaluates only the speed
    value.  Raises DomainError whenever building the full cache would.
    """
    if not (float(np.min(u)) > 0.0 and float(np.max(u)) < np.inf):
        raise DomainError("profile radii must be positive and finite")
    du, d2u = derivatives_on_grid(u, method=method)
    lam = np.sinh(u)
    dlam = np.cosh(u)
    w2 = lam * lam + du * du
    w = np.sqrt(w2)
    kmer, krot = _curvature_core(du, d2u, lam, dlam, w, w2)
    kap = np.empty((u.shape[0], dimension))
    kap[:, 0] = kmer
    kap[:, 1:] = krot[:, None]
    f = speed.value(kap)  # validates the positive cone
    if not float(np.max(f)) < np.inf:
        raise DomainError("curvature speed is not finite on the grid")
    return -(w / lam) * f


def min_pair_product(cache: GeometryCache) -> np.ndarray:
    """Per-node minimum of kappa_i * kappa_j over distinct principal pairs.

    The axisymmetric spectrum is {k_mer} + {k_rot with multiplicity n-1},
    so the candidate products are the mixed pair and, when n >= 3, the pair
    inside the rotational eigenspace.
    """
    mixed = cache.kappa_mer * cache.kappa_rot
    if cache.profile.dimension >= 3:
        return np.minimum(mixed, cache.kappa_rot ** 2)
    return mixed


def sectional_margin(cache: GeometryCache, eps: float,
                     two_smallest: bool = True) -> float:
    """Grid minimum of kappa_a kappa_b - 1 - eps F^2 over curvature pairs.

    With ``two_smallest`` the pair is the two smallest principal values at
    each node (the quantity whose minimum the contraction preserves); the
    alternative scans every distinct pair.  On the positive cone the two
    coincide; both are provided because only the former is meaningful once
    a degenerate state is being diagnosed.
    """
    if two_smallest:
        kmer, krot = cache.kappa_mer, cache.kappa_rot
        if cache.profile.dimension >= 3:
            pair = np.where(kmer <= krot, kmer * krot, krot * krot)
        else:
            pair = kmer * krot
    else:
        pair = min_pair_product(cache)
    return float(np.min(pair - 1.0 - eps * cache.speed ** 2))


def speed_diffusion_term(cache: GeometryCache) -> np.ndarray:
    """Anisotropic covariant Hessian trace of the speed on the surface.

    Returns  F'^{mer} (grad^2 F)_11 + (n-1) F'^{rot} (grad^2 F)_22  in the
    orthonormal principal frame of the induced metric
    g = W^2 dtheta^2 + sinh(u)^2 sin(theta)^2 g_{S^{n-2}}; this is the
    diffusion part of the evolution identity for F along the flow.
    """
    prof = cache.profile
    u = prof.u
    n = prof.dimension
    f = cache.speed
    df, d2f = derivatives_on_grid(f, method=cache.method)
    lam = np.sinh(u)
    dlam = np.cosh(u)
    w2 = cache.w2
    w = np.sqrt(w2)
    dw = (lam * dlam * cache.du + cache.du * cache.d2u) / w

    mer = (d2f - (dw / w) * df) / w2

    rot = np.empty_like(f)
    cot = _grid_trig(prof.intervals)[1]
    log_rho_prime = cache.du[1:-1] * dlam[1:-1] / lam[1:-1] + cot
    rot[1:-1] = log_rho_prime * df[1:-1] / w2[1:-1]
    for pole in (0, -1):
        rot[pole] = d2f[pole] / w2[pole]
    return cache.grad_mer * mer + (n - 1) * cache.grad_rot * rot
