"""Curvature speed functions on the positive cone.

A speed is a smooth symmetric function F of the principal curvatures
(kappa_1, ..., kappa_n), positive, strictly increasing in each argument,
homogeneous of degree one and normalised so that F(1, ..., 1) = 1.  The
admissible class additionally satisfies a quadratic-form inequality for the
second derivatives,

    sum_kl F''^{kl} y_k y_l  >=  (sum_k F'^k y_k)^2 / F
                                 - sum_k (F'^k / kappa_k) y_k^2,

which is equivalent to convexity of z -> log F(e^{z_1}, ..., e^{z_n}).
Every speed built here is checked against that inequality by seeded
sampling (``check_assumption``), never assumed.

Three families are provided and can be blended geometrically:

* ``PowerMean(r)``       -- ((1/n) sum kappa_i^r)^(1/r), r > 0
* ``ElementarySymRoot(k)`` -- normalised k-th elementary symmetric
  polynomial to the power 1/k
* ``GeometricBlend``     -- weighted geometric mean of other speeds

All evaluators accept arrays of shape (..., n) and broadcast over leading
axes; this keeps the sampling suites and the flow loop vectorised.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import ContractError, DomainError

__all__ = [
    "PrincipalCurvatures",
    "DerivativeBundle",
    "CurvatureSpeed",
    "PowerMean",
    "ElementarySymRoot",
    "GeometricBlend",
    "AssumptionReport",
    "geometric_mean_gap",
    "inverse_concavity_margin",
    "ordering_margin",
    "quadratic_form_margin",
    "log_hessian",
    "log_hessian_min_eigenvalue",
    "matrix_second_derivative",
    "dual_value",
    "check_assumption",
    "parse_speed",
    "builtin_speeds",
]

# Tolerances pinned by the module contract.
EULER_RTOL = 1e-10          # |sum F'^i kappa_i - F| <= EULER_RTOL * F
HESSIAN_SYM_TOL = 1e-12     # max |H - H^T|
WEIGHT_SUM_TOL = 1e-12      # blend weights must sum to 1 this tightly
COINCIDENCE_REL = 1e-8      # |kappa_i - kappa_j| < this * max(kappa) -> limit
FLAG_TOL = 1e-8             # admissibility flags: margins >= -FLAG_TOL


def _as_cone_array(kappa) -> np.ndarray:
    """Coerce to a float array of shape (..., n) inside the positive cone."""
    if isinstance(kappa, PrincipalCurvatures):
        kappa = kappa.values
    arr = np.asarray(kappa, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] < 1:
        raise ContractError("curvature input must have at least one entry")
    # single min pass: rejects nonpositive entries and NaN together
    if not float(np.min(arr)) > 0.0:
        raise DomainError("curvature vector has a nonpositive entry; "
                          "speeds are defined on the positive cone only")
    return arr


@dataclass(frozen=True)
class PrincipalCurvatures:
    """Principal curvature vector, stored sorted ascending.

    The permutation that sorted the input is kept so geometry callers can
    map sorted-coordinate quantities back to their own ordering.
    """

    values: np.ndarray
    order: np.ndarray  # values == raw[order]

    @classmethod
    def from_raw(cls, raw) -> "PrincipalCurvatures":
        arr = np.asarray(raw, dtype=float)
        if arr.ndim != 1:
            raise ContractError("expected a one-dimensional curvature vector")
        if not np.all(arr > 0.0):
            raise DomainError("principal curvatures must be positive")
        order = np.argsort(arr, kind="stable")
        return cls(values=arr[order], order=order)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def to_input_order(self, sorted_components: np.ndarray) -> np.ndarray:
        """Undo the sort for a vector expressed in sorted coordinates."""
        out = np.empty_like(np.asarray(sorted_components, dtype=float))
        out[self.order] = sorted_components
        return out


@dataclass(frozen=True)
class DerivativeBundle:
    """Value, gradient and Hessian of a speed at a single point."""

    value: float
    gradient: np.ndarray
    hessian: np.ndarray

    def check(self) -> None:
        """Validate the bundle invariants; raises ContractError on failure."""
        g, h = self.gradient, self.hessian
        if not np.all(g > 0.0):
            raise ContractError("gradient of an increasing speed must be positive")
        kappa = self._kappa
        euler = abs(float(np.dot(g, kappa)) - self.value)
        if euler > EULER_RTOL * abs(self.value):
            raise ContractError(
                f"Euler identity violated: residual {euler:.3e} "
                f"exceeds {EULER_RTOL:.0e} * F")
        asym = float(np.max(np.abs(h - h.T))) if h.size else 0.0
        if asym > HESSIAN_SYM_TOL:
            raise ContractError(f"Hessian asymmetry {asym:.3e} above tolerance")

    # the evaluation point travels with the bundle so check() is self-contained
    _kappa: np.ndarray = field(default=None, repr=False)


class CurvatureSpeed:
    """Base class; subclasses implement value/gradient/hessian on (..., n)."""

    strictly_concave: bool = False

    # -- core evaluators ---------------------------------------------------
    def value(self, kappa) -> np.ndarray:
        raise NotImplementedError

    def gradient(self, kappa) -> np.ndarray:
        raise NotImplementedError

    def hessian(self, kappa) -> np.ndarray:
        raise NotImplementedError

    def value_gradient(self, kappa) -> Tuple[np.ndarray, np.ndarray]:
        """Value and gradient together (hot path for the flow loop)."""
        return self.value(kappa), self.gradient(kappa)

    # -- conveniences ------------------------------------------------------
    def bundle(self, kappa) -> DerivativeBundle:
        arr = _as_cone_array(kappa)
        if arr.ndim != 1:
            raise ContractError("bundle() takes a single curvature vector")
        b = DerivativeBundle(
            value=float(self.value(arr)),
            gradient=self.gradient(arr),
            hessian=self.hessian(arr),
            _kappa=arr,
        )
        b.check()
        return b

    def __str__(self) -> str:  # round-trips through parse_speed
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class PowerMean(CurvatureSpeed):
    """r-th power mean  ((1/n) sum kappa_i^r)^(1/r)  with r > 0."""

    r: float

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r <= 0.0:
            raise ContractError(f"power mean exponent must be positive, got {self.r}")
        object.__setattr__(self, "r", r)

    @property
    def strictly_concave(self) -> bool:
        return 0.0 < self.r < 1.0

    def value(self, kappa):
        k = _as_cone_array(kappa)
        return np.mean(k ** self.r, axis=-1) ** (1.0 / self.r)

    def value_gradient(self, kappa):
        k = _as_cone_array(kappa)
        n = k.shape[-1]
        r = self.r
        pow_r1 = k ** (r - 1.0)
        f = np.mean(pow_r1 * k, axis=-1) ** (1.0 / r)
        grad = (f ** (1.0 - r))[..., None] * pow_r1 / n
        return f, grad

    def gradient(self, kappa):
        return self.value_gradient(kappa)[1]

    def hessian(self, kappa):
        k = _as_cone_array(kappa)
        n = k.shape[-1]
        r = self.r
        f = self.value(k)
        a = k ** (r - 1.0)
        cross = ((1.0 - r) * f ** (1.0 - 2.0 * r))[..., None, None] \
            * np.einsum("...i,...j->...ij", a, a) / (n * n)
        diag = (r - 1.0) * (f ** (1.0 - r))[..., None] * k ** (r - 2.0) / n
        out = cross
        idx = np.arange(n)
        out[..., idx, idx] += diag
        return out

    def __str__(self):
        return f"powermean(r={self.r:g})"


def _elementary_table(kappa: np.ndarray) -> np.ndarray:
    """Coefficients sigma_0..sigma_n of prod(1 + kappa_i x), batched."""
    n = kappa.shape[-1]
    sig = np.zeros(kappa.shape[:-1] + (n + 1,))
    sig[..., 0] = 1.0
    for i in range(n):
        ki = kappa[..., i, None]
        sig[..., 1:i + 2] += ki * sig[..., 0:i + 1]
    return sig


def _reduced_table(sig: np.ndarray, kappa: np.ndarray,
                   orders: int | None = None) -> np.ndarray:
    """q[..., i, m] = sigma_m with kappa_i removed, by synthetic division.

    ``orders`` caps the number of columns (m < orders); the full table
    has n columns.

    The edge columns have cancellation-free closed forms (q_1 as a plain
    sum difference, q_{n-1} = sigma_n / kappa_i), which covers n <= 3
    entirely.  Middle columns switch direction per entry: the upward
    recurrence q_m = sigma_m - kappa_i q_{m-1} cancels badly for entries
    above the mean, the downward form q_m = (sigma_{m+1} - q_{m+1}) /
    kappa_i exactly there is stable.
    """
    n = kappa.shape[-1]
    if orders is None:
        orders = n
    q = np.empty(kappa.shape[:-1] + (n, n))
    q[..., :, 0] = 1.0
    if n >= 3:
        q[..., :, 1] = sig[..., 1, None] - kappa
    if n >= 2:
        q[..., :, n - 1] = sig[..., n, None] / kappa
    if n >= 4:
        up = q[..., :, 1]
        ups = []
        for m in range(2, n - 1):
            up = sig[..., m, None] - kappa * up
            ups.append(up)
        down = q[..., :, n - 1]
        downs = []
        for m in range(n - 2, 1, -1):
            down = (sig[..., m + 1, None] - down) / kappa
            downs.append(down)
        large = kappa > sig[..., 1, None] / n
        for m, up, down in zip(range(2, n - 1), ups, reversed(downs)):
            q[..., :, m] = np.where(large, down, up)
    return q[..., :, :orders]


def _doubly_reduced(q: np.ndarray, kappa: np.ndarray, m_target: int) -> np.ndarray:
    """sigma_{m_target} with kappa_i and kappa_j removed; (..., i, j)."""
    cur = np.ones(kappa.shape[:-1] + (kappa.shape[-1],) * 2)
    for m in range(1, m_target + 1):
        cur = q[..., :, m, None] - kappa[..., None, :] * cur
    return cur


@dataclass(frozen=True, eq=True)
class ElementarySymRoot(CurvatureSpeed):
    """Normalised elementary symmetric root  (sigma_k / C(n,k))^(1/k)."""

    k: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ContractError(f"sigma order must be a positive integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def strictly_concave(self) -> bool:
        return self.k >= 2

    def _check_dim(self, n: int) -> None:
        if self.k > n:
            raise ContractError(
                f"sigma(k={self.k}) needs at least {self.k} curvatures, got {n}")

    def value(self, kappa):
        kap = _as_cone_array(kappa)
        n = kap.shape[-1]
        self._check_dim(n)
        sig = _elementary_table(kap)
        return (sig[..., self.k] / math.comb(n, self.k)) ** (1.0 / self.k)

    def value_gradient(self, kappa):
        kap = _as_cone_array(kappa)
        n = kap.shape[-1]
        self._check_dim(n)
        kk = self.k
        sig = _elementary_table(kap)
        q = _reduced_table(sig, kap, orders=kk)
        f = (sig[..., kk] / math.comb(n, kk)) ** (1.0 / kk)
        grad = (f / (kk * sig[..., kk]))[..., None] * q[..., :, kk - 1]
        return f, grad

    def gradient(self, kappa):
        return self.value_gradient(kappa)[1]

    def hessian(self, kappa):
        kap = _as_cone_array(kappa)
        n = kap.shape[-1]
        self._check_dim(n)
        kk = self.k
        sig = _elementary_table(kap)
        q = _reduced_table(sig, kap)
        f = (sig[..., kk] / math.comb(n, kk)) ** (1.0 / kk)
        sk = sig[..., kk]
        qi = q[..., :, kk - 1]
        outer = np.einsum("...i,...j->...ij", qi, qi)
        out = (1.0 / kk - 1.0) * outer / sk[..., None, None]
        if kk >= 2:
            pair = _doubly_reduced(q, kap, kk - 2)
            off = np.ones((n, n)) - np.eye(n)
            out = out + pair * off
        scale = (f / (kk * sk))[..., None, None]
        return scale * out

    def __str__(self):
        return f"sigma(k={self.k})"


@dataclass(frozen=True, eq=True)
class GeometricBlend(CurvatureSpeed):
    """Weighted geometric mean  prod F_a^{w_a}  with w_a > 0, sum w_a = 1."""

    parts: Tuple[Tuple[CurvatureSpeed, float], ...]

    def __post_init__(self):
        parts = tuple((s, float(w)) for s, w in self.parts)
        if not parts:
            raise ContractError("blend needs at least one component")
        for _, w in parts:
            if not (w > 0.0):
                raise ContractError("blend weights must be positive")
        total = math.fsum(w for _, w in parts)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ContractError(
                f"blend weights sum to {total!r}, not 1 within {WEIGHT_SUM_TOL:.0e}")
        object.__setattr__(self, "parts", parts)

    @property
    def strictly_concave(self) -> bool:
        return all(s.strictly_concave for s, _ in self.parts)

    def value(self, kappa):
        k = _as_cone_array(kappa)
        logf = sum(w * np.log(s.value(k)) for s, w in self.parts)
        return np.exp(logf)

    def value_gradient(self, kappa):
        k = _as_cone_array(kappa)
        logf = 0.0
        lgrad = 0.0
        for s, w in self.parts:
            fa, ga = s.value_gradient(k)
            logf = logf + w * np.log(fa)
            lgrad = lgrad + w * ga / fa[..., None]
        f = np.exp(logf)
        return f, f[..., None] * lgrad

    def gradient(self, kappa):
        return self.value_gradient(kappa)[1]

    def hessian(self, kappa):
        k = _as_cone_array(kappa)
        logf = 0.0
        lgrad = 0.0
        lhess = 0.0
        for s, w in self.parts:
            fa = s.value(k)
            ga = s.gradient(k) / fa[..., None]
            ha = s.hessian(k) / fa[..., None, None]
            logf = logf + w * np.log(fa)
            lgrad = lgrad + w * ga
            lhess = lhess + w * (ha - np.einsum("...i,...j->...ij", ga, ga))
        f = np.exp(logf)
        full = lhess + np.einsum("...i,...j->...ij", lgrad, lgrad)
        return f[..., None, None] * full

    def __str__(self):
        inner = ",".join(f"{s}:{w:g}" for s, w in self.parts)
        return f"blend({inner})"


# ---------------------------------------------------------------------------
# Inequality margins.  Each returns a quantity that is nonnegative (up to the
# documented tolerance) exactly when the corresponding admissibility property
# holds at the sampled point.
# ---------------------------------------------------------------------------

def geometric_mean_gap(speed: CurvatureSpeed, kappa) -> np.ndarray:
    """F(kappa) - geometric mean; nonnegative for admissible speeds."""
    k = _as_cone_array(kappa)
    gm = np.exp(np.mean(np.log(k), axis=-1))
    return speed.value(k) - gm


def inverse_concavity_margin(speed: CurvatureSpeed, kappa) -> np.ndarray:
    """sum F'^i kappa_i^2 - F^2; nonnegative when the dual speed is concave."""
    k = _as_cone_array(kappa)
    f, g = speed.value_gradient(k)
    return np.sum(g * k * k, axis=-1) - f * f


def ordering_margin(speed: CurvatureSpeed, kappa, i: int, j: int) -> np.ndarray:
    """(F'^i kappa_i - F'^j kappa_j)(kappa_i - kappa_j) for i != j."""
    if i == j:
        raise ContractError("ordering margin needs two distinct indices")
    k = _as_cone_array(kappa)
    n = k.shape[-1]
    if not (0 <= i < n and 0 <= j < n):
        raise ContractError(f"indices ({i}, {j}) out of range for n={n}")
    g = speed.gradient(k)
    return ((g[..., i] * k[..., i] - g[..., j] * k[..., j])
            * (k[..., i] - k[..., j]))


def quadratic_form_margin(speed: CurvatureSpeed, kappa, y) -> np.ndarray:
    """Margin of the second-derivative inequality at (kappa, y).

    Nonnegative (to tolerance) iff the admissibility quadratic-form
    condition holds there.
    """
    k = _as_cone_array(kappa)
    yv = np.asarray(y, dtype=float)
    f, g = speed.value_gradient(k)
    h = speed.hessian(k)
    quad = np.einsum("...ij,...i,...j->...", h, yv, yv)
    gy = np.sum(g * yv, axis=-1)
    bound = gy * gy / f - np.sum(g / k * yv * yv, axis=-1)
    return quad - bound


def log_hessian(speed: CurvatureSpeed, z) -> np.ndarray:
    """Hessian of z -> log F(e^z), assembled by the chain rule."""
    zv = np.asarray(z, dtype=float)
    k = np.exp(zv)
    f, g = speed.value_gradient(k)
    h = speed.hessian(k)
    p = k * g / f[..., None]  # the log-gradient; sums to 1 by homogeneity
    n = k.shape[-1]
    out = np.einsum("...i,...j,...ij->...ij", k, k, h) / f[..., None, None]
    out -= np.einsum("...i,...j->...ij", p, p)
    idx = np.arange(n)
    out[..., idx, idx] += p
    return out


def log_hessian_min_eigenvalue(speed: CurvatureSpeed, z) -> np.ndarray:
    """Smallest eigenvalue of the log-log Hessian; >= -1e-8 when admissible."""
    return np.linalg.eigvalsh(log_hessian(speed, z))[..., 0]


def matrix_second_derivative(speed: CurvatureSpeed, kappa, B) -> float:
    """Second derivative of the matrix speed in direction B at diag(kappa).

    Evaluates  sum_ij F''^{ij} B_ii B_jj
             + 2 sum_{i>j} (F'^i - F'^j)/(kappa_i - kappa_j) B_ij^2,
    with the divided difference replaced by its limit F''^{ii} - F''^{ij}
    (taken at the symmetrised point) when kappa_i and kappa_j coincide to
    relative precision 1e-8.
    """
    k = _as_cone_array(kappa)
    if k.ndim != 1:
        raise ContractError("matrix_second_derivative takes a single point")
    n = k.shape[0]
    Bm = np.asarray(B, dtype=float)
    if Bm.shape != (n, n):
        raise ContractError(f"direction matrix must be {n}x{n}")
    if np.max(np.abs(Bm - Bm.T)) > HESSIAN_SYM_TOL:
        raise ContractError("direction matrix must be symmetric")

    g = speed.gradient(k)
    h = speed.hessian(k)
    diag = np.diag(Bm)
    total = float(diag @ h @ diag)
    coincide = COINCIDENCE_REL * float(np.max(k))
    for i in range(n):
        for j in range(i):
            b2 = Bm[i, j] ** 2
            if b2 == 0.0:
                continue
            gap = k[i] - k[j]
            if abs(gap) < coincide:
                mid = k.copy()
                mid[i] = mid[j] = 0.5 * (k[i] + k[j])
                hm = speed.hessian(mid)
                w = hm[i, i] - hm[i, j]
            else:
                w = (g[i] - g[j]) / gap
            total += 2.0 * w * b2
    return total


def dual_value(speed: CurvatureSpeed, mu) -> np.ndarray:
    """Inverse-dual speed  1 / F(1/mu_1, ..., 1/mu_n)."""
    m = _as_cone_array(mu)
    return 1.0 / speed.value(1.0 / m)


# ---------------------------------------------------------------------------
# Admissibility checking by seeded sampling.
# ---------------------------------------------------------------------------

KAPPA_LO, KAPPA_HI = 0.05, 20.0   # sampling box for curvatures (log-uniform)
HOMOGENEITY_SCALES = (0.5, 2.0, 10.0)


@dataclass
class AssumptionReport:
    """Outcome of the sampled admissibility check for one speed."""

    spec: str
    dimension: int
    sample_count: int
    seed: int
    monotone_ok: bool
    homogeneous_ok: bool
    normalized_ok: bool
    quadform_ok: bool
    logconvex_ok: bool
    worst_margin: float
    worst_witness: dict
    min_gradient_entry: float
    worst_homogeneity_residual: float
    normalization_residual: float
    min_log_hessian_eigenvalue: float
    tolerance: float = FLAG_TOL

    @property
    def all_ok(self) -> bool:
        return (self.monotone_ok and self.homogeneous_ok and self.normalized_ok
                and self.quadform_ok and self.logconvex_ok)

    def to_json(self, indent: int = 2) -> str:
        payload = dict(self.__dict__)
        payload["all_ok"] = self.all_ok
        return json.dumps(payload, indent=indent)


def check_assumption(speed: CurvatureSpeed, n: int, sample_count: int = 10_000,
                     seed: int = 0) -> AssumptionReport:
    """Sample the admissibility conditions for ``speed`` in dimension ``n``.

    Curvatures are drawn log-uniformly from [0.05, 20]^n and test vectors y
    uniformly from [-1, 1]^n, reproducibly from ``seed``.  Flags are true
    iff the respective worst sampled margin stays above -1e-8.
    """
    if n < 1:
        raise ContractError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    z = rng.uniform(math.log(KAPPA_LO), math.log(KAPPA_HI), size=(sample_count, n))
    kappa = np.exp(z)
    y = rng.uniform(-1.0, 1.0, size=(sample_count, n))

    f, grad = speed.value_gradient(kappa)
    min_grad = float(np.min(grad))

    # degree-one homogeneity, relative residual over a few scales
    homo = 0.0
    for c in HOMOGENEITY_SCALES:
        fc = speed.value(c * kappa)
        homo = max(homo, float(np.max(np.abs(fc - c * f) / (c * f))))

    norm_res = abs(float(speed.value(np.ones(n))) - 1.0)

    margins = quadratic_form_margin(speed, kappa, y)
    worst = int(np.argmin(margins))
    worst_margin = float(margins[worst])

    min_eig = float(np.min(log_hessian_min_eigenvalue(speed, z)))

    return AssumptionReport(
        spec=str(speed),
        dimension=n,
        sample_count=sample_count,
        seed=seed,
        monotone_ok=min_grad > 0.0,
        homogeneous_ok=homo <= FLAG_TOL,
        normalized_ok=norm_res <= FLAG_TOL,
        quadform_ok=worst_margin >= -FLAG_TOL,
        logconvex_ok=min_eig >= -FLAG_TOL,
        worst_margin=worst_margin,
        worst_witness={"kappa": kappa[worst].tolist(), "y": y[worst].tolist()},
        min_gradient_entry=min_grad,
        worst_homogeneity_residual=homo,
        normalization_residual=norm_res,
        min_log_hessian_eigenvalue=min_eig,
    )


# ---------------------------------------------------------------------------
# String grammar:  powermean(r=<float>) | sigma(k=<int>) |
#                  blend(<spec>:<weight>, ...)
# Positional forms powermean(0.5) and sigma(2) are accepted as well.
# ---------------------------------------------------------------------------

def parse_speed(text: str) -> CurvatureSpeed:
    """Parse the speed grammar; raises ConfigError-compatible ContractError."""
    spec, pos = _parse_spec(text, 0)
    if text[pos:].strip():
        raise ContractError(f"trailing input after speed spec: {text[pos:]!r}")
    return spec


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_spec(text: str, pos: int) -> Tuple[CurvatureSpeed, int]:
    pos = _skip_ws(text, pos)
    start = pos
    while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
        pos += 1
    name = text[start:pos].lower()
    pos = _skip_ws(text, pos)
    if pos >= len(text) or text[pos] != "(":
        raise ContractError(f"expected '(' after {name!r} in speed spec")
    pos += 1
    if name == "powermean":
        value, pos = _parse_scalar(text, pos, prefix="r")
        pos = _expect(text, pos, ")")
        return PowerMean(r=value), pos
    if name == "sigma":
        value, pos = _parse_scalar(text, pos, prefix="k")
        if value != int(value):
            raise ContractError(f"sigma order must be an integer, got {value}")
        pos = _expect(text, pos, ")")
        return ElementarySymRoot(k=int(value)), pos
    if name == "blend":
        parts = []
        while True:
            spec, pos = _parse_spec(text, pos)
            pos = _expect(text, pos, ":")
            weight, pos = _parse_number(text, pos)
            parts.append((spec, weight))
            pos = _skip_ws(text, pos)
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            pos = _expect(text, pos, ")")
            return GeometricBlend(parts=tuple(parts)), pos
    raise ContractError(f"unknown speed family {name!r}; "
                        "expected powermean, sigma, or blend")


def _expect(text: str, pos: int, char: str) -> int:
    pos = _skip_ws(text, pos)
    if pos >= len(text) or text[pos] != char:
        found = text[pos] if pos < len(text) else "end of input"
        raise ContractError(f"expected {char!r} in speed spec, found {found!r}")
    return pos + 1


def _parse_scalar(text: str, pos: int, prefix: str) -> Tuple[float, int]:
    pos = _skip_ws(text, pos)
    if text[pos:pos + len(prefix) + 1].replace(" ", "").startswith(prefix + "="):
        pos = text.index("=", pos) + 1
    return _parse_number(text, pos)


def _parse_number(text: str, pos: int) -> Tuple[float, int]:
    pos = _skip_ws(text, pos)
    start = pos
    while pos < len(text) and (text[pos].isdigit() or text[pos] in "+-.eE"):
        pos += 1
    token = text[start:pos]
    try:
        return float(token), pos
    except ValueError:
        raise ContractError(f"expected a number in speed spec, found {token!r}")


def builtin_speeds(n: int) -> "dict[str, CurvatureSpeed]":
    """The admissible speeds exercised by the sampling suites, keyed by spec."""
    speeds: "dict[str, CurvatureSpeed]" = {}
    for s in (
        PowerMean(r=0.5),
        PowerMean(r=1.0),
        PowerMean(r=2.0),
        *(ElementarySymRoot(k=k) for k in range(1, min(n, 3) + 1)),
        GeometricBlend(parts=((ElementarySymRoot(k=1), 0.5),
                              (ElementarySymRoot(k=2), 0.5))),
    ):
        speeds[str(s)] = s
    return speeds
