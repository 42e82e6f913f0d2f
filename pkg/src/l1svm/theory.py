"""Closed-form expectations and non-asymptotic bound formulas.

Everything here is a deterministic formula in the model parameters: expected
hinge losses under the Gaussian data model (exact via the normal CDF, with
adaptive quadrature only for the one remaining smooth 1-D integral), the
uniform concentration bound, the explicit sample-size and error bounds, and
a Monte Carlo oracle used to cross-check the quadrature.

The normal CDF comes from scipy.special.ndtr, which evaluates the
complementary error function with Cephes' rational approximations (relative
accuracy well below 1e-14).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import ndtr

from .model import as_generator

__all__ = [
    "HypothesisWarning",
    "OverlapCoords",
    "ConcentrationBound",
    "BoundReport",
    "expected_fa_a",
    "expected_fa_w",
    "hinge_gaussian_integral",
    "thm2_lower_bound",
    "proof_constant_057",
    "thm1_bound",
    "thm3_sample_size",
    "thm3_error_bound",
    "thm3_failure_prob",
    "thm8_bound",
    "monte_carlo_fa",
    "gaussian_max_norm_bounds",
    "bound_report",
    "write_bound_reports",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


class HypothesisWarning(UserWarning):
    """Parameters fall outside the range where a bound's guarantee is proved."""


def _phi(t: float) -> float:
    return math.exp(-0.5 * t * t) / _SQRT_2PI


@dataclass(frozen=True)
class OverlapCoords:
    """Components of w parallel (c) and orthogonal (c_prime) to the true direction."""

    c: float
    c_prime: float
    r: float

    def __post_init__(self):
        if self.c_prime < 0:
            raise ValueError("c_prime must be nonnegative")
        if not self.r > 0:
            raise ValueError("r must be positive")

    @classmethod
    def from_vectors(cls, a, w, r: float) -> "OverlapCoords":
        a = np.asarray(a, dtype=float)
        w = np.asarray(w, dtype=float)
        c = float(a @ w)
        c_prime = math.sqrt(max(float(w @ w) - c * c, 0.0))
        return cls(c=c, c_prime=c_prime, r=r)


def hinge_gaussian_integral(z: float) -> float:
    """Closed form of int_0^{1/z} (1 - z t) e^{-t^2/2} dt for z > 0."""
    if not z > 0:
        raise ValueError("need z > 0")
    return _SQRT_2PI * (ndtr(1.0 / z) - 0.5) - z * (1.0 - math.exp(-1.0 / (2.0 * z * z)))


def expected_fa_a(r: float) -> float:
    """Expected hinge loss of the true classifier: E [1 - r|t|]_+ , t ~ N(0,1)."""
    if not r > 0:
        raise ValueError("need r > 0")
    return math.sqrt(2.0 / math.pi) * hinge_gaussian_integral(r)


def _smoothed_hinge(A: float, s: float) -> float:
    # E_t [A - s t]_+ for t ~ N(0,1): the Gaussian-smoothed positive part
    return A * ndtr(A / s) + s * _phi(A / s)


def expected_fa_w(o: OverlapCoords) -> float:
    """Expected hinge loss of a point with overlap (c, c_prime) at scale r.

    The inner Gaussian integral has the closed form A Phi(A/s) + s phi(A/s)
    with A = 1 - c r |t| and s = c_prime * r; the remaining 1-D integrand is
    smooth, so adaptive quadrature resolves it to 1e-9.
    """
    c, cp, r = o.c, o.c_prime, o.r
    if cp == 0.0:
        if c > 0.0:
            return expected_fa_a(c * r)
        if c == 0.0:
            return 1.0
        return 1.0 + abs(c) * r * math.sqrt(2.0 / math.pi)
    s = cp * r

    def integrand(t: float) -> float:
        return 2.0 * _phi(t) * _smoothed_hinge(1.0 - c * r * t, s)

    val, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-10, epsrel=1e-10, limit=200)
    return float(val)


def thm2_lower_bound(o: OverlapCoords) -> float:
    """Guaranteed lower bound on the expected hinge-loss gap E f(w) - E f(a).

    May be negative for small r, in which case it is simply uninformative.
    """
    if not o.c_prime > 0:
        raise ValueError("need c_prime > 0")
    c, cp, r = o.c, o.c_prime, o.r
    if c <= 0.0:
        val = math.pi / 2.0 + cp * r * math.sqrt(math.pi / 2.0) - _SQRT_2PI / r
    else:
        val = (
            math.sqrt(math.pi / 2.0) * hinge_gaussian_integral(c * r)
            + (cp / c) * math.exp(-1.0 / (2.0 * c * c * r * r))
            - _SQRT_2PI / r
        )
    return val / math.pi


def proof_constant_057() -> float:
    """The constant sqrt(pi/2) int_0^1 (1-t) e^{-t^2/2} dt, provably >= 0.57."""
    return math.sqrt(math.pi / 2.0) * hinge_gaussian_integral(1.0)


@dataclass(frozen=True)
class ConcentrationBound:
    mu_bound: float  # bound on the mean supremum deviation
    mu_tilde_bound: float  # bound on the label-flip sensitivity term
    total: float  # deterministic deviation bound plus the slack u
    failure_prob: float  # probability the bound fails, clipped into [0, 1]


def thm1_bound(d: int, m: int, r: float, R: float, u: float) -> ConcentrationBound:
    """Uniform deviation bound for the hinge loss over the l1 ball."""
    if d < 2:
        raise ValueError("need d >= 2")
    if m < 1:
        raise ValueError("need m >= 1")
    if not (r > 0 and R > 0 and u > 0):
        raise ValueError("r, R, u must be positive")
    root = math.sqrt(2.0 * math.log(2.0 * d))
    sqrt_m = math.sqrt(m)
    mu = (4.0 * math.sqrt(8.0 * math.pi) + 8.0 * r * R * root) / sqrt_m
    mu_tilde = r * R * root / sqrt_m
    total = (8.0 * math.sqrt(8.0 * math.pi) + 18.0 * r * R * root) / sqrt_m + u
    fail = 8.0 * (
        math.exp(-m * u * u / 32.0) + math.exp(-m * u * u / (32.0 * r * r * R * R))
    )
    return ConcentrationBound(
        mu_bound=mu,
        mu_tilde_bound=mu_tilde,
        total=total,
        failure_prob=min(fail, 1.0),
    )


def _check_thm3_range(eps: float, r: float) -> None:
    if not 0.0 < eps < 0.18:
        warnings.warn("target accuracy outside the proved range 0 < eps < 0.18",
                      HypothesisWarning, stacklevel=3)
        return
    threshold = _SQRT_2PI / (0.57 - math.pi * eps)
    if r <= threshold:
        warnings.warn("scale r is below the validity threshold sqrt(2 pi)/(0.57 - pi eps)",
                      HypothesisWarning, stacklevel=3)


def thm3_sample_size(eps: float, r: float, R: float, d: int, t: float = 1.0) -> int:
    """Samples sufficient for recovery error eps: ceil(4 eps^-2 (8 sqrt(8 pi) + (18+t) r R sqrt(2 log 2d))^2)."""
    if not (eps > 0 and r > 0 and R > 0):
        raise ValueError("eps, r, R must be positive")
    if d < 2:
        raise ValueError("need d >= 2")
    if t < 0:
        raise ValueError("need t >= 0")
    _check_thm3_range(eps, r)
    root = math.sqrt(2.0 * math.log(2.0 * d))
    base = 8.0 * math.sqrt(8.0 * math.pi) + (18.0 + t) * r * R * root
    return int(math.ceil(4.0 * base * base / (eps * eps)))


def thm3_error_bound(eps: float, r: float) -> float:
    """The guaranteed ratio-error level 2 e^{1/2} (pi eps + sqrt(2 pi)/r)."""
    if not (eps > 0 and r > 0):
        raise ValueError("eps, r must be positive")
    return 2.0 * math.exp(0.5) * (math.pi * eps + _SQRT_2PI / r)


def thm3_failure_prob(d: int, r: float, R: float, t: float = 1.0) -> float:
    """Failure weight 8(exp(-t^2 r^2 R^2 log(2d)/16) + exp(-t^2 log(2d)/16)), unclipped."""
    if d < 2:
        raise ValueError("need d >= 2")
    ld = math.log(2.0 * d)
    return 8.0 * (
        math.exp(-t * t * r * r * R * R * ld / 16.0) + math.exp(-t * t * ld / 16.0)
    )


def thm8_bound(eps: float, r: float) -> float:
    """Squared-error bound sqrt(pi/2) eps / (r (1 - e^{-1/(2 r^2)})) for the intersected constraint."""
    if not r > 0:
        raise ValueError("need r > 0")
    if not 0.0 < eps < 0.5:
        warnings.warn("target accuracy outside the proved range 0 < eps < 1/2",
                      HypothesisWarning, stacklevel=2)
    elif r <= 2.0 * _SQRT_2PI / (1.0 - 2.0 * eps):
        warnings.warn("scale r is below the validity threshold 2 sqrt(2 pi)/(1 - 2 eps)",
                      HypothesisWarning, stacklevel=2)
    return math.sqrt(math.pi / 2.0) * eps / (r * (1.0 - math.exp(-1.0 / (2.0 * r * r))))


def monte_carlo_fa(o: OverlapCoords, n_samples: int, seed) -> tuple[float, float]:
    """Sample mean and standard error of [1 - c r |t1| - c_prime r t2]_+."""
    if n_samples < 1000:
        raise ValueError("need at least 1000 samples")
    rng = as_generator(seed)
    total = 0.0
    total_sq = 0.0
    left = n_samples
    while left > 0:
        block = min(left, 1_000_000)
        t1 = rng.standard_normal(block)
        t2 = rng.standard_normal(block)
        vals = np.maximum(1.0 - o.c * o.r * np.abs(t1) - o.c_prime * o.r * t2, 0.0)
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        left -= block
    mean = total / n_samples
    var = max(total_sq - n_samples * mean * mean, 0.0) / (n_samples - 1)
    return mean, math.sqrt(var / n_samples)


def gaussian_max_norm_bounds(d: int) -> tuple[float, float]:
    """Sandwich for E max_j |g_j| over d iid standard normals."""
    if d < 1:
        raise ValueError("need d >= 1")
    return math.sqrt(math.log(d)) / 4.0, math.sqrt(2.0 * math.log(2.0 * d))


@dataclass(frozen=True)
class BoundReport:
    d: int
    s: int
    R: float
    r: float
    m: int
    eps: float
    u: float
    thm1: ConcentrationBound
    thm3_error_bound: float
    thm3_prob: float
    thm8_error_bound: float
    sample_size_required: int

    def __post_init__(self):
        if self.sample_size_required < 1:
            raise ValueError("required sample size must be >= 1")


def bound_report(d: int, s: int, R: float, r: float, m: int, eps: float, u: float,
                 t: float = 1.0) -> BoundReport:
    """Evaluate every bound at one parameter tuple."""
    return BoundReport(
        d=d, s=s, R=R, r=r, m=m, eps=eps, u=u,
        thm1=thm1_bound(d, m, r, R, u),
        thm3_error_bound=thm3_error_bound(eps, r),
        thm3_prob=min(thm3_failure_prob(d, r, R, t), 1.0),
        thm8_error_bound=thm8_bound(eps, r),
        sample_size_required=thm3_sample_size(eps, r, R, d, t),
    )


_BOUND_HEADER = "d,s,R,r,m,eps,u,thm1_total,thm1_fail_prob,thm3_bound,thm3_prob,thm8_bound,m_required"


def _fmt(x) -> str:
    return f"{x:.10g}"


def write_bound_reports(reports, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(_BOUND_HEADER + "\n")
        for b in reports:
            row = [
                str(b.d), str(b.s), _fmt(b.R), _fmt(b.r), str(b.m), _fmt(b.eps), _fmt(b.u),
                _fmt(b.thm1.total), _fmt(b.thm1.failure_prob), _fmt(b.thm3_error_bound),
                _fmt(b.thm3_prob), _fmt(b.thm8_error_bound), str(b.sample_size_required),
            ]
            fh.write(",".join(row) + "\n")
