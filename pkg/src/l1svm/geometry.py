"""Euclidean projections and linear maximization over norm-ball constraint sets.

Two feasible sets appear throughout: the l1 ball {||w||_1 <= R} and its
intersection with the unit l2 ball.  Both projections reduce to sort-based
soft thresholding; the intersection additionally needs Dykstra's corrected
alternating scheme when neither single-ball projection is already feasible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ProjectionResult",
    "ProjectionError",
    "project_l1",
    "project_l2",
    "project_l1_l2",
    "max_linear_l1_l2",
]


@dataclass(frozen=True)
class ProjectionResult:
    point: np.ndarray
    active: str  # which constraints are tight: "l1", "l2", "both" or "none"
    threshold: float  # soft-threshold value used (0 when no thresholding happened)


class ProjectionError(RuntimeError):
    """Dykstra failed to converge; carries the last iterate and its gap."""

    def __init__(self, message, iterate=None, gap=None):
        super().__init__(message)
        self.iterate = iterate
        self.gap = gap


def project_l1(v, R: float) -> ProjectionResult:
    """Nearest point of the l1 ball of radius R, by sorted soft thresholding."""
    v = np.asarray(v, dtype=float)
    if not R > 0:
        raise ValueError("radius must be positive")
    mags = np.abs(v)
    total = mags.sum()
    if total <= R:
        active = "l1" if abs(total - R) <= 1e-12 * max(1.0, R) else "none"
        return ProjectionResult(point=v.copy(), active=active, threshold=0.0)
    u = np.sort(mags)[::-1]
    cs = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    rho = idx[u > (cs - R) / idx][-1]
    theta = (cs[rho - 1] - R) / rho
    w = np.sign(v) * np.maximum(mags - theta, 0.0)
    return ProjectionResult(point=w, active="l1", threshold=float(theta))


def project_l2(v, radius: float = 1.0) -> np.ndarray:
    """Nearest point of the l2 ball: rescale iff outside."""
    v = np.asarray(v, dtype=float)
    if not radius > 0:
        raise ValueError("radius must be positive")
    n = np.linalg.norm(v)
    return v.copy() if n <= radius else v * (radius / n)


def _tight_label(w, R: float) -> str:
    l1_tight = abs(np.abs(w).sum() - R) <= 1e-8 * max(1.0, R)
    l2_tight = abs(np.linalg.norm(w) - 1.0) <= 1e-8
    if l1_tight and l2_tight:
        return "both"
    if l1_tight:
        return "l1"
    if l2_tight:
        return "l2"
    return "none"


def project_l1_l2(v, R: float, tol: float = 1e-10, max_rounds: int = 10_000) -> ProjectionResult:
    """Nearest point of {||w||_1 <= R} intersected with the unit l2 ball.

    If projecting onto one ball alone already lands inside the other, that
    point is the exact answer (it minimizes distance over a superset of the
    intersection while lying in it).  Otherwise run Dykstra's alternating
    projections, whose correction terms make the iterates converge to the
    true projection rather than just any feasible point.
    """
    v = np.asarray(v, dtype=float)
    if not R > 0:
        raise ValueError("radius must be positive")
    cand = project_l1(v, R)
    if np.linalg.norm(cand.point) <= 1.0 + 1e-15:
        return ProjectionResult(point=cand.point, active=_tight_label(cand.point, R),
                                threshold=cand.threshold)
    ball = project_l2(v)
    if np.abs(ball).sum() <= R + 1e-15:
        return ProjectionResult(point=ball, active=_tight_label(ball, R), threshold=0.0)

    x = v.copy()
    p = np.zeros_like(v)
    q = np.zeros_like(v)
    theta = 0.0
    gap = np.inf
    for _ in range(max_rounds):
        step = project_l1(x + p, R)
        theta = step.threshold
        p_new = x + p - step.point
        x_next = project_l2(step.point + q)
        q_new = step.point + q - x_next
        # the iterate can repeat while the corrections still move, so the
        # convergence measure must be the change in the corrections
        gap = float(np.sqrt(((p_new - p) ** 2).sum() + ((q_new - q) ** 2).sum()))
        x, p, q = x_next, p_new, q_new
        if gap < tol:
            return ProjectionResult(point=x, active=_tight_label(x, R), threshold=theta)
    raise ProjectionError(
        f"no convergence after {max_rounds} rounds (gap {gap:.3e})", iterate=x, gap=gap
    )


def _tie_direction(k: int, R: float) -> np.ndarray:
    """Unit-norm weights for k magnitude-tied leaders, ||.||_1/||.||_2 = R < sqrt(k).

    In the limit of strictly sorted perturbations the weights are (p_j - x)_+
    with priorities p = (k, k-1, ..., 1).  With every weight active the ratio
    condition has the closed form below; otherwise trailing entries drop out
    and x is found by bisection.
    """
    p = np.arange(k, 0, -1, dtype=float)
    if R * R >= k:
        return np.full(k, 1.0 / np.sqrt(k))
    var = (k * k - 1.0) / 12.0
    mean_w = np.sqrt(R * R * var / (k - R * R))
    x = (k + 1.0) / 2.0 - mean_w
    if x <= 1.0:
        q = p - x
    else:
        lo, hi = 1.0, k - 1.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            q = np.maximum(p - mid, 0.0)
            if q.sum() > R * np.linalg.norm(q):
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-13 * k:
                break
        q = np.maximum(p - hi, 0.0)
    return q / np.linalg.norm(q)


def max_linear_l1_l2(g, R: float) -> np.ndarray:
    """Maximizer of <g, w> over {||w||_1 <= R, ||w||_2 <= 1}.

    The maximizer is a normalized soft thresholding of g: w ~ sign(g)(|g|-theta)_+
    with theta = 0 when g's l1/l2 ratio already fits inside R, else the unique
    theta making the ratio R, found by bisection (the ratio is continuous and
    decreasing in theta).  Ties at the top magnitude are broken toward earlier
    indices, the limit of strictly sorted perturbations.
    """
    g = np.asarray(g, dtype=float)
    if not np.all(np.isfinite(g)):
        raise ValueError("gradient must be finite")
    if R < 1.0:
        raise ValueError("need R >= 1")
    norm2 = np.linalg.norm(g)
    if norm2 == 0.0:
        raise ValueError("zero vector: maximizer undefined")
    mags = np.abs(g)
    if mags.sum() <= R * norm2:
        return g / norm2
    top = mags.max()
    k_top = int(np.count_nonzero(mags == top))
    if np.sqrt(k_top) > R:
        # threshold lands inside the leading tie: weight only those entries
        w = np.zeros(g.size)
        ties = np.flatnonzero(mags == top)
        w[ties] = np.sign(g[ties]) * _tie_direction(k_top, R)
        return w
    lo, hi = 0.0, top
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        q = np.maximum(mags - mid, 0.0)
        qnorm = np.linalg.norm(q)
        if qnorm == 0.0:
            hi = mid
            continue
        if q.sum() > R * qnorm:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-10 * max(1.0, top):
            break
    # hi side keeps the ratio <= R, so the normalized point is feasible
    w = np.sign(g) * np.maximum(mags - hi, 0.0)
    return w / np.linalg.norm(w)
