"""Constrained hinge-loss minimizers and recovery-error metrics.

Both SVM variants run the same projected subgradient scheme and differ only
in the projection; the sign-measurement baseline needs no iteration at all
because its objective is linear.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import max_linear_l1_l2, project_l1, project_l1_l2
from .model import ConstraintSet, SparseClassifier, TrainingSet

__all__ = [
    "SolverConfig",
    "SolverResult",
    "RecoveryError",
    "solve_l1_svm",
    "solve_l1_l2_svm",
    "solve_one_bit_cs",
    "recovery_error",
]


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 5000
    step_rule: str = "inv_sqrt"  # eta_k = eta0 / sqrt(k)
    eta0: float | None = None  # None means: use the l1 radius R
    tol: float = 1e-8  # best-objective improvement threshold ...
    window: int = 100  # ... measured over this many iterations
    track: str = "best_iterate"

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.step_rule != "inv_sqrt":
            raise ValueError("only the diminishing eta0/sqrt(k) step is supported")
        if self.eta0 is not None and not self.eta0 > 0:
            raise ValueError("eta0 must be positive")
        if self.tol < 0:
            raise ValueError("tol must be >= 0")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.track not in ("best_iterate", "averaged_iterate"):
            raise ValueError("track must be best_iterate or averaged_iterate")


@dataclass(frozen=True)
class SolverResult:
    w_hat: np.ndarray
    objective: float
    trace: np.ndarray  # objective at each visited iterate
    iterations: int
    converged: bool
    objective_kind: str = "hinge"  # "linear" for the sign-measurement baseline


@dataclass(frozen=True)
class RecoveryError:
    l2_error: float  # ||a - w/||w||_2||_2
    ratio_error: float  # l2_error / cosine, +inf when the cosine is not positive
    cosine: float  # <a, w/||w||_2>
    raw_l2: float  # ||a - w||_2, no normalization


def _check_inputs(T: TrainingSet, R: float, cfg: SolverConfig) -> None:
    if not isinstance(cfg, SolverConfig):
        raise TypeError("cfg must be a SolverConfig")
    if R < 1.0:
        raise ValueError("need R >= 1")
    if T.m < 1:
        raise ValueError("empty training set")


def _projected_subgradient(T: TrainingSet, R: float, cfg: SolverConfig, project):
    m, d = T.X.shape
    YX = T.y[:, None] * T.X
    eta0 = R if cfg.eta0 is None else cfg.eta0
    w = np.zeros(d)
    w_sum = np.zeros(d)
    best_w = w
    best_f = np.inf
    best_hist = []
    trace = []
    converged = False
    k = 0
    for k in range(1, cfg.max_iters + 1):
        margins = 1.0 - YX @ w
        f = float(np.mean(np.maximum(margins, 0.0)))
        if not np.isfinite(f):
            raise FloatingPointError("objective overflowed; reduce eta0")
        trace.append(f)
        if f < best_f:
            best_f = f
            best_w = w.copy()
        best_hist.append(best_f)
        w_sum += w
        if k > cfg.window and best_hist[-cfg.window - 1] - best_f < cfg.tol:
            converged = True
            break
        # rows sitting exactly on the hinge kink contribute zero
        active = margins > 0.0
        grad = -(YX.T @ active.astype(float)) / m
        w = project(w - (eta0 / np.sqrt(k)) * grad)
    if cfg.track == "averaged_iterate":
        w_hat = w_sum / k  # average of feasible points, feasible by convexity
        f_hat = float(np.mean(np.maximum(1.0 - YX @ w_hat, 0.0)))
    else:
        w_hat, f_hat = best_w, best_f
    return w_hat, f_hat, np.asarray(trace), k, converged


def _finish(w_hat, f_hat, trace, iters, converged, constraints: ConstraintSet) -> SolverResult:
    if not constraints.contains(w_hat, tol=1e-8):
        raise RuntimeError("solver produced an infeasible point")
    return SolverResult(
        w_hat=w_hat, objective=f_hat, trace=trace, iterations=iters, converged=converged
    )


def solve_l1_svm(T: TrainingSet, R: float, cfg: SolverConfig | None = None) -> SolverResult:
    """Minimize the averaged hinge loss over {||w||_1 <= R}."""
    cfg = SolverConfig() if cfg is None else cfg
    _check_inputs(T, R, cfg)
    out = _projected_subgradient(T, R, cfg, lambda z: project_l1(z, R).point)
    return _finish(*out, ConstraintSet("l1", R))


def solve_l1_l2_svm(T: TrainingSet, R: float, cfg: SolverConfig | None = None) -> SolverResult:
    """Minimize the averaged hinge loss over {||w||_1 <= R, ||w||_2 <= 1}."""
    cfg = SolverConfig() if cfg is None else cfg
    _check_inputs(T, R, cfg)
    out = _projected_subgradient(T, R, cfg, lambda z: project_l1_l2(z, R).point)
    return _finish(*out, ConstraintSet("l1l2", R))


def solve_one_bit_cs(T: TrainingSet, R: float) -> SolverResult:
    """Maximize sum_i y_i <x_i, w> over {||w||_1 <= R, ||w||_2 <= 1}, in closed form.

    The result stores the linear objective <g, w>, not the hinge loss; the
    objective_kind flag says so.
    """
    if R < 1.0:
        raise ValueError("need R >= 1")
    g = T.X.T @ T.y
    if np.linalg.norm(g) == 0.0:
        raise ValueError("labeled sample sum is zero: maximizer undefined")
    w = max_linear_l1_l2(g, R)
    value = float(g @ w)
    return SolverResult(
        w_hat=w,
        objective=value,
        trace=np.array([value]),
        iterations=0,
        converged=True,
        objective_kind="linear",
    )


def recovery_error(a, result) -> RecoveryError:
    """Directional recovery metrics between the true classifier and an estimate."""
    vec = a.a if isinstance(a, SparseClassifier) else np.asarray(a, dtype=float)
    w = result.w_hat if isinstance(result, SolverResult) else np.asarray(result, dtype=float)
    norm_w = np.linalg.norm(w)
    if norm_w == 0.0:
        raise ValueError("zero estimate: direction undefined")
    u = w / norm_w
    cosine = float(np.clip(vec @ u, -1.0, 1.0))
    l2_error = float(np.linalg.norm(vec - u))
    ratio = l2_error / cosine if cosine > 0.0 else float("inf")
    return RecoveryError(
        l2_error=l2_error,
        ratio_error=ratio,
        cosine=cosine,
        raw_l2=float(np.linalg.norm(vec - w)),
    )
