"""Experiment harness: seeded error sweeps over r, m and d, plus bound overlays.

Each sweep fixes everything except one quantity, runs `trials` independent
instances per grid point and reports mean recovery errors.  Trial t always
draws from the stream (seed.base, t), so different grid points of one sweep
see the same noise realizations and paired comparisons are meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import RngSeed, SparseClassifier, generate_training_set, make_paper_classifier, \
    make_random_classifier
from .solvers import SolverConfig, recovery_error, solve_l1_l2_svm, solve_l1_svm, \
    solve_one_bit_cs
from .theory import BoundReport, bound_report, write_bound_reports

__all__ = [
    "METHODS",
    "SweepSpec",
    "SweepRow",
    "benchmark_classifier",
    "default_r_sweep_spec",
    "default_m_sweep_spec",
    "default_d_sweep_spec",
    "run_r_sweep",
    "run_m_sweep",
    "run_d_sweep",
    "run_sweep",
    "enumerate_sweep_points",
    "emit_bound_overlay",
    "write_sweep_rows",
    "SWEEP_HEADER",
]

METHODS = ("l1_svm", "l1l2_svm", "one_bit_cs")

_BENCH_POSITIONS = (10, 140, 234, 360, 780)
_BENCH_VALUES = (1.0, -1.0, 0.5, -0.5, 0.3)


@dataclass(frozen=True)
class SweepSpec:
    kind: str  # "r", "m" or "d"
    grid: tuple
    trials: int
    fixed: dict = field(default_factory=dict)
    seed: RngSeed = RngSeed(0)
    methods: tuple = ("l1_svm", "l1l2_svm")

    def __post_init__(self):
        if self.kind not in ("r", "m", "d"):
            raise ValueError("kind must be 'r', 'm' or 'd'")
        grid = tuple(self.grid)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "methods", tuple(self.methods))
        if len(grid) == 0:
            raise ValueError("grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if min(grid) <= 0:
            raise ValueError("grid values must be positive")
        if self.trials < 1:
            raise ValueError("need trials >= 1")
        bad = set(self.methods) - set(METHODS)
        if bad or not self.methods:
            raise ValueError(f"methods must be a nonempty subset of {METHODS}")


@dataclass(frozen=True)
class SweepRow:
    sweep_value: float
    method: str
    m: int
    r: float
    d: int
    s: int
    R: float
    mean_l2_error: float
    mean_ratio_error: float
    std_error: float  # standard error of the mean l2 error
    trials_used: int
    mean_solver_iters: float
    trial_l2_errors: tuple = ()  # per-trial values backing the mean, not serialized


def benchmark_classifier(d: int) -> SparseClassifier:
    """Fixed 5-sparse benchmark vector; support positions scale with d below 781."""
    if d > max(_BENCH_POSITIONS):
        return make_paper_classifier(d)
    positions = [p * d // 1000 for p in _BENCH_POSITIONS]
    if len(set(positions)) != 5:
        raise ValueError(f"d={d} too small to place the 5-entry benchmark support")
    a = np.zeros(d)
    a[positions] = _BENCH_VALUES
    a /= np.linalg.norm(a)
    return SparseClassifier(a=a, support=np.array(positions), s=5)


def default_r_sweep_spec(trials: int = 20, seed: RngSeed = RngSeed(0), **fixed) -> SweepSpec:
    grid = tuple(round(0.05 * k, 10) for k in range(1, 31))
    cfg = {"d": 1000, "m_values": (200, 400)}
    cfg.update(fixed)
    return SweepSpec(kind="r", grid=grid, trials=trials, fixed=cfg, seed=seed,
                     methods=("l1_svm", "l1l2_svm"))


def default_m_sweep_spec(trials: int = 40, seed: RngSeed = RngSeed(0), **fixed) -> SweepSpec:
    grid = tuple(range(50, 801, 50))
    cfg = {"d": 1000, "r_fixed": 0.75}
    cfg.update(fixed)
    return SweepSpec(kind="m", grid=grid, trials=trials, fixed=cfg, seed=seed,
                     methods=("l1_svm", "l1l2_svm", "one_bit_cs"))


def default_d_sweep_spec(trials: int = 60, seed: RngSeed = RngSeed(0), **fixed) -> SweepSpec:
    cfg = {"s": 5, "m_multipliers": (10, 20, 40)}
    cfg.update(fixed)
    return SweepSpec(kind="d", grid=(100, 200, 500, 1000, 2000, 3000), trials=trials,
                     fixed=cfg, seed=seed, methods=("l1_svm",))


def _solver_config(fixed: dict) -> SolverConfig:
    return SolverConfig(max_iters=int(fixed.get("max_iters", 5000)))


def _solve(method: str, T, R: float, cfg: SolverConfig):
    if method == "l1_svm":
        return solve_l1_svm(T, R, cfg)
    if method == "l1l2_svm":
        return solve_l1_l2_svm(T, R, cfg)
    return solve_one_bit_cs(T, R)


def _fixed_classifier_trial(a, method, m, r, R, base, trial, cfg):
    T = generate_training_set(a, m, r, RngSeed(base, trial))
    res = _solve(method, T, R, cfg)
    return recovery_error(a, res), res.iterations


def _aggregate(sweep_value, method, m, r, d, s, R, errors, ratios, iters) -> SweepRow:
    errs = np.asarray(errors)
    n = errs.size
    std_err = float(errs.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return SweepRow(
        sweep_value=float(sweep_value), method=method, m=int(m), r=float(r), d=int(d),
        s=int(s), R=float(R), mean_l2_error=float(errs.mean()),
        mean_ratio_error=float(np.mean(ratios)), std_error=std_err, trials_used=n,
        mean_solver_iters=float(np.mean(iters)), trial_l2_errors=tuple(errs),
    )


def run_r_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Error versus data scale r, fixed benchmark classifier, one series per m."""
    if spec.kind != "r":
        raise ValueError("spec.kind must be 'r'")
    d = int(spec.fixed.get("d", 1000))
    m_values = tuple(spec.fixed.get("m_values", (200, 400)))
    a = benchmark_classifier(d)
    R = a.l1_norm
    cfg = _solver_config(spec.fixed)
    rows = []
    for r in spec.grid:
        for m in m_values:
            for method in spec.methods:
                errors, ratios, iters = [], [], []
                for trial in range(spec.trials):
                    err, its = _fixed_classifier_trial(a, method, m, r, R,
                                                       spec.seed.base, trial, cfg)
                    errors.append(err.l2_error)
                    ratios.append(err.ratio_error)
                    iters.append(its)
                rows.append(_aggregate(r, method, m, r, d, a.s, R, errors, ratios, iters))
    return rows


def _m_sweep_series(spec: SweepSpec):
    r_fixed = float(spec.fixed.get("r_fixed", 0.75))
    series = [
        ("l1_svm", lambda m: r_fixed),
        ("l1_svm", lambda m: math.sqrt(m) / 30.0),
        ("l1l2_svm", lambda m: math.sqrt(m) / 30.0),
        ("one_bit_cs", lambda m: math.sqrt(m) / 30.0),
    ]
    return [(meth, rule) for meth, rule in series if meth in spec.methods]


def run_m_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Error versus sample count m.

    Four series: the l1 solver at fixed r, the l1 solver at r = sqrt(m)/30,
    the intersected solver at r = sqrt(m)/30, and the sign-measurement
    baseline (whose maximizer does not depend on r at all).
    """
    if spec.kind != "m":
        raise ValueError("spec.kind must be 'm'")
    d = int(spec.fixed.get("d", 1000))
    a = benchmark_classifier(d)
    R = a.l1_norm
    cfg = _solver_config(spec.fixed)
    rows = []
    for m in spec.grid:
        m = int(m)
        for method, r_rule in _m_sweep_series(spec):
            r = float(r_rule(m))
            errors, ratios, iters = [], [], []
            for trial in range(spec.trials):
                err, its = _fixed_classifier_trial(a, method, m, r, R,
                                                   spec.seed.base, trial, cfg)
                errors.append(err.l2_error)
                ratios.append(err.ratio_error)
                iters.append(its)
            rows.append(_aggregate(m, method, m, r, d, a.s, R, errors, ratios, iters))
    return rows


def _d_sweep_stream(spec: SweepSpec, d_index: int, mult_index: int, trial: int) -> int:
    mults = tuple(spec.fixed.get("m_multipliers", (10, 20, 40)))
    return trial + spec.trials * (mult_index + len(mults) * d_index)


def run_d_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Error versus dimension d at m = multiplier * log(d), fresh random classifier per trial.

    The R column reports the trial average of ||a||_1 since the classifier is
    redrawn each time.
    """
    if spec.kind != "d":
        raise ValueError("spec.kind must be 'd'")
    s = int(spec.fixed.get("s", 5))
    mults = tuple(spec.fixed.get("m_multipliers", (10, 20, 40)))
    r_override = spec.fixed.get("r")
    cfg = _solver_config(spec.fixed)
    rows = []
    for di, d in enumerate(spec.grid):
        d = int(d)
        if d < s:
            raise ValueError(f"d={d} smaller than sparsity {s}")
        for mi, mult in enumerate(mults):
            m = round(mult * math.log(d))
            r = float(r_override) if r_override is not None else math.sqrt(m) / 30.0
            for method in spec.methods:
                errors, ratios, iters, r_norms = [], [], [], []
                for trial in range(spec.trials):
                    stream = _d_sweep_stream(spec, di, mi, trial)
                    gen = RngSeed(spec.seed.base, stream).generator()
                    a = make_random_classifier(d, s, gen)
                    T = generate_training_set(a, m, r, gen)
                    res = _solve(method, T, a.l1_norm, cfg)
                    err = recovery_error(a, res)
                    errors.append(err.l2_error)
                    ratios.append(err.ratio_error)
                    iters.append(res.iterations)
                    r_norms.append(a.l1_norm)
                rows.append(_aggregate(d, method, m, r, d, s, float(np.mean(r_norms)),
                                       errors, ratios, iters))
    return rows


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    runner = {"r": run_r_sweep, "m": run_m_sweep, "d": run_d_sweep}[spec.kind]
    return runner(spec)


def enumerate_sweep_points(spec: SweepSpec) -> list[dict]:
    """Unique (d, s, R, r, m) tuples a sweep visits, with a default slack u.

    For randomly drawn classifiers R is taken as sqrt(s), the radius that
    always contains them.  The slack defaults to u = r R sqrt(2 log 2d)/sqrt(m),
    matching the scale of the deterministic deviation term.
    """
    points = []
    seen = set()

    def add(d, s, R, r, m):
        key = (d, s, round(R, 12), round(r, 12), m)
        if key in seen:
            return
        seen.add(key)
        u = r * R * math.sqrt(2.0 * math.log(2.0 * d)) / math.sqrt(m)
        points.append({"d": int(d), "s": int(s), "R": float(R), "r": float(r),
                       "m": int(m), "u": float(u)})

    if spec.kind == "r":
        d = int(spec.fixed.get("d", 1000))
        a = benchmark_classifier(d)
        for r in spec.grid:
            for m in spec.fixed.get("m_values", (200, 400)):
                add(d, a.s, a.l1_norm, float(r), int(m))
    elif spec.kind == "m":
        d = int(spec.fixed.get("d", 1000))
        a = benchmark_classifier(d)
        for m in spec.grid:
            for _, r_rule in _m_sweep_series(spec):
                add(d, a.s, a.l1_norm, float(r_rule(int(m))), int(m))
    else:
        s = int(spec.fixed.get("s", 5))
        r_override = spec.fixed.get("r")
        for d in spec.grid:
            for mult in spec.fixed.get("m_multipliers", (10, 20, 40)):
                m = round(mult * math.log(int(d)))
                r = float(r_override) if r_override is not None else math.sqrt(m) / 30.0
                add(int(d), s, math.sqrt(s), r, m)
    return points


def emit_bound_overlay(spec: SweepSpec, eps_grid=(0.05, 0.1, 0.15), t: float = 1.0,
                       path=None) -> list[BoundReport]:
    """Bound values at every sweep point, one report per (point, eps) pair."""
    reports = [
        bound_report(p["d"], p["s"], p["R"], p["r"], p["m"], float(eps), p["u"], t=t)
        for p in enumerate_sweep_points(spec)
        for eps in eps_grid
    ]
    if path is not None:
        write_bound_reports(reports, path)
    return reports


SWEEP_HEADER = ("sweep_value,method,m,r,d,s,R,mean_l2_error,mean_ratio_error,"
                "std_error,trials,mean_iters")


def _fmt(x) -> str:
    return f"{x:.10g}"


def write_sweep_rows(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(SWEEP_HEADER + "\n")
        for row in rows:
            fh.write(",".join([
                _fmt(row.sweep_value), row.method, str(row.m), _fmt(row.r), str(row.d),
                str(row.s), _fmt(row.R), _fmt(row.mean_l2_error),
                _fmt(row.mean_ratio_error), _fmt(row.std_error), str(row.trials_used),
                _fmt(row.mean_solver_iters),
            ]) + "\n")
