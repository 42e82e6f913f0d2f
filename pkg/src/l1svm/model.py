"""Domain types and seeded instance generation.

A classification instance is a unit-norm sparse vector a together with m
scaled Gaussian samples x_i = r * xt_i, xt_i ~ N(0, Id), labelled by
y_i = sign(<x_i, a>).  The quantity every solver works with is the averaged
hinge loss f(w) = (1/m) sum_i [1 - y_i <x_i, w>]_+.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RngSeed",
    "as_generator",
    "SparseClassifier",
    "TrainingSet",
    "ConstraintSet",
    "make_paper_classifier",
    "make_random_classifier",
    "generate_training_set",
    "hinge_objective",
    "save_training_set",
    "load_training_set",
    "save_classifier",
    "load_classifier",
]

# fixed benchmark classifier: 0-based support positions and raw values,
# normalized below by ||.||_2 = sqrt(2.59)
_BENCH_SUPPORT = (10, 140, 234, 360, 780)
_BENCH_VALUES = (1.0, -1.0, 0.5, -0.5, 0.3)


@dataclass(frozen=True)
class RngSeed:
    """Reproducible stream id: `base` picks the experiment, `stream` the trial."""

    base: int
    stream: int = 0

    def __post_init__(self):
        if self.base < 0 or self.stream < 0:
            raise ValueError("seed components must be nonnegative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.base, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


def as_generator(seed) -> np.random.Generator:
    """Accept an RngSeed, a Generator (used as-is), or a plain int base."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, RngSeed):
        return seed.generator()
    if isinstance(seed, (int, np.integer)):
        return RngSeed(int(seed)).generator()
    raise TypeError(f"cannot build a generator from {type(seed).__name__}")


@dataclass(frozen=True)
class SparseClassifier:
    """Unit l2-norm vector with explicit support bookkeeping."""

    a: np.ndarray
    support: np.ndarray
    s: int

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        sup = np.asarray(self.support, dtype=int)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "support", sup)
        if a.ndim != 1:
            raise ValueError("classifier must be a vector")
        if abs(np.linalg.norm(a) - 1.0) > 1e-12:
            raise ValueError("classifier must have unit l2 norm")
        if len(sup) != self.s:
            raise ValueError("support size disagrees with s")
        nz = np.flatnonzero(a)
        if not np.array_equal(np.sort(sup), nz):
            raise ValueError("support must list exactly the nonzero entries")
        # unit l2 norm and s nonzeros force ||a||_1 <= sqrt(s)
        if np.abs(a).sum() > np.sqrt(self.s) + 1e-9:
            raise ValueError("l1 norm exceeds sqrt(s)")

    @classmethod
    def from_vector(cls, a) -> "SparseClassifier":
        a = np.asarray(a, dtype=float)
        sup = np.flatnonzero(a)
        return cls(a=a, support=sup, s=len(sup))

    @property
    def d(self) -> int:
        return self.a.size

    @property
    def l1_norm(self) -> float:
        return float(np.abs(self.a).sum())


@dataclass(frozen=True)
class TrainingSet:
    """Scaled Gaussian sample matrix with sign labels."""

    X: np.ndarray
    y: np.ndarray
    r: float
    m: int = 0
    seed: RngSeed | None = None

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=float)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        if X.ndim != 2:
            raise ValueError("X must be an m x d matrix")
        m = X.shape[0]
        if self.m == 0:
            object.__setattr__(self, "m", m)
        elif self.m != m:
            raise ValueError("m disagrees with X")
        if y.shape != (m,):
            raise ValueError("y must have one label per row")
        if not np.all(np.abs(y) == 1.0):
            raise ValueError("labels must be +1 or -1")
        if not self.r > 0:
            raise ValueError("scale r must be positive")

    @property
    def d(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class ConstraintSet:
    """Feasible set descriptor: the l1 ball, optionally intersected with the unit l2 ball."""

    kind: str
    R: float
    l2_radius: float = 1.0

    def __post_init__(self):
        if self.kind not in ("l1", "l1l2"):
            raise ValueError("kind must be 'l1' or 'l1l2'")
        if self.R < 1.0:
            raise ValueError("l1 radius must be >= 1")
        if self.kind == "l1l2" and self.l2_radius != 1.0:
            raise ValueError("l2 radius is fixed to 1")

    def contains(self, w, tol: float = 1e-8) -> bool:
        w = np.asarray(w, dtype=float)
        ok = np.abs(w).sum() <= self.R + tol
        if self.kind == "l1l2":
            ok = ok and np.linalg.norm(w) <= self.l2_radius + tol
        return bool(ok)


def make_paper_classifier(d: int) -> SparseClassifier:
    """The fixed 5-sparse benchmark classifier used by the sweep experiments."""
    if d <= max(_BENCH_SUPPORT):
        raise ValueError(f"need d >= {max(_BENCH_SUPPORT) + 1} for the fixed support")
    a = np.zeros(d)
    a[list(_BENCH_SUPPORT)] = _BENCH_VALUES
    a /= np.linalg.norm(a)
    return SparseClassifier(a=a, support=np.array(_BENCH_SUPPORT), s=5)


def make_random_classifier(d: int, s: int, seed) -> SparseClassifier:
    """Uniformly random s-subset support, iid Gaussian entries, unit normalized."""
    if not 1 <= s <= d:
        raise ValueError("need 1 <= s <= d")
    rng = as_generator(seed)
    support = np.sort(rng.choice(d, size=s, replace=False))
    vals = rng.standard_normal(s)
    while np.any(vals == 0.0):  # probability-zero guard, keeps support exact
        vals[vals == 0.0] = rng.standard_normal(np.count_nonzero(vals == 0.0))
    a = np.zeros(d)
    a[support] = vals
    a /= np.linalg.norm(a)
    return SparseClassifier(a=a, support=support, s=s)


def generate_training_set(a, m: int, r: float, seed) -> TrainingSet:
    """Draw m rows x_i = r*xt_i with xt_i ~ N(0, Id) and label them by sign(<x_i, a>).

    Rows orthogonal to a (an event of probability zero) are redrawn so every
    label is a genuine sign.  Passing the same RngSeed reproduces X and y
    bit-for-bit.
    """
    vec = a.a if isinstance(a, SparseClassifier) else np.asarray(a, dtype=float)
    if m < 1:
        raise ValueError("need m >= 1")
    if not r > 0:
        raise ValueError("need r > 0")
    rng = as_generator(seed)
    Xt = rng.standard_normal((m, vec.size))
    z = Xt @ vec
    while np.any(z == 0.0):
        bad = np.flatnonzero(z == 0.0)
        Xt[bad] = rng.standard_normal((bad.size, vec.size))
        z[bad] = Xt[bad] @ vec
    y = np.sign(z)
    rec = seed if isinstance(seed, RngSeed) else None
    return TrainingSet(X=r * Xt, y=y, r=float(r), m=m, seed=rec)


def hinge_objective(w, T: TrainingSet) -> float:
    """Averaged hinge loss (1/m) sum_i [1 - y_i <x_i, w>]_+."""
    w = np.asarray(w, dtype=float)
    if w.shape != (T.d,):
        raise ValueError(f"w has dimension {w.shape}, data has d={T.d}")
    margins = 1.0 - T.y * (T.X @ w)
    return float(np.mean(np.maximum(margins, 0.0)))


# ---------------------------------------------------------------------------
# CSV interchange.  Column x_j / row index j are 1-based in files, arrays are
# 0-based in memory.  Values use %.17g so a round trip is lossless.

def save_training_set(T: TrainingSet, path) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["i", "y"] + [f"x_{j}" for j in range(1, T.d + 1)])
        for i in range(T.m):
            wr.writerow([i + 1, int(T.y[i])] + [f"{v:.17g}" for v in T.X[i]])


def load_training_set(path) -> TrainingSet:
    """Read a training CSV.  The scale is already folded into X, so r is 1."""
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if header[:2] != ["i", "y"]:
            raise ValueError("not a training-set CSV")
        rows = list(rd)
    y = np.array([float(row[1]) for row in rows])
    X = np.array([[float(v) for v in row[2:]] for row in rows])
    return TrainingSet(X=X, y=y, r=1.0)


def save_classifier(a, path) -> None:
    """Write support entries only, as rows j,a_j with 1-based j."""
    vec = a.a if isinstance(a, SparseClassifier) else np.asarray(a, dtype=float)
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["j", "a_j"])
        for j in np.flatnonzero(vec):
            wr.writerow([int(j) + 1, f"{vec[j]:.17g}"])


def load_classifier(path, d: int) -> np.ndarray:
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if len(header) != 2 or header[0] != "j":
            raise ValueError("not a classifier CSV")
        a = np.zeros(d)
        for row in rd:
            a[int(row[0]) - 1] = float(row[1])
    return a
