"""Bernstein-polynomial sieve classifier with lattice-monotone coefficients.

The classifier is B(theta, x) = sum_j theta_j * prod_v b_{k_v j_v}(x_v) over
the multi-index lattice j in {0..k_1} x ... x {0..k_d}, with theta confined to
[-1, 1] and monotone along the lattice order.  Fitting solves the hinge
linear program over that polytope (an isotone problem on the lattice DAG);
binarization snaps coefficients to their signs, which preserves optimality.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from ._numeric import ValidationError, check_finite
from .isotone import IsotoneProblem, solve
from .order import lattice_dag
from .risks import WeightedSample

MAX_ORDER_PER_DIM = 500
MAX_LATTICE_SIZE = 10**6


def basis(k: int, j: int, x) -> float:
    """Bernstein basis value C(k, j) x^j (1-x)^(k-j) on [0, 1]."""
    if not (isinstance(k, int) and isinstance(j, int)) or k < 0 or not (0 <= j <= k):
        raise ValidationError(f"index j={j!r} out of range for order k={k!r}")
    check_finite(x, "x")
    if not (0 <= x <= 1):
        raise ValidationError(f"basis argument must lie in [0, 1], got {x!r}")
    x = float(x)
    return math.comb(k, j) * x**j * (1.0 - x) ** (k - j)


@lru_cache(maxsize=64)
def _comb_vector(k: int) -> np.ndarray:
    return np.array([math.comb(k, j) for j in range(k + 1)], dtype=float)


def _basis_row(k: int, x: float) -> np.ndarray:
    j = np.arange(k + 1)
    return _comb_vector(k) * x**j * (1.0 - x) ** (k - j)


def _basis_matrix(k: int, xs: np.ndarray) -> np.ndarray:
    """Rows of basis values: out[i, j] = C(k, j) xs[i]^j (1 - xs[i])^(k - j)."""
    col = np.asarray(xs, dtype=float)[:, None]
    j = np.arange(k + 1)[None, :]
    return _comb_vector(k) * col**j * (1.0 - col) ** (k - j)


@dataclass(frozen=True)
class BernsteinClassifier:
    """Per-dimension orders and a lattice-monotone coefficient vector in [-1,1].

    ``theta`` is stored in row-major multi-index order (last index fastest).
    ``scale`` optionally records per-dimension (min, max) training ranges for
    prediction-time rescaling into the unit cube.
    """

    orders: tuple
    theta: tuple
    binarized: bool = False
    scale: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(k) for k in self.orders))
        object.__setattr__(self, "theta", tuple(self.theta))
        if any(k < 1 for k in self.orders):
            raise ValidationError("every Bernstein order must be >= 1")
        size = 1
        for k in self.orders:
            size *= k + 1
        if len(self.theta) != size:
            raise ValidationError(
                f"theta has {len(self.theta)} entries, lattice needs {size}"
            )
        for t in self.theta:
            check_finite(t, "theta")
            if not (-1 <= t <= 1):
                raise ValidationError(f"theta entries must lie in [-1, 1], got {t!r}")
        if self.binarized and any(t not in (-1, 1) for t in self.theta):
            raise ValidationError("binarized model must have theta in {-1, +1}")
        if self.scale is not None:
            mins, maxs = self.scale
            object.__setattr__(self, "scale", (tuple(mins), tuple(maxs)))

    @property
    def dim(self) -> int:
        return len(self.orders)

    def multi_indices(self):
        return product(*(range(k + 1) for k in self.orders))

    def to_dict(self) -> dict:
        return {
            "type": "bernstein",
            "orders": list(self.orders),
            "theta": list(self.theta),
            "binarized": self.binarized,
            "scale": None
            if self.scale is None
            else {"min": list(self.scale[0]), "max": list(self.scale[1])},
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "BernsteinClassifier":
        if payload.get("type") != "bernstein":
            raise ValidationError("not a bernstein model payload")
        scale = None
        if "scale" in payload and payload["scale"] is not None:
            scale = (tuple(payload["scale"]["min"]), tuple(payload["scale"]["max"]))
        return cls(
            tuple(payload["orders"]),
            tuple(payload["theta"]),
            bool(payload.get("binarized", False)),
            scale,
        )


def _to_unit_cube(model: BernsteinClassifier, x) -> list:
    x = [float(v) for v in x]
    if len(x) != model.dim:
        raise ValidationError(f"point has dimension {len(x)}, model expects {model.dim}")
    if model.scale is not None:
        mins, maxs = model.scale
        x = [
            (v - lo) / (hi - lo) if hi > lo else 0.5
            for v, lo, hi in zip(x, mins, maxs)
        ]
    clipped = [min(1.0, max(0.0, v)) for v in x]
    if clipped != x:
        warnings.warn("coordinates outside [0,1] were clamped", stacklevel=3)
    return clipped


def evaluate(model: BernsteinClassifier, x) -> float:
    """Tensor-product polynomial value at x in the unit cube."""
    u = _to_unit_cube(model, x)
    value = np.asarray(model.theta, dtype=float).reshape(
        tuple(k + 1 for k in model.orders)
    )
    for k, coord in zip(model.orders, u):
        value = np.tensordot(_basis_row(k, coord), value, axes=(0, 0))
    return float(value)


def predict(model: BernsteinClassifier, x) -> int:
    value = evaluate(model, x)
    return 1 if value >= 0 else -1


def binarize(model: BernsteinClassifier) -> BernsteinClassifier:
    """Snap every coefficient to its sign (sign(0) = +1); idempotent.

    At a hinge-LP optimum the snapped classifier is again an optimum, so the
    empirical hinge risk does not increase.
    """
    if model.binarized:
        return model
    theta = tuple(1 if t >= 0 else -1 for t in model.theta)
    return BernsteinClassifier(model.orders, theta, True, model.scale)


def fit(sample: WeightedSample, orders) -> BernsteinClassifier:
    """Hinge-LP fit over the lattice-monotone coefficient polytope."""
    orders = tuple(int(k) for k in orders)
    if sample.n == 0:
        raise ValidationError("cannot fit on an empty sample")
    if any(k < 1 for k in orders):
        raise ValidationError("every Bernstein order must be >= 1")
    if len(orders) != sample.dim:
        raise ValidationError(
            f"{len(orders)} orders for {sample.dim}-dimensional covariates"
        )
    if any(k > MAX_ORDER_PER_DIM for k in orders):
        raise ValidationError(f"orders are capped at {MAX_ORDER_PER_DIM} per dimension")
    size = 1
    for k in orders:
        size *= k + 1
    if size > MAX_LATTICE_SIZE:
        raise ValidationError(f"coefficient lattice of size {size} exceeds {MAX_LATTICE_SIZE}")
    pts = np.asarray([[float(v) for v in p] for p in sample.points], dtype=float)
    if pts.size and (pts.min() < 0.0 or pts.max() > 1.0):
        raise ValidationError(
            "covariates must lie in the unit cube [0,1]^d; rescale them first "
            "(the CLI offers --rescale min-max normalization)"
        )
    signed = np.asarray(
        [float(w) * y for w, y in zip(sample.weights, sample.labels)], dtype=float
    )
    # objective coefficient per multi-index: sum_i w_i y_i prod_v b_{k_v j_v}(x_iv),
    # accumulated in fixed-size row chunks so only the K-sized output is materialized
    shape = tuple(k + 1 for k in orders)
    letters = "abcdefghijklmnopqrstuvwxyz"[: len(orders)]
    spec = "i," + ",".join(f"i{c}" for c in letters) + "->" + letters
    chunk = max(1, 2_000_000 // size)
    coeff = np.zeros(shape)
    for start in range(0, sample.n, chunk):
        stop = start + chunk
        blocks = [_basis_matrix(k, pts[start:stop, v]) for v, k in enumerate(orders)]
        coeff += np.einsum(spec, signed[start:stop], *blocks)
    coeff = coeff.reshape(-1)
    dag = lattice_dag(orders)
    values, _ = solve(IsotoneProblem(dag, tuple(coeff.tolist())))
    return BernsteinClassifier(orders, tuple(values), True)


def empirical_hinge_risk(model: BernsteinClassifier, sample: WeightedSample):
    """(1/n) sum w_i (1 - y_i B(theta, x_i)); the box keeps the max inactive."""
    total = 0.0
    for w, y, p in zip(sample.weights, sample.labels, sample.points):
        total += float(w) * max(0.0, 1.0 - y * evaluate(model, p))
    return total / sample.n


def suggest_orders(n: int, d: int):
    """Smallest uniform order whose tail keeps sqrt(log k / k) below the target rate.

    The rate is log(n)/sqrt(n) in one dimension and n^(-1/d) otherwise.  The
    result is floored at 1 and capped by n - 1 parameters per dimension, 500
    per dimension, and a total lattice of at most 10^6 indices.
    """
    if n < 2:
        raise ValidationError("need a sample size of at least 2")
    if d < 1:
        raise ValidationError("dimension must be positive")
    rate = math.log(n) / math.sqrt(n) if d == 1 else n ** (-1.0 / d)
    bound = rate * rate

    def tail_ok(k: int) -> bool:
        # log(j)/j peaks at j = 3 and decreases afterwards
        probe = max(k, 2)
        while probe <= 3:
            if math.log(probe) / probe > bound:
                return False
            probe += 1
        return math.log(max(k, 4)) / max(k, 4) <= bound

    k = 1
    while not tail_ok(k):
        k += 1
    k = max(1, min(k, n - 1, MAX_ORDER_PER_DIM, int(MAX_LATTICE_SIZE ** (1.0 / d)) - 1))
    return (k,) * d
