"""Hinge-risk-minimizing monotone classification over the componentwise order.

Fitting deduplicates covariate points, aggregates the per-point objective
coefficient sum(w_i y_i), and solves the isotone linear program exactly.  The
fitted values are the +/-1 extreme-point solution; out-of-sample labels follow
the optimistic rule: the sign of the minimum fitted value over support points
dominating the query, and +1 when nothing dominates it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._numeric import ValidationError
from .isotone import IsotoneProblem, solve
from .order import build_dag, dominates
from .risks import WeightedSample


@dataclass(frozen=True)
class MonotoneClassifier:
    """Distinct training points with fitted +/-1 values respecting the order."""

    support: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(tuple(p) for p in self.support))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.support) != len(self.values):
            raise ValidationError("support and values must have equal length")
        if any(v not in (-1, 1) for v in self.values):
            raise ValidationError("fitted values must be -1 or +1")

    @property
    def dim(self) -> int:
        return len(self.support[0]) if self.support else 0

    def to_dict(self) -> dict:
        return {
            "type": "monotone",
            "dim": self.dim,
            "support": [list(_json_number(v) for v in p) for p in self.support],
            "values": list(self.values),
        }

    def to_compact_dict(self) -> dict:
        """Frontier-only form: minimal +1 points plus maximal -1 points.

        The -1 frontier is what the prediction rule needs (a point is labeled
        -1 exactly when some -1-valued support point dominates it); the +1
        frontier records the fitted up-set's minimal elements.
        """
        pos = [p for p, v in zip(self.support, self.values) if v > 0]
        neg = [p for p, v in zip(self.support, self.values) if v < 0]
        min_pos = [p for p in pos if not any(q != p and dominates(q, p) for q in pos)]
        max_neg = [p for p in neg if not any(q != p and dominates(p, q) for q in neg)]
        return {
            "type": "monotone",
            "dim": self.dim,
            "compact": True,
            "min_positive": [list(_json_number(v) for v in p) for p in min_pos],
            "max_negative": [list(_json_number(v) for v in p) for p in max_neg],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "MonotoneClassifier":
        if payload.get("type") != "monotone":
            raise ValidationError("not a monotone model payload")
        if payload.get("compact"):
            neg = [tuple(_parse_number(v) for v in p) for p in payload["max_negative"]]
            pos = [tuple(_parse_number(v) for v in p) for p in payload["min_positive"]]
            return cls(tuple(neg + pos), tuple([-1] * len(neg) + [1] * len(pos)))
        support = [tuple(_parse_number(v) for v in p) for p in payload["support"]]
        return cls(tuple(support), tuple(payload["values"]))


def _json_number(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


def _parse_number(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def fit(sample: WeightedSample) -> MonotoneClassifier:
    """Empirical weighted hinge risk minimizer over monotone [-1,1] classifiers."""
    if sample.n == 0:
        raise ValidationError("cannot fit on an empty sample")
    totals = {}
    for w, y, p in zip(sample.weights, sample.labels, sample.points):
        totals[p] = totals.get(p, 0) + w * y
    support = sorted(totals)
    dag = build_dag(support)
    coeffs = tuple(totals[p] for p in dag.nodes)
    values, _ = solve(IsotoneProblem(dag, coeffs))
    return MonotoneClassifier(dag.nodes, tuple(values))


def predict(model: MonotoneClassifier, x) -> int:
    """Sign of the minimum fitted value over dominating support points; +1 if none."""
    x = tuple(x)
    if model.support and len(x) != model.dim:
        raise ValidationError(f"point has dimension {len(x)}, model expects {model.dim}")
    label = 1
    for p, v in zip(model.support, model.values):
        if v < label and dominates(x, p):
            label = v
    return label


def values_at(model: MonotoneClassifier, points) -> list:
    """Fitted/predicted labels at many points (predict applied rowwise)."""
    return [predict(model, p) for p in points]
