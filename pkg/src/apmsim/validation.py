"""Curve-agreement metrics: discrete Frechet distance, R^2 and Q-Q pairing.

Model output is compared against an external reference curve (simulation or
measurement). The discrete Frechet distance is computed by dynamic
programming over monotone couplings of the two point sequences; the
normalized variant rescales both curves by the reference's bounding box so
the result is a unit-free fraction of the reference range.

All functions are pure; batch comparisons may run in parallel across pairs.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError

CURVE_CSV_HEADER = ("x", "y")


@dataclass
class Curve:
    """An ordered sampled curve with strictly increasing, finite x."""

    x: np.ndarray
    y: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.x.ndim != 1 or self.x.shape != self.y.shape:
            raise DomainError("curve needs matching 1-d x and y arrays")
        if self.x.size < 2:
            raise DomainError(f"curve {self.label!r} needs at least 2 points")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise DomainError(f"curve {self.label!r} contains non-finite values")
        if not np.all(np.diff(self.x) > 0.0):
            raise DomainError(f"curve {self.label!r} must have strictly increasing x")

    def __len__(self) -> int:
        return int(self.x.size)

    @classmethod
    def from_points(cls, points, label: str = "") -> "Curve":
        pts = np.asarray(points, dtype=float)
        return cls(pts[:, 0], pts[:, 1], label)

    @classmethod
    def from_csv(cls, path: str | Path, label: str = "") -> "Curve":
        """Read a two-column CSV with the mandatory header row ``x,y``."""
        path = Path(path)
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        if not rows or tuple(c.strip() for c in rows[0]) != CURVE_CSV_HEADER:
            raise DomainError(f"{path}: expected header row 'x,y'")
        try:
            data = [(float(r[0]), float(r[1])) for r in rows[1:] if r]
        except (ValueError, IndexError) as err:
            raise DomainError(f"{path}: malformed data row ({err})") from None
        return cls.from_points(data, label or path.stem)


@dataclass
class AgreementReport:
    """Agreement metrics between a model curve and a reference curve."""

    frechet_normalized: float
    frechet_raw: float
    r_squared: float
    qq_pairs: list[tuple[float, float]] | None = None
    resampled: bool = False

    def __post_init__(self) -> None:
        if self.frechet_normalized < 0.0:
            raise DomainError("normalized Frechet distance cannot be negative")

    def to_json(self) -> str:
        payload = {
            "frechet_normalized": self.frechet_normalized,
            "frechet_normalized_pct": 100.0 * self.frechet_normalized,
            "frechet_raw": self.frechet_raw,
            "r_squared": self.r_squared,
            "resampled": self.resampled,
        }
        if self.qq_pairs is not None:
            payload["qq_pairs"] = [[a, b] for a, b in self.qq_pairs]
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_csv_row(self) -> str:
        header = "frechet_normalized,frechet_normalized_pct,frechet_raw,r_squared"
        row = (
            f"{self.frechet_normalized:.6f},{100.0 * self.frechet_normalized:.6f},"
            f"{self.frechet_raw:.6f},{self.r_squared:.6f}"
        )
        return header + "\n" + row + "\n"


def discrete_frechet(a: Curve, b: Curve) -> float:
    """Discrete Frechet distance between two curves.

    The minimum over monotone couplings of the maximum paired Euclidean
    point distance, via the standard O(m*n) dynamic program. Symmetric, and
    zero exactly when the point sequences coincide.
    """
    pa = np.column_stack((a.x, a.y))
    pb = np.column_stack((b.x, b.y))
    m, n = len(pa), len(pb)
    dist = np.empty((m, n))
    for i in range(m):
        for j in range(n):
            dist[i, j] = math.hypot(pa[i, 0] - pb[j, 0], pa[i, 1] - pb[j, 1])
    dp = np.empty((m, n))
    dp[0, 0] = dist[0, 0]
    for i in range(1, m):
        dp[i, 0] = max(dp[i - 1, 0], dist[i, 0])
    for j in range(1, n):
        dp[0, j] = max(dp[0, j - 1], dist[0, j])
    for i in range(1, m):
        for j in range(1, n):
            dp[i, j] = max(
                min(dp[i - 1, j], dp[i, j - 1], dp[i - 1, j - 1]),
                dist[i, j],
            )
    return float(dp[m - 1, n - 1])


def _rescale_by_reference(curve: Curve, reference: Curve) -> Curve:
    x0, x1 = float(np.min(reference.x)), float(np.max(reference.x))
    y0, y1 = float(np.min(reference.y)), float(np.max(reference.y))
    if x1 == x0 or y1 == y0:
        raise DomainError("reference curve has a degenerate x or y range")
    return Curve((curve.x - x0) / (x1 - x0), (curve.y - y0) / (y1 - y0), curve.label)


def normalized_frechet(model: Curve, reference: Curve) -> float:
    """Discrete Frechet distance after rescaling both curves by the reference box.

    Both curves are mapped so the reference spans [0, 1] in x and in y; the
    result is a fraction of the reference range (multiply by 100 for a
    percentage) and is invariant under joint affine changes of units.
    """
    return discrete_frechet(
        _rescale_by_reference(model, reference),
        _rescale_by_reference(reference, reference),
    )


def r_squared(pairs) -> float:
    """Coefficient of determination of model values against reference values.

    pairs is a sequence of (reference, model) values; returns
    1 - SS_res/SS_tot with the reference as ground truth. Equals 1 for exact
    agreement, can be negative for models worse than the reference mean.
    """
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
        raise DomainError("r_squared needs at least 2 (reference, model) pairs")
    ref, model = arr[:, 0], arr[:, 1]
    ss_tot = float(np.sum((ref - ref.mean()) ** 2))
    if ss_tot == 0.0:
        raise DomainError("reference values have zero variance")
    ss_res = float(np.sum((ref - model) ** 2))
    return 1.0 - ss_res / ss_tot


def qq_pairs(a, b, k: int) -> list[tuple[float, float]]:
    """k paired quantiles of two samples at evenly spaced probabilities.

    Probabilities i/(k-1) for i = 0..k-1; quantiles use linear interpolation
    between order statistics with inclusive endpoints. Pairs are monotone
    nondecreasing in both coordinates.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise DomainError("q-q pairing needs non-empty samples")
    if k < 2:
        raise DomainError(f"quantile count must be >= 2, got {k}")
    probs = np.linspace(0.0, 1.0, k)
    qa = np.quantile(a, probs, method="linear")
    qb = np.quantile(b, probs, method="linear")
    return [(float(x), float(y)) for x, y in zip(qa, qb)]


def compare_curves(
    model: Curve,
    reference: Curve,
    qq: int | None = None,
    resample: bool = False,
) -> AgreementReport:
    """Full agreement report between a model curve and a reference curve.

    R^2 pairs points index-wise, which requires equal lengths; pass
    resample=True to linearly resample the model onto the reference x grid
    first. The Frechet distances always use the curves as given (the
    coupling handles unequal lengths).
    """
    if resample:
        model_y = np.interp(reference.x, model.x, model.y)
        pairs = np.column_stack((reference.y, model_y))
    else:
        if len(model) != len(reference):
            raise DomainError(
                "curves have different lengths; use resample=True for R^2 pairing"
            )
        pairs = np.column_stack((reference.y, model.y))
    report = AgreementReport(
        frechet_normalized=normalized_frechet(model, reference),
        frechet_raw=discrete_frechet(model, reference),
        r_squared=r_squared(pairs),
        qq_pairs=qq_pairs(reference.y, model.y, qq) if qq else None,
        resampled=resample,
    )
    return report


def write_qq_csv(pairs: list[tuple[float, float]], path: str | Path) -> None:
    """Write paired quantiles as a CSV with columns p,reference,model."""
    k = len(pairs)
    lines = ["p,reference,model"]
    for i, (ref_q, model_q) in enumerate(pairs):
        p = i / (k - 1) if k > 1 else 0.0
        lines.append(f"{p:.6f},{ref_q:.6f},{model_q:.6f}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
