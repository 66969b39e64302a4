"""Distance sets, dot-product sets, and distinct-distance growth reports.

The distance set of a cloud collects its distinct pairwise Euclidean
distances (zero excluded); the dot-product set collects x . y over all
ordered pairs including x with itself. Deduplication is exact on integer
coordinates (squared distances compared as integers) and grid-quantized
otherwise, because floating comparison of algebraically equal distances is
unreliable. Growth reports compare the distinct-distance count against
n^{1/s0} for conjectured and best-known thresholds s0; the comparisons are
observational, never asserted, since the underlying claims are asymptotic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .cloud import PointCloud
from .errors import TooFewPoints

__all__ = [
    "ValueSet",
    "ErdosReport",
    "distance_set",
    "dot_product_set",
    "erdos_report",
    "default_erdos_exponents",
]

_BLOCK = 1024


@dataclass(frozen=True)
class ValueSet:
    """Sorted distinct values with the dedup resolution that produced them."""

    kind: str
    values: np.ndarray
    quantization: Union[float, str]
    count: int

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if np.any(np.diff(v) <= 0):
            raise ValueError("values must be strictly increasing")
        object.__setattr__(self, "values", v)
        if self.count != v.size:
            raise ValueError("count must equal the number of values")

    def to_json(self, *, max_values: int = 100_000) -> dict:
        doc = {
            "kind": self.kind,
            "count": self.count,
            "quantization": self.quantization,
        }
        if self.count <= max_values:
            doc["values"] = self.values.tolist()
        return doc


def _integer_coordinates(pts: np.ndarray) -> bool:
    return bool(np.all(pts == np.rint(pts)) and np.all(np.abs(pts) <= 2**25))


def _squared_distance_ints(pts: np.ndarray) -> np.ndarray:
    ints = np.rint(pts).astype(np.int64)
    n = ints.shape[0]
    chunks = []
    for i0 in range(0, n, _BLOCK):
        a = ints[i0 : i0 + _BLOCK]
        for j0 in range(i0, n, _BLOCK):
            b = ints[j0 : j0 + _BLOCK]
            d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
            if i0 == j0:
                iu = np.triu_indices(d2.shape[0], k=1)
                d2 = d2[iu]
            else:
                d2 = d2.ravel()
            if d2.size:
                chunks.append(np.unique(d2))
    return np.unique(np.concatenate(chunks))


def _bucket_min(values: np.ndarray, step: float, acc: dict) -> None:
    """Fold values into ``acc``: per quantization bucket, the smallest value."""
    keys = np.rint(values / step).astype(np.int64)
    order = np.lexsort((values, keys))
    keys_sorted = keys[order]
    vals_sorted = values[order]
    uniq, first = np.unique(keys_sorted, return_index=True)
    for k, v in zip(uniq.tolist(), vals_sorted[first].tolist()):
        if k not in acc or v < acc[k]:
            acc[k] = v


def _pair_distances_quantized(pts: np.ndarray, step: float) -> np.ndarray:
    n = pts.shape[0]
    acc: dict = {}
    for i0 in range(0, n, _BLOCK):
        a = pts[i0 : i0 + _BLOCK]
        for j0 in range(i0, n, _BLOCK):
            b = pts[j0 : j0 + _BLOCK]
            d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
            if i0 == j0:
                iu = np.triu_indices(d2.shape[0], k=1)
                d2 = d2[iu]
            else:
                d2 = d2.ravel()
            if d2.size:
                _bucket_min(np.sqrt(d2), step, acc)
    return np.array([acc[k] for k in sorted(acc)])


def distance_set(cloud: PointCloud, quantization="auto") -> ValueSet:
    """Distinct pairwise distances of a cloud (unordered pairs, zero excluded).

    ``quantization`` is "auto" (exact integer mode when every coordinate is
    an integer, else a relative 1e-9 grid), "exact" to force integer mode,
    or an absolute grid step. Quantized values are canonical grid points,
    so equal inputs never split and values further apart than twice the
    step never merge.
    """
    if cloud.n < 2:
        raise TooFewPoints("distance set needs at least 2 points")
    pts = cloud.points
    use_exact = quantization == "exact" or (
        quantization == "auto" and _integer_coordinates(pts)
    )
    if use_exact:
        if not _integer_coordinates(pts):
            raise ValueError("exact mode requires integer coordinates")
        d2 = _squared_distance_ints(pts)
        values = np.sqrt(d2.astype(float))
        return ValueSet("distance", values, "exact", values.size)
    if quantization == "auto":
        step = 1e-9 * cloud.diameter()
    else:
        step = float(quantization)
    if step <= 0:
        raise ValueError("quantization step must be positive")
    values = _pair_distances_quantized(pts, step)
    return ValueSet("distance", values, step, values.size)


def dot_product_set(cloud: PointCloud, quantization: Optional[float] = None) -> ValueSet:
    """Distinct dot products over all ordered pairs, including x with itself.

    Default quantization is a relative 1e-9 grid on the largest magnitude.
    """
    pts = cloud.points
    n = pts.shape[0]
    if quantization is None:
        scale = float(np.abs(pts @ pts.T).max()) if n <= _BLOCK else None
        if scale is None:
            norms = np.linalg.norm(pts, axis=1)
            scale = float(norms.max() ** 2)
        step = 1e-9 * (scale if scale > 0 else 1.0)
    else:
        step = float(quantization)
    if step <= 0:
        raise ValueError("quantization step must be positive")
    acc: dict = {}
    for i0 in range(0, n, _BLOCK):
        a = pts[i0 : i0 + _BLOCK]
        for j0 in range(0, n, _BLOCK):
            b = pts[j0 : j0 + _BLOCK]
            _bucket_min((a @ b.T).ravel(), step, acc)
    values = np.array([acc[k] for k in sorted(acc)])
    return ValueSet("dot-product", values, step, values.size)


def default_erdos_exponents(d: int) -> list:
    """Distance-threshold exponents: conjectured d/2, plus best known bounds."""
    out = [d / 2.0]
    if d == 2:
        out.append(5.0 / 4.0)
    if d >= 3:
        out.append(d / 2.0 + 0.25 - 1.0 / (8.0 * d + 4.0))
    return out


@dataclass(frozen=True)
class ErdosReport:
    """Observed distinct-distance counts against n^{1/s0} per threshold."""

    n: int
    dim: int
    count: int
    quantization: Union[float, str]
    rows: tuple

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "count": self.count,
            "quantization": self.quantization,
            "rows": [dict(r) for r in self.rows],
        }


def erdos_report(cloud: PointCloud, exponents=None, *, quantization="auto") -> ErdosReport:
    """Ratio of the distinct-distance count to n^{1/s0} for each threshold s0.

    Observational: asymptotic growth claims admit no finite pass/fail.
    """
    values = distance_set(cloud, quantization)
    if exponents is None:
        exponents = default_erdos_exponents(cloud.dim)
    n = cloud.n
    rows = []
    for s0 in exponents:
        s0 = float(s0)
        expo = 1.0 / s0
        rows.append(
            {
                "s0": s0,
                "exponent": expo,
                "bound": n**expo,
                "ratio": values.count / n**expo,
            }
        )
    return ErdosReport(
        n=n,
        dim=cloud.dim,
        count=values.count,
        quantization=values.quantization,
        rows=tuple(rows),
    )
