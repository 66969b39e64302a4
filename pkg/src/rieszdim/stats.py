"""Monte Carlo experiments on random-cloud energies.

For IID draws from a probability measure the sample energy J_s is an
unbiased estimator of the measure energy I_s at every n, concentrates as n
grows, and its single-path running values settle onto I_s. The experiments
here make each statement finite: mean-versus-oracle z-scores, exceedance
frequencies, and single growing sample paths with incremental energies.
Replicates run on counter-split streams, so reports are reproducible
bit-for-bit from (measure, s, n grid, reps, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .energy import discrete_energy_multi, _kernel
from .errors import OracleUnavailable, UnsupportedVariant
from .measures import (
    MeasureSpec,
    measure_to_json,
    reference_energy,
    reference_energy_method,
    sample,
)
from .rng import stream

__all__ = [
    "ExperimentReport",
    "replicate_energies",
    "expectation_experiment",
    "wlln_exceedance",
    "slln_path",
]


@dataclass(frozen=True)
class ExperimentReport:
    """Serializable record of one statistical experiment."""

    kind: str
    measure: dict
    s: float
    n_grid: tuple
    reps: int
    seed: int
    cells: tuple
    oracle: Optional[float] = None
    oracle_method: Optional[str] = None
    eps: Optional[float] = None

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "measure": self.measure,
            "s": self.s,
            "n_grid": list(self.n_grid),
            "reps": self.reps,
            "seed": self.seed,
            "cells": [dict(c) for c in self.cells],
        }
        if self.oracle is not None:
            doc["oracle"] = None if math.isinf(self.oracle) else self.oracle
            doc["oracle_method"] = self.oracle_method
        if self.eps is not None:
            doc["eps"] = self.eps
        return doc


def replicate_energies(
    measure: MeasureSpec, s_list, n: int, reps: int, seed: int
) -> np.ndarray:
    """J_s per replicate, shape (len(s_list), reps).

    Replicate r draws its cloud from the seed stream jumped r blocks, so
    the array is independent of evaluation order.
    """
    out = np.empty((len(s_list), reps))
    for r in range(reps):
        cloud = sample(measure, n, seed, rep=r)
        out[:, r] = discrete_energy_multi(cloud, s_list)
    return out


def _resolve_oracle(measure: MeasureSpec, s: float, oracle):
    if oracle == "auto":
        try:
            return reference_energy(measure, s), reference_energy_method(measure)
        except UnsupportedVariant as exc:
            raise OracleUnavailable(str(exc)) from exc
    if oracle is None:
        return None, None
    return float(oracle), "explicit"


def expectation_experiment(
    measure: MeasureSpec,
    s: float,
    n: int,
    reps: int,
    seed: int,
    *,
    oracle="auto",
) -> ExperimentReport:
    """Mean and standard error of J_s over replicates, with oracle z-score.

    ``oracle`` is "auto" (use the reference energy, error if unavailable),
    an explicit value, or None to waive the comparison.
    """
    if reps < 30:
        raise ValueError("need reps >= 30")
    ref, method = _resolve_oracle(measure, s, oracle)
    values = replicate_energies(measure, [s], n, reps, seed)[0]
    mean = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(reps))
    cell = {
        "n": n,
        "mean": mean,
        "se": se,
        "dispersion": float(values.max() / np.median(values)),
    }
    if ref is not None and not math.isinf(ref):
        cell["z"] = (mean - ref) / se if se > 0 else 0.0
    return ExperimentReport(
        kind="expectation",
        measure=measure_to_json(measure),
        s=s,
        n_grid=(n,),
        reps=reps,
        seed=seed,
        cells=(cell,),
        oracle=ref,
        oracle_method=method,
    )


def wlln_exceedance(
    measure: MeasureSpec,
    s: float,
    eps: float,
    n_grid,
    reps: int,
    seed: int,
    *,
    oracle="auto",
) -> ExperimentReport:
    """Empirical frequency of |J_s - I_s| > eps per sample size.

    The reference energy must be finite; experiments against an infinite
    oracle are refused rather than approximated.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    n_grid = [int(n) for n in n_grid]
    if len(n_grid) < 3 or any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("n_grid must be ascending with at least 3 values")
    ref, method = _resolve_oracle(measure, s, oracle)
    if ref is None or math.isinf(ref):
        raise OracleUnavailable("exceedance experiment needs a finite oracle")
    cells = []
    for n in n_grid:
        values = replicate_energies(measure, [s], n, reps, seed)[0]
        rate = float(np.mean(np.abs(values - ref) > eps))
        cells.append(
            {
                "n": n,
                "rate": rate,
                "mean": float(values.mean()),
                "se": float(values.std(ddof=1) / math.sqrt(reps)),
                "dispersion": float(values.max() / np.median(values)),
            }
        )
    return ExperimentReport(
        kind="wlln",
        measure=measure_to_json(measure),
        s=s,
        n_grid=tuple(n_grid),
        reps=reps,
        seed=seed,
        cells=tuple(cells),
        oracle=ref,
        oracle_method=method,
        eps=eps,
    )


def slln_path(measure: MeasureSpec, s: float, n_max: int, seed: int):
    """One growing sample path: running J_s for every prefix of one draw.

    Draws x_1..x_{n_max} once and updates the pair sum incrementally (O(n)
    work per added point). Returns a list of (n, J_s(P_n)) for n >= 2.
    """
    if n_max < 100:
        raise ValueError("need n_max >= 100")
    pts = sample(measure, n_max, seed).points
    out = []
    total = 0.0
    comp = 0.0
    for k in range(1, n_max):
        d2 = np.sum((pts[:k] - pts[k]) ** 2, axis=1)
        v = float(_kernel(d2, s).sum())
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
        m = k + 1
        out.append((m, 2.0 * (total + comp) / (m * (m - 1))))
    return out
