"""Discrete Riesz energies, potentials, and the truncated pair kernel.

The discrete s-energy of an n-point set P is

    J_s(P) = (1/(n(n-1))) * sum_{x != y in P} |x - y|^{-s}

with Euclidean distance, summed over ordered pairs (equivalently twice the
unordered-pair sum). Summation is blocked with compensated accumulation per
block and an ordered block reduction, so results are bit-identical at any
thread count. Kernels are evaluated as exp(-s*log r) with direct powers for
s in {0, 1, 2}; distances are square roots of exactly accumulated squared
coordinate differences.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cloud import PointCloud
from .errors import DimensionMismatch, DuplicatePoints, TooFewPoints

__all__ = [
    "EnergyProfile",
    "discrete_energy",
    "discrete_energy_multi",
    "energy_profile",
    "profile_from_family",
    "riesz_potential_discrete",
    "truncated_energy",
]

DEFAULT_BLOCK = 2048


def _neumaier(values) -> float:
    """Compensated (Neumaier) sum of a 1-D sequence, in the given order."""
    total = 0.0
    comp = 0.0
    for v in values:
        v = float(v)
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def _kernel(r2: np.ndarray, s: float) -> np.ndarray:
    """|x-y|^{-s} from squared distances r2 > 0."""
    if s == 0.0:
        return np.ones_like(r2)
    if s == 2.0:
        return 1.0 / r2
    r = np.sqrt(r2)
    if s == 1.0:
        return 1.0 / r
    return np.exp(-s * np.log(r))


def _block_tasks(n: int, block: int):
    for i0 in range(0, n, block):
        for j0 in range(i0, n, block):
            yield i0, j0


def _pair_sums(
    pts: np.ndarray,
    s_list,
    *,
    block: int = DEFAULT_BLOCK,
    threads: int = 1,
    weight=None,
) -> np.ndarray:
    """Per-exponent sums of |x-y|^{-s} over unordered pairs.

    Deterministic at any thread count: blocks are enumerated in a fixed
    order, each block is reduced with compensated row sums, and block
    partials are combined in enumeration order. ``weight`` optionally maps
    pair distances r to multiplicative weights (used by the truncated
    kernel).
    """
    n = pts.shape[0]
    s_arr = [float(s) for s in s_list]

    def one_block(task):
        i0, j0 = task
        a = pts[i0 : i0 + block]
        b = pts[j0 : j0 + block]
        d2 = np.sum((a[:, None, :] - b[None, :, :]) ** 2, axis=2)
        if i0 == j0:
            iu = np.triu_indices(d2.shape[0], k=1)
            d2 = d2[iu]
        else:
            d2 = d2.ravel()
        if d2.size == 0:
            return [0.0] * len(s_arr)
        if np.any(d2 == 0.0):
            raise DuplicatePoints("coinciding points encountered in pair sum")
        w = weight(np.sqrt(d2)) if weight is not None else None
        out = []
        for s in s_arr:
            terms = _kernel(d2, s)
            if w is not None:
                terms = terms * w
            out.append(_neumaier(_row_partials(terms)))
        return out

    tasks = list(_block_tasks(n, block))
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            partials = list(ex.map(one_block, tasks))
    else:
        partials = [one_block(t) for t in tasks]
    return np.array([_neumaier(p[i] for p in partials) for i in range(len(s_arr))])


def _row_partials(terms: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Fixed-size chunk sums of a flat term array (deterministic order)."""
    m = terms.size
    if m <= chunk:
        return np.array([terms.sum()])
    cut = (m // chunk) * chunk
    body = terms[:cut].reshape(-1, chunk).sum(axis=1)
    if cut == m:
        return body
    return np.concatenate([body, [terms[cut:].sum()]])


def discrete_energy(
    cloud: PointCloud, s: float, *, block: int = DEFAULT_BLOCK, threads: int = 1
) -> float:
    """Discrete s-energy J_s of a cloud.

    Requires n >= 2 distinct points and s >= 0; J_0 is exactly 1 for any
    valid cloud.
    """
    if cloud.n < 2:
        raise TooFewPoints("discrete energy needs at least 2 points")
    if s < 0:
        raise ValueError("exponent s must be nonnegative")
    n = cloud.n
    total = _pair_sums(cloud.points, [s], block=block, threads=threads)[0]
    return 2.0 * float(total) / (n * (n - 1))


def discrete_energy_multi(
    cloud: PointCloud, s_list, *, block: int = DEFAULT_BLOCK, threads: int = 1
) -> np.ndarray:
    """J_s for several exponents with a single distance pass."""
    if cloud.n < 2:
        raise TooFewPoints("discrete energy needs at least 2 points")
    if any(s < 0 for s in s_list):
        raise ValueError("exponents must be nonnegative")
    n = cloud.n
    sums = _pair_sums(cloud.points, s_list, block=block, threads=threads)
    return 2.0 * sums / (n * (n - 1))


@dataclass(frozen=True)
class EnergyProfile:
    """J_s(P_n) over an exponent grid and a prefix-size grid.

    ``values[i, j]`` is the energy of the n_grid[j]-point set at exponent
    s_grid[i]. Entries are nonnegative; for clouds of diameter <= 1 each
    column is nondecreasing in s.
    """

    s_grid: tuple
    n_grid: tuple
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(self.s_grid), len(self.n_grid)):
            raise ValueError("values shape must be (len(s_grid), len(n_grid))")
        if np.any(v < 0):
            raise ValueError("energies must be nonnegative")
        object.__setattr__(self, "values", v)

    def row(self, s: float) -> np.ndarray:
        i = self.s_grid.index(s)
        return self.values[i]


def _check_grids(s_grid, n_grid):
    s_grid = [float(s) for s in s_grid]
    n_grid = [int(n) for n in n_grid]
    if any(b <= a for a, b in zip(s_grid, s_grid[1:])):
        raise ValueError("s_grid must be strictly ascending")
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("n_grid must be strictly ascending")
    if any(s < 0 for s in s_grid):
        raise ValueError("exponents must be nonnegative")
    if n_grid and n_grid[0] < 2:
        raise TooFewPoints("prefix sizes must be at least 2")
    return s_grid, n_grid


def energy_profile(cloud: PointCloud, s_grid, n_grid) -> EnergyProfile:
    """Energy profile over prefixes of one cloud.

    Equivalent to calling :func:`discrete_energy` on every prefix, but the
    pair sum is extended incrementally point by point (one distance pass for
    all prefixes and exponents). The incremental path agrees with the direct
    one to summation tolerance.
    """
    s_grid, n_grid = _check_grids(s_grid, n_grid)
    if not n_grid:
        raise ValueError("n_grid must be non-empty")
    if n_grid[-1] > cloud.n:
        raise TooFewPoints(
            f"largest prefix {n_grid[-1]} exceeds cloud size {cloud.n}"
        )
    pts = cloud.points
    wanted = {n: j for j, n in enumerate(n_grid)}
    values = np.empty((len(s_grid), len(n_grid)))
    sums = np.zeros(len(s_grid))
    comps = np.zeros(len(s_grid))
    for k in range(1, n_grid[-1]):
        d2 = np.sum((pts[:k] - pts[k]) ** 2, axis=1)
        if np.any(d2 == 0.0):
            raise DuplicatePoints(f"point {k} coincides with an earlier point")
        for i, s in enumerate(s_grid):
            v = float(_kernel(d2, s).sum())
            t = sums[i] + v
            if abs(sums[i]) >= abs(v):
                comps[i] += (sums[i] - t) + v
            else:
                comps[i] += (v - t) + sums[i]
            sums[i] = t
        m = k + 1
        if m in wanted:
            values[:, wanted[m]] = 2.0 * (sums + comps) / (m * (m - 1))
    return EnergyProfile(tuple(s_grid), tuple(n_grid), values)


def profile_from_family(clouds, s_grid, *, threads: int = 1) -> EnergyProfile:
    """Energy profile across an explicit family of clouds (one per column).

    For constructions like the 1-D grids {m/(n+1)}, whose members are not
    prefixes of a common sequence, the profile column at n is the energy of
    the whole n-point member.
    """
    n_grid = [c.n for c in clouds]
    s_grid, n_grid = _check_grids(s_grid, n_grid)
    values = np.empty((len(s_grid), len(clouds)))
    for j, cloud in enumerate(clouds):
        values[:, j] = discrete_energy_multi(cloud, s_grid, threads=threads)
    return EnergyProfile(tuple(s_grid), tuple(n_grid), values)


def riesz_potential_discrete(cloud: PointCloud, x, s: float) -> float:
    """Riesz potential (1/n) * sum_i |x - x_i|^{-s} of the counting measure.

    Returns math.inf when x coincides with a cloud point and s > 0.
    """
    if s < 0:
        raise ValueError("exponent s must be nonnegative")
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != cloud.dim:
        raise DimensionMismatch(
            f"point has dim {x.shape[0]}, cloud has dim {cloud.dim}"
        )
    if s == 0.0:
        return 1.0
    d2 = np.sum((cloud.points - x) ** 2, axis=1)
    if np.any(d2 == 0.0):
        return math.inf
    return float(_neumaier(_row_partials(_kernel(d2, s)))) / cloud.n


def _cutoff(u: np.ndarray) -> np.ndarray:
    """Radial bump: 1 for u <= 1, 0 for u >= 2, cubic smoothstep between."""
    t = np.clip(u - 1.0, 0.0, 1.0)
    return 1.0 - t * t * (3.0 - 2.0 * t)


def truncated_energy(
    cloud: PointCloud,
    s: float,
    radius: float,
    *,
    block: int = DEFAULT_BLOCK,
    threads: int = 1,
) -> float:
    """Truncated energy of the normalized counting measure.

    Averages the kernel (1 - phi(|x-y|/radius)) * |x-y|^{-s} over all n^2
    ordered pairs including the diagonal; phi is 1 near 0 so diagonal terms
    vanish and the singularity is removed. Once radius < min gap / 2 the
    cutoff is fully open and the value equals ((n-1)/n) * J_s exactly.
    """
    if cloud.n < 2:
        raise TooFewPoints("truncated energy needs at least 2 points")
    if s < 0:
        raise ValueError("exponent s must be nonnegative")
    if radius <= 0:
        raise ValueError("cutoff radius must be positive")
    n = cloud.n

    def weight(r):
        return 1.0 - _cutoff(r / radius)

    total = _pair_sums(cloud.points, [s], block=block, threads=threads, weight=weight)[0]
    return 2.0 * float(total) / (n * n)
