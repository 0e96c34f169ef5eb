"""Small-scale searches for sets of minimal Wiener norm.

The exhaustive search prunes by affine invariance: the norm is unchanged
by translations and by invertible linear maps, so for size >= 1 only sets
containing 0 are scanned, and for size >= 2 only sets containing {0, 1}.
The annealing search keeps the unnormalized integer spectrum of the
current set and updates it exactly under single-point swaps; all
randomness is drawn up front so the numba and numpy sweeps consume the
same stream and return bit-identical results.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

import numpy as np

from . import _kernels
from .dyadic import DyadicScalar
from .groups import GroupDim, as_dim
from .setfuncs import PointSet, set_a_norm

__all__ = [
    "BudgetExceeded",
    "AnnealParams",
    "SearchRecord",
    "min_norm_exhaustive",
    "min_norm_anneal",
    "CSV_COLUMNS",
    "append_record",
]


class BudgetExceeded(ValueError):
    """The raw candidate count exceeds the evaluation budget."""


DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class AnnealParams:
    t0: float = 1.0
    cooling: float = 0.995
    steps: int = 10_000


@dataclass(frozen=True)
class SearchRecord:
    """Outcome of one search; best_norm is recomputed from best_set."""

    n: int
    set_size: int
    method: str
    seed: int
    best_set: PointSet
    best_norm: DyadicScalar
    evaluations: int


def _record(dim: GroupDim, size: int, method: str, seed: int,
            best: PointSet, evaluations: int,
            claimed_total: Optional[int] = None) -> SearchRecord:
    # Independent recomputation; the search's own bookkeeping must agree.
    norm = set_a_norm(best)
    if claimed_total is not None and norm != DyadicScalar(claimed_total,
                                                          dim.n):
        raise ArithmeticError(
            f"search bookkeeping drifted: {claimed_total}/2^{dim.n} "
            f"!= {norm}"
        )
    return SearchRecord(dim.n, size, method, seed, best, norm, evaluations)


def min_norm_exhaustive(dim: Union[GroupDim, int], size: int,
                        budget: int = DEFAULT_BUDGET) -> SearchRecord:
    """Scan all sets of the given size up to affine equivalence.

    The budget check uses the raw binomial count, before pruning, so the
    cost model does not depend on the pruning being sound.
    """
    d = as_dim(dim)
    order = d.order
    if not 0 < size <= order:
        raise ValueError(f"size must lie in [1, {order}]")
    if math.comb(order, size) > budget:
        raise BudgetExceeded(
            f"C({order}, {size}) = {math.comb(order, size)} exceeds "
            f"the budget {budget}"
        )
    fixed = [0] if size >= 1 else []
    if size >= 2:
        fixed = [0, 1]
    rest = [x for x in range(order) if x not in fixed]
    buf = np.empty(order, dtype=np.int64)
    best_total = None
    best_points = None
    evaluations = 0
    for extra in combinations(rest, size - len(fixed)):
        pts = fixed + list(extra)
        buf[:] = 0
        buf[pts] = 1
        _kernels.wht_rows(buf.reshape(1, -1))
        total = int(np.abs(buf).sum())
        evaluations += 1
        if best_total is None or total < best_total:
            best_total = total
            best_points = pts
    best = PointSet.from_points(d, best_points)
    return _record(d, size, "exhaustive", 0, best, evaluations, best_total)


def min_norm_anneal(dim: Union[GroupDim, int], size: int,
                    params: Optional[AnnealParams] = None,
                    seed: int = 0) -> SearchRecord:
    """Simulated annealing over single-point swaps at fixed size.

    Deterministic for a given seed regardless of the kernel backend: the
    proposal indices and acceptance draws are pregenerated, the spectrum
    updates are exact integers, and only strict improvements move the
    incumbent.
    """
    d = as_dim(dim)
    order = d.order
    if not 0 < size < order:
        raise ValueError("annealing needs a nontrivial size")
    if params is None:
        params = AnnealParams()
    rng = np.random.default_rng(seed)
    perm = rng.permutation(order).astype(np.int64)
    members = np.sort(perm[:size]).astype(np.int64)
    nonmembers = np.sort(perm[size:]).astype(np.int64)
    start = PointSet.from_points(d, [int(x) for x in members])
    wht = start.indicator().nums.copy()
    _kernels.wht_rows(wht.reshape(1, -1))
    pick_out = rng.integers(0, size, params.steps).astype(np.int64)
    pick_in = rng.integers(0, order - size, params.steps).astype(np.int64)
    accept = rng.random(params.steps)
    best_members = np.empty(size, dtype=np.int64)
    best_total = _kernels.anneal_sweep(
        wht, members, nonmembers, pick_out, pick_in, accept,
        params.t0, params.cooling, float(order), best_members,
    )
    best = PointSet.from_points(d, [int(x) for x in best_members])
    return _record(d, size, "anneal", seed, best, params.steps + 1,
                   best_total)


CSV_COLUMNS = ["n", "size", "method", "seed", "best_norm_num",
               "best_norm_exp", "set_hex", "evaluations"]


def append_record(path: str, rec: SearchRecord) -> None:
    """Append one row to the CSV ledger, writing the header on first use."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if fresh:
            writer.writerow(CSV_COLUMNS)
        writer.writerow([
            rec.n, rec.set_size, rec.method, rec.seed, rec.best_norm.num,
            rec.best_norm.exp, rec.best_set.set_hex(), rec.evaluations,
        ])
