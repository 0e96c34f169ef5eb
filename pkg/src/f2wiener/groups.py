"""The group F2^n, its self-dual pairing, and subspaces of the dual.

Points and characters are both n-bit integer masks; the pairing is the
parity of the AND.  Subspaces carry a canonical reduced-row-echelon basis
(rows sorted by pivot, pivot = lowest set bit), so equal subspaces compare
equal as tuples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence

import numpy as np

__all__ = [
    "DEFAULT_DIM_CAP",
    "HARD_DIM_CAP",
    "set_dim_cap",
    "get_dim_cap",
    "GroupDim",
    "as_dim",
    "parity",
    "char_sign",
    "DualSubspace",
    "subspace_insert",
    "annihilator_basis",
    "coset_index",
    "coset_index_table",
    "all_subspaces",
    "subspace_count",
    "random_subspace",
    "random_invertible",
]

DEFAULT_DIM_CAP = 16
HARD_DIM_CAP = 30

_dim_cap = DEFAULT_DIM_CAP


def set_dim_cap(cap: int) -> None:
    """Raise or lower the accepted group dimension (never above 30)."""
    global _dim_cap
    if not 1 <= cap <= HARD_DIM_CAP:
        raise ValueError(f"dimension cap must lie in [1, {HARD_DIM_CAP}]")
    _dim_cap = cap


def get_dim_cap() -> int:
    return _dim_cap


@dataclass(frozen=True)
class GroupDim:
    """Dimension n of the group F2^n; tables have 2**n entries."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int):
            raise TypeError("group dimension must be an int")
        if not 1 <= self.n <= _dim_cap:
            raise ValueError(
                f"group dimension {self.n} outside [1, {_dim_cap}]"
            )

    @property
    def order(self) -> int:
        return 1 << self.n

    def points(self) -> range:
        return range(1 << self.n)


def as_dim(dim) -> GroupDim:
    return dim if isinstance(dim, GroupDim) else GroupDim(dim)


def parity(a: int, b: int) -> int:
    """Pairing <a, b> in F2: parity of the AND of the two masks."""
    return (a & b).bit_count() & 1


def char_sign(gamma: int, x: int) -> int:
    """Character value (-1)^<gamma, x> as +-1."""
    return 1 - 2 * parity(gamma, x)


def _pivot(row: int) -> int:
    return (row & -row).bit_length() - 1


@dataclass(frozen=True)
class DualSubspace:
    """Subspace of the dual group, held as a canonical RREF basis."""

    basis: tuple = field(default=())

    def __post_init__(self):
        rows = self.basis
        prev = -1
        for i, r in enumerate(rows):
            if r <= 0:
                raise ValueError("basis rows must be positive masks")
            p = _pivot(r)
            if p <= prev:
                raise ValueError("basis rows must be sorted by pivot")
            prev = p
            for j, other in enumerate(rows):
                if i != j and (other >> p) & 1:
                    raise ValueError("basis is not fully reduced")

    @classmethod
    def _unchecked(cls, basis: tuple) -> "DualSubspace":
        # Fast path for enumerators whose output is RREF by construction.
        obj = object.__new__(cls)
        object.__setattr__(obj, "basis", basis)
        return obj

    @classmethod
    def trivial(cls) -> "DualSubspace":
        return cls(())

    @classmethod
    def span(cls, masks: Sequence[int]) -> "DualSubspace":
        v = cls.trivial()
        for m in masks:
            v = subspace_insert(v, m)
        return v

    @classmethod
    def full(cls, n: int) -> "DualSubspace":
        return cls(tuple(1 << i for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 1 << len(self.basis)

    def reduce(self, gamma: int) -> int:
        """Residue of gamma modulo the subspace (zero iff member)."""
        for r in self.basis:
            if (gamma >> _pivot(r)) & 1:
                gamma ^= r
        return gamma

    def contains(self, gamma: int) -> bool:
        return self.reduce(gamma) == 0

    def is_subspace_of(self, other: "DualSubspace") -> bool:
        return all(other.contains(r) for r in self.basis)

    def elements(self) -> List[int]:
        """All 2**dim members, by doubling over the basis."""
        elems = [0]
        for r in self.basis:
            elems += [e ^ r for e in elems]
        return elems


def subspace_insert(v: DualSubspace, gamma: int) -> DualSubspace:
    """Smallest subspace containing v and gamma (v itself if dependent)."""
    if gamma < 0:
        raise ValueError("character masks are non-negative")
    g = v.reduce(gamma)
    if g == 0:
        return v
    p = _pivot(g)
    rows = [r ^ g if (r >> p) & 1 else r for r in v.basis]
    rows.append(g)
    rows.sort(key=_pivot)
    return DualSubspace(tuple(rows))


def annihilator_basis(v: DualSubspace, n: int) -> List[int]:
    """Point-space basis of the annihilator {x : <g, x> = 0 for all g in v}.

    One basis vector per non-pivot coordinate b: e_b plus, for every basis
    row with bit b set, that row's pivot coordinate.  |v| * |ann| = 2**n.
    """
    if any(r >= (1 << n) for r in v.basis):
        raise ValueError("basis mask exceeds the group dimension")
    pivots = [_pivot(r) for r in v.basis]
    pivot_set = set(pivots)
    out = []
    for b in range(n):
        if b in pivot_set:
            continue
        x = 1 << b
        for p, r in zip(pivots, v.basis):
            if (r >> b) & 1:
                x |= 1 << p
        out.append(x)
    return out


def coset_index(v: DualSubspace, x: int) -> int:
    """Syndrome of x: bit i is <basis[i], x>; constant on annihilator cosets."""
    idx = 0
    for i, r in enumerate(v.basis):
        idx |= parity(r, x) << i
    return idx


def coset_index_table(v: DualSubspace, n: int) -> np.ndarray:
    """Vectorized coset_index over all 2**n points."""
    if any(r >= (1 << n) for r in v.basis):
        raise ValueError("basis mask exceeds the group dimension")
    pts = np.arange(1 << n, dtype=np.int64)
    idx = np.zeros(1 << n, dtype=np.int64)
    for i, r in enumerate(v.basis):
        bits = np.bitwise_count(pts & np.int64(r)).astype(np.int64) & 1
        idx |= bits << i
    return idx


def _subsets(mask: int) -> List[int]:
    out = [0]
    s = mask
    while s:
        low = s & -s
        out += [x | low for x in out]
        s ^= low
    return out


def all_subspaces(n: int) -> Iterator[DualSubspace]:
    """Every subspace of an n-dimensional F2 space, via RREF enumeration.

    For each pivot set {p_1 < ... < p_d} the free bits of row i are the
    non-pivot coordinates above p_i; every assignment gives one subspace,
    each exactly once.
    """
    for d in range(n + 1):
        for pivots in itertools.combinations(range(n), d):
            pivot_mask = 0
            for p in pivots:
                pivot_mask |= 1 << p
            choices = []
            for p in pivots:
                free = 0
                for b in range(p + 1, n):
                    if not (pivot_mask >> b) & 1:
                        free |= 1 << b
                choices.append([(1 << p) | s for s in _subsets(free)])
            for rows in itertools.product(*choices):
                yield DualSubspace._unchecked(rows)


def subspace_count(n: int) -> int:
    """Total number of subspaces (sum of Gaussian binomials at q=2)."""
    total = 0
    for d in range(n + 1):
        num = den = 1
        for i in range(d):
            num *= (1 << n) - (1 << i)
            den *= (1 << d) - (1 << i)
        total += num // den
    return total


def random_subspace(rng: np.random.Generator, n: int,
                    max_dim: int | None = None) -> DualSubspace:
    if max_dim is None:
        max_dim = n
    v = DualSubspace.trivial()
    for _ in range(int(rng.integers(0, max_dim + 1))):
        v = subspace_insert(v, int(rng.integers(1, 1 << n)))
    return v


def random_invertible(rng: np.random.Generator, n: int) -> List[int]:
    """Rows of a random invertible n x n matrix over F2 (rejection sampled)."""
    while True:
        rows = [int(rng.integers(1, 1 << n)) for _ in range(n)]
        if DualSubspace.span(rows).dim == n:
            return rows
