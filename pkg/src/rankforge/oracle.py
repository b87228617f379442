"""Exhaustive RSD solver: try every support of dimension exactly r.

Slow on purpose.  It is the ground truth the attacks are compared against.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .attack_support import recover_message, solve_in_support
from .estimator import gaussian_binomial
from .linalg import Subspace, _undigits
from .rsd import RsdInstance, RsdSolution, rank_weight, syndrome

ENUMERATION_LIMIT = 10 ** 7
# errors per support enumerated before giving up
ERRORS_PER_SUPPORT_LIMIT = 1 << 16


class GuardExceeded(ValueError):
    """The enumeration would be too large."""

    def __init__(self, needed: int, limit: int):
        super().__init__(f"enumeration needs {needed} subspaces, limit is {limit}")
        self.needed = needed
        self.limit = limit


def enumerate_subspaces(m: int, r: int, q: int, limit: int = ENUMERATION_LIMIT) -> Iterator[Subspace]:
    """Every r-dimensional subspace of GF(q)^m once, as canonical RREF bases.

    For each set of pivot columns the row with pivot p has a 1 at p, zeros
    left of it and at the other pivots, and free entries elsewhere.
    """
    if not 0 <= r <= m:
        raise ValueError(f"dimension {r} outside [0, {m}]")
    count = gaussian_binomial(m, r, q)
    if count > limit:
        raise GuardExceeded(count, limit)
    for pivots in combinations(range(m), r):
        pivset = set(pivots)
        free = [[j for j in range(p + 1, m) if j not in pivset] for p in pivots]
        slots = [(i, j) for i, cols in enumerate(free) for j in cols]
        for values in product(range(q), repeat=len(slots)):
            rows = [[0] * m for _ in pivots]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(slots, values):
                rows[i][j] = v
            yield Subspace(q, m, tuple(_undigits(row, q) for row in rows))


def brute_force(inst: RsdInstance, limit: int = ENUMERATION_LIMIT) -> list[RsdSolution]:
    """All (x, e) with y = x G + e and rank(e) = r, sorted by (e, x)."""
    F, p = inst.field, inst.params
    s = syndrome(inst.H, inst.y, F)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for E in enumerate_subspaces(p.m, p.r, p.q, limit):
        errs = solve_in_support(inst.H, s, E.basis, F)
        if not errs.consistent:
            continue
        for e in errs.candidates(ERRORS_PER_SUPPORT_LIMIT):
            if e in found or rank_weight(e, F) != p.r:
                continue
            x = recover_message(inst, e)
            if x is not None:
                found[e] = tuple(x)
    return [RsdSolution(x, e) for e, x in sorted(found.items())]


__all__ = ["ENUMERATION_LIMIT", "GuardExceeded", "enumerate_subspaces", "brute_force"]
