"""Attack reports, seed derivation and the (optionally parallel) trial loop."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from .rsd import RsdSolution

SOLVED = "solved"
FAILED = "failed"
INFEASIBLE = "infeasible"


@dataclass
class AttackReport:
    attack: str
    status: str
    solution: RsdSolution | None = None
    trials: int = 0
    elapsed: float = 0.0
    predicted_trials: float | None = None
    detail: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def derive_rng(seed: int, *path: object) -> random.Random:
    """Independent stream for ``(seed, *path)``.

    The path is joined into a string and fed to ``random.Random``, which
    hashes string seeds with SHA-512, so the stream does not depend on
    PYTHONHASHSEED or on which worker draws it.
    """
    return random.Random("/".join(str(p) for p in (seed, *path)))


def run_trials(trial: Callable[[int], Any], max_trials: int, workers: int = 1,
               batch: int = 32) -> tuple[Any, int]:
    """Run ``trial(0), trial(1), ...`` until one returns non-None.

    Returns ``(result, trials_used)``; ``result`` is None when the cap is hit.
    Every trial draws its randomness from its own index, and with several
    workers the lowest successful index wins, so the outcome is the same for
    any worker count.
    """
    if workers <= 1:
        for t in range(max_trials):
            res = trial(t)
            if res is not None:
                return res, t + 1
        return None, max_trials

    with ProcessPoolExecutor(max_workers=workers) as pool:
        start = 0
        while start < max_trials:
            stop = min(start + batch * workers, max_trials)
            chunks = [range(i, stop, workers) for i in range(start, start + workers)]
            futures = [pool.submit(_run_chunk, trial, list(ch)) for ch in chunks if len(ch)]
            hits = [f.result() for f in futures]
            hits = [h for h in hits if h is not None]
            if hits:
                t, res = min(hits, key=lambda h: h[0])
                return res, t + 1
            start = stop
    return None, max_trials


def _run_chunk(trial: Callable[[int], Any], indices: list[int]):
    for t in indices:
        res = trial(t)
        if res is not None:
            return t, res
    return None
