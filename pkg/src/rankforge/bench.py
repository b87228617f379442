"""Desk-scale acceptance checks, shared by ``rankforge bench`` and the test suite.

Every check returns a :class:`CheckResult`; ``passed`` combines the
statistical condition with the wall-clock budget.  Rates are compared
against their target with a 3 sigma binomial band.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable

from .attack_algebraic import HybridConfig, combine, hybrid_attack, lin_attack, random_combination
from .attack_support import (SupportGuessConfig, es_attack, extended_parity_check, trial_v1,
                             trial_v2)
from .estimator import gaussian_binomial, table_rows
from .gfqm import Field
from .linalg import sample_subspace
from .oracle import brute_force, enumerate_subspaces
from .qpoly import annihilator, root_space
from .rsd import CodeParams, RsdInstance, make_instance, verify_solution
from .trials import derive_rng

CHI2_ALPHA = 0.01


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    budget: float
    detail: str
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        budget = f"budget {self.budget:g}s" if math.isfinite(self.budget) else "no time budget"
        return f"[{mark}] {self.number}. {self.name}: {self.detail} ({self.elapsed:.2f}s, {budget})"


def within_3sigma(hits: int, n: int, p: float) -> tuple[bool, float, float]:
    rate = hits / n
    band = 3 * math.sqrt(p * (1 - p) / n)
    return abs(rate - p) <= band, rate, band


def _instances(q, m, n, k, r, count, seed, tag) -> list[RsdInstance]:
    F = Field(q, m)
    params = CodeParams(n, k, r, F)
    # the regimes below sit past half the GV radius on purpose
    logger = logging.getLogger("rankforge.rsd")
    level = logger.level
    logger.setLevel(logging.ERROR)
    try:
        return [make_instance(params, derive_rng(seed, tag, i)) for i in range(count)]
    finally:
        logger.setLevel(level)


def _matches(sol, inst) -> bool:
    h = inst.hidden
    return sol is not None and tuple(sol.x) == tuple(h.x) and tuple(sol.e) == tuple(h.e)


def check_tables(seed: int = 0, scale: float = 1.0) -> CheckResult:
    start = time.perf_counter()
    rows = table_rows()
    numeric = [x for x in rows if x.column != "L"]
    worst = max(x.deviation for x in numeric)
    l_ok = all(math.isinf(x.computed) for x in rows if x.column == "L")
    elapsed = time.perf_counter() - start
    ok = worst <= 2 and l_ok and elapsed < 1
    return CheckResult(1, "table regression", ok, elapsed, 1,
                       f"max deviation {worst:.2f} bits over {len(numeric)} cells (<= 2); "
                       f"L infeasible on all rows: {l_ok}", {"max_deviation": worst})


def check_linearization(seed: int = 0, scale: float = 1.0) -> CheckResult:
    count = max(1, round(100 * scale))
    start = time.perf_counter()
    insts = _instances(2, 10, 12, 2, 3, count, seed, "lin")
    good = sum(_matches(lin_attack(inst).solution, inst) for inst in insts)
    elapsed = time.perf_counter() - start
    ok = good == count and elapsed < 60
    return CheckResult(2, "linearization attack", ok, elapsed, 60,
                       f"{good}/{count} planted solutions recovered", {"recovered": good})


def check_hybrid(seed: int = 0, scale: float = 1.0) -> CheckResult:
    count = max(1, round(100 * scale))
    start = time.perf_counter()
    insts = _instances(2, 10, 9, 2, 3, count, seed, "hybrid")
    rounds = []
    verified = 0
    for i, inst in enumerate(insts):
        rep = hybrid_attack(inst, HybridConfig(t=1, seed=seed * 1000 + i))
        rounds.append(rep.trials)
        verified += rep.solved and bool(verify_solution(inst, rep.solution))
    elapsed = time.perf_counter() - start
    mean = sum(rounds) / count
    expected = 2 ** (3 * 1)
    lo, hi = expected / 3, 3 * expected
    ok = lo <= mean <= hi and verified == count and elapsed < 300
    return CheckResult(3, "hybrid attack", ok, elapsed, 300,
                       f"mean rounds {mean:.2f} in [{lo:.2f}, {hi}]; {verified}/{count} verified",
                       {"mean_rounds": mean, "verified": verified})


def _rate_and_runs(number, name, variant, dims, p_target, seed, scale, trial_fn, budget=300):
    q, m, n, k, r = dims
    runs = max(1, round(200 * scale))
    n_trials = max(100, round(2000 * scale))
    per_instance = 100
    start = time.perf_counter()
    rate_insts = _instances(q, m, n, k, r, -(-n_trials // per_instance), seed, f"{variant}-rate")
    hits = 0
    done = 0
    for j, inst in enumerate(rate_insts):
        bare = inst.without_solution()
        for t in range(min(per_instance, n_trials - done)):
            sol = trial_fn(bare, seed * 1000 + j, t)
            hits += sol is not None and bool(verify_solution(inst, sol))
            done += 1
    rate_ok, rate, band = within_3sigma(hits, done, p_target)
    solved = 0
    for i, inst in enumerate(_instances(q, m, n, k, r, runs, seed, f"{variant}-runs")):
        rep = es_attack(inst, SupportGuessConfig(variant, r_prime=4, seed=seed * 1000 + i))
        solved += rep.solved
    elapsed = time.perf_counter() - start
    ok = rate_ok and solved == runs and elapsed < budget
    return CheckResult(number, name, ok, elapsed, budget,
                       f"per-trial rate {rate:.4f} vs {p_target:.4f} +- {band:.4f} "
                       f"({'within' if rate_ok else 'outside'} 3 sigma, {done} trials); "
                       f"{solved}/{runs} runs solved",
                       {"rate": rate, "band": band, "trials": done, "solved": solved, "runs": runs})


def check_es_v1(seed: int = 0, scale: float = 1.0) -> CheckResult:
    def one(inst, s, t):
        return trial_v1(inst, 4, s, t)
    return _rate_and_runs(4, "error-support v1", "v1", (2, 6, 8, 2, 2), 2.0 ** -((6 - 4) * 2),
                          seed, scale, one)


def check_es_v2(seed: int = 0, scale: float = 1.0) -> CheckResult:
    cache = {}

    def one(inst, s, t):
        key = id(inst)
        if key not in cache:
            cache.clear()
            cache[key] = (inst, extended_parity_check(inst))
        return trial_v2(inst, 4, s, t, Hp=cache[key][1])
    return _rate_and_runs(5, "error-support v2", "v2", (2, 6, 9, 2, 2), 2.0 ** -((6 - 4) * (2 - 1)),
                          seed, scale, one)


def check_oracle(seed: int = 0, scale: float = 1.0) -> CheckResult:
    count = max(1, round(30 * scale))
    start = time.perf_counter()
    unique = agree = 0
    for i, inst in enumerate(_instances(2, 5, 6, 1, 2, count, seed, "oracle")):
        sols = brute_force(inst)
        if len(sols) != 1:
            continue
        unique += 1
        s = seed * 1000 + i
        reports = [
            es_attack(inst, SupportGuessConfig("v1", seed=s)),
            es_attack(inst, SupportGuessConfig("v2", seed=s)),
            hybrid_attack(inst, HybridConfig(seed=s)),
        ]
        lin = lin_attack(inst)
        if lin.status != "infeasible":
            reports.append(lin)
        agree += all(rep.solved and rep.solution == sols[0] for rep in reports)
    elapsed = time.perf_counter() - start
    ok = unique == count and agree == count and elapsed < 600
    return CheckResult(6, "oracle equivalence", ok, elapsed, 600,
                       f"{unique}/{count} unique; {agree}/{count} with every attack agreeing",
                       {"unique": unique, "agree": agree})


def check_qpoly(seed: int = 0, scale: float = 1.0) -> CheckResult:
    count = max(1, round(100 * scale))
    samples = max(1, round(500 * scale))
    F = Field(2, 8)
    start = time.perf_counter()
    good = 0
    polys = []
    for i in range(count):
        rng = derive_rng(seed, "qpoly", i)
        E = sample_subspace(2, 8, rng.randrange(5), rng)
        P = annihilator(F, E.basis)
        polys.append(P)
        good += (P.is_monic() and P.qdeg == E.dim and all(P(v) == 0 for v in E.elements())
                 and root_space(P) == E)
    linear = 0
    rng = derive_rng(seed, "qpoly-linear")
    for _ in range(samples):
        P = polys[rng.randrange(len(polys))]
        a, b, c = F.random(rng), F.random(rng), rng.randrange(2)
        linear += P(F.add(a, b)) == F.add(P(a), P(b)) and P(F.scale(c, a)) == F.scale(c, P(a))
    elapsed = time.perf_counter() - start
    ok = good == count and linear == samples and elapsed < 30
    return CheckResult(7, "q-polynomial suite", ok, elapsed, 30,
                       f"{good}/{count} subspaces; linearity {linear}/{samples}",
                       {"subspaces": good, "linear": linear})


def check_zero_combination(seed: int = 0, scale: float = 1.0) -> CheckResult:
    samples = max(100, round(2000 * scale))
    per_instance = 100
    start = time.perf_counter()
    insts = _instances(2, 8, 10, 3, 3, -(-samples // per_instance), seed, "zero-comb")
    hits = done = 0
    rng = derive_rng(seed, "zero-comb-lambda")
    for inst in insts:
        F = inst.field
        for _ in range(min(per_instance, samples - done)):
            lam = random_combination(2, 10, rng)
            hits += combine(lam, inst.hidden.e, F) == 0
            done += 1
    within, rate, band = within_3sigma(hits, done, 2.0 ** -3)
    elapsed = time.perf_counter() - start
    return CheckResult(8, "zero-error combination frequency", within, elapsed, math.inf,
                       f"rate {rate:.4f} vs 0.1250 +- {band:.4f} over {done} samples",
                       {"rate": rate, "band": band})


def check_counting(seed: int = 0, scale: float = 1.0) -> CheckResult:
    from scipy.stats import chisquare

    start = time.perf_counter()
    mismatches = []
    for m in range(0, 9):
        for r in range(0, min(3, m) + 1):
            got = sum(1 for _ in enumerate_subspaces(m, r, 2))
            if got != gaussian_binomial(m, r, 2):
                mismatches.append((m, r, got))
    classes = {S.basis: 0 for S in enumerate_subspaces(4, 2, 2)}
    draws = max(len(classes) * 10, round(len(classes) * 200 * scale))
    rng = derive_rng(seed, "chi2")
    for _ in range(draws):
        classes[sample_subspace(2, 4, 2, rng).basis] += 1
    stat, pvalue = chisquare(list(classes.values()))
    elapsed = time.perf_counter() - start
    ok = not mismatches and pvalue > CHI2_ALPHA
    return CheckResult(9, "subspace counting", ok, elapsed, math.inf,
                       f"enumeration mismatches {mismatches or 'none'}; chi2 = {stat:.1f} "
                       f"on {len(classes) - 1} dof, p = {pvalue:.3f} (> {CHI2_ALPHA})",
                       {"pvalue": pvalue, "mismatches": mismatches})


CHECKS: dict[int, Callable[..., CheckResult]] = {
    1: check_tables,
    2: check_linearization,
    3: check_hybrid,
    4: check_es_v1,
    5: check_es_v2,
    6: check_oracle,
    7: check_qpoly,
    8: check_zero_combination,
    9: check_counting,
}

SUITES = {
    # quick sanity pass at reduced sample sizes; statistical bands widen accordingly
    "smoke": {"checks": (1, 2, 3, 6, 7, 9), "scale": 0.1},
    "paper-desk": {"checks": tuple(CHECKS), "scale": 1.0},
}


def run_suite(name: str = "paper-desk", seed: int = 0, echo: Callable[[str], None] | None = None) -> list[CheckResult]:
    suite = SUITES[name]
    out = []
    for number in suite["checks"]:
        res = CHECKS[number](seed=seed, scale=suite["scale"])
        if echo:
            echo(res.line())
        out.append(res)
    return out


__all__ = [
    "CheckResult", "CHECKS", "SUITES", "run_suite", "within_3sigma", "check_tables",
    "check_linearization", "check_hybrid", "check_es_v1", "check_es_v2", "check_oracle",
    "check_qpoly", "check_zero_combination", "check_counting",
]
