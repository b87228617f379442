"""Annihilator-polynomial attack.

The error support E has a unique monic annihilator P(x) = sum_a p_a x^(q^a)
of q-degree r, so every coordinate gives P(y_j - sum_i c_i g_ij) = 0.  By
additivity of Frobenius this is linear in the products p_a c_i^(q^a), the
powers c_i^(q^r) and the p_a: (r+1)(k+1)-1 unknowns over GF(q^m).

``lin_attack`` solves that system directly when there are enough
coordinates.  ``hybrid_attack`` first guesses t random GF(q)-combinations of
coordinates with zero combined error; each one is a linear relation on c
and removes r + 1 unknowns.
"""

from __future__ import annotations

import math
import re
import time
from dataclasses import dataclass
from functools import partial
from itertools import product
from typing import Iterable, Sequence

from .gfqm import Field
from .linalg import kernel, rank, solve, vec_mat
from .qpoly import QPolynomial
from .rsd import RsdInstance, RsdSolution, rank_weight, verify_solution
from .trials import FAILED, INFEASIBLE, SOLVED, AttackReport, derive_rng, run_trials

# largest GF(q^m)-kernel enumerated when the linearization is underdetermined
KERNEL_LIMIT = 1 << 12

Monomial = tuple  # ("PC", a, i) | ("CR", r, i) | ("P", a, -1)


def n_linearized_terms(k: int, r: int) -> int:
    return (r + 1) * (k + 1) - 1


def monomials(k: int, r: int) -> tuple[Monomial, ...]:
    """Column order: PC(a, i) by (a, i), then CR(i), then P(a)."""
    pc = [("PC", a, i) for a in range(r) for i in range(k)]
    cr = [("CR", r, i) for i in range(k)]
    pa = [("P", a, -1) for a in range(r)]
    return tuple(pc + cr + pa)


@dataclass(frozen=True)
class LinearizedSystem:
    field: Field
    k: int
    r: int
    monomials: tuple[Monomial, ...]
    matrix: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    @property
    def ncols(self) -> int:
        return len(self.monomials)


def build_linearized_system(G: Sequence[Sequence[int]], y: Sequence[int], r: int,
                            field: Field) -> LinearizedSystem:
    F = field
    k = len(G)
    n = len(y)
    mons = monomials(k, r)
    rows = []
    rhs = []
    for j in range(n):
        g_pows = [[F.frobenius(G[i][j], a) for a in range(r + 1)] for i in range(k)]
        y_pows = [F.frobenius(y[j], a) for a in range(r + 1)]
        row = []
        for kind, a, i in mons:
            if kind == "P":
                row.append(y_pows[a])
            else:
                row.append(F.neg(g_pows[i][a]))
        rows.append(tuple(row))
        rhs.append(F.neg(y_pows[r]))
    return LinearizedSystem(F, k, r, mons, tuple(rows), tuple(rhs))


def monomial_values(c: Sequence[int], p: Sequence[int], r: int, field: Field) -> tuple[int, ...]:
    """Evaluate every linearized monomial at (c, p_0..p_{r-1})."""
    F = field
    out = []
    for kind, a, i in monomials(len(c), r):
        if kind == "PC":
            out.append(F.mul(p[a], F.frobenius(c[i], a)))
        elif kind == "CR":
            out.append(F.frobenius(c[i], r))
        else:
            out.append(p[a])
    return tuple(out)


@dataclass(frozen=True)
class Extracted:
    c: tuple[int, ...]
    e: tuple[int, ...]
    p: tuple[int, ...]  # monic annihilator coefficients p_0..p_r


def extract(z: Sequence[int], G: Sequence[Sequence[int]], y: Sequence[int], r: int,
            field: Field) -> Extracted | None:
    """Turn a linearized solution into (c, e, p), checking the products."""
    F = field
    k = len(G)
    idx = {mon: j for j, mon in enumerate(monomials(k, r))}
    # c_i = (c_i^(q^r))^(q^(m-r)), since Frobenius has order m
    c = tuple(F.frobenius(z[idx[("CR", r, i)]], (F.m - r) % F.m) for i in range(k))
    p = tuple(z[idx[("P", a, -1)]] for a in range(r)) + (1,)
    for a in range(r):
        for i in range(k):
            if z[idx[("PC", a, i)]] != F.mul(p[a], F.frobenius(c[i], a)):
                return None
    cg = vec_mat(c, G, F) if k else [0] * len(y)
    e = tuple(F.sub(a, b) for a, b in zip(y, cg))
    if rank_weight(e, F) != r:
        return None
    return Extracted(c, e, p)


def linearized_solve(G: Sequence[Sequence[int]], y: Sequence[int], r: int,
                     field: Field) -> tuple[Extracted | None, str]:
    """Solve the linearized system; returns (result, reason-if-failed)."""
    F = field
    system = build_linearized_system(G, y, r, F)
    sol = solve(system.matrix, system.rhs, F, system.ncols)
    if sol is None:
        return None, "linearized system inconsistent"
    d = len(sol.kernel)
    if d == 0:
        got = extract(sol.particular, G, y, r, F)
        return (got, "") if got else (None, "solution fails the product structure")
    if F.order ** d > KERNEL_LIMIT:
        return None, f"underdetermined linearization (kernel dimension {d})"
    for coeffs in product(range(F.order), repeat=d):
        z = list(sol.particular)
        for a, kv in zip(coeffs, sol.kernel):
            if a:
                for j, v in enumerate(kv):
                    if v:
                        z[j] = F.add(z[j], F.mul(a, v))
        got = extract(z, G, y, r, F)
        if got is not None:
            return got, ""
    return None, f"no kernel element (dimension {d}) has the product structure"


def lin_attack(inst: RsdInstance) -> AttackReport:
    p, F = inst.params, inst.field
    start = time.perf_counter()
    N = n_linearized_terms(p.k, p.r)
    if p.n < N:
        return AttackReport("lin", INFEASIBLE, detail=f"n={p.n} < (r+1)(k+1)-1 = {N}",
                            elapsed=time.perf_counter() - start)
    got, why = linearized_solve(inst.G, inst.y, p.r, F)
    elapsed = time.perf_counter() - start
    if got is None:
        return AttackReport("lin", FAILED, trials=1, elapsed=elapsed, detail=why)
    sol = RsdSolution(got.c, got.e)
    verdict = verify_solution(inst, sol)
    if not verdict:  # pragma: no cover
        return AttackReport("lin", FAILED, trials=1, elapsed=elapsed, detail=verdict.reason)
    return AttackReport("lin", SOLVED, sol, 1, elapsed, 1.0,
                        extra={"annihilator": QPolynomial(F, got.p)})


# -- hybrid ------------------------------------------------------------------------

def hybrid_t(n: int, k: int, r: int) -> int:
    """Number of zero-error combinations to guess, never negative."""
    if r == 0:
        return 0
    return max(0, math.ceil((n_linearized_terms(k, r) - n) / r))


@dataclass(frozen=True)
class HybridConfig:
    t: int | None = None
    max_rounds: int | None = None
    seed: int = 0
    workers: int = 1


def hybrid_feasible(n: int, k: int, r: int, t: int) -> str | None:
    if t < 0 or t > k:
        return f"t={t} outside [0, k={k}]"
    need = n_linearized_terms(k - t, r)
    if n - t < need:
        return f"n - t = {n - t} < (r+1)(k+1-t)-1 = {need}"
    return None


def random_combination(q: int, n: int, rng) -> tuple[int, ...]:
    """Uniform nonzero vector of GF(q)^n."""
    while True:
        lam = tuple(rng.randrange(q) for _ in range(n))
        if any(lam):
            return lam


def combine(lam: Sequence[int], v: Sequence[int], field: Field) -> int:
    """sum_j lam_j v_j with lam over GF(q)."""
    acc = 0
    for a, x in zip(lam, v):
        if a and x:
            acc = field.add(acc, field.scale(a, x))
    return acc


def hybrid_round(inst: RsdInstance, t: int, seed: int, idx: int) -> RsdSolution | None:
    """Guess t combinations with zero error, reduce, linearize."""
    F, p = inst.field, inst.params
    n, k, r = p.n, p.k, p.r
    rng = derive_rng(seed, "hybrid", idx)
    cols = [[inst.G[i][j] for i in range(k)] for j in range(n)]
    while True:
        lams = [random_combination(F.q, n, rng) for _ in range(t)]
        L = [[combine(lam, [cols[j][i] for j in range(n)], F) for i in range(k)] for lam in lams]
        if rank(L, F) == t:
            break
    b = [combine(lam, inst.y, F) for lam in lams]
    sol = solve(L, b, F, k)
    if sol is None:  # pragma: no cover - L has full row rank
        return None
    c0 = sol.particular
    N = kernel(L, F, k)  # (k - t) vectors of length k
    G2 = [vec_mat(nv, inst.G, F) for nv in N]
    c0G = vec_mat(c0, inst.G, F)
    y2 = [F.sub(a, b2) for a, b2 in zip(inst.y, c0G)]
    got, _ = linearized_solve(G2, y2, r, F)
    if got is None:
        return None
    c = list(c0)
    for f, nv in zip(got.c, N):
        if f:
            for i, a in enumerate(nv):
                if a:
                    c[i] = F.add(c[i], F.mul(f, a))
    cand = RsdSolution(tuple(c), got.e)
    return cand if verify_solution(inst, cand, exact=True) else None


def hybrid_attack(inst: RsdInstance, config: HybridConfig | None = None) -> AttackReport:
    config = config or HybridConfig()
    p = inst.params
    start = time.perf_counter()
    t = hybrid_t(p.n, p.k, p.r) if config.t is None else config.t
    reason = hybrid_feasible(p.n, p.k, p.r, t)
    if reason is not None:
        return AttackReport("hybrid", INFEASIBLE, detail=reason, extra={"t": t},
                            elapsed=time.perf_counter() - start)
    pred = float(p.q ** (p.r * t))
    if t == 0:
        rep = lin_attack(inst)
        rep.attack = "hybrid"
        rep.extra["t"] = 0
        return rep
    max_rounds = config.max_rounds if config.max_rounds is not None else int(64 * pred)
    trial = partial(hybrid_round, inst.without_solution(), t, config.seed)
    sol, used = run_trials(trial, max_rounds, config.workers)
    elapsed = time.perf_counter() - start
    if sol is None:
        return AttackReport("hybrid", FAILED, None, used, elapsed, pred,
                            detail=f"no solution within {max_rounds} rounds", extra={"t": t})
    return AttackReport("hybrid", SOLVED, sol, used, elapsed, pred, extra={"t": t})


# -- polynomial system export -----------------------------------------------------------

def _term(coef: int, a: int | None, i: int | None, e: int | None) -> str:
    parts = [str(coef)]
    if a is not None:
        parts.append(f"p{a}")
    if i is not None:
        parts.append(f"c{i}^{e}")
    return "*".join(parts)


def polynomial_terms(inst: RsdInstance, j: int, guesses: dict[int, int] | None = None):
    """Terms (coef, a, i, exponent) of equation j; a/i are None when absent.

    Variables are p_0..p_{r-1} and c_1..c_k (1-based); p_r = 1.  Guessed
    c_i are substituted and like terms merged.
    """
    F, p = inst.field, inst.params
    q, r, k = F.q, p.r, p.k
    guesses = guesses or {}
    yj = inst.y[j]
    p_coef = [F.frobenius(yj, a) for a in range(r)]
    const = F.frobenius(yj, r)
    mixed = []  # (coef, a, i, e)
    pure = []   # (coef, i, e)
    for i in range(1, k + 1):
        g = inst.G[i - 1][j]
        for a in range(r + 1):
            coef = F.neg(F.frobenius(g, a))
            if not coef:
                continue
            if i in guesses:
                val = F.mul(coef, F.frobenius(guesses[i], a))
                if a < r:
                    p_coef[a] = F.add(p_coef[a], val)
                else:
                    const = F.add(const, val)
            elif a < r:
                mixed.append((coef, a, i, q ** a))
            else:
                pure.append((coef, i, q ** r))
    terms = []
    for a in range(r):
        if p_coef[a]:
            terms.append((p_coef[a], a, None, None))
    for coef, a, i, e in mixed:
        terms.append((coef, a, i, e))
    for coef, i, e in pure:
        terms.append((coef, None, i, e))
    if const:
        terms.append((const, None, None, None))
    return terms


def export_polynomial_system(inst: RsdInstance, guesses: dict[int, int] | None = None) -> str:
    F, p = inst.field, inst.params
    guesses = dict(guesses or {})
    for i, v in guesses.items():
        if not 1 <= i <= p.k:
            raise ValueError(f"guess for c{i} but k={p.k}")
        F.check(v)
    lines = [
        "POLYSYS 1",
        f"field q {F.q} m {F.m} modulus " + " ".join(map(str, F.modulus)),
        f"vars p 0..{p.r - 1} c 1..{p.k}",
    ]
    for j in range(p.n):
        terms = polynomial_terms(inst, j, guesses)
        body = " + ".join(_term(*t) for t in terms) if terms else "0"
        lines.append(f"eq {j + 1}: {body} = 0")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"^(\d+)((?:\*p\d+)?)((?:\*c\d+\^\d+)?)$")


@dataclass(frozen=True)
class PolySystem:
    field: Field
    r: int
    k: int
    equations: tuple  # tuple of tuples of (coef, a, i, e)


def parse_polynomial_system(text: str) -> PolySystem:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if lines[0] != "POLYSYS 1":
        raise ValueError("line 1: expected 'POLYSYS 1'")
    f = lines[1].split()
    if len(f) < 7 or f[0] != "field" or f[1] != "q" or f[3] != "m" or f[5] != "modulus":
        raise ValueError("line 2: expected 'field q <p> m <m> modulus <...>'")
    q, m = int(f[2]), int(f[4])
    F = Field(q, m, [int(x) for x in f[6:]])
    mv = re.match(r"vars p 0\.\.(-?\d+) c 1\.\.(\d+)$", lines[2])
    if not mv:
        raise ValueError("line 3: expected vars line")
    r, k = int(mv.group(1)) + 1, int(mv.group(2))
    eqs = []
    for ln in lines[3:]:
        head, _, body = ln.partition(":")
        body = body.strip()
        if not body.endswith("= 0"):
            raise ValueError(f"{head}: missing '= 0'")
        body = body[:-3].strip()
        terms = []
        if body != "0":
            for tok in body.split(" + "):
                mt = _TERM.match(tok)
                if not mt:
                    raise ValueError(f"{head}: bad term {tok!r}")
                a = int(mt.group(2)[2:]) if mt.group(2) else None
                i = e = None
                if mt.group(3):
                    ci, ce = mt.group(3)[2:].split("^")
                    i, e = int(ci), int(ce)
                terms.append((int(mt.group(1)), a, i, e))
        eqs.append(tuple(terms))
    return PolySystem(F, r, k, tuple(eqs))


def evaluate_polynomial_system(system: PolySystem, p: Sequence[int],
                               c: Sequence[int]) -> list[int]:
    """Value of each equation at p_0..p_{r-1} and c_1..c_k (c[0] is c_1)."""
    F = system.field
    out = []
    for terms in system.equations:
        acc = 0
        for coef, a, i, e in terms:
            v = coef
            if a is not None:
                v = F.mul(v, p[a])
            if i is not None:
                v = F.mul(v, F.pow(c[i - 1], e))
            acc = F.add(acc, v)
        out.append(acc)
    return out


def monomial_degrees(system: PolySystem) -> set[int]:
    degs = set()
    for terms in system.equations:
        for _, a, i, e in terms:
            d = (1 if a is not None else 0) + (e if i is not None else 0)
            if d:
                degs.add(d)
    return degs


__all__ = [
    "LinearizedSystem", "HybridConfig", "Extracted", "PolySystem", "n_linearized_terms",
    "monomials", "build_linearized_system", "monomial_values", "extract", "linearized_solve",
    "lin_attack", "hybrid_t", "hybrid_feasible", "random_combination", "combine",
    "hybrid_round", "hybrid_attack", "polynomial_terms", "export_polynomial_system",
    "parse_polynomial_system", "evaluate_polynomial_system", "monomial_degrees",
]
