"""Combinatorial error-support attack.

Guess a subspace E' of GF(q^m) of dimension r' that hopefully contains the
error support, then recover the error from the syndrome equations, which
become linear over GF(q) once every coordinate is written in a basis of E'.

``v1`` works with the code itself.  ``v2`` appends y to the generator so
the error becomes a codeword of the extended code, normalizes the support
to contain 1 and therefore only needs r - 1 basis vectors to fall in E'.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from functools import partial
from itertools import product
from typing import Iterator, Sequence

from .gfqm import Field
from .linalg import (gf2_solve_columns, prime_field, sample_subspace,
                     sample_subspace_containing, solve, transpose)
from .rsd import RsdInstance, RsdSolution, parity_check, rank_weight, syndrome, verify_solution
from .trials import FAILED, INFEASIBLE, SOLVED, AttackReport, derive_rng, run_trials

# largest affine solution set enumerated inside one trial
CANDIDATE_LIMIT = 1 << 12


@dataclass(frozen=True)
class SupportGuessConfig:
    variant: str = "v1"
    r_prime: int | None = None
    max_trials: int | None = None
    seed: int = 0
    workers: int = 1
    # v2 only: pin z at this position to 1 instead of scanning the whole kernel
    normalize_position: int | None = None


@dataclass(frozen=True)
class AffineErrors:
    """Errors ``particular + sum_i a_i kernel[i]`` with ``a_i`` in GF(q)."""

    field: Field
    particular: tuple[int, ...] | None
    kernel: tuple[tuple[int, ...], ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    def __len__(self) -> int:
        return 0 if self.particular is None else self.field.q ** len(self.kernel)

    def candidates(self, limit: int = CANDIDATE_LIMIT, projective: bool = False) -> Iterator[tuple[int, ...]]:
        """Enumerate the set; with ``projective`` skip zero and GF(q)-multiples
        (first nonzero coefficient is 1), meant for homogeneous systems."""
        if self.particular is None:
            return
        F, q, d = self.field, self.field.q, len(self.kernel)
        if q ** d > limit:
            raise OverflowError(f"{q}^{d} candidates exceed the limit {limit}")
        for coeffs in product(range(q), repeat=d):
            if projective:
                lead = next((c for c in coeffs if c), 0)
                if lead != 1:
                    continue
            e = list(self.particular)
            for a, kv in zip(coeffs, self.kernel):
                if a:
                    for i, x in enumerate(kv):
                        if x:
                            e[i] = F.add(e[i], F.scale(a, x))
            yield tuple(e)


def default_r_prime(n: int, k: int, m: int, variant: str) -> int:
    if variant == "v1":
        return (n - k) * m // n
    if variant == "v2":
        return (n - k - 1) * m // n
    raise ValueError(f"unknown variant {variant!r}")


def predicted_trials(q: int, m: int, r: int, r_prime: int, variant: str) -> float:
    """Expected trials from the runtime exponent (m - r') r, or (m - r')(r - 1) for v2."""
    if variant == "v1":
        return float(q ** ((m - r_prime) * r))
    return float(q ** ((m - r_prime) * max(r - 1, 0)))


def predicted_trials_floor_form(q: int, m: int, n: int, k: int, r: int, variant: str) -> float:
    """The closed forms q^(r floor(km/n)) and q^((r-1) floor((k+1)m/n))."""
    if variant == "v1":
        return float(q ** (r * (k * m // n)))
    return float(q ** (max(r - 1, 0) * ((k + 1) * m // n)))


def solve_in_support(H: Sequence[Sequence[int]], s: Sequence[int], E_basis: Sequence[int],
                     field: Field) -> AffineErrors:
    """All e with coordinates in span(E_basis) and H e^T = s.

    Unknowns are the GF(q) coefficients e'_{ij} in e_i = sum_j e'_{ij} E_j,
    giving a (n-k)m x (n r') system over GF(q).
    """
    F = field
    nrows = len(H)
    n = len(H[0]) if H else 0
    rp = len(E_basis)
    m = F.m
    if F.q == 2:
        cols = []
        for i in range(n):
            for Ej in E_basis:
                v = 0
                for l in range(nrows):
                    h = H[l][i]
                    if h:
                        v |= F.mul(h, Ej) << (l * m)
                cols.append(v)
        target = 0
        for l, sl in enumerate(s):
            target |= sl << (l * m)
        x, ker = gf2_solve_columns(cols, target)

        def to_error(mask: int) -> tuple[int, ...]:
            e = [0] * n
            for idx in range(n * rp):
                if mask >> idx & 1:
                    i, j = divmod(idx, rp)
                    e[i] ^= E_basis[j]
            return tuple(e)

        return AffineErrors(F, None if x is None else to_error(x),
                            tuple(to_error(kv) for kv in ker))

    Fq = prime_field(F.q)
    A = [[0] * (n * rp) for _ in range(nrows * m)]
    for i in range(n):
        for j, Ej in enumerate(E_basis):
            for l in range(nrows):
                c = F.coords(F.mul(H[l][i], Ej))
                for t in range(m):
                    A[l * m + t][i * rp + j] = c[t]
    b = [c for sl in s for c in F.coords(sl)]
    sol = solve(A, b, Fq, n * rp)

    def to_error_vec(vec: Sequence[int]) -> tuple[int, ...]:
        e = [0] * n
        for idx, a in enumerate(vec):
            if a:
                i, j = divmod(idx, rp)
                e[i] = F.add(e[i], F.scale(a, E_basis[j]))
        return tuple(e)

    if sol is None:
        return AffineErrors(F, None, ())
    return AffineErrors(F, to_error_vec(sol.particular),
                        tuple(to_error_vec(kv) for kv in sol.kernel))


def recover_message(inst: RsdInstance, e: Sequence[int]) -> tuple[int, ...] | None:
    """Solve x G = y - e; None when y - e is not a codeword."""
    F, k = inst.field, inst.params.k
    target = [F.sub(a, b) for a, b in zip(inst.y, e)]
    if k == 0:
        return () if not any(target) else None
    sol = solve(transpose(inst.G), target, F, k)
    return None if sol is None else sol.particular


def check_feasible(inst: RsdInstance, r_prime: int, variant: str) -> str | None:
    """Reason the configuration cannot work, or None."""
    p = inst.params
    n, k, r, m = p.n, p.k, p.r, p.m
    if not 0 <= r_prime <= m:
        return f"r'={r_prime} outside [0, m={m}]"
    if r > r_prime:
        return f"r={r} exceeds r'={r_prime}; the support can never be covered"
    if variant == "v1":
        if n * r_prime > (n - k) * m:
            return f"n r' = {n * r_prime} > (n-k) m = {(n - k) * m}"
    elif variant == "v2":
        if n - k - 1 < 1:
            return "v2 needs n - k - 1 >= 1"
        if r < 1:
            return "v2 needs r >= 1"
        if r_prime < 1:
            return "v2 needs r' >= 1 so that 1 fits in E'"
        if n * r_prime > (n - k - 1) * m:
            return f"n r' = {n * r_prime} > (n-k-1) m = {(n - k - 1) * m}"
    else:
        return f"unknown variant {variant!r}"
    return None


# -- single trials (module level so they pickle for worker processes) -----------------

def trial_v1(inst: RsdInstance, r_prime: int, seed: int, t: int,
             s: tuple[int, ...] | None = None) -> RsdSolution | None:
    """One guess of E'; returns a verified solution or None."""
    F, p = inst.field, inst.params
    rng = derive_rng(seed, "es1", t)
    Ep = sample_subspace(F.q, F.m, r_prime, rng)
    if s is None:
        s = syndrome(inst.H, inst.y, F)
    sols = solve_in_support(inst.H, s, Ep.basis, F)
    if not sols.consistent:
        return None
    try:
        for e in sols.candidates():
            if rank_weight(e, F) != p.r:
                continue
            x = recover_message(inst, e)
            if x is not None:
                return RsdSolution(x, e)
    except OverflowError:
        return None
    return None


def extended_parity_check(inst: RsdInstance):
    """Parity check of the code spanned by the rows of G and y, or None if y is a codeword."""
    F = inst.field
    Gp = list(inst.G) + [inst.y]
    Hp = parity_check(Gp, F)
    if len(Hp) != inst.params.n - inst.params.k - 1:
        return None
    return Hp


def trial_v2(inst: RsdInstance, r_prime: int, seed: int, t: int,
             Hp: tuple | None = None, normalize_position: int | None = None) -> RsdSolution | None:
    """One guess of E' containing 1 for the extended code.

    By default every nonzero solution z of H' z = 0 inside E'^n is tried, so
    any multiple alpha e with alpha E inside E' is found.  With
    ``normalize_position=i`` the search is restricted to z_i = 1, i.e. only
    the support e_i^-1 E counts.
    """
    F, p = inst.field, inst.params
    rng = derive_rng(seed, "es2", t)
    Ep = sample_subspace_containing(F.q, F.m, r_prime, 1, rng)
    if Hp is None:
        Hp = extended_parity_check(inst)
        if Hp is None:
            return None
    if normalize_position is None:
        zs = solve_in_support(Hp, (0,) * len(Hp), Ep.basis, F)
        projective = True
    else:
        pin = tuple(1 if i == normalize_position else 0 for i in range(p.n))
        zs = solve_in_support(tuple(Hp) + (pin,), (0,) * len(Hp) + (1,), Ep.basis, F)
        projective = False
    try:
        for z in zs.candidates(projective=projective):
            if rank_weight(z, F) != p.r:
                continue
            # y = x G + gamma z, n equations in k + 1 unknowns
            A = transpose(list(inst.G) + [z])
            sol = solve(A, inst.y, F, p.k + 1)
            if sol is None:
                continue
            *x, gamma = sol.particular
            if gamma == 0:
                continue
            e = tuple(F.mul(gamma, zi) for zi in z)
            return RsdSolution(tuple(x), e)
    except OverflowError:
        return None
    return None


# -- full attacks ----------------------------------------------------------------------

def es_attack(inst: RsdInstance, config: SupportGuessConfig = SupportGuessConfig()) -> AttackReport:
    p = inst.params
    variant = config.variant
    name = {"v1": "es1", "v2": "es2"}.get(variant, variant)
    start = time.perf_counter()
    r_prime = config.r_prime
    if r_prime is None:
        try:
            r_prime = default_r_prime(p.n, p.k, p.m, variant)
        except ValueError as exc:
            return AttackReport(name, INFEASIBLE, detail=str(exc))
    reason = check_feasible(inst, r_prime, variant)
    if reason is not None:
        return AttackReport(name, INFEASIBLE, detail=reason,
                            elapsed=time.perf_counter() - start, extra={"r_prime": r_prime})
    pred = predicted_trials(p.q, p.m, p.r, r_prime, variant)
    max_trials = config.max_trials if config.max_trials is not None else int(64 * pred)
    extra = {
        "r_prime": r_prime,
        "predicted_trials_floor_form": predicted_trials_floor_form(p.q, p.m, p.n, p.k, p.r, variant),
    }
    if variant == "v1":
        s = syndrome(inst.H, inst.y, inst.field)
        trial = partial(trial_v1, inst.without_solution(), r_prime, config.seed, s=s)
    else:
        Hp = extended_parity_check(inst)
        if Hp is None:
            return AttackReport(name, FAILED, detail="y is a codeword; v2 needs a nonzero error",
                                elapsed=time.perf_counter() - start, predicted_trials=pred, extra=extra)
        trial = partial(trial_v2, inst.without_solution(), r_prime, config.seed, Hp=Hp,
                        normalize_position=config.normalize_position)
    sol, used = run_trials(trial, max_trials, config.workers)
    elapsed = time.perf_counter() - start
    if sol is None:
        return AttackReport(name, FAILED, None, used, elapsed, pred,
                            detail=f"no solution within {max_trials} trials", extra=extra)
    verdict = verify_solution(inst, sol)
    if not verdict:  # pragma: no cover - trials only return checked candidates
        return AttackReport(name, FAILED, None, used, elapsed, pred, detail=verdict.reason, extra=extra)
    return AttackReport(name, SOLVED, sol, used, elapsed, pred, extra=extra)


def es_attack_v1(inst: RsdInstance, config: SupportGuessConfig | None = None) -> AttackReport:
    config = config or SupportGuessConfig()
    return es_attack(inst, replace(config, variant="v1"))


def es_attack_v2(inst: RsdInstance, config: SupportGuessConfig | None = None) -> AttackReport:
    config = config or SupportGuessConfig()
    return es_attack(inst, replace(config, variant="v2"))
