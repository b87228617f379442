"""Rank syndrome decoding instances: codes, errors, syndromes, file format."""

from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass, field as dc_field
from typing import Sequence, TextIO

from .gfqm import Field
from .linalg import (Subspace, kernel, mat_vec, prime_field, rank, sample_subspace,
                     span_rank, vec_add, vec_mat, vec_sub)

log = logging.getLogger(__name__)

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class InstanceFormatError(ValueError):
    """Malformed instance file; the message carries the line number."""

    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    r: int
    field: Field

    def __post_init__(self):
        if not 0 <= self.k < self.n:
            raise ValueError(f"need 0 <= k < n, got n={self.n}, k={self.k}")
        if not 0 <= self.r <= min(self.n, self.field.m):
            raise ValueError(f"need 0 <= r <= min(n, m), got r={self.r}")
        if self.r > self.n - self.k:
            log.warning("r=%d exceeds n-k=%d; decoding is not unique", self.r, self.n - self.k)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def m(self) -> int:
        return self.field.m


@dataclass(frozen=True)
class RsdSolution:
    x: Vector
    e: Vector


@dataclass(frozen=True)
class RsdInstance:
    params: CodeParams
    G: Matrix
    H: Matrix
    y: Vector
    hidden: RsdSolution | None = None
    mode: str = dc_field(default="random", compare=False)

    @property
    def field(self) -> Field:
        return self.params.field

    def without_solution(self) -> "RsdInstance":
        return RsdInstance(self.params, self.G, self.H, self.y, None, self.mode)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str

    def __bool__(self) -> bool:
        return self.accepted


# -- rank weight and counting ------------------------------------------------------

def rank_weight(v: Sequence[int], field: Field) -> int:
    """GF(q)-rank of the m x n expansion of v."""
    return span_rank(v, field.q, field.m)


def rank_weight_expanded(v: Sequence[int], field: Field) -> int:
    """Same quantity via explicit matrix rank of expand(v); kept as a cross-check."""
    if not v:
        return 0
    return rank(field.expand(v), prime_field(field.q))


def count_rank_exactly(q: int, m: int, n: int, r: int) -> int:
    """Number of m x n matrices over GF(q) of rank exactly r."""
    if r > min(m, n):
        return 0
    num = 1
    for i in range(r):
        num *= (q ** m - q ** i) * (q ** n - q ** i)
    den = 1
    for i in range(r):
        den *= q ** r - q ** i
    return num // den


def gv_radius(params: CodeParams) -> int:
    """Smallest d whose rank ball of radius d has at least q^(m(n-k)) points."""
    q, m, n, k = params.q, params.m, params.n, params.k
    target = q ** (m * (n - k))
    total = 0
    for d in range(min(m, n) + 1):
        total += count_rank_exactly(q, m, n, d)
        if total >= target:
            return d
    return min(m, n)


# -- codes -----------------------------------------------------------------------

def parity_check(G: Sequence[Sequence[int]], field: Field) -> Matrix:
    n = len(G[0]) if G else 0
    return tuple(tuple(v) for v in kernel(G, field, n))


def random_code(params: CodeParams, rng) -> tuple[Matrix, Matrix]:
    F, n, k = params.field, params.n, params.k
    while True:
        G = [[F.random(rng) for _ in range(n)] for _ in range(k)]
        if rank(G, F) == k:
            break
    H = parity_check(G, F) if k else tuple(
        tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return tuple(tuple(row) for row in G), H


def gabidulin_code(params: CodeParams, g: Sequence[int]) -> Matrix:
    """Moore matrix generator: G[i][j] = g_j^(q^i)."""
    F, n, k = params.field, params.n, params.k
    if len(g) != n:
        raise ValueError(f"support vector must have length n={n}")
    if rank_weight(g, F) != n:
        raise ValueError("Gabidulin support vector must have rank weight n")
    return tuple(tuple(F.frobenius(x, i) for x in g) for i in range(k))


def sample_error(params: CodeParams, rng) -> Vector:
    """Error of rank exactly r: random support times a full-rank coefficient matrix."""
    F, n, r = params.field, params.n, params.r
    if r == 0:
        return (0,) * n
    E = sample_subspace(F.q, F.m, r, rng)
    Fq = prime_field(F.q)
    while True:
        coeff = [[rng.randrange(F.q) for _ in range(n)] for _ in range(r)]
        if rank(coeff, Fq) == r:
            break
    e = []
    for i in range(n):
        acc = 0
        for j in range(r):
            acc = F.add(acc, F.scale(coeff[j][i], E.basis[j]))
        e.append(acc)
    return tuple(e)


def syndrome(H: Sequence[Sequence[int]], v: Sequence[int], field: Field) -> Vector:
    return tuple(mat_vec(H, v, field))


def encode(x: Sequence[int], G: Sequence[Sequence[int]], field: Field) -> Vector:
    if not G:
        return ()
    return tuple(vec_mat(x, G, field))


def make_instance(params: CodeParams, rng, mode: str = "random") -> RsdInstance:
    F, n, k = params.field, params.n, params.k
    if 2 * params.r > gv_radius(params):
        log.warning("r=%d is above half the rank GV radius %d; several solutions may exist",
                    params.r, gv_radius(params))
    if mode == "random":
        G, H = random_code(params, rng)
    elif mode == "gabidulin":
        if n > F.m:
            raise ValueError("Gabidulin codes need n <= m")
        while True:
            g = [F.random(rng) for _ in range(n)]
            if rank_weight(g, F) == n:
                break
        G = gabidulin_code(params, g)
        H = parity_check(G, F)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    x = tuple(F.random(rng) for _ in range(k))
    e = sample_error(params, rng)
    c = encode(x, G, F) if k else (0,) * n
    y = tuple(vec_add(c, e, F))
    return RsdInstance(params, G, H, y, RsdSolution(x, e), mode)


def verify_solution(inst: RsdInstance, sol: RsdSolution, exact: bool = False) -> Verdict:
    """Accept iff y = x G + e and rank(e) <= r (== r when ``exact``)."""
    p, F = inst.params, inst.field
    if len(sol.x) != p.k or len(sol.e) != p.n:
        return Verdict(False, f"dimension mismatch: got |x|={len(sol.x)}, |e|={len(sol.e)}, "
                              f"expected k={p.k}, n={p.n}")
    if any(not 0 <= a < F.order for a in sol.x + sol.e):
        return Verdict(False, "element out of range")
    c = encode(sol.x, inst.G, F) if p.k else (0,) * p.n
    if tuple(vec_add(c, sol.e, F)) != inst.y:
        return Verdict(False, "y != x G + e")
    w = rank_weight(sol.e, F)
    if w > p.r or (exact and w != p.r):
        return Verdict(False, f"rank weight of e is {w}, target r={p.r}")
    return Verdict(True, "ok")


def error_support(e: Sequence[int], field: Field) -> Subspace:
    return Subspace.span(list(e), field.q, field.m)


def residual(inst: RsdInstance, x: Sequence[int]) -> Vector:
    """y - x G."""
    F = inst.field
    c = encode(x, inst.G, F) if inst.params.k else (0,) * inst.params.n
    return tuple(vec_sub(inst.y, c, F))


# -- file format ---------------------------------------------------------------------

def write_instance(inst: RsdInstance, dest: str | os.PathLike | TextIO,
                   with_solution: bool = True) -> None:
    text = dumps_instance(inst, with_solution)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


def dumps_instance(inst: RsdInstance, with_solution: bool = True) -> str:
    p, F = inst.params, inst.field
    out = io.StringIO()
    out.write("RSD 1\n")
    out.write(f"# mode {inst.mode}\n")
    out.write(f"q {F.q} m {F.m} n {p.n} k {p.k} r {p.r}\n")
    out.write("modulus " + " ".join(map(str, F.modulus)) + "\n")
    out.write("G\n")
    for row in inst.G:
        out.write(" ".join(map(str, row)) + "\n")
    out.write("y " + " ".join(map(str, inst.y)) + "\n")
    if with_solution and inst.hidden is not None:
        out.write("solution_x " + " ".join(map(str, inst.hidden.x)) + "\n")
        out.write("solution_e " + " ".join(map(str, inst.hidden.e)) + "\n")
    return out.getvalue()


def read_instance(src: str | os.PathLike | TextIO) -> RsdInstance:
    if hasattr(src, "read"):
        return loads_instance(src.read())
    with open(src, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def loads_instance(text: str) -> RsdInstance:
    mode = "random"
    lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        parts = comment.split()
        if len(parts) == 2 and parts[0] == "mode" and not body.strip():
            mode = parts[1]
        toks = body.split()
        if toks:
            lines.append((lineno, toks))
    it = iter(lines)

    def take(what: str) -> tuple[int, list[str]]:
        try:
            return next(it)
        except StopIteration:
            raise InstanceFormatError(len(text.splitlines()) + 1, f"unexpected end of file, expected {what}")

    def ints(lineno: int, toks: Sequence[str]) -> list[int]:
        try:
            return [int(t) for t in toks]
        except ValueError:
            raise InstanceFormatError(lineno, f"expected integers, got {' '.join(toks)!r}")

    lineno, toks = take("header")
    if toks != ["RSD", "1"]:
        raise InstanceFormatError(lineno, f"bad header {' '.join(toks)!r}, expected 'RSD 1'")

    lineno, toks = take("parameter line")
    param_line = lineno
    if len(toks) != 10 or toks[0::2] != ["q", "m", "n", "k", "r"]:
        raise InstanceFormatError(lineno, "expected 'q <p> m <m> n <n> k <k> r <r>'")
    q, m, n, k, r = ints(lineno, toks[1::2])

    lineno, toks = take("modulus line")
    if toks[0] != "modulus":
        raise InstanceFormatError(lineno, "expected 'modulus ...'")
    mod = ints(lineno, toks[1:])
    try:
        F = Field(q, m, mod)
    except ValueError as exc:
        raise InstanceFormatError(lineno, str(exc)) from None
    try:
        params = CodeParams(n, k, r, F)
    except ValueError as exc:
        raise InstanceFormatError(param_line, str(exc)) from None

    def elements(lineno: int, toks: Sequence[str], count: int, what: str) -> tuple[int, ...]:
        vals = ints(lineno, toks)
        if len(vals) != count:
            raise InstanceFormatError(lineno, f"{what}: expected {count} entries, got {len(vals)}")
        for v in vals:
            if not 0 <= v < F.order:
                raise InstanceFormatError(lineno, f"{what}: element {v} outside [0, {F.order})")
        return tuple(vals)

    lineno, toks = take("'G'")
    if toks != ["G"]:
        raise InstanceFormatError(lineno, "expected 'G'")
    G = []
    for i in range(k):
        lineno, toks = take(f"row {i} of G")
        G.append(elements(lineno, toks, n, f"G row {i}"))
    if k and rank(G, F) != k:
        raise InstanceFormatError(lineno, f"G does not have rank k={k}")

    lineno, toks = take("'y'")
    if toks[0] != "y":
        raise InstanceFormatError(lineno, "expected 'y ...'")
    y = elements(lineno, toks[1:], n, "y")

    hidden = None
    rest = list(it)
    if rest:
        if len(rest) != 2 or rest[0][1][0] != "solution_x" or rest[1][1][0] != "solution_e":
            raise InstanceFormatError(rest[0][0], "expected optional solution_x and solution_e lines")
        x = elements(rest[0][0], rest[0][1][1:], k, "solution_x")
        e = elements(rest[1][0], rest[1][1][1:], n, "solution_e")
        hidden = RsdSolution(x, e)

    Gt = tuple(G)
    H = parity_check(Gt, F) if k else tuple(
        tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    inst = RsdInstance(params, Gt, H, y, hidden, mode)
    if hidden is not None:
        verdict = verify_solution(inst, hidden, exact=True)
        if not verdict:
            raise InstanceFormatError(rest[0][0], f"stored solution is invalid: {verdict.reason}")
    return inst


__all__ = [
    "CodeParams", "RsdInstance", "RsdSolution", "Verdict", "InstanceFormatError",
    "rank_weight", "rank_weight_expanded", "count_rank_exactly", "gv_radius", "parity_check",
    "random_code", "gabidulin_code", "sample_error", "syndrome", "encode", "make_instance",
    "verify_solution", "error_support", "residual", "write_instance", "read_instance",
    "dumps_instance", "loads_instance",
]
