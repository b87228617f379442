"""Closed-form attack costs, in log2 of operations.

Each estimate keeps the unit of the formula it comes from: the enumeration
attacks are counted in GF(q) operations (their polynomial factor carries
m^3), the algebraic ones in GF(q^m) operations.  ``omega`` replaces the
exponent 3 of every linear-algebra factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

GFQ_OPS = "GF(q)-ops"
GFQM_OPS = "GF(q^m)-ops"


@dataclass(frozen=True)
class CostEstimate:
    polynomial_part: float
    exponent_part: float
    unit: str
    feasible: bool = True
    branch: str = ""
    note: str = ""

    @property
    def log2_ops(self) -> float:
        if not self.feasible:
            return math.inf
        return self.polynomial_part + self.exponent_part

    def __str__(self) -> str:
        if not self.feasible:
            return "inf"
        return f"2^{self.log2_ops:.2f}"


def _infeasible(unit: str, note: str) -> CostEstimate:
    return CostEstimate(0.0, 0.0, unit, False, note=note)


def _log2(x: float) -> float:
    return math.log2(x) if x > 1 else 0.0


def cost_chabaud_stern(n: int, k: int, r: int, m: int, q: int = 2,
                       omega: float = 3) -> CostEstimate:
    return CostEstimate(omega * _log2(n * r + m), (m - r) * (r - 1) * math.log2(q), GFQ_OPS)


def cost_oj_basis(n: int, k: int, r: int, m: int, q: int = 2, omega: float = 3) -> CostEstimate:
    """Basis enumeration: (k+r)^3 q^((m-r)(r-1)+2)."""
    return CostEstimate(omega * _log2(k + r), ((m - r) * (r - 1) + 2) * math.log2(q), GFQ_OPS)


def cost_oj_coords(n: int, k: int, r: int, m: int, q: int = 2, omega: float = 3) -> CostEstimate:
    """Coordinate enumeration: (k+r)^3 r^3 q^((r-1)(k+1))."""
    return CostEstimate(omega * _log2((k + r) * r), (r - 1) * (k + 1) * math.log2(q), GFQ_OPS)


def cost_es_v1(n: int, k: int, r: int, m: int, q: int = 2, omega: float = 3) -> CostEstimate:
    return CostEstimate(omega * _log2((n - k) * m), r * (k * m // n) * math.log2(q),
                        GFQ_OPS, branch="v1")


def cost_es_v2(n: int, k: int, r: int, m: int, q: int = 2, omega: float = 3) -> CostEstimate:
    return CostEstimate(omega * _log2((n - k) * m), (r - 1) * ((k + 1) * m // n) * math.log2(q),
                        GFQ_OPS, branch="v2")


def cost_es(n: int, k: int, r: int, m: int, q: int = 2, omega: float = 3) -> CostEstimate:
    """Cheaper of the two error-support variants; ties go to v1."""
    a = cost_es_v1(n, k, r, m, q, omega)
    b = cost_es_v2(n, k, r, m, q, omega)
    return b if b.log2_ops < a.log2_ops else a


def linearized_terms(k: int, r: int) -> int:
    return (r + 1) * (k + 1) - 1


def cost_linearization(n: int, k: int, r: int, m: int = 0, q: int = 2,
                       omega: float = 3) -> CostEstimate:
    N = linearized_terms(k, r)
    if n < N:
        return _infeasible(GFQM_OPS, f"n={n} < (r+1)(k+1)-1 = {N}")
    return CostEstimate(omega * _log2(N), 0.0, GFQM_OPS)


def hybrid_t(n: int, k: int, r: int) -> int:
    """max(0, ceil(((r+1)(k+1) - (n+1)) / r))."""
    if r == 0:
        return 0
    return max(0, -(-((r + 1) * (k + 1) - (n + 1)) // r))


def cost_hybrid(n: int, k: int, r: int, m: int = 0, q: int = 2,
                omega: float = 3) -> CostEstimate:
    t = hybrid_t(n, k, r)
    if t > k:
        return _infeasible(GFQM_OPS, f"t={t} > k={k}")
    return CostEstimate(omega * _log2(r * k), r * t * math.log2(q), GFQM_OPS, note=f"t={t}")


# -- counting ---------------------------------------------------------------------

def gaussian_binomial(m: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of GF(q)^m."""
    if not 0 <= d <= m:
        raise ValueError(f"need 0 <= d <= m, got d={d}, m={m}")
    num = den = 1
    for i in range(d):
        num *= q ** m - q ** i
        den *= q ** d - q ** i
    return num // den


def monomial_count(u: int, d: int) -> int:
    """Monomials of degree exactly d in u variables."""
    return math.comb(u + d - 1, d)


def f5_cost(n_eq: int, n_var: int, d_reg: int, omega: float = 3) -> CostEstimate:
    """n_eq * M_{d_reg}(n_var)^omega; informational only."""
    return CostEstimate(_log2(n_eq) + omega * _log2(monomial_count(n_var, d_reg)), 0.0, GFQM_OPS)


# -- degree of regularity -----------------------------------------------------------

def _inv_one_minus_z(s: int, t: int) -> int:
    """Coefficient of z^t in (1 - z)^-s."""
    if s == 0:
        return int(t == 0)
    return math.comb(s + t - 1, t)


def _series_first_nonpositive(numerator: list[int], denom_power: int, bound: int) -> int | None:
    """First index <= bound where numerator(z) / (1-z)^denom_power has a coefficient <= 0."""
    for j in range(bound + 1):
        acc = sum(c * _inv_one_minus_z(denom_power, j - i)
                  for i, c in enumerate(numerator[: j + 1]) if c)
        if acc <= 0:
            return j
    return None


def _poly_pow_binomial(d: int, e: int) -> list[int]:
    """Coefficients of (1 - z^d)^e."""
    out = [0] * (d * e + 1)
    for i in range(e + 1):
        out[d * i] = (-1) ** i * math.comb(e, i)
    return out


def degree_of_regularity(n_eq: int, n_var: int, eq_degree: int) -> int:
    """First index with nonpositive coefficient in (1-z^d)^n_eq / (1-z)^n_var.

    For n_eq < n_var every coefficient is positive and ValueError is raised.
    """
    if n_eq < n_var:
        raise ValueError("fewer equations than variables: the series never turns nonpositive")
    if eq_degree < 1 or n_var < 0:
        raise ValueError("need eq_degree >= 1 and n_var >= 0")
    num = _poly_pow_binomial(eq_degree, n_eq)
    bound = n_var * (eq_degree - 1) + eq_degree * (n_eq - n_var) + 1
    j = _series_first_nonpositive(num, n_var, bound)
    assert j is not None
    return j


def degree_of_regularity_paper_variant(q: int, r: int, k: int, n: int) -> int:
    """First nonpositive coefficient of (sum_{i<=q^r} z^i) (1-z)^(kr-n).

    The sum factor is taken to the first power only, as in the simplified
    form of the series.  Negative exponents are a division by (1-z)^(n-kr);
    then all coefficients are positive and ValueError is raised.
    """
    e = k * r - n
    if e < 0:
        raise ValueError(f"kr - n = {e} < 0: the series never turns nonpositive")
    s = [1] * (q ** r + 1)
    poly = [0] * (len(s) + e)
    for i, b in enumerate(_poly_pow_binomial(1, e)):
        if b:
            for j, a in enumerate(s):
                poly[i + j] += a * b
    for j, c in enumerate(poly + [0]):
        if c <= 0:
            return j
    raise AssertionError("unreachable")  # pragma: no cover


def degree_of_regularity_annihilator(q: int, r: int, k: int, n: int) -> int:
    """The unsimplified form: rk equations of degree q^r + 1 in n unknowns."""
    return degree_of_regularity(r * k, n, q ** r + 1)


# -- the published tables -------------------------------------------------------------

INF = math.inf

# (n, k, r, m) with the printed log2 values; a missing key means the table has no such column.
PAPER_TABLES: dict[str, list[dict]] = {
    "Loidreau": [
        {"params": (64, 12, 6, 24), "OJ1": 104, "OJ2": 85, "Over": 80, "ES": 50, "L": INF, "LH": 48},
        {"params": (76, 12, 6, 24), "OJ1": 104, "OJ2": 85, "Over": 80, "ES": 49, "L": INF, "LH": 36},
    ],
    "Gabidulin": [
        {"params": (28, 14, 3, 28), "Over": 80, "ES": 55, "L": INF, "LH": 49},
        {"params": (28, 14, 4, 28), "Over": 80, "ES": 70, "L": INF, "LH": 65},
        {"params": (20, 10, 4, 20), "Over": 80, "ES": 56, "L": INF, "LH": 51},
        {"params": (20, 12, 4, 20), "Over": 80, "ES": 60, "L": INF, "LH": 60},
    ],
}

COLUMNS = {
    "OJ1": cost_oj_basis,
    "OJ2": cost_oj_coords,
    "ES": cost_es,
    "L": cost_linearization,
    "LH": cost_hybrid,
}


def all_costs(n: int, k: int, r: int, m: int, q: int = 2, omega: float = 3) -> dict[str, CostEstimate]:
    out = {"CS": cost_chabaud_stern(n, k, r, m, q, omega)}
    for name, fn in COLUMNS.items():
        out[name] = fn(n, k, r, m, q, omega)
    return out


@dataclass(frozen=True)
class TableRow:
    table: str
    params: tuple[int, int, int, int]
    column: str
    computed: float
    printed: float | None

    @property
    def deviation(self) -> float | None:
        if self.printed is None:
            return None
        if math.isinf(self.printed) or math.isinf(self.computed):
            return 0.0 if self.printed == self.computed else INF
        return abs(self.computed - self.printed)


def table_rows(omega: float = 3, q: int = 2) -> list[TableRow]:
    rows = []
    for table, entries in PAPER_TABLES.items():
        for entry in entries:
            n, k, r, m = entry["params"]
            costs = all_costs(n, k, r, m, q, omega)
            for col in ("OJ1", "OJ2", "ES", "L", "LH"):
                if col in entry:
                    rows.append(TableRow(table, entry["params"], col, costs[col].log2_ops, entry[col]))
    return rows


def _fmt(x: float | None) -> str:
    if x is None:
        return "-"
    return "inf" if math.isinf(x) else f"{x:.2f}"


def render_tables(omega: float = 3, q: int = 2) -> str:
    """Aligned comparison followed by ``row:`` lines for scripts."""
    rows = table_rows(omega, q)
    lines = []
    for table, entries in PAPER_TABLES.items():
        cols = [c for c in ("OJ1", "OJ2", "Over", "ES", "L", "LH") if c in entries[0]]
        lines.append(f"{table} table (log2 of cost; computed / printed)")
        lines.append("  " + f"{'(n,k,r,m)':<16}" + "".join(f"{c:>16}" for c in cols))
        for entry in entries:
            cells = []
            for c in cols:
                if c == "Over":
                    cells.append(f"{'- / ' + _fmt(entry[c]):>16}")
                    continue
                got = next(x for x in rows if x.params == entry["params"] and x.column == c)
                cells.append(f"{_fmt(got.computed) + ' / ' + _fmt(entry[c]):>16}")
            lines.append("  " + f"{str(entry['params']).replace(' ', ''):<16}" + "".join(cells))
        lines.append("")
    lines.append("Over is reference data only; no formula is given for it.")
    for x in rows:
        n, k, r, m = x.params
        lines.append(f"row: {x.table} {n} {k} {r} {m} {x.column} computed={_fmt(x.computed)} "
                     f"printed={_fmt(x.printed)} deviation={_fmt(x.deviation)}")
    return "\n".join(lines) + "\n"


def render_estimate(n: int, k: int, r: int, m: int, q: int = 2, omega: float = 3) -> str:
    lines = [f"params: n={n} k={k} r={r} m={m} q={q} omega={omega}"]
    names = {"CS": "chabaud_stern", "OJ1": "oj_basis", "OJ2": "oj_coords", "ES": "error_support",
             "L": "linearization", "LH": "hybrid_linearization"}
    for key, est in all_costs(n, k, r, m, q, omega).items():
        extra = " ".join(x for x in (est.branch and f"branch={est.branch}", est.note) if x)
        lines.append(f"{names[key]}: {_fmt(est.log2_ops)} {est.unit}" + (f" ({extra})" if extra else ""))
    return "\n".join(lines) + "\n"


def max_table_deviation(rows: Iterable[TableRow] | None = None) -> float:
    rows = table_rows() if rows is None else rows
    return max(x.deviation for x in rows if x.deviation is not None)


__all__ = [
    "CostEstimate", "GFQ_OPS", "GFQM_OPS", "cost_chabaud_stern", "cost_oj_basis",
    "cost_oj_coords", "cost_es_v1", "cost_es_v2", "cost_es", "cost_linearization", "hybrid_t",
    "cost_hybrid", "linearized_terms", "gaussian_binomial", "monomial_count", "f5_cost",
    "degree_of_regularity", "degree_of_regularity_paper_variant",
    "degree_of_regularity_annihilator", "PAPER_TABLES", "TableRow", "table_rows",
    "render_tables", "render_estimate", "all_costs", "max_table_deviation",
]
