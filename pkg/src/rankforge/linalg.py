"""Dense linear algebra over a :class:`~rankforge.gfqm.Field`.

Matrices are lists of rows, rows are lists of element encodings.  The same
routines serve GF(q) (``Field(q, 1)``) and GF(q^m).  Over GF(2) there are
bit-packed helpers where rows or columns are ints.

Subspaces of GF(q)^m are handled through the identification of GF(q^m)
with GF(q)^m given by the coordinate encoding: a vector *is* a field
element int, and column ``i`` of a basis matrix is coordinate ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .gfqm import Field

Matrix = list[list[int]]


# -- generic dense routines ----------------------------------------------------

def rref(rows: Sequence[Sequence[int]], field: Field,
         ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Gauss-Jordan form.  Pivots are taken on the first nonzero entry in
    column order; zero rows end up at the bottom."""
    R = [list(r) for r in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    nrows = len(R)
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if R[i][col]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        row = R[r]
        lead = row[col]
        if lead != 1:
            inv = field.inv(lead)
            row = R[r] = [field.mul(inv, x) if x else 0 for x in row]
        for i in range(nrows):
            if i != r:
                c = R[i][col]
                if c:
                    Ri = R[i]
                    R[i] = [field.sub(a, field.mul(c, b)) if b else a for a, b in zip(Ri, row)]
        pivots.append(col)
        r += 1
    return R, pivots


def rank(rows: Sequence[Sequence[int]], field: Field) -> int:
    if field.q == 2 and field.m == 1:
        return len(_xor_basis(_pack_rows(rows)))
    return len(rref(rows, field)[1])


def kernel(rows: Sequence[Sequence[int]], field: Field, ncols: int | None = None) -> Matrix:
    """Basis of {v : A v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, pivots = rref(rows, field, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = field.neg(R[i][f])
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Solution:
    """Affine solution set ``particular + span(kernel)``."""

    particular: tuple[int, ...]
    kernel: tuple[tuple[int, ...], ...]


def solve(A: Sequence[Sequence[int]], b: Sequence[int], field: Field,
          ncols: int | None = None) -> Solution | None:
    """Solve ``A x = b``.  Returns None when the system is inconsistent."""
    if len(A) != len(b):
        raise ValueError(f"A has {len(A)} rows but b has length {len(b)}")
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    pivset = set(pivots)
    ker = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = field.neg(R[i][f])
        ker.append(tuple(v))
    return Solution(tuple(x), tuple(ker))


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_vec(A: Sequence[Sequence[int]], v: Sequence[int], field: Field) -> list[int]:
    """A . v for a column vector v."""
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = field.add(acc, field.mul(a, x))
        out.append(acc)
    return out


def vec_mat(v: Sequence[int], A: Sequence[Sequence[int]], field: Field) -> list[int]:
    """v . A for a row vector v."""
    ncols = len(A[0]) if A else 0
    out = [0] * ncols
    for x, row in zip(v, A):
        if not x:
            continue
        for j, a in enumerate(row):
            if a:
                out[j] = field.add(out[j], field.mul(x, a))
    return out


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], field: Field) -> Matrix:
    return [vec_mat(row, B, field) for row in A]


def vec_add(u: Sequence[int], v: Sequence[int], field: Field) -> list[int]:
    return [field.add(a, b) for a, b in zip(u, v)]


def vec_sub(u: Sequence[int], v: Sequence[int], field: Field) -> list[int]:
    return [field.sub(a, b) for a, b in zip(u, v)]


def vec_scale(c: int, v: Sequence[int], field: Field) -> list[int]:
    return [field.mul(c, a) for a in v]


def combinations(sol: Solution, field: Field, limit: int) -> Iterator[tuple[int, ...]]:
    """Enumerate the affine set of ``sol``.  Refuses sets larger than ``limit``."""
    d = len(sol.kernel)
    if field.order ** d > limit:
        raise OverflowError(f"affine set has {field.order}^{d} elements, limit {limit}")
    x0 = sol.particular
    if d == 0:
        yield x0
        return
    for coeffs in product(range(field.order), repeat=d):
        x = list(x0)
        for c, kv in zip(coeffs, sol.kernel):
            if c:
                for j, a in enumerate(kv):
                    if a:
                        x[j] = field.add(x[j], field.mul(c, a))
        yield tuple(x)


# -- GF(2) bit-packed ------------------------------------------------------------

def _pack_rows(rows: Sequence[Sequence[int]]) -> list[int]:
    return [sum((x & 1) << j for j, x in enumerate(r)) for r in rows]


def _xor_basis(vectors: Sequence[int]) -> dict[int, int]:
    """Insert vectors into a basis keyed by lowest set bit."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                basis[low] = v
                break
            v ^= b
    return basis


def gf2_rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """RREF of bit-packed rows (bit j = column j)."""
    R = list(rows)
    pivots = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        piv = next((i for i in range(r, len(R)) if R[i] & bit), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        for i in range(len(R)):
            if i != r and R[i] & bit:
                R[i] ^= R[r]
        pivots.append(col)
        r += 1
        if r == len(R):
            break
    return R, pivots


def gf2_solve_columns(columns: Sequence[int], target: int) -> tuple[int | None, list[int]]:
    """Solve ``sum_i x_i * columns[i] = target`` over GF(2).

    Columns and target are bit-packed ints.  Returns ``(x, kernel)`` where
    ``x`` is a bitmask over column indices (None if inconsistent) and
    ``kernel`` is a basis of the homogeneous solutions as bitmasks.
    """
    basis: dict[int, tuple[int, int]] = {}
    ker = []
    for idx, v in enumerate(columns):
        comb = 1 << idx
        while v:
            low = v & -v
            hit = basis.get(low)
            if hit is None:
                basis[low] = (v, comb)
                break
            v ^= hit[0]
            comb ^= hit[1]
        else:
            ker.append(comb)
    v, comb = target, 0
    while v:
        hit = basis.get(v & -v)
        if hit is None:
            return None, ker
        v ^= hit[0]
        comb ^= hit[1]
    return comb, ker


# -- subspaces of GF(q)^m ----------------------------------------------------------

def _digits(v: int, q: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        v, c = divmod(v, q)
        out.append(c)
    return out


def _undigits(d: Sequence[int], q: int) -> int:
    v = 0
    for c in reversed(d):
        v = v * q + c
    return v


@lru_cache(maxsize=None)
def prime_field(q: int) -> Field:
    return Field(q, 1)


def canonical_basis(vectors: Sequence[int], q: int, m: int) -> tuple[int, ...]:
    """Canonical RREF basis of span(vectors), rows ordered by pivot."""
    if q == 2:
        R, piv = gf2_rref([v for v in vectors if v], m)
        return tuple(R[: len(piv)])
    F = prime_field(q)
    R, piv = rref([_digits(v, q, m) for v in vectors if v], F, m)
    return tuple(_undigits(R[i], q) for i in range(len(piv)))


def span_rank(vectors: Sequence[int], q: int, m: int) -> int:
    """Dimension over GF(q) of the span of field elements."""
    if q == 2:
        return len(_xor_basis(vectors))
    return len(rref([_digits(v, q, m) for v in vectors if v], prime_field(q), m)[1])


@dataclass(frozen=True)
class Subspace:
    """A GF(q)-subspace of GF(q)^m with its canonical RREF basis."""

    q: int
    m: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Sequence[int], q: int, m: int) -> "Subspace":
        return cls(q, m, canonical_basis(vectors, q, m))

    @classmethod
    def zero(cls, q: int, m: int) -> "Subspace":
        return cls(q, m, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.q ** self.dim

    def reduce(self, v: int) -> int:
        """Residue of v against the RREF basis; zero iff v is a member."""
        q, m = self.q, self.m
        if q == 2:
            for b in self.basis:
                low = b & -b
                if v & low:
                    v ^= b
            return v
        d = _digits(v, q, m)
        for b in self.basis:
            bd = _digits(b, q, m)
            p = next(i for i, x in enumerate(bd) if x)
            c = d[p]
            if c:
                d = [(x - c * y) % q for x, y in zip(d, bd)]
        return _undigits(d, q)

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains(self, other: "Subspace") -> bool:
        if (self.q, self.m) != (other.q, other.m):
            raise ValueError("subspaces live in different ambient spaces")
        return all(self.reduce(b) == 0 for b in other.basis)

    def elements(self) -> Iterator[int]:
        q, m = self.q, self.m
        for coeffs in product(range(q), repeat=self.dim):
            if q == 2:
                v = 0
                for c, b in zip(coeffs, self.basis):
                    if c:
                        v ^= b
                yield v
            else:
                acc = [0] * m
                for c, b in zip(coeffs, self.basis):
                    if c:
                        acc = [(x + c * y) % q for x, y in zip(acc, _digits(b, q, m))]
                yield _undigits(acc, q)


def sample_subspace(q: int, m: int, d: int, rng) -> Subspace:
    """Uniform d-dimensional subspace: random d x m matrices until full rank."""
    if not 0 <= d <= m:
        raise ValueError(f"dimension {d} outside [0, {m}]")
    order = q ** m
    while True:
        vecs = [rng.randrange(order) for _ in range(d)]
        if span_rank(vecs, q, m) == d:
            return Subspace.span(vecs, q, m)


def sample_subspace_containing(q: int, m: int, d: int, fixed: int, rng) -> Subspace:
    """Uniform d-dimensional subspace containing the nonzero vector ``fixed``."""
    if fixed == 0:
        raise ValueError("fixed vector must be nonzero")
    if not 1 <= d <= m:
        raise ValueError(f"dimension {d} outside [1, {m}]")
    order = q ** m
    while True:
        vecs = [fixed] + [rng.randrange(order) for _ in range(d - 1)]
        if span_rank(vecs, q, m) == d:
            return Subspace.span(vecs, q, m)
