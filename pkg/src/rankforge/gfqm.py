"""Arithmetic in GF(q) and GF(q^m) for prime q.

Elements are plain Python ints holding the canonical encoding
``sum(coords[i] * q**i)`` over the polynomial basis 1, x, ..., x^(m-1).
A :class:`Field` carries the modulus and does all arithmetic; it is
immutable and can be shared freely between workers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

# log/antilog tables are only an internal speedup, built for small binary fields
_TABLE_LIMIT = 1 << 16


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


# -- dense polynomials over GF(q), ascending coefficient lists -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], q: int) -> list[int]:
    a = _trim([c % q for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], q - 2, q) if q > 2 else 1
    while len(a) - 1 >= df:
        c = (a[-1] * inv_lead) % q
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % q
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, q)


def _poly_sub(a: list[int], b: list[int], q: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)]
    return _trim(out)


def _poly_divmod(a: list[int], b: list[int], q: int) -> tuple[list[int], list[int]]:
    a = _trim([c % q for c in a])
    b = _trim([c % q for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], q - 2, q)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % q
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % q
        _trim(a)
    return _trim(quot), a


def _poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b, q)
        a, b = b, r
    return a


def is_irreducible(coeffs: Sequence[int], q: int) -> bool:
    """Rabin-style test: ``f`` of degree m is irreducible iff
    gcd(f, x^(q^i) - x) = 1 for every i <= m // 2."""
    f = _trim([c % q for c in coeffs])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    power = x
    for _ in range(m // 2):
        # power <- power^q mod f
        acc = [1]
        base = power
        e = q
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, f, q)
            base = _poly_mulmod(base, base, f, q)
            e >>= 1
        power = acc
        if len(_poly_gcd(f, _poly_sub(power, x, q), q)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_modulus(q: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree ``m``.

    Candidates ``(c_0, ..., c_{m-1})`` are ordered by the base-q integer
    ``sum(c_i * q**i)``, the same order as the element encoding.
    """
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    if m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m}")
    for v in range(q ** m):
        coeffs = []
        for _ in range(m):
            v, c = divmod(v, q)
            coeffs.append(c)
        coeffs.append(1)
        if is_irreducible(coeffs, q):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class Field:
    """GF(q^m) with elements encoded as ints in ``[0, q^m)``."""

    def __init__(self, q: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(q):
            raise ValueError(f"q={q} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        if modulus is None:
            modulus = find_modulus(q, m)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if any(not 0 <= c < q for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, q)")
        if not is_irreducible(modulus, q):
            raise ValueError(f"modulus {modulus} is not irreducible over GF({q})")
        self.q = q
        self.m = m
        self.modulus = modulus
        self.order = q ** m
        self._binary = q == 2
        self._mod_int = sum(c << i for i, c in enumerate(modulus)) if self._binary else None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self._binary and m > 1:
            if self.order <= _TABLE_LIMIT:
                self._build_tables()
            else:
                # squaring is GF(2)-linear: precompute the images of x^j
                self._sq = [self._clmul_reduce(1 << (2 * j)) for j in range(m)]

    # -- identity -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Field(q={self.q}, m={self.m}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.q, self.m, self.modulus) == (
            other.q, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.m, self.modulus))

    def __reduce__(self):
        return (Field, (self.q, self.m, self.modulus))

    zero = 0
    one = 1

    # -- encoding -------------------------------------------------------------

    def coords(self, a: int) -> list[int]:
        if self._binary:
            return [(a >> i) & 1 for i in range(self.m)]
        out = []
        for _ in range(self.m):
            a, c = divmod(a, self.q)
            out.append(c)
        return out

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(coords)}")
        if self._binary:
            return sum((c & 1) << i for i, c in enumerate(coords))
        v = 0
        for c in reversed(coords):
            v = v * self.q + (c % self.q)
        return v

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element encoding of GF({self.q}^{self.m})")
        return a

    def element_from_base(self, c: int) -> int:
        """Embed c in GF(q) into GF(q^m)."""
        return c % self.q

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._binary:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.q
        return self._digitwise(a, b, 1)

    def sub(self, a: int, b: int) -> int:
        if self._binary:
            return a ^ b
        if self.m == 1:
            return (a - b) % self.q
        return self._digitwise(a, b, -1)

    def neg(self, a: int) -> int:
        if self._binary:
            return a
        if self.m == 1:
            return (-a) % self.q
        return self._digitwise(0, a, -1)

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        q = self.q
        v, place = 0, 1
        for _ in range(self.m):
            a, da = divmod(a, q)
            b, db = divmod(b, q)
            v += ((da + sign * db) % q) * place
            place *= q
        return v

    def scale(self, c: int, a: int) -> int:
        """Multiply a by the GF(q) scalar c."""
        c %= self.q
        if c == 0:
            return 0
        if c == 1:
            return a
        return self.mul(c, a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return (a * b) % self.q
        if self._binary:
            if self._exp is not None:
                return self._exp[self._log[a] + self._log[b]]
            return self._clmul_reduce(_clmul(a, b))
        return self.from_coords(_pad(_poly_mulmod(self.coords(a), self.coords(b),
                                                  self.modulus, self.q), self.m))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.m == 1:
            return pow(a, self.q - 2, self.q)
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._euclid_inv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def frobenius(self, a: int, i: int = 1) -> int:
        """Return a^(q^i); i is reduced mod m."""
        if i < 0:
            raise ValueError("Frobenius power must be non-negative")
        i %= self.m
        if i == 0 or a < 2:
            return a
        if self._binary:
            if self._exp is not None:
                return self._exp[(self._log[a] << i) % (self.order - 1)]
            for _ in range(i):
                a = self._square_linear(a)
            return a
        return self.pow(a, self.q ** i)

    # -- helpers --------------------------------------------------------------

    def _clmul_reduce(self, v: int) -> int:
        m, f = self.m, self._mod_int
        top = v.bit_length() - 1
        while top >= m:
            v ^= f << (top - m)
            top = v.bit_length() - 1
        return v

    def _square_linear(self, a: int) -> int:
        out, j = 0, 0
        while a:
            if a & 1:
                out ^= self._sq[j]
            a >>= 1
            j += 1
        return out

    def _build_tables(self) -> None:
        n = self.order - 1
        for g in range(2, self.order):
            exp = [0] * (2 * n)
            v = 1
            ok = True
            for i in range(n):
                if i and v == 1:
                    ok = False
                    break
                exp[i] = v
                v = self._clmul_reduce(_clmul(v, g))
            if ok and v == 1:
                break
        else:  # pragma: no cover - GF(2^1) never gets here
            return
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        log = [0] * self.order
        for i in range(n):
            log[exp[i]] = i
        self._exp, self._log = exp, log

    def _euclid_inv(self, a: int) -> int:
        q = self.q
        r0, r1 = list(self.modulus), _trim(self.coords(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, q)
            r0, r1 = r1, rem
            prod = _poly_mulmod_plain(quot, s1, q)
            s0, s1 = s1, _poly_sub(s0, prod, q)
        # r0 is a nonzero constant
        c = pow(r0[0], q - 2, q)
        s = _poly_mod([(c * x) % q for x in s0], self.modulus, q)
        return self.from_coords(_pad(s, self.m))

    # -- vectors --------------------------------------------------------------

    def random(self, rng) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.order)

    def expand(self, v: Sequence[int]) -> list[list[int]]:
        """m x n matrix over GF(q) whose column j holds the coordinates of v[j]."""
        cols = [self.coords(x) for x in v]
        return [[col[i] for col in cols] for i in range(self.m)]

    def collapse(self, mat: Sequence[Sequence[int]]) -> list[int]:
        if len(mat) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(mat)}")
        n = len(mat[0]) if mat else 0
        return [self.from_coords([mat[i][j] for i in range(self.m)]) for j in range(n)]

    def elements(self) -> Iterable[int]:
        return range(self.order)


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _pad(a: list[int], m: int) -> list[int]:
    return a + [0] * (m - len(a))


def _poly_mulmod_plain(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % q
    return _trim(out)
