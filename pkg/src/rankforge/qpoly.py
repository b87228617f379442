"""Linearized (q-)polynomials over GF(q^m).

``P(x) = sum_i coeffs[i] * x^(q^i)``.  Addition is coefficientwise and the
ring product is composition, which is not commutative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gfqm import Field
from .linalg import Subspace, kernel, prime_field


@dataclass(frozen=True)
class QPolynomial:
    field: Field
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def identity(cls, field: Field) -> "QPolynomial":
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: Field, i: int, c: int = 1) -> "QPolynomial":
        return cls(field, (0,) * i + (c,))

    @property
    def qdeg(self) -> int:
        """q-degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        return add(self, other)

    def __matmul__(self, other: "QPolynomial") -> "QPolynomial":
        return compose(self, other)


def evaluate(P: QPolynomial, x: int) -> int:
    F = P.field
    acc = 0
    xi = x
    for i, p in enumerate(P.coeffs):
        if i:
            xi = F.frobenius(xi, 1)
        if p:
            acc = F.add(acc, F.mul(p, xi))
    return acc


def add(P: QPolynomial, Q: QPolynomial) -> QPolynomial:
    F = _same_field(P, Q)
    n = max(len(P.coeffs), len(Q.coeffs))
    a = P.coeffs + (0,) * (n - len(P.coeffs))
    b = Q.coeffs + (0,) * (n - len(Q.coeffs))
    return QPolynomial(F, tuple(F.add(x, y) for x, y in zip(a, b)))


def scale(c: int, P: QPolynomial) -> QPolynomial:
    F = P.field
    return QPolynomial(F, tuple(F.mul(c, p) for p in P.coeffs))


def compose(P: QPolynomial, Q: QPolynomial) -> QPolynomial:
    """(P o Q)_k = sum_{i+j=k} p_i * q_j^(q^i)."""
    F = _same_field(P, Q)
    if P.is_zero() or Q.is_zero():
        return QPolynomial(F, ())
    out = [0] * (len(P.coeffs) + len(Q.coeffs) - 1)
    for i, p in enumerate(P.coeffs):
        if not p:
            continue
        for j, qj in enumerate(Q.coeffs):
            if qj:
                out[i + j] = F.add(out[i + j], F.mul(p, F.frobenius(qj, i)))
    return QPolynomial(F, tuple(out))


def annihilator(field: Field, basis: Sequence[int]) -> QPolynomial:
    """Monic q-polynomial of q-degree len(basis) vanishing on span(basis).

    Built by Ore's induction: P_0 = x and
    P_{i+1}(x) = P_i(x)^q - P_i(g_{i+1})^(q-1) * P_i(x).
    """
    F = field
    P = QPolynomial.identity(F)
    for g in basis:
        v = evaluate(P, g)
        if v == 0:
            raise ValueError("basis elements are not linearly independent over GF(q)")
        # P^q: shift up one q-degree, Frobenius on each coefficient
        shifted = (0,) + tuple(F.frobenius(p, 1) for p in P.coeffs)
        c = F.neg(F.pow(v, F.q - 1))
        lower = tuple(F.mul(c, p) for p in P.coeffs) + (0,)
        P = QPolynomial(F, tuple(F.add(a, b) for a, b in zip(shifted, lower)))
    return P


def annihilator_of(E: Subspace, field: Field) -> QPolynomial:
    return annihilator(field, E.basis)


def linear_map_matrix(P: QPolynomial) -> list[list[int]]:
    """m x m matrix over GF(q); column j is the coordinate vector of P(x^j)."""
    F = P.field
    basis = [F.from_coords([1 if i == j else 0 for i in range(F.m)]) for j in range(F.m)]
    return F.expand([evaluate(P, b) for b in basis])


def root_space(P: QPolynomial) -> Subspace:
    """The GF(q)-subspace {z : P(z) = 0}."""
    if P.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere; no root space")
    F = P.field
    ker = kernel(linear_map_matrix(P), prime_field(F.q), F.m)
    return Subspace.span([F.from_coords(v) for v in ker], F.q, F.m)


def _same_field(P: QPolynomial, Q: QPolynomial) -> Field:
    if P.field != Q.field:
        raise ValueError("q-polynomials over different fields")
    return P.field


__all__ = ["QPolynomial", "evaluate", "add", "scale", "compose", "annihilator",
           "annihilator_of", "root_space", "linear_map_matrix"]
