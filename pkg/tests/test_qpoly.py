import random

import pytest
from hypothesis import given, settings, strategies as st

from rankforge.gfqm import Field
from rankforge.linalg import Subspace, sample_subspace
from rankforge.qpoly import (QPolynomial, annihilator, annihilator_of, compose, linear_map_matrix,
                             root_space, scale)

F8 = Field(2, 3)
F64 = Field(2, 6)
F256 = Field(2, 8)


def brute_compose(P, Q, x):
    return P(Q(x))


def rand_poly(rng, F, max_deg):
    return QPolynomial(F, tuple(F.random(rng) for _ in range(rng.randrange(max_deg + 2))))


def test_examples():
    assert QPolynomial.identity(F8)(5) == 5
    P = QPolynomial(F8, (1, 1))  # x^2 + x
    assert P(1) == 0
    assert QPolynomial(F8, (0, 0)).is_zero() and QPolynomial(F8, ()).qdeg == -1
    assert QPolynomial(F8, (3, 0, 0)).coeffs == (3,)


def test_compose_examples():
    rng = random.Random(2)
    P = rand_poly(rng, F64, 3)
    assert compose(P, QPolynomial.identity(F64)) == P
    xq = QPolynomial.monomial(F64, 1)
    assert (xq @ xq) == QPolynomial.monomial(F64, 2)


def test_compose_matches_evaluation():
    rng = random.Random(5)
    for _ in range(20):
        P, Q = rand_poly(rng, F64, 3), rand_poly(rng, F64, 3)
        PQ = compose(P, Q)
        for x in range(F64.order):
            assert PQ(x) == brute_compose(P, Q, x)


@given(st.data())
@settings(max_examples=100)
def test_gf_q_linearity(data):
    F = data.draw(st.sampled_from([F64, Field(3, 3), Field(5, 2)]))
    coeffs = data.draw(st.lists(st.integers(0, F.order - 1), max_size=4))
    P = QPolynomial(F, tuple(coeffs))
    x, y = data.draw(st.integers(0, F.order - 1)), data.draw(st.integers(0, F.order - 1))
    a, b = data.draw(st.integers(0, F.q - 1)), data.draw(st.integers(0, F.q - 1))
    lhs = P(F.add(F.scale(a, x), F.scale(b, y)))
    assert lhs == F.add(F.scale(a, P(x)), F.scale(b, P(y)))


def test_annihilator_examples():
    assert annihilator(F8, []) == QPolynomial.identity(F8)
    P = annihilator(F8, [1])
    assert P.coeffs == (1, 1)
    assert root_space(P) == Subspace.span([1], 2, 3)
    assert root_space(QPolynomial.identity(F8)).dim == 0
    with pytest.raises(ValueError):
        annihilator(F8, [3, 3])
    with pytest.raises(ValueError):
        root_space(QPolynomial(F8, ()))


@pytest.mark.parametrize("F", [F256, Field(3, 4)], ids=repr)
def test_annihilator_vanishes_exactly_on_E(F):
    rng = random.Random(F.order)
    for _ in range(50):
        E = sample_subspace(F.q, F.m, rng.randrange(5), rng)
        P = annihilator_of(E, F)
        assert P.is_monic() and P.qdeg == E.dim
        roots = {x for x in F.elements() if P(x) == 0}
        assert roots == set(E.elements())
        assert root_space(P) == E


def test_annihilator_independent_of_basis():
    rng = random.Random(9)
    for _ in range(20):
        E = sample_subspace(2, 8, 3, rng)
        elems = [v for v in E.elements() if v]
        while True:
            other = rng.sample(elems, 3)
            if Subspace.span(other, 2, 8) == E:
                break
        assert annihilator(F256, other) == annihilator(F256, E.basis)


def test_linear_map_matrix_columns():
    rng = random.Random(1)
    P = rand_poly(rng, F64, 3)
    M = linear_map_matrix(P)
    for i in range(6):
        assert [row[i] for row in M] == F64.coords(P(1 << i))


def test_scale():
    P = QPolynomial(F8, (1, 2))
    assert scale(3, P).coeffs == (3, F8.mul(3, 2))
