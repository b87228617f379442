import pickle
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

from rankforge.gfqm import Field, find_modulus, is_irreducible, is_prime

FIELDS = [Field(2, 1), Field(3, 1), Field(2, 3), Field(2, 8), Field(3, 3), Field(5, 2), Field(2, 20)]


def sym_mul(F, a, b):
    """Reference product through sympy's dense GF(p)[x] routines (descending coefficients)."""
    A = list(reversed(F.coords(a)))
    B = list(reversed(F.coords(b)))
    mod = list(reversed(F.modulus))
    R = gf_rem(gf_mul(A, B, F.q, ZZ), mod, F.q, ZZ)
    return from_desc(F, R)


def from_desc(F, poly):
    coords = [int(c) for c in reversed(poly)]
    return F.from_coords(coords + [0] * (F.m - len(coords)))


def test_modulus_examples():
    assert find_modulus(2, 1) == (0, 1)
    assert find_modulus(2, 3) == (1, 1, 0, 1)
    assert find_modulus(3, 2) == (1, 0, 1)


@pytest.mark.parametrize("q,m", [(2, 2), (2, 5), (2, 8), (3, 2), (3, 4), (5, 3), (7, 2)])
def test_modulus_is_smallest_irreducible(q, m):
    f = find_modulus(q, m)
    assert f[-1] == 1 and len(f) == m + 1
    assert gf_irreducible_p([int(c) for c in reversed(f)], q, ZZ)
    key = sum(c * q ** i for i, c in enumerate(f[:m]))
    for smaller in range(key):
        coeffs = [(smaller // q ** i) % q for i in range(m)] + [1]
        assert not gf_irreducible_p(list(reversed(coeffs)), q, ZZ)


def test_is_irreducible_matches_sympy():
    rng = random.Random(3)
    for _ in range(200):
        q = rng.choice([2, 3, 5])
        m = rng.randrange(1, 7)
        coeffs = [rng.randrange(q) for _ in range(m)] + [1]
        assert is_irreducible(coeffs, q) == gf_irreducible_p(list(reversed(coeffs)), q, ZZ)


def test_bad_construction():
    with pytest.raises(ValueError):
        Field(4, 2)
    with pytest.raises(ValueError):
        Field(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ValueError):
        find_modulus(6, 2)
    assert not is_prime(1) and is_prime(2) and not is_prime(9) and is_prime(97)


def test_gf8_examples():
    F = Field(2, 3)
    assert F.mul(2, 4) == 3
    assert F.inv(2) == 5
    assert F.frobenius(2, 1) == 4
    assert F.expand([3, 4]) == [[1, 0], [1, 0], [0, 1]]
    assert F.expand([0, 0, 0]) == [[0, 0, 0]] * 3


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_mul_against_sympy(F):
    rng = random.Random(F.order)
    for _ in range(300):
        a, b = F.random(rng), F.random(rng)
        assert F.mul(a, b) == sym_mul(F, a, b)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms(F):
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(F.add(a, b), b) == a
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.div(F.mul(a, b), a) == b
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_frobenius(F):
    rng = random.Random(11)
    for _ in range(100):
        a, b = F.random(rng), F.random(rng)
        assert F.frobenius(a, 0) == a
        assert F.frobenius(a, F.m) == a
        assert F.frobenius(a, 1) == F.pow(a, F.q)
        assert F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1))
        i = rng.randrange(3 * F.m)
        ref = list(reversed(F.coords(a)))
        mod = list(reversed(F.modulus))
        want = gf_pow_mod(ref, F.q ** (i % F.m), mod, F.q, ZZ) if a else []
        assert F.frobenius(a, i) == from_desc(F, want)
    with pytest.raises(ValueError):
        F.frobenius(1, -1)


def test_pow_and_multiplicative_order():
    F = Field(2, 8)
    for a in range(1, F.order):
        assert F.pow(a, F.order - 1) == 1
    assert F.pow(0, 0) == 1


@given(st.integers(0, 2 ** 20 - 1), st.integers(0, 2 ** 20 - 1))
@settings(max_examples=200)
def test_large_binary_field_matches_reference(a, b):
    F = Field(2, 20)
    assert F.mul(a, b) == sym_mul(F, a, b)


@given(st.lists(st.integers(0, 26), min_size=1, max_size=6))
def test_expand_collapse_roundtrip(v):
    F = Field(3, 3)
    M = F.expand(v)
    assert len(M) == 3 and all(len(row) == len(v) for row in M)
    assert F.collapse(M) == list(v)


def test_encoding_roundtrip_and_checks():
    F = Field(5, 2)
    for a in F.elements():
        assert F.from_coords(F.coords(a)) == a
    with pytest.raises(ValueError):
        F.check(25)
    assert F.element_from_base(3) == 3


def test_pickle_and_equality():
    F = Field(2, 10)
    G = pickle.loads(pickle.dumps(F))
    assert G == F and hash(G) == hash(F)
    assert G.mul(123, 456) == F.mul(123, 456)
    assert Field(2, 3) != Field(2, 4)
