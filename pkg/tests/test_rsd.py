import io
import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rankforge.gfqm import Field
from rankforge.linalg import mat_vec, rank, sample_subspace
from rankforge.rsd import (CodeParams, InstanceFormatError, RsdSolution, count_rank_exactly,
                           dumps_instance, encode, error_support, gabidulin_code, loads_instance,
                           make_instance, parity_check, rank_weight, rank_weight_expanded,
                           read_instance, sample_error, syndrome, verify_solution, write_instance)


def params(q, m, n, k, r):
    return CodeParams(n, k, r, Field(q, m))


def test_rank_weight_examples():
    F = Field(2, 8)
    assert rank_weight([0] * 5, F) == 0
    assert rank_weight([77] * 5, F) == 1
    assert rank_weight([1, 2, 3], F) == 2


@given(st.lists(st.integers(0, 3 ** 3 - 1), max_size=6))
def test_rank_weight_matches_expansion(v):
    F = Field(3, 3)
    assert rank_weight(v, F) == rank_weight_expanded(v, F)


def test_count_rank_exactly_brute_force():
    for q, m, n in [(2, 2, 3), (2, 3, 2), (3, 2, 2)]:
        counts = [0] * (min(m, n) + 1)
        for entries in product(range(q), repeat=m * n):
            M = [list(entries[i * n:(i + 1) * n]) for i in range(m)]
            counts[rank(M, Field(q))] += 1
        assert counts == [count_rank_exactly(q, m, n, r) for r in range(min(m, n) + 1)]


def test_params_validation():
    F = Field(2, 4)
    for n, k, r in [(3, 3, 1), (3, -1, 1), (3, 1, 5), (3, 1, -1)]:
        with pytest.raises(ValueError):
            CodeParams(n, k, r, F)
    CodeParams(3, 0, 0, F)


def test_sample_error_rank():
    p = params(2, 8, 10, 3, 3)
    rng = random.Random(0)
    for _ in range(1000):
        assert rank_weight(sample_error(p, rng), p.field) == 3
    assert sample_error(params(2, 8, 10, 3, 0), rng) == (0,) * 10


def test_error_support_is_the_span():
    rng = random.Random(1)
    F = Field(2, 8)
    for _ in range(50):
        E = sample_subspace(2, 8, 3, rng)
        coeff = [[rng.randrange(2) for _ in range(6)] for _ in range(3)]
        if rank(coeff, Field(2)) < 3:
            continue
        e = [0] * 6
        for j in range(3):
            for i in range(6):
                if coeff[j][i]:
                    e[i] ^= E.basis[j]
        assert rank_weight(e, F) == 3
        assert error_support(e, F) == E


@pytest.mark.parametrize("dims", [(2, 8, 10, 3, 2), (3, 4, 6, 2, 2), (2, 6, 8, 0, 2)])
def test_codes_and_syndromes(dims):
    p = params(*dims)
    F = p.field
    rng = random.Random(sum(dims))
    for _ in range(20):
        inst = make_instance(p, rng)
        assert rank(inst.G, F) == p.k if p.k else inst.G == ()
        assert rank(inst.H, F) == p.n - p.k
        for g in inst.G:
            assert not any(mat_vec(inst.H, g, F))
        x = [F.random(rng) for _ in range(p.k)]
        c = encode(x, inst.G, F) if p.k else (0,) * p.n
        assert not any(syndrome(inst.H, c, F))
        assert syndrome(inst.H, inst.y, F) == syndrome(inst.H, inst.hidden.e, F)
        u = [F.random(rng) for _ in range(p.n)]
        v = [F.random(rng) for _ in range(p.n)]
        uv = [F.add(a, b) for a, b in zip(u, v)]
        assert syndrome(inst.H, uv, F) == tuple(
            F.add(a, b) for a, b in zip(syndrome(inst.H, u, F), syndrome(inst.H, v, F)))
        assert verify_solution(inst, inst.hidden, exact=True)


def test_verify_rejections():
    p = params(2, 8, 10, 3, 2)
    inst = make_instance(p, random.Random(4))
    h = inst.hidden
    bad_x = (h.x[0] ^ 1,) + h.x[1:]
    v = verify_solution(inst, RsdSolution(bad_x, h.e))
    assert not v and "y != x G + e" in v.reason
    # move a rank-3 error into e while keeping y = x G + e
    F = p.field
    rng = random.Random(5)
    e3 = sample_error(params(2, 8, 10, 3, 3), rng)
    c = encode(h.x, inst.G, F)
    shifted = inst.__class__(p, inst.G, inst.H, tuple(F.add(a, b) for a, b in zip(c, e3)))
    v = verify_solution(shifted, RsdSolution(h.x, e3))
    assert not v and "rank weight" in v.reason
    assert not verify_solution(inst, RsdSolution(h.x[:2], h.e))


def test_gabidulin_moore_structure_and_distance():
    p = params(2, 4, 4, 2, 1)
    F = p.field
    g = [1, 2, 4, 8]
    G = gabidulin_code(p, g)
    assert G[1] == tuple(F.frobenius(a, 1) for a in G[0])
    assert gabidulin_code(params(2, 4, 4, 1, 1), g) == (tuple(g),)
    weights = [rank_weight(encode(x, G, F), F) for x in product(range(16), repeat=2) if any(x)]
    assert len(weights) == 255 and min(weights) >= 3
    with pytest.raises(ValueError):
        gabidulin_code(p, [1, 1, 4, 8])
    inst = make_instance(params(2, 6, 5, 2, 1), random.Random(0), mode="gabidulin")
    assert inst.mode == "gabidulin" and verify_solution(inst, inst.hidden)


def test_file_roundtrip():
    for dims, mode in [((2, 10, 12, 2, 3), "random"), ((3, 3, 5, 2, 1), "random"),
                       ((2, 6, 5, 2, 1), "gabidulin"), ((2, 5, 4, 0, 2), "random")]:
        inst = make_instance(params(*dims), random.Random(7), mode)
        text = dumps_instance(inst)
        back = loads_instance(text)
        assert back == inst and back.mode == mode
        assert dumps_instance(back) == text
        bare = loads_instance(dumps_instance(inst, with_solution=False))
        assert bare.hidden is None and bare.H == inst.H
        buf = io.StringIO()
        write_instance(inst, buf)
        assert read_instance(io.StringIO(buf.getvalue())) == inst


def _bad(text):
    with pytest.raises(InstanceFormatError) as info:
        loads_instance(text)
    return info.value


GOOD = """RSD 1
q 2 m 3 n 3 k 1 r 1
modulus 1 1 0 1
G
1 2 4
y 1 2 5
"""


def test_format_errors():
    assert loads_instance(GOOD).params.n == 3
    assert _bad(GOOD.replace("RSD 1", "RSD 2")).lineno == 1
    assert _bad(GOOD.replace("k 1", "k 3")).lineno == 2
    assert _bad(GOOD.replace("modulus 1 1 0 1", "modulus 1 0 0 1")).lineno == 3
    assert _bad(GOOD.replace("1 2 4", "1 2 9")).lineno == 5
    assert _bad(GOOD.replace("1 2 4", "1 2")).lineno == 5
    assert _bad(GOOD.replace("1 2 4", "0 0 0")).lineno == 5
    assert _bad(GOOD.replace("y 1 2 5", "y 1 x 5")).lineno == 6
    assert "end of file" in str(_bad(GOOD.replace("y 1 2 5\n", "")))
    assert _bad(GOOD + "solution_x 1\nsolution_e 0 0 3\n").lineno == 7
    ok = loads_instance(GOOD + "solution_x 1\nsolution_e 0 0 1\n")
    assert ok.hidden == RsdSolution((1,), (0, 0, 1))


def test_parity_check_dimension():
    F = Field(2, 4)
    assert len(parity_check([[1, 0, 0], [0, 1, 0]], F)) == 1
