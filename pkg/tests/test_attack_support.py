import random

import pytest

from conftest import instance
from rankforge.attack_support import (SupportGuessConfig, check_feasible, default_r_prime, es_attack,
                                      es_attack_v1, es_attack_v2, extended_parity_check,
                                      predicted_trials, predicted_trials_floor_form,
                                      solve_in_support, trial_v1, trial_v2)
from rankforge.estimator import gaussian_binomial
from rankforge.linalg import sample_subspace
from rankforge.rsd import error_support, rank_weight, syndrome, verify_solution


def test_predictions():
    assert default_r_prime(8, 2, 6, "v1") == 4
    assert default_r_prime(9, 2, 6, "v2") == 4
    assert predicted_trials(2, 6, 2, 4, "v1") == 16
    assert predicted_trials(2, 6, 2, 4, "v2") == 4
    assert predicted_trials_floor_form(2, 24, 64, 12, 6, "v2") == 2 ** 20
    assert predicted_trials_floor_form(2, 24, 76, 12, 6, "v1") == 2 ** 18


@pytest.mark.parametrize("q", [2, 3])
def test_solve_in_support_contains_hidden(q):
    m = 6 if q == 2 else 4
    for seed in range(20):
        inst = instance(q, m, 8, 2, 2, seed)
        F = inst.field
        E = error_support(inst.hidden.e, F)
        sols = solve_in_support(inst.H, syndrome(inst.H, inst.y, F), E.basis, F)
        assert inst.hidden.e in set(sols.candidates())


def test_zero_syndrome_has_only_zero_error():
    rng = random.Random(0)
    for seed in range(20):
        inst = instance(2, 6, 8, 2, 2, seed)
        Ep = sample_subspace(2, 6, 4, rng)
        sols = solve_in_support(inst.H, (0,) * 6, Ep.basis, inst.field)
        if len(sols) == 1:
            assert sols.particular == (0,) * 8
    # n r' <= (n-k) m is necessary but the kernel is trivial only generically


def test_false_solutions_are_rare():
    rng = random.Random(1)
    false = 0
    for seed in range(300):
        inst = instance(2, 6, 8, 2, 2, seed)
        E = error_support(inst.hidden.e, inst.field)
        Ep = sample_subspace(2, 6, 4, rng)
        if Ep.contains(E):
            continue
        sols = solve_in_support(inst.H, syndrome(inst.H, inst.y, inst.field), Ep.basis, inst.field)
        false += sum(rank_weight(e, inst.field) == 2 for e in sols.candidates())
    assert false <= 3


def test_feasibility():
    inst = instance(2, 6, 8, 2, 2, 0)
    assert check_feasible(inst, 4, "v1") is None
    assert "exceeds" in check_feasible(inst, 1, "v1")
    assert check_feasible(inst, 5, "v1") is not None
    assert check_feasible(inst, 4, "v3") is not None
    rep = es_attack(inst, SupportGuessConfig("v1", r_prime=6))
    assert rep.status == "infeasible"


@pytest.mark.parametrize("variant", ["v1", "v2"])
def test_attack_recovers_hidden(variant):
    dims = (2, 6, 8, 2, 2) if variant == "v1" else (2, 6, 9, 2, 2)
    for seed in range(30):
        inst = instance(*dims, seed)
        rep = es_attack(inst, SupportGuessConfig(variant, seed=seed))
        assert rep.solved and rep.solution == inst.hidden
        assert verify_solution(inst, rep.solution)


def test_ternary_field():
    for seed in range(5):
        inst = instance(3, 4, 6, 2, 1, seed)
        for fn in (es_attack_v1, es_attack_v2):
            rep = fn(inst, SupportGuessConfig(seed=seed))
            assert rep.solved and verify_solution(inst, rep.solution)


def test_r_zero_immediate():
    inst = instance(2, 6, 8, 2, 0, 3)
    rep = es_attack_v1(inst)
    assert rep.solved and rep.trials == 1 and rep.solution.e == (0,) * 8
    assert es_attack_v2(inst).status == "infeasible"


def test_v1_mean_trials_within_3x():
    trials = [es_attack_v1(instance(2, 6, 8, 2, 2, s), SupportGuessConfig(seed=s)).trials for s in range(200)]
    mean = sum(trials) / len(trials)
    assert 16 / 3 <= mean <= 48


def test_v2_normalized_rate_matches_exact_inclusion_probability():
    # pinning z_i = 1 at a position with e_i != 0 asks for e_i^-1 E inside E',
    # a random (r'-1)-space of GF(2)^6 / <1> containing one fixed line: [4,2]/[5,3] = 35/155
    hits = n = 0
    for s in range(40):
        inst = instance(2, 6, 9, 2, 2, s)
        pos = next(i for i, v in enumerate(inst.hidden.e) if v)
        bare = inst.without_solution()
        Hp = extended_parity_check(bare)
        for t in range(50):
            hits += trial_v2(bare, 4, s, t, Hp=Hp, normalize_position=pos) is not None
            n += 1
    p = gaussian_binomial(4, 2, 2) / gaussian_binomial(5, 3, 2)
    assert abs(hits / n - p) <= 3 * (p * (1 - p) / n) ** 0.5


def test_v2_kernel_scan_finds_every_scalar_multiple():
    # the default trial accepts any alpha with alpha E inside E', so it succeeds far more often
    hits = 0
    inst = instance(2, 6, 9, 2, 2, 0)
    bare = inst.without_solution()
    Hp = extended_parity_check(bare)
    for t in range(200):
        hits += trial_v2(bare, 4, 0, t, Hp=Hp) is not None
    assert hits / 200 > 0.5


def test_workers_do_not_change_the_result():
    inst = instance(2, 6, 8, 2, 2, 11)
    one = es_attack_v1(inst, SupportGuessConfig(seed=5, workers=1))
    three = es_attack_v1(inst, SupportGuessConfig(seed=5, workers=3))
    assert (one.solution, one.trials) == (three.solution, three.trials)


def test_trial_is_deterministic():
    inst = instance(2, 6, 8, 2, 2, 2).without_solution()
    assert [trial_v1(inst, 4, 9, t) for t in range(30)] == [trial_v1(inst, 4, 9, t) for t in range(30)]


def test_max_trials_cap():
    inst = instance(2, 6, 8, 2, 2, 6)
    rep = es_attack_v1(inst, SupportGuessConfig(max_trials=0))
    assert rep.status == "failed" and rep.trials == 0
