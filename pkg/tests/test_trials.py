from rankforge.trials import derive_rng, run_trials


def first_multiple_of_seven(t):
    return t if t and t % 7 == 0 else None


def test_derive_rng_is_stable():
    assert derive_rng(1, "a", 2).random() == derive_rng(1, "a", 2).random()
    assert derive_rng(1, "a", 2).random() != derive_rng(1, "a", 3).random()
    assert derive_rng(1, "a", 2).random() != derive_rng(2, "a", 2).random()


def test_run_trials_sequential_and_parallel_agree():
    assert run_trials(first_multiple_of_seven, 100) == (7, 8)
    assert run_trials(first_multiple_of_seven, 100, workers=3, batch=2) == (7, 8)
    assert run_trials(first_multiple_of_seven, 5) == (None, 5)
    assert run_trials(first_multiple_of_seven, 5, workers=2) == (None, 5)
