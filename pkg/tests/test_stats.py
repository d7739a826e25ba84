import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from eventf1.stats import (
    bootstrap_ci,
    combined_significance,
    paired_differences,
    permutation_test,
)

cents = st.integers(-100, 100).map(lambda c: c / 100)


def test_paired_differences_round_first():
    assert paired_differences([0.004], [0.001]).values.tolist() == [0.0]
    assert paired_differences([0.46], [0.10]).values.tolist() == [0.36]
    assert not paired_differences([0.3, 0.7], [0.3, 0.7]).values.any()


def test_paired_differences_alignment():
    d = paired_differences({"b": 0.5, "a": 0.2}, {"a": 0.1, "b": 0.5})
    assert d.subject_ids == ("a", "b")
    assert d.values.tolist() == [0.1, 0.0]
    with pytest.raises(ValueError):
        paired_differences({"a": 0.1}, {"b": 0.1})
    with pytest.raises(ValueError):
        paired_differences([0.1, 0.2], [0.1])


def test_permutation_floor_n9():
    res = permutation_test([0.3] * 9)
    assert res.exhaustive and res.b_used == 512
    assert abs(res.p_value - 2 / 512) < 1e-12


def test_permutation_all_zero():
    assert permutation_test([0.0] * 5).p_value == 1.0
    assert permutation_test([0.0] * 20).p_value == 1.0


def test_permutation_small_enumeration():
    # every sign vector of [0.2, 0.2, -0.2] has |sum| >= 0.2, so nothing is more extreme than observed
    assert permutation_test([0.2, 0.2, -0.2]).p_value == 1.0
    assert permutation_test([0.3, 0.1, 0.2]).p_value == pytest.approx(float(oracles.sign_flip_p([0.3, 0.1, 0.2])))


@settings(max_examples=60)
@given(st.lists(cents, min_size=1, max_size=9))
def test_permutation_exhaustive_matches_oracle(d):
    res = permutation_test(d)
    assert res.exhaustive
    assert res.p_value == pytest.approx(float(oracles.sign_flip_p(d)), abs=1e-12)


@settings(max_examples=60)
@given(st.lists(cents, min_size=1, max_size=16))
def test_permutation_sign_invariance(d):
    a = permutation_test(d, seed=4).p_value
    b = permutation_test([-x for x in d], seed=4).p_value
    assert a == b
    assert 0 < a <= 1


@pytest.mark.parametrize("n", [1, 2, 5, 9, 12])
def test_equal_differences_give_two_over_2n(n):
    assert permutation_test([0.07] * n).p_value == pytest.approx(2 / 2**n, abs=1e-15)


def test_sampled_branch_uses_add_one_estimator():
    d = [0.4] * 15  # 2**15 > cap
    res = permutation_test(d, cap=1000, seed=9)
    assert not res.exhaustive and res.b_used == 1000
    # only the all-plus and all-minus vectors reach the observed value
    count = round(res.p_value * 1001) - 1
    assert 0 <= count <= 3
    assert res.p_value == (1 + count) / 1001


def test_sampled_branch_deterministic_and_close_to_exact():
    rng = np.random.default_rng(0)
    d = np.round(rng.normal(0.02, 0.1, size=14), 2)
    exact = permutation_test(d, cap=2**14).p_value
    a = permutation_test(d, cap=10_000, seed=3)
    b = permutation_test(d, cap=10_000, seed=3)
    assert a == b
    assert abs(a.p_value - exact) < 4 * math.sqrt(exact * (1 - exact) / 10_000) + 1e-3


def test_bootstrap_constant():
    ci = bootstrap_ci([0.36] * 7, seed=1)
    assert (ci.lo, ci.hi) == (0.36, 0.36)


def test_bootstrap_single_subject():
    ci = bootstrap_ci([0.5], cap=10_000)
    assert ci.b_used == 1
    assert (ci.lo, ci.hi) == (0.5, 0.5)


def test_bootstrap_resample_count():
    assert bootstrap_ci([0.1, 0.2, 0.3]).b_used == math.comb(5, 3)
    assert bootstrap_ci(list(np.linspace(0, 1, 11))).b_used == 10_000


def test_bootstrap_positive_effect_has_positive_lower_bound():
    rng = np.random.default_rng(2)
    d = np.round(0.72 + rng.normal(0, 0.12, size=11), 2)
    ci = bootstrap_ci(d, seed=0)
    assert ci.lo > 0 and ci.lo <= d.mean() <= ci.hi


@settings(max_examples=40)
@given(st.lists(cents, min_size=1, max_size=12), st.integers(0, 2**32))
def test_bootstrap_within_data_range(d, seed):
    ci = bootstrap_ci(d, cap=500, seed=seed)
    assert min(d) <= ci.lo <= ci.hi <= max(d)


def test_combined_both_significant():
    model = [0.5, 0.6, 0.55, 0.7, 0.65, 0.62, 0.58]
    random = [0.1, 0.05, 0.12, 0.0, 0.03, 0.08, 0.02]
    cell = combined_significance(model, random)
    # n = 7: both tests hit the floor 2/128
    assert cell.p_reported == pytest.approx(2 / 128)
    assert cell.stars == "*"
    assert not cell.fail_random and not cell.fail_null
    assert cell.degenerate == "none"
    assert cell.ci_vs_random.lo > 0


def test_combined_two_stars_at_n8():
    cell = combined_significance([0.3] * 8, [0.05] * 8)
    assert cell.p_reported == pytest.approx(2 / 256)
    assert cell.stars == "**"


def test_combined_all_zero_model():
    cell = combined_significance([0.0, 0.001, 0.004], [0.02, 0.0, 0.01])
    assert cell.degenerate == "all_zero"
    assert cell.p_reported == 1.0
    assert cell.fail_random and cell.fail_null and cell.stars == ""


def test_combined_all_one_model_and_random():
    cell = combined_significance([1.0] * 9, [0.999] * 9)
    assert cell.degenerate == "all_one"
    assert cell.fail_random and not cell.fail_null
    assert cell.p_reported == 1.0
    assert (cell.ci_vs_random.lo, cell.ci_vs_random.hi) == (0.0, 0.0)


def test_model_worse_than_random_is_not_significant():
    cell = combined_significance([0.1] * 9, [0.6] * 9)
    assert cell.p_random < 0.05
    assert cell.fail_random and cell.stars == ""


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=14), st.integers(0, 100))
def test_stars_imply_both_sides_significant(rows, seed):
    model = [a for a, _ in rows]
    random = [b for _, b in rows]
    cell = combined_significance(model, random, seed=seed, cap=2000)
    if cell.stars:
        assert cell.p_reported < 0.05 and cell.p_random < 0.05 and cell.p_null < 0.05
        assert not cell.fail_random and not cell.fail_null
    again = combined_significance(model, random, seed=seed, cap=2000)
    assert again == cell
