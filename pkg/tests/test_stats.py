import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

import oracles
from citevalid.stats import (
    average_ranks,
    bonferroni_alpha,
    effect_class,
    fisher_ci,
    normality_test,
    p_value_spearman,
    pairwise_complete,
    permutation_p_value,
    spearman,
    summary_stats,
    t_cdf,
)


class TestSummary:
    def test_small(self):
        s = summary_stats([0, 2, 4])
        assert (s.n, s.mean, s.sd, s.min, s.max) == (3, 2.0, 2.0, 0.0, 4.0)

    def test_single_value_has_no_sd(self):
        s = summary_stats([5])
        assert s.n == 1 and s.mean == 5.0 and s.sd is None

    def test_empty(self):
        with pytest.raises(ValueError):
            summary_stats([])

    def test_two_pass_oracle(self):
        rng = random.Random(3)
        xs = [rng.expovariate(0.1) for _ in range(125)]
        s = summary_stats(xs)
        n, mean, sd, lo, hi = oracles.two_pass_summary(xs)
        assert s.n == n and s.min == lo and s.max == hi
        assert s.mean == pytest.approx(mean, rel=1e-13)
        assert s.sd == pytest.approx(sd, rel=1e-12)
        assert s.min <= s.mean <= s.max


class TestRanks:
    def test_examples(self):
        assert average_ranks([10, 20, 30]).tolist() == [1, 2, 3]
        assert average_ranks([5, 5, 7]).tolist() == [1.5, 1.5, 3]
        assert average_ranks([3, 1, 3, 3, 0]).tolist() == [4, 2, 4, 4, 1]

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=50))
    def test_against_counting_and_scipy(self, xs):
        r = average_ranks(xs)
        assert r.tolist() == oracles.midranks(xs)
        np.testing.assert_array_equal(r, sps.rankdata(xs))
        assert r.sum() == len(xs) * (len(xs) + 1) / 2


class TestSpearman:
    def test_perfect(self):
        assert spearman([1, 2, 3], [10, 20, 30]) == 1.0
        assert spearman([1, 2, 3], [3, 2, 1]) == -1.0

    def test_classic_formula_without_ties(self):
        rng = random.Random(20)
        x = rng.sample(range(1000), 20)
        y = rng.sample(range(1000), 20)
        assert abs(spearman(x, y) - oracles.spearman_classic(x, y)) < 1e-12

    def test_with_ties_matches_midrank_pearson_and_scipy(self):
        rng = random.Random(5)
        x = [rng.randint(0, 4) for _ in range(60)]
        y = [rng.choice([6, 7, 8, 10, 13]) for _ in range(60)]
        assert spearman(x, y) == pytest.approx(oracles.spearman(x, y), abs=1e-13)
        assert spearman(x, y) == pytest.approx(sps.spearmanr(x, y)[0], abs=1e-13)

    @pytest.mark.parametrize(
        "x, y",
        [([1, 2], [1, 2]), ([1, 2, 3], [1, 2]), ([1, 1, 1], [1, 2, 3]), ([1, 2, 3], [4, 4, 4])],
    )
    def test_errors(self, x, y):
        with pytest.raises(ValueError):
            spearman(x, y)

    @settings(deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), min_size=3, max_size=40))
    def test_symmetric_bounded_and_rank_invariant(self, pairs):
        x = [a for a, _ in pairs]
        y = [b for _, b in pairs]
        if len(set(x)) < 2 or len(set(y)) < 2:
            return
        r = spearman(x, y)
        assert -1.0 <= r <= 1.0
        assert spearman(y, x) == r
        fx = [math.exp(v / 3.0) for v in x]
        gy = [v**3 + 7 for v in y]
        assert spearman(fx, gy) == r


def test_pairwise_complete():
    assert pairwise_complete([1, None, 3], [4, 5, 6]) == ([1, 3], [4, 6])
    assert pairwise_complete([1, 2], [3, 4]) == ([1, 2], [3, 4])
    assert pairwise_complete([None, None], [1, 2]) == ([], [])
    assert pairwise_complete([1.0, float("nan")], [1, 2]) == ([1.0], [1])
    with pytest.raises(ValueError):
        pairwise_complete([1], [1, 2])


class TestPValue:
    def test_examples(self):
        assert p_value_spearman(0.0, 10) == 1.0
        assert p_value_spearman(1.0, 10) == 0.0
        assert p_value_spearman(-1.0, 10) == 0.0
        # t = 3.182 with 18 df; value frozen from quadrature of the t density
        assert p_value_spearman(0.6, 20) == pytest.approx(0.005162925673675822, abs=1e-10)
        assert round(p_value_spearman(0.6, 20), 4) == 0.0052

    def test_domain(self):
        with pytest.raises(ValueError):
            p_value_spearman(0.5, 2)
        with pytest.raises(ValueError):
            p_value_spearman(1.2, 10)

    @pytest.mark.parametrize("r, n", [(0.3, 30), (-0.45, 12), (0.05, 200), (0.9, 8)])
    def test_against_quadrature(self, r, n):
        assert p_value_spearman(r, n) == pytest.approx(oracles.p_two_sided(r, n), abs=1e-10)

    def test_permutation_mode_agrees_roughly(self):
        x = [1, 2, 3, 4, 5, 6, 7, 8]
        y = [2, 1, 4, 3, 6, 5, 8, 7]
        exact = permutation_p_value(x, y)
        approx = p_value_spearman(spearman(x, y), len(x))
        assert 0 < exact < 0.05 and 0 < approx < 0.05
        assert permutation_p_value([1, 2, 3, 4, 5], [1, 2, 3, 4, 5]) == pytest.approx(2 / 120)
        with pytest.raises(ValueError):
            permutation_p_value(list(range(11)), list(range(11)))


@pytest.mark.parametrize("df", [3, 10, 120])
def test_t_cdf_against_quadrature(df):
    for t in np.linspace(-6, 6, 50):
        assert abs(t_cdf(t, df) - oracles.t_cdf(t, df)) < 1e-8


class TestFisher:
    def test_zero_correlation(self):
        lo, hi = fisher_ci(0.0, 103, 0.95)
        assert lo == -hi
        assert hi == pytest.approx(0.1935246647916799, abs=1e-9)  # tanh(1.959964 / 10)

    def test_reported_example(self):
        lo, hi = fisher_ci(0.447, 122, 0.95)
        elo, ehi = oracles.fisher_ci_hp(0.447, 122, 0.95)
        assert abs(lo - elo) < 1e-6 and abs(hi - ehi) < 1e-6
        assert (round(lo, 3), round(hi, 3)) == (0.292, 0.579)

    def test_wider_at_higher_level(self):
        lo95, hi95 = fisher_ci(0.4, 50, 0.95)
        lo99, hi99 = fisher_ci(0.4, 50, 0.99)
        assert lo99 < lo95 and hi99 > hi95

    @pytest.mark.parametrize("r, n, level", [(1.0, 10, 0.95), (-1.0, 10, 0.95), (0.2, 3, 0.95),
                                             (0.2, 10, 1.0), (0.2, 10, 0.0)])
    def test_errors(self, r, n, level):
        with pytest.raises(ValueError):
            fisher_ci(r, n, level)

    @given(st.floats(-0.99, 0.99), st.integers(4, 500))
    def test_contains_r_and_narrows(self, r, n):
        lo, hi = fisher_ci(r, n)
        assert lo <= r <= hi
        lo2, hi2 = fisher_ci(r, n + 1)
        assert hi2 - lo2 < hi - lo


class TestBonferroni:
    def test_figure_value(self):
        a = bonferroni_alpha(0.05, 7)
        assert abs(a - 0.0071428571) < 1e-10
        assert f"{a:.3f}" == "0.007"

    def test_simple(self):
        assert bonferroni_alpha(0.05, 1) == 0.05
        assert bonferroni_alpha(0.01, 4) == 0.0025

    @pytest.mark.parametrize("alpha, m", [(0.0, 3), (1.0, 3), (0.05, 0), (0.05, 2.5)])
    def test_domain(self, alpha, m):
        with pytest.raises(ValueError):
            bonferroni_alpha(alpha, m)


class TestEffect:
    @pytest.mark.parametrize(
        "r, label",
        [(0.1, "small"), (0.3, "medium"), (0.5, "large"), (0.447, "medium"), (-0.6, "large"),
         (0.0999, "negligible"), (0.0, "negligible"), (-1.0, "large")],
    )
    def test_labels(self, r, label):
        assert effect_class(r) == label

    def test_domain(self):
        with pytest.raises(ValueError):
            effect_class(1.01)

    @given(st.floats(-1, 1), st.floats(-1, 1))
    def test_monotone_and_sign_free(self, a, b):
        order = ["negligible", "small", "medium", "large"]
        assert effect_class(a) == effect_class(-a)
        if abs(a) <= abs(b):
            assert order.index(effect_class(a)) <= order.index(effect_class(b))


class TestNormality:
    def test_normal_sample_passes(self):
        x = np.random.default_rng(2024).standard_normal(5000)
        assert normality_test(x).p_omnibus > 0.01

    def test_exponential_sample_fails(self):
        x = np.random.default_rng(2024).exponential(size=5000)
        assert normality_test(x).p_omnibus < 0.001

    @pytest.mark.filterwarnings("ignore:`kurtosistest` p-value may be inaccurate")
    @pytest.mark.parametrize("seed", range(6))
    def test_matches_scipy(self, seed):
        rng = np.random.default_rng(seed)
        n = [8, 12, 20, 60, 125, 1000][seed]
        x = rng.gamma(2.0, size=n)
        res = normality_test(x)
        zs, ps = sps.skewtest(x)
        zk, pk = sps.kurtosistest(x)
        k2, pk2 = sps.normaltest(x)
        assert res.skew_z == pytest.approx(zs, abs=1e-10)
        assert res.kurt_z == pytest.approx(zk, abs=1e-10)
        assert res.p_skew == pytest.approx(ps, abs=1e-12)
        assert res.p_kurt == pytest.approx(pk, abs=1e-12)
        assert res.omnibus_k2 == pytest.approx(k2, abs=1e-9)
        assert res.p_omnibus == pytest.approx(pk2, abs=1e-12)

    @given(st.lists(st.floats(-1e3, 1e3), min_size=8, max_size=60))
    def test_omnibus_identity(self, xs):
        if np.ptp(xs) < 1e-6:
            return
        res = normality_test(xs)
        assert res.omnibus_k2 == res.skew_z**2 + res.kurt_z**2

    def test_symmetric_sample_has_zero_skew_z(self):
        res = normality_test([-4, -3, -2, -1, 1, 2, 3, 4])
        assert res.skew_z == 0.0 and res.p_skew == 1.0

    def test_errors(self):
        with pytest.raises(ValueError):
            normality_test([1, 2, 3, 4, 5, 6, 7])
        with pytest.raises(ValueError):
            normality_test([3.0] * 20)
