import math
from dataclasses import replace
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bldrag.comparison import (
    DragSample,
    MissingReynoldsError,
    evaluate,
    figure_table,
    lambda_theta_table,
    prediction_columns,
    sign_test,
    synth_dragset,
)
from bldrag.correlations import LANGLEY, LogSquare, PipeExact, bl_drag_langley, bl_drag_logsq
from bldrag.profile import momentum_thickness, synth_profile
from bldrag.scaling import reconcile_re


def direct_sign_p(n_pos, n_neg):
    n = n_pos + n_neg
    if n == 0:
        return 1.0
    k = min(n_pos, n_neg)
    tail = sum(comb(n, i) for i in range(k + 1)) / 2 ** n
    return min(1.0, 2 * tail)


def logsq_samples(C, n=25, lo=1e5, hi=1e9):
    return [DragSample(cf=bl_drag_logsq(r, C), re_eff=r, source=f"s{i}")
            for i, r in enumerate(np.geomspace(lo, hi, n))]


class TestSignTest:
    @pytest.mark.parametrize("n", range(1, 21))
    def test_one_sided(self, n):
        assert sign_test(n, 0) == pytest.approx(min(1.0, 2 * 2.0 ** -n), rel=1e-12)
        assert sign_test(0, n) == sign_test(n, 0)

    def test_against_binomial_sum(self):
        for n_pos in range(21):
            for n_neg in range(21 - n_pos):
                assert sign_test(n_pos, n_neg) == pytest.approx(direct_sign_p(n_pos, n_neg),
                                                                rel=1e-12)

    def test_empty(self):
        assert sign_test(0, 0) == 1.0


class TestEvaluate:
    def test_self_consistent(self):
        r = evaluate(logsq_samples(0.26), LogSquare(0.26))
        assert all(x == 0.0 for x in r.residuals)
        assert (r.n_pos, r.n_neg) == (0, 0)
        assert r.p_sign == 1.0 and not r.systematic

    def test_ten_positive(self):
        samples = [DragSample(cf=1.1 * bl_drag_logsq(r), re_eff=r, source=str(i))
                   for i, r in enumerate(np.geomspace(1e5, 1e8, 10))]
        r = evaluate(samples, LogSquare())
        assert r.n_pos == 10
        assert r.p_sign == pytest.approx(2 * 2 ** -10, rel=1e-12)
        assert r.systematic

    def test_constant_ratio(self):
        r = evaluate(logsq_samples(0.23), LogSquare(0.26))
        assert np.allclose(r.residuals, 0.23 / 0.26 - 1, rtol=1e-12)
        assert r.residuals[0] == pytest.approx(-0.11538461538461542, rel=1e-12)
        assert r.n_neg == 25 and r.systematic
        assert r.mean_rel == pytest.approx(0.23 / 0.26 - 1)
        assert r.rms_rel == pytest.approx(1 - 0.23 / 0.26)

    def test_balanced_noise_not_systematic(self):
        samples = synth_dragset(0.26, 40, noise_rel=0.03, seed=42)
        r = evaluate(samples, LogSquare(0.26))
        assert r.n_pos + r.n_neg == 40
        assert not r.systematic

    def test_langley_uses_re_theta(self):
        samples = [DragSample(cf=0.002, re_theta=t, source=str(t)) for t in (4e4, 1e5, 4e5)]
        r = evaluate(samples, LANGLEY)
        expected = [0.002 / bl_drag_langley(t)[0] - 1 for t in (4e4, 1e5, 4e5)]
        assert np.allclose(r.residuals, expected, rtol=1e-13)

    def test_missing_field(self):
        samples = [DragSample(cf=0.002, re_eff=1e6, source="a"),
                   DragSample(cf=0.002, re_theta=1e5, source="b")]
        with pytest.raises(MissingReynoldsError) as info:
            evaluate(samples, LANGLEY)
        assert info.value.sources == ["a"]
        with pytest.raises(MissingReynoldsError) as info:
            evaluate(samples, PipeExact())
        assert info.value.sources == ["b"]

    @given(st.permutations(range(15)), st.floats(0.1, 10))
    def test_permutation_and_scale_invariance(self, order, m):
        base = synth_dragset(0.26, 15, noise_rel=0.05, seed=5)
        r0 = evaluate(base, LogSquare(0.26))
        shuffled = [base[i] for i in order]
        r1 = evaluate(shuffled, LogSquare(0.26))
        assert sorted(r1.residuals) == pytest.approx(sorted(r0.residuals))
        assert (r1.n_pos, r1.n_neg, r1.p_sign) == (r0.n_pos, r0.n_neg, r0.p_sign)
        assert r1.rms_rel == pytest.approx(r0.rms_rel, rel=1e-12)
        scaled = [DragSample(cf=m * s.cf, re_eff=s.re_eff, source=s.source) for s in base]
        r2 = evaluate(scaled, LogSquare(0.26 * m))
        assert r2.residuals == pytest.approx(r0.residuals, rel=1e-9, abs=1e-12)

    def test_sample_invariants(self):
        with pytest.raises(ValueError):
            DragSample(cf=0.0, re_eff=1e6)
        with pytest.raises(ValueError):
            DragSample(cf=0.002)


class TestFigureTable:
    def test_observations_only(self):
        rows = figure_table(logsq_samples(0.26, n=5))
        assert len(rows) == 5
        assert set(rows[0]) == {"source", "re_eff", "re_theta", "cf_obs"}

    def test_two_correlations(self):
        samples = [DragSample(cf=0.002, re_eff=re, re_theta=rt, source=str(i))
                   for i, (re, rt) in enumerate([(1e7, 5e4), (1e5, 3e4), (1e6, 4e5)])]
        rows = figure_table(samples, [LogSquare(), LANGLEY])
        assert [r["re_eff"] for r in rows] == [1e5, 1e6, 1e7]
        for r in rows:
            assert r["cf_pred_logsq"] == bl_drag_logsq(r["re_eff"])
            assert r["cf_pred_langley"] == bl_drag_langley(r["re_theta"])[0]

    def test_sorted_by_re_theta_when_re_eff_missing(self):
        samples = [DragSample(cf=0.002, re_theta=t, source=str(t)) for t in (9e4, 3e4, 5e4)]
        rows = figure_table(samples, [LANGLEY])
        assert [r["re_theta"] for r in rows] == [3e4, 5e4, 9e4]

    @given(st.integers(1, 30))
    def test_row_count(self, n):
        samples = synth_dragset(n=n, seed=n)
        assert len(figure_table(samples, [LogSquare(), PipeExact()])) == n

    def test_duplicate_tags_numbered(self):
        assert prediction_columns([LogSquare(0.26), LogSquare(0.23), LANGLEY]) == [
            "cf_pred_logsq1", "cf_pred_logsq2", "cf_pred_langley"]


class TestLambdaTheta:
    def test_ratio(self):
        class P:
            name, U_inf, nu = "x", 10.0, 1.5e-5

        res = replace(reconcile_re(1e4, 1e4), length_scale=0.033)
        rows = lambda_theta_table([P], [res], [(0.0055, 3666.0)])
        assert rows[0].ratio == pytest.approx(6.0)

    def test_zero_theta(self):
        class P:
            name, U_inf, nu = "flat", 10.0, 1.5e-5

        rows = lambda_theta_table([P], [reconcile_re(1e4, 1e4)], [(0.0, 0.0)])
        assert rows[0].ratio is None
        assert rows[0].length_scale == pytest.approx(1e4 * 1.5e-5 / 10)

    def test_synthetic_pipeline(self):
        p = synth_profile(math.exp(10), U=10.0, nu=1.5e-5)
        res = reconcile_re(math.exp(10), math.exp(10))
        theta = momentum_thickness(p)
        (row,) = lambda_theta_table([p], [res], [theta])
        assert row.length_scale == pytest.approx(0.0330397, rel=1e-6)
        assert row.theta == theta[0]
        assert row.ratio == pytest.approx(row.length_scale / theta[0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            lambda_theta_table([], [reconcile_re(10, 10)], [])


class TestSynthDragset:
    def test_deterministic(self):
        a = synth_dragset(0.26, 40, noise_rel=0.03, seed=42)
        b = synth_dragset(0.26, 40, noise_rel=0.03, seed=42)
        assert a == b

    def test_range_and_noise(self):
        s = synth_dragset(0.26, 200, 1e5, 1e8, 0.03, seed=1)
        re = np.array([x.re_eff for x in s])
        assert re.min() >= 1e5 and re.max() <= 1e8
        rel = np.array([x.cf / bl_drag_logsq(x.re_eff) - 1 for x in s])
        assert np.all(np.abs(rel) <= 0.03 + 1e-12)

    def test_noiseless_exact(self):
        s = synth_dragset(0.26, 10, noise_rel=0.0, seed=0)
        assert all(x.cf == bl_drag_logsq(x.re_eff, 0.26) for x in s)

    def test_domain(self):
        with pytest.raises(ValueError):
            synth_dragset(re_lo=1e8, re_hi=1e5)
