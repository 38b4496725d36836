import math

import numpy as np
import pytest

import oracles
from weightseq import (
    ExpPower,
    FromSequence,
    HorizonExceeded,
    InvalidParameter,
    Normalized,
    OmegaEvaluator,
    Product,
    Status,
    TableWeight,
    Weight,
    WeightFlags,
    assoc_sequence,
    check_mg,
    check_om1_char,
    check_weight_condition,
    check_weight_relation,
    essentiality_gap,
    gevrey,
    normalize,
    qgevrey,
)
from weightseq.errors import MaximizerAtBracketCap
from weightseq.weightfn import (
    associated_weight_bracket,
    dilated_gap_bound,
    has_moderate_growth,
    is_convex,
    is_normalized,
    monomial_norm,
    p_function,
    p_function_log,
)


class SlowDecay(Weight):
    """v(t) = 1 / (1 + t): not rapidly decreasing."""

    def _logv(self, s):
        return -np.logaddexp(0.0, s)


def exp_assoc(j):
    return j * math.log(j) - j if j else 0.0


class TestEvaluation:
    def test_exppower(self):
        v = ExpPower(2.0, 0.5)
        assert v.logv(4.0) == pytest.approx(-4.0)
        assert v.logv(0.0) == 0.0

    def test_from_sequence_modes(self):
        M = gevrey(1)
        E = OmegaEvaluator(M)
        assert FromSequence(M).logv(3.0) == pytest.approx(-math.log(4.5))
        assert FromSequence(M, "dilate", 2.0).logv(1.5) == pytest.approx(-math.log(4.5))
        assert FromSequence(M, "power", 3.0).logv(3.0) == pytest.approx(-3 * E.omega(3.0))

    def test_product(self):
        u, w = ExpPower(1, 1), ExpPower(1, 0.5)
        assert Product(u, w).logv(4.0) == pytest.approx(-6.0)

    def test_table_weight(self):
        v = TableWeight([0.5, 1.0, 4.0], [0.0, -1.0, -3.0])
        assert v.logv(2.0) == pytest.approx(-2.0)
        with pytest.raises(InvalidParameter):
            TableWeight([1.0, 2.0], [0.0, 1.0])

    def test_domain_end(self):
        v = FromSequence(gevrey(1, 16))
        with pytest.raises(HorizonExceeded):
            v.logv(1e6)

    def test_flags_override(self):
        v = ExpPower(1, 1).with_flags(moderate_growth=False)
        assert v.flags.moderate_growth is False
        assert ExpPower(1, 1).flags.moderate_growth is True
        assert isinstance(v.flags, WeightFlags)


class TestNormalize:
    def test_exp(self):
        n = normalize(ExpPower(1, 1))
        assert np.allclose(n.logv([0.2, 1.0, 2.0, 3.5]), [0.0, 0.0, -1.0, -2.5])
        assert n.witness == pytest.approx(math.e)
        assert is_normalized(n)
        assert not is_normalized(ExpPower(1, 1))

    def test_already_normalized(self):
        v = FromSequence(gevrey(1))
        n = normalize(v)
        t = np.array([1.0, 2.0, 10.0, 100.0])
        assert np.allclose(n.logv(t), v.logv(t))

    def test_monotone_and_bounded(self):
        n = Normalized(ExpPower(0.3, 0.7))
        s = np.linspace(-5, 10, 200)
        vals = n.logv_log(s)
        assert np.all(np.diff(vals) <= 0) and np.all(vals <= 0)


class TestAssociatedSequence:
    def test_exponential(self):
        M = assoc_sequence(ExpPower(1, 1), 64)
        assert M.logvals[2] == pytest.approx(2 * math.log(2 / math.e), abs=1e-12)
        j = np.arange(65)
        assert np.max(np.abs(M.logvals - [exp_assoc(k) for k in j])) <= 1e-8

    def test_against_grid_oracle(self):
        v = ExpPower(0.5, 1.5)
        M = assoc_sequence(v, 40)
        for j in (0, 1, 5, 17, 40):
            assert M.logvals[j] == pytest.approx(oracles.assoc_value(v.logv_log, j), abs=1e-8)

    def test_roundtrip(self, builtins):
        for M in builtins.values():
            A = assoc_sequence(FromSequence(M))
            assert np.max(np.abs(A.logvals - M.logvals[: A.horizon + 1])) <= 1e-8

    def test_dilation_law(self):
        M = gevrey(2)
        A = assoc_sequence(FromSequence(M, "dilate", 3.0))
        j = np.arange(A.horizon + 1)
        assert np.max(np.abs(A.logvals - (M.logvals[j] - j * math.log(3.0)))) <= 1e-8

    def test_lc_for_normalized_convex(self):
        assert assoc_sequence(normalize(ExpPower(1, 1)), 64).is_lc

    def test_slow_weight_hits_cap(self):
        assert monomial_norm(SlowDecay(), 1) == pytest.approx(0.0, abs=1e-9)
        with pytest.raises(MaximizerAtBracketCap):
            monomial_norm(SlowDecay(), 2)

    def test_memoized(self):
        v = ExpPower(1, 1)
        assert assoc_sequence(v, 32) is assoc_sequence(v, 32)

    def test_monomial_norm(self):
        assert monomial_norm(FromSequence(gevrey(1)), 3) == pytest.approx(math.log(6))
        assert monomial_norm(normalize(ExpPower(1, 1)), 0) == 0.0
        assert monomial_norm(ExpPower(1, 1), 1) == pytest.approx(-1.0)

    def test_p_function(self):
        # derived: brute-force sup over j <= 64 of j - (j log j - j)
        assert p_function(ExpPower(1, 1), math.e) == pytest.approx(2.704163133995671, abs=1e-9)
        lv = [exp_assoc(j) for j in range(65)]
        assert oracles.omega(lv, 1.0) == pytest.approx(2.704163133995671, abs=1e-12)

    def test_p_function_for_sequence_weight(self):
        M = gevrey(1)
        v = FromSequence(M)
        E = OmegaEvaluator(M)
        s = np.linspace(-2, 5, 20)
        assert np.allclose(p_function_log(v, s), E.omega_log(s), atol=1e-8)
        assert p_function_log(v, -1.0) == 0.0

    def test_p_below_inverse_weight(self):
        v = ExpPower(1, 1)
        s = np.linspace(-3, 4, 40)
        assert np.all(p_function_log(v, s) <= -v.logv_log(s) + 1e-9)

    def test_sandwich_for_convex_weight(self):
        v = ExpPower(1, 1)
        M = assoc_sequence(v)
        E = OmegaEvaluator(M)
        s = np.linspace(-3, 5, 64)
        om_v, om_m = -v.logv_log(s), E.omega_log(s)
        assert np.all(om_v >= om_m - 1e-9)
        _, verdict = essentiality_gap(v)
        log_A = math.log(verdict.witness_constants["A"])
        assert np.all(2 * om_m + log_A >= om_v - 1e-9)


class TestEssentiality:
    def test_sequence_weight_is_essential(self):
        curve, verdict = essentiality_gap(FromSequence(gevrey(1)))
        assert np.max(np.abs(curve.values)) <= 1e-6
        assert verdict.holds

    def test_half_power_bound(self):
        u = ExpPower(1, 1)
        curve, verdict = essentiality_gap(u)
        log_A = math.log(verdict.witness_constants["A"])
        assert np.all(curve.values <= -0.5 * u.logv_log(curve.log_t) + log_A + 1e-9)
        assert verdict.details["lower_bound_ok"]
        assert np.all(curve.values >= -1e-9)

    def test_dilated_bound(self):
        assert math.isfinite(dilated_gap_bound(ExpPower(1, 1), 2.0))

    def test_bracket(self):
        v = FromSequence(gevrey(1))
        b = associated_weight_bracket(v)
        t = np.array([0.5, 2.0, 7.0, 40.0])
        assert np.allclose(b.upper.logv(t), v.logv(t), atol=1e-8)
        assert np.allclose(b.upper.logv(t) - b.lower.logv(t), math.log(6))

    def test_bracket_upper_dominates(self):
        u = ExpPower(1, 0.5)
        b = associated_weight_bracket(u)
        s = np.linspace(-3, 6, 30)
        assert np.all(b.upper.logv_log(s) >= u.logv_log(s) - 1e-9)


class TestRelations:
    def test_plain_matches_strong_domination(self):
        u, w = FromSequence(gevrey(2)), FromSequence(gevrey(1))
        r = check_weight_relation(u, w, "plain")
        assert r.holds
        assert not check_weight_relation(w, u, "plain").holds

    def test_exponential(self):
        u, w = FromSequence(gevrey(2)), FromSequence(gevrey(1))
        r = check_weight_relation(u, w, "exponential")
        assert r.holds and r.witness_constants["c"] == 1.0

    def test_self(self):
        u = ExpPower(1, 1)
        for kind in ("plain", "dilatation", "exponential"):
            r = check_weight_relation(u, u, kind)
            assert r.holds
            assert r.witness_constants["c"] == 1.0
            assert r.witness_constants["bound"] == pytest.approx(0.0, abs=1e-12)

    def test_unknown_kind(self):
        with pytest.raises(InvalidParameter):
            check_weight_relation(ExpPower(1, 1), ExpPower(1, 1), "sideways")


class TestConditions:
    def test_om6_exp(self):
        r = check_weight_condition(ExpPower(1, 1), "om6")
        assert r.holds and r.witness_constants["H"] == 2.0

    def test_om6_bridge(self, builtins):
        for M in builtins.values():
            r = check_weight_condition(FromSequence(M), "om6")
            assert r.holds == check_mg(M).holds
            assert r.details["cross_check_agrees"]

    def test_om1_bridge(self, builtins):
        for M in builtins.values():
            r = check_weight_condition(FromSequence(M), "om1")
            assert r.holds == check_om1_char(M).holds
            assert r.details["cross_check_agrees"]

    def test_om3_and_convexity(self):
        assert check_weight_condition(ExpPower(1, 1), "om3").holds
        assert not check_weight_condition(SlowDecay(), "om3", cross_check=False).holds
        assert check_weight_condition(FromSequence(gevrey(2)), "convexity").holds
        assert is_convex(ExpPower(1, 2))
        bumpy = TableWeight([0.5, 1, 2, 4, 8], [0, -1, -1.2, -5, -5.5])
        assert not is_convex(bumpy)

    def test_moderate_growth_helper(self):
        assert has_moderate_growth(ExpPower(1, 1))
        assert not has_moderate_growth(FromSequence(qgevrey(2)))


class TestSystemsOfWeights:
    def test_dilated_weights_decrease(self):
        M = gevrey(1)
        s = np.linspace(-3, 4, 50)
        for c, d in ((1.0, 2.0), (2.0, 8.0)):
            assert np.all(FromSequence(M, "dilate", d).logv_log(s) <= FromSequence(M, "dilate", c).logv_log(s) + 1e-12)

    def test_power_weights_separate(self):
        M = gevrey(1)
        s = np.linspace(0, 6, 50)
        gap = FromSequence(M, "power", 1.0).logv_log(s) - FromSequence(M, "power", 2.0).logv_log(s)
        assert np.all(np.diff(gap) >= -1e-12) and gap[-1] > 50
        assert gap == pytest.approx(OmegaEvaluator(M).omega_log(s))
