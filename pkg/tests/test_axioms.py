import dataclasses

import numpy as np
import pytest

import oracles
from ebundles.axioms import (
    AxiomReport,
    DominancePair,
    GeneratorConfig,
    Measure,
    RelationKind,
    VerificationError,
    check_global_impact,
    check_impact_bundle,
    check_impact_measure,
    check_strong_impact,
    e_measure,
    eta_measure,
    eta_theta,
    fixture_alt1,
    fixture_alt2,
    fixture_global,
    generate_pairs,
    i_measure,
    n_measure,
    n_theta,
    pseudo_bundle_n,
    verify_pair,
)
from ebundles.bundles import E_BUNDLE, H_BUNDLE, I_BUNDLE, MU_BUNDLE, e_theta, i_bundle
from ebundles.functions import (
    CumulativeOrder,
    InputError,
    PiecewiseLinearFn,
    compare,
    cumulative_dominates,
)


@pytest.fixture(scope="module")
def small_pairs():
    return generate_pairs(GeneratorConfig(seed=5, count=15))


class TestFixtureGlobal:
    def test_equal_excess_areas(self):
        fx = fixture_global()
        e_lo = e_theta(fx.pair.lower, fx.theta)
        e_up = e_theta(fx.pair.upper, fx.theta)
        assert abs(e_lo - 1.0) <= 1e-12
        assert abs(e_up - 1.0) <= 1e-12
        assert abs(e_lo - e_up) <= 1e-12

    def test_cumulative_strictly_precedes(self):
        fx = fixture_global()
        v = cumulative_dominates(fx.pair.lower, fx.pair.upper)
        assert v.order is CumulativeOrder.PRECEDES
        # functions differ although cumulative totals meet at x = 1 and stay
        # together (identical suffix knots give bitwise equal values there)
        assert not compare(fx.pair.upper, fx.pair.lower).equal_on_prefix
        for x in (1.0, 1.3, 1.7, 2.0):
            assert fx.pair.upper.value(x) == fx.pair.lower.value(x)

    def test_crossing_totals_equal_at_level_rank(self):
        fx = fixture_global()
        assert i_bundle(fx.pair.upper, 1.0) == pytest.approx(2.0, abs=1e-12)
        assert i_bundle(fx.pair.lower, 1.0) == pytest.approx(2.0, abs=1e-12)

    def test_values_against_oracle(self):
        fx = fixture_global()
        for f in (fx.pair.upper, fx.pair.lower):
            assert e_theta(f, 1.0) == pytest.approx(
                oracles.oracle_excess_area(f, 1.0, panels=10**5), rel=1e-6
            )


class TestFixtureAlt1:
    def test_frozen_values(self):
        fx = fixture_alt1()
        up, lo = fx.pair.upper, fx.pair.lower
        assert up.inverse(1.0) == 0.9
        assert lo.inverse(1.0) == 0.5
        assert n_theta(lo, 1.0) == pytest.approx(0.5, abs=1e-12)
        assert n_theta(up, 1.0) == pytest.approx(0.257 / 0.9, abs=1e-12)
        # the excess area itself still grows: 0.257 > 0.25
        assert e_theta(up, 1.0) == pytest.approx(0.257, abs=1e-12)
        assert e_theta(lo, 1.0) == pytest.approx(0.25, abs=1e-12)

    def test_dominance_shape(self):
        fx = fixture_alt1()
        v = compare(fx.pair.upper, fx.pair.lower, a=1.0, grid_n=10_000)
        assert v.geq_everywhere and v.strict_on_prefix
        assert v.min_gap == pytest.approx(0.01, abs=1e-12)

    def test_ordering_inverts(self):
        fx = fixture_alt1()
        assert n_theta(fx.pair.upper, 1.0) < n_theta(fx.pair.lower, 1.0)


class TestFixtureAlt2:
    def test_frozen_values(self):
        fx = fixture_alt2()
        assert eta_theta(fx.pair.lower, 0.5) == 0.1875  # 3 T^2 / 16 at T = 1
        assert eta_theta(fx.pair.upper, 0.5) == 0.125  # T^2 / 8

    def test_dominance_shape(self):
        fx = fixture_alt2()
        v = compare(fx.pair.upper, fx.pair.lower, grid_n=10_000)
        assert v.geq_everywhere
        assert eta_theta(fx.pair.lower, fx.theta) > eta_theta(fx.pair.upper, fx.theta)

    def test_riemann_oracle_agreement(self):
        fx = fixture_alt2()
        for f in (fx.pair.upper, fx.pair.lower):
            got = f.cumulative(0.5)
            assert got == pytest.approx(oracles.oracle_cumulative(f, 0.5, 10**5), rel=1e-6)


class TestAlternativeScores:
    def test_n_by_hand(self):
        z = PiecewiseLinearFn.from_pairs([(0, 2), (1, 0)])
        assert n_theta(z, 1.0) == pytest.approx(0.5, abs=1e-12)  # 0.25 / 0.5

    def test_n_at_bottom_level(self):
        z = PiecewiseLinearFn.from_pairs([(0, 2), (1, 0)])
        # full-domain average of the excess: e_0 / T = 1 / 1
        assert n_theta(z, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_n_at_peak_guard(self):
        z = PiecewiseLinearFn.from_pairs([(0, 2), (1, 0)])
        with pytest.raises(InputError):
            n_theta(z, 2.0)

    def test_eta_by_hand(self):
        y = PiecewiseLinearFn.from_pairs([(0, 1), (1, 0)])
        assert eta_theta(y, 0.5) == 0.125  # T^2 / 8

    def test_eta_at_zero(self):
        y = PiecewiseLinearFn.from_pairs([(0, 1), (1, 0)])
        assert eta_theta(y, 0.0) == 0.0

    def test_eta_domain(self):
        y = PiecewiseLinearFn.from_pairs([(0, 1), (1, 0)])
        with pytest.raises(InputError):
            eta_theta(y, 1.5)


class TestVerifyPair:
    def test_bad_geq_claim(self):
        up = PiecewiseLinearFn.from_pairs([(0, 1), (1, 0.5)])
        lo = PiecewiseLinearFn.from_pairs([(0, 2), (1, 0)])
        with pytest.raises(VerificationError):
            verify_pair(DominancePair(up, lo, RelationKind.GEQ_ALL))

    def test_missing_prefix_end(self):
        up = PiecewiseLinearFn.from_pairs([(0, 2), (1, 1)])
        lo = PiecewiseLinearFn.from_pairs([(0, 1), (1, 0)])
        with pytest.raises(InputError):
            verify_pair(DominancePair(up, lo, RelationKind.STRICT_ON_PREFIX))

    def test_unverified_pairs_rejected_by_checks(self):
        up = PiecewiseLinearFn.from_pairs([(0, 2), (1, 1)])
        lo = PiecewiseLinearFn.from_pairs([(0, 1), (1, 0)])
        pair = DominancePair(up, lo, RelationKind.GEQ_ALL)
        with pytest.raises(InputError):
            check_impact_bundle(E_BUNDLE, [pair])

    def test_cumulative_relation_rejects_equal_functions(self):
        f = PiecewiseLinearFn.from_pairs([(0, 2), (1, 1)])
        with pytest.raises(VerificationError):
            verify_pair(DominancePair(f, f, RelationKind.CUMULATIVE_PREC))


class TestImpactBundleChecks:
    @pytest.mark.parametrize("bundle", [E_BUNDLE, H_BUNDLE, MU_BUNDLE, I_BUNDLE],
                             ids=["e", "h", "mu", "i"])
    def test_built_in_bundles_pass(self, bundle, small_pairs):
        reports = check_impact_bundle(bundle, small_pairs)
        for key in ("AX.1", "AX.2", "AX.3", "AX.4"):
            assert reports[key].passed, reports[key]
        assert reports["AX.2"].pairs_tested == 15
        assert reports["AX.3"].pairs_tested == 15
        assert reports["AX.4"].pairs_tested == 15

    def test_identical_pair_has_zero_gap(self):
        f = PiecewiseLinearFn.from_pairs([(0, 3), (1, 1), (2, 0.2)])
        twin = PiecewiseLinearFn.from_pairs([(0, 3), (1, 1), (2, 0.2)])
        pair = verify_pair(
            DominancePair(f, twin, RelationKind.EQUAL_ON_PREFIX, prefix_end=f.T)
        )
        rep = check_impact_bundle(E_BUNDLE, [pair])["AX.4"]
        assert rep.passed and rep.pairs_tested == 1

    def test_pseudo_bundle_n_breaks_monotonicity(self):
        rep = check_impact_bundle(pseudo_bundle_n(), [fixture_alt1().pair], theta_grid=200)
        ax2 = rep["AX.2"]
        assert not ax2.passed
        v = ax2.violations[0]
        assert v.lhs < v.rhs  # dominating function scored lower
        assert v.gap > 1e-9


class TestImpactMeasureChecks:
    def test_e_measure_passes(self, small_pairs):
        reports = check_impact_measure(e_measure(1.0), small_pairs)
        assert all(r.passed for r in reports.values())
        assert reports["IM.2"].pairs_tested == 15
        assert reports["IM.3"].pairs_tested == 15
        assert reports["IM.1"].pairs_tested > 0

    def test_zero_measure_fails_positivity(self, small_pairs):
        zero = Measure(name="zero", apply=lambda f: 0.0)
        rep = check_impact_measure(zero, small_pairs)["IM.1"]
        assert not rep.passed
        assert rep.violations[0].note == "score not positive"

    def test_n_fails_monotonicity_on_fixture(self):
        rep = check_impact_measure(n_measure(1.0), [fixture_alt1().pair])["IM.2"]
        assert not rep.passed
        assert rep.violations[0].gap == pytest.approx(0.5 - 0.257 / 0.9, abs=1e-12)

    def test_eta_fails_monotonicity_on_fixture(self):
        rep = check_impact_measure(eta_measure(0.5), [fixture_alt2().pair])["IM.2"]
        assert not rep.passed
        assert rep.violations[0].gap == pytest.approx(0.0625, abs=1e-12)


class TestStrongImpactChecks:
    def test_shifted_pairs_pass(self):
        pairs = generate_pairs(GeneratorConfig(seed=29, count=40), RelationKind.GEQ_ALL)
        reports = check_strong_impact(e_measure(1.0), pairs)
        assert all(r.passed for r in reports.values())
        # constant and tapered shifts keep the averages strictly ordered, so
        # nothing should be dropped by the hypothesis filter
        assert reports["SM.3"].pairs_tested == 40

    def test_boundary_level_excluded(self):
        lo = PiecewiseLinearFn.from_pairs([(0, 4), (1, 1)])  # Z(T) = theta = 1
        up = PiecewiseLinearFn.from_pairs([(0, 5), (1, 1)])
        pair = verify_pair(DominancePair(up, lo, RelationKind.GEQ_ALL))
        rep = check_strong_impact(e_measure(1.0), [pair])["SM.3"]
        assert rep.pairs_tested == 0
        assert rep.skipped == 1
        assert "boundary" in rep.note

    def test_prefix_equality_is_exact(self):
        # equal prefix reaches the rank of level 1 (Z(0.5) = 0.8 < 1)
        lo = PiecewiseLinearFn.from_pairs([(0, 3), (0.5, 0.8), (1, 0.2)])
        up = PiecewiseLinearFn.from_pairs([(0, 3), (0.5, 0.8), (1, 0.5)])
        pair = verify_pair(
            DominancePair(up, lo, RelationKind.EQUAL_ON_PREFIX, prefix_end=0.5)
        )
        rep = check_strong_impact(e_measure(1.0), [pair])["SM.4"]
        assert rep.pairs_tested == 1 and rep.passed
        assert e_theta(up, 1.0) == e_theta(lo, 1.0)

    def test_hypothesis_filter_skips_unordered(self):
        # crossing averages: neither strictly above the other
        a = PiecewiseLinearFn.from_pairs([(0, 4), (1, 0.1)])
        b = PiecewiseLinearFn.from_pairs([(0, 3), (1, 2)])
        pair = DominancePair(b, a, RelationKind.GEQ_ALL, verified=True)
        rep = check_strong_impact(e_measure(1.0), [pair])["SM.3"]
        assert rep.pairs_tested == 0 and rep.skipped == 1 and rep.passed


class TestGlobalImpactChecks:
    def test_fixture_reproduces_equality_violation(self):
        rep = check_global_impact(e_measure(1.0), [fixture_global().pair])
        assert not rep.passed
        assert len(rep.violations) == 1  # exactly one equality witness
        v = rep.violations[0]
        assert v.lhs == v.rhs == 1.0
        assert v.gap == 0.0

    def test_cumulative_total_also_stalls(self):
        # the totals at T are equal too: honest violation for the i score
        fx = fixture_global()
        rep = check_global_impact(i_measure(fx.pair.upper.T), [fx.pair])
        assert not rep.passed
        assert rep.violations[0].lhs == pytest.approx(rep.violations[0].rhs, abs=1e-12)

    def test_generated_pairs_recorded_observationally(self, small_pairs):
        rep = check_global_impact(e_measure(1.0), small_pairs)
        assert isinstance(rep, AxiomReport)
        assert rep.pairs_tested == 15  # one per CUMULATIVE_PREC pair


class TestGenerator:
    def test_deterministic(self):
        a = generate_pairs(GeneratorConfig(seed=42, count=1))
        b = generate_pairs(GeneratorConfig(seed=42, count=1))
        assert a == b

    def test_different_seeds_differ(self):
        a = generate_pairs(GeneratorConfig(seed=1, count=1))
        b = generate_pairs(GeneratorConfig(seed=2, count=1))
        assert a != b

    def test_every_pair_verifies(self):
        for p in generate_pairs(GeneratorConfig(seed=3, count=5)):
            assert p.verified
            assert verify_pair(dataclasses.replace(p, verified=False)).verified

    def test_relation_counts(self):
        pairs = generate_pairs(GeneratorConfig(seed=4, count=3))
        by_kind = {k: 0 for k in RelationKind}
        for p in pairs:
            by_kind[p.relation] += 1
        assert all(v == 3 for v in by_kind.values())

    def test_config_validation(self):
        with pytest.raises(InputError):
            GeneratorConfig(count=0)
        with pytest.raises(InputError):
            GeneratorConfig(shift_scale=0.0)  # degenerate shifts rejected
        with pytest.raises(InputError):
            GeneratorConfig(knot_range=(2, 1))
