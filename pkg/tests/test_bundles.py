import math

import numpy as np
import pytest

import oracles
from conftest import seeded_pwl
from ebundles.axioms import GeneratorConfig, RelationKind, generate_pairs
from ebundles.bundles import (
    classical_h,
    e_index,
    e_theta,
    excess_at_h,
    h_theta,
    i_bundle,
    mu_bundle,
    r_index_squared,
    sweep,
    SweepTable,
)
from ebundles.functions import (
    InputError,
    LinearFamily,
    PiecewiseLinearFn,
    ThetaRangeError,
    ZipfFamily,
)

LINE = PiecewiseLinearFn.from_pairs([(0, 10), (10, 0)])


def linear_e_closed_form(S, T, theta):
    return T * (S - theta) ** 2 / (2 * S)


def zipf_e_closed_form(beta, T, theta):
    return T * (beta / (1 - beta)) * theta ** (1 - 1 / beta)


class TestETheta:
    def test_linear_closed_form_value(self):
        assert e_theta(LinearFamily(S=10, T=20), 4.0) == pytest.approx(36.0, abs=1e-12)

    def test_zero_at_peak(self):
        for f in (LINE, LinearFamily(S=3, T=7)):
            assert e_theta(f, f.value(0.0)) == 0.0

    def test_zipf_closed_form_value(self):
        # T / ((alpha - 2) theta**(alpha - 2)) with alpha = 3: 1 / (1 * 2)
        assert e_theta(ZipfFamily(beta=0.5, T=1), 2.0) == pytest.approx(0.5, abs=1e-12)

    def test_at_bottom_level(self):
        f = PiecewiseLinearFn.from_pairs([(0, 3), (1, 1), (2, 0.2)])
        want = f.cumulative(f.T) - f.value(f.T) * f.T
        assert e_theta(f, f.value(f.T)) == pytest.approx(want, abs=1e-12)

    def test_inadmissible(self):
        with pytest.raises(ThetaRangeError):
            e_theta(LINE, 10.5)
        with pytest.raises(ThetaRangeError):
            e_theta(ZipfFamily(beta=0.5, T=1), 0.5)

    def test_linear_grid_against_closed_form(self):
        f = LinearFamily(S=10, T=20)
        for theta in np.linspace(0.0, 10.0, 1000):
            assert abs(e_theta(f, float(theta)) - linear_e_closed_form(10, 20, theta)) <= 1e-9

    def test_zipf_two_closed_forms_agree(self):
        for beta in (0.3, 0.5, 0.7):
            f = ZipfFamily(beta=beta, T=1)
            alpha = (beta + 1) / beta
            for theta in np.linspace(1.1, 10.0, 200):
                got = e_theta(f, float(theta))
                assert abs(got - zipf_e_closed_form(beta, 1, theta)) <= 1e-6
                assert abs(got - 1.0 / ((alpha - 2) * theta ** (alpha - 2))) <= 1e-9

    def test_non_increasing_and_continuous(self):
        rng = np.random.default_rng(17)
        for f in (seeded_pwl(rng), LinearFamily(S=6, T=4)):
            r = f.admissible_range()
            thetas = np.linspace(r.lo, r.hi, 1000)
            vals = np.array([e_theta(f, float(t)) for t in thetas])
            steps = np.diff(vals)
            assert np.all(steps <= 1e-9)  # no upward step
            # continuity: steps bounded by the local slope of e, which is
            # the inverse rank, itself at most T
            assert np.max(np.abs(steps)) <= f.T * (thetas[1] - thetas[0]) + 1e-9

    def test_against_oracle(self):
        f = PiecewiseLinearFn.from_pairs([(0, 3), (1, 1), (2, 0.2)])
        for theta in (0.5, 1.0, 2.0):
            assert e_theta(f, theta) == pytest.approx(
                oracles.oracle_excess_area(f, theta, panels=10**5), rel=1e-6
            )


class TestHTheta:
    def test_linear_by_hand(self):
        # S(1 - h/T) = theta h  ->  h = ST / (S + theta T)
        assert h_theta(LinearFamily(S=10, T=20), 1.0) == pytest.approx(20 / 3, abs=1e-10)

    def test_pwl_by_hand(self):
        # 10 - h = h
        assert h_theta(LINE, 1.0) == pytest.approx(5.0, abs=1e-10)

    def test_monotone_decreasing_in_theta(self):
        prev = math.inf
        for theta in (0.1, 0.5, 1.0, 5.0, 25.0, 1000.0):
            h = h_theta(LINE, theta)
            assert h < prev
            prev = h
        assert h_theta(LINE, 1e6) < 1e-4  # h -> 0 as theta grows

    def test_residual_invariant(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            f = seeded_pwl(rng)
            lo = f.value(f.T) / f.T
            for theta in np.linspace(lo + 1e-6, lo + 50, 20):
                h = h_theta(f, float(theta))
                assert abs(f.value(h) - theta * h) <= 1e-10 * max(1.0, f.value(0.0))

    def test_below_range(self):
        f = PiecewiseLinearFn.from_pairs([(0, 3), (1, 1), (2, 0.2)])
        with pytest.raises(ThetaRangeError):
            h_theta(f, 0.05)  # Z(T)/T = 0.1

    def test_boundary_hits_T(self):
        f = PiecewiseLinearFn.from_pairs([(0, 3), (1, 1), (2, 0.2)])
        assert h_theta(f, 0.1) == 2.0


class TestClassicalIndices:
    def test_classical_h_pwl(self):
        assert classical_h(LINE) == pytest.approx(5.0, abs=1e-10)

    def test_classical_h_linear(self):
        assert classical_h(LinearFamily(S=10, T=10)) == pytest.approx(5.0, abs=1e-10)

    def test_classical_h_zipf(self):
        # (1/h)**0.5 = h  ->  h**1.5 = 1  ->  h = 1
        assert classical_h(ZipfFamily(beta=0.5, T=1)) == pytest.approx(1.0, abs=1e-10)

    def test_hand_case(self):
        # Z = 10 - x: h = 5, R^2 = int_0^5 Z = 37.5, e = sqrt(12.5)
        assert r_index_squared(LINE) == pytest.approx(37.5, abs=1e-9)
        assert e_index(LINE) == pytest.approx(math.sqrt(12.5), abs=1e-9)

    def test_e_index_squared_is_excess_area(self):
        rng = np.random.default_rng(31)
        for _ in range(12):
            f = seeded_pwl(rng)
            h = classical_h(f)
            assert e_index(f) ** 2 == pytest.approx(excess_at_h(f), abs=1e-9)
            assert e_index(f) ** 2 == pytest.approx(
                r_index_squared(f) - h * h, abs=1e-9
            )

    def test_symmetric_triangle(self):
        # S = T: the excess at theta = S/2 is the triangle of height S/2,
        # area T**2 / 8, matching the squared e-index
        f = LinearFamily(S=6, T=6)
        assert e_index(f) ** 2 == pytest.approx(36 / 8, abs=1e-9)
        assert e_theta(f, 3.0) == pytest.approx(36 / 8, abs=1e-12)


class TestMuAndI:
    def test_i_total(self):
        assert i_bundle(LinearFamily(S=10, T=20), 20.0) == 100.0

    def test_mu_at_zero(self):
        for f in (LINE, LinearFamily(S=2, T=3)):
            assert mu_bundle(f, 0.0) == f.value(0.0)

    def test_i_at_zero(self):
        assert i_bundle(LINE, 0.0) == 0.0

    def test_domain_checked(self):
        with pytest.raises(InputError):
            mu_bundle(LINE, 11.0)


class TestOperationLevelMonotonicity:
    def test_e_respects_pointwise_order(self):
        pairs = generate_pairs(GeneratorConfig(seed=13, count=200), RelationKind.GEQ_ALL)
        for p in pairs:
            lo_t = max(p.upper.value(p.upper.T), p.lower.value(p.lower.T))
            hi_t = min(p.upper.value(0.0), p.lower.value(0.0))
            for theta in np.linspace(lo_t, hi_t, 16):
                assert e_theta(p.upper, float(theta)) >= e_theta(p.lower, float(theta)) - 1e-12


class TestSweep:
    def test_linear_e_column(self):
        table = sweep(LinearFamily(S=10, T=20), [0.0, 4.0, 10.0])
        assert [r.e for r in table.rows] == pytest.approx([100.0, 36.0, 0.0], abs=1e-12)

    def test_empty(self):
        assert sweep(LINE, []).rows == ()

    def test_missing_markers(self):
        # theta = 12 exceeds Z(0) = 5: no e score, but h / mu / i still fill
        table = sweep(LinearFamily(S=5, T=20), [12.0])
        row = table.rows[0]
        assert row.e is None
        assert row.h is not None and row.mu is not None and row.i is not None

    def test_rejects_unsorted(self):
        with pytest.raises(InputError):
            sweep(LINE, [3.0, 1.0])

    def test_csv_round_trip(self):
        table = sweep(LINE, [0.0, 2.0, 12.0])
        text = table.to_csv()
        assert text.splitlines()[0] == "theta,e,h,mu,i"
        assert "NA" in text
        again = SweepTable.from_csv(text)
        assert again == table
        assert again.to_csv() == text

    def test_json_mirror_uses_null(self):
        import json

        table = sweep(LINE, [12.0])
        obj = json.loads(table.to_json())
        assert obj["rows"][0]["e"] is None
