import numpy as np
import pytest

from cid.decisions import ElectionDecision, InterventionDecision, ThresholdRule
from cid.imputation import (ImputationConfig, LeadPopulation,
                            accordion_mechanism, mar_mechanism,
                            parametric_mechanism)
from cid.metrics import CostParams, worst_case_theta
from cid.sweep import (KnobDistribution, KnobGrid, PlausibleRegion,
                       annotate_plausible_region, expected_cid,
                       sweep_election, sweep_lead)


@pytest.fixture(scope="module")
def election_curve(hibbs_fit):
    return sweep_election(hibbs_fit, -0.728, KnobGrid(-4, 4, 0.02))


@pytest.fixture(scope="module")
def lead_costs(lead_population):
    wc = worst_case_theta(lead_population.observed_high_count,
                          lead_population.n_observed,
                          lead_population.n_total)
    return CostParams(a=1.0, b=1.0, theta_wc=wc)


class TestKnobGrid:
    def test_contains_t0_exactly(self):
        grid = KnobGrid(-1.0, 1.0, 0.3, t0=0.0)
        assert 0.0 in grid.values()

    def test_symmetric_around_t0(self):
        vals = KnobGrid(-0.95, 1.0, 0.3, t0=0.1).values()
        assert vals.min() >= -0.95 and vals.max() <= 1.0 + 1e-12
        assert np.allclose(np.diff(vals), 0.3)
        assert np.isclose(vals, 0.1).any()

    def test_validation(self):
        with pytest.raises(ValueError):
            KnobGrid(-1, 1, 0.0)
        with pytest.raises(ValueError):
            KnobGrid(1, -1, 0.1)
        with pytest.raises(ValueError):
            KnobGrid(-1, 1, 0.1, t0=2.0)


class TestSweepElection:
    def test_change_point_brackets(self, election_curve):
        brackets = election_curve.change_points
        assert len(brackets) == 2
        assert abs((brackets[0][0] + brackets[0][1]) / 2 - 0.88) <= 0.05
        assert abs((brackets[1][0] + brackets[1][1]) / 2 - 2.62) <= 0.05

    def test_overlap_half_region(self, election_curve):
        ts = election_curve.ts()
        js = np.array([p.j_t for p in election_curve.points])
        covered = ts[js >= 0.5]
        assert abs(covered.min() - (-2.0)) <= 0.05
        assert abs(covered.max() - 1.2) <= 0.05

    def test_reference_point_is_maximum(self, election_curve):
        p0 = election_curve.point_nearest(0.0)
        assert p0.cid == 2.0
        assert p0.d_t == 1
        assert election_curve.reference_decision is \
            ElectionDecision.CHALLENGER_WINS

    def test_estimate_affine_in_t(self, election_curve, hibbs_fit):
        p0 = election_curve.point_nearest(0.0)
        for p in election_curve.points[::40]:
            expected = p0.estimate + hibbs_fit.slope * (p.t - p0.t)
            assert p.estimate == pytest.approx(expected, abs=1e-9)

    def test_degenerate_single_point_grid(self, hibbs_fit):
        curve = sweep_election(hibbs_fit, -0.728, KnobGrid(0, 0, 0.02))
        assert len(curve.points) == 1
        assert curve.points[0].cid == 2.0
        assert curve.change_points == ()

    def test_refinement_preserves_brackets(self, hibbs_fit, election_curve):
        fine = sweep_election(hibbs_fit, -0.728, KnobGrid(-4, 4, 0.01))
        for lo, hi in election_curve.change_points:
            assert any(lo - 1e-9 <= flo and fhi <= hi + 1e-9
                       for flo, fhi in fine.change_points)


class TestSweepLead:
    def test_accordion_change_point(self, lead_population, lead_costs):
        cfg = ImputationConfig(m=200, seed=20240101)
        curve = sweep_lead(lead_population, accordion_mechanism(),
                           KnobGrid(-2, 4, 0.05), cfg, ThresholdRule(),
                           lead_costs)
        assert curve.reference_decision is InterventionDecision.INTERVENE
        assert curve.point_nearest(0.0).cid == 1.0
        mids = [(lo + hi) / 2 for lo, hi in curve.change_points]
        assert any(abs(m - 0.4) <= 0.1 for m in mids)

    def test_zero_weight_mechanism_is_flat(self, lead_population, lead_costs):
        cfg = ImputationConfig(m=500, seed=3)
        curve = sweep_lead(lead_population, mar_mechanism(),
                           KnobGrid(-1, 1, 0.2), cfg, ThresholdRule(),
                           lead_costs)
        assert curve.change_points == ()
        ests = curve.cids()
        assert np.ptp([p.estimate for p in curve.points]) == 0.0
        assert np.all(ests == ests[0])

    def test_deterministic_given_seed(self, lead_population, lead_costs):
        cfg = ImputationConfig(m=20, seed=99)
        grid = KnobGrid(-0.5, 1.0, 0.25)
        a = sweep_lead(lead_population, parametric_mechanism(), grid, cfg,
                       ThresholdRule(), lead_costs)
        b = sweep_lead(lead_population, parametric_mechanism(), grid, cfg,
                       ThresholdRule(), lead_costs)
        assert [p.estimate for p in a.points] == [p.estimate for p in b.points]
        assert [p.cid for p in a.points] == [p.cid for p in b.points]


class TestExpectedCid:
    def test_point_mass_at_reference(self, election_curve):
        dist = KnobDistribution(support=(0.0,), weights=(1.0,))
        assert expected_cid(election_curve, dist) == 2.0

    def test_uniform_three_points(self, election_curve):
        dist = KnobDistribution.from_weights((-0.5, 0.0, 0.5), (1, 1, 1))
        cids = [election_curve.point_nearest(t).cid for t in (-0.5, 0.0, 0.5)]
        assert expected_cid(election_curve, dist) == pytest.approx(
            np.mean(cids))

    def test_point_mass_on_changed_decision(self, election_curve):
        dist = KnobDistribution(support=(1.0,), weights=(1.0,))
        assert expected_cid(election_curve, dist) == 0.0

    def test_point_mass_snaps_exactly(self, election_curve):
        for t in (-3.14, 0.42, 2.0):
            dist = KnobDistribution(support=(t,), weights=(1.0,))
            assert expected_cid(election_curve, dist) == \
                election_curve.point_nearest(t).cid

    def test_support_off_grid(self, election_curve):
        dist = KnobDistribution(support=(4.5,), weights=(1.0,))
        with pytest.raises(ValueError, match="support off grid"):
            expected_cid(election_curve, dist)

    def test_distribution_validation(self):
        with pytest.raises(ValueError):
            KnobDistribution(support=(0.0, 1.0), weights=(0.4, 0.4))
        with pytest.raises(ValueError):
            KnobDistribution(support=(0.0,), weights=(-1.0,))


class TestAnnotatePlausibleRegion:
    def test_paper_region_is_stable(self, election_curve):
        summary = annotate_plausible_region(
            election_curve, PlausibleRegion(-0.635, 0.728))
        assert not summary.has_change_point
        assert summary.min_cid >= 1.0

    def test_region_containing_both_change_points(self, election_curve):
        summary = annotate_plausible_region(
            election_curve, PlausibleRegion(0.5, 3.0))
        assert len(summary.change_points_inside) == 2
        assert summary.min_cid == 0.0

    def test_empty_intersection_warns(self, election_curve):
        with pytest.warns(UserWarning, match="no grid points"):
            summary = annotate_plausible_region(
                election_curve, PlausibleRegion(10.0, 11.0))
        assert summary.empty
        assert summary.min_cid is None

    def test_region_validation(self):
        with pytest.raises(ValueError):
            PlausibleRegion(1.0, 1.0)
