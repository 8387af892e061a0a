import xml.etree.ElementTree as ET

import numpy as np
import pytest

from cid.decisions import ThresholdRule
from cid.imputation import (ImputationConfig, accordion_mechanism,
                            impute_theta)
from cid.metrics import CostParams, worst_case_theta
from cid.svgfig import (FigureSpec, render_election_figure,
                        render_lead_figure)
from cid.sweep import KnobGrid, sweep_election, sweep_lead

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture(scope="module")
def election_curve(hibbs_fit):
    return sweep_election(hibbs_fit, -0.728, KnobGrid(-4, 4, 0.1))


@pytest.fixture(scope="module")
def lead_curve_and_snapshots(lead_population):
    wc = worst_case_theta(lead_population.observed_high_count,
                          lead_population.n_observed, lead_population.n_total)
    cfg = ImputationConfig(m=10, seed=20240101)
    curve = sweep_lead(lead_population, accordion_mechanism(),
                       KnobGrid(-2, 4, 0.5), cfg, ThresholdRule(),
                       CostParams(a=1, b=1, theta_wc=wc))
    snapshots = []
    for t in (-1.0, 0.0, 0.5, 1.0, 2.0):
        _, freqs = impute_theta(lead_population, accordion_mechanism(), t, cfg)
        snapshots.append((t, freqs))
    return curve, snapshots


def panel_transform(group):
    g = {k.replace("data-", ""): float(v) for k, v in group.attrib.items()
         if k.startswith("data-")}

    def px(x):
        return g["left"] + (x - g["xmin"]) / (g["xmax"] - g["xmin"]) * g["width"]

    def py(y):
        return g["top"] + (g["ymax"] - y) / (g["ymax"] - g["ymin"]) * g["height"]

    return px, py


def find_by_class(root, cls):
    return [el for el in root.iter() if el.get("class") == cls]


class TestElectionFigure:
    def test_well_formed_and_structure(self, election_curve):
        svg = render_election_figure(election_curve, FigureSpec(
            region_lines=(-0.635, 0.728)))
        root = ET.fromstring(svg)
        assert root.tag == f"{SVG_NS}svg"
        assert len(find_by_class(root, "cid-polyline")) == 1
        assert len(find_by_class(root, "reference-line")) == 1
        assert len(find_by_class(root, "region-line")) == 2

    def test_polyline_parse_back(self, election_curve):
        svg = render_election_figure(election_curve, FigureSpec())
        root = ET.fromstring(svg)
        panel = find_by_class(root, "cid-panel")[0]
        px, py = panel_transform(panel)
        pts = find_by_class(root, "cid-polyline")[0].get("points").split()
        assert len(pts) == len(election_curve.points)
        for raw, p in zip(pts, election_curve.points):
            x, y = map(float, raw.split(","))
            assert abs(x - px(p.t)) <= 0.5
            assert abs(y - py(p.cid)) <= 0.5

    def test_interval_bars_parse_back(self, election_curve):
        svg = render_election_figure(election_curve, FigureSpec())
        root = ET.fromstring(svg)
        panel = find_by_class(root, "interval-panel")[0]
        px, py = panel_transform(panel)
        bars = find_by_class(root, "interval-bar")
        assert len(bars) == len(election_curve.points)
        for bar, p in zip(bars, election_curve.points):
            assert abs(float(bar.get("x1")) - px(p.t)) <= 0.5
            assert abs(float(bar.get("y1")) - py(p.interval.lower)) <= 0.5
            assert abs(float(bar.get("y2")) - py(p.interval.upper)) <= 0.5
        assert len(find_by_class(root, "reference-interval")) == 1

    def test_curve_touches_zero_at_change_point(self, election_curve):
        svg = render_election_figure(election_curve, FigureSpec())
        root = ET.fromstring(svg)
        panel = find_by_class(root, "cid-panel")[0]
        _, py = panel_transform(panel)
        pts = find_by_class(root, "cid-polyline")[0].get("points").split()
        zero_ts = [p.t for p in election_curve.points if p.cid == 0.0]
        assert zero_ts
        ys = {round(float(r.split(",")[0]), 3): float(r.split(",")[1])
              for r in pts}
        px, _ = panel_transform(panel)
        for t in zero_ts:
            assert abs(ys[round(px(t), 3)] - py(0.0)) <= 0.5

    def test_deterministic(self, election_curve):
        spec = FigureSpec(region_lines=(-0.635, 0.728), title="x")
        assert render_election_figure(election_curve, spec) == \
            render_election_figure(election_curve, spec)

    def test_single_point_curve(self, hibbs_fit):
        curve = sweep_election(hibbs_fit, -0.728, KnobGrid(0, 0, 0.1))
        svg = render_election_figure(curve, FigureSpec())
        root = ET.fromstring(svg)
        assert len(find_by_class(root, "cid-polyline")) == 0
        assert len(find_by_class(root, "cid-marker")) == 1

    def test_empty_curve_rejected(self, election_curve):
        from cid.sweep import CidCurve
        empty = CidCurve(points=(), change_points=(),
                         reference_decision=None)
        with pytest.raises(ValueError, match="empty"):
            render_election_figure(empty, FigureSpec())


class TestLeadFigure:
    def test_snapshot_bar_groups(self, lead_curve_and_snapshots):
        curve, snapshots = lead_curve_and_snapshots
        svg = render_lead_figure(curve, snapshots, FigureSpec())
        root = ET.fromstring(svg)
        groups = find_by_class(root, "freq-panel")
        assert len(groups) == 5
        for group in groups:
            assert len(find_by_class(group, "freq-bar")) == 10

    def test_bars_parse_back(self, lead_curve_and_snapshots):
        curve, snapshots = lead_curve_and_snapshots
        svg = render_lead_figure(curve, snapshots, FigureSpec())
        root = ET.fromstring(svg)
        for group, (_, dist) in zip(find_by_class(root, "freq-panel"),
                                    snapshots):
            _, py = panel_transform(group)
            for bar, prob in zip(find_by_class(group, "freq-bar"),
                                 dist.probs):
                top = float(bar.get("y"))
                assert abs(top - py(prob)) <= 0.5

    def test_snapshot_at_reference_matches_observed(self, lead_curve_and_snapshots,
                                                    lead_population):
        _, snapshots = lead_curve_and_snapshots
        at_ref = dict((t, d) for t, d in snapshots)[0.0]
        observed = lead_population.counts_array() / lead_population.n_observed
        assert np.asarray(at_ref.probs) == pytest.approx(observed, abs=0.01)

    def test_empty_snapshots_rejected(self, lead_curve_and_snapshots):
        curve, _ = lead_curve_and_snapshots
        with pytest.raises(ValueError, match="snapshot"):
            render_lead_figure(curve, [], FigureSpec())

    def test_off_grid_snapshot_rejected(self, lead_curve_and_snapshots):
        curve, snapshots = lead_curve_and_snapshots
        bad = [(0.123, snapshots[0][1])]
        with pytest.raises(ValueError, match="grid"):
            render_lead_figure(curve, bad, FigureSpec())

    def test_deterministic(self, lead_curve_and_snapshots):
        curve, snapshots = lead_curve_and_snapshots
        assert render_lead_figure(curve, snapshots, FigureSpec()) == \
            render_lead_figure(curve, snapshots, FigureSpec())


def test_figure_spec_validation():
    with pytest.raises(ValueError):
        FigureSpec(width_px=0)
    with pytest.raises(ValueError):
        FigureSpec(panels=())
