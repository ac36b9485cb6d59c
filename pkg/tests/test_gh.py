import math

import pytest

from polyrips import gh, oracle
from polyrips.errors import InputError


def test_hausdorff_examples():
    assert gh.hausdorff_polygon_circle(6) == pytest.approx(0.1339745962, abs=1e-9)
    assert gh.hausdorff_polygon_circle(4) == pytest.approx(0.2928932188, abs=1e-9)
    assert gh.hausdorff_polygon_circle(10**6) == pytest.approx(0.0, abs=1e-10)


def test_hausdorff_decreasing():
    vals = [gh.hausdorff_polygon_circle(n) for n in range(4, 60)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_ph_lower_examples():
    assert gh.ph_lower_bound(6) == pytest.approx(0.1160254038, abs=1e-9)
    assert gh.ph_lower_bound(9) == pytest.approx(
        math.sqrt(3) / 2 * (1 - math.cos(math.pi / 9)), abs=1e-12
    )
    assert gh.ph_lower_bound(12) == pytest.approx(0.0295091000, abs=1e-9)
    with pytest.raises(InputError):
        gh.ph_lower_bound(8)


def test_ph_lower_matches_bottleneck():
    for n in (6, 9, 12, 15):
        direct = gh.ph_lower_bound(n)
        via_oracle = 0.5 * oracle.bottleneck([gh.polygon_bar(n)], [gh.circle_bar()])
        assert direct == pytest.approx(via_oracle, abs=1e-12)


def test_bounds_ordered():
    for n in (6, 9, 12, 15, 18):
        assert gh.ph_lower_bound(n) < gh.hausdorff_polygon_circle(n)


def test_metric_lower_bounds():
    weak, strong = gh.metric_lower_bound(6, grid=3000)
    assert weak == 0.0  # even polygons share the full distance image
    assert strong == pytest.approx(0.5 * (2 - math.sqrt(13) / 2), abs=1e-3)
    weak5, _ = gh.metric_lower_bound(5, grid=1000)
    assert weak5 == pytest.approx(0.5 * (2 - 2 * math.sin(2 * math.pi / 5)), abs=1e-9)
    assert weak5 > 0


def test_gh_report_hexagon():
    rep = gh.gh_report(6, grid=4000)
    lo, hi = rep.interval
    assert lo == pytest.approx(0.116, abs=1e-3)
    assert hi == pytest.approx(0.134, abs=1e-3)
    assert rep.metric_strong_radial == pytest.approx(0.0986, abs=1e-3)
    assert rep.ph_dominates is True


def test_gh_report_square():
    rep = gh.gh_report(4, grid=1000)
    assert rep.ph_lower is None
    assert rep.hausdorff_upper == pytest.approx(0.2928932188, abs=1e-9)
    assert rep.metric_weak == 0.0


def test_gh_report_12():
    rep = gh.gh_report(12, grid=2000)
    lo, hi = rep.interval
    assert lo == pytest.approx(0.0295, abs=2e-4)
    assert hi == pytest.approx(0.0341, abs=2e-4)
