"""Bounds on the Gromov-Hausdorff distance between the polygon and the
circle it is inscribed in (both with the Euclidean metric).

Upper bound: the Hausdorff distance in the plane, 1 - cos(pi/n).  Lower
bounds: half the bottleneck distance between the one-bar dim-1 barcodes
(needs 3 | n for the closed-form death time), and two purely metric
bounds from comparing distance-value images, evaluated on the radial
correspondence as a ceiling on what that route can certify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry, oracle, stars
from .errors import InputError


def hausdorff_polygon_circle(n: int) -> float:
    """Planar Hausdorff distance between the n-gon and its circumcircle."""
    if n < 3:
        raise InputError(f"n must be >= 3, got {n}")
    return 1.0 - math.cos(math.pi / n)


def circle_bar() -> tuple[float, float]:
    """The single dim-1 bar of the unit circle: dies when inscribed
    equilateral triangles appear, at side sqrt(3)."""
    return (0.0, math.sqrt(3.0))


def polygon_bar(n: int) -> tuple[float, float]:
    """The single dim-1 bar of the n-gon for 3 | n: dies at the minimal
    inscribed-triangle side sqrt(3) cos(pi/n)."""
    if n % 3 != 0 or n < 6:
        raise InputError(
            f"closed-form dim-1 bar needs 3 | n and n >= 6, got n={n}"
        )
    return (0.0, stars.side_length_closed_form(n, 1, 0.5))


def ph_lower_bound(n: int) -> float:
    """Half the bottleneck distance of the dim-1 barcodes: a lower bound on
    the Gromov-Hausdorff distance by stability."""
    polygon_bar(n)  # validates applicability
    return 0.5 * math.sqrt(3.0) * (1.0 - math.cos(math.pi / n))


def diameter(n: int, grid: int = 0) -> float:
    """Diameter of the n-gon: 2 for even n, the longest vertex chord for
    odd; brute force over vertex pairs (curvature puts extremes there)."""
    best = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            best = max(best, geometry.euclid(n, i / n, j / n))
    return best


def metric_lower_bound(n: int, grid: int = 10_000) -> tuple[float, float]:
    """(weak, strong_radial) metric-geometry lower bounds on 2*d_GH, halved.

    weak: half the Hausdorff distance between the distance-value images,
    which are [0, diam] for both spaces; zero for even n.  strong_radial:
    half of sup over the radial correspondence of the Hausdorff distance
    between one-point distance images, i.e. half of (2 - min_x max_y |x-y|);
    this is what the radial correspondence can certify at best.  Both carry
    a +-2/grid discretization resolution.
    """
    if n < 4:
        raise InputError(f"n must be >= 4, got {n}")
    weak = 0.5 * abs(2.0 - diameter(n, grid))

    ts = (np.arange(grid) + 0.5) / grid
    pts = np.array([geometry.embed(n, t) for t in ts])
    vxs = np.array([geometry.vertex(n, k) for k in range(n)])
    mids = np.array([geometry.embed(n, (k + 0.5) / n) for k in range(n)])
    all_pts = np.vstack([pts, vxs, mids])
    chunk = max(1, 2_000_000 // max(all_pts.shape[0], 1))
    min_ecc = math.inf
    for i in range(0, all_pts.shape[0], chunk):
        block = all_pts[i : i + chunk]
        d = np.sqrt(
            ((block[:, None, :] - all_pts[None, :, :]) ** 2).sum(-1)
        )
        ecc = d.max(axis=1)
        min_ecc = min(min_ecc, float(ecc.min()))
    strong_radial = 0.5 * (2.0 - min_ecc)
    return weak, strong_radial


@dataclass(frozen=True)
class GHReport:
    n: int
    hausdorff_upper: float
    ph_lower: float | None
    metric_weak: float
    metric_strong_radial: float
    ph_dominates: bool | None

    @property
    def interval(self) -> tuple[float, float]:
        lows = [self.metric_weak, self.metric_strong_radial]
        if self.ph_lower is not None:
            lows.append(self.ph_lower)
        return (max(lows), self.hausdorff_upper)


def gh_report(n: int, grid: int = 10_000) -> GHReport:
    """Assemble all bounds; cross-checks the barcode route against the
    oracle's bottleneck on the two one-bar diagrams."""
    upper = hausdorff_polygon_circle(n)
    weak, strong = metric_lower_bound(n, grid)
    ph = None
    dominates = None
    if n % 3 == 0 and n >= 6:
        ph = ph_lower_bound(n)
        check = 0.5 * oracle.bottleneck([polygon_bar(n)], [circle_bar()])
        if abs(check - ph) > 1e-12:
            raise AssertionError(
                f"bottleneck cross-check failed: {check} vs {ph}"
            )
        if ph > upper:
            raise AssertionError(
                f"lower bound {ph} exceeds upper bound {upper}"
            )
        dominates = ph > strong
    return GHReport(n, upper, ph, weak, strong, dominates)
