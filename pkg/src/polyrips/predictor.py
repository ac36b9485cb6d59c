"""Exact homotopy types and persistence barcodes of the polygon filtration.

Below the cyclicity threshold the filtration is controlled by a ladder of
critical scales: for each winding w, the minimum and maximum side length
of inscribed (2w+1)-pointed stars.  Between them the complex is a wedge of
even spheres; past the maximum and up to the next minimum it is an odd
sphere.  The ladder is certain when (2w+1) divides n or w = 1, and can be
extended by numeric validation of the landscape; everything past the first
unvalidated rung is reported as unknown rather than guessed.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from . import _kernels, geometry, stars
from .cyclic import HomotopyType
from .errors import CyclicityError, InputError, NotCertifiableError

SCALE_TOL = 1e-9
SCHEMA_VERSION = 1


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class BarInterval:
    dim: int
    birth: float
    death: float
    birth_closed: bool
    death_closed: bool
    multiplicity: int = 1
    ephemeral: bool = False
    clipped_at_rn: bool = False

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "birth": self.birth,
            "death": self.death,
            "birth_closed": self.birth_closed,
            "death_closed": self.death_closed,
            "multiplicity": self.multiplicity,
            "ephemeral": self.ephemeral,
            "clipped_at_rn": self.clipped_at_rn,
        }

    def bracket(self) -> str:
        lo = "[" if self.birth_closed else "("
        hi = "]" if self.death_closed else ")"
        return f"{lo}{self.birth:.12g}, {self.death:.12g}{hi}"


@dataclass(frozen=True)
class Barcode:
    n: int
    convention: str
    rn: float
    intervals: tuple[BarInterval, ...]
    unknown_beyond: int | None  # first winding level not certified, if any

    def bars(self, dim: int) -> list[BarInterval]:
        return [iv for iv in self.intervals if iv.dim == dim]

    def dims(self) -> list[int]:
        return sorted({iv.dim for iv in self.intervals})

    def multiplicity(self, dim: int, include_ephemeral: bool = False) -> int:
        return sum(
            iv.multiplicity
            for iv in self.intervals
            if iv.dim == dim and (include_ephemeral or not iv.ephemeral)
        )


@dataclass(frozen=True)
class LadderLevel:
    winding: int
    side_min: float | None   # None: no star of this winding below threshold
    side_max: float | None
    certified: bool
    exact: bool


def _probe_min_side(n: int, winding: int) -> float | None:
    """Cheapest defensible estimate of the smallest star side: the midpoint
    star (the conjectured global minimum) guarded by a coarse grid minimum
    over one rotational period."""
    count = 2 * winding + 1
    rn = geometry.cyclicity_threshold(n)
    grid = np.linspace(0.0, 1.0 / n, 16 * count, endpoint=False) + 1e-4 / n
    ts = np.concatenate(([0.5 / n], grid))
    sides = _kernels.inscribe_many(n, count, winding, ts, rn)
    if np.all(np.isnan(sides)):
        return None
    return float(np.nanmin(sides))


def ladder(
    n: int,
    validate: bool = False,
    grid_size: int = stars.DEFAULT_SCAN_GRID,
) -> list[LadderLevel]:
    """Threshold ladder for windings 1, 2, ... until the window climbs past
    the cyclicity threshold or a star stops existing below it."""
    rn = geometry.cyclicity_threshold(n)
    if rn <= 0.0:
        raise CyclicityError(f"r_{n} = 0: no cyclic regime")
    levels: list[LadderLevel] = []
    w = 1
    while True:
        count = 2 * w + 1
        divisible = n % count == 0
        if divisible:
            smin = stars.side_length_closed_form(n, w, 0.5)
            smax = stars.side_length_closed_form(n, w, 0.0)
            levels.append(LadderLevel(w, smin, min(smax, rn), True, True))
        else:
            smin = _probe_min_side(n, w)
            if smin is None:
                levels.append(LadderLevel(w, None, None, True, False))
                break
            certified = w == 1
            if not certified and validate and n >= 4 * w + 2:
                certified = stars.validate_monotonic(n, w, grid_size).passed
            smax = stars._inscribe_side_or_none(n, w, 0.0)
            smax = rn if smax is None else min(smax, rn)
            levels.append(LadderLevel(w, smin, smax, certified, False))
        lvl = levels[-1]
        if lvl.side_min is None or lvl.side_min >= rn - SCALE_TOL:
            break
        if not lvl.certified:
            break
        w += 1
    return levels


def _wedge(n: int, winding: int, copies_factor: int) -> HomotopyType:
    q = n // math.gcd(n, 2 * winding + 1)
    count = {1: q - 1, 2: 2 * q - 1, 3: 3 * q - 1}[copies_factor]
    return HomotopyType("wedge_of_even_spheres", 2 * winding, count)


def homotopy_type_polygon(n: int, r: float, convention: str) -> HomotopyType:
    """Homotopy type of the Rips complex of the whole polygon at scale r."""
    if convention not in ("strict", "closed"):
        raise InputError(f"unknown convention {convention!r}")
    rn = geometry.cyclicity_threshold(n)
    if rn <= 0.0:
        raise CyclicityError(f"r_{n} = 0: no cyclic regime")
    if r <= 0.0:
        raise InputError(f"scale must be positive, got {r}")
    if r >= rn - SCALE_TOL:
        raise CyclicityError(
            f"outside cyclic regime: r={r} vs r_n={rn} for n={n}"
        )
    lv = ladder(n)
    for lvl in lv:
        smin = lvl.side_min
        if smin is None or smin >= rn - SCALE_TOL:
            # No further singular window below threshold: odd regime to r_n.
            break
        if r < smin - SCALE_TOL:
            break
        if not lvl.certified:
            raise NotCertifiableError(
                f"requires conjecture: scale r={r} is governed by winding "
                f"{lvl.winding} on P_{n}, which is not certified; run "
                f"validate_monotonic({n}, {lvl.winding})"
            )
        if abs(r - smin) <= SCALE_TOL:
            if convention == "closed":
                return _wedge(n, lvl.winding, 1)
            break  # strict: still in the previous odd regime
        smax = lvl.side_max
        if r < smax - SCALE_TOL:
            return _wedge(n, lvl.winding, 3 if convention == "closed" else 1)
        if abs(r - smax) <= SCALE_TOL:
            return _wedge(n, lvl.winding, 2 if convention == "closed" else 1)
    # Odd regime between the last passed window and the next minimum.
    w_below = 0
    for lvl in lv:
        if lvl.side_min is not None and r > lvl.side_max + SCALE_TOL:
            w_below = lvl.winding
    if w_below == 0:
        return HomotopyType("circle", 1)
    return HomotopyType("odd_sphere", 2 * w_below + 1)


def inclusion_rank(n: int, winding: int, r: float, r2: float) -> int:
    """Rank of the map on 2w-homology induced by including the closed-scale
    complex at r into the one at r2."""
    if not r < r2:
        raise InputError(f"need r < r2, got {r} >= {r2}")
    lv = ladder(n)
    lvl = next((x for x in lv if x.winding == winding), None)
    if lvl is None or lvl.side_min is None:
        raise InputError(
            f"no singular window for winding {winding} below the threshold of P_{n}"
        )
    if not lvl.certified:
        raise NotCertifiableError(
            f"requires conjecture for (n={n}, winding={winding})"
        )
    q = n // math.gcd(n, 2 * winding + 1)
    inside = (
        r >= lvl.side_min - SCALE_TOL and r2 <= lvl.side_max + SCALE_TOL
    )
    if inside:
        return q - 1
    t1 = homotopy_type_polygon(n, r, "closed")
    t2 = homotopy_type_polygon(n, r2, "closed")
    crit: list[float] = []
    for x in lv:
        if x.side_min is not None:
            crit += [x.side_min, x.side_max]
    crossing = [c for c in crit if r + SCALE_TOL < c < r2 - SCALE_TOL]
    if t1 == t2 and not crossing:
        return t1.betti(2 * winding + 1)[2 * winding]
    raise InputError(
        f"scales ({r}, {r2}) are not inside the singular window "
        f"[{lvl.side_min}, {lvl.side_max}] of winding {winding}, and are not "
        f"in a common homotopy-equivalence regime"
    )


def _clip(death: float, death_closed: bool, rn: float, convention: str):
    """Truncate an interval death at the cyclicity threshold.

    Reaching the threshold exactly is kept closed under the strict
    convention (the complex there is still controlled, via the one-sided
    limit) but opened under the closed convention, where cyclicity fails.
    """
    if death < rn - SCALE_TOL:
        return death, death_closed, False
    if abs(death - rn) <= SCALE_TOL and convention == "strict":
        return death, death_closed, True
    return rn, False, True


def barcode(
    n: int,
    convention: str,
    validate: bool = False,
    grid_size: int = stars.DEFAULT_SCAN_GRID,
) -> Barcode:
    """Persistence barcode of the polygon filtration restricted below the
    cyclicity threshold (dimensions >= 1; the single 0-dimensional class
    persists throughout and is omitted)."""
    if convention not in ("strict", "closed"):
        raise InputError(f"unknown convention {convention!r}")
    rn = geometry.cyclicity_threshold(n)
    if rn <= 0.0:
        raise CyclicityError(f"r_{n} = 0: no cyclic regime")
    lv = ladder(n, validate=validate, grid_size=grid_size)
    intervals: list[BarInterval] = []
    unknown_beyond: int | None = None

    def add(dim, birth, death, bc, dc, mult=1, eph=False, clipped=False):
        if mult <= 0:
            return
        if death < birth - SCALE_TOL:
            return
        if not eph and death <= birth + SCALE_TOL and not (bc and dc):
            return  # empty interval
        intervals.append(
            BarInterval(
                dim, _round12(birth), _round12(death), bc, dc, mult, eph, clipped
            )
        )

    # Circle regime: dim 1 from scale zero up to the first star minimum.
    first = lv[0]
    if first.side_min is None or first.side_min >= rn - SCALE_TOL:
        add(1, 0.0, rn, False, False, clipped=True)
    else:
        add(1, 0.0, first.side_min, False, convention == "strict")

    for i, lvl in enumerate(lv):
        if lvl.side_min is None or lvl.side_min >= rn - SCALE_TOL:
            break
        if not lvl.certified:
            unknown_beyond = lvl.winding
            break
        w = lvl.winding
        q = n // math.gcd(n, 2 * w + 1)
        smin, smax = lvl.side_min, lvl.side_max
        death, dclosed, clipped = _clip(
            smax, True, rn, convention
        )
        if convention == "strict":
            add(2 * w, smin, death, False, dclosed, mult=q - 1, clipped=clipped)
        else:
            add(2 * w, smin, death, True, dclosed, mult=q - 1, clipped=clipped)
            eph_death, eph_dc, eph_clip = _clip(smax, False, rn, convention)
            add(2 * w, smin, eph_death, False, False, mult=2 * q,
                eph=True, clipped=eph_clip)
            if smax < rn - SCALE_TOL:
                add(2 * w, smax, smax, True, True, mult=q, eph=True)
        # Odd bar up to the next minimum (or the threshold).
        if smax >= rn - SCALE_TOL:
            continue
        nxt = lv[i + 1] if i + 1 < len(lv) else None
        if nxt is None or nxt.side_min is None or nxt.side_min >= rn - SCALE_TOL:
            add(2 * w + 1, smax, rn, False, False, clipped=True)
        else:
            add(
                2 * w + 1, smax, nxt.side_min, False,
                convention == "strict",
            )
    intervals.sort(key=lambda iv: (iv.dim, iv.birth, iv.ephemeral, -iv.multiplicity))
    return Barcode(n, convention, _round12(rn), tuple(intervals), unknown_beyond)


# -- serialization ------------------------------------------------------------

def to_json_dict(bc: Barcode) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": bc.n,
        "convention": bc.convention,
        "r_n": bc.rn,
        "unknown_beyond": bc.unknown_beyond,
        "intervals": [iv.as_dict() for iv in bc.intervals],
    }


def from_json_dict(data: dict) -> Barcode:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {data.get('schema_version')}")
    ivs = tuple(
        BarInterval(
            dim=int(d["dim"]),
            birth=float(d["birth"]),
            death=float(d["death"]),
            birth_closed=bool(d["birth_closed"]),
            death_closed=bool(d["death_closed"]),
            multiplicity=int(d["multiplicity"]),
            ephemeral=bool(d["ephemeral"]),
            clipped_at_rn=bool(d["clipped_at_rn"]),
        )
        for d in data["intervals"]
    )
    return Barcode(
        int(data["n"]), data["convention"], float(data["r_n"]), ivs,
        data.get("unknown_beyond"),
    )


def to_json(bc: Barcode) -> str:
    return json.dumps(to_json_dict(bc), indent=2)


def from_json(text: str) -> Barcode:
    return from_json_dict(json.loads(text))


def to_text(bc: Barcode) -> str:
    lines = [
        f"# barcode n={bc.n} convention={bc.convention} r_n={bc.rn:.12g}"
        + (f" unknown_beyond={bc.unknown_beyond}" if bc.unknown_beyond else "")
    ]
    for iv in bc.intervals:
        flags = ""
        if iv.ephemeral:
            flags += " ephemeral"
        if iv.clipped_at_rn:
            flags += " clipped"
        lines.append(f"H{iv.dim} x{iv.multiplicity} {iv.bracket()}{flags}")
    return "\n".join(lines) + "\n"


_TEXT_RE = re.compile(
    r"^H(?P<dim>\d+) x(?P<mult>\d+) (?P<lo>[\[(])(?P<birth>[^,]+), "
    r"(?P<death>[^)\]]+)(?P<hi>[)\]])(?P<flags>( \w+)*)$"
)


def from_text(text: str) -> Barcode:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    header = lines[0]
    m = re.match(
        r"# barcode n=(\d+) convention=(\w+) r_n=([0-9.eE+-]+)"
        r"(?: unknown_beyond=(\d+))?",
        header,
    )
    if not m:
        raise InputError(f"bad barcode header: {header!r}")
    n, conv, rn, unk = int(m.group(1)), m.group(2), float(m.group(3)), m.group(4)
    ivs = []
    for ln in lines[1:]:
        mm = _TEXT_RE.match(ln)
        if not mm:
            raise InputError(f"bad barcode line: {ln!r}")
        flags = mm.group("flags").split()
        ivs.append(
            BarInterval(
                dim=int(mm.group("dim")),
                birth=float(mm.group("birth")),
                death=float(mm.group("death")),
                birth_closed=mm.group("lo") == "[",
                death_closed=mm.group("hi") == "]",
                multiplicity=int(mm.group("mult")),
                ephemeral="ephemeral" in flags,
                clipped_at_rn="clipped" in flags,
            )
        )
    return Barcode(n, conv, rn, tuple(ivs), int(unk) if unk else None)
