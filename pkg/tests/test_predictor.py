import math

import pytest

from polyrips import predictor, stars
from polyrips.cyclic import HomotopyType
from polyrips.errors import CyclicityError, InputError, NotCertifiableError

SQRT3 = math.sqrt(3.0)
S15_1 = SQRT3 * math.cos(math.pi / 15)
T15_1 = SQRT3
S15_2 = 2 * math.sin(2 * math.pi / 5) * math.cos(math.pi / 15)
T15_2 = 2 * math.sin(2 * math.pi / 5)


def test_barcode_p15_strict():
    bc = predictor.barcode(15, "strict")
    assert [bc.multiplicity(d) for d in range(1, 6)] == [1, 4, 1, 2, 1]
    (h1,) = bc.bars(1)
    assert (h1.birth, h1.death) == pytest.approx((0.0, S15_1), abs=1e-9)
    assert not h1.birth_closed and h1.death_closed
    (h2,) = bc.bars(2)
    assert (h2.birth, h2.death) == pytest.approx((S15_1, T15_1), abs=1e-9)
    assert h2.multiplicity == 4
    (h3,) = bc.bars(3)
    assert (h3.birth, h3.death) == pytest.approx((T15_1, S15_2), abs=1e-9)
    (h4,) = bc.bars(4)
    assert (h4.birth, h4.death) == pytest.approx((S15_2, T15_2), abs=1e-9)
    assert h4.multiplicity == 2
    (h5,) = bc.bars(5)
    assert h5.birth == pytest.approx(T15_2, abs=1e-9)
    # the 7-pointed-star window starts below the threshold, so the dim-5
    # class dies there rather than surviving to the clip
    assert h5.death == pytest.approx(1.9213449391, abs=1e-6)
    assert not h5.clipped_at_rn
    assert bc.unknown_beyond == 3


def test_barcode_p6_strict():
    bc = predictor.barcode(6, "strict")
    assert bc.dims() == [1, 2]
    (h1,) = bc.bars(1)
    assert (h1.birth, h1.death) == pytest.approx((0.0, 1.5), abs=1e-12)
    (h2,) = bc.bars(2)
    assert (h2.birth, h2.death) == pytest.approx((1.5, SQRT3), abs=1e-9)
    assert h2.multiplicity == 1 and h2.death_closed and h2.clipped_at_rn


def test_barcode_p6_closed_ephemeral():
    bc = predictor.barcode(6, "closed")
    eph = [iv for iv in bc.intervals if iv.ephemeral]
    assert len(eph) == 1
    assert eph[0].multiplicity == 4  # 2q with q = 2
    (h1,) = bc.bars(1)
    assert not h1.death_closed  # circle regime open at the first minimum


def test_barcode_p9_closed():
    bc = predictor.barcode(9, "closed")
    long_bars = [iv for iv in bc.bars(2) if not iv.ephemeral]
    assert len(long_bars) == 1
    bar = long_bars[0]
    assert bar.multiplicity == 2
    assert (bar.birth, bar.death) == pytest.approx(
        (SQRT3 * math.cos(math.pi / 9), SQRT3), abs=1e-9
    )
    assert bar.birth_closed and bar.death_closed
    eph = sorted(
        (iv for iv in bc.bars(2) if iv.ephemeral), key=lambda iv: -iv.multiplicity
    )
    assert [iv.multiplicity for iv in eph] == [6, 3]  # 2q over (s,t), q at t
    (h3,) = bc.bars(3)
    assert h3.clipped_at_rn and not h3.death_closed


def test_barcode_small_n_clipped_circle():
    for n in (4, 5):
        bc = predictor.barcode(n, "strict")
        (h1,) = bc.intervals
        assert h1.dim == 1 and h1.clipped_at_rn
        assert h1.death == pytest.approx(
            predictor.geometry.cyclicity_threshold(n), abs=1e-9
        )


def test_barcode_rejects_triangle():
    with pytest.raises(CyclicityError):
        predictor.barcode(3, "strict")


def test_homotopy_type_examples():
    assert predictor.homotopy_type_polygon(9, 1.65, "strict") == HomotopyType(
        "wedge_of_even_spheres", 2, 2
    )
    assert predictor.homotopy_type_polygon(9, 1.65, "closed") == HomotopyType(
        "wedge_of_even_spheres", 2, 8
    )
    assert predictor.homotopy_type_polygon(9, SQRT3, "closed") == HomotopyType(
        "wedge_of_even_spheres", 2, 5
    )


def test_homotopy_type_regimes():
    assert predictor.homotopy_type_polygon(9, 1.0, "strict").kind == "circle"
    assert predictor.homotopy_type_polygon(9, 1.80, "strict").describe() == "S^3"
    # boundary at the window minimum: strict stays a circle, closed jumps
    s91 = SQRT3 * math.cos(math.pi / 9)
    assert predictor.homotopy_type_polygon(9, s91, "strict").kind == "circle"
    assert predictor.homotopy_type_polygon(9, s91, "closed").count == 2
    # at the window maximum under strict: still the wedge
    assert predictor.homotopy_type_polygon(9, SQRT3, "strict").count == 2


def test_homotopy_type_errors():
    with pytest.raises(CyclicityError):
        predictor.homotopy_type_polygon(9, 1.90, "strict")
    with pytest.raises(InputError):
        predictor.homotopy_type_polygon(9, -1.0, "strict")
    # P12 at a scale inside the five-pointed-star window: uncertified
    with pytest.raises(NotCertifiableError):
        predictor.homotopy_type_polygon(12, 1.851, "strict")


def test_homotopy_type_certifiable_after_validation():
    lv = predictor.ladder(12, validate=True, grid_size=1500)
    level2 = [x for x in lv if x.winding == 2]
    assert level2 and level2[0].certified


def test_convention_consistency_on_interiors():
    for n in (6, 9, 15):
        lv = predictor.ladder(n)
        for lvl in lv:
            if lvl.side_min is None or not lvl.certified:
                break
            rn = predictor.geometry.cyclicity_threshold(n)
            if lvl.side_max >= rn:
                continue
            mid = 0.5 * (lvl.side_min + lvl.side_max)
            a = predictor.homotopy_type_polygon(n, mid, "strict")
            b = predictor.homotopy_type_polygon(n, mid, "closed")
            # interiors of the singular window differ only by ephemeral
            # summands: same dimension, counts q-1 vs 3q-1
            assert a.dim == b.dim
            assert b.count == a.count * 3 + 2


def test_equivalence_regimes_are_constant():
    # scales within one homotopy-equivalence regime give equal types
    for r1, r2 in ((1.66, 1.70), (1.75, 1.80)):
        assert predictor.homotopy_type_polygon(
            9, r1, "strict"
        ) == predictor.homotopy_type_polygon(9, r2, "strict")


def test_inclusion_rank_examples():
    assert predictor.inclusion_rank(9, 1, 1.64, 1.70) == 2
    assert predictor.inclusion_rank(6, 1, 1.5, 1.7) == 1
    assert predictor.inclusion_rank(15, 2, 1.87, 1.90) == 2


def test_inclusion_rank_outside_window():
    # both scales in the circle regime: rank equals the Betti number there
    assert predictor.inclusion_rank(9, 1, 1.0, 1.2) == 0
    with pytest.raises(InputError):
        predictor.inclusion_rank(9, 1, 1.0, 1.70)


def test_json_roundtrip():
    for n, conv in ((15, "strict"), (6, "closed"), (9, "closed"), (5, "strict")):
        bc = predictor.barcode(n, conv)
        assert predictor.from_json(predictor.to_json(bc)) == bc


def test_text_roundtrip():
    for n, conv in ((15, "strict"), (9, "closed")):
        bc = predictor.barcode(n, conv)
        assert predictor.from_text(predictor.to_text(bc)) == bc


def test_validated_p15_covers_every_dimension_to_the_clip():
    # with the seven-pointed-star level validated, the barcode is complete
    # below the threshold: no unknown levels remain and the top bar is
    # clipped there
    bc = predictor.barcode(15, "strict", validate=True, grid_size=2000)
    assert bc.dims() == [1, 2, 3, 4, 5, 6, 7]
    assert bc.unknown_beyond is None
    h6 = [iv for iv in bc.bars(6) if not iv.ephemeral]
    assert h6 and h6[0].multiplicity == 14  # q - 1 with q = 15
    assert h6[0].birth == pytest.approx(1.9213449391, abs=1e-6)
    (h7,) = bc.bars(7)
    assert h7.clipped_at_rn and h7.death == pytest.approx(bc.rn, abs=1e-9)
