"""Closed-form C^n gap checks on balls and polydiscs."""

from math import pi

import numpy as np
import pytest

from suitachain import (
    Ball,
    Polydisc,
    azukawa_volume,
    ball_kernel,
    indicatrix_distance_gap,
    kernel_at,
    kernel_distance_gap,
    kernel_indicatrix_gap,
)
from suitachain.errors import NoClosedForm, PointOutsideDomain


def test_centered_ball_all_gaps_vanish():
    # the ball centered at the evaluation point saturates every inequality
    b = Ball((0.0, 0.0), 1.0)
    assert kernel_distance_gap(b, (0.0, 0.0)) == pytest.approx(0.0, abs=1e-15)
    assert kernel_indicatrix_gap(b, (0.0, 0.0)) == pytest.approx(0.0, abs=1e-15)
    assert indicatrix_distance_gap(b, (0.0, 0.0)) == pytest.approx(0.0, abs=1e-15)


def test_centered_ball_scaled():
    b = Ball((0.3, -0.2j), 1.7)
    z = (0.3, -0.2j)
    assert kernel_distance_gap(b, z) == pytest.approx(0.0, abs=1e-15)
    assert indicatrix_distance_gap(b, z) == pytest.approx(0.0, abs=1e-13)


def test_bidisc_gaps():
    p = Polydisc((0.0, 0.0), (1.0, 1.0))
    z = (0.0, 0.0)
    # K = 1/pi^2, delta = 1, bound kernel = 2/pi^2: gap = 1/pi^2
    assert kernel_distance_gap(p, z) == pytest.approx(1.0 / pi ** 2, rel=1e-14)
    # indicatrix is the bidisc itself: volume pi^2, twice the ball bound pi^2/2
    res = azukawa_volume(p, z)
    assert res.volume == pytest.approx(pi ** 2, rel=1e-15)
    assert res.bound == pytest.approx(pi ** 2 / 2.0, rel=1e-15)
    assert res.gap == pytest.approx(pi ** 2 / 2.0, rel=1e-14)
    assert res.dimension == 2
    # kernel equals 1/volume exactly on the centered polydisc
    assert kernel_indicatrix_gap(p, z) == pytest.approx(0.0, abs=1e-16)
    assert indicatrix_distance_gap(p, z) == res.gap


def test_offcenter_ball_kernel_distance_gap():
    b = Ball((0.0,), 1.0)
    # n = 1 at z = 0.5: 1/delta^2 - pi K = 4 - 16/9, scaled by 1/pi
    gap = kernel_distance_gap(b, (0.5,))
    assert gap == pytest.approx((4.0 - 16.0 / 9.0) / pi, rel=1e-14)
    assert gap > 0


def test_one_dim_matches_planar_chain(disc_model_30):
    # the C^n surface at n = 1 must reproduce the planar kernel values
    b = Ball((0.0,), 1.0)
    k_closed = ball_kernel((0.0,), 1.0, (0.5,))
    assert k_closed == pytest.approx(kernel_at(disc_model_30, 0.5), rel=1e-10)
    res = azukawa_volume(b, (0.0,))
    assert res.volume == pytest.approx(pi, rel=1e-15)
    assert res.bound == pytest.approx(pi, rel=1e-15)


def test_disc_radius_two_azukawa():
    res = azukawa_volume(Ball((0.0,), 2.0), (0.0,))
    assert res.volume == pytest.approx(4.0 * pi, rel=1e-15)
    assert res.gap == pytest.approx(0.0, abs=1e-14)


def test_indicatrix_result_fields():
    p = Polydisc((1.0, -1j), (0.5, 2.0))
    res = azukawa_volume(p, (1.0, -1j))
    assert res.domain is p
    assert res.point == (1.0 + 0j, -1j)
    assert res.volume == pytest.approx(pi ** 2 * 0.25 * 4.0, rel=1e-15)
    # bound uses delta = min radii = 0.5
    assert res.bound == pytest.approx(pi ** 2 / 2.0 * 0.5 ** 4, rel=1e-15)
    assert res.gap == pytest.approx(res.volume - res.bound, abs=0)
    assert res.dimension == 2


def test_gap_positivity_off_center_polydisc():
    p = Polydisc((0.0, 0.0), (1.0, 2.0))
    for z in ((0.3, 0.0), (0.0, 1.2), (0.2, -0.7j)):
        assert kernel_distance_gap(p, z) > 0.0


def test_azukawa_offcenter_raises():
    with pytest.raises(NoClosedForm):
        azukawa_volume(Ball((0.0, 0.0), 1.0), (0.1, 0.0))
    with pytest.raises(NoClosedForm):
        kernel_indicatrix_gap(Polydisc((0.0,), (1.0,)), (0.5,))
    with pytest.raises(NoClosedForm):
        indicatrix_distance_gap(Ball((0.0,), 1.0), (0.3,))


def test_dimension_mismatch_raises():
    with pytest.raises(NoClosedForm):
        azukawa_volume(Ball((0.0, 0.0), 1.0), (0.0,))


def test_outside_point_raises():
    with pytest.raises(PointOutsideDomain):
        kernel_distance_gap(Ball((0.0, 0.0), 1.0), (1.0, 0.5))


class _FakeKind:
    kind = "egg"
    center = (0.0,)
    radii = (1.0,)
    dimension = 1

    def boundary_distance(self, z):
        return 1.0


def test_unsupported_kind_raises():
    with pytest.raises(NoClosedForm):
        azukawa_volume(_FakeKind(), (0.0,))
