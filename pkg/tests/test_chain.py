"""The six-value chain: oracle, numerical evaluation, flags, serialization."""

from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suitachain import (
    Disc,
    classify_rigidity,
    coarea_residual,
    disc_chain_oracle,
    disc_oracle,
    evaluate_chain,
    evaluate_chain_multi,
    isoperimetric_deficit,
    monotonicity_check,
    report_csv_header,
    report_csv_row,
    report_to_json,
    solve,
    sublevel_profile,
)
from suitachain.chain import VALUE_NAMES, VERDICTS, _flags
from suitachain.errors import ChainViolation, PointOutsideDomain

F_HALF_T1 = 1.761534483502003  # disc pole 0.5: (1 - e^{2t} q^2)^2/(1-q^2)^2, t = -2
F_HALF_T2 = 1.659514819221759  # same, t = -1


# ---------------------------------------------------------------------------
# closed-form oracle


def test_oracle_centered_disc_all_ones():
    rep = disc_chain_oracle(0.0, 1.0, 0.0, -2.0, -1.0)
    assert rep.values == (1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
    assert all(rep.equal)
    assert rep.verdict == "disc-centered-at-z"


def test_oracle_offcenter_values():
    rep = disc_chain_oracle(0.0, 1.0, 0.5, -2.0, -1.0)
    assert rep.values[0] == pytest.approx(4.0, abs=0)
    assert rep.values[1] == pytest.approx(16.0 / 9.0, rel=1e-15)
    assert rep.values[2] == rep.values[1]
    assert rep.values[3] == pytest.approx(F_HALF_T1, rel=1e-15)
    assert rep.values[4] == pytest.approx(F_HALF_T2, rel=1e-15)
    assert rep.values[5] == 1.0
    assert rep.equal == (False, True, False, False, False)
    assert rep.verdict == "biholomorphic-to-disc-evidence"


def test_oracle_scale_covariance():
    # chain values transform as 1/length^2 under z -> 2z
    small = disc_chain_oracle(0.0, 1.0, 0.5, -2.0, -1.0)
    big = disc_chain_oracle(0.0, 2.0, 1.0, -2.0, -1.0)
    assert np.allclose(np.array(big.values), np.array(small.values) / 4.0, rtol=1e-15)
    assert big.verdict == small.verdict


def test_oracle_input_validation():
    with pytest.raises(PointOutsideDomain):
        disc_chain_oracle(0.0, 1.0, 1.5, -2.0, -1.0)
    with pytest.raises(ValueError):
        disc_chain_oracle(0.0, 1.0, 0.0, -1.0, -2.0)
    with pytest.raises(ValueError):
        disc_chain_oracle(0.0, 1.0, 0.0, -2.0, 0.0)


@given(q=st.floats(0.0, 0.85), dt=st.floats(0.05, 2.0), t2=st.floats(-2.0, -0.05))
@settings(max_examples=150, deadline=None)
def test_oracle_ordering_property(q, dt, t2):
    rep = disc_chain_oracle(0.0, 1.0, q, t2 - dt, t2)
    assert all(g >= -1e-12 for g in rep.gaps)
    assert rep.verdict in VERDICTS
    assert rep.values[3] >= rep.values[4] >= rep.values[5] > 0.0


# ---------------------------------------------------------------------------
# numerical chain


def test_numeric_disc_center(unit_disc, cfg):
    rep = evaluate_chain(unit_disc, 0.0, -2.0, -1.0, cfg)
    assert max(abs(v - 1.0) for v in rep.values) < 1e-6
    assert rep.verdict == "disc-centered-at-z"
    assert all(rep.equal)


def test_numeric_disc_offcenter(unit_disc, cfg):
    rep = evaluate_chain(unit_disc, 0.5, -2.0, -1.0, cfg)
    assert rep.values[0] == pytest.approx(4.0, rel=1e-12)
    assert rep.values[1] == pytest.approx(16.0 / 9.0, rel=1e-10)
    assert rep.values[2] == pytest.approx(16.0 / 9.0, rel=1e-10)
    assert rep.values[3] == pytest.approx(F_HALF_T1, rel=1e-6)
    assert rep.values[4] == pytest.approx(F_HALF_T2, rel=1e-6)
    assert rep.values[5] == pytest.approx(1.0, rel=1e-13)
    assert rep.equal == (False, True, False, False, False)
    assert rep.verdict == "biholomorphic-to-disc-evidence"
    assert abs(rep.gaps[1]) < 1e-10


def test_numeric_annulus_no_equality(annulus, cfg):
    rep = evaluate_chain(annulus, 0.5, -2.5, -1.2, cfg)
    assert rep.verdict == "no-equality"
    assert all(rep.strict)
    assert not any(rep.equal)
    # pi K - c^2 is the Suita gap; frozen from the theta/Laurent oracles
    assert rep.gaps[1] == pytest.approx(2.74050e-4, abs=1e-7)


def test_numeric_scale_covariance(unit_disc, cfg):
    small = evaluate_chain(unit_disc, 0.5, -2.0, -1.0, cfg)
    big = evaluate_chain(Disc(0.0, 2.0), 1.0, -2.0, -1.0, cfg)
    assert np.allclose(np.array(big.values), np.array(small.values) / 4.0, rtol=1e-6)


def test_outside_point_raises(unit_disc, cfg):
    with pytest.raises(PointOutsideDomain):
        evaluate_chain(unit_disc, 1.2, -2.0, -1.0, cfg)


def test_bad_levels_raise(unit_disc, cfg):
    for t1, t2 in ((-1.0, -2.0), (-1.0, -1.0), (-1.0, 0.0)):
        with pytest.raises(ValueError):
            evaluate_chain(unit_disc, 0.0, t1, t2, cfg)


def test_multi_shares_common_values(unit_disc, cfg):
    reps = evaluate_chain_multi(unit_disc, 0.5, [-2.5, -1.5, -0.5], cfg)
    assert len(reps) == 2
    assert reps[0].values[:3] == reps[1].values[:3]
    assert reps[0].values[5] == reps[1].values[5]
    assert reps[0].values[4] == reps[1].values[3]  # shared middle level
    assert (reps[0].t1, reps[0].t2) == (-2.5, -1.5)
    assert (reps[1].t1, reps[1].t2) == (-1.5, -0.5)


def test_multi_needs_two_levels(unit_disc, cfg):
    with pytest.raises(ValueError):
        evaluate_chain_multi(unit_disc, 0.0, [-1.0], cfg)


# ---------------------------------------------------------------------------
# flags and classification


def test_flags_raise_on_genuine_violation():
    values = (1.0, 2.0, 0.5, 0.4, 0.3, 0.2)  # link 1 inverted far beyond tolerance
    with pytest.raises(ChainViolation) as err:
        _flags(values, (1e-12,) * 5, 1e-12)
    assert err.value.link == 1
    assert err.value.magnitude == pytest.approx(1.0)


def test_flags_tolerate_roundoff_inversion():
    values = (1.0, 1.0 + 1e-14, 0.5, 0.4, 0.3, 0.2)
    equal, strict = _flags(values, (1e-12,) * 5, 1e-12)
    assert equal[0] and not strict[0]


def test_classify_matches_report_verdicts(unit_disc, annulus, cfg):
    reps = (evaluate_chain(unit_disc, 0.0, -2.0, -1.0, cfg),
            evaluate_chain(unit_disc, 0.5, -2.0, -1.0, cfg),
            evaluate_chain(annulus, 0.5, -2.5, -1.2, cfg))
    verdicts = [r.verdict for r in reps]
    assert verdicts == ["disc-centered-at-z", "biholomorphic-to-disc-evidence",
                        "no-equality"]
    for r in reps:
        assert classify_rigidity(r, cfg.equality_tol) == r.verdict


def test_classify_loosening_flips_verdict():
    rep = disc_chain_oracle(0.0, 1.0, 0.5, -2.0, -1.0)
    assert rep.verdict == "biholomorphic-to-disc-evidence"
    # at 5% equality tolerance the capacity/f link also closes
    assert classify_rigidity(rep, 0.05) == "disc-centered-at-z"


# ---------------------------------------------------------------------------
# profile-level checks


def test_monotonicity_clean_and_corrupted(ellipse, cfg):
    sol = solve(ellipse, 0.0, cfg)
    profile = sublevel_profile(sol, [-3.0, -2.0, -1.0, -0.3], cfg)
    assert monotonicity_check(profile, 1e-9) == []
    corrupted = replace(profile, f=profile.f[::-1])
    assert len(monotonicity_check(corrupted, 1e-9)) > 0


def test_isoperimetric_deficit_signs(ellipse, cfg):
    d_prof = sublevel_profile(disc_oracle(0.0, 1.0, 0.0), [-1.5, -0.8], cfg)
    assert np.max(np.abs(isoperimetric_deficit(d_prof))) < 1e-6
    sol = solve(ellipse, 0.0, cfg)
    e_prof = sublevel_profile(sol, [-3.0, -0.3], cfg)
    deficit = isoperimetric_deficit(e_prof)
    assert np.all(deficit > -1e-9)
    assert deficit[1] > 1.0          # shallow levels inherit the eccentricity
    assert deficit[0] < deficit[1]   # deep levels round out toward circles


def test_coarea_residual_small_inside_grid(cfg):
    profile = sublevel_profile(disc_oracle(0.0, 1.0, 0.0),
                               np.linspace(-2.0, -1.0, 9), cfg)
    rel = coarea_residual(profile)[1:-1] / profile.coarea[1:-1]
    assert np.max(rel) < 0.03  # central differences at h = 0.125


# ---------------------------------------------------------------------------
# serialization


def test_report_json_layout(unit_disc, cfg):
    rep = evaluate_chain(unit_disc, 0.5, -2.0, -1.0, cfg)
    data = report_to_json(rep)
    assert data["schema"] == "suitachain-chain/1"
    assert data["verdict"] == rep.verdict
    assert set(data["values"]) == set(VALUE_NAMES)
    assert data["values"]["delta_inv_sq"] == rep.values[0]
    assert data["point"] == [0.5, 0.0]
    assert len(data["gaps"]) == len(data["link_tolerances"]) == 5
    assert data["equal"] == list(rep.equal)


def test_csv_header_and_row():
    assert report_csv_header() == (
        "point_re,point_im,t1,t2,"
        "delta_inv_sq,pi_bergman,cap_sq,f_t1,f_t2,pi_over_vol,"
        "gap_1,gap_2,gap_3,gap_4,gap_5,"
        "equal_1,equal_2,equal_3,equal_4,equal_5,verdict")
    rep = disc_chain_oracle(0.0, 1.0, 0.5, -2.0, -1.0)
    cells = report_csv_row(rep).split(",")
    assert len(cells) == len(report_csv_header().split(","))
    assert cells[-1] == rep.verdict                 # verdict is the last column
    assert float(cells[4]) == rep.values[0]         # %.17g round-trips
    assert cells[15:20] == [str(int(e)) for e in rep.equal]
    assert cells[15:20] == ["0", "1", "0", "0", "0"]
