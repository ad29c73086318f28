"""The sharp six-value inequality chain and its rigidity classification.

At a point z of a bounded domain D, with levels t1 < t2 < 0,

    1/dist(z, bD)^2  >=  pi K(z)  >=  c(z)^2
        >=  pi e^{2 t1}/Vol(D_{t1})  >=  pi e^{2 t2}/Vol(D_{t2})  >=  pi/Vol(D)

where K is the Bergman kernel, c the logarithmic capacity, and D_t the
Green's sublevel sets.  Each link closing identifies a rigidity case: the
distance and volume links close only for a disc centered at z, while the
Bergman/capacity link closes on any domain biholomorphic to a disc.
Ordering violations beyond the propagated estimator tolerances are solver
faults, never findings; the ordering itself is a theorem.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import hypot

import numpy as np

from .bergman import (
    build_model,
    build_quadrature_adapted,
    kernel_at,
    kernel_tail_estimate,
)
from .errors import ChainViolation, PointOutsideDomain
from .geometry import FourierCurve, _distance_to_polyline
from .green import (
    SolverConfig,
    capacity_circle_mean,
    capacity_robin,
    solve,
    sublevel_profile,
)

__all__ = [
    "ChainReport", "evaluate_chain", "evaluate_chain_multi", "disc_chain_oracle",
    "classify_rigidity", "monotonicity_check", "isoperimetric_deficit",
    "coarea_residual", "report_to_json", "report_csv_header", "report_csv_row",
]

VALUE_NAMES = ("delta_inv_sq", "pi_bergman", "cap_sq", "f_t1", "f_t2", "pi_over_vol")
VERDICTS = ("disc-centered-at-z", "biholomorphic-to-disc-evidence",
            "no-equality", "inconclusive")
STRICTNESS_FACTOR = 10.0  # a gap this many tolerances wide counts as strict


@dataclass(frozen=True)
class ChainReport:
    """Six chain values at one point, their gaps, flags, and the verdict.

    link_tolerances holds the raw root-sum-square of the operand
    tolerances; the equal/strict flags additionally apply the relative
    equality-detection floor they were computed with.
    """

    domain_kind: str
    point: complex
    t1: float
    t2: float
    values: tuple
    tolerances: tuple
    gaps: tuple
    link_tolerances: tuple
    equal: tuple
    strict: tuple
    verdict: str


def _flags(values, rss, equality_tol):
    equal, strict = [], []
    for i in range(5):
        scale = max(abs(values[i]), abs(values[i + 1]))
        comb = max(rss[i], equality_tol * scale)
        g = values[i] - values[i + 1]
        if g < -comb:
            raise ChainViolation(i + 1, -g)
        equal.append(bool(abs(g) <= comb))
        strict.append(bool(g > STRICTNESS_FACTOR * comb))
    return tuple(equal), tuple(strict)


def _verdict(equal, strict):
    if equal[0] or equal[2] or equal[3] or equal[4]:
        return "disc-centered-at-z"
    if equal[1]:
        return "biholomorphic-to-disc-evidence"
    if all(strict):
        return "no-equality"
    return "inconclusive"


def _assemble(domain_kind, point, t1, t2, values, tols, equality_tol):
    gaps = tuple(values[i] - values[i + 1] for i in range(5))
    rss = tuple(hypot(tols[i], tols[i + 1]) for i in range(5))
    equal, strict = _flags(values, rss, equality_tol)
    return ChainReport(domain_kind, point, t1, t2, tuple(values), tuple(tols),
                       gaps, rss, equal, strict, _verdict(equal, strict))


def _distance_tolerance(domain, z, delta):
    if isinstance(domain, FourierCurve):
        fine = _distance_to_polyline(domain.polyline(2 * domain.proxy_resolution), z)
        return 2.0 * abs(fine - delta) * 2.0 / delta ** 3 + 1e-12 / delta ** 2
    return 1e-13 / delta ** 2


def evaluate_chain_multi(domain, z, levels, config: SolverConfig = SolverConfig()):
    """One chain report per adjacent level pair, sharing the expensive solves."""
    z = complex(z)
    if not domain.contains(z):
        raise PointOutsideDomain(f"{z} is not inside the {domain.kind}")
    levels = [float(t) for t in levels]
    if len(levels) < 2 or any(b <= a for a, b in zip(levels, levels[1:])) \
            or levels[-1] >= 0:
        raise ValueError("need strictly increasing negative levels t1 < t2 < 0")

    delta = domain.boundary_distance(z)
    v_delta = delta ** -2
    tol_delta = _distance_tolerance(domain, z, delta)

    rule = build_quadrature_adapted(domain, config.bergman_resolution)
    model = build_model(domain, z, config.bergman_degree, rule)
    k = kernel_at(model, z)
    tail = kernel_tail_estimate(model, z)
    v_k = np.pi * k
    tol_k = np.pi * (3.0 * tail + model.gram_defect * k
                     + 2.0 * rule.measure_defect * k + 1e-13 * k)

    sol = solve(domain, z, config)
    c = capacity_robin(sol)
    c_mean = capacity_circle_mean(sol, 0.5 * delta)
    v_c = c * c
    tol_c = v_c * (6.0 * sol.residual + 2.0 * abs(c - c_mean) / c + 1e-13)

    profile = sublevel_profile(sol, levels, config)
    # last term: O(h^6) Hermite segment-area error on the sparsest loop
    f_tol = profile.f * (3.0 * sol.residual * profile.coarea / profile.volume
                         + 3.0 * np.abs(profile.flux - 2.0 * np.pi) / (2.0 * np.pi)
                         + 100.0 * (2.0 * np.pi / profile.min_segments) ** 6
                         + 1e-11)

    v_vol = np.pi / domain.area()
    tol_vol = 1e-13 * v_vol

    reports = []
    for i in range(len(levels) - 1):
        values = (v_delta, v_k, v_c, profile.f[i], profile.f[i + 1], v_vol)
        tols = (tol_delta, tol_k, tol_c, f_tol[i], f_tol[i + 1], tol_vol)
        reports.append(_assemble(domain.kind, z, levels[i], levels[i + 1],
                                 values, tols, config.equality_tol))
    return reports


def evaluate_chain(domain, z, t1, t2, config: SolverConfig = SolverConfig()) -> ChainReport:
    """All six chain values at z with levels (t1, t2), flags, and verdict."""
    return evaluate_chain_multi(domain, z, [t1, t2], config)[0]


def disc_chain_oracle(center, radius, z, t1, t2) -> ChainReport:
    """Exact chain on a disc: every value in closed form, tolerances at machine scale.

    With q = |z - center|/R the sublevel volume of the Mobius Green's
    function gives f(t) = (1 - e^{2t} q^2)^2 / ((1 - q^2)^2 R^2).
    """
    center, z = complex(center), complex(z)
    rho = abs(z - center)
    if not rho < radius:
        raise PointOutsideDomain(f"{z} is not inside disc({center}, {radius})")
    if not t1 < t2 < 0:
        raise ValueError("need t1 < t2 < 0")
    r2 = radius * radius
    q2 = (rho / radius) ** 2

    def f_exact(t):
        return (1.0 - np.exp(2.0 * t) * q2) ** 2 / ((1.0 - q2) ** 2 * r2)

    suita = r2 / (r2 - rho * rho) ** 2   # both pi K and c^2 on a disc
    values = ((radius - rho) ** -2, suita, suita, f_exact(t1), f_exact(t2), 1.0 / r2)
    tols = tuple(4e-16 * v for v in values)
    return _assemble("disc", z, t1, t2, values, tols, equality_tol=1e-12)


def classify_rigidity(report: ChainReport, tol: float) -> str:
    """Re-derive the verdict at an explicit relative equality tolerance."""
    equal, strict = _flags(report.values, report.link_tolerances, tol)
    return _verdict(equal, strict)


# ---------------------------------------------------------------------------
# profile-level checks


def monotonicity_check(profile, tol: float):
    """Adjacent level pairs where f increases by more than tol (expected empty)."""
    out = []
    for i in range(len(profile.levels) - 1):
        rise = profile.f[i + 1] - profile.f[i]
        if rise > tol:
            out.append((i, float(profile.levels[i]), float(profile.levels[i + 1]),
                        float(rise)))
    return out


def isoperimetric_deficit(profile) -> np.ndarray:
    """Per-level sigma^2 - 4 pi Vol; nonnegative, zero only for circular levels."""
    return profile.sigma ** 2 - 4.0 * np.pi * profile.volume


def coarea_residual(profile) -> np.ndarray:
    """Per-level |finite-difference dVol/dt - contour integral of dsigma/|grad G||."""
    return np.abs(profile.dvol_dt - profile.coarea)


# ---------------------------------------------------------------------------
# report serialization


def report_to_json(report: ChainReport) -> dict:
    return {
        "schema": "suitachain-chain/1",
        "domain_kind": report.domain_kind,
        "point": [report.point.real, report.point.imag],
        "t1": report.t1,
        "t2": report.t2,
        "values": dict(zip(VALUE_NAMES, report.values)),
        "tolerances": dict(zip(VALUE_NAMES, report.tolerances)),
        "gaps": list(report.gaps),
        "link_tolerances": list(report.link_tolerances),
        "equal": list(report.equal),
        "strict": list(report.strict),
        "verdict": report.verdict,
    }


def report_csv_header() -> str:
    links = [f"gap_{i}" for i in range(1, 6)] + [f"equal_{i}" for i in range(1, 6)]
    return ",".join(["point_re", "point_im", "t1", "t2", *VALUE_NAMES,
                     *links, "verdict"])


def report_csv_row(report: ChainReport) -> str:
    nums = [report.point.real, report.point.imag, report.t1, report.t2,
            *report.values, *report.gaps]
    cells = [f"{v:.17g}" for v in nums]
    cells += [str(int(e)) for e in report.equal]
    cells.append(report.verdict)
    return ",".join(cells)
