"""Closed-form C^n checks: kernel-vs-distance and Azukawa indicatrix gaps.

Everything here is exact arithmetic on balls and polydiscs, the kinds
whose pluricomplex Green's function is explicit.  The indicatrix volume
is only available for a pole at the center (off-center would need a
Monge-Ampere solve); those calls raise NoClosedForm rather than return
anything approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, pi

import numpy as np

from .bergman import ball_kernel, polydisc_kernel
from .errors import NoClosedForm
from .geometry import Ball, Polydisc

__all__ = [
    "IndicatrixResult", "kernel_distance_gap", "azukawa_volume",
    "kernel_indicatrix_gap", "indicatrix_distance_gap",
]


@dataclass(frozen=True)
class IndicatrixResult:
    """Euclidean (real-2n) volume of the Azukawa indicatrix at a point,
    against the distance bound pi^n/n! * delta^{2n}."""

    domain: object
    point: tuple
    volume: float
    bound: float
    gap: float
    dimension: int


def _kernel(domain, z) -> float:
    if isinstance(domain, Ball):
        return ball_kernel(domain.center, domain.radius, z)
    if isinstance(domain, Polydisc):
        return polydisc_kernel(domain.center, domain.radii, z)
    raise NoClosedForm(f"no closed-form kernel for kind {domain.kind!r}")


def _distance_bound(domain, z) -> float:
    delta = domain.boundary_distance(z)
    n = domain.dimension
    return pi ** n / factorial(n) * delta ** (2 * n)


def kernel_distance_gap(domain, z) -> float:
    """n!/(pi^n delta^{2n}) - K(z); nonnegative, zero only for a centered ball."""
    n = domain.dimension
    delta = domain.boundary_distance(z)
    return factorial(n) / (pi ** n * delta ** (2 * n)) - _kernel(domain, z)


def _require_centered(domain, z) -> tuple:
    z = tuple(complex(x) for x in np.atleast_1d(np.asarray(z, dtype=complex)))
    c = domain.center
    if len(z) != len(c):
        raise NoClosedForm("point dimension does not match the domain")
    scale = (domain.radius if isinstance(domain, Ball) else max(domain.radii))
    if max(abs(a - b) for a, b in zip(z, c)) > 1e-14 * scale:
        raise NoClosedForm(
            "indicatrix volume is only closed-form for a pole at the center")
    return z


def azukawa_volume(domain, z) -> IndicatrixResult:
    """Indicatrix volume at the center: the ball's indicatrix is the ball
    itself, the polydisc's is the polydisc itself."""
    z = _require_centered(domain, z)
    n = domain.dimension
    if isinstance(domain, Ball):
        vol = pi ** n * domain.radius ** (2 * n) / factorial(n)
    elif isinstance(domain, Polydisc):
        vol = pi ** n * float(np.prod(np.asarray(domain.radii) ** 2))
    else:
        raise NoClosedForm(f"no closed-form indicatrix for kind {domain.kind!r}")
    bound = _distance_bound(domain, z)
    return IndicatrixResult(domain, z, vol, bound, vol - bound, n)


def kernel_indicatrix_gap(domain, z) -> float:
    """K(z) - 1/Vol(indicatrix); nonnegative, zero on centered balls and polydiscs."""
    res = azukawa_volume(domain, z)
    return _kernel(domain, z) - 1.0 / res.volume


def indicatrix_distance_gap(domain, z) -> float:
    """Vol(indicatrix) - pi^n/n! delta^{2n}; nonnegative, zero only for a centered ball."""
    return azukawa_volume(domain, z).gap
