"""Closed-form C^n extensions of the planar chain endpoints.

In n complex variables the chain shrinks to three quantities with exact
formulas on balls and polydiscs: the kernel-vs-distance gap
n!/(pi^n delta^{2n}) - K(z), the Azukawa indicatrix volume against
1/K, and the indicatrix volume against pi^n/n! delta^{2n}.  A centered
ball collapses everything; a polydisc keeps the distance-facing gaps
open because its indicatrix is the polydisc, not a ball.
"""

from math import pi

from suitachain import (
    Ball,
    Polydisc,
    azukawa_volume,
    ball_kernel,
    indicatrix_distance_gap,
    kernel_at,
    kernel_distance_gap,
    kernel_indicatrix_gap,
    polydisc_kernel,
)
from suitachain import Disc, build_model, build_quadrature_adapted

ball = Ball((0.0, 0.0), 1.0)
bidisc = Polydisc((0.0, 0.0), (1.0, 1.0))

print("centered unit ball vs unit bidisc in C^2:")
print(f"  {'quantity':<28}{'ball':>14}{'bidisc':>14}")
rows = (
    ("K(0)", ball_kernel((0, 0), 1.0, (0, 0)), polydisc_kernel((0, 0), (1, 1), (0, 0))),
    ("kernel_distance_gap", kernel_distance_gap(ball, (0, 0)),
     kernel_distance_gap(bidisc, (0, 0))),
    ("indicatrix volume", azukawa_volume(ball, (0, 0)).volume,
     azukawa_volume(bidisc, (0, 0)).volume),
    ("kernel_indicatrix_gap", kernel_indicatrix_gap(ball, (0, 0)),
     kernel_indicatrix_gap(bidisc, (0, 0))),
    ("indicatrix_distance_gap", indicatrix_distance_gap(ball, (0, 0)),
     indicatrix_distance_gap(bidisc, (0, 0))),
)
for name, a, b in rows:
    print(f"  {name:<28}{a:>14.9f}{b:>14.9f}")
print(f"  (2/pi^2 = {2 / pi ** 2:.9f}, 1/pi^2 = {1 / pi ** 2:.9f}, "
      f"pi^2/2 = {pi ** 2 / 2:.9f})")

# the full IndicatrixResult records what was compared
res = azukawa_volume(Polydisc((1.0, -1.0j), (0.5, 2.0)), (1.0, -1.0j))
print(f"\nPolydisc((1,-i), (0.5, 2)): volume {res.volume:.6f}, "
      f"distance bound {res.bound:.6f}, gap {res.gap:.6f}, n = {res.dimension}")

# off the center the ball kernel grows faster than the distance bound decays
print("\nball kernel gap along a radius:")
for r in (0.0, 0.3, 0.6, 0.8):
    print(f"  |z| = {r:.1f}: gap = {kernel_distance_gap(ball, (r, 0.0)):.6f}")

# n = 1 closes the loop: the one-dimensional ball formula must agree with
# the numerically orthonormalized planar kernel
disc = Disc(0.0, 1.0)
model = build_model(disc, 0.5, 30, build_quadrature_adapted(disc, 400))
closed = ball_kernel((0.0,), 1.0, (0.5,))
numeric = kernel_at(model, 0.5)
print(f"\nn = 1 consistency at z = 0.5: closed form {closed:.12f}, "
      f"planar model {numeric:.12f}, rel diff {abs(numeric / closed - 1):.2e}")
