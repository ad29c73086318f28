"""Sublevel geometry of G: volumes, level-curve integrals, and f(t).

D_t = {G < t} sweeps from a tiny disc around the pole (t -> -inf) out to
the whole domain (t -> 0).  The quantity f(t) = pi e^{2t}/Vol(D_t)
interpolates between c(z0)^2 and pi/Vol(D), and is nonincreasing; this
demo traces that interpolation on the ellipse and shows the internal
cross-checks that make a level trustworthy.
"""

import numpy as np

from suitachain import (
    Ellipse,
    SolverConfig,
    capacity_robin,
    coarea_residual,
    profile_to_csv,
    solve,
    sublevel_profile,
)

config = SolverConfig()
dom = Ellipse(0.0, 2.0, 1.0)
sol = solve(dom, 0.0, config)

levels = np.linspace(-4.0, -0.01, 16)
profile = sublevel_profile(sol, levels, config)

c2 = capacity_robin(sol) ** 2
floor = np.pi / dom.area()
print(f"c^2            = {c2:.9f}   (f limit as t -> -inf)")
print(f"pi / Vol(D)    = {floor:.9f}   (f limit as t -> 0-)")
print()
print("   t        Vol(D_t)    sigma       |flux-2pi|  f(t)        reliable")
for i, t in enumerate(levels):
    print(f"{t:7.3f}  {profile.volume[i]:10.6f}  {profile.sigma[i]:10.6f}  "
          f"{abs(profile.flux[i] - 2 * np.pi):.2e}  {profile.f[i]:.9f}  "
          f"{bool(profile.reliable[i])}")

assert np.all(np.diff(profile.f) <= 1e-9), "f must be nonincreasing"
print("\nf is nonincreasing and pinned between its two limits:",
      bool(np.all((profile.f <= c2 * 1.001) & (profile.f >= floor * 0.999))))

# the co-area formula dVol/dt = integral dsigma/|grad G| ties the volume
# derivative to a pure level-curve quantity; dvol_dt is a central
# difference over the level grid, so the residual tightens as the grid
# refines (the wide display grid above is too coarse for this check)
fine = sublevel_profile(sol, np.linspace(-2.2, -0.2, 21), config)
mid = slice(1, -1)
rel = coarea_residual(fine)[mid] / fine.coarea[mid]
print(f"co-area residual, 21 levels on [-2.2, -0.2]: max {np.max(rel):.2%}")

# each level also carries grid and Monte Carlo volume estimates; the
# reliable flag above is set from their agreement
i = len(levels) // 2
print(f"\nlevel {levels[i]:.3f}: curve {profile.volume[i]:.6f}, "
      f"grid {profile.volume_grid[i]:.6f}, "
      f"mc {profile.volume_mc[i]:.6f} +- {profile.volume_mc_stderr[i]:.6f}")

profile_to_csv(profile, "ellipse_profile.csv", {"domain": "ellipse(0,2,1)", "pole": 0})
print("\nwrote ellipse_profile.csv")
