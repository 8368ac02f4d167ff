"""Finite-size scaling of susceptibility peaks and correlation maxima.

Peak positions converge to the mean-field critical coupling 2 as a power
of N; correlation maxima decay to zero as a power of N, showing that the
transition region loses its quantum correlations in the large-N limit.
"""

from doublewell import correlation_peaks, fit_position_exponent, fit_value_scaling, refined_chi_peaks

TILT = 1e-10

# susceptibility peak positions (a minute or two)
sizes = [800, 1000, 1200]
per_n = [refined_chi_peaks(n, TILT, max_workers=4) for n in sizes]
for j, name in enumerate(("left", "right")):
    positions = [p[j].lambda_max for p in per_n]
    fit = fit_position_exponent(sizes, positions)
    print(f"{name} peak positions {['%.4f' % x for x in positions]} "
          f"-> exponent {fit.exponent:.4f} (r^2 = {fit.fit.r_squared:.4f})")

# correlation maxima for larger systems (ground-state-only solves)
sizes = list(range(3000, 9001, 1000))
heights = {"discord": [], "mutual_info": []}
for n in sizes:
    peaks = correlation_peaks(n, TILT)
    for key in heights:
        heights[key].append(peaks[key].height)
for key, vals in heights.items():
    fit = fit_value_scaling(sizes, vals, "power")
    print(f"{key} peak heights decay with exponent {fit.exponent:.4f} "
          f"(r^2 power = {fit.power_r_squared:.4f}, exp = {fit.exponential_r_squared:.4f})")
