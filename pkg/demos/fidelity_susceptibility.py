"""Fidelity susceptibility across the ground-state transition.

At small tilt the susceptibility develops two peaks (binomial -> cat-like
and cat-like -> self-trapped); a moderate tilt merges them into one and a
large tilt flattens the curve entirely.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from doublewell import ScanConfig, find_peaks, scan

N = 400  # a few seconds; raise to 800 to reproduce the full-size curves

plt.figure(figsize=(6, 4))
for tilt in (1e-10, 1e-3, 1e-1):
    result = scan(ScanConfig(N, tilt, 1.8, 2.5, 250, ("chi",)), max_workers=4)
    plt.semilogy(result.lambdas, result.column("chi_fd"), label=f"tilt = {tilt:g}")
    peaks = find_peaks(result, "chi_fd", 0.05)
    print(f"tilt {tilt:g}: {len(peaks)} peak(s) at",
          [round(p.lambda_max, 4) for p in peaks])

plt.xlabel(r"coupling $\lambda$")
plt.ylabel(r"$\chi$")
plt.legend()
plt.tight_layout()
plt.savefig("fidelity_susceptibility.png", dpi=150)
print("wrote fidelity_susceptibility.png")
