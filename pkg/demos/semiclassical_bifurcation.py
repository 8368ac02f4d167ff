"""Mean-field bifurcation of the population imbalance.

For small tilts the energy minimizer z_min sits at 0 until the coupling
reaches 2, then jumps to a finite imbalance; at a large tilt the curve is
smooth and no critical coupling exists.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from doublewell import critical_lambda, z_min

lams = np.linspace(0.5, 4.0, 200)

plt.figure(figsize=(6, 4))
for tilt in (1e-10, 1e-3, 1e-1):
    zs = [z_min(float(lam), tilt).z for lam in lams]
    plt.plot(lams, zs, label=f"tilt = {tilt:g}")
    crit = critical_lambda(tilt)
    label = "none" if math.isnan(crit) else f"{crit:.3f}"
    print(f"tilt {tilt:g}: critical coupling {label}")

plt.xlabel(r"coupling $\lambda$")
plt.ylabel(r"$z_{\min}$")
plt.legend()
plt.tight_layout()
plt.savefig("semiclassical_bifurcation.png", dpi=150)
print("wrote semiclassical_bifurcation.png")
