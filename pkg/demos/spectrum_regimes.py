"""Number-basis weights |c_k|^2 in the three ground-state regimes.

Below the transition the distribution is a single central binomial peak;
inside the narrow cat-like window it splits into two symmetric peaks; past
it a single off-center peak signals self-trapping.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from doublewell import ModelParams, classify_phase, ground_state, spectrum_weights

N, TILT = 800, 1e-10

plt.figure(figsize=(6, 4))
for lam in (1.0, 2.14, 2.5):
    gs = ground_state(ModelParams(N, lam, TILT))
    w = spectrum_weights(gs)
    label = classify_phase(w)
    plt.plot(np.arange(N + 1), w, label=f"$\\lambda$={lam}: {label.phase.value}")
    print(f"lambda {lam}: {label.phase.value}, peaks at {label.peak_positions}")

plt.xlabel("k (bosons in the left well)")
plt.ylabel(r"$|c_k|^2$")
plt.legend()
plt.tight_layout()
plt.savefig("spectrum_regimes.png", dpi=150)
print("wrote spectrum_regimes.png")
