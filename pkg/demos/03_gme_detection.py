"""Three-qubit lifting: which states are flagged, and where the boundaries lie."""
import numpy as np

from lindmap import detect_gme, gamma_detection_boundary, ghz_state, noise_threshold, w_state
from lindmap.gme import default_c, lifted_min_eigenvalue
from lindmap.states import biseparable_samples, maximally_mixed

for name, rho in (("W", w_state()), ("GHZ", ghz_state()), ("I/8", maximally_mixed())):
    for rotated in (False, True):
        r = detect_gme(rho, 0.5, rotated=rotated)
        print(f"{name:4s} rotated={rotated!s:5s}  min eig {r.min_eigenvalue:+.6f}  {r.verdict.value}")

print(f"\nW boundary in gamma:            {gamma_detection_boundary(w_state()):.12f}  (sqrt(3)/4 = {np.sqrt(3) / 4:.12f})")
print(f"rotated GHZ boundary in gamma:  {gamma_detection_boundary(ghz_state(), rotated=True):.12f}")
print(f"noisy W threshold at gamma=1/2: p* = {noise_threshold(w_state()):.13f}")

worst = min(lifted_min_eigenvalue(s, 0.5) for s in biseparable_samples(300, seed=1))
print(f"\nsmallest lifted eigenvalue over 300 biseparable samples: {worst:+.4f}")

print("\nwith the tight constant c = 2|gamma| every gamma != 0 flags W:")
for g in (0.1, 0.3, 0.5):
    print(f"  gamma {g}: min eig {lifted_min_eigenvalue(w_state(), g, c=default_c(g)):+.6f}")
