"""The GME negativity of white-noise-mixed W states."""
import numpy as np

from lindmap import n_gme, noisy_mix, w_state
from lindmap.gme import w_normalized_K

K = w_normalized_K()
print(f"n_gme(W) with K = 1: {n_gme(w_state()):.15f}")
print("   p     n_gme (K=1)     n_gme (W-normalized)")
for p in np.linspace(0.85, 1.0, 7):
    rho = noisy_mix(w_state(), p)
    print(f"{p:.3f}   {n_gme(rho):.10f}    {n_gme(rho, K):.6f}")
