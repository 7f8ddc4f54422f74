"""Qutrit families: Choi spectra and the CP/positivity windows."""
import numpy as np

from lindmap import choi, phi2_alpha, phi_alpha
from lindmap.families import choi_map_F, cp_boundary
from lindmap.superop import min_output_eigenvalue_over_pure

for a in (0.1, 0.25, 0.5):
    w = np.round(np.linalg.eigvalsh(choi(phi_alpha(a))), 10)
    print(f"phi_alpha({a}) Choi spectrum: {np.unique(w)}")

print(f"\nphi2_alpha CP up to alpha = {cp_boundary('phi2-alpha', 0, 0.25):.9f}")
for a in (0.2, 0.25, 0.27):
    print(f"  alpha {a}: min output eig over pure states {min_output_eigenvalue_over_pure(phi2_alpha(a)):+.4f}")

print(f"\nChoi-type family CP up to beta = {cp_boundary('phiC-beta', 0, 1):.9f}")
for b in (0.75, 1.0, 1.1):
    print(f"  beta {b}: min output eig over pure states {min_output_eigenvalue_over_pure(choi_map_F(b)):+.4f}")
