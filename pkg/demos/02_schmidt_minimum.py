"""Partial action of lambda_gamma on two-qubit Schmidt states.

The minimum output eigenvalue is -2 c1 c2 gamma, most negative for the
maximally entangled state.
"""
import numpy as np

from lindmap import lambda_gamma, schmidt_state
from lindmap.superop import apply_on_party

gamma = 0.5
print(" c1      c2      min eig     -2 c1 c2 gamma")
for theta in np.linspace(0, np.pi / 2, 7):
    c1, c2 = np.cos(theta), np.sin(theta)
    out = apply_on_party(lambda_gamma(gamma), schmidt_state(c1, c2).matrix, (2, 2), 0)
    print(f"{c1:.4f}  {c2:.4f}  {np.linalg.eigvalsh(out)[0]:+.6f}   {-2 * c1 * c2 * gamma:+.6f}")
