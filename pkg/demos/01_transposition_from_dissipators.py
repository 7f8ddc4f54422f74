"""Build the qubit family lambda_gamma from Pauli dissipators and watch it become the transposition.

Run: python demos/01_transposition_from_dissipators.py
"""
import numpy as np

from lindmap import choi, lambda_gamma, transposition
from lindmap.families import lambda_gamma_positive
from lindmap.superop import min_output_eigenvalue_over_pure

print("gamma   positive  min Choi eig   min output eig (scan)")
for g in (0.0, 0.25, 0.5, 0.6):
    s = lambda_gamma(g)
    c = np.linalg.eigvalsh(choi(s))[0]
    scan = min_output_eigenvalue_over_pure(s, samples=5000)
    print(f"{g:5.2f}   {str(lambda_gamma_positive(g)):8s}  {c:+.6f}     {scan:+.6f}")

dev = lambda_gamma(0.5).max_abs_diff(transposition(2))
print(f"\nlambda_1/2 vs transposition, max entry deviation: {dev:.1e}")

x = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
print("\nrho =\n", x)
print("lambda_1/2(rho) =\n", lambda_gamma(0.5)(x))
