"""Dense-matrix validation of the diagram formulas at tiny sizes.

Builds the port-averaged entangled projector and the pretty-good-
measurement discrimination experiment explicitly, then compares with the
closed-form spectrum and the diagram-sum fidelity.  Nothing on the dense
side knows about Young diagrams, which is the point.
"""

import numpy as np

from portbt import build_T, f_std, pgm_fidelity, spectrum_check

print("operator spectrum versus closed form")
print("-" * 63)
for d, n in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)]:
    rep = spectrum_check(d, n, tol=1e-10)
    print(f"  d={d} N={n}: max mismatch {rep.max_mismatch:.2e}, "
          f"zero multiplicity {rep.zero_multiplicity}, "
          f"norm {rep.norm_observed:.6f} = (N+d-1)/(dN) "
          f"{'ok' if rep.passed else 'MISMATCH'}")

print()
print("pretty good measurement versus diagram formula")
print("-" * 63)
for d, n in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)]:
    dense = pgm_fidelity(d, n)
    formula = f_std(d, n).value
    print(f"  d={d} N={n}: dense {dense:.12f}  formula {formula:.12f}  "
          f"diff {abs(dense - formula):.2e}")

print()
T = build_T(2, 2)
print("T(2 ports, qubits): trace", np.trace(T).real, " (expect d^(N-1) = 2)")
print("eigenvalues:", np.round(np.linalg.eigvalsh(T), 6))
