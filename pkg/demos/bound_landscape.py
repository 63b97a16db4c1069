"""Where the exact optimum sits between achievability floors and converse caps.

For qubits, computes the spectral optimum of the deterministic protocol and
plots it against the standard protocol, the explicit parabola-density
protocol, and all converse bounds on one axis of 1 - F (log scale), which
makes the 1/N versus 1/N^2 decay rates visible as straight lines.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from portbt import (
    appendix_b_density,
    bound_report,
    f_std,
    fidelity_of_density,
    optimal_fidelity_spectral,
)

OUT = pathlib.Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

D = 2
ns = np.arange(4, 121)

std = np.array([f_std(D, int(n)).value for n in ns])
star = np.array([optimal_fidelity_spectral(D, int(n)).value for n in ns])
piecewise = np.array([bound_report(D, int(n)).converse_piecewise for n in ns])
rootfid = np.array([bound_report(D, int(n)).converse_rootfid for n in ns])

# the explicit density lives on multiples of d^2 ports
appb_ns = np.array(sorted({4 * (int(n) // 4) for n in ns}))
appb = np.array([fidelity_of_density(appendix_b_density(D, int(n))).value for n in appb_ns])

fig, ax = plt.subplots(figsize=(7, 5))
ax.loglog(ns, 1 - std, ".", ms=4, label="standard protocol (1/N)")
ax.loglog(ns, 1 - star, ".", ms=4, label="optimal protocol (1/N^2)")
ax.loglog(appb_ns, 1 - appb, "x", ms=4, label="parabola density")
ax.loglog(ns, 1 - piecewise, "-", lw=1, label="piecewise converse")
ax.loglog(ns, 1 - rootfid, "--", lw=1, label="root-fidelity converse")
ax.set_xlabel("ports N")
ax.set_ylabel("1 - fidelity")
ax.set_title(f"d = {D}: infidelity decay and converse floors")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "bound_landscape.png", dpi=150)
print(f"wrote {OUT / 'bound_landscape.png'}")

scaled = ns**2 * (1 - star)
print(f"N^2 (1 - F*) runs from {scaled.min():.3f} to {scaled.max():.3f} "
      f"on N in [{ns[0]}, {ns[-1]}] (approaches pi^2 = {np.pi**2:.3f})")
