"""Standard-protocol fidelity against its first-order curve.

Sweeps the exact fidelity of deterministic teleportation with maximally
entangled resources and the pretty good measurement for d = 2..5, overlays
1 - (d^2-1)/(4N), and writes both a plot and the CSV that the command line
would emit.
"""

import pathlib
import subprocess
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from portbt import f_std, f_std_asymptote

OUT = pathlib.Path(__file__).resolve().parent / "out"
OUT.mkdir(exist_ok=True)

N_MAX = 120

fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)
for ax, d in zip(axes.ravel(), (2, 3, 4, 5)):
    ns = range(1, N_MAX + 1)
    exact = [f_std(d, n).value for n in ns]
    curve = [f_std_asymptote(d, n) for n in ns]
    ax.plot(ns, exact, ".", ms=3, label="exact")
    ax.plot(ns, curve, "-", lw=1, label="1-(d^2-1)/(4N)")
    ax.axhline(1.0, color="gray", ls="--", lw=0.5)
    ax.set_title(f"d = {d}")
    ax.set_xlabel("ports N")
    ax.set_ylabel("fidelity")
    ax.legend(loc="lower right")
fig.tight_layout()
fig.savefig(OUT / "standard_protocol_fidelity.png", dpi=150)
print(f"wrote {OUT / 'standard_protocol_fidelity.png'}")

# the same numbers as a reproducible table
subprocess.run(
    [sys.executable, "-m", "portbt.cli", "fidelity", "--d", "2..5",
     "--N", f"1..{N_MAX}", "--out", str(OUT / "standard_protocol_fidelity.csv")],
    check=True,
)
print(f"wrote {OUT / 'standard_protocol_fidelity.csv'}")
