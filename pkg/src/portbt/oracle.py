"""Dense brute-force checks of the diagram formulas at tiny (d, N).

Everything in this module is built directly from maximally entangled
vectors, partial traces, and dense eigensolves, with no diagram input on
the computational path.  Agreement with :mod:`portbt.perf` and
:mod:`portbt.diagrams` at small sizes is what validates those modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagrams import enumerate_diagrams, specht_dim, weyl_dim

__all__ = [
    "DIM_CAP",
    "SpectrumReport",
    "build_T",
    "pgm_fidelity",
    "spectrum_check",
]

DIM_CAP = 4096


def _check_dim(d: int, n_ports: int, dim_cap: int) -> int:
    dim = d ** (1 + n_ports)
    if dim > dim_cap:
        raise ValueError(f"dense dimension {dim} exceeds cap {dim_cap}")
    return dim


def _phi_plus(d: int) -> np.ndarray:
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / math.sqrt(d)
    return v


def build_T(d: int, n_ports: int, dim_cap: int = DIM_CAP) -> np.ndarray:
    """Average of maximally-entangled projectors between the input and each port.

    Acts on (C^d)^(1+N) ordered as (A, B_1, ..., B_N); Hermitian, positive
    semidefinite, trace d^(N-1).
    """
    dim = _check_dim(d, n_ports, dim_cap)
    phi = _phi_plus(d)
    proj = np.outer(phi, phi.conj())
    rest = d ** (n_ports - 1)
    base = np.kron(proj, np.eye(rest, dtype=complex))
    shape = (d,) * (2 * (1 + n_ports))
    T = np.zeros((dim, dim), dtype=complex)
    for k in range(1, n_ports + 1):
        # base is ordered (A, B_k, other ports); permute B_k into place
        t = base.reshape(shape)
        t = np.moveaxis(t, 1, k)
        t = np.moveaxis(t, 1 + n_ports + 1, 1 + n_ports + k)
        T += t.reshape(dim, dim)
    return T / n_ports


def _epr_resource_state(d: int, n_ports: int) -> np.ndarray:
    """Tensor of N maximally entangled pairs with axes (A_1..A_N, B_1..B_N)."""
    psi = np.array([1.0 + 0j])
    phi = _phi_plus(d)
    for _ in range(n_ports):
        psi = np.kron(psi, phi)
    t = psi.reshape((d,) * (2 * n_ports))
    perm = list(range(0, 2 * n_ports, 2)) + list(range(1, 2 * n_ports, 2))
    return t.transpose(perm)


def _discrimination_states(d: int, n_ports: int) -> list[np.ndarray]:
    """The N reduced states on (A^N, B_0) obtained by keeping one port."""
    psi = _epr_resource_state(d, n_ports)
    dim_keep = d ** (n_ports + 1)
    states = []
    for i in range(n_ports):
        # kept axes (A_1..A_N, B_i) must lead before flattening
        t = np.moveaxis(psi, n_ports + i, n_ports)
        v = t.reshape(dim_keep, d ** (n_ports - 1))
        states.append(v @ v.conj().T)
    return states


def _inv_sqrt_psd(s: np.ndarray, rel_cutoff: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Pseudo-inverse square root and the projector onto the support."""
    vals, vecs = np.linalg.eigh(s)
    if vals[0] < -1e-10 * max(vals[-1], 1.0):
        raise ValueError(f"operator is not positive semidefinite: {vals[0]}")
    cutoff = rel_cutoff * vals[-1]
    keep = vals > cutoff
    inv_sqrt = (vecs[:, keep] / np.sqrt(vals[keep])) @ vecs[:, keep].conj().T
    support = vecs[:, keep] @ vecs[:, keep].conj().T
    return inv_sqrt, support


def pgm_fidelity(d: int, n_ports: int, dim_cap: int = DIM_CAP) -> float:
    """Standard-protocol fidelity via explicit pretty-good-measurement.

    Builds the uniform port-discrimination ensemble from the EPR resource,
    forms E_i = S^(-1/2) (eta_i / N) S^(-1/2) on the support of the average
    S, and converts the success probability q into F = q N / d^2.
    """
    _check_dim(d, n_ports, dim_cap)
    etas = _discrimination_states(d, n_ports)
    n = len(etas)
    s = sum(etas) / n
    inv_sqrt, _ = _inv_sqrt_psd(s)
    q = 0.0
    for eta in etas:
        e = inv_sqrt @ (eta / n) @ inv_sqrt
        q += float(np.trace(e @ eta).real) / n
    return q * n / d**2


def pgm_povm(d: int, n_ports: int, dim_cap: int = DIM_CAP) -> tuple[list[np.ndarray], np.ndarray]:
    """The PGM elements and the support projector they must sum to."""
    _check_dim(d, n_ports, dim_cap)
    etas = _discrimination_states(d, n_ports)
    n = len(etas)
    s = sum(etas) / n
    inv_sqrt, support = _inv_sqrt_psd(s)
    povm = [inv_sqrt @ (eta / n) @ inv_sqrt for eta in etas]
    return povm, support


@dataclass(frozen=True)
class SpectrumReport:
    d: int
    n_ports: int
    max_mismatch: float
    zero_multiplicity: int
    norm_observed: float
    norm_formula: float
    passed: bool


def predicted_spectrum(d: int, n_ports: int) -> list[tuple[float, int]]:
    """Nonzero eigenvalues of the port-averaged projector, with multiplicities.

    One eigenvalue (mu_i - i + d)/(dN) for every diagram mu of N boxes and
    removable row i (1-based), with multiplicity m_{d, mu - e_i} * d_mu.
    """
    out = []
    for mu in enumerate_diagrams(d, n_ports):
        for i in mu.removable_rows():
            alpha = mu.without_box(i)
            value = (mu.rows[i] - (i + 1) + d) / (d * n_ports)
            mult = weyl_dim(d, alpha) * specht_dim(mu)
            out.append((value, mult))
    return out


def spectrum_check(d: int, n_ports: int, tol: float = 1e-10,
                   dim_cap: int = DIM_CAP) -> SpectrumReport:
    """Eigensolve the dense operator and match the predicted multiset.

    The zero eigenspace is whatever dimension remains after the predicted
    multiplicities are accounted for; it must be nonnegative.
    """
    T = build_T(d, n_ports, dim_cap)
    observed = np.linalg.eigvalsh(T)
    dim = T.shape[0]
    predicted = predicted_spectrum(d, n_ports)
    accounted = sum(m for _, m in predicted)
    zero_mult = dim - accounted
    if zero_mult < 0:
        raise AssertionError("predicted multiplicities exceed the dimension")
    values = np.concatenate([
        np.zeros(zero_mult),
        np.repeat([v for v, _ in predicted], [m for _, m in predicted]),
    ])
    values.sort()
    max_mismatch = float(np.max(np.abs(observed - values)))
    norm_formula = (n_ports + d - 1) / (d * n_ports)
    norm_observed = float(observed[-1])
    passed = max_mismatch <= tol and abs(norm_observed - norm_formula) <= tol
    return SpectrumReport(
        d=d, n_ports=n_ports, max_mismatch=max_mismatch,
        zero_multiplicity=zero_mult, norm_observed=norm_observed,
        norm_formula=norm_formula, passed=passed,
    )
