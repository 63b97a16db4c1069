"""Finite-size performance of the four port-based teleportation variants.

Exact values (standard deterministic protocol, EPR probabilistic protocol,
optimized probabilistic success) are sums of representation-theoretic
weights over Young diagrams; everything here evaluates those sums in the
log domain with compensated accumulation so they stay accurate out to
hundreds of ports.  The fully optimized deterministic fidelity is computed
as the largest eigenvalue of a sparse single-box-move matrix over diagrams,
whose Perron vector squares to the optimizing diagram density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .diagrams import (
    _log_superfactorial,
    _log_tables,
    compensated_sum,
    enumerate_diagrams,
    iter_partition_blocks,
    log_schur_weyl_rows,
    partition_rows,
    row_index,
    row_keys,
    specht_dim,
    weyl_dim,
)

__all__ = [
    "PerfPoint",
    "DiagramDensity",
    "SpectralOptimum",
    "PowerIterationError",
    "f_std",
    "f_std_asymptote",
    "f_std_exact_bounds",
    "p_epr",
    "p_epr_asymptote",
    "p_star",
    "f_from_prob_conversion",
    "fidelity_of_density",
    "optimal_fidelity_spectral",
    "schur_weyl_density",
    "appendix_b_density",
    "build_move_matrix",
]


@dataclass(frozen=True)
class PerfPoint:
    """A single performance number at (d, n_ports), with its first-order curve."""

    d: int
    n_ports: int
    value: float
    kind: str
    asymptote: float | None = None


@dataclass(frozen=True)
class DiagramDensity:
    """Nonnegative weights summing to one over diagrams of (d, n_ports).

    Weights are aligned with the descending-lex enumeration order of
    ``partition_rows(d, n_ports)``.
    """

    d: int
    n_ports: int
    weights: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "weights", w)
        if (w < 0).any():
            raise ValueError("density weights must be nonnegative")
        total = compensated_sum(w)
        if abs(total - 1.0) > 1e-8:
            raise ValueError(f"density weights sum to {total}, not 1")


class PowerIterationError(RuntimeError):
    """Raised when power iteration fails to converge; carries the last state."""

    def __init__(self, message, last_value, last_vector, residual):
        super().__init__(message)
        self.last_value = last_value
        self.last_vector = last_vector
        self.residual = residual


# ---------------------------------------------------------------------------
# standard deterministic protocol
# ---------------------------------------------------------------------------

def _addable_mask(alphas: np.ndarray, i: int) -> np.ndarray:
    if i == 0:
        return np.ones(len(alphas), dtype=bool)
    return alphas[:, i - 1] > alphas[:, i]


def _sqrt_weights_after_box(d: int, n_ports: int, alphas: np.ndarray) -> np.ndarray:
    """(K, d) array of sqrt(p(alpha + e_i)) with zeros where the box is invalid.

    p is the Schur-Weyl weight d_mu m_mu / d^N of the grown diagram; computed
    incrementally from the shifted rows of alpha, which costs O(d) per entry
    instead of re-deriving every diagram from scratch.
    """
    K = len(alphas)
    logint, logfact = _log_tables(n_ports + d + 1)
    logsf = _log_superfactorial(d)
    ell = alphas + np.arange(d - 1, -1, -1, dtype=np.int64)
    base_lf = logfact[ell].sum(axis=1)
    base_pairs = np.zeros(K)
    for a in range(d):
        for b in range(a + 1, d):
            base_pairs += logint[ell[:, a] - ell[:, b]]
    logd = math.log(d)
    out = np.zeros((K, d))
    for i in range(d):
        valid = _addable_mask(alphas, i)
        dpairs = np.zeros(K)
        for j in range(d):
            if j == i:
                continue
            diff = ell[:, j] - ell[:, i] if j < i else ell[:, i] - ell[:, j]
            safe = np.where(valid, diff, 2)  # dummy keeps logint lookups in range
            if j < i:
                dpairs += logint[safe - 1] - logint[safe]
            else:
                dpairs += logint[safe + 1] - logint[safe]
        li = ell[:, i]
        log_w = (
            logfact[n_ports]
            - base_lf
            - (logfact[li + 1] - logfact[li])
            + 2.0 * (base_pairs + dpairs)
            - logsf
            - n_ports * logd
        )
        out[:, i] = np.where(valid, np.exp(0.5 * log_w), 0.0)
    return out


def f_std(d: int, n_ports: int) -> PerfPoint:
    """Entanglement fidelity of the standard protocol (EPR resource + PGM).

    Evaluates (1/d^2) * sum over alpha of (sum over single-box growths of
    sqrt of the Schur-Weyl weight)^2 in the log domain.
    """
    if d < 1 or n_ports < 1:
        raise ValueError("need d >= 1 and n_ports >= 1")
    partials = []
    for alphas in iter_partition_blocks(d, n_ports - 1):
        w = _sqrt_weights_after_box(d, n_ports, alphas)
        s = w.sum(axis=1)
        partials.append(compensated_sum(s * s))
    value = compensated_sum(partials) / d**2
    return PerfPoint(d=d, n_ports=n_ports, value=value, kind="F_std",
                     asymptote=f_std_asymptote(d, n_ports))


def f_std_asymptote(d: int, n_ports: int) -> float:
    """First-order curve 1 - (d^2-1)/(4N), clamped below at zero."""
    return max(0.0, 1.0 - (d * d - 1) / (4.0 * n_ports))


def _isqrt_bracket(x: int, digits: int) -> tuple[Fraction, Fraction]:
    scale = 10 ** digits
    r = math.isqrt(x * scale * scale)
    return Fraction(r, scale), Fraction(r + 1, scale)


def f_std_exact_bounds(d: int, n_ports: int, digits: int = 25) -> tuple[Fraction, Fraction]:
    """Exact rational bracket around the standard-protocol fidelity.

    Expands each squared inner sum into pairwise products of integer
    weights and brackets every irrational square root between consecutive
    scaled integers, yielding rigorous lower/upper bounds.  Intended for
    n_ports <= 30 as an independent check on the log-domain path.
    """
    if n_ports > 30:
        raise ValueError("exact bracket is intended for n_ports <= 30")
    lo = Fraction(0)
    hi = Fraction(0)
    for alpha in enumerate_diagrams(d, n_ports - 1):
        weights = []
        for i in alpha.addable_rows():
            mu = alpha.with_box(i)
            weights.append(specht_dim(mu) * weyl_dim(d, mu))
        for wa in weights:
            for wb in weights:
                l, h = _isqrt_bracket(wa * wb, digits)
                lo += l
                hi += h
    denom = Fraction(d) ** (n_ports + 2)
    return lo / denom, hi / denom


# ---------------------------------------------------------------------------
# probabilistic protocols
# ---------------------------------------------------------------------------

def p_epr(d: int, n_ports: int) -> PerfPoint:
    """Success probability of the probabilistic protocol with EPR resources.

    The optimal heralded box always goes into the first row, so the direct
    sum over diagrams and the equivalent expectation form
    (1/d) E[N / (alpha_1 + d)] are both evaluated; they must agree to 1e-12.
    """
    if d < 1 or n_ports < 1:
        raise ValueError("need d >= 1 and n_ports >= 1")
    logint, logfact = _log_tables(n_ports + d + 1)
    logsf = _log_superfactorial(d)
    logd = math.log(d)
    offsets = np.arange(d - 1, -1, -1, dtype=np.int64)
    direct_parts = []
    expect_parts = []
    for alphas in iter_partition_blocks(d, n_ports - 1):
        ell = alphas + offsets
        pairs = np.zeros(len(alphas))
        for a in range(d):
            for b in range(a + 1, d):
                pairs += logint[ell[:, a] - ell[:, b]]
        # the grown first row always wins: alpha_1 >= alpha_i - (i - 1)
        gamma_first = alphas[:, 0] + d
        assert (gamma_first[:, None] >= alphas + d - np.arange(d)).all()
        log_m_alpha = pairs - logsf
        # d_mu/m_mu for mu = alpha + e_1 collapses to N! * superfact / prod(ell'!)
        lf_mu = logfact[ell].sum(axis=1) - logfact[ell[:, 0]] + logfact[ell[:, 0] + 1]
        log_term = 2.0 * log_m_alpha + logfact[n_ports] + logsf - lf_mu - n_ports * logd
        direct_parts.append(compensated_sum(np.exp(log_term)))

        log_p = (
            logfact[n_ports - 1] - logfact[ell].sum(axis=1)
            + 2.0 * pairs - logsf - (n_ports - 1) * logd
        )
        expect_parts.append(
            compensated_sum(np.exp(log_p) * (n_ports / (gamma_first * float(d))))
        )
    direct = compensated_sum(direct_parts)
    expect = compensated_sum(expect_parts)
    if abs(direct - expect) > 1e-12:
        raise AssertionError(
            f"direct and expectation forms disagree: {direct} vs {expect}"
        )
    asym = None
    if d == 2 and n_ports >= 2:
        asym = p_epr_asymptote(d, n_ports, 2.0 / math.sqrt(math.pi))
    return PerfPoint(d=d, n_ports=n_ports, value=direct, kind="p_epr", asymptote=asym)


def p_epr_asymptote(d: int, n_ports: int, lambda_max_mean: float) -> float:
    """First-order curve 1 - sqrt(d/(N-1)) * E[lambda_max], clamped to [0, 1]."""
    if n_ports < 2:
        raise ValueError("asymptote needs n_ports >= 2")
    raw = 1.0 - math.sqrt(d / (n_ports - 1.0)) * lambda_max_mean
    return min(1.0, max(0.0, raw))


def p_star(d: int, n_ports: int) -> PerfPoint:
    """Optimal heralded success probability 1 - (d^2-1)/(d^2-1+N)."""
    if d < 1 or n_ports < 0:
        raise ValueError("need d >= 1 and n_ports >= 0")
    if d == 1:
        value = 1.0
    else:
        value = 1.0 - (d * d - 1) / (d * d - 1 + n_ports)
    asym = max(0.0, 1.0 - (d * d - 1) / n_ports) if n_ports >= 1 else None
    return PerfPoint(d=d, n_ports=n_ports, value=value, kind="p_star", asymptote=asym)


def f_from_prob_conversion(p: float, d: int) -> float:
    """Deterministic fidelity from a heralded protocol that guesses on failure."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return p + (1.0 - p) / d**2


# ---------------------------------------------------------------------------
# densities over diagrams and the optimized deterministic protocol
# ---------------------------------------------------------------------------

def fidelity_of_density(q: DiagramDensity) -> PerfPoint:
    """Deterministic fidelity of the protocol encoded by a diagram density.

    F(q) = (1/d^2) * sum over alpha of (sum over mu = alpha + box of
    sqrt(q(mu)))^2.  With q equal to the Schur-Weyl weights this reproduces
    the standard protocol.
    """
    d, N = q.d, q.n_ports
    rows_n = partition_rows(d, N)
    if len(rows_n) != len(q.weights):
        raise ValueError("weights are not aligned with the diagrams of (d, N)")
    base = N + 2
    keys_n = row_keys(rows_n, base)
    powers = base ** np.arange(d - 1, -1, -1, dtype=np.int64)
    partials = []
    for alphas in iter_partition_blocks(d, N - 1):
        akeys = row_keys(alphas, base)
        tot = np.zeros(len(alphas))
        for i in range(d):
            valid = _addable_mask(alphas, i)
            idx = row_index(keys_n, akeys[valid] + powers[i])
            tot[valid] += np.sqrt(q.weights[idx])
        partials.append(compensated_sum(tot * tot))
    value = compensated_sum(partials) / d**2
    return PerfPoint(d=d, n_ports=N, value=value, kind="F_density")


def build_move_matrix(d: int, n_ports: int) -> sp.csr_matrix:
    """Sparse symmetric matrix counting common single-box parents.

    Entry (mu, mu') is the number of diagrams alpha of N-1 boxes with
    mu = alpha + box and mu' = alpha + box; nonzero only on the diagonal
    (number of removable corners) and where mu' differs from mu by moving
    one box.
    """
    rows = partition_rows(d, n_ports)
    K = len(rows)
    base = n_ports + 2
    keys = row_keys(rows, base)
    powers = base ** np.arange(d - 1, -1, -1, dtype=np.int64)
    data, rr, cc = [], [], []
    for j in range(d):
        removable = rows[:, j] >= 1
        if j < d - 1:
            removable &= rows[:, j] > rows[:, j + 1]
        for i in range(d):
            mask = removable.copy()
            if i > 0:
                # addable on alpha = mu - e_j
                left = rows[:, i - 1] - (i - 1 == j)
                mask &= left > rows[:, i] - (i == j)
            idx = np.nonzero(mask)[0]
            if len(idx) == 0:
                continue
            rr.append(idx)
            cc.append(row_index(keys, keys[idx] - powers[j] + powers[i]))
            data.append(np.ones(len(idx)))
    if not data:
        return sp.csr_matrix((K, K))
    M = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rr), np.concatenate(cc))),
        shape=(K, K),
    )
    return M.tocsr()


@dataclass(frozen=True)
class SpectralOptimum:
    """Largest-eigenvalue solution of the density optimization."""

    d: int
    n_ports: int
    value: float
    density: DiagramDensity | None
    iterations: int
    residual: float
    degenerate: bool

    @property
    def point(self) -> PerfPoint:
        return PerfPoint(d=self.d, n_ports=self.n_ports, value=self.value,
                         kind="F_star_lower_spectral")


def _power_iteration(M: sp.csr_matrix, tol: float, max_iters: int):
    K = M.shape[0]
    v = np.full(K, 1.0 / math.sqrt(K))
    lam_prev = -np.inf
    lam = 0.0
    for it in range(1, max_iters + 1):
        w = M @ v
        lam = float(v @ w)
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0, v, it, 0.0
        v = w / norm
        if abs(lam - lam_prev) <= tol * abs(lam):
            residual = float(np.linalg.norm(M @ v - lam * v))
            return lam, v, it, residual
        lam_prev = lam
    residual = float(np.linalg.norm(M @ v - lam * v))
    raise PowerIterationError(
        f"no convergence after {max_iters} iterations (residual {residual:.3e})",
        last_value=lam, last_vector=v, residual=residual,
    )


def _deflated_second_eigenvalue(M, v1, iters=200):
    rng = np.random.default_rng(7)
    w = rng.standard_normal(M.shape[0])
    w -= (v1 @ w) * v1
    nw = np.linalg.norm(w)
    if nw == 0.0:
        return -np.inf
    w /= nw
    lam2 = -np.inf
    for _ in range(iters):
        u = M @ w
        u -= (v1 @ u) * v1
        lam2 = float(w @ u)
        nu = float(np.linalg.norm(u))
        if nu == 0.0:
            return 0.0
        w = u / nu
    return lam2


def optimal_fidelity_spectral(
    d: int,
    n_ports: int,
    tol: float = 1e-12,
    max_iters: int = 10**5,
    method: str = "power",
) -> SpectralOptimum:
    """Optimal deterministic fidelity as lambda_max of the move matrix / d^2.

    The optimizing density is the squared Perron eigenvector.  ``method``
    selects the eigensolver: "power" (default; relative-change stopping at
    ``tol``), "lanczos" (ARPACK, for large instances), or "auto" which
    switches to Lanczos above 4000 diagrams.  If the top eigenvalue is
    detected as (near-)degenerate, only the value is reported and the
    density is flagged as non-unique by returning None.
    """
    if d < 1 or n_ports < 1:
        raise ValueError("need d >= 1 and n_ports >= 1")
    M = build_move_matrix(d, n_ports)
    K = M.shape[0]
    if method == "auto":
        method = "lanczos" if K > 4000 else "power"
    lam2 = -np.inf
    if method == "power" or K < 3:
        lam, v, iters, residual = _power_iteration(M, tol, max_iters)
        if K >= 2:
            lam2 = _deflated_second_eigenvalue(M, v)
    elif method == "lanczos":
        lanczos_tol = max(tol, 1e-10)
        vals, vecs = spla.eigsh(M, k=2, which="LA", tol=lanczos_tol,
                                v0=np.ones(K), maxiter=max_iters)
        order = np.argsort(vals)
        lam = float(vals[order[-1]])
        lam2 = float(vals[order[0]])
        v = vecs[:, order[-1]]
        if v.sum() < 0:
            v = -v
        v = np.clip(v, 0.0, None)
        v /= np.linalg.norm(v)
        iters = -1
        residual = float(np.linalg.norm(M @ v - lam * v))
    else:
        raise ValueError(f"unknown method {method!r}")

    degenerate = K >= 2 and lam > 0 and (lam - lam2) < 1e-9 * lam
    weights = v * v
    weights /= compensated_sum(weights)
    density = None if degenerate else DiagramDensity(
        d=d, n_ports=n_ports, weights=weights, label="optimal-spectral",
    )
    return SpectralOptimum(
        d=d, n_ports=n_ports, value=lam / d**2, density=density,
        iterations=iters, residual=residual, degenerate=degenerate,
    )


def schur_weyl_density(d: int, n_ports: int) -> DiagramDensity:
    """The Schur-Weyl weights as a diagram density (the standard protocol)."""
    rows = partition_rows(d, n_ports)
    w = np.exp(log_schur_weyl_rows(d, rows) - n_ports * math.log(d))
    w /= compensated_sum(w)
    return DiagramDensity(d=d, n_ports=n_ports, weights=w, label="uniform-schur-weyl")


def appendix_b_density(d: int, n_ports: int) -> DiagramDensity:
    """Explicit near-optimal density: a squared parabola on a lattice ball.

    Weights are proportional to (R^2 - r^2)^2 inside the Euclidean ball of
    radius R = sqrt(2) N'/d^2 around the staircase center
    ((2d-1) N'/d^2, ..., N'/d^2), and zero outside.  If d^2 does not divide
    N, only the first N' = d^2 * floor(N/d^2) ports are used and the
    returned density lives on diagrams of N' boxes.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    if n_ports < d * d:
        raise ValueError(f"need at least d^2 = {d*d} ports")
    n_eff = d * d * (n_ports // (d * d))
    rows = partition_rows(d, n_eff)
    scale = n_eff // (d * d)
    center = np.array([(2 * (d - k) - 1) * scale for k in range(d)], dtype=np.float64)
    radius_sq = 2.0 * scale * scale
    r_sq = ((rows - center) ** 2).sum(axis=1)
    w = np.where(r_sq <= radius_sq, (radius_sq - r_sq) ** 2, 0.0)
    w /= compensated_sum(w)
    return DiagramDensity(d=d, n_ports=n_eff, weights=w, label="appendix-b")
