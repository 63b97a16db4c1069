"""Closed-form converse and achievability bounds for port-based teleportation.

Everything here is a stateless formula in (d, N) or (d, eps).  Converse
bounds cap the fidelity of *any* protocol; achievability bounds are
guaranteed by explicit protocols.  Bounds whose derivation drops an
O(N^-3) tail are second-class: their report columns carry an ``_asym``
suffix and they are excluded from hard cross-bound assertions at small N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BoundReport",
    "CommBounds",
    "SimplexVolumes",
    "converse_nonasymptotic",
    "converse_rootfid",
    "converse_piecewise",
    "ishizaka_converse",
    "porttele_bound",
    "comm_bounds",
    "simplex_volumes",
    "laplacian_eigenvalue_bound",
    "achievability_std",
    "achievability_laplacian",
    "achievability_appendix_b",
    "diamond_error_from_fidelity",
    "bound_report",
]


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def converse_nonasymptotic(d: int, n_ports: int) -> float:
    """Non-asymptotic fidelity cap 1 - (d^2-1)/(8N^2) / (1 + (d^2-2)/(2N))."""
    if d < 2 or n_ports < 1:
        raise ValueError("need d >= 2 and n_ports >= 1")
    return 1.0 - (d * d - 1) / (8.0 * n_ports**2) / (1.0 + (d * d - 2) / (2.0 * n_ports))


def converse_rootfid(d: int, n_ports: int) -> float:
    """Binary root-fidelity cap sqrt(x y) + sqrt((1-x)(1-y)).

    Here x = 1/d^2 and y = 1/N + (1 - 1/N)/d^2.  This is the sharp form;
    ``converse_nonasymptotic`` is its relaxation and lies above it.
    """
    if d < 2 or n_ports < 1:
        raise ValueError("need d >= 2 and n_ports >= 1")
    x = 1.0 / d**2
    y = 1.0 / n_ports + (1.0 - 1.0 / n_ports) * x
    return math.sqrt(x * y) + math.sqrt((1.0 - x) * (1.0 - y))


def converse_piecewise(d: int, n_ports: int) -> tuple[float, float]:
    """Piecewise fidelity cap and the matching diamond-error floor.

    F <= sqrt(N)/d for N <= d^2/2 and F <= 1 - (d^2-1)/(16 N^2) otherwise;
    the error bound is 2(1 - F).
    """
    if d < 2 or n_ports < 1:
        raise ValueError("need d >= 2 and n_ports >= 1")
    if n_ports <= d * d / 2:
        f = math.sqrt(n_ports) / d
    else:
        f = 1.0 - (d * d - 1) / (16.0 * n_ports**2)
    return f, 2.0 * (1.0 - f)


def ishizaka_converse(d: int, n_ports: int) -> float:
    """Earlier cap 1 - 1/(4(d-1)N^2); leading term only, O(N^-3) dropped."""
    if d < 2 or n_ports < 1:
        raise ValueError("need d >= 2 and n_ports >= 1")
    return 1.0 - 1.0 / (4.0 * (d - 1) * n_ports**2)


def porttele_bound(d: int, n_ports: int) -> float:
    """Port-counting cap min(1, sqrt(N)/d)."""
    if d < 1 or n_ports < 1:
        raise ValueError("need d >= 1 and n_ports >= 1")
    return min(1.0, math.sqrt(n_ports) / d)


@dataclass(frozen=True)
class CommBounds:
    """Communication requirements of eps-accurate teleportation of dimension d."""

    dq_min: float
    dc_min: float
    imax_lower: float
    imax_upper: float


def comm_bounds(d: int, eps: float) -> CommBounds:
    """Quantum/classical dimension floors and the max-mutual-information window.

    Returns d(1-eps^2), d^2 (1-eps^2)^2, and the bounds
    2 log2(d(1-eps^2)) <= I_max <= 2 log2(ceil(d(1-eps^2))).  Degenerate
    arguments of the logarithm map to -inf.
    """
    if d < 1 or not 0.0 <= eps <= 1.0:
        raise ValueError("need d >= 1 and eps in [0, 1]")
    x = d * (1.0 - eps * eps)
    dq = x
    dc = x * x
    lower = 2.0 * math.log2(x) if x > 0 else float("-inf")
    cx = math.ceil(x)
    upper = 2.0 * math.log2(cx) if cx > 0 else float("-inf")
    return CommBounds(dq_min=dq, dc_min=dc, imax_lower=lower, imax_upper=upper)


@dataclass(frozen=True)
class SimplexVolumes:
    """Geometry of the ordered probability simplex with d outcomes.

    ``vol`` equals ``vol_coeff / sqrt(d)`` with the rational coefficient
    kept exactly; the inradius is 1/d^2.
    """

    d: int
    vol: float
    vol_coeff: Fraction
    boundary_vol: float
    inradius: float


def simplex_volumes(d: int) -> SimplexVolumes:
    """Volume, boundary volume, and inradius of the ordered simplex.

    vol = 1 / (sqrt(d) ((d-1)!)^2) and
    boundary = vol * (d(d-1)^2/sqrt(2) + sqrt(d)(d-1)^(3/2) + sqrt(2)(d-1)).
    """
    if d < 2:
        raise ValueError("need d >= 2")
    coeff = Fraction(1, math.factorial(d - 1) ** 2)
    vol = float(coeff) / math.sqrt(d)
    boundary_factor = (
        d * (d - 1) ** 2 / math.sqrt(2.0)
        + math.sqrt(d) * (d - 1) ** 1.5
        + math.sqrt(2.0) * (d - 1)
    )
    return SimplexVolumes(
        d=d,
        vol=vol,
        vol_coeff=coeff,
        boundary_vol=vol * boundary_factor,
        inradius=1.0 / d**2,
    )


def laplacian_eigenvalue_bound(d: int) -> float:
    """Upper bound on the first Dirichlet eigenvalue of the ordered simplex.

    Chains the domain-geometry eigenvalue bound (boundary volume over
    inradius times volume) with the closed-form bound on the first
    Bessel zero, giving
    ((d-1)/2)(sqrt((d+1)/2)+1)^2 * d^2 * (d(d-1)/sqrt(2)+sqrt(d(d-1))+sqrt(2)).
    """
    if d < 2:
        raise ValueError("need d >= 2")
    ball = 0.5 * (d - 1) * (math.sqrt((d + 1) / 2.0) + 1.0) ** 2
    geom = d * (d - 1) / math.sqrt(2.0) + math.sqrt(d * (d - 1)) + math.sqrt(2.0)
    return ball * d * d * geom


def achievability_std(d: int, n_ports: int) -> float:
    """Guaranteed standard-protocol fidelity 1 - (d^2-1)/N (may be negative)."""
    if d < 1 or n_ports < 1:
        raise ValueError("need d >= 1 and n_ports >= 1")
    return 1.0 - (d * d - 1) / float(n_ports)


def achievability_laplacian(d: int, n_ports: int) -> float:
    """Optimal-protocol fidelity floor 1 - lambda_bound/(d N^2); O(N^-3) dropped."""
    if d < 2 or n_ports < 1:
        raise ValueError("need d >= 2 and n_ports >= 1")
    return 1.0 - laplacian_eigenvalue_bound(d) / (d * n_ports**2)


def achievability_appendix_b(d: int, n_ports: int) -> float:
    """Fidelity floor 1 - d^4(d+3)/(2N^2) of the explicit parabola density;
    O(N^-3) dropped."""
    if d < 1 or n_ports < 1:
        raise ValueError("need d >= 1 and n_ports >= 1")
    return 1.0 - d**4 * (d + 3) / (2.0 * n_ports**2)


def diamond_error_from_fidelity(f: float) -> float:
    """Worst-case channel error of a covariant protocol: eps = 2(1 - F)."""
    return 2.0 * (1.0 - f)


@dataclass(frozen=True)
class BoundReport:
    """Every applicable bound at one (d, N), clamped to [0, 1].

    ``raw`` keeps the unclamped values (achievability floors go negative at
    small N).  Fields named ``*_asym`` descend from expansions with a
    dropped O(N^-3) term and are advisory at small N.
    """

    d: int
    n_ports: int
    converse_full: float
    converse_piecewise: float
    converse_rootfid: float
    ishizaka_converse_asym: float
    achievability_std: float
    achievability_laplacian_asym: float
    achievability_appb_asym: float
    diamond_error_from_f: float
    raw: dict[str, float]


def bound_report(d: int, n_ports: int) -> BoundReport:
    """Evaluate all converse and achievability bounds at one grid point."""
    piece_f, piece_eps = converse_piecewise(d, n_ports)
    raw = {
        "converse_full": converse_nonasymptotic(d, n_ports),
        "converse_piecewise": piece_f,
        "converse_rootfid": converse_rootfid(d, n_ports),
        "ishizaka_converse_asym": ishizaka_converse(d, n_ports),
        "achievability_std": achievability_std(d, n_ports),
        "achievability_laplacian_asym": achievability_laplacian(d, n_ports),
        "achievability_appb_asym": achievability_appendix_b(d, n_ports),
        "diamond_error_from_f": piece_eps,
    }
    return BoundReport(
        d=d,
        n_ports=n_ports,
        converse_full=_clamp01(raw["converse_full"]),
        converse_piecewise=_clamp01(raw["converse_piecewise"]),
        converse_rootfid=_clamp01(raw["converse_rootfid"]),
        ishizaka_converse_asym=_clamp01(raw["ishizaka_converse_asym"]),
        achievability_std=_clamp01(raw["achievability_std"]),
        achievability_laplacian_asym=_clamp01(raw["achievability_laplacian_asym"]),
        achievability_appb_asym=_clamp01(raw["achievability_appb_asym"]),
        diamond_error_from_f=raw["diamond_error_from_f"],
        raw=raw,
    )
