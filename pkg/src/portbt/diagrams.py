"""Young diagrams, irrep dimensions, and the Schur-Weyl distribution.

A diagram with at most ``d`` rows is stored as a non-increasing tuple of
``d`` nonnegative integers (trailing zeros kept), so that every quantity
indexed by partitions of ``n`` into at most ``d`` parts has a stable,
deterministic ordering: descending lexicographic.

All dimension computations come in two flavors: exact arbitrary-precision
integers (symmetric-group dimensions grow factorially and overflow doubles
near n ~ 170) and a vectorized log-domain path used by the large summations
in :mod:`portbt.perf`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "YoungDiagram",
    "DimensionRecord",
    "SchurWeylTable",
    "CenteredDiagram",
    "enumerate_diagrams",
    "partition_rows",
    "iter_partition_blocks",
    "hook_lengths",
    "specht_dim",
    "weyl_dim",
    "dimension_record",
    "schur_weyl_table",
    "sample_schur_weyl",
    "sample_indices",
    "gamma_ratio",
    "center_diagram",
    "log_schur_weyl_rows",
    "compensated_sum",
]


def compensated_sum(values) -> float:
    """Accurately sum many floats spanning different magnitudes.

    Uses exact (Shewchuk) summation from the standard library, which keeps
    round-off independent of term count and ordering.
    """
    if isinstance(values, np.ndarray):
        values = values.tolist()
    return math.fsum(values)


@dataclass(frozen=True)
class YoungDiagram:
    """A partition with a fixed number of rows (trailing zeros kept)."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) == 0:
            raise ValueError("diagram needs at least one (possibly zero) row")
        if any(r < 0 for r in rows):
            raise ValueError(f"negative row length in {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"row lengths must be non-increasing: {rows}")

    @property
    def d(self) -> int:
        """Number of stored rows (the row bound)."""
        return len(self.rows)

    @property
    def boxes(self) -> int:
        return sum(self.rows)

    def nonzero_rows(self) -> int:
        return sum(1 for r in self.rows if r > 0)

    def padded(self, d: int) -> "YoungDiagram":
        """Same diagram with exactly ``d`` rows."""
        if self.nonzero_rows() > d:
            raise ValueError(f"{self.rows} has more than {d} nonzero rows")
        rows = tuple(self.rows[:d]) + (0,) * (d - len(self.rows[:d]))
        return YoungDiagram(rows)

    def addable_rows(self) -> list[int]:
        """0-based rows where one box can be added without breaking shape."""
        out = []
        for i in range(len(self.rows)):
            if i == 0 or self.rows[i - 1] > self.rows[i]:
                out.append(i)
        return out

    def removable_rows(self) -> list[int]:
        """0-based rows where one box can be removed without breaking shape."""
        out = []
        for i in range(len(self.rows)):
            if self.rows[i] >= 1 and (i == len(self.rows) - 1 or self.rows[i] > self.rows[i + 1]):
                out.append(i)
        return out

    def with_box(self, i: int) -> "YoungDiagram":
        """Diagram obtained by adding one box in 0-based row ``i``."""
        if i not in self.addable_rows():
            raise ValueError(f"cannot add a box at row {i} of {self.rows}")
        rows = list(self.rows)
        rows[i] += 1
        return YoungDiagram(tuple(rows))

    def without_box(self, i: int) -> "YoungDiagram":
        if i not in self.removable_rows():
            raise ValueError(f"cannot remove a box at row {i} of {self.rows}")
        rows = list(self.rows)
        rows[i] -= 1
        return YoungDiagram(tuple(rows))


@dataclass(frozen=True)
class DimensionRecord:
    """Exact irrep dimensions of a diagram, plus their log-domain values."""

    specht: int
    weyl: int
    log_specht: float
    log_weyl: float


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def partition_rows(d: int, n: int, max_first: int | None = None) -> np.ndarray:
    """All partitions of ``n`` into at most ``d`` parts as a (K, d) int array.

    Rows are padded with zeros and ordered descending-lexicographically;
    ``max_first`` optionally caps the largest part.  Built level by level
    with vectorized expansion, so enumeration stays cheap even for the
    ~10^6-row index sets that show up at d=5.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    cap0 = n if max_first is None else min(max_first, n)
    if d == 1:
        if n <= cap0:
            return np.array([[n]], dtype=np.int64)
        return np.empty((0, 1), dtype=np.int64)
    if n > cap0 * d:
        return np.empty((0, d), dtype=np.int64)
    rem = np.array([n], dtype=np.int64)
    cap = np.array([cap0], dtype=np.int64)
    cols: list[np.ndarray] = []
    for j in range(d - 1):
        m = d - j
        lo = -(-rem // m)  # ceil(rem / m): smallest feasible value at this level
        hi = np.minimum(cap, rem)
        counts = hi - lo + 1
        total = int(counts.sum())
        parent = np.repeat(np.arange(len(rem)), counts)
        offsets = np.repeat(np.cumsum(counts) - counts, counts)
        vals = np.repeat(hi, counts) - (np.arange(total, dtype=np.int64) - offsets)
        cols = [c[parent] for c in cols]
        cols.append(vals)
        rem = rem[parent] - vals
        cap = vals
    cols.append(rem)
    return np.stack(cols, axis=1)


def iter_partition_blocks(d: int, n: int, max_rows: int = 1_500_000) -> Iterator[np.ndarray]:
    """Yield ``partition_rows(d, n)`` in descending-lex order, in blocks.

    Splits on the first part when the full array would be large, keeping
    peak memory bounded while preserving the global ordering.
    """
    estimate = (n + 1) ** (d - 1) / (math.factorial(d) * math.factorial(d - 1))
    if d <= 2 or estimate <= max_rows:
        yield partition_rows(d, n)
        return
    for k in range(n, -(-n // d) - 1, -1):
        tail = partition_rows(d - 1, n - k, max_first=k)
        if len(tail) == 0:
            continue
        first = np.full((len(tail), 1), k, dtype=np.int64)
        yield np.hstack([first, tail])


def enumerate_diagrams(d: int, n: int) -> list[YoungDiagram]:
    """All diagrams with ``n`` boxes and at most ``d`` rows, descending lex."""
    return [YoungDiagram(tuple(int(v) for v in row)) for row in partition_rows(d, n)]


# ---------------------------------------------------------------------------
# exact dimensions
# ---------------------------------------------------------------------------

def _conjugate(rows: Sequence[int]) -> list[int]:
    rows = [r for r in rows if r > 0]
    if not rows:
        return []
    return [sum(1 for r in rows if r > j) for j in range(rows[0])]


def hook_lengths(mu: YoungDiagram) -> list[int]:
    """Hook lengths of all boxes: arm + leg + 1, row-major order."""
    rows = [r for r in mu.rows if r > 0]
    conj = _conjugate(rows)
    return [
        rows[i] - j + conj[j] - i - 1
        for i in range(len(rows))
        for j in range(rows[i])
    ]


@lru_cache(maxsize=65536)
def _specht_cached(rows: tuple[int, ...]) -> tuple[int, float]:
    mu = YoungDiagram(rows)
    hooks = hook_lengths(mu)
    n = mu.boxes
    prod = 1
    for h in hooks:
        prod *= h
    dim, rem = divmod(math.factorial(n), prod)
    assert rem == 0, "hook product must divide n!"
    log_dim = math.lgamma(n + 1) - sum(math.log(h) for h in hooks)
    return dim, log_dim


def specht_dim(mu: YoungDiagram) -> int:
    """Dimension of the symmetric-group irrep labeled by ``mu`` (exact)."""
    return _specht_cached(mu.rows)[0]


@lru_cache(maxsize=65536)
def _weyl_cached(d: int, rows: tuple[int, ...]) -> tuple[int, float]:
    mu = YoungDiagram(rows).padded(d)

    # content route: prod (d + content) / prod hooks
    hooks = hook_lengths(mu)
    num = 1
    for i, r in enumerate(mu.rows):
        for j in range(r):
            num *= d + j - i
    prod = 1
    for h in hooks:
        prod *= h
    via_contents, rem = divmod(num, prod)
    assert rem == 0, "content product must divide hook product"

    # pairwise route over shifted rows
    num2, den2 = 1, 1
    for i in range(d):
        for j in range(i + 1, d):
            num2 *= mu.rows[i] - mu.rows[j] + j - i
            den2 *= j - i
    via_pairs, rem2 = divmod(num2, den2)
    assert rem2 == 0 and via_pairs == via_contents, "dimension formulas disagree"

    return via_contents, math.log(via_contents)


def weyl_dim(d: int, mu: YoungDiagram) -> int:
    """Dimension of the polynomial U(d) irrep labeled by ``mu`` (exact).

    Evaluated through two independent product formulas (over box contents,
    and over row-difference pairs) that are required to agree.
    """
    if mu.nonzero_rows() > d:
        raise ValueError(f"{mu.rows} has more than {d} nonzero rows")
    return _weyl_cached(d, mu.padded(d).rows)[0]


def dimension_record(d: int, mu: YoungDiagram) -> DimensionRecord:
    specht, log_specht = _specht_cached(mu.padded(d).rows)
    weyl, log_weyl = _weyl_cached(d, mu.padded(d).rows)
    return DimensionRecord(specht=specht, weyl=weyl, log_specht=log_specht, log_weyl=log_weyl)


# ---------------------------------------------------------------------------
# vectorized log-domain dimensions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _log_tables(nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """(log k, log k!) for k = 0..nmax; log 0 slot is NaN and must stay unused."""
    logint = np.concatenate([[np.nan], np.log(np.arange(1, nmax + 1, dtype=np.float64))])
    logfact = np.concatenate([[0.0], np.cumsum(logint[1:])])
    return logint, logfact


def _log_superfactorial(d: int) -> float:
    return sum(math.lgamma(k + 1) for k in range(1, d))


def log_schur_weyl_rows(d: int, rows: np.ndarray) -> np.ndarray:
    """log(d_mu * m_{d,mu}) for each row of a (K, d) partition array.

    Uses the shifted-row identity: with l_i = mu_i + d - i,
    d_mu = n! * prod_{i<j}(l_i - l_j) / prod_i l_i!  and
    m_mu = prod_{i<j}(l_i - l_j) / prod_{i<j}(j - i).
    """
    rows = np.asarray(rows)
    K, dd = rows.shape
    if dd != d:
        raise ValueError("row array width must equal d")
    n = int(rows[0].sum()) if K else 0
    logint, logfact = _log_tables(n + d + 1)
    ell = rows + np.arange(d - 1, -1, -1, dtype=np.int64)
    out = np.full(K, logfact[n] - _log_superfactorial(d))
    out -= logfact[ell].sum(axis=1)
    for i in range(d):
        for j in range(i + 1, d):
            out += 2.0 * logint[ell[:, i] - ell[:, j]]
    return out


def row_keys(rows: np.ndarray, base: int) -> np.ndarray:
    """Encode partition rows as single integers preserving lexicographic order."""
    d = rows.shape[1]
    if d * math.log2(base) > 62:
        raise ValueError(f"key encoding overflows int64 for base {base}, d={d}")
    powers = base ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return rows @ powers


def row_index(keys_desc: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Positions of ``queries`` inside a strictly descending key array."""
    n = len(keys_desc)
    return n - 1 - np.searchsorted(keys_desc[::-1], queries)


# ---------------------------------------------------------------------------
# Schur-Weyl distribution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchurWeylTable:
    """The distribution p(mu) = d_mu * m_{d,mu} / d^n over diagrams of (d, n)."""

    d: int
    n: int
    diagrams: tuple[YoungDiagram, ...]
    probs: np.ndarray
    cumulative: np.ndarray
    exact: tuple[Fraction, ...] | None
    rows: np.ndarray = field(repr=False, default=None)


def schur_weyl_table(d: int, n: int, exact_threshold: int = 60) -> SchurWeylTable:
    """Tabulate the Schur-Weyl distribution with cumulative weights.

    Probabilities come from exact rationals for n <= exact_threshold and
    from the log-domain dimension formulas otherwise.
    """
    rows = partition_rows(d, n)
    diagrams = tuple(YoungDiagram(tuple(int(v) for v in r)) for r in rows)
    exact: tuple[Fraction, ...] | None = None
    if n <= exact_threshold:
        denom = d ** n
        exact = tuple(
            Fraction(specht_dim(mu) * weyl_dim(d, mu), denom) for mu in diagrams
        )
        assert sum(exact) == 1
        probs = np.array([float(f) for f in exact])
    else:
        probs = np.exp(log_schur_weyl_rows(d, rows) - n * math.log(d))
    cumulative = np.cumsum(probs)
    return SchurWeylTable(
        d=d, n=n, diagrams=diagrams, probs=probs, cumulative=cumulative,
        exact=exact, rows=rows,
    )


def sample_indices(table: SchurWeylTable, seed: int, count: int) -> np.ndarray:
    """Inverse-CDF sampling; returns indices into ``table.diagrams``."""
    rng = np.random.default_rng(seed)
    u = rng.random(count) * table.cumulative[-1]
    return np.searchsorted(table.cumulative, u, side="right")


def sample_schur_weyl(table: SchurWeylTable, seed: int, count: int) -> list[YoungDiagram]:
    """Draw diagrams from the tabulated distribution, reproducibly."""
    return [table.diagrams[k] for k in sample_indices(table, seed, count)]


# ---------------------------------------------------------------------------
# centered fluctuation coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CenteredDiagram:
    """Row lengths recentered to A_i = (mu_i - n/d) / sqrt(n/d)."""

    values: np.ndarray
    d: int
    n: int

    def to_diagram(self) -> YoungDiagram:
        """Invert the centering exactly (row lengths are integers)."""
        scale = math.sqrt(self.n / self.d)
        rows = np.rint(self.values * scale + self.n / self.d).astype(int)
        return YoungDiagram(tuple(int(r) for r in rows))


def center_diagram(mu: YoungDiagram) -> CenteredDiagram:
    n, d = mu.boxes, mu.d
    if n == 0:
        raise ValueError("centering needs at least one box")
    scale = math.sqrt(n / d)
    values = (np.array(mu.rows, dtype=np.float64) - n / d) / scale
    return CenteredDiagram(values=values, d=d, n=n)


# ---------------------------------------------------------------------------
# single-box spectral ratio
# ---------------------------------------------------------------------------

def gamma_ratio(alpha: YoungDiagram, i: int, d: int) -> int:
    """The eigenvalue ratio alpha_i - i + d + 1 for adding a box in row ``i``.

    ``i`` is 1-based to match the usual statement of the formula; this is
    the only 1-based entry point, everything else in the package indexes
    rows from 0.
    """
    if not 1 <= i <= d:
        raise ValueError(f"row index {i} outside 1..{d}")
    padded = alpha.padded(d)
    if (i - 1) not in padded.addable_rows():
        raise ValueError(f"adding a box at row {i} of {alpha.rows} breaks the shape")
    return padded.rows[i - 1] - i + d + 1
