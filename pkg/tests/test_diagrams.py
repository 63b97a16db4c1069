import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from portbt.diagrams import (
    YoungDiagram,
    center_diagram,
    compensated_sum,
    dimension_record,
    enumerate_diagrams,
    gamma_ratio,
    hook_lengths,
    iter_partition_blocks,
    log_schur_weyl_rows,
    partition_rows,
    sample_indices,
    sample_schur_weyl,
    schur_weyl_table,
    specht_dim,
    weyl_dim,
)


# ---------------------------------------------------------------------------
# independent brute-force oracles
# ---------------------------------------------------------------------------

def brute_partitions(d, n, cap=None):
    """Naive recursive partition enumeration, independent of the array code."""
    cap = n if cap is None else min(cap, n)
    if d == 1:
        return [(n,)] if n <= cap else []
    out = []
    for k in range(cap, -1, -1):
        if n - k > k * (d - 1):
            continue
        out.extend((k,) + rest for rest in brute_partitions(d - 1, n - k, cap=k))
    return out


@lru_cache(maxsize=None)
def count_syt(rows):
    """Standard tableaux counted as growth chains in the diagram lattice."""
    rows = tuple(r for r in rows if r > 0)
    if not rows:
        return 1
    total = 0
    for i in range(len(rows)):
        if i == len(rows) - 1 or rows[i] > rows[i + 1]:
            smaller = list(rows)
            smaller[i] -= 1
            total += count_syt(tuple(smaller))
    return total


def count_ssyt(rows, d):
    """Semistandard tableaux with entries <= d, enumerated row by row."""
    rows = [r for r in rows if r > 0]
    if not rows:
        return 1

    def extend(level, prev):
        if level == len(rows):
            return 1
        width = rows[level]
        total = 0
        for cand in itertools.combinations_with_replacement(range(1, d + 1), width):
            if prev is not None and any(cand[j] <= prev[j] for j in range(width)):
                continue
            total += extend(level + 1, cand)
        return total

    return extend(0, None)


# ---------------------------------------------------------------------------
# diagrams and enumeration
# ---------------------------------------------------------------------------

class TestYoungDiagram:
    def test_rejects_increasing_rows(self):
        with pytest.raises(ValueError):
            YoungDiagram((1, 2))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            YoungDiagram((2, -1))

    def test_boxes(self):
        assert YoungDiagram((3, 1, 0)).boxes == 4

    def test_addable_removable(self):
        mu = YoungDiagram((3, 1, 1))
        assert mu.addable_rows() == [0, 1]
        assert mu.removable_rows() == [0, 2]
        assert mu.with_box(1).rows == (3, 2, 1)
        assert mu.without_box(2).rows == (3, 1, 0)


class TestEnumeration:
    def test_hand_cases(self):
        assert [x.rows for x in enumerate_diagrams(2, 2)] == [(2, 0), (1, 1)]
        assert [x.rows for x in enumerate_diagrams(3, 0)] == [(0, 0, 0)]

    def test_d4_n10_count(self):
        assert len(enumerate_diagrams(4, 10)) == len(brute_partitions(4, 10)) == 23

    @pytest.mark.parametrize("d,n", [(1, 7), (2, 9), (3, 8), (4, 9), (5, 11)])
    def test_matches_brute_force(self, d, n):
        got = [tuple(r) for r in partition_rows(d, n)]
        assert got == brute_partitions(d, n)

    def test_descending_lex_and_unique(self):
        rows = [tuple(r) for r in partition_rows(4, 12)]
        assert rows == sorted(set(rows), reverse=True)

    def test_blocks_concatenate_to_full(self):
        full = partition_rows(4, 30)
        blocks = list(iter_partition_blocks(4, 30, max_rows=50))
        assert len(blocks) > 1
        assert (np.vstack(blocks) == full).all()


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------

class TestDimensions:
    def test_specht_hand_values(self):
        assert specht_dim(YoungDiagram((2, 1))) == 2
        assert specht_dim(YoungDiagram((6,))) == 1
        assert specht_dim(YoungDiagram((1, 1, 1))) == 1

    @pytest.mark.parametrize("d,n", [(2, 6), (3, 6), (4, 7)])
    def test_specht_matches_tableau_count(self, d, n):
        for mu in enumerate_diagrams(d, n):
            assert specht_dim(mu) == count_syt(mu.rows)

    def test_weyl_hand_values(self):
        assert weyl_dim(2, YoungDiagram((2, 0))) == 3
        assert weyl_dim(2, YoungDiagram((1, 1))) == 1
        assert weyl_dim(3, YoungDiagram((2, 1, 0))) == 8

    @pytest.mark.parametrize("d,n", [(2, 5), (3, 4)])
    def test_weyl_matches_tableau_count(self, d, n):
        for mu in enumerate_diagrams(d, n):
            assert weyl_dim(d, mu) == count_ssyt(mu.rows, d)

    def test_weyl_rejects_too_many_rows(self):
        with pytest.raises(ValueError):
            weyl_dim(2, YoungDiagram((1, 1, 1)))

    def test_hook_lengths(self):
        assert sorted(hook_lengths(YoungDiagram((2, 1)))) == [1, 1, 3]

    def test_record_log_consistency(self):
        for d, n in [(2, 18), (3, 15), (4, 12)]:
            for mu in enumerate_diagrams(d, n):
                rec = dimension_record(d, mu)
                assert rec.specht >= 1 and rec.weyl >= 1
                if rec.specht > 1:
                    assert abs(rec.log_specht - math.log(rec.specht)) <= 1e-12 * math.log(rec.specht)
                assert abs(rec.log_weyl - math.log(rec.weyl)) <= 1e-12 * max(1.0, math.log(rec.weyl))

    def test_vectorized_log_weights(self):
        for d, n in [(2, 9), (3, 7), (5, 6)]:
            rows = partition_rows(d, n)
            logs = log_schur_weyl_rows(d, rows)
            for k, mu in enumerate(enumerate_diagrams(d, n)):
                exact = specht_dim(mu) * weyl_dim(d, mu)
                assert logs[k] == pytest.approx(math.log(exact), abs=1e-11)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_dimension_sum_small(self, d):
        for n in range(0, 13):
            total = sum(specht_dim(m) * weyl_dim(d, m) for m in enumerate_diagrams(d, n))
            assert total == d**n


# ---------------------------------------------------------------------------
# Schur-Weyl table and sampling
# ---------------------------------------------------------------------------

class TestSchurWeylTable:
    def test_hand_values(self):
        t = schur_weyl_table(2, 2)
        assert t.exact == (Fraction(3, 4), Fraction(1, 4))
        t = schur_weyl_table(2, 3)
        assert t.exact == (Fraction(1, 2), Fraction(1, 2))
        t = schur_weyl_table(1, 5)
        assert t.exact == (Fraction(1),)

    def test_exact_path_sums_to_one(self):
        for d, n in [(2, 12), (3, 9), (5, 7)]:
            t = schur_weyl_table(d, n)
            assert sum(t.exact) == 1
            assert abs(compensated_sum(t.probs) - 1.0) < 1e-10

    def test_float_path_sums_to_one(self):
        t = schur_weyl_table(2, 120, exact_threshold=60)
        assert t.exact is None
        assert abs(compensated_sum(t.probs) - 1.0) < 1e-10

    def test_each_diagram_once(self):
        t = schur_weyl_table(3, 8)
        assert len({x.rows for x in t.diagrams}) == len(t.diagrams)
        assert {x.rows for x in t.diagrams} == set(brute_partitions(3, 8))

    def test_sampling_reproducible(self):
        t = schur_weyl_table(2, 6)
        a = sample_indices(t, seed=11, count=1000)
        b = sample_indices(t, seed=11, count=1000)
        assert (a == b).all()
        assert sample_schur_weyl(t, 11, 5) == [t.diagrams[k] for k in a[:5]]

    def test_single_diagram_sampling(self):
        t = schur_weyl_table(1, 4)
        assert all(x.rows == (4,) for x in sample_schur_weyl(t, 3, 5))

    def test_frequencies_match(self):
        t = schur_weyl_table(2, 2)
        idx = sample_indices(t, seed=5, count=200_000)
        freq = (idx == 0).mean()
        assert abs(freq - 0.75) < 0.005


# ---------------------------------------------------------------------------
# gamma ratio and centering
# ---------------------------------------------------------------------------

class TestGammaRatio:
    def test_first_row_gives_norm_numerator(self):
        for d in (2, 3, 4):
            for n_ports in (2, 5, 9):
                alpha = YoungDiagram((n_ports - 1,) + (0,) * (d - 1))
                assert gamma_ratio(alpha, 1, d) == n_ports - 1 + d

    def test_direct_substitution(self):
        # second row of (1,0): 0 - 2 + 2 + 1
        assert gamma_ratio(YoungDiagram((1, 0)), 2, 2) == 1

    def test_invalid_placement_rejected(self):
        with pytest.raises(ValueError):
            gamma_ratio(YoungDiagram((1, 1)), 2, 2)  # equal rows: row 2 not addable
        with pytest.raises(ValueError):
            gamma_ratio(YoungDiagram((2, 1)), 3, 2)  # beyond the row bound

    def test_exact_dimension_identity(self):
        # gamma * m_alpha * d_mu == N * m_mu * d_alpha over every addable box
        for d in (2, 3, 4):
            for n_ports in range(1, 9):
                for alpha in enumerate_diagrams(d, n_ports - 1):
                    for i in alpha.addable_rows():
                        mu = alpha.with_box(i)
                        gamma = gamma_ratio(alpha, i + 1, d)
                        lhs = gamma * weyl_dim(d, alpha) * specht_dim(mu)
                        rhs = n_ports * weyl_dim(d, mu) * specht_dim(alpha)
                        assert lhs == rhs


class TestCenteredDiagram:
    def test_round_trip_exact(self):
        for d, n in [(2, 7), (3, 11), (4, 9)]:
            for mu in enumerate_diagrams(d, n):
                back = center_diagram(mu).to_diagram()
                assert back.rows == mu.rows

    def test_centered_sum_zero(self):
        a = center_diagram(YoungDiagram((7, 3, 2)))
        assert abs(a.values.sum()) < 1e-9

    @given(st.lists(st.integers(min_value=0, max_value=30), min_size=2, max_size=6))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_random(self, raw):
        rows = tuple(sorted(raw, reverse=True))
        if sum(rows) == 0:
            return
        mu = YoungDiagram(rows)
        assert center_diagram(mu).to_diagram().rows == rows
