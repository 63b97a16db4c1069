import math

import numpy as np
import pytest

from portbt.oracle import (
    build_T,
    pgm_fidelity,
    pgm_povm,
    predicted_spectrum,
    spectrum_check,
)
from portbt.perf import f_std


class TestBuildT:
    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            build_T(4, 6)
        with pytest.raises(ValueError):
            build_T(2, 3, dim_cap=8)

    def test_single_port_is_projector(self):
        T = build_T(2, 1)
        vals = np.linalg.eigvalsh(T)
        assert vals == pytest.approx([0, 0, 0, 1], abs=1e-12)

    @pytest.mark.parametrize("d,n", [(2, 2), (2, 4), (3, 2), (3, 3), (4, 2)])
    def test_hermitian_psd_trace(self, d, n):
        T = build_T(d, n)
        assert np.abs(T - T.conj().T).max() < 1e-12
        vals = np.linalg.eigvalsh(T)
        assert vals.min() > -1e-10
        assert np.trace(T).real == pytest.approx(d ** (n - 1), abs=1e-10)

    def test_norm_formula(self):
        T = build_T(3, 2)
        assert np.linalg.eigvalsh(T)[-1] == pytest.approx(2 / 3, abs=1e-12)


class TestSpectrum:
    @pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (3, 2)])
    def test_matches_formula(self, d, n):
        rep = spectrum_check(d, n, tol=1e-10)
        assert rep.passed
        assert rep.zero_multiplicity >= 0

    def test_single_port_prediction(self):
        # only the one-box diagram contributes: eigenvalue 1, multiplicity 1
        assert predicted_spectrum(2, 1) == [(1.0, 1)]


class TestPgm:
    def test_single_port(self):
        assert pgm_fidelity(2, 1) == pytest.approx(0.25, abs=1e-12)

    def test_two_ports_qubits(self):
        expected = (4 + 2 * math.sqrt(3)) / 16
        assert pgm_fidelity(2, 2) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("d,n", [(2, 3), (3, 2)])
    def test_matches_formula(self, d, n):
        assert pgm_fidelity(d, n) == pytest.approx(f_std(d, n).value, abs=1e-10)

    @pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (3, 2)])
    def test_povm_completeness_on_support(self, d, n):
        povm, support = pgm_povm(d, n)
        total = sum(povm)
        assert np.abs(total - support).max() < 1e-10
        for e in povm:
            assert np.linalg.eigvalsh(e).min() > -1e-10
