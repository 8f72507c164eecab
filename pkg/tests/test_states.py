import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catphase.states import CatStateSpec, FockDensityMatrix, cat_density_matrix, \
    cat_normalization, coherent_fock_coeffs, coherent_overlap

complex_amp = st.builds(complex,
                        st.floats(min_value=-2, max_value=2),
                        st.floats(min_value=-2, max_value=2))


class TestCoherentOverlap:
    def test_self_overlap(self):
        for a in (0.0, 1.5, 2.0 - 1.0j):
            assert coherent_overlap(a, a) == pytest.approx(1.0)

    def test_vacuum_overlap(self):
        b = 1.2 + 0.7j
        assert coherent_overlap(0.0, b) == pytest.approx(np.exp(-abs(b) ** 2 / 2))

    def test_squared_magnitude(self):
        # |<alpha|beta>|^2 = e^{-|alpha - beta|^2}
        assert abs(coherent_overlap(1.0, 1.0j)) ** 2 == pytest.approx(math.exp(-2.0))

    @settings(max_examples=50, deadline=None)
    @given(a=complex_amp, b=complex_amp)
    def test_conjugate_symmetry(self, a, b):
        assert coherent_overlap(a, b) == pytest.approx(np.conj(coherent_overlap(b, a)))


class TestCatNormalization:
    def test_single_component(self):
        assert cat_normalization(1.3, -0.5j, 0.0) == pytest.approx(1.0)

    def test_degenerate_double_count(self):
        a0 = 0.8 + 0.2j
        assert cat_normalization(a0, a0, 1.0) == pytest.approx(0.5)

    def test_well_separated(self):
        assert cat_normalization(3.0, -3.0, 1.0) == pytest.approx(1 / math.sqrt(2), abs=2e-8)

    def test_null_state_raises(self):
        with pytest.raises(ValueError, match="degenerate"):
            cat_normalization(1.0, 1.0, -1.0)


class TestCoherentFockCoeffs:
    def test_vacuum(self):
        c = coherent_fock_coeffs(0.0, 5)
        assert c[0] == 1.0
        assert np.all(c[1:] == 0.0)

    def test_normalization(self):
        c = coherent_fock_coeffs(1.7 - 0.4j, 40)
        assert np.sum(np.abs(c) ** 2) == pytest.approx(1.0, abs=1e-10)

    def test_poisson_statistics(self):
        c = coherent_fock_coeffs(1.0, 10)
        assert abs(c[2]) ** 2 == pytest.approx(math.exp(-1.0) / 2.0)

    def test_truncation_warning(self):
        with pytest.warns(UserWarning, match="tail mass"):
            coherent_fock_coeffs(3.0, 8)


class TestCatDensityMatrix:
    def test_coherent_projector_entries(self):
        a = 1.0 + 0.5j
        spec = CatStateSpec(a, 0.0, 0.0)
        rho = cat_density_matrix(spec, 20).entries
        j, k = 3, 5
        want = (math.exp(-abs(a) ** 2) * a**j * np.conj(a) ** k
                / math.sqrt(math.factorial(j) * math.factorial(k)))
        assert rho[j, k] == pytest.approx(want, rel=1e-12)

    def test_trace(self):
        spec = CatStateSpec(1.5, -1.5, 1.0j)
        assert cat_density_matrix(spec, 30).trace() == pytest.approx(1.0, abs=1e-10)

    def test_purity(self):
        spec = CatStateSpec(2.0, -2.0, 1.0)
        rho = cat_density_matrix(spec, 30).entries
        assert np.max(np.abs(rho @ rho - rho)) < 1e-9

    def test_hermitian_and_positive(self):
        spec = CatStateSpec(1.2 - 0.8j, -0.5 + 1.0j, 0.3 + 0.6j)
        dm = cat_density_matrix(spec, 30)
        assert dm.hermiticity_defect() < 1e-12
        eigvals = np.linalg.eigvalsh(dm.entries)
        assert eigvals.min() >= -1e-9


class TestFockDensityMatrixSerialization:
    def test_json_roundtrip(self):
        spec = CatStateSpec(1.0, -1.0, 0.5j)
        dm = cat_density_matrix(spec, 12)
        restored = FockDensityMatrix.from_json(dm.to_json())
        assert restored.n_max == dm.n_max
        assert np.array_equal(restored.entries, dm.entries)

    def test_schema(self):
        dm = cat_density_matrix(CatStateSpec(0.5, 0.0, 0.0), 3)
        data = json.loads(dm.to_json())
        assert data["n_max"] == 3
        assert len(data["entries"]) == 16
        assert all(len(pair) == 2 for pair in data["entries"])

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            FockDensityMatrix(n_max=3, entries=np.zeros((2, 2)))
