import json
import math

import numpy as np
import pytest

from periframe import (FourierSeq, GridSignal, derivative_norm_sq, dft,
                       difference_norm_sq, evaluate_grid, fourier_from_dict,
                       fourier_to_dict, grid_to_csv, idft, load_fourier,
                       norm_sq, save_fourier)

# sum_k exp(-k^2/50) over |k| <= 60, computed in 40-digit arithmetic
GAUSS_NORM_SQ = 12.53314137315500251207882642405521580644


class TestFourierSeq:
    def test_rejects_empty_window(self):
        with pytest.raises(ValueError):
            FourierSeq(0, [])

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            FourierSeq(0, [1.0, np.nan])
        with pytest.raises(ValueError):
            FourierSeq(0, [1.0, np.inf * 1j])

    def test_window_is_immutable(self):
        f = FourierSeq(-1, [1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            f.coeffs[0] = 5.0

    def test_indices(self):
        f = FourierSeq(-2, [1, 2, 3, 4, 5])
        assert f.kmin == -2 and f.kmax == 2
        np.testing.assert_array_equal(f.indices(), [-2, -1, 0, 1, 2])


class TestNorms:
    def test_single_coefficient(self):
        assert norm_sq(FourierSeq(0, [1.0])) == 1.0

    def test_two_unit_coefficients(self):
        assert norm_sq(FourierSeq(0, [1.0, 1.0])) == 2.0

    def test_gaussian_window_matches_extended_precision(self):
        ks = np.arange(-60, 61, dtype=float)
        f = FourierSeq(-60, np.exp(-ks ** 2 / 100.0).astype(complex))
        assert norm_sq(f) == pytest.approx(GAUSS_NORM_SQ, rel=1e-15)

    def test_norm_invariant_under_index_translation(self, rng):
        c = rng.standard_normal(17) + 1j * rng.standard_normal(17)
        base = norm_sq(FourierSeq(-8, c))
        for shift in (-13, 0, 5, 111):
            padded = np.concatenate([np.zeros(3), c, np.zeros(4)])
            assert norm_sq(FourierSeq(-8 - 3 + shift, padded)) == pytest.approx(base, rel=1e-15)

    def test_derivative_norm_constant(self):
        assert derivative_norm_sq(FourierSeq(0, [1.0])) == 0.0

    def test_derivative_norm_single_exponential(self):
        assert derivative_norm_sq(FourierSeq(1, [1.0])) == pytest.approx(4 * math.pi ** 2, rel=1e-15)

    def test_derivative_norm_two_coefficients(self):
        # k=0 contributes nothing, k=1 contributes 4 pi^2
        f = FourierSeq(0, [1.0, 1.0])
        assert derivative_norm_sq(f) == pytest.approx(4 * math.pi ** 2, rel=1e-15)


class TestDft:
    def test_delta(self):
        np.testing.assert_allclose(dft([1, 0, 0, 0]), np.ones(4), atol=1e-15)

    def test_constant(self):
        np.testing.assert_allclose(dft([1, 1, 1, 1]), [4, 0, 0, 0], atol=1e-14)

    @pytest.mark.parametrize("n", [1, 2, 8, 12, 64, 100, 256])
    def test_matches_direct_summation(self, rng, n):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        naive = np.array([
            sum(v[i] * np.exp(-2j * np.pi * m * i / n) for i in range(n))
            for m in range(n)
        ])
        np.testing.assert_allclose(dft(v), naive, rtol=1e-12, atol=1e-12)

    @pytest.mark.parametrize("n", [2, 8, 33, 128, 4096, 8192])
    def test_round_trip(self, rng, n):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        np.testing.assert_allclose(idft(dft(v)) / n, v, rtol=1e-12, atol=1e-12)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            dft([])


class TestGrid:
    def test_constant(self):
        sig = evaluate_grid(FourierSeq(0, [1.0]), 4)
        np.testing.assert_allclose(sig.samples, np.ones(4), atol=1e-15)

    def test_single_mode_fourth_roots(self):
        sig = evaluate_grid(FourierSeq(1, [1.0]), 4)
        np.testing.assert_allclose(sig.samples, [1, 1j, -1, -1j], atol=1e-14)

    def test_round_trip_recovers_coefficients(self, rng):
        c = rng.standard_normal(21) + 1j * rng.standard_normal(21)
        f = FourierSeq(-10, c)
        sig = evaluate_grid(f, 64)
        spec = dft(sig.samples) / 64
        recovered = np.concatenate([spec[-10:], spec[:11]])
        np.testing.assert_allclose(recovered, c, rtol=1e-12, atol=1e-12)

    def test_grid_parseval(self, rng):
        c = rng.standard_normal(31) + 1j * rng.standard_normal(31)
        f = FourierSeq(-15, c)
        for n in (31, 40, 128):
            sig = evaluate_grid(f, n)
            grid_energy = float(np.sum(np.abs(sig.samples) ** 2)) / n
            assert grid_energy == pytest.approx(norm_sq(f), rel=1e-10)

    def test_rejects_nonpositive_size(self):
        with pytest.raises(ValueError):
            evaluate_grid(FourierSeq(0, [1.0]), 0)


def test_difference_norm_alignment():
    f = FourierSeq(0, [1.0, 2.0])
    g = FourierSeq(1, [2.0, 4.0])
    # difference is 1 at k=0, 0 at k=1, -4 at k=2
    assert difference_norm_sq(f, g) == pytest.approx(17.0, rel=1e-15)


class TestSerialization:
    def test_json_round_trip(self, tmp_path, rng):
        c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
        f = FourierSeq(-4, c)
        path = tmp_path / "seq.json"
        save_fourier(f, path)
        g = load_fourier(path)
        assert g.kmin == f.kmin
        np.testing.assert_allclose(g.coeffs, f.coeffs, rtol=0, atol=0)

    def test_dict_shape(self):
        d = fourier_to_dict(FourierSeq(2, [1 + 2j]))
        assert d == {"kmin": 2, "coeffs": [[1.0, 2.0]]}
        f = fourier_from_dict(d)
        assert f.kmin == 2 and f.coeffs[0] == 1 + 2j

    @pytest.mark.parametrize("payload", [
        {"coeffs": [[1, 0]]},
        {"kmin": 0},
        {"kmin": 0, "coeffs": []},
        {"kmin": 0, "coeffs": [[1.0]]},
        [1, 2, 3],
    ])
    def test_rejects_malformed(self, payload):
        with pytest.raises(ValueError):
            fourier_from_dict(payload)

    def test_grid_csv_header_and_rows(self):
        text = grid_to_csv(GridSignal([1 + 1j, -2.0]))
        lines = text.strip().split("\n")
        assert lines[0] == "n,re,im"
        assert lines[1].startswith("0,1,") and lines[2].startswith("1,-2,")
