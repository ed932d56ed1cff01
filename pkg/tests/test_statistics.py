import math

import numpy as np
import pytest

from hgstate.algebra import annihilation_matrix
from hgstate.errors import InvalidParams
from hgstate.specfn import log_gen_binomial
from hgstate.states import HgsParams, binomial_amplitudes, hgs_amplitudes, l_min
from hgstate.statistics import (
    closed_form_stats,
    direct_stats,
    lowering_coefficients,
    matrix_squeezing,
    squeezing_indices,
    squeezing_scan,
    squeezing_scan_csv,
    stats_to_csv,
)

SMALL = HgsParams(4.0, 2, 0.5)


class TestClosedForms:
    def test_small_exact_case(self):
        stats = closed_form_stats(SMALL)
        assert stats.mean == pytest.approx(1.0, abs=1e-15)
        assert stats.second_moment == pytest.approx(4 / 3, rel=1e-14)
        assert stats.variance == pytest.approx(1 / 3, rel=1e-14)
        assert stats.weakening_factor == pytest.approx(2 / 3, rel=1e-14)
        assert stats.mandel_q == pytest.approx(-2 / 3, rel=1e-14)
        assert stats.g2 == pytest.approx(1 / 3, rel=1e-14)

    def test_g2_is_exactly_zero_for_single_photon_window(self):
        stats = closed_form_stats(HgsParams(20.0, 1, 0.25))
        assert stats.g2 == 0.0
        assert stats.weakening_factor == 1.0

    def test_moment_identity(self):
        for params in (SMALL, HgsParams(5000.0, 50, 0.9), HgsParams(100.0, 50, 0.5)):
            stats = closed_form_stats(params)
            assert stats.variance == pytest.approx(
                stats.second_moment - stats.mean**2, abs=1e-12
            )
            assert stats.variance >= 0.0

    def test_variance_carries_weakening_factor(self):
        stats = closed_form_stats(HgsParams(10.0, 5, 0.5))
        bs_variance = 0.5 * 0.5 * 5
        assert stats.variance == pytest.approx(bs_variance * stats.weakening_factor, abs=1e-12)
        assert stats.variance < bs_variance


class TestDirectStats:
    def test_small_case_mean(self):
        direct = direct_stats(hgs_amplitudes(SMALL), SMALL)
        assert direct.mean == pytest.approx(1.0, abs=1e-12)
        assert direct.variance == pytest.approx(1 / 3, abs=1e-12)

    def test_number_limit_mass(self):
        from hgstate.states import photon_distribution

        dist = photon_distribution(hgs_amplitudes(HgsParams(500.0, 5, 0.99)))
        assert dist[5] > 0.9

    def test_binomial_reference_variance(self):
        # the L -> infinity reference: direct route on the binomial state
        params = HgsParams(1e6, 5, 0.5)
        direct = direct_stats(binomial_amplitudes(5, 0.5), params)
        assert direct.variance == pytest.approx(1.25, abs=1e-12)

    @pytest.mark.parametrize(
        "params",
        [SMALL, HgsParams(10.0, 5, 0.5), HgsParams(40.0, 5, 0.25), HgsParams(200.0, 20, 0.9)],
    )
    def test_agrees_with_closed_forms(self, params):
        closed = closed_form_stats(params)
        direct = direct_stats(hgs_amplitudes(params), params)
        for field in ("mean", "second_moment", "variance", "weakening_factor", "mandel_q", "g2", "s_x", "s_p"):
            assert getattr(closed, field) == pytest.approx(getattr(direct, field), abs=1e-10)


class TestLoweringCoefficients:
    def test_single_photon_window(self):
        for eta in (0.2, 0.5, 0.9):
            out = lowering_coefficients(HgsParams(l_min(1, eta), 1, eta), 1)
            assert out.coefficients.shape == (1,)
            assert out.coefficients[0] == pytest.approx(math.sqrt(eta), abs=1e-14)

    def test_double_lowering_small_case(self):
        out = lowering_coefficients(SMALL, 2)
        assert out.coefficients.shape == (1,)
        assert out.coefficients[0] == pytest.approx(math.sqrt(2 / 6), abs=1e-14)

    def test_beyond_top_level_is_empty(self):
        out = lowering_coefficients(SMALL, 3)
        assert out.order == 3
        assert out.coefficients.size == 0

    @pytest.mark.parametrize("order", [1, 2])
    @pytest.mark.parametrize("params", [SMALL, HgsParams(10.0, 5, 0.5), HgsParams(60.0, 5, 0.9)])
    def test_matches_annihilation_matrix_action(self, params, order):
        # oracle route: apply the matrix a^order to the amplitudes
        amps = hgs_amplitudes(params).amplitudes
        a = annihilation_matrix(params.M + 1)
        lowered = np.linalg.matrix_power(a, order) @ amps
        got = lowering_coefficients(params, order).coefficients
        assert np.abs(got - lowered[: params.M - order + 1].real).max() <= 1e-12

    @pytest.mark.parametrize("params", [SMALL, HgsParams(10.0, 5, 0.5), HgsParams(60.0, 5, 0.9)])
    def test_matches_corrected_binomial_forms(self, params):
        # the explicit product forms, with the running index inside both
        # binomials (k), cross-checked against the identity route
        big_l, m, eta = params.L, params.M, params.eta
        norm = math.exp(-0.5 * log_gen_binomial(big_l, m).log_magnitude)
        single = lowering_coefficients(params, 1).coefficients
        for k in range(m):
            expected = (
                math.sqrt(big_l * eta) * norm
                * math.exp(0.5 * (log_gen_binomial(big_l * eta - 1, k).log_magnitude
                                  + log_gen_binomial(big_l * (1 - eta), m - 1 - k).log_magnitude))
            )
            assert single[k] == pytest.approx(expected, rel=1e-12)
        double = lowering_coefficients(params, 2).coefficients
        for k in range(m - 1):
            expected = (
                math.sqrt(big_l * eta * (big_l * eta - 1)) * norm
                * math.exp(0.5 * (log_gen_binomial(big_l * eta - 2, k).log_magnitude
                                  + log_gen_binomial(big_l * (1 - eta), m - 2 - k).log_magnitude))
            )
            assert double[k] == pytest.approx(expected, rel=1e-12)

    def test_rejects_bad_order(self):
        with pytest.raises(InvalidParams):
            lowering_coefficients(SMALL, 0)


class TestSqueezingIndices:
    def test_hand_case_quarter(self):
        s_x, s_p = squeezing_indices(HgsParams(l_min(1, 0.25), 1, 0.25))
        assert s_x == pytest.approx(-0.25, abs=1e-12)
        assert s_p == pytest.approx(0.5, abs=1e-12)

    def test_hand_case_half(self):
        s_x, s_p = squeezing_indices(HgsParams(4.0, 1, 0.5))
        assert s_x == pytest.approx(0.0, abs=1e-12)
        assert s_p == pytest.approx(1.0, abs=1e-12)

    def test_vacuum_limit(self):
        eta = 1e-6
        s_x, s_p = squeezing_indices(HgsParams(l_min(1, eta), 1, eta))
        assert abs(s_x) < 1e-5
        assert abs(s_p) < 1e-5

    def test_agrees_with_matrix_route(self):
        for params in (SMALL, HgsParams(10.0, 5, 0.5), HgsParams(100.0, 50, 0.5)):
            closed = squeezing_indices(params)
            direct = matrix_squeezing(hgs_amplitudes(params))
            assert closed[0] == pytest.approx(direct[0], abs=1e-10)
            assert closed[1] == pytest.approx(direct[1], abs=1e-10)

    def test_heisenberg_product(self):
        for params in (SMALL, HgsParams(10.0, 5, 0.5), HgsParams(100.0, 50, 0.9)):
            s_x, s_p = squeezing_indices(params)
            assert (1 + s_x) * (1 + s_p) >= 1.0 - 1e-10


class TestSqueezingScan:
    def test_rows_match_pointwise(self):
        rows, skipped = squeezing_scan(5, 0.5, [10.0, 20.0, 40.0])
        assert skipped == []
        assert len(rows) == 3
        for big_l, s_x, s_p in rows:
            expected = squeezing_indices(HgsParams(big_l, 5, 0.5))
            assert (s_x, s_p) == expected

    def test_skips_inadmissible_with_record(self):
        rows, skipped = squeezing_scan(5, 0.5, [5.0, 10.0])
        assert len(rows) == 1
        assert len(skipped) == 1
        assert skipped[0][0] == 5.0
        assert "L" in skipped[0][1]

    def test_empty_input(self):
        assert squeezing_scan(5, 0.5, []) == ([], [])

    def test_large_l_approaches_binomial_reference(self):
        rows, _ = squeezing_scan(5, 0.72, [1e8])
        reference = matrix_squeezing(binomial_amplitudes(5, 0.72))
        assert rows[0][1] == pytest.approx(reference[0], abs=1e-6)
        assert rows[0][2] == pytest.approx(reference[1], abs=1e-6)

    def test_csv_layout(self):
        rows, _ = squeezing_scan(5, 0.5, [10.0, 20.0])
        text = squeezing_scan_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == "L,Sx,Sp"
        assert len(lines) == 3
        assert float(lines[1].split(",")[0]) == 10.0


def test_stats_record_serialization():
    stats = closed_form_stats(SMALL)
    record = stats.as_dict()
    assert list(record) == [
        "mean", "second_moment", "variance", "weakening_factor",
        "mandel_q", "g2", "s_x", "s_p",
    ]
    text = stats_to_csv(stats)
    header, row = text.strip().split("\n")
    assert header == ",".join(record)
    assert float(row.split(",")[0]) == 1.0
