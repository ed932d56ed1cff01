"""Photon statistics and quadrature squeezing.

Two independent routes are provided for every quantity: closed forms in
the state parameters, and direct computation from the amplitudes
(moment sums and operator-matrix expectations).  Tests and the verify
command hold the two routes against each other.
"""

from dataclasses import asdict, dataclass
from math import exp, fsum, lgamma, sqrt

import numpy as np

from .algebra import annihilation_matrix
from .errors import InvalidParams
from .states import (
    HgsParams,
    StateVector,
    binomial_amplitudes,
    hgs_amplitudes,
    photon_distribution,
)

__all__ = [
    "PhotonStatistics",
    "LoweringCoefficients",
    "closed_form_stats",
    "direct_stats",
    "lowering_coefficients",
    "squeezing_indices",
    "squeezing_scan",
    "squeezing_scan_csv",
    "stats_to_csv",
]


@dataclass(frozen=True)
class PhotonStatistics:
    """Number statistics and squeezing indices of a single-mode state."""

    mean: float
    second_moment: float
    variance: float
    weakening_factor: float
    mandel_q: float
    g2: float
    s_x: float
    s_p: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class LoweringCoefficients:
    """Expansion coefficients of a^order applied to a hypergeometric state.

    coefficient[k] multiplies level k of the lowered (unnormalized)
    vector, k = 0..M-order; empty when order exceeds M.
    """

    order: int
    coefficients: np.ndarray


def lowering_coefficients(params: HgsParams, order: int) -> LoweringCoefficients:
    """Coefficients sqrt((k+order)!/k!) H_{k+order} of the lowered state.

    Annihilating past the top level gives the zero vector, reported as an
    empty coefficient sequence rather than an error.
    """
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise InvalidParams(f"order must be a positive integer, got {order!r}")
    m = params.M
    if order > m:
        return LoweringCoefficients(order, np.empty(0))
    amps = np.real(hgs_amplitudes(params).amplitudes)
    coeffs = np.empty(m - order + 1)
    for k in range(m - order + 1):
        ratio = _sqrt_factorial_ratio(k + order, k)
        coeffs[k] = ratio * amps[k + order]
    return LoweringCoefficients(order, coeffs)


def _sqrt_factorial_ratio(hi: int, lo: int) -> float:
    # sqrt(hi!/lo!) through log-gamma, safe for large arguments
    return exp(0.5 * (lgamma(hi + 1) - lgamma(lo + 1)))


def squeezing_indices(params: HgsParams):
    """Quadrature squeezing indices (s_x, s_p).

    s_x = 2 <aa> + 2 M eta - 4 <a>^2 and s_p = 2 M eta - 2 <aa>, using
    that the amplitudes are real so <a a> equals its conjugate and the
    momentum quadrature has zero mean.  Negative index means the
    corresponding quadrature variance is below the vacuum value.
    """
    amps = np.real(hgs_amplitudes(params).amplitudes)
    m, eta = params.M, params.eta
    single = lowering_coefficients(params, 1).coefficients
    double = lowering_coefficients(params, 2).coefficients
    expect_a = float(np.dot(amps[: single.size], single))
    expect_aa = float(np.dot(amps[: double.size], double))
    s_x = 2.0 * expect_aa + 2.0 * m * eta - 4.0 * expect_a**2
    s_p = 2.0 * m * eta - 2.0 * expect_aa
    return s_x, s_p


def closed_form_stats(params: HgsParams) -> PhotonStatistics:
    """All statistics from closed forms in (L, M, eta).

    Mean M*eta is L-independent; the variance carries the weakening
    factor (L-M)/(L-1) relative to the binomial state; the Mandel
    parameter (1-eta)W - 1 is strictly negative; g2 is forced to zero at
    M = 1 where at most one photon is present.
    """
    if not isinstance(params, HgsParams):
        params = HgsParams(*params)
    big_l, m, eta = params.L, params.M, params.eta
    mean = m * eta
    second = m * eta * (big_l + big_l * eta * m - big_l * eta - m) / (big_l - 1.0)
    variance = eta * (1.0 - eta) * m * (big_l - m) / (big_l - 1.0)
    weakening = (big_l - m) / (big_l - 1.0)
    mandel = (1.0 - eta) * weakening - 1.0
    if m == 1:
        g2 = 0.0
    else:
        g2 = ((m - 1) / m) * ((big_l * eta - 1.0) / (big_l * eta - eta))
    s_x, s_p = squeezing_indices(params)
    return PhotonStatistics(mean, second, variance, weakening, mandel, g2, s_x, s_p)


def direct_stats(state: StateVector, params: HgsParams) -> PhotonStatistics:
    """All statistics recomputed from the amplitudes alone.

    Moments come from sums n^k p_n; the weakening factor divides by the
    binomial-state variance obtained by the same summation; quadrature
    variances come from full complex expectations of operator matrices
    on a zero-padded copy of the state (valid for arbitrary vectors, not
    just real ones).
    """
    probs = photon_distribution(state)
    mean = fsum(n * p for n, p in enumerate(probs))
    second = fsum(n * n * p for n, p in enumerate(probs))
    variance = second - mean**2
    ref = photon_distribution(binomial_amplitudes(params.M, params.eta))
    ref_mean = fsum(n * p for n, p in enumerate(ref))
    ref_variance = fsum(n * n * p for n, p in enumerate(ref)) - ref_mean**2
    weakening = variance / ref_variance
    mandel = (variance - mean) / mean
    g2 = (second - mean) / mean**2
    s_x, s_p = matrix_squeezing(state)
    return PhotonStatistics(mean, second, variance, weakening, mandel, g2, s_x, s_p)


def matrix_squeezing(state: StateVector):
    """Squeezing indices from quadrature matrices, no closed forms.

    The state is embedded two levels higher so that products of ladder
    matrices are exact on its support.
    """
    dim = state.dim + 2
    vec = np.zeros(dim, dtype=complex)
    vec[: state.dim] = state.amplitudes
    a = annihilation_matrix(dim)
    x_op = (a.conj().T + a) / sqrt(2.0)
    p_op = 1j * (a.conj().T - a) / sqrt(2.0)
    var_x = _variance_of(x_op, vec)
    var_p = _variance_of(p_op, vec)
    return 2.0 * var_x - 1.0, 2.0 * var_p - 1.0


def _variance_of(op, vec):
    mean = np.vdot(vec, op @ vec).real
    mean_sq = np.vdot(vec, op @ (op @ vec)).real
    return float(mean_sq - mean**2)


def squeezing_scan(m, eta, l_values):
    """Squeezing indices along a ladder of deformation parameters.

    Returns (rows, skipped): rows of (L, s_x, s_p) for admissible L in
    input order, and (L, reason) warning records for skipped values.
    """
    rows = []
    skipped = []
    for big_l in l_values:
        try:
            params = HgsParams(float(big_l), m, eta)
        except InvalidParams as err:
            skipped.append((float(big_l), str(err)))
            continue
        s_x, s_p = squeezing_indices(params)
        rows.append((float(big_l), s_x, s_p))
    return rows, skipped


def squeezing_scan_csv(rows) -> str:
    """CSV rendering of a squeezing scan with header L,Sx,Sp."""
    lines = ["L,Sx,Sp"]
    lines += [f"{big_l:.17g},{s_x:.17g},{s_p:.17g}" for big_l, s_x, s_p in rows]
    return "\n".join(lines) + "\n"


def stats_to_csv(stats: PhotonStatistics) -> str:
    """Single-record CSV with the field names as header."""
    record = stats.as_dict()
    header = ",".join(record)
    values = ",".join(f"{v:.17g}" for v in record.values())
    return f"{header}\n{values}\n"
