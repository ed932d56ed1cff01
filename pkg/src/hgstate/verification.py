"""Built-in verification suite behind the `verify` CLI command.

Every check pits a closed form against an independent route (exact urn
arithmetic, direct summation, operator matrices, matrix exponentials)
or asserts a structural bound.  Checks return names, booleans and a
measured detail string so failures are diagnosable from the report.
"""

import random
from math import pi, sqrt
from typing import NamedTuple

import numpy as np

from . import algebra, oracle, phasespace, statistics
from .states import (
    HgsParams,
    binomial_amplitudes,
    coherent_amplitudes,
    fidelity,
    hgs_amplitudes,
    l_min,
    number_state,
    photon_distribution,
)

__all__ = ["CheckResult", "run_all", "sweep_params", "count_negative_clusters"]

_SWEEP_M = (1, 2, 5, 20, 50)
_SWEEP_ETA = (0.1, 0.25, 0.5, 0.75, 0.9)
_SWEEP_SCALE = (1.0, 2.0, 10.0)


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def sweep_params():
    """The standard admissible parameter sweep used across checks."""
    out = []
    for m in _SWEEP_M:
        for eta in _SWEEP_ETA:
            base = l_min(m, eta)
            for scale in _SWEEP_SCALE:
                out.append(HgsParams(scale * base, m, eta))
    return out


def check_normalization():
    worst = 0.0
    for params in sweep_params():
        gap = abs(float(np.sum(photon_distribution(hgs_amplitudes(params)))) - 1.0)
        worst = max(worst, gap)
    return CheckResult("normalization-sweep", worst <= 1e-12, f"max |1 - sum p_n| = {worst:.3e}")


def check_urn_oracle():
    dist = photon_distribution(hgs_amplitudes(HgsParams(4.0, 2, 0.5)))
    expected = oracle.urn_distribution(oracle.UrnSpec(2, 2, 2))
    worst = float(np.abs(dist - expected).max())
    rng = random.Random(20259)
    for _ in range(10):
        m = rng.randint(1, 8)
        big_l = rng.randint(2 * m, 200)
        red = rng.randint(m, big_l - m)
        eta = red / big_l
        dist = photon_distribution(hgs_amplitudes(HgsParams(float(big_l), m, eta)))
        expected = oracle.urn_distribution(oracle.UrnSpec(red, big_l - red, m))
        worst = max(worst, float(np.abs(dist - expected).max()))
    return CheckResult("urn-oracle", worst <= 1e-13, f"max per-entry gap = {worst:.3e}")


def check_closed_vs_direct():
    worst = 0.0
    for params in sweep_params():
        closed = statistics.closed_form_stats(params)
        direct = statistics.direct_stats(hgs_amplitudes(params), params)
        for field in ("mean", "second_moment", "variance", "weakening_factor", "mandel_q", "g2"):
            worst = max(worst, abs(getattr(closed, field) - getattr(direct, field)))
    return CheckResult("closed-vs-direct", worst <= 1e-10, f"max field gap = {worst:.3e}")


def check_nonclassical_bounds():
    ok = True
    notes = []
    for params in sweep_params():
        stats = statistics.closed_form_stats(params)
        sub_poissonian = -1.0 < stats.mandel_q < 0.0
        antibunched = stats.g2 < 1.0
        dominance = params.M == 1 or stats.g2 < (params.M - 1) / params.M
        if params.M == 1:
            weakening_ok = stats.weakening_factor == 1.0
        else:
            weakening_ok = 0.5 < stats.weakening_factor < 1.0
        if not (sub_poissonian and antibunched and dominance and weakening_ok):
            ok = False
            notes.append(f"{params}")
    detail = "all sweep points sub-Poissonian, antibunched, 1/2 < W < 1" if ok else "; ".join(notes)
    return CheckResult("nonclassical-bounds", ok, detail)


def check_squeezing():
    worst_gap = 0.0
    worst_heis = np.inf
    for params in sweep_params():
        s_x, s_p = statistics.squeezing_indices(params)
        d_x, d_p = statistics.matrix_squeezing(hgs_amplitudes(params))
        worst_gap = max(worst_gap, abs(s_x - d_x), abs(s_p - d_p))
        worst_heis = min(worst_heis, (1.0 + s_x) * (1.0 + s_p))
    hand_x, _ = statistics.squeezing_indices(HgsParams(l_min(1, 0.25), 1, 0.25))
    hand_ok = abs(hand_x - (-0.25)) <= 1e-12
    passed = worst_gap <= 1e-10 and worst_heis >= 1.0 - 1e-10 and hand_ok
    return CheckResult(
        "squeezing-consistency", passed,
        f"max closed-direct gap = {worst_gap:.3e}, min Heisenberg product = {worst_heis:.12f}",
    )


def check_ladder_eigensystem():
    worst_resid = 0.0
    worst_fid = 1.0
    spectrum_ok = True
    for params in sweep_params():
        worst_resid = max(worst_resid, algebra.verify_ladder_equation(params))
        eigenvalues, match = algebra.eigensystem_check(params)
        worst_fid = min(worst_fid, match)
        expected = sqrt(params.eta) * np.arange(params.M + 1)
        spectrum_ok &= bool(np.abs(eigenvalues - expected).max() <= 1e-12)
    passed = worst_resid <= 1e-10 and worst_fid > 1.0 - 1e-10 and spectrum_ok
    return CheckResult(
        "ladder-eigensystem", passed,
        f"max residual = {worst_resid:.3e}, min eigenvector fidelity = {worst_fid:.12f}",
    )


def check_deformed_algebra():
    worst = 0.0
    f_nonneg = True
    for params in sweep_params():
        devs = algebra.verify_gdo_relations(params)
        worst = max(worst, *devs)
        values = [algebra.structure_function(params, n) for n in range(params.M + 1)]
        f_nonneg &= min(values) >= 0.0
    return CheckResult(
        "deformed-algebra", worst <= 1e-10 and f_nonneg,
        f"max identity deviation = {worst:.3e}, F(n) >= 0: {f_nonneg}",
    )


def check_contraction():
    rows, _ = algebra.contraction_error(5, 0.5, [1e2, 1e3, 1e4, 1e5])
    devs = [dev for _, dev in rows]
    monotone = all(devs[i + 1] < devs[i] for i in range(len(devs) - 1))
    ratios = [devs[i] / devs[i + 1] for i in range(len(devs) - 1)]
    ratios_ok = all(8.0 <= ratio <= 12.0 for ratio in ratios)
    return CheckResult(
        "contraction", monotone and ratios_ok,
        "decade ratios " + ", ".join(f"{ratio:.2f}" for ratio in ratios),
    )


def check_limit_states():
    fid_bs = fidelity(hgs_amplitudes(HgsParams(1e6, 5, 0.5)), binomial_amplitudes(5, 0.5))
    fid_coh = fidelity(hgs_amplitudes(HgsParams(1e5, 100, 0.01)), coherent_amplitudes(1.0, 101))
    top_mass = float(photon_distribution(hgs_amplitudes(HgsParams(500.0, 5, 0.99)))[5])
    passed = fid_bs > 1.0 - 1e-6 and fid_coh > 0.999 and top_mass > 0.9
    return CheckResult(
        "limit-states", passed,
        f"BS fidelity = {fid_bs:.9f}, coherent fidelity = {fid_coh:.6f}, top mass = {top_mass:.4f}",
    )


def check_phase_space():
    spec = phasespace.GridSpec(-4.0, 4.0, -4.0, 4.0, 161, 161)
    state = hgs_amplitudes(HgsParams(10.0, 5, 0.5))
    q_grid = phasespace.evaluate_grid(state, phasespace.Q_KIND, spec)
    w_grid = phasespace.evaluate_grid(state, phasespace.WIGNER_KIND, spec)
    q_int = phasespace.grid_integral(q_grid)
    w_int = phasespace.grid_integral(w_grid)
    q_bounds = q_grid.values.min() >= -1e-15 and q_grid.values.max() <= 1.0 / pi + 1e-12

    neg_spec = phasespace.GridSpec(-3.0, 3.0, -3.0, 3.0, 121, 121)
    neg_state = hgs_amplitudes(HgsParams(10.0, 2, 0.2))
    neg_min = phasespace.grid_extrema(
        phasespace.evaluate_grid(neg_state, phasespace.WIGNER_KIND, neg_spec)
    ).min_value
    origin = phasespace.wigner_function(number_state(2, 3), 0j)
    passed = (
        abs(q_int - 1.0) <= 1e-3 and abs(w_int - 1.0) <= 1e-3 and q_bounds
        and neg_min < 0.0 and abs(origin - 2.0 / pi) <= 2e-3
    )
    return CheckResult(
        "phase-space-grids", passed,
        f"Q integral = {q_int:.6f}, W integral = {w_int:.6f}, "
        f"min W = {neg_min:.4f}, W(|2>,0) = {origin:.6f}",
    )


def check_displacement_oracle():
    worst = 0.0
    margin = 39  # levels beyond the compared block, enough for |beta| <= 1.5
    for beta in (0.3 + 0j, 0.7 + 0.3j, 1.5j):
        big = oracle.displacement_by_expm(beta, 25 + margin)
        for n in range(25):
            for k in range(25):
                gap = abs(phasespace.displacement_element(n, k, beta) - big[n, k])
                worst = max(worst, gap)
    return CheckResult(
        "displacement-oracle", worst <= 1e-9, f"max entry gap = {worst:.3e}"
    )


def count_negative_clusters(grid, threshold=-1e-3):
    """Number of 8-connected components of cells below the threshold."""
    mask = grid.values < threshold
    seen = np.zeros_like(mask, dtype=bool)
    clusters = 0
    nx, ny = mask.shape
    for i in range(nx):
        for j in range(ny):
            if not mask[i, j] or seen[i, j]:
                continue
            clusters += 1
            stack = [(i, j)]
            seen[i, j] = True
            while stack:
                ci, cj = stack.pop()
                for di in (-1, 0, 1):
                    for dj in (-1, 0, 1):
                        ni, nj = ci + di, cj + dj
                        if 0 <= ni < nx and 0 <= nj < ny and mask[ni, nj] and not seen[ni, nj]:
                            seen[ni, nj] = True
                            stack.append((ni, nj))
    return clusters


def check_wigner_negativity_clusters():
    spec = phasespace.GridSpec(-3.0, 3.0, -3.0, 3.0, 121, 121)
    hgs = phasespace.evaluate_grid(
        hgs_amplitudes(HgsParams(4.0, 2, 0.5)), phasespace.WIGNER_KIND, spec
    )
    ref = phasespace.evaluate_grid(
        binomial_amplitudes(2, 0.5), phasespace.WIGNER_KIND, spec
    )
    n_hgs = count_negative_clusters(hgs)
    n_ref = count_negative_clusters(ref)
    return CheckResult(
        "wigner-negativity-clusters", n_hgs == 2 and n_ref == 1,
        f"deformed state has {n_hgs} negative clusters, binomial reference has {n_ref}",
    )


_ALL_CHECKS = [
    check_normalization,
    check_urn_oracle,
    check_closed_vs_direct,
    check_nonclassical_bounds,
    check_squeezing,
    check_ladder_eigensystem,
    check_deformed_algebra,
    check_contraction,
    check_limit_states,
    check_phase_space,
    check_displacement_oracle,
    check_wigner_negativity_clusters,
]


def run_all():
    """Run every check; returns the list of CheckResult records."""
    return [check() for check in _ALL_CHECKS]
