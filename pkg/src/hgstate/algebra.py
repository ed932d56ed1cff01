"""Operator matrices on the truncated Fock space.

Ladder operators, the deformed lowering/raising pair characterizing the
hypergeometric states, the structure function of the resulting deformed
oscillator algebra, and consistency checks (eigenvalue equation, algebra
relations, contraction to the undeformed pair at large L).
"""

from math import sqrt
from typing import NamedTuple

import numpy as np

from .errors import DegenerateSpectrum, InvalidParams, RangeError
from .states import HgsParams, StateVector, fidelity, hgs_amplitudes

__all__ = [
    "annihilation_matrix",
    "creation_matrix",
    "number_matrix",
    "jm_plus_matrix",
    "am_minus_matrix",
    "ladder_operator",
    "structure_function",
    "GdoDeviations",
    "verify_gdo_relations",
    "verify_ladder_equation",
    "EigensystemCheck",
    "eigensystem_check",
    "contraction_error",
]


def annihilation_matrix(dim: int) -> np.ndarray:
    """Annihilation operator a on dim levels: a[n-1, n] = sqrt(n)."""
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def creation_matrix(dim: int) -> np.ndarray:
    """Creation operator, the adjoint of the annihilation matrix."""
    return annihilation_matrix(dim).conj().T


def number_matrix(dim: int) -> np.ndarray:
    """Number operator N = diag(0, 1, ..., dim-1)."""
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def jm_plus_matrix(m: int) -> np.ndarray:
    """Lowering combination sqrt(M - N) a on the (M+1)-dimensional space.

    The square-root factor acts after a, i.e. at the post-action level,
    so entry (k, k+1) equals sqrt(M - k) sqrt(k + 1).
    """
    dim = m + 1
    a = annihilation_matrix(dim)
    weight = np.diag(np.sqrt(np.arange(m, -1, -1, dtype=float)))
    return weight.astype(complex) @ a


def _deformation_diagonal(params: HgsParams) -> np.ndarray:
    """Diagonal factor sqrt((L(1-eta)-M+n+1)/(L eta - n)) at rows n < M.

    Row M is never reached by lowering, so its entry is set to zero and
    carries no meaning.  Both numerator and denominator are strictly
    positive for admissible parameters on rows 0..M-1.
    """
    big_l, m, eta = params.L, params.M, params.eta
    diag = np.zeros(m + 1)
    for n in range(m):
        num = big_l * (1.0 - eta) - m + n + 1
        den = big_l * eta - n
        if num <= 0.0 or den <= 0.0:
            raise InvalidParams(
                f"deformation factor not positive at level {n} for {params}"
            )
        diag[n] = sqrt(num / den)
    return diag


def am_minus_matrix(params: HgsParams) -> np.ndarray:
    """Deformed lowering operator on the (M+1)-dimensional space.

    sqrt(eta/(1-eta)) times the deformation diagonal times sqrt(M-N) a,
    with every function of N evaluated at the post-action (row) index.
    The raising partner is the adjoint.
    """
    eta = params.eta
    diag = _deformation_diagonal(params)
    return sqrt(eta / (1.0 - eta)) * np.diag(diag).astype(complex) @ jm_plus_matrix(
        params.M
    )


def ladder_operator(params: HgsParams) -> np.ndarray:
    """sqrt(eta) N + sqrt(1-eta) A-, the operator whose eigenvector at
    eigenvalue sqrt(eta) M is the hypergeometric state."""
    m, eta = params.M, params.eta
    return sqrt(eta) * number_matrix(m + 1) + sqrt(1.0 - eta) * am_minus_matrix(params)


def structure_function(params: HgsParams, n: int) -> float:
    """Structure function F(n) of the deformed oscillator algebra.

    F(n) = eta [L(1-eta) - M + n] n (M - n + 1) / [(1-eta)(L eta - n + 1)],
    which is exactly the diagonal of A+ A- on the truncated space and is
    nonnegative on 0 <= n <= M.
    """
    if not 0 <= n <= params.M:
        raise RangeError(f"n={n} outside 0..{params.M}")
    big_l, m, eta = params.L, params.M, params.eta
    num = eta * (big_l * (1.0 - eta) - m + n) * n * (m - n + 1)
    den = (1.0 - eta) * (big_l * eta - n + 1)
    return num / den


class GdoDeviations(NamedTuple):
    commutator: float
    product_minus: float
    product_plus: float


def verify_gdo_relations(params: HgsParams) -> GdoDeviations:
    """Entrywise deviations of the deformed-algebra identities.

    Checks [N, A+-] = +-A+-, A+ A- = F(N) and A- A+ = F(N+1) on the
    (M+1)-dimensional space.  The last identity excludes the top diagonal
    entry (n = M), where truncation forces the left side to vanish.
    """
    m = params.M
    n_op = number_matrix(m + 1)
    a_minus = am_minus_matrix(params)
    a_plus = a_minus.conj().T
    dev_comm = max(
        np.abs(n_op @ a_minus - a_minus @ n_op + a_minus).max(),
        np.abs(n_op @ a_plus - a_plus @ n_op - a_plus).max(),
    )
    f_diag = np.array([structure_function(params, n) for n in range(m + 1)])
    dev_minus = np.abs(a_plus @ a_minus - np.diag(f_diag)).max()
    shifted = np.zeros(m + 1)
    shifted[:m] = f_diag[1:]
    gap = np.abs(a_minus @ a_plus - np.diag(shifted))
    gap[m, m] = 0.0  # truncation carve-out
    dev_plus = gap.max()
    return GdoDeviations(float(dev_comm), float(dev_minus), float(dev_plus))


def verify_ladder_equation(params: HgsParams) -> float:
    """2-norm residual of the eigenvalue equation on the constructed state."""
    psi = hgs_amplitudes(params).amplitudes
    t_op = ladder_operator(params)
    target = sqrt(params.eta) * params.M * psi
    return float(np.linalg.norm(t_op @ psi - target))


class EigensystemCheck(NamedTuple):
    eigenvalues: np.ndarray
    hgs_match_fidelity: float


def eigensystem_check(params: HgsParams) -> EigensystemCheck:
    """Spectrum of the ladder operator and its top-eigenvector fidelity.

    The operator is bidiagonal in the Fock basis, so its spectrum is the
    diagonal sqrt(eta) * n.  The eigenvector at sqrt(eta) * M is
    recovered by back-substitution and compared with the constructed
    state.
    """
    m, eta = params.M, params.eta
    t_op = ladder_operator(params)
    diag = np.real(np.diag(t_op))
    if len(set(diag.tolist())) != diag.size:
        raise DegenerateSpectrum(f"coincident diagonal entries for {params}")
    vec = np.zeros(m + 1)
    vec[m] = 1.0
    lam = diag[m]
    for n in range(m - 1, -1, -1):
        # row n of (T - lam I) v = 0:  (diag_n - lam) v_n + T[n, n+1] v_{n+1} = 0
        vec[n] = float(np.real(t_op[n, n + 1])) * vec[n + 1] / (lam - diag[n])
    recovered = StateVector(vec)
    match = fidelity(recovered, hgs_amplitudes(params))
    return EigensystemCheck(diag.copy(), match)


def contraction_error(m, eta, l_values):
    """Max-entry distance between the deformed and undeformed lowering pair.

    Returns (rows, skipped): rows of (L, max abs deviation) for each
    admissible L, and (L, reason) records for values skipped as
    inadmissible.  The deviation decreases to zero as L grows.
    """
    reference = jm_plus_matrix(m)
    rows = []
    skipped = []
    for big_l in l_values:
        try:
            params = HgsParams(float(big_l), m, eta)
        except InvalidParams as err:
            skipped.append((float(big_l), str(err)))
            continue
        dev = float(np.abs(am_minus_matrix(params) - reference).max())
        rows.append((float(big_l), dev))
    return rows, skipped


def contraction_csv(rows) -> str:
    """CSV rendering of a contraction table with header L,max_abs_deviation."""
    lines = ["L,max_abs_deviation"]
    lines += [f"{big_l:.17g},{dev:.17g}" for big_l, dev in rows]
    return "\n".join(lines) + "\n"
