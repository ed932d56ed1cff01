"""State constructors on a truncated Fock space.

Hypergeometric states (HGS), binomial states, coherent states and number
states as normalized amplitude vectors, together with photon
distributions and overlap fidelities.
"""

import io
from dataclasses import dataclass
from math import exp, lgamma, log, sqrt

import numpy as np

from .errors import InvalidParams, TruncationError
from .specfn import log_gen_binomial

__all__ = [
    "HgsParams",
    "StateVector",
    "l_min",
    "hgs_amplitudes",
    "binomial_amplitudes",
    "coherent_amplitudes",
    "number_state",
    "photon_distribution",
    "fidelity",
    "state_to_json",
    "state_to_csv",
]

# Relative slack on the admissibility bound: keeps exact boundary choices
# such as L = M/eta valid when the bound itself carries float roundoff.
_ADMISSIBILITY_SLACK = 1e-9


def l_min(m: int, eta: float) -> float:
    """Smallest admissible deformation parameter, max(M/eta, M/(1-eta))."""
    return max(m / eta, m / (1.0 - eta))


@dataclass(frozen=True)
class HgsParams:
    """Hypergeometric-state parameters (L, M, eta).

    L is a real deformation parameter, M the top occupied Fock level and
    eta a probability in (0, 1).  Admissibility requires
    L >= max(M/eta, M/(1-eta)), equality allowed; this keeps every
    generalized binomial factor in the amplitudes nonnegative.
    """

    L: float
    M: int
    eta: float

    def __post_init__(self):
        if not isinstance(self.M, (int, np.integer)) or isinstance(self.M, bool):
            raise InvalidParams(f"M must be an integer, got {self.M!r}")
        if self.M < 1:
            raise InvalidParams(f"M must be >= 1, got {self.M}")
        if not (0.0 < self.eta < 1.0):
            raise InvalidParams(f"eta must lie in (0, 1), got {self.eta}")
        if not np.isfinite(self.L):
            raise InvalidParams(f"L must be finite, got {self.L}")
        bound = l_min(self.M, self.eta)
        if self.L < bound * (1.0 - _ADMISSIBILITY_SLACK):
            raise InvalidParams(
                f"L={self.L} violates L >= max(M/eta, M/(1-eta)) = {bound}"
            )


class StateVector:
    """Complex amplitudes over Fock levels 0..dim-1, unit norm.

    The amplitude array is copied, renormalized if its norm deviates from
    one by more than 1e-13, and frozen; instances are safe to share.
    """

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise InvalidParams("amplitudes must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise InvalidParams("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise InvalidParams("amplitudes must not all vanish")
        if abs(norm - 1.0) > 1e-13:
            amps = amps / norm
        amps.flags.writeable = False
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __repr__(self):
        return f"StateVector(dim={self.dim})"


def hgs_amplitudes(params: HgsParams) -> StateVector:
    """Hypergeometric state on levels 0..M.

    Amplitude at level n is the square root of the hypergeometric
    probability C(L*eta, n) C(L*(1-eta), M-n) / C(L, M), evaluated in the
    log domain so that L of order 1e6 stays exact to roundoff.  All
    amplitudes are real and nonnegative.
    """
    if not isinstance(params, HgsParams):
        params = HgsParams(*params)
    big_l, m, eta = params.L, params.M, params.eta
    log_norm = log_gen_binomial(big_l, m).log_magnitude
    amps = np.zeros(m + 1)
    for n in range(m + 1):
        red = log_gen_binomial(big_l * eta, n)
        black = log_gen_binomial(big_l * (1.0 - eta), m - n)
        if red.zero_flag or black.zero_flag:
            continue
        amps[n] = exp(0.5 * (red.log_magnitude + black.log_magnitude - log_norm))
    return StateVector(amps)


def binomial_amplitudes(m: int, eta: float) -> StateVector:
    """Binomial state on levels 0..M: sqrt of Binomial(M, eta) weights."""
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InvalidParams(f"M must be a positive integer, got {m!r}")
    if not (0.0 < eta < 1.0):
        raise InvalidParams(f"eta must lie in (0, 1), got {eta}")
    log_eta = log(eta)
    log_comp = log(1.0 - eta)
    lg_m = lgamma(m + 1)
    amps = np.empty(m + 1)
    for n in range(m + 1):
        log_p = (lg_m - lgamma(n + 1) - lgamma(m - n + 1)
                 + n * log_eta + (m - n) * log_comp)
        amps[n] = exp(0.5 * log_p)
    return StateVector(amps)


def coherent_amplitudes(alpha: complex, dim: int) -> StateVector:
    """Coherent state truncated to levels 0..dim-1 and renormalized.

    The truncation window must capture essentially all of the Poisson
    weight; a pre-renormalization tail mass above 1e-9 raises
    TruncationError.  dim >= |alpha|^2 + 10*sqrt(|alpha|^2 + 1) is always
    sufficient.
    """
    if dim < 1:
        raise InvalidParams(f"dim must be >= 1, got {dim}")
    alpha = complex(alpha)
    amps = np.zeros(dim, dtype=complex)
    term = exp(-0.5 * abs(alpha) ** 2)
    amps[0] = term
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / sqrt(n)
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    if tail > 1e-9:
        raise TruncationError(
            f"truncated tail mass {tail:.3e} exceeds 1e-9 for |alpha|={abs(alpha)}, dim={dim}"
        )
    return StateVector(amps)


def number_state(n: int, dim: int) -> StateVector:
    """Fock state |n> embedded in a dim-dimensional window."""
    if not 0 <= n < dim:
        raise IndexError(f"level {n} outside 0..{dim - 1}")
    amps = np.zeros(dim)
    amps[n] = 1.0
    return StateVector(amps)


def photon_distribution(state: StateVector) -> np.ndarray:
    """Probabilities |amplitude_n|^2; sums to 1 to roundoff."""
    return np.abs(state.amplitudes) ** 2


def fidelity(a: StateVector, b: StateVector) -> float:
    """Squared overlap |<a|b>|^2; the shorter vector is zero-padded."""
    n = max(a.dim, b.dim)
    av = np.zeros(n, dtype=complex)
    bv = np.zeros(n, dtype=complex)
    av[: a.dim] = a.amplitudes
    bv[: b.dim] = b.amplitudes
    val = abs(np.vdot(av, bv)) ** 2
    return float(min(max(val, 0.0), 1.0))


def state_to_json(state: StateVector) -> dict:
    """JSON-ready form: {dim, amplitudes: [[re, im], ...]}."""
    return {
        "dim": state.dim,
        "amplitudes": [[z.real, z.imag] for z in state.amplitudes],
    }


def state_to_csv(state: StateVector) -> str:
    """CSV rows (n, re, im, probability) with a header line."""
    buf = io.StringIO()
    buf.write("n,re,im,probability\n")
    probs = photon_distribution(state)
    for n, (z, p) in enumerate(zip(state.amplitudes, probs)):
        buf.write(f"{n},{z.real:.17g},{z.imag:.17g},{p:.17g}\n")
    return buf.getvalue()
