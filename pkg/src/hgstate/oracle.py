"""Independent brute-force references.

Urn-model probabilities in exact integer arithmetic, classical reference
distributions, and displacement operators built by matrix exponential.
These deliberately share no code path with the log-domain constructors
they are used to validate.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, exp

import numpy as np

from .algebra import annihilation_matrix
from .errors import ConvergenceError, InvalidParams

__all__ = [
    "UrnSpec",
    "urn_distribution",
    "binomial_pmf",
    "poisson_pmf",
    "displacement_by_expm",
]


@dataclass(frozen=True)
class UrnSpec:
    """Draw `draw` balls from a pot of `red` red and `black` black balls."""

    red: int
    black: int
    draw: int

    def __post_init__(self):
        for name in ("red", "black", "draw"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 0:
                raise InvalidParams(f"{name} must be a nonnegative integer, got {value!r}")
        if self.draw > self.red + self.black:
            raise InvalidParams("cannot draw more balls than the pot contains")


def urn_distribution(spec: UrnSpec) -> np.ndarray:
    """Probability of drawing exactly n red balls, n = 0..draw.

    Exact rational arithmetic throughout; the probabilities sum to one
    identically before the final conversion to floats.
    """
    total = spec.red + spec.black
    denom = comb(total, spec.draw)
    probs = [
        Fraction(comb(spec.red, n) * comb(spec.black, spec.draw - n), denom)
        for n in range(spec.draw + 1)
    ]
    assert sum(probs) == 1
    return np.array([float(p) for p in probs])


def binomial_pmf(m: int, eta: float) -> np.ndarray:
    """Binomial(M, eta) probabilities for n = 0..M."""
    if not (0.0 < eta < 1.0):
        raise InvalidParams(f"eta must lie in (0, 1), got {eta}")
    return np.array(
        [comb(m, n) * eta**n * (1.0 - eta) ** (m - n) for n in range(m + 1)]
    )


def poisson_pmf(lam: float, cutoff: int):
    """Poisson(lam) probabilities for n = 0..cutoff, plus the tail mass."""
    if lam <= 0.0:
        raise InvalidParams(f"lambda must be positive, got {lam}")
    probs = np.empty(cutoff + 1)
    probs[0] = exp(-lam)
    for n in range(1, cutoff + 1):
        probs[n] = probs[n - 1] * lam / n
    tail = 1.0 - float(probs.sum())
    return probs, tail


def displacement_by_expm(beta: complex, dim: int) -> np.ndarray:
    """exp(beta a+ - conj(beta) a) on dim levels by scaled Taylor series.

    Scaling and squaring with the plain Taylor core keeps the oracle
    self-contained; the series remainder is monitored to 1e-14.  Only
    the part of the matrix well inside the truncation edge approximates
    the untruncated operator; callers allow margin, e.g.
    dim >= 4 (|beta|^2 + 1).
    """
    beta = complex(beta)
    a = annihilation_matrix(dim)
    generator = beta * a.conj().T - beta.conjugate() * a
    norm = np.linalg.norm(generator, 1)
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
    scaled = generator / (2.0**squarings)
    result = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for j in range(1, 80):
        term = term @ scaled / j
        result = result + term
        if np.linalg.norm(term, 1) < 1e-14:
            break
    else:
        raise ConvergenceError(
            f"displacement series did not reach 1e-14 for beta={beta}, dim={dim}"
        )
    for _ in range(squarings):
        result = result @ result
    return result
