"""Q and Wigner quasiprobability functions on phase-space grids.

The phase-space point beta = x + i y labels a coherent state; the Q
function is the squared coherent overlap over pi, and the Wigner
function is an alternating series over displaced-number-state overlaps.
Grid evaluation is vectorized one x-row at a time, which makes results
independent of how rows are distributed over worker threads.
"""

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import exp, lgamma, log, pi, sqrt
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, InvalidParams
from .specfn import laguerre
from .states import StateVector

__all__ = [
    "Q_KIND",
    "WIGNER_KIND",
    "GridSpec",
    "PhaseSpaceGrid",
    "displacement_element",
    "q_function",
    "wigner_function",
    "evaluate_grid",
    "grid_integral",
    "GridExtrema",
    "grid_extrema",
    "grid_to_csv",
    "grid_to_json",
]

Q_KIND = "Q"
WIGNER_KIND = "Wigner"

# Alternating-series controls: the per-point sum stops once the last
# _TAIL_WINDOW inner terms together fall below the tolerance, which
# avoids stopping at incidental zeros of oscillatory terms.
_TAIL_WINDOW = 5
_SERIES_CAP = 500


@dataclass(frozen=True)
class GridSpec:
    """Rectangular grid over beta = x + i y."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidParams("grid window must have positive extent")
        if self.nx < 1 or self.ny < 1:
            raise InvalidParams("grid point counts must be positive")
        if self.nx * self.ny > 10**7:
            raise InvalidParams(f"grid with {self.nx * self.ny} cells is too large")

    def x_axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def y_axis(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    @property
    def step_x(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1) if self.nx > 1 else self.x_max - self.x_min

    @property
    def step_y(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1) if self.ny > 1 else self.y_max - self.y_min


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """One real value per grid cell; values[i, j] belongs to (x_i, y_j)."""

    spec: GridSpec
    values: np.ndarray
    kind: str

    def __post_init__(self):
        if self.kind not in (Q_KIND, WIGNER_KIND):
            raise InvalidParams(f"unknown grid kind {self.kind!r}")
        if self.values.shape != (self.spec.nx, self.spec.ny):
            raise InvalidParams("values shape does not match the grid spec")
        if not np.all(np.isfinite(self.values)):
            raise InvalidParams("grid values must be finite")
        if self.kind == Q_KIND:
            if self.values.min() < -1e-15 or self.values.max() > 1.0 / pi + 1e-12:
                raise InvalidParams("Q values outside [0, 1/pi] beyond roundoff")
        self.values.flags.writeable = False


def displacement_element(n: int, k: int, beta: complex) -> complex:
    """Matrix element <n| D(beta) |k> of the displacement operator.

    Closed form with a generalized Laguerre factor.  For n < k the power
    carries (-conj(beta)); the factorial ratio and the Gaussian factor
    are combined in the log domain so large indices stay finite.
    """
    beta = complex(beta)
    r = abs(beta) ** 2
    if n >= k:
        base, lo, hi, degree = beta, k, n, k
    else:
        base, lo, hi, degree = -beta.conjugate(), n, k, n
    power = hi - lo
    lag = laguerre(degree, power, r)
    if power == 0:
        return complex(exp(-0.5 * r) * lag)
    if base == 0:
        return 0j
    magnitude = exp(power * log(abs(base)) + 0.5 * (lgamma(lo + 1) - lgamma(hi + 1)) - 0.5 * r)
    phase = (base / abs(base)) ** power
    return magnitude * phase * lag


def q_function(state: StateVector, beta: complex) -> float:
    """Q(beta) = |<beta|state>|^2 / pi."""
    values = _q_values(state.amplitudes, np.array([complex(beta)]))
    return float(values[0])


def wigner_function(state: StateVector, beta: complex, tol: float = 1e-9) -> float:
    """W(beta) via the alternating series over displaced-number overlaps.

    The series is truncated adaptively per the module's tail-window rule;
    exceeding the hard cap raises ConvergenceError.
    """
    values = _wigner_values(state.amplitudes, np.array([complex(beta)]), tol)
    return float(values[0])


def evaluate_grid(state: StateVector, kind: str, spec: GridSpec,
                  tol: float = 1e-9, workers: int = 1) -> PhaseSpaceGrid:
    """Evaluate the Q or Wigner function over a grid.

    Rows of constant x are evaluated independently (optionally on a
    thread pool); cell values do not depend on the worker count.
    """
    if kind not in (Q_KIND, WIGNER_KIND):
        raise InvalidParams(f"unknown grid kind {kind!r}")
    if tol <= 0.0:
        raise InvalidParams(f"tol must be positive, got {tol}")
    x = spec.x_axis()
    y = spec.y_axis()
    amps = state.amplitudes

    def one_row(xi):
        betas = xi + 1j * y
        if kind == Q_KIND:
            return _q_values(amps, betas)
        return _wigner_values(amps, betas, tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one_row, x))
    else:
        rows = [one_row(xi) for xi in x]
    values = np.vstack(rows)
    return PhaseSpaceGrid(spec, values, kind)


def grid_integral(grid: PhaseSpaceGrid) -> float:
    """Riemann sum of the grid values times the cell area."""
    return float(grid.values.sum() * grid.spec.step_x * grid.spec.step_y)


class GridExtrema(NamedTuple):
    min_value: float
    argmin: tuple
    max_value: float
    argmax: tuple


def grid_extrema(grid: PhaseSpaceGrid) -> GridExtrema:
    """Extrema over grid cells; ties resolve to the first cell row-major."""
    x = grid.spec.x_axis()
    y = grid.spec.y_axis()
    flat = grid.values.ravel()
    imin, jmin = np.unravel_index(int(np.argmin(flat)), grid.values.shape)
    imax, jmax = np.unravel_index(int(np.argmax(flat)), grid.values.shape)
    return GridExtrema(
        float(grid.values[imin, jmin]), (float(x[imin]), float(y[jmin])),
        float(grid.values[imax, jmax]), (float(x[imax]), float(y[jmax])),
    )


def grid_to_csv(grid: PhaseSpaceGrid) -> str:
    """CSV with header x,y,value, x varying slowest, 17 significant digits."""
    x = grid.spec.x_axis()
    y = grid.spec.y_axis()
    buf = io.StringIO()
    buf.write("x,y,value\n")
    for i in range(grid.spec.nx):
        for j in range(grid.spec.ny):
            buf.write(f"{x[i]:.17g},{y[j]:.17g},{grid.values[i, j]:.17g}\n")
    return buf.getvalue()


def grid_to_json(grid: PhaseSpaceGrid) -> dict:
    """JSON-ready form carrying the kind, the spec and nested values."""
    spec = grid.spec
    return {
        "kind": grid.kind,
        "spec": {
            "x_min": spec.x_min, "x_max": spec.x_max,
            "y_min": spec.y_min, "y_max": spec.y_max,
            "nx": spec.nx, "ny": spec.ny,
        },
        "values": grid.values.tolist(),
    }


def _q_values(amps, betas):
    """Vectorized Q over an array of points.

    Accumulates the coherent overlap through the recursion
    t_{n+1} = t_n * beta / sqrt(n+1) starting from the Gaussian factor,
    so every partial product stays bounded by one in magnitude.
    """
    term = np.exp(-0.5 * np.abs(betas) ** 2).astype(complex)
    acc = np.conj(amps[0]) * term
    for n in range(1, amps.size):
        term = term * betas / sqrt(n)
        acc = acc + np.conj(amps[n]) * term
    return (acc.real**2 + acc.imag**2) / pi


def _laguerre_values(n, alpha, x):
    """Forward three-term recurrence, elementwise over the array x."""
    if n == 0:
        return np.ones_like(x)
    prev = np.ones_like(x)
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def _wigner_values(amps, betas, tol):
    """Vectorized Wigner values with per-point adaptive truncation.

    For each point, term k is |sum_n conj(c_n) <n|D(beta)|k>|^2 with
    alternating sign.  A point stops accumulating once the sum of its
    last _TAIL_WINDOW terms drops below tol; reaching _SERIES_CAP with
    unconverged points raises ConvergenceError naming the first one.
    """
    size = betas.size
    r = np.abs(betas) ** 2
    gaussian = np.exp(-0.5 * r)
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(betas))  # -inf exactly at the origin
    at_origin = betas == 0
    unit = np.where(at_origin, 1.0 + 0j, -np.conj(betas) / np.abs(np.where(at_origin, 1.0, betas)))
    lgf = [lgamma(i + 1.0) for i in range(_SERIES_CAP + amps.size + 2)]
    conj_amps = np.conj(amps)
    occupied = [n for n in range(amps.size) if conj_amps[n] != 0]

    total = np.zeros(size)
    window = np.zeros((_TAIL_WINDOW, size))
    active = np.ones(size, dtype=bool)
    sign = 1.0
    for k in range(_SERIES_CAP + 1):
        inner = np.zeros(size, dtype=complex)
        for n in occupied:
            if n >= k:
                pref = exp(0.5 * (lgf[k] - lgf[n]))
                term = (pref * gaussian) * betas ** (n - k) * _laguerre_values(k, n - k, r)
            else:
                power = k - n
                magnitude = np.exp(power * log_abs + (0.5 * (lgf[n] - lgf[k])) - 0.5 * r)
                term = magnitude * unit**power * _laguerre_values(n, power, r)
            inner = inner + conj_amps[n] * term
        term_sq = inner.real**2 + inner.imag**2
        total = np.where(active, total + sign * term_sq, total)
        window[k % _TAIL_WINDOW] = term_sq
        if k >= _TAIL_WINDOW - 1:
            active &= window.sum(axis=0) >= tol
            if not active.any():
                break
        sign = -sign
    else:
        offender = betas[int(np.argmax(active))]
        raise ConvergenceError(
            f"Wigner series cap {_SERIES_CAP} reached at beta = {offender}"
        )
    return (2.0 / pi) * total
