"""Truncated photon-number simulation of a single bosonic field mode.

This is the brute-force reference route: states are explicit amplitude
vectors over |0..N-1> with a certified discarded-probability bound, and
every observable is evaluated directly from ladder-operator matrix
elements or Hermite-function wavefunctions. The closed-form results in
`analytic` and the series route in `wigner` are validated against it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

# Extra levels kept above the certified Poisson tail cut so that k-fold
# ladder-operator products never touch populated levels.
TAIL_HEADROOM = 8

# Above this coherent amplitude the truncated dimension grows past desk
# scale; callers should switch to the closed-form route.
ORACLE_R_MAX = 6.0


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform grid on which quadrature densities are sampled."""

    x_min: float
    x_max: float
    num_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if self.x_min >= self.x_max:
            raise ValueError("x_min must be smaller than x_max")
        if self.num_points < 2:
            raise ValueError("num_points must be at least 2")

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.num_points)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.num_points - 1)


@dataclass(frozen=True)
class Distribution:
    """Sampled probability density of a quadrature outcome."""

    grid: QuadratureGrid
    density: np.ndarray

    def __post_init__(self) -> None:
        dens = np.asarray(self.density, dtype=float)
        object.__setattr__(self, "density", dens)
        if dens.shape != (self.grid.num_points,):
            raise ValueError("density must hold one value per grid point")
        if np.any(dens < 0.0):
            raise ValueError("density values must be non-negative")

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.grid.points()))

    def moment(self, k: int = 1) -> float:
        x = self.grid.points()
        return float(np.trapezoid(self.density * x**k, x))

    def mean(self) -> float:
        return self.moment(1)

    def variance(self) -> float:
        m = self.mean()
        return self.moment(2) - m * m


@dataclass(frozen=True)
class FockVector:
    """Bus state as photon-number amplitudes plus a certified tail bound.

    ``amplitudes[n]`` multiplies |n>; ``tail_bound`` is an upper bound on
    the probability weight discarded by the truncation, so for states
    built from normalised inputs the captured norm is >= 1 - tail_bound.
    """

    amplitudes: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must be a non-empty 1-D sequence")
        if not (0.0 <= self.tail_bound < 1.0):
            raise ValueError("tail_bound must lie in [0, 1)")

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def mean_photon(self) -> float:
        n = np.arange(self.dim)
        return float(np.sum(n * np.abs(self.amplitudes) ** 2))


def _poisson_tail(mean: float, start: int) -> float:
    """Certified upper bound on sum_{k >= start} of Poisson(mean) weights."""
    if mean == 0.0:
        return 0.0 if start >= 1 else 1.0
    log_term = -mean + start * math.log(mean) - math.lgamma(start + 1)
    term = math.exp(log_term)
    total = 0.0
    k = start
    # past the mode the term ratios decrease, so a geometric majorant closes
    # the sum as soon as the ratio drops below one
    while mean / (k + 1) >= 1.0:
        total += term
        term *= mean / (k + 1)
        k += 1
    total += term / (1.0 - mean / (k + 1))
    return min(total, 1.0)


def _poisson_cut(mean: float, tail_tol: float) -> int:
    """Smallest N for which the Poisson weight at levels >= N is < tail_tol."""
    n = 1
    while _poisson_tail(mean, n) >= tail_tol:
        n += 1
    return n


def coherent_fock(alpha: complex, tail_tol: float = 1e-12) -> FockVector:
    """Coherent state with a truncation certified to drop < tail_tol weight."""
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise ValueError("alpha must be finite")
    if not (0.0 < tail_tol < 1.0):
        raise ValueError("tail_tol must lie in (0, 1)")
    mean = abs(alpha) ** 2
    if mean > 700.0:
        raise ValueError("coherent amplitude too large for a certified truncation")
    dim = _poisson_cut(mean, tail_tol) + TAIL_HEADROOM
    amps = np.empty(dim, dtype=complex)
    amps[0] = math.exp(-mean / 2.0)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return FockVector(amps, _poisson_tail(mean, dim))


def apply_spm(psi: FockVector, phi: float) -> FockVector:
    """Multiply each |n> amplitude by exp(-i phi n^2). Norm preserving."""
    if not math.isfinite(phi):
        raise ValueError("phi must be finite")
    n = np.arange(psi.dim)
    return FockVector(psi.amplitudes * np.exp(-1j * phi * n * n), psi.tail_bound)


def apply_linear_phase(psi: FockVector, theta: float) -> FockVector:
    """Multiply each |n> amplitude by exp(i theta n): maps alpha -> alpha e^{i theta}."""
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    n = np.arange(psi.dim)
    return FockVector(psi.amplitudes * np.exp(1j * theta * n), psi.tail_bound)


def overlap(psi1: FockVector, psi2: FockVector) -> complex:
    """<psi1|psi2>; the shorter amplitude vector is zero-padded."""
    m = min(psi1.dim, psi2.dim)
    return complex(np.vdot(psi1.amplitudes[:m], psi2.amplitudes[:m]))


def _apply_position(v: np.ndarray) -> np.ndarray:
    # (a + a^dag)/sqrt(2) acting on an amplitude vector; couples n to n +/- 1
    n = np.arange(v.size)
    out = np.zeros_like(v)
    c = np.sqrt(n[1:] / 2.0)
    out[:-1] += c * v[1:]
    out[1:] += c * v[:-1]
    return out


def quadrature_moment(psi: FockVector, lam: float, k: int) -> float:
    """<psi| (x_lam)^k |psi> from exact ladder-operator matrix elements.

    The rotated quadrature is realised by rotating the state amplitudes by
    exp(-i n lam); the state is embedded in dimension dim + k so repeated
    application of the position operator never reaches the truncation edge.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError("moment order k must be a positive integer")
    if not math.isfinite(lam):
        raise ValueError("lam must be finite")
    n = np.arange(psi.dim)
    v = np.zeros(psi.dim + int(k), dtype=complex)
    v[: psi.dim] = psi.amplitudes * np.exp(-1j * lam * n)
    u = v
    for _ in range(k // 2):
        u = _apply_position(u)
    w = u if k % 2 == 0 else _apply_position(u)
    val = complex(np.vdot(u, w))
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise ArithmeticError("quadrature moment acquired a non-real residue")
    return float(val.real)


def hermite_functions(n_levels: int, x: np.ndarray) -> np.ndarray:
    """Normalised oscillator eigenfunctions psi_0 .. psi_{n_levels-1} at x.

    Uses the normalised three-term recurrence, which avoids factorial
    overflow and stays accurate far past n ~ 1e4.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((n_levels, x.size))
    out[0] = math.pi ** (-0.25) * np.exp(-0.5 * x * x)
    if n_levels > 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_levels - 1):
        out[n + 1] = x * math.sqrt(2.0 / (n + 1)) * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def position_wavefunction(psi: FockVector, x, lam: float = 0.0) -> np.ndarray:
    """<x_lam|psi> = sum_n A_n e^{-i n lam} psi_n(x) on an array of points."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    amps = psi.amplitudes
    if lam != 0.0:
        amps = amps * np.exp(-1j * lam * np.arange(psi.dim))
    return amps @ hermite_functions(psi.dim, x)


def marginal_distribution(psi: FockVector, lam: float, grid: QuadratureGrid) -> Distribution:
    """Probability density of an x_lam measurement, sampled on the grid.

    Warns when the grid fails to capture essentially all of the state's
    probability, in which case integrals over the result are unreliable.
    """
    xs = grid.points()
    wf = position_wavefunction(psi, xs, lam)
    dist = Distribution(grid, np.abs(wf) ** 2)
    captured = dist.integral()
    if captured < 1.0 - 10.0 * psi.tail_bound - 1e-9:
        warnings.warn(
            f"quadrature grid captures only {captured:.6f} of the state's probability",
            stacklevel=2,
        )
    return dist


def wigner_numeric(psi: FockVector, q: float, p: float) -> float:
    """Pointwise Wigner value by direct quadrature of the defining x-integral.

    The window covers the classical turning point of the highest retained
    level plus padding; the step is refined until doubling the resolution
    moves the result by less than 1e-9.
    """
    if not (math.isfinite(q) and math.isfinite(p)):
        raise ValueError("phase-space point must be finite")
    support = math.sqrt(2.0 * psi.dim) + 6.0
    half_width = max(support - abs(q), 1.0)
    n_pts = 513
    val = prev = None
    while True:
        xs = np.linspace(-half_width, half_width, n_pts)
        left = position_wavefunction(psi, q - xs)
        right = position_wavefunction(psi, q + xs)
        integrand = np.exp(-2j * p * xs) * left * np.conj(right)
        val = complex(np.trapezoid(integrand, xs))
        if prev is not None and abs(val - prev) < 1e-9:
            break
        if n_pts >= 2**14:
            break
        prev = val
        n_pts = 2 * n_pts - 1
    w = val / math.pi
    if abs(w.imag) > 1e-8:
        raise ArithmeticError("Wigner value acquired a non-real residue")
    return float(w.real)
