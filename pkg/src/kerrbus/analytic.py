"""Closed-form quadrature statistics of a phase-modulated coherent state.

Conventions
-----------
A state described by ``BusParams(r, xi, phi_eff)`` is the coherent state
r e^{i xi} after a *total* accumulated self-modulation phase phi_eff,
i.e. exp(-i phi_eff n^2) applied once. Callers that pick up the effect
over several passes (the two-medium gate accumulates twice its per-pass
strength) supply the summed value themselves; nothing here doubles
implicitly. All moment formulas are exact and are cross-checked against
the truncated Fock oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BusParams:
    """Coherent bus descriptor: amplitude r e^{i xi}, total SPM phase phi_eff."""

    r: float
    xi: float = 0.0
    phi_eff: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise ValueError("r must be a finite non-negative real")
        if not (math.isfinite(self.xi) and math.isfinite(self.phi_eff)):
            raise ValueError("xi and phi_eff must be finite")


@dataclass(frozen=True)
class MomentSet:
    """Mean, raw moments 2-4 and the derived central statistics."""

    mean: float
    m2: float
    m3: float
    m4: float
    variance: float
    mu3: float
    mu4: float
    gamma1: float
    gamma2: float


def _envelope(r: float, j: int, phi: float) -> float:
    # exp(-r^2 (1 - cos(2 j phi))): amplitude damping of the j-th harmonic
    return math.exp(-r * r * (1.0 - math.cos(2 * j * phi)))


def _drift(r: float, j: int, phi: float) -> float:
    # r^2 sin(2 j phi): intensity-dependent phase drift of the j-th harmonic
    return r * r * math.sin(2 * j * phi)


def mean_x(bp: BusParams, lam: float) -> float:
    """Exact <x_lam> of the modulated coherent state."""
    r, xi, phi = bp.r, bp.xi, bp.phi_eff
    return SQRT2 * r * _envelope(r, 1, phi) * math.cos(lam - xi + phi + _drift(r, 1, phi))


def raw_moment(bp: BusParams, lam: float, k: int) -> float:
    """Exact <(x_lam)^k> for k = 2, 3, 4.

    Each formula is the normally-ordered expansion of the k-th power of
    the modulated quadrature; the harmonics carry damping envelopes
    exp(-r^2(1-cos 2j phi)) and drifts r^2 sin(2j phi) for j up to k.
    """
    r, xi, phi = bp.r, bp.xi, bp.phi_eff
    u = lam - xi
    if k == 2:
        return (
            0.5
            + r * r
            + r * r * _envelope(r, 2, phi) * math.cos(2 * u + 4 * phi + _drift(r, 2, phi))
        )
    if k == 3:
        e1, s1 = _envelope(r, 1, phi), _drift(r, 1, phi)
        e3, s3 = _envelope(r, 3, phi), _drift(r, 3, phi)
        return (
            r**3 * e3 * math.cos(3 * u + 9 * phi + s3)
            + 3 * r**3 * e1 * math.cos(u + 3 * phi + s1)
            + 3 * r * e1 * math.cos(u + phi + s1)
        ) / SQRT2
    if k == 4:
        e2, s2 = _envelope(r, 2, phi), _drift(r, 2, phi)
        e4, s4 = _envelope(r, 4, phi), _drift(r, 4, phi)
        return (
            0.5 * r**4 * e4 * math.cos(4 * u + 16 * phi + s4)
            + 2 * r**4 * e2 * math.cos(2 * u + 8 * phi + s2)
            + 3 * r**2 * e2 * math.cos(2 * u + 4 * phi + s2)
            + 1.5 * r**4
            + 3 * r**2
            + 0.75
        )
    raise ValueError("raw_moment supports k in {2, 3, 4}")


def central_stats(bp: BusParams, lam: float) -> MomentSet:
    """Assemble mean, variance, skewness and excess kurtosis.

    Central moments follow from the raw ones via the standard identities
    mu3 = m3 - 3 m2 mean + 2 mean^3 and
    mu4 = m4 - 4 m3 mean + 6 m2 mean^2 - 3 mean^4.
    """
    mean = mean_x(bp, lam)
    m2 = raw_moment(bp, lam, 2)
    m3 = raw_moment(bp, lam, 3)
    m4 = raw_moment(bp, lam, 4)
    variance = m2 - mean * mean
    mu3 = m3 - 3.0 * m2 * mean + 2.0 * mean**3
    mu4 = m4 - 4.0 * m3 * mean + 6.0 * m2 * mean**2 - 3.0 * mean**4
    gamma1 = mu3 / variance**1.5
    gamma2 = mu4 / variance**2 - 3.0
    return MomentSet(mean, m2, m3, m4, variance, mu3, mu4, gamma1, gamma2)


def lambda_star(r: float, theta: float, phi_pass: float) -> float:
    """Quadrature angle at which the two even-parity branch means coincide.

    ``phi_pass`` is the per-pass self-modulation strength of the two-pass
    gate; the matching statistics must then be evaluated with the
    accumulated value phi_eff = 2 * phi_pass. With that pairing,
    mean_x(r, 0, 2*phi_pass, lam) == mean_x(r, 2*theta, 2*phi_pass, lam)
    holds identically for the returned lam.
    """
    if not (math.isfinite(r) and r >= 0.0):
        raise ValueError("r must be a finite non-negative real")
    return theta - r * r * math.sin(4.0 * phi_pass) - 2.0 * phi_pass


def variance_triplet_approx(r: float, theta: float) -> tuple[float, float, float]:
    """Small-angle approximate variances of the three gate branch states.

    Assumes the locked ratio theta = 2 phi and the matched quadrature
    angle; returns the branch variances at bus phases (0, theta, 2 theta).
    Kept only for comparison with the exact route, which is preferred.
    """
    r2 = r * r
    e8 = math.exp(-8.0 * r2 * theta**2)
    e4 = math.exp(-4.0 * r2 * theta**2)
    cos2 = math.cos(theta) ** 2
    v0 = 0.5 + r2 + r2 * e8 * math.cos(4.0 * theta - 8.0 * r2 * theta**3) - 2.0 * r2 * e4 * cos2
    vt = 0.5 + r2 + r2 * e8 * math.cos(2.0 * theta - 8.0 * r2 * theta**3) - 2.0 * r2 * e4
    v2 = 0.5 + r2 + r2 * e8 * math.cos(8.0 * r2 * theta**3) - 2.0 * r2 * e4 * cos2
    return (v0, vt, v2)
