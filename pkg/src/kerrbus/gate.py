"""The bus-mediated two-qubit parity gate.

Covers both wirings of the conditional phase media: the original
opposite-shift scheme (second medium sign-flipped, so self-modulation
cancels) and the identical-shift scheme (self-modulation accumulates
twice). Provides branch evolution, even/odd quadrature distributions,
the resolution statistic of the readout, the outcome-dependent
corrective phase, and the idealised squeezing rescue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .analytic import BusParams, central_stats, lambda_star, mean_x
from .fock import (
    ORACLE_R_MAX,
    Distribution,
    FockVector,
    QuadratureGrid,
    apply_linear_phase,
    apply_spm,
    coherent_fock,
    marginal_distribution,
    position_wavefunction,
)

BRANCH_LABELS = ("00", "01", "10", "11")
EVEN_LABELS = ("00", "11")
ODD_LABELS = ("01", "10")


class CorrectivePhaseUndefined(ValueError):
    """A branch wavefunction amplitude is too small to carry a phase."""


@dataclass(frozen=True)
class GateParams:
    """Gate configuration: real bus amplitude r, per-pass phases theta and phi."""

    r: float
    theta: float
    phi: float = 0.0
    scheme: str = "identical"
    locked_ratio: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise ValueError("r must be a finite non-negative real")
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("theta and phi must be finite")
        if self.scheme not in ("opposite", "identical"):
            raise ValueError("scheme must be 'opposite' or 'identical'")
        if self.locked_ratio and self.theta != 2.0 * self.phi:
            raise ValueError("locked_ratio requires theta = 2*phi exactly")
        if self.theta * self.phi < 0.0:
            raise ValueError("theta and phi must carry the same sign")


@dataclass(frozen=True)
class BranchState:
    """One qubit branch with its accumulated bus phases and materialised bus."""

    label: str
    coeff: complex
    bus_xi: float
    bus_phi: float
    fock: FockVector | None


@dataclass(frozen=True)
class GateState:
    """Post-interaction joint state: qubit branches with attached bus states."""

    r: float
    branches: tuple[BranchState, ...]


@dataclass(frozen=True)
class ResolutionReport:
    """Even/odd readout statistics and the two resolvability statistics."""

    lambda_used: float
    mean_e: float
    mean_o: float
    sd_0: float
    sd_theta: float
    sd_2theta: float
    S_caption: float
    S_bound: float
    resolvable: bool


@dataclass(frozen=True)
class SqueezeParams:
    """Idealised squeezing: strength zeta, quadrature-frame angle offset."""

    zeta: float
    angle_offset: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.zeta) and math.isfinite(self.angle_offset)):
            raise ValueError("squeezing parameters must be finite")


def gate_evolve(coeffs, gp: GateParams, tail_tol: float = 1e-12) -> GateState:
    """Evolve the four-branch input through both conditional phase media.

    Opposite scheme: the media carry (theta, phi) and (-theta, -phi), so
    every branch ends with zero net self-modulation and bus rotations
    (0, -theta, +theta, 0). Identical scheme: rotations (0, theta, theta,
    2*theta) and net self-modulation 2*phi on every branch.

    Branch buses are materialised as Fock vectors only for r within the
    oracle range; beyond it the analytic route is the only option and
    ``fock`` is left as None.
    """
    c = [complex(v) for v in coeffs]
    if len(c) != 4:
        raise ValueError("expected four branch coefficients")
    if abs(sum(abs(v) ** 2 for v in c) - 1.0) > 1e-10:
        raise ValueError("branch coefficients must be normalised")
    if gp.scheme == "identical":
        xis = (0.0, gp.theta, gp.theta, 2.0 * gp.theta)
        net_phi = 2.0 * gp.phi
    else:
        xis = (0.0, -gp.theta, gp.theta, 0.0)
        net_phi = 0.0
    base = coherent_fock(gp.r, tail_tol) if gp.r <= ORACLE_R_MAX else None
    branches = []
    for label, coeff, xi in zip(BRANCH_LABELS, c, xis):
        if coeff == 0:
            continue
        fock = None
        if base is not None:
            fock = apply_spm(apply_linear_phase(base, xi), net_phi)
        branches.append(BranchState(label, coeff, xi, net_phi, fock))
    return GateState(r=gp.r, branches=tuple(branches))


def _sector_distribution(gs: GateState, labels, lam: float, grid: QuadratureGrid):
    members = [b for b in gs.branches if b.label in labels]
    weight = sum(abs(b.coeff) ** 2 for b in members)
    if weight <= 0.0:
        return None
    if any(b.fock is None for b in members):
        raise ValueError("branch buses were not materialised (r above oracle range)")
    density = None
    for b in members:
        d = marginal_distribution(b.fock, lam, grid).density * (abs(b.coeff) ** 2 / weight)
        density = d if density is None else density + d
    return Distribution(grid, density)


def parity_distributions(gs: GateState, lam: float, grid: QuadratureGrid):
    """Even- and odd-sector quadrature densities, each renormalised.

    The sectors are classical mixtures of their branch bus marginals
    because the branch buses generally differ. A sector with zero weight
    comes back as None.
    """
    even = _sector_distribution(gs, EVEN_LABELS, lam, grid)
    odd = _sector_distribution(gs, ODD_LABELS, lam, grid)
    return even, odd


def resolution_stats(gp: GateParams, lambda_offset: float = 0.0) -> ResolutionReport:
    """Readout statistics at the matched quadrature angle.

    For the identical scheme the angle comes from ``lambda_star`` with the
    gate's per-pass phi, and the branch statistics are evaluated with the
    accumulated modulation 2*phi. For the opposite scheme the
    self-modulation cancels and the plain position quadrature is read out.
    ``lambda_offset`` perturbs the angle, modelling imperfect tuning.
    """
    r, theta = gp.r, gp.theta
    if gp.scheme == "identical":
        lam = lambda_star(r, theta, gp.phi) + lambda_offset
        phi_eff = 2.0 * gp.phi
        xi_even_a, xi_odd, xi_even_b = 0.0, theta, 2.0 * theta
    else:
        lam = lambda_offset
        phi_eff = 0.0
        xi_even_a, xi_odd, xi_even_b = 0.0, theta, 0.0
    st0 = central_stats(BusParams(r, xi_even_a, phi_eff), lam)
    stt = central_stats(BusParams(r, xi_odd, phi_eff), lam)
    st2 = central_stats(BusParams(r, xi_even_b, phi_eff), lam)
    sd0 = math.sqrt(st0.variance)
    sdt = math.sqrt(stt.variance)
    sd2 = math.sqrt(st2.variance)
    separation = abs(st0.mean - stt.mean)
    s_caption = separation - (sdt + max(sd0, sd2))
    s_bound = separation**2 - 4.0 * min(sd0, sdt, sd2) ** 2
    return ResolutionReport(
        lambda_used=lam,
        mean_e=st0.mean,
        mean_o=stt.mean,
        sd_0=sd0,
        sd_theta=sdt,
        sd_2theta=sd2,
        S_caption=s_caption,
        S_bound=s_bound,
        resolvable=s_caption > 0.0,
    )


def corrective_phase(gs: GateState, sector: str, x: float, lam: float) -> float:
    """Outcome-dependent relative phase 2*theta(x) between a sector's branches.

    Computed as arg<x_lam|bus_A> - arg<x_lam|bus_B> with the branch order
    fixed by label (00 before 11, 01 before 10). Undefined where either
    wavefunction amplitude vanishes; that is signalled explicitly.
    """
    if sector == "even":
        labels = EVEN_LABELS
    elif sector == "odd":
        labels = ODD_LABELS
    else:
        raise ValueError("sector must be 'even' or 'odd'")
    members = sorted(
        (b for b in gs.branches if b.label in labels and b.coeff != 0),
        key=lambda b: b.label,
    )
    if len(members) != 2:
        raise ValueError("sector must contain exactly two populated branches")
    if any(b.fock is None for b in members):
        raise ValueError("branch buses were not materialised (r above oracle range)")
    amp_a = complex(position_wavefunction(members[0].fock, x, lam)[0])
    amp_b = complex(position_wavefunction(members[1].fock, x, lam)[0])
    if min(abs(amp_a), abs(amp_b)) < 1e-12:
        raise CorrectivePhaseUndefined(
            f"wavefunction amplitude below 1e-12 at x={x}; phase is undefined there"
        )
    return float(np.angle(amp_a) - np.angle(amp_b))


def squeezed_resolution(report: ResolutionReport, sq: SqueezeParams) -> ResolutionReport:
    """Resolution statistic under the idealised squeezing rescue.

    Squeezing along the readout quadrature scales the effective mean
    separation by e^zeta relative to the spreads; only S_caption and the
    resolvable flag are recomputed, all other fields are copied.
    """
    separation = abs(report.mean_e - report.mean_o)
    spread = report.sd_theta + max(report.sd_0, report.sd_2theta)
    s_caption = separation * math.exp(sq.zeta) - spread
    return replace(report, S_caption=s_caption, resolvable=s_caption > 0.0)


def minimal_rescue_zeta(report: ResolutionReport) -> float:
    """Smallest squeezing strength that makes the report resolvable.

    Returns the smallest float for which ``squeezed_resolution`` flips the
    flag, i.e. log(spread/separation) nudged past the boundary.
    """
    separation = abs(report.mean_e - report.mean_o)
    if separation <= 0.0:
        raise ValueError("coincident means cannot be rescued by squeezing")
    spread = report.sd_theta + max(report.sd_0, report.sd_2theta)
    zeta = math.log(spread / separation)
    while not squeezed_resolution(report, SqueezeParams(zeta)).resolvable:
        zeta = math.nextafter(zeta, math.inf)
    return zeta


def rotated_squeezed_variance(sq: SqueezeParams) -> float:
    """Variance of a squeezed vacuum quadrature read out in a rotated frame."""
    c = math.cos(sq.angle_offset)
    s = math.sin(sq.angle_offset)
    return c * c * math.exp(-2.0 * sq.zeta) + s * s * math.exp(2.0 * sq.zeta)


def breakeven_angle(zeta: float) -> float:
    """Frame-angle offset beyond which squeezing stops helping: atan(e^-zeta)."""
    if not math.isfinite(zeta):
        raise ValueError("zeta must be finite")
    return math.atan(math.exp(-zeta))


def even_mean_pair(gp: GateParams, lambda_offset: float = 0.0) -> tuple[float, float]:
    """Means of the two even branches; coincide at the matched angle."""
    lam = lambda_star(gp.r, gp.theta, gp.phi) + lambda_offset
    phi_eff = 2.0 * gp.phi
    return (
        mean_x(BusParams(gp.r, 0.0, phi_eff), lam),
        mean_x(BusParams(gp.r, 2.0 * gp.theta, phi_eff), lam),
    )
