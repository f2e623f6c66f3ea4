"""Command-line front end.

Three subcommands write UTF-8 CSV with ``#``-prefixed metadata headers:

* ``sweep``   - maps over the (r, theta) plane: the resolution statistic
  or the skewness/kurtosis of the readout distribution.
* ``profile`` - single-state marginal or Wigner profiles.
* ``gate``    - a one-shot parity-gate resolution report, optionally with
  the squeezing rescue.

``--plot`` renders a matplotlib figure next to the CSV. Output is
deterministic: identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from dataclasses import dataclass, fields

import numpy as np

from . import __version__
from .analytic import BusParams, central_stats, lambda_star, variance_triplet_approx
from .fock import (
    ORACLE_R_MAX,
    QuadratureGrid,
    apply_spm,
    coherent_fock,
    marginal_distribution,
    wigner_numeric,
)
from .gate import (
    GateParams,
    SqueezeParams,
    gate_evolve,
    minimal_rescue_zeta,
    resolution_stats,
    squeezed_resolution,
)
from .wigner import SeriesControl, marginal_series, wigner_series

SWEEP_KINDS = ("s", "skewness", "kurtosis")

S_COLUMNS = ("r", "theta", "lambda", "mean_e", "mean_o", "sd_0", "sd_theta",
             "sd_2theta", "S_caption", "S_bound")


@dataclass
class SweepConfig:
    """Grid and options for a sweep; defaults mirror the standard maps."""

    r_min: float = 0.0
    r_max: float = 10.0
    r_steps: int = 50
    theta_min: float = 0.0
    theta_max: float = 0.1
    theta_steps: int = 50
    lock_ratio: bool = True
    lambda_offset: float = 0.0
    xi: float = 0.0
    output_path: str = "sweep.csv"
    plot_path: str | None = None

    def __post_init__(self) -> None:
        if not (self.r_min < self.r_max and self.theta_min < self.theta_max):
            raise ValueError("sweep bounds must be ordered")
        if self.r_steps < 2 or self.theta_steps < 2:
            raise ValueError("sweep needs at least 2 steps per axis")

    def r_values(self) -> np.ndarray:
        # open at the lower edge, closed at the upper: r=0 is degenerate
        return np.linspace(self.r_min, self.r_max, self.r_steps + 1)[1:]

    def theta_values(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.theta_steps + 1)[1:]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.16e}"
    return str(value)


def _write_csv(path: str, meta: list[tuple[str, object]], header, rows) -> None:
    lines = [f"# kerrbus {__version__}"]
    lines.extend(f"# {key}: {_fmt(val)}" for key, val in meta)
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise RuntimeError(f"cannot write output file {path}: {exc}") from exc


def run_sweep(kind: str, cfg: SweepConfig) -> str:
    """Write one CSV row per (r, theta) grid point, r-major."""
    if kind not in SWEEP_KINDS:
        raise ValueError(f"unknown sweep kind {kind!r}")
    meta = [("command", "sweep"), ("kind", kind)]
    meta.extend((f.name, getattr(cfg, f.name)) for f in fields(cfg))
    rs = cfg.r_values()
    thetas = cfg.theta_values()
    rows = []
    values = np.empty((rs.size, thetas.size))
    for i, r in enumerate(rs):
        for j, theta in enumerate(thetas):
            phi = theta / 2.0 if cfg.lock_ratio else 0.0
            if kind == "s":
                gp = GateParams(float(r), float(theta), phi,
                                scheme="identical", locked_ratio=cfg.lock_ratio)
                rep = resolution_stats(gp, cfg.lambda_offset)
                rows.append((r, theta, rep.lambda_used, rep.mean_e, rep.mean_o,
                             rep.sd_0, rep.sd_theta, rep.sd_2theta,
                             rep.S_caption, rep.S_bound))
                values[i, j] = rep.S_caption
            else:
                phi_eff = 2.0 * phi
                lam = lambda_star(float(r), float(theta), phi) + cfg.lambda_offset
                st = central_stats(BusParams(float(r), cfg.xi, phi_eff), lam)
                val = st.gamma1 if kind == "skewness" else st.gamma2
                rows.append((r, theta, val))
                values[i, j] = val
    header = S_COLUMNS if kind == "s" else ("r", "theta",
                                            "gamma1" if kind == "skewness" else "gamma2")
    _write_csv(cfg.output_path, meta, header, rows)
    if cfg.plot_path:
        from .plotting import render_heatmap

        label = {"s": "S_caption", "skewness": "gamma1", "kurtosis": "gamma2"}[kind]
        render_heatmap(cfg.plot_path, rs, thetas, values, label,
                       title=f"{label} over (r, theta)")
    return cfg.output_path


def run_profile(what: str, *, r: float, xi: float = 0.0, phi_eff: float = 0.0,
                lam: float = 0.0, x_min: float | None = None, x_max: float | None = None,
                points: int = 201, q_min: float | None = None, q_max: float | None = None,
                q_points: int = 61, p_min: float = -4.0, p_max: float = 4.0,
                p_points: int = 61, analytic_only: bool = False,
                tail_tol: float = 1e-12, k_max: int = 12,
                output_path: str = "profile.csv", plot_path: str | None = None) -> str:
    """Write a marginal (x, density) or Wigner (q, p, w) profile as CSV."""
    if what not in ("marginal", "wigner"):
        raise ValueError("profile kind must be 'marginal' or 'wigner'")
    if not analytic_only and r > ORACLE_R_MAX:
        raise ValueError(
            f"r={r} exceeds the oracle range (r <= {ORACLE_R_MAX}); pass --analytic-only "
            "to use the small-phi series route"
        )
    alpha = r * np.exp(1j * xi)
    route = "series" if analytic_only else "fock-oracle"
    span = math.sqrt(2.0) * r + 6.0
    meta = [("command", "profile"), ("what", what), ("route", route), ("r", r),
            ("xi", xi), ("phi_eff", phi_eff), ("lambda", lam), ("tail_tol", tail_tol)]

    if what == "marginal":
        lo = -span if x_min is None else x_min
        hi = span if x_max is None else x_max
        grid = QuadratureGrid(lo, hi, points)
        xs = grid.points()
        if analytic_only:
            if lam != 0.0:
                # rotating the quadrature equals rotating the state
                alpha = alpha * np.exp(-1j * lam)
            ctl = SeriesControl(k_max=k_max)
            density = np.array([
                marginal_series(alpha, phi_eff, float(x), ctl, tail_threshold=1e-6)
                for x in xs
            ])
        else:
            psi = apply_spm(coherent_fock(alpha, tail_tol), phi_eff)
            density = marginal_distribution(psi, lam, grid).density
        meta.extend([("x_min", lo), ("x_max", hi), ("points", points)])
        rows = list(zip(xs, density))
        _write_csv(output_path, meta, ("x", "density"), rows)
        if plot_path:
            from .plotting import render_marginal

            render_marginal(plot_path, xs, density,
                            title=f"marginal, r={r}, phi_eff={phi_eff} ({route})")
        return output_path

    q_lo = -span if q_min is None else q_min
    q_hi = span if q_max is None else q_max
    qs = np.linspace(q_lo, q_hi, q_points)
    ps = np.linspace(p_min, p_max, p_points)
    if analytic_only:
        ctl = SeriesControl(k_max=k_max)
        w = np.array([[wigner_series(alpha, phi_eff, float(q), float(p), ctl,
                                     tail_threshold=1e-6)
                       for p in ps] for q in qs])
    else:
        psi = apply_spm(coherent_fock(alpha, tail_tol), phi_eff)
        w = np.array([[wigner_numeric(psi, float(q), float(p)) for p in ps] for q in qs])
    meta.extend([("q_min", q_lo), ("q_max", q_hi), ("q_points", q_points),
                 ("p_min", p_min), ("p_max", p_max), ("p_points", p_points),
                 ("min_w", float(w.min()))])
    rows = [(q, p, w[i, j]) for i, q in enumerate(qs) for j, p in enumerate(ps)]
    _write_csv(output_path, meta, ("q", "p", "w"), rows)
    if plot_path:
        from .plotting import render_wigner

        render_wigner(plot_path, qs, ps, w,
                      title=f"Wigner, r={r}, phi_eff={phi_eff} ({route})")
    return output_path


def run_gate(gp: GateParams, coeffs=None, zeta: float | None = None,
             lambda_offset: float = 0.0, output_path: str | None = None,
             plot_path: str | None = None) -> list[tuple[str, object]]:
    """Assemble the gate resolution report as (key, value) pairs.

    Writes CSV when an output path is given, otherwise prints to stdout.
    """
    coeffs = [0.5, 0.5, 0.5, 0.5] if coeffs is None else list(coeffs)
    gs = gate_evolve(coeffs, gp)
    even_weight = sum(abs(b.coeff) ** 2 for b in gs.branches if b.label in ("00", "11"))
    rep = resolution_stats(gp, lambda_offset)
    pairs: list[tuple[str, object]] = [
        ("scheme", gp.scheme),
        ("r", gp.r),
        ("theta", gp.theta),
        ("phi", gp.phi),
        ("locked_ratio", gp.locked_ratio),
        ("spm_cancelled", gp.scheme == "opposite"),
        ("lambda_used", rep.lambda_used),
        ("mean_e", rep.mean_e),
        ("mean_o", rep.mean_o),
        ("sd_0", rep.sd_0),
        ("sd_theta", rep.sd_theta),
        ("sd_2theta", rep.sd_2theta),
        ("S_caption", rep.S_caption),
        ("S_bound", rep.S_bound),
        ("resolvable", rep.resolvable),
        ("even_weight", even_weight),
        ("odd_weight", 1.0 - even_weight),
    ]
    v0, vt, v2 = variance_triplet_approx(gp.r, gp.theta)
    pairs.extend([("var_approx_0", v0), ("var_approx_theta", vt), ("var_approx_2theta", v2)])
    if zeta is not None:
        sq_rep = squeezed_resolution(rep, SqueezeParams(zeta))
        pairs.extend([
            ("zeta", zeta),
            ("S_caption_squeezed", sq_rep.S_caption),
            ("resolvable_squeezed", sq_rep.resolvable),
            ("zeta_min_rescue", minimal_rescue_zeta(rep)),
        ])
    meta = [("command", "gate")]
    if output_path:
        _write_csv(output_path, meta, ("key", "value"), pairs)
    else:
        for key, val in pairs:
            print(f"{key},{_fmt(val)}")
    if plot_path:
        from .plotting import render_gate_report

        render_gate_report(plot_path, rep)
    return pairs


def _derived_plot_path(output_path: str) -> str:
    stem = output_path[:-4] if output_path.lower().endswith(".csv") else output_path
    return stem + ".png"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrbus",
        description="Kerr-modulated bus statistics and parity-gate resolvability",
    )
    parser.add_argument("--version", action="version", version=f"kerrbus {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="map a statistic over the (r, theta) plane")
    sw.add_argument("--kind", choices=SWEEP_KINDS, required=True)
    sw.add_argument("--r-min", type=float, default=0.0)
    sw.add_argument("--r-max", type=float, default=None,
                    help="default 10 for kind=s, 50 otherwise")
    sw.add_argument("--r-steps", type=int, default=50)
    sw.add_argument("--theta-min", type=float, default=0.0)
    sw.add_argument("--theta-max", type=float, default=0.1)
    sw.add_argument("--theta-steps", type=int, default=50)
    sw.add_argument("--no-lock-ratio", dest="lock_ratio", action="store_false",
                    help="drop theta = 2*phi; the sweep then runs without self-modulation")
    sw.add_argument("--lambda-offset", type=float, default=0.0)
    sw.add_argument("--xi", type=float, default=0.0,
                    help="bus phase for the skewness/kurtosis maps (kind=s fixes its own)")
    sw.add_argument("--output", required=True)
    sw.add_argument("--plot", action="store_true",
                    help="render a heatmap PNG next to the CSV")

    pr = sub.add_parser("profile", help="marginal or Wigner profile of one bus state")
    pr.add_argument("--what", choices=("marginal", "wigner"), required=True)
    pr.add_argument("--r", type=float, required=True)
    pr.add_argument("--xi", type=float, default=0.0)
    pr.add_argument("--phi-eff", type=float, default=0.0)
    pr.add_argument("--lambda", dest="lam", type=float, default=0.0)
    pr.add_argument("--x-min", type=float, default=None)
    pr.add_argument("--x-max", type=float, default=None)
    pr.add_argument("--points", type=int, default=201)
    pr.add_argument("--q-min", type=float, default=None)
    pr.add_argument("--q-max", type=float, default=None)
    pr.add_argument("--q-points", type=int, default=61)
    pr.add_argument("--p-min", type=float, default=-4.0)
    pr.add_argument("--p-max", type=float, default=4.0)
    pr.add_argument("--p-points", type=int, default=61)
    pr.add_argument("--analytic-only", action="store_true",
                    help="use the small-phi series route instead of the Fock oracle")
    pr.add_argument("--tail-tol", type=float, default=1e-12)
    pr.add_argument("--k-max", type=int, default=12)
    pr.add_argument("--output", required=True)
    pr.add_argument("--plot", action="store_true")

    ga = sub.add_parser("gate", help="parity-gate resolution report")
    ga.add_argument("--r", type=float, required=True)
    ga.add_argument("--theta", type=float, required=True)
    ga.add_argument("--phi", type=float, default=None,
                    help="per-pass self-modulation phase; default theta/2 (locked ratio)")
    ga.add_argument("--scheme", choices=("opposite", "identical"), default="identical")
    ga.add_argument("--coeffs", nargs=4, default=None, metavar="C",
                    help="four branch coefficients as complex literals; default equal")
    ga.add_argument("--zeta", type=float, default=None)
    ga.add_argument("--lambda-offset", type=float, default=0.0)
    ga.add_argument("--output", default=None)
    ga.add_argument("--plot", action="store_true")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            r_max = args.r_max if args.r_max is not None else (10.0 if args.kind == "s" else 50.0)
            cfg = SweepConfig(
                r_min=args.r_min, r_max=r_max, r_steps=args.r_steps,
                theta_min=args.theta_min, theta_max=args.theta_max,
                theta_steps=args.theta_steps, lock_ratio=args.lock_ratio,
                lambda_offset=args.lambda_offset, xi=args.xi, output_path=args.output,
                plot_path=_derived_plot_path(args.output) if args.plot else None,
            )
            run_sweep(args.kind, cfg)
        elif args.command == "profile":
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # narrow-grid warnings go to the CSV user
                run_profile(
                    args.what, r=args.r, xi=args.xi, phi_eff=args.phi_eff, lam=args.lam,
                    x_min=args.x_min, x_max=args.x_max, points=args.points,
                    q_min=args.q_min, q_max=args.q_max, q_points=args.q_points,
                    p_min=args.p_min, p_max=args.p_max, p_points=args.p_points,
                    analytic_only=args.analytic_only, tail_tol=args.tail_tol,
                    k_max=args.k_max, output_path=args.output,
                    plot_path=_derived_plot_path(args.output) if args.plot else None,
                )
        else:
            phi = args.phi if args.phi is not None else args.theta / 2.0
            gp = GateParams(args.r, args.theta, phi, scheme=args.scheme,
                            locked_ratio=(phi == args.theta / 2.0))
            coeffs = [complex(c) for c in args.coeffs] if args.coeffs else [0.5] * 4
            if args.plot and not args.output:
                raise ValueError("--plot for the gate report needs --output")
            run_gate(gp, coeffs, zeta=args.zeta, lambda_offset=args.lambda_offset,
                     output_path=args.output,
                     plot_path=_derived_plot_path(args.output) if args.plot else None)
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"kerrbus: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
