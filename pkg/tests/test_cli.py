import math

import numpy as np
import pytest

from kerrbus.cli import SweepConfig, main, run_gate, run_profile, run_sweep
from kerrbus.gate import GateParams


def read_csv(path):
    meta, header, rows = {}, None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                if ":" in line:
                    key, val = line[1:].split(":", 1)
                    meta[key.strip()] = val.strip()
                continue
            if header is None:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    return meta, header, rows


def test_sweep_s_csv_structure(tmp_path):
    out = tmp_path / "s.csv"
    cfg = SweepConfig(r_steps=6, theta_steps=5, output_path=str(out))
    run_sweep("s", cfg)
    meta, header, rows = read_csv(out)
    assert header == ["r", "theta", "lambda", "mean_e", "mean_o", "sd_0",
                      "sd_theta", "sd_2theta", "S_caption", "S_bound"]
    assert len(rows) == 6 * 5
    assert meta["command"] == "sweep"
    assert meta["lock_ratio"] == "true"
    # r-major ordering, theta ascending inside each r block
    rs = [float(row[0]) for row in rows]
    ths = [float(row[1]) for row in rows]
    assert rs == sorted(rs)
    assert ths[:5] == sorted(ths[:5])
    # the modulated gate never resolves
    assert max(float(row[8]) for row in rows) < 0.0


def test_sweep_determinism(tmp_path):
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    run_sweep("s", SweepConfig(r_steps=8, theta_steps=7, output_path=str(out_a)))
    run_sweep("s", SweepConfig(r_steps=8, theta_steps=7, output_path=str(out_b)))
    bytes_a = out_a.read_bytes()
    bytes_b = out_b.read_bytes()
    assert bytes_a == bytes_b.replace(b"b.csv", b"a.csv")


def test_sweep_kurtosis_and_skewness(tmp_path):
    out = tmp_path / "k.csv"
    run_sweep("kurtosis", SweepConfig(r_min=25.0, r_max=50.0, r_steps=5,
                                      theta_min=0.09, theta_max=0.1, theta_steps=2,
                                      output_path=str(out)))
    _, header, rows = read_csv(out)
    assert header == ["r", "theta", "gamma2"]
    # deep-modulation plateau
    assert all(-1.8 < float(row[2]) < -1.2 for row in rows)
    out2 = tmp_path / "g.csv"
    run_sweep("skewness", SweepConfig(r_max=50.0, r_steps=5, theta_steps=3,
                                      output_path=str(out2)))
    _, header2, rows2 = read_csv(out2)
    assert header2 == ["r", "theta", "gamma1"]
    assert len(rows2) == 15


def test_sweep_skewness_curve_structure(tmp_path):
    # deep in the damped zone the skewness vanishes; on the dip it is negative
    out = tmp_path / "g.csv"
    run_sweep("skewness", SweepConfig(r_max=50.0, r_steps=50, theta_steps=50,
                                      output_path=str(out)))
    _, _, rows = read_csv(out)
    table = {(float(r[0]), round(float(r[1]), 6)): float(r[2]) for r in rows}
    assert abs(table[(40.0, 0.1)]) < 0.05  # far beyond the curve, fully damped
    assert table[(7.0, 0.1)] < 0.0  # nearest grid point to r^2 = 1/(2 theta^2)


def test_sweep_validation():
    with pytest.raises(ValueError):
        SweepConfig(r_min=5.0, r_max=1.0)
    with pytest.raises(ValueError):
        SweepConfig(r_steps=1)
    with pytest.raises(ValueError):
        run_sweep("banana", SweepConfig())


def test_profile_marginal_unmodulated(tmp_path):
    out = tmp_path / "m.csv"
    run_profile("marginal", r=2.0, output_path=str(out))
    meta, header, rows = read_csv(out)
    assert meta["route"] == "fock-oracle"
    assert header == ["x", "density"]
    xs = np.array([float(r[0]) for r in rows])
    dens = np.array([float(r[1]) for r in rows])
    peak = xs[int(np.argmax(dens))]
    assert abs(peak - 2.0 * math.sqrt(2.0)) < 0.1
    want = np.exp(-((xs - 2.0 * math.sqrt(2.0)) ** 2)) / math.sqrt(math.pi)
    assert np.max(np.abs(dens - want)) < 1e-9


def test_profile_marginal_modulated_integral(tmp_path):
    out = tmp_path / "m.csv"
    run_profile("marginal", r=2.0, phi_eff=0.3, points=1201, output_path=str(out))
    _, _, rows = read_csv(out)
    xs = np.array([float(r[0]) for r in rows])
    dens = np.array([float(r[1]) for r in rows])
    assert abs(np.trapezoid(dens, xs) - 1.0) < 1e-4


def test_profile_marginal_series_route(tmp_path):
    out_a = tmp_path / "oracle.csv"
    out_b = tmp_path / "series.csv"
    run_profile("marginal", r=1.2, phi_eff=0.01, points=101, output_path=str(out_a))
    run_profile("marginal", r=1.2, phi_eff=0.01, points=101, analytic_only=True,
                output_path=str(out_b))
    _, _, rows_a = read_csv(out_a)
    meta_b, _, rows_b = read_csv(out_b)
    assert meta_b["route"] == "series"
    diffs = [abs(float(a[1]) - float(b[1])) for a, b in zip(rows_a, rows_b)]
    assert max(diffs) < 1e-6


def test_profile_wigner_reports_negativity(tmp_path):
    out = tmp_path / "w.csv"
    run_profile("wigner", r=1.5, phi_eff=0.1, q_min=-1.0, q_max=5.0, q_points=25,
                p_min=-3.0, p_max=3.0, p_points=25, output_path=str(out))
    meta, header, rows = read_csv(out)
    assert header == ["q", "p", "w"]
    assert len(rows) == 25 * 25
    min_w = min(float(r[2]) for r in rows)
    assert abs(min_w - float(meta["min_w"])) < 1e-15
    assert min_w < 0.0  # the modulated state is non-Gaussian


def test_profile_oracle_cap(tmp_path):
    with pytest.raises(ValueError):
        run_profile("marginal", r=8.0, output_path=str(tmp_path / "x.csv"))


def test_run_gate_pairs_and_squeezing(tmp_path):
    gp = GateParams(5.0, 0.1, 0.05)
    pairs = dict(run_gate(gp, zeta=6.0, output_path=str(tmp_path / "g.csv")))
    assert pairs["resolvable"] is False
    assert pairs["spm_cancelled"] is False
    assert pairs["S_caption"] < 0.0
    assert pairs["resolvable_squeezed"] is True
    assert 0.0 < pairs["zeta_min_rescue"] < 6.0
    assert abs(pairs["even_weight"] - 0.5) < 1e-12


def test_run_gate_opposite_scheme_matches_unmodulated():
    gp = GateParams(4.0, 0.1, 0.05, scheme="opposite")
    pairs = dict(run_gate(gp))
    assert pairs["spm_cancelled"] is True
    plain = dict(run_gate(GateParams(4.0, 0.1, 0.0, scheme="opposite", locked_ratio=False)))
    for key in ("mean_e", "mean_o", "sd_0", "sd_theta", "sd_2theta", "S_caption"):
        assert pairs[key] == plain[key]


def test_main_sweep_and_plot(tmp_path):
    out = tmp_path / "s.csv"
    code = main(["sweep", "--kind", "s", "--r-steps", "4", "--theta-steps", "3",
                 "--output", str(out), "--plot"])
    assert code == 0
    assert out.exists()
    assert (tmp_path / "s.png").exists()


def test_main_profile_plot(tmp_path):
    out = tmp_path / "m.csv"
    code = main(["profile", "--what", "marginal", "--r", "1.5", "--phi-eff", "0.2",
                 "--points", "101", "--output", str(out), "--plot"])
    assert code == 0
    assert (tmp_path / "m.png").exists()


def test_main_gate_stdout(capsys):
    code = main(["gate", "--r", "5", "--theta", "0.1"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert any(line.startswith("resolvable,false") for line in lines)


def test_main_error_paths(tmp_path, capsys):
    # oracle cap without the series fallback
    code = main(["profile", "--what", "marginal", "--r", "9",
                 "--output", str(tmp_path / "x.csv")])
    assert code == 1
    assert "error" in capsys.readouterr().err
    # unwritable output location
    code = main(["sweep", "--kind", "s", "--output", str(tmp_path / "nodir" / "x.csv")])
    assert code == 1
    # inverted sweep bounds
    code = main(["sweep", "--kind", "s", "--r-min", "5", "--r-max", "1",
                 "--output", str(tmp_path / "y.csv")])
    assert code == 1


def test_main_kind_defaults_r_max(tmp_path):
    out = tmp_path / "k.csv"
    code = main(["sweep", "--kind", "kurtosis", "--r-steps", "2", "--theta-steps", "2",
                 "--output", str(out)])
    assert code == 0
    _, _, rows = read_csv(out)
    assert float(rows[-1][0]) == 50.0
