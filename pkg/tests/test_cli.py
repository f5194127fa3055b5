import json
import subprocess
import sys

import numpy as np
import pytest

from ptosc import cli


def run_cli(args, tmp_path=None, out_name=None):
    """Invoke main() with --out to a temp file; return (code, text)."""
    if out_name is not None:
        out = str(tmp_path / out_name)
        code = cli.main(args + ["--out", out])
        with open(out, encoding="utf-8") as fh:
            return code, fh.read()
    return cli.main(args), None


@pytest.mark.parametrize("which", ["1", "2"])
def test_table_passes(tmp_path, which):
    code, text = run_cli(["table", which], tmp_path, f"t{which}.txt")
    assert code == 0
    assert text.count("PASS") == 45  # 44 cells + summary line
    assert "FAIL" not in text
    assert "-50.500000" in text


def test_spectrum_csv_first_row(tmp_path):
    code, text = run_cli(
        ["spectrum", "--lambda", "2", "--beta", "7", "--mode", "omega1",
         "--method", "qr", "--no-timestamp"],
        tmp_path, "spec.csv",
    )
    assert code == 0
    lines = text.splitlines()
    meta = [ln for ln in lines if ln.startswith("#")]
    assert "# omega=2.0" in meta
    assert "# method_used=qr" in meta
    header_idx = next(i for i, ln in enumerate(lines) if ln == "n,re,im,residual,trusted")
    first = lines[header_idx + 1].split(",")
    assert first[0] == "0"
    assert float(first[1]) == pytest.approx(-0.5, abs=1e-9)
    assert float(first[2]) == pytest.approx(0.0, abs=1e-9)
    assert float(first[3]) < 1e-8
    assert first[4] == "true"


def test_spectrum_identity_point_positive_ladder(tmp_path):
    code, text = run_cli(
        ["spectrum", "--lambda", "0", "--beta", "0", "--mode", "custom",
         "--omega", "1", "--n-basis", "30", "--no-timestamp"],
        tmp_path, "plain.csv",
    )
    assert code == 0
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")][1:]
    values = [float(r.split(",")[1]) for r in rows[:5]]
    assert values == pytest.approx([0.5, 1.5, 2.5, 3.5, 4.5], abs=1e-9)


def test_spectrum_deterministic_output(tmp_path):
    args = ["spectrum", "--lambda", "1", "--beta", "3", "--mode", "omega1",
            "--n-basis", "60", "--no-timestamp"]
    _, text1 = run_cli(args, tmp_path, "a.csv")
    _, text2 = run_cli(args, tmp_path, "b.csv")
    assert text1 == text2


def test_spectrum_json_roundtrip_bit_exact(tmp_path):
    out = str(tmp_path / "spec.json")
    code = cli.main(
        ["spectrum", "--lambda", "1", "--beta", "3", "--mode", "custom", "--omega", "2",
         "--n-basis", "40", "--format", "json", "--no-timestamp", "--out", out]
    )
    assert code == 0
    config, report = cli.read_spectrum_json(out)

    from ptosc import model
    from ptosc.eigensolver import compute_spectrum

    h = model.build_hamiltonian(model.validate(1.0, 3.0), model.custom_frequency(2.0), 40)
    direct = compute_spectrum(h, method="auto")
    assert np.array_equal(report.eigenvalues, direct.eigenvalues)
    assert np.array_equal(report.residuals, direct.residuals)
    assert report.trusted_count == direct.trusted_count
    assert report.iterations == direct.iterations
    assert report.method is direct.method
    assert np.array_equal(report.stable, direct.stable)
    finite = np.isfinite(direct.drifts)
    assert np.array_equal(report.drifts[finite], direct.drifts[finite])
    assert config["lambda"] == "1.0"


@pytest.mark.filterwarnings("ignore::ptosc.errors.DivergentSeriesWarning")
def test_perturb_all_zero_corrections(tmp_path):
    code, text = run_cli(
        ["perturb", "--lambda", "2", "--beta", "7", "--mode", "omega1",
         "--state", "5", "--no-timestamp"],
        tmp_path, "pert.csv",
    )
    assert code == 0
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")][1:]
    assert len(rows) == 6
    for row in rows:
        cols = row.split(",")
        assert float(cols[2]) == 0.0 and float(cols[3]) == 0.0 and float(cols[4]) == 0.0
        assert float(cols[6]) == 1.0  # norm overlap
    energies = [float(r.split(",")[7]) for r in rows]
    assert energies == pytest.approx([-(n + 0.5) for n in range(6)], abs=1e-12)


def test_perturb_mode_guard_exit_code():
    # omega1 needs beta > 1
    assert cli.main(["perturb", "--lambda", "0", "--beta", "0", "--mode", "omega1"]) == 3


def test_wavefunction_output_and_decay(tmp_path):
    code, text = run_cli(
        ["wavefunction", "--lambda", "3", "--beta", "1", "--mode", "omega2",
         "--state", "2", "--k-max", "1", "--no-timestamp"],
        tmp_path, "wf.csv",
    )
    assert code == 0
    assert "# decay_pass=true" in text
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    assert rows[0] == "x,basis,series"
    # endpoints below the decay threshold
    first = rows[1].split(",")
    last = rows[-1].split(",")
    assert abs(float(first[2])) < 1e-6 and abs(float(last[2])) < 1e-6


def test_wavefunction_kmax0_series_equals_basis(tmp_path):
    code, text = run_cli(
        ["wavefunction", "--lambda", "2", "--beta", "7", "--mode", "omega1",
         "--state", "0", "--k-max", "0", "--no-timestamp"],
        tmp_path, "wf0.csv",
    )
    assert code == 0
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")][1:]
    for row in rows:
        _, basis, series = row.split(",")
        assert basis == series


def test_wavefunction_narrow_grid_exit_3(tmp_path):
    code = cli.main(
        ["wavefunction", "--lambda", "3", "--beta", "1", "--mode", "omega2",
         "--state", "4", "--grid-halfwidth", "1.0",
         "--out", str(tmp_path / "narrow.csv")]
    )
    assert code == 3


def test_sweep_rows_and_invalid_domain(tmp_path):
    code, text = run_cli(
        ["sweep", "--lambda", "1,2", "--beta", "0.5,3,7", "--n-basis", "40",
         "--mode", "omega1", "--no-timestamp"],
        tmp_path, "sweep.csv",
    )
    assert code == 0
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")][1:]
    assert len(rows) == 6
    bad = [r for r in rows if "invalid-domain" in r]
    assert len(bad) == 2  # beta = 0.5 rejected for both lambdas
    good = [r for r in rows if '"ok"' in r]
    assert len(good) == 4
    for row in good:
        assert float(row.split(",")[5]) < 1e-6  # max trusted deviation


def test_sweep_empty_range(tmp_path):
    code, text = run_cli(
        ["sweep", "--lambda", "", "--beta", "3", "--mode", "omega1", "--no-timestamp"],
        tmp_path, "empty.csv",
    )
    assert code == 0
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    assert rows == ["lambda,beta,n_basis,omega,status,max_deviation,trusted_count,iterations,method"]


def test_sweep_parallel_matches_serial(tmp_path):
    args = ["sweep", "--lambda", "1,2", "--beta", "3,7", "--n-basis", "30,40",
            "--mode", "omega1", "--no-timestamp"]
    _, serial = run_cli(args, tmp_path, "s1.csv")
    _, parallel = run_cli(args + ["--jobs", "2"], tmp_path, "s2.csv")
    # ordering is by input order regardless of completion order; only the
    # jobs metadata line may differ
    strip = lambda t: [ln for ln in t.splitlines() if not ln.startswith("# jobs=")]
    assert strip(serial) == strip(parallel)


@pytest.mark.filterwarnings("ignore::ptosc.errors.DivergentSeriesWarning")
def test_verify_battery(tmp_path):
    code, text = run_cli(["verify"], tmp_path, "verify.txt")
    assert code == 0
    assert "FAIL" not in text
    assert "PASS verify" in text


def test_bad_usage_exits_3():
    assert cli.main(["spectrum", "--mode", "bogus"]) == 3


def test_installed_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "ptosc.cli", "spectrum", "--lambda", "1", "--beta", "3",
         "--mode", "omega1", "--n-basis", "20", "--no-timestamp"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert "n,re,im,residual,trusted" in proc.stdout
