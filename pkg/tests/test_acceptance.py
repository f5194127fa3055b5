"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Tolerances are fixed here, not tuned at runtime; the two frozen thresholds
in criteria 8 and 10 come from pre-build oracle runs (closed-form residual
formula and an independent LAPACK convergence study, respectively).
"""

import math

import numpy as np
import pytest

from ptosc import cli, model, perturbation, wavefunction
from ptosc.eigensolver import compute_spectrum, qr_eigenvalues, triangular_fast_path
from ptosc.fock import OperatorMatrix, TRUNCATION_BAND
from ptosc.model import Mode

TABLE1 = [(1.0, 3.0), (2.0, 7.0), (0.5, 5.5), (0.8, 8.2)]
TABLE2 = [(3.0, 1.0), (2.0, 1.0), (1.5, 0.5), (1.5, 1.0)]
ROWS = [0, 1, 2, 3, 4, 5, 10, 20, 30, 40, 50]

# parameter grid spanning every table column plus the identity point
GRID = [0.0, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 5.5, 7.0, 8.2]


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def _table_worst(table, branch, n_basis=100):
    worst = 0.0
    for lam, beta in table:
        params = model.validate(lam, beta)
        h = model.build_hamiltonian(params, branch(params), n_basis)
        ladder = qr_eigenvalues(h).stable_eigenvalues()
        for n in ROWS:
            worst = max(worst, abs(ladder[n] - (-(n + 0.5))))
    return worst


def test_01_table1_reproduction():
    worst = _table_worst(TABLE1, model.omega1)
    _report("01 table-1", worst <= 1e-6, f"max cell deviation {worst:.3e}")


def test_02_table2_reproduction():
    worst = _table_worst(TABLE2, model.omega2)
    _report("02 table-2", worst <= 1e-6, f"max cell deviation {worst:.3e}")


def test_02b_raw_index_50_is_truncation_artifact():
    # documents why the table reads the stability-filtered ladder: the raw
    # sorted spectrum of the n_basis=100 product matrix carries a spurious
    # duplicate at -(100/2 - 1/2) = -49.5 (the corner diagonal entry loses
    # its ladder coupling), so raw index 50 holds -49.5, not -50.5
    params = model.validate(1.0, 3.0)
    h = model.build_hamiltonian(params, model.omega1(params), 100)
    report = qr_eigenvalues(h)
    assert h.entries[99, 99].real == pytest.approx(-49.5, abs=1e-9)
    assert report.eigenvalues[50].real == pytest.approx(-49.5, abs=1e-6)
    assert report.stable_eigenvalues()[50].real == pytest.approx(-50.5, abs=1e-9)
    print("ACCEPTANCE 02b corner-artifact: PASS (raw index 50 = -49.5 duplicate, filtered)")


def test_03_commutator_invariance():
    worst = 0.0
    for table, branch in ((TABLE1, model.omega1), (TABLE2, model.omega2)):
        for lam, beta in table:
            params = model.validate(lam, beta)
            freq = branch(params)
            from ptosc.fock import FockBasisSpec, build_momentum, build_position, commutator

            spec = FockBasisSpec(60, omega=freq.omega, scale=params.scale)
            x = build_position(spec)
            p = build_momentum(spec)
            r, y = model.build_transformed_ops(params, freq, 60)
            norm = 1.0 / math.sqrt(1.0 + lam * beta)
            lhs = commutator(
                OperatorMatrix(norm * y.entries), OperatorMatrix(norm * r.entries)
            ).entries
            rhs = commutator(x, p).entries
            worst = max(worst, float(np.max(np.abs(lhs[:58, :58] - rhs[:58, :58]))))
    _report("03 commutator-invariance", worst <= 1e-12, f"max entry diff {worst:.3e}")


def test_04_frequency_headers():
    ulp4 = np.finfo(float).eps * 4.0
    got1 = [model.omega1(model.validate(*c)).omega for c in TABLE1]
    got2 = [model.omega2(model.validate(*c)).omega for c in TABLE2]
    ok = got1[:3] == [1.0, 2.0, 3.0] and got2 == [1.0, 2.0, 3.0, 4.0]
    # 0.8 and 8.2 have no exact binary representation; the quotient lands
    # one ulp below 4.0, which is as exact as IEEE doubles allow
    ok = ok and abs(got1[3] - 4.0) <= 2 * ulp4
    _report("04 frequency-headers", ok, f"omega1={got1}, omega2={got2}")


def test_05_vanishing_corrections_falsifiable():
    worst = 0.0
    for lam in GRID:
        for beta in GRID:
            for mode, valid in ((Mode.OMEGA1, beta > 1.0), (Mode.OMEGA2, lam > 1.0)):
                if not valid:
                    continue
                params = model.validate(lam, beta)
                for n in range(0, 11):
                    for order in (1, 2, 3):
                        worst = max(worst, abs(perturbation.correction(params, mode, n, order)))
    # falsifiability: 1% detuning must produce a visible order-2 value
    params = model.validate(2.0, 7.0)
    detuned = perturbation.correction(
        params, Mode.OMEGA1, 0, 2, omega=1.01 * model.omega1(params).omega
    )
    ok = worst <= 1e-12 and abs(detuned) > 1e-4
    _report("05 vanishing-corrections", ok, f"max |eps| {worst:.2e}, detuned eps2 {detuned:.2e}")


@pytest.mark.filterwarnings("ignore::ptosc.errors.DivergentSeriesWarning")
def test_06_overlap_identities():
    worst_norm = 0.0
    worst_energy = 0.0
    cases = [(Mode.OMEGA1, TABLE1), (Mode.OMEGA2, TABLE2)]
    for mode, table in cases:
        for lam, beta in table:
            params = model.validate(lam, beta)
            for n in range(0, 11):
                for k_max in range(0, 7):
                    norm_ov, energy_ov = perturbation.overlap_identities(params, mode, n, k_max)
                    worst_norm = max(worst_norm, abs(norm_ov - 1.0))
                    worst_energy = max(worst_energy, abs(energy_ov - (-(n + 0.5))))
    ok = worst_norm == 0.0 and worst_energy <= 1e-12
    _report(
        "06 overlap-identities", ok,
        f"norm dev {worst_norm:.1e} (exact), energy dev {worst_energy:.3e}",
    )


@pytest.mark.filterwarnings("ignore::ptosc.errors.DivergentSeriesWarning")
def test_07_terminating_series_exact_eigenvector():
    worst = 0.0
    for lam, beta in TABLE2:
        params = model.validate(lam, beta)
        for n in range(0, 11):
            worst = max(worst, perturbation.eigen_residual(params, Mode.OMEGA2, n, n // 2))
    _report("07 terminating-series", worst <= 1e-12, f"max residual {worst:.3e}")


def test_08_series_contraction():
    # frozen oracle (closed-form coefficients and tail-term formula):
    # residuals 0.8118, 0.6536, ..., 0.0699 for k = 1..8 at lam=2, beta=7
    params = model.validate(2.0, 7.0)
    res = [perturbation.eigen_residual(params, Mode.OMEGA1, 0, k) for k in range(0, 9)]
    expect = [0.8485281374, 0.8117777102, 0.6536191335, 0.4862470937,
              0.3453335747, 0.2379130228, 0.1604495765, 0.1065218967, 0.0698749077]
    ok = np.allclose(res, expect, rtol=1e-8) and all(res[k] < res[k - 1] for k in range(1, 9))
    _report("08 series-contraction", ok, f"residuals k=1..8 strictly decreasing, end {res[8]:.4f}")


def test_09_oracle_equivalence_and_trace():
    worst = 0.0
    worst_trace = 0.0
    for table, branch in ((TABLE1, model.omega1), (TABLE2, model.omega2)):
        for lam, beta in table:
            params = model.validate(lam, beta)
            h = model.build_hamiltonian(params, branch(params), 100)
            fast = triangular_fast_path(h, certify=False)
            slow = qr_eigenvalues(h, certify=False)
            assert fast is not None
            half = math.ceil(100 / 2)
            worst = max(worst, float(np.max(np.abs(
                fast.eigenvalues[:half] - slow.eigenvalues[:half]
            ))))
            fro = np.linalg.norm(h.entries)
            worst_trace = max(
                worst_trace,
                abs(np.sum(slow.eigenvalues) - np.trace(h.entries)) / (1e-8 * fro),
            )
    ok = worst <= 1e-6 and worst_trace <= 1.0
    _report("09 oracle-equivalence", ok,
            f"max fast/qr gap {worst:.2e}, trace err {worst_trace:.2f}x tol")


def test_10_custom_omega_convergence():
    # pre-build oracle (independent LAPACK study): first-11 deviation
    # 1.2e-6 at n_basis=100 shrinking to ~6e-8 at 400; frozen bound 1e-6
    params = model.validate(1.0, 3.0)
    freq = model.custom_frequency(2.0)
    exact = -(np.arange(11) + 0.5)
    devs = {}
    for n_basis in (100, 400):
        h = model.build_hamiltonian(params, freq, n_basis)
        report = compute_spectrum(h)
        assert report.trusted_count >= 11, f"only {report.trusted_count} trusted at {n_basis}"
        devs[n_basis] = float(np.max(np.abs(report.eigenvalues[:11] - exact)))
    ok = devs[400] < devs[100] and devs[400] <= 1e-6
    _report("10 custom-omega-convergence", ok,
            f"dev11: n=100 {devs[100]:.3e} -> n=400 {devs[400]:.3e}")


@pytest.mark.filterwarnings("ignore::ptosc.errors.DivergentSeriesWarning")
def test_11_decay_suite():
    worst = 0.0
    count = 0
    for omega in (1.0, 2.0, 3.0, 4.0):
        for n in range(0, 11):
            grid = wavefunction.default_grid(n, omega)
            tail, ok = wavefunction.decay_report(wavefunction.evaluate_basis(n, omega, grid), 1e-6)
            worst = max(worst, tail)
            count += 1
            assert ok
    for mode, table, k_max in ((Mode.OMEGA1, [(2.0, 7.0), (1.0, 3.0)], 6), (Mode.OMEGA2, TABLE2, None)):
        for lam, beta in table:
            params = model.validate(lam, beta)
            for n in range(0, 7):
                k = n // 2 if k_max is None else k_max
                series = perturbation.series_coefficients(params, mode, n, k)
                grid = wavefunction.default_grid(series.top_index(), series.omega)
                tail, ok = wavefunction.decay_report(wavefunction.evaluate_series(series, grid), 1e-6)
                worst = max(worst, tail)
                count += 1
                assert ok
    _report("11 decay-suite", True, f"{count} wavefunctions, worst tail {worst:.3e}")


def test_cli_tables_end_to_end(tmp_path):
    # the table command is the user-facing form of criteria 1 and 2
    for which in ("1", "2"):
        out = str(tmp_path / f"table{which}.txt")
        code = cli.main(["table", which, "--out", out])
        text = open(out, encoding="utf-8").read()
        ok = code == 0 and "FAIL" not in text
        _report(f"cli table {which}", ok, f"exit {code}")
