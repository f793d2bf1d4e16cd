"""Acceptance gate: one test per criterion, one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are printed
even when output capture is on).
"""

import time
import tracemalloc

import numpy as np
import pytest

from qwtransfer import kernels
from qwtransfer._accel import NUMBA_AVAILABLE
from qwtransfer.complete_loop import CompleteLoopModel
from qwtransfer.experiment import cross_check, effective_from_simulation, run_transfer
from qwtransfer.smallmat import det, identity, orthonormality_defect, projection_residual
from qwtransfer.star import StarModel
from qwtransfer.szegedy import SzegedyModel, sz_chi0, sz_reflectors

# pinned tolerances
EXACT = 1e-10
EIGEN = 1e-12
CHAR_EQ = 1e-8
NORM = 1e-12
SZ_LOOSE_C = 5.0
SZ_N30_CALIBRATED = 3e-3  # measured 2.516e-3 with the dense oracle, t = 0..20
SCALING_REL = 0.02
STAR_STEP_BUDGET = 0.100
BIG_STEP_BUDGET = 0.500
MEMORY_FACTOR = 8


def _report(capsys, number, title, checks):
    ok = all(passed for _, passed, _ in checks)
    with capsys.disabled():
        print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}  {title}")
        for name, passed, detail in checks:
            print(f"    {'ok  ' if passed else 'FAIL'} {name}: {detail}")
    failed = [name for name, passed, _ in checks if not passed]
    assert not failed, f"criterion {number}: failed {failed}"


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    for model in (StarModel(5), CompleteLoopModel(5), SzegedyModel(5)):
        model.step(model.initial())


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_1_star_transfer_series(capsys):
    m = StarModel(100, 1, 2)
    rep, elapsed = _timed(lambda: run_transfer(m, 3 * m.transfer_time()))
    full = rep.column("full")
    analytic = rep.column("analytic")
    first_peak = int(np.argmax(full[: 2 * rep.peak_step + 1]))
    odd_zero = all(full[t] == 0.0 for t in range(1, rep.steps + 1, 2))
    dev = float(np.max(np.abs(full[::2] - analytic[::2])))
    _report(
        capsys,
        1,
        "star N=100 reproduces the 22-step transfer",
        [
            ("first peak at t=22", rep.peak_step == 22 and first_peak == 22, f"peak_step={rep.peak_step}"),
            ("peak fidelity >= 0.999", rep.peak_fidelity >= 0.999, f"{rep.peak_fidelity:.12f}"),
            ("odd-step fidelity exactly 0", odd_zero, "all odd t" if odd_zero else "nonzero odd step"),
            ("simulated vs sin^4 at even t <= 1e-10", dev <= EXACT, f"{dev:.2e}"),
            ("runtime < 1 s", elapsed < 1.0, f"{elapsed:.3f} s"),
        ],
    )


def test_2_complete_loop_transfer_series(capsys):
    m = CompleteLoopModel(30, 1, 2)
    rep, elapsed = _timed(lambda: run_transfer(m, 3 * m.transfer_time()))
    full = rep.column("full")
    analytic = rep.column("analytic")
    dev = float(np.max(np.abs(full[::2] - analytic[::2])))
    # cos^2(omega k) vanishes at omega k = pi/2 + j pi; the nearest even step must be a dip
    w = m.spectrum().omega
    even = full[::2]
    dips = []
    j = 0
    while True:
        k = int(round((np.pi / 2 + j * np.pi) / w))
        if k + 1 >= len(even):
            break
        dips.append((2 * k, even[k], even[k] < even[k - 1] and even[k] < even[k + 1] and even[k] <= 1e-3))
        j += 1
    _report(
        capsys,
        2,
        "complete graph with loops N=30 reproduces the 12-step transfer",
        [
            ("peak at t=12", rep.peak_step == 12, f"peak_step={rep.peak_step}, F={rep.peak_fidelity:.12f}"),
            ("simulated vs cos^2 sin^4 at even t <= 1e-10", dev <= EXACT, f"{dev:.2e}"),
            (
                "cos^2 modulation dips present",
                len(dips) >= 2 and all(d[2] for d in dips),
                ", ".join(f"t={t}:F={f:.1e}" for t, f, _ in dips),
            ),
            ("runtime < 1 s", elapsed < 1.0, f"{elapsed:.3f} s"),
        ],
    )


def test_3_szegedy_transfer_series(capsys):
    m = SzegedyModel(30, 1, 2)
    rep = run_transfer(m, 20)
    dev = float(np.max(np.abs(rep.column("full") - rep.column("analytic"))))
    peaks = {}
    elapsed_300 = None
    for n in (10, 30, 100, 300):
        model = SzegedyModel(n)
        t_pred = model.transfer_time()
        r, elapsed = _timed(lambda: run_transfer(model, 3 * t_pred, ("full",)))
        peaks[n] = r.column("full")[t_pred]
        if n == 300:
            elapsed_300 = elapsed
    values = [peaks[n] for n in (10, 30, 100, 300)]
    monotone = all(b > a for a, b in zip(values, values[1:]))
    _report(
        capsys,
        3,
        "Szegedy N=30 reproduces the 6-step transfer; large-N convergence",
        [
            ("peak at t=6", rep.peak_step == 6, f"peak_step={rep.peak_step}, F={rep.peak_fidelity:.12f}"),
            ("|F_sim - sin^4| <= 5/sqrt(30)", dev <= SZ_LOOSE_C / np.sqrt(30), f"{dev:.3e} <= {SZ_LOOSE_C / np.sqrt(30):.3f}"),
            ("|F_sim - sin^4| <= calibrated 3e-3", dev <= SZ_N30_CALIBRATED, f"{dev:.3e}"),
            (
                "F(T(N)) increasing over N=10,30,100,300",
                monotone,
                ", ".join(f"N={n}:{peaks[n]:.6f}" for n in peaks),
            ),
            ("F(T(300)) > 0.99", peaks[300] > 0.99, f"{peaks[300]:.6f}"),
            ("N=300 run < 30 s", elapsed_300 < 30.0, f"{elapsed_300:.3f} s"),
        ],
    )


def _reduction_checks(cls, n):
    m = cls(n)
    basis = m.alpha_basis()
    closure = max(projection_residual(basis, effective_apply(m, b)) for b in basis)
    gram = float(np.max(np.abs(effective_from_simulation(m) - m.effective())))
    gap = cross_check(m, 3 * m.transfer_time())
    return closure, gram, gap


def effective_apply(model, v):
    for _ in range(model.period):
        v = model.step(v)
    return v


def test_4_reduction_exactness(capsys):
    checks = []
    for cls, sizes in ((StarModel, (3, 10, 30, 100)), (CompleteLoopModel, (5, 10, 30, 100)), (SzegedyModel, (5, 10, 30, 100))):
        for n in sizes:
            closure, gram, gap = _reduction_checks(cls, n)
            ok = closure <= EXACT and gram <= EXACT and gap <= EXACT
            checks.append((f"{cls.family} N={n}", ok, f"full-vs-reduced {gap:.1e}, closure {closure:.1e}, U_eff-vs-Gram {gram:.1e}"))
    _report(capsys, 4, "invariant-subspace reductions are exact", checks)


def test_5_spectral_suite(capsys):
    checks = []
    for cls in (StarModel, CompleteLoopModel):
        for n in (5, 10, 30, 100, 1000):
            m = cls(n)
            res = float(m.spectrum().residuals(m.effective()).max())
            checks.append((f"{cls.family} N={n} eigenpairs", res <= EIGEN, f"{res:.1e}"))
    for n in (5, 10, 30, 100, 1000):
        spec = CompleteLoopModel(n).spectrum()
        gap = abs(np.angle(spec.value("chi2+")) - 2 * np.angle(spec.value("chi1+")))
        checks.append((f"complete-loops N={n} phase doubling", gap <= EIGEN, f"{gap:.1e}"))
    for n in (5, 10, 30, 100, 300):
        m = SzegedyModel(n)
        u = m.effective()
        worst = max(abs(det(u - lam * identity(7))) for lam in m.spectrum().eigenvalues)
        chi0 = sz_chi0(m)
        fixed = float(np.linalg.norm(u @ chi0 - chi0))
        checks.append((f"szegedy N={n} |det(U_eff - lambda I)| at 7 eigenvalues", worst <= CHAR_EQ, f"{worst:.1e}"))
        checks.append((f"szegedy N={n} chi0 fixed point", fixed <= EIGEN, f"{fixed:.1e}"))
    _report(capsys, 5, "closed-form spectra", checks)


def test_6_scaling_law(capsys):
    ratios = {n: StarModel(n).transfer_time() / np.sqrt(n) for n in (100, 400, 1600)}
    target = np.pi / np.sqrt(2)
    checks = [
        (f"star N={n}: T/sqrt(N) within 2% of pi/sqrt(2)", abs(r / target - 1) <= SCALING_REL, f"{r:.4f} vs {target:.4f}")
        for n, r in ratios.items()
    ]
    half = SzegedyModel(1600).transfer_time() / StarModel(1600).transfer_time()
    checks.append(("T_szegedy / T_star at N=1600 within 2% of 0.5", abs(half / 0.5 - 1) <= SCALING_REL, f"{half:.4f}"))
    _report(capsys, 6, "O(sqrt N) transfer time", checks)


def test_7_conservation(capsys):
    rng = np.random.default_rng(2024)
    checks = []
    for cls in (StarModel, CompleteLoopModel, SzegedyModel):
        m = cls(30)
        worst = 0.0
        out = np.empty(m.dim, dtype=np.complex128)
        for _ in range(1000):
            v = rng.standard_normal(m.dim) + 1j * rng.standard_normal(m.dim)
            v /= np.linalg.norm(v)
            worst = max(worst, abs(np.linalg.norm(m.step(v, out=out)) - 1.0))
        checks.append((f"{cls.family} N=30, 1000 states", worst <= NORM, f"max defect {worst:.1e}"))
    m = SzegedyModel(30)
    worst = 0.0
    for refl in sz_reflectors(m):
        for _ in range(100):
            v = rng.standard_normal(m.dim) + 1j * rng.standard_normal(m.dim)
            worst = max(worst, float(np.max(np.abs(refl(refl(v)) - v))))
    checks.append(("szegedy reflectors are involutions", worst <= NORM, f"{worst:.1e}"))
    _report(capsys, 7, "norm conservation and involutions", checks)


def _best_time(fn, repeat=3):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _peak_bytes(fn):
    tracemalloc.start()
    try:
        fn()
        return tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()


def test_8_performance(capsys):
    rng = np.random.default_rng(0)
    checks = []
    cases = [
        (StarModel(10**6), STAR_STEP_BUDGET),
        (CompleteLoopModel(2000), BIG_STEP_BUDGET),
        (SzegedyModel(2000), BIG_STEP_BUDGET),
    ]
    backends = ["numpy", "numba"] if NUMBA_AVAILABLE else ["numpy"]
    for model, budget in cases:
        v = (rng.standard_normal(model.dim) + 1j * rng.standard_normal(model.dim)) / np.sqrt(2 * model.dim)
        out = np.empty_like(v)
        for name in backends:
            kernel = kernels.BACKENDS[name][model.family]
            shaped = (lambda x: x) if model.family == "star" else (lambda x: x.reshape(model.N, model.N))

            def step():
                kernel(shaped(v), model.si, model.ri, shaped(out))

            step()
            elapsed = _best_time(step)
            checks.append((f"{model.family} N={model.N} one step [{name}]", elapsed <= budget, f"{elapsed * 1e3:.1f} ms <= {budget * 1e3:.0f} ms"))
        # memory through the public step, which allocates its own output
        peak = _peak_bytes(lambda: model.step(v))
        ratio = peak / v.nbytes
        checks.append((f"{model.family} N={model.N} peak memory", ratio <= MEMORY_FACTOR, f"{ratio:.2f} x state size"))
    _report(capsys, 8, "matrix-free steps are linear in the state size", checks)
