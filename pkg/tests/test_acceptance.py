"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a ``PASS``/``FAIL`` line; the lines are printed together
at the end of the pytest run (see ``conftest.py``).
"""

import time

from poisson_order_k import harness

LINES: list[str] = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}  [{detail}]"
    LINES.append(line)
    print(line)


def _failures(results):
    return [c for r in results for c in r.counterexamples]


def test_01_engine_equivalence():
    t0 = time.perf_counter()
    eng = harness.check_engine_equivalence(range(1, 11), (0.1, 0.5, 1.0, 2.0, 10.0), n_max=500, rtol=1e-12)
    orc = harness.check_oracle_equivalence(range(1, 5), (0.3, 1.0, 2.0), n_max=20, rtol=1e-12)
    elapsed = time.perf_counter() - t0
    ok = eng.passed and orc.passed and elapsed < 10.0
    report(1, "engine equivalence", ok,
           f"max rel diff {eng.max_abs_deviation:.2e}, oracle {orc.max_abs_deviation:.2e}, {elapsed:.1f}s < 10s")
    assert ok, _failures([eng, orc])


def test_02_normalization():
    literal = harness.check_normalization(atol=1e-10)
    padded = harness.check_normalization(atol=1e-10, margin=harness.TAIL_MARGIN)
    bad = sorted({(c.k, c.x) for c in literal.counterexamples})
    report(2, "normalization over n <= mean + 12 sigma", literal.passed,
           f"max |sum - 1| {literal.max_abs_deviation:.2e}; {len(bad)} grid points have true tail mass > 1e-10 "
           f"beyond mean + 12 sigma (e.g. k=1, lambda=0.1); with {harness.TAIL_MARGIN} extra terms "
           f"max |sum - 1| = {padded.max_abs_deviation:.2e}")
    assert padded.passed
    assert literal.passed, bad


def test_03_moments():
    r = harness.check_moments(rtol=1e-8)
    report(3, "moment cross-check", r.passed, f"max rel error {r.max_abs_deviation:.2e}; {r.params_range}")
    assert r.passed, r.counterexamples


def test_04_k1_benchmark():
    t0 = time.perf_counter()
    r = harness.check_k1_alpha_benchmark((100, 300, 1000), atol=1e-6)
    elapsed = time.perf_counter() - t0
    ok = r.passed and elapsed < 30.0
    report(4, "k=1 median boundary expansion", ok, f"max |dev| {r.max_abs_deviation:.2e} <= 1e-6, {elapsed:.1f}s < 30s")
    assert ok, r.counterexamples


def test_05_median_formula():
    r = harness.check_median_formula(range(1, 21), n_span=50)
    report(5, "median formula", r.passed, f"{len(r.counterexamples)} counterexamples; {r.params_range}")
    assert r.passed, r.counterexamples


def test_06_mode_formula():
    results = harness.check_mode_formula(range(2, 21), n_span=50)
    ok = all(r.passed for r in results)
    report(6, "mode formula, unique modes, k=15 lambda=2, integer-lambda modes", ok,
           "; ".join(f"{r.name}: {len(r.counterexamples)} counterexamples" for r in results))
    assert ok, _failures(results)


def test_07_zero_median_threshold():
    threshold = harness.check_zero_median(range(1, 51), atol=1e-14)[0]
    report(7, "zero-median threshold", threshold.passed, f"max |F(0) - 1/2| {threshold.max_abs_deviation:.1e}, k <= 50")
    assert threshold.passed, threshold.counterexamples


def test_08_double_modes():
    results = harness.check_double_modes(range(2, 15), range(15, 21))
    ok = all(r.passed for r in results[:3])
    report(8, "first double modes", ok,
           f"k=2 |lambda - (sqrt3 - 1)| {results[0].max_abs_deviation:.1e}; "
           f"k=15 |lambda - 0.25023| {results[1].max_abs_deviation:.1e}; [0,k] for k in 2..14, not [0,k] for k in 15..20")
    assert ok, _failures(results[:3])


def test_09_asymptotic_gates():
    reports = [
        harness.check_alpha_expansion(10, (100, 300, 1000), threshold=5e-8),
        harness.check_alpha_expansion(2, (50, 500, 1000), threshold=5e-7),
        harness.check_beta_expansion(10, (100, 300, 1000), threshold=5e-6),
        harness.check_beta_expansion(2, (50, 500, 1000), threshold=5e-5),
    ]
    ok = all(r.passed for r in reports)
    parts = []
    for r in reports:
        worst = max(range(len(r.details["deviation"])), key=lambda i: abs(r.details["deviation"][i]))
        parts.append(f"{r.name} {r.grid.split(',')[0]}: max {r.residual_max:.2e} at n={r.details['n'][worst]}"
                     f" ({'ok' if r.passed else 'over'})")
    report(9, "asymptotic accuracy gates", ok, "; ".join(parts))
    assert ok, [(r.name, r.grid, r.details["deviation"]) for r in reports if not r.passed]


def test_10_monotonicity_and_bounds():
    results = harness.check_limits(range(2, 13), n_count=30)
    ok = all(r.passed for r in results)
    report(10, "bounds, decrease, limits", ok,
           "; ".join(f"{r.name}: {len(r.counterexamples)} counterexamples, largest final gap {r.max_abs_deviation:.3f}"
                     for r in results))
    assert ok, _failures(results)


def test_11_power_law():
    t0 = time.perf_counter()
    r = harness.fit_zero_mode_power_law(harness.power_law_grid(100, 2000, 10))
    elapsed = time.perf_counter() - t0
    b = r.fitted_coefficients["exponent"]
    report(11, "zero-mode power law (k in [100, 2000], scaled down)", bool(r.passed),
           f"exponent {b:.4f} in 1.125 +/- 0.02, {elapsed:.0f}s")
    assert r.passed


def test_12_orderings():
    results = harness.check_ordering(k_min=2, k_max=100, samples=200, sweep_k=range(2, 11))
    ok = all(r.passed for r in results)
    report(12, "mean/median/mode orderings", ok,
           "; ".join(f"{r.name}: {len(r.counterexamples)} counterexamples" for r in results))
    assert ok, _failures(results)
