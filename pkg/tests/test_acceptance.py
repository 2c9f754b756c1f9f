"""Acceptance suite: one test per criterion, each printing its pass/fail line.

Criterion 6 is asserted exactly as stated even though its n = 1, 2 shooting
sub-checks are analytically infeasible at the stated parameters (the closed
form there has a negative far-field exponent, so no decaying solution exists
to shoot against); see README "Known limitations". Everything else passes.
"""

import time

from monopole_spectra import validate

_cache: dict = {}


def suite(name: str):
    if name not in _cache:
        fn = validate._SUITES[name] if name != "determinism" else validate.suite_determinism
        _cache[name] = {r.cid: r for r in fn()}
    return _cache[name]


def check(result):
    print(result.line())
    assert result.passed, result.line()


def test_criterion_01_root_machinery():
    check(suite("roots")["1-roots"])


def test_criterion_02_parity_split():
    check(suite("roots")["2-parity"])


def test_criterion_03_wigner_recurrences():
    check(suite("wigner")["3-wigner"])


def test_criterion_04_flat_coulomb():
    check(suite("flat-coulomb")["4-flat-coulomb"])


def test_criterion_05_flat_oscillator_arbitration():
    check(suite("flat-oscillator")["5-flat-oscillator"])


def test_criterion_06_lob_minj_coulomb_shooting():
    check(suite("lob-minj")["6-lob-minj-coulomb"])


def test_criterion_07_lob_minj_oscillator():
    check(suite("lob-minj")["7-lob-minj-oscillator"])


def test_criterion_08_lob_nomonopole_coulomb():
    check(suite("lob-coulomb")["8-lob-coulomb"])


def test_criterion_09_lob_nomonopole_oscillator():
    check(suite("lob-oscillator")["9-lob-oscillator"])


def test_criterion_10_heun_channels():
    check(suite("heun")["10-heun"])


def test_criterion_11_free_particle():
    check(suite("lob-coulomb")["11-free-particle"])


def test_criterion_12_determinism_and_runtime():
    check(suite("determinism")["12-determinism"])
    # the full composite must complete well inside five minutes
    t0 = time.monotonic()
    report = validate.run_suites("all")
    elapsed = time.monotonic() - t0
    print(f"[INFO] validate --suite all completed in {elapsed:.1f}s (< 300s required)")
    assert elapsed < 300.0
    hard = set(report["results"]["hard_failures"])
    assert hard <= {"6-lob-minj-coulomb"}, f"unexpected hard failures: {hard}"
