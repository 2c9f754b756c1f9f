"""Quantum-number bookkeeping: admissible j, couplings, exact identities."""

import math
from fractions import Fraction

import pytest

from monopole_spectra import core


F = Fraction


def test_allowed_j_half_charge():
    # |k| = 1/2 starts at |k|
    assert core.allowed_j(F(1, 2), F(5, 2)) == [F(1, 2), F(3, 2), F(5, 2)]


def test_allowed_j_integer_charge_starts_below_k():
    assert core.allowed_j(1, 2) == [F(0), F(1), F(2)]


def test_allowed_j_no_monopole_limit():
    assert core.allowed_j(0, 2) == [F(0), F(1), F(2)]


def test_allowed_j_rejects_non_half_integer():
    with pytest.raises(core.QuantumNumberError):
        core.allowed_j(0.3, 2)


def test_allowed_j_rejects_too_small_jmax():
    with pytest.raises(core.QuantumNumberError):
        core.allowed_j(3, 1)


@pytest.mark.parametrize("k", [F(1, 2), 1, F(3, 2), 2, 3])
def test_allowed_j_strictly_increasing_same_parity(k):
    js = core.allowed_j(k, k + 6)
    assert all(b - a == 1 for a, b in zip(js, js[1:]))
    assert all((j - k).denominator == 1 for j in js)


def test_couplings_j2_k1_exact():
    # c^2 = (j+k)(j-k+1)/4 = 3*2/4, d^2 = (j-k)(j+k+1)/4 = 1*4/4
    cp = core.couplings(2, 1)
    assert cp.c == pytest.approx(math.sqrt(6) / 2, abs=1e-15)
    assert cp.d == pytest.approx(1.0, abs=1e-15)


def test_couplings_j_equals_k_has_zero_d():
    for k in (1, F(3, 2), 2):
        assert core.couplings(k, k).d == 0.0


def test_couplings_no_monopole_j1():
    cp = core.couplings(1, 0)
    assert cp.c == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    assert cp.d == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    # nu = c sqrt(2) = 1 in the even-parity reduction
    assert cp.c * math.sqrt(2) == pytest.approx(1.0, abs=1e-15)


def test_couplings_min_j_rejected():
    with pytest.raises(core.QuantumNumberError):
        core.couplings(0, 1)


def test_couplings_sum_identity_exact_rationals():
    # c^2 + d^2 = (j(j+1) - k^2)/2 holds as exact rationals
    for k2 in range(0, 9):
        k = F(k2, 2)
        j = core.min_allowed_j(k) if k < 1 else k
        for _ in range(6):
            c2, d2 = core.coupling_squares(j, k)
            assert c2 + d2 == (j * (j + 1) - k * k) / 2
            j += 1


def test_couplings_charge_flip_swaps_c_d():
    for (j, k) in [(2, 1), (F(5, 2), F(3, 2)), (4, 2)]:
        cp = core.couplings(j, k)
        cm = core.couplings(j, -k)
        assert cp.c == pytest.approx(cm.d, abs=1e-15)
        assert cp.d == pytest.approx(cm.c, abs=1e-15)


def test_channel_kind():
    assert core.channel_kind(0, 1) == "min-j"
    assert core.channel_kind(1, 1) == "j-equals-k"
    assert core.channel_kind(2, 1) == "generic"
    assert core.channel_kind(F(1, 2), F(1, 2)) == "j-equals-k"


def test_monopole_charge_validation():
    assert core.MonopoleCharge(F(1, 2)).is_monopole
    assert not core.MonopoleCharge(0).is_monopole
    with pytest.raises(core.QuantumNumberError):
        core.MonopoleCharge(F(1, 3))


def test_quantum_numbers_validation():
    core.QuantumNumbers(k=F(1), j=F(0), n=0)  # j = |k| - 1 admissible
    with pytest.raises(core.QuantumNumberError):
        core.QuantumNumbers(k=F(1, 2), j=F(0), n=0)  # below |k| for half charge
    with pytest.raises(core.QuantumNumberError):
        core.QuantumNumbers(k=F(1), j=F(1, 2), n=0)  # parity mismatch
    with pytest.raises(core.QuantumNumberError):
        core.QuantumNumbers(k=F(1), j=F(1), n=-1)


def test_scenario_validation():
    with pytest.raises(ValueError):
        core.Scenario("flat", "coulomb", F(1), 1.0, alpha=0.0)
    with pytest.raises(ValueError):
        core.Scenario("lobachevsky", "none", F(1), 1.0, radius=-1.0)
    with pytest.raises(ValueError):
        core.Scenario("flat", "oscillator", F(1), -1.0, k_osc=1.0)
    scen = core.Scenario("lobachevsky", "coulomb", F(0), 2.0, alpha=3.0, radius=1.5)
    rec = scen.to_record()
    assert rec["charge2"] == 0 and rec["alpha"] == 3.0 and rec["radius"] == 1.5
