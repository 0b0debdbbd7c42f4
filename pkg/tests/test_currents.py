import math

import numpy as np
import pytest

from dirac_ac.currents import (
    CurrentError,
    fd_current_check,
    level_current,
    total_current,
)
from dirac_ac.model import Background, PhysicalParams, QuantumNumbers
from dirac_ac.spectrum import energy_level

FLAT = Background.minkowski()


def test_aligned_levels_carry_no_current():
    assert level_current(FLAT, PhysicalParams(mu_lambda=0.3), QuantumNumbers(0, 0, 1)) == 0.0
    assert level_current(FLAT, PhysicalParams(mu_lambda=0.3), QuantumNumbers(0, -2, -1)) == 0.0


def test_worked_example():
    value = level_current(FLAT, PhysicalParams(mu_lambda=0.5), QuantumNumbers(0, -1, 1))
    assert value == pytest.approx(1 / (math.pi * math.sqrt(3)), rel=1e-14)
    analytic, numeric, rel = fd_current_check(FLAT, PhysicalParams(mu_lambda=0.5), QuantumNumbers(0, -1, 1))
    assert rel < 1e-6


def test_current_scales_inversely_with_energy():
    bg = Background.cosmic_string(0.6)
    p = PhysicalParams(1.0, 1.0, 0.2, 0.0)
    for n in range(4):
        qn = QuantumNumbers(n, -2, 1)
        e = energy_level(bg, p, qn).energy
        assert level_current(bg, p, qn) == pytest.approx(p.m_omega / (math.pi * bg.eta * e), rel=1e-14)


def test_singular_zeta():
    with pytest.raises(CurrentError, match="zeta=0"):
        level_current(FLAT, PhysicalParams(), QuantumNumbers(0, 0, 1))


def test_kink_detection():
    with pytest.raises(CurrentError, match="straddles kink"):
        fd_current_check(FLAT, PhysicalParams(mu_lambda=1e-7), QuantumNumbers(0, 0, 1))
    with pytest.raises(ValueError):
        fd_current_check(FLAT, PhysicalParams(mu_lambda=0.3), QuantumNumbers(0, 0, 1), step=0.0)


def test_aligned_fd_is_exact_zero():
    assert fd_current_check(FLAT, PhysicalParams(mu_lambda=0.3), QuantumNumbers(0, 0, 1)) == (0.0, 0.0, 0.0)


def test_random_smooth_points():
    rng = np.random.default_rng(21)
    checked = 0
    while checked < 200:
        bg = Background.cosmic_dislocation(rng.uniform(0.1, 1.0), rng.uniform(-1, 1))
        p = PhysicalParams(rng.uniform(0.2, 2), rng.uniform(0.2, 2), rng.uniform(-2, 2), rng.uniform(-1, 1))
        qn = QuantumNumbers(int(rng.integers(0, 4)), int(rng.integers(-4, 5)), int(rng.choice([1, -1])))
        if abs(energy_level(bg, p, qn).zeta) < 1e-4:
            continue
        _, _, rel = fd_current_check(bg, p, qn)
        assert rel < 1e-6
        checked += 1


def test_total_examples():
    assert total_current(FLAT, PhysicalParams(), []).total == 0.0
    one = total_current(FLAT, PhysicalParams(mu_lambda=0.5), [QuantumNumbers(0, -1, 1)])
    assert one.total == level_current(FLAT, PhysicalParams(mu_lambda=0.5), QuantumNumbers(0, -1, 1))


def test_total_matches_summed_energy_derivative():
    p = PhysicalParams(mu_lambda=0.3)
    levels = [QuantumNumbers(0, l, s) for l in (-3, -2, -1) for s in (1, -1)]
    report = total_current(FLAT, p, levels)
    step = 1e-6

    def summed(mu):
        return math.fsum(energy_level(FLAT, p.replace(mu_lambda=mu), q).energy for q in levels)

    numeric = -(summed(0.3 + step) - summed(0.3 - step)) / (2 * 2 * math.pi * step)
    assert report.total == pytest.approx(numeric, rel=1e-6)


def test_total_reports_exclusions_and_is_order_independent():
    p = PhysicalParams()
    levels = [QuantumNumbers(0, l, 1) for l in (-2, -1, 0, 1)]
    a = total_current(FLAT, p, levels)
    b = total_current(FLAT, p, list(reversed(levels)) + levels)
    assert a.excluded == (QuantumNumbers(0, 0, 1),)
    assert a.to_dict() == b.to_dict()
    assert a.to_dict()["total"] == a.total


def test_current_periodicity():
    bg = Background.cosmic_string(0.8)
    for s in (1, -1):
        window = [QuantumNumbers(n, l, s) for n in range(2) for l in range(-3, 3)]
        shifted = [QuantumNumbers(q.n, q.l + s, q.s) for q in window]
        a = total_current(bg, PhysicalParams(mu_lambda=0.37), shifted).total
        b = total_current(bg, PhysicalParams(mu_lambda=1.37), window).total
        assert a == pytest.approx(b, rel=1e-12)
