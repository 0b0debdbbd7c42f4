import math

import numpy as np
import pytest

from dirac_ac.model import (
    Background,
    BackgroundError,
    BackgroundKind,
    PhysicalParams,
    QuantumNumbers,
    ac_phase,
    effective_zeta,
    parse_spin,
    validate_background,
    zeta_from_config,
    zeta_to_config,
)


@pytest.mark.parametrize("mu_lambda,phase", [(0.0, 0.0), (0.5, math.pi), (-1.0, -2 * math.pi)])
def test_ac_phase(mu_lambda, phase):
    assert ac_phase(mu_lambda) == phase


def test_zeta_examples():
    flat = Background.minkowski()
    assert effective_zeta(flat, QuantumNumbers(0, 0, 1), PhysicalParams()) == 0.0
    assert effective_zeta(flat, QuantumNumbers(0, -1, 1), PhysicalParams(mu_lambda=0.5)) == -0.5
    disl = Background.cosmic_dislocation(1.0, 1.0)
    assert effective_zeta(disl, QuantumNumbers(0, 0, 1), PhysicalParams(k=0.5)) == -0.5


def test_validate_background():
    assert validate_background(Background.minkowski()).eta == 1.0
    Background.cosmic_dislocation(0.5, -0.3)
    Background.cosmic_string(1.0)
    with pytest.raises(BackgroundError, match="eta out of range"):
        Background.cosmic_string(1.2)
    with pytest.raises(BackgroundError, match="eta out of range"):
        Background.cosmic_dislocation(0.0, 1.0)
    with pytest.raises(BackgroundError):
        Background(BackgroundKind.MINKOWSKI, 0.5)
    with pytest.raises(BackgroundError):
        Background(BackgroundKind.COSMIC_STRING, 0.5, 0.1)
    with pytest.raises(BackgroundError):
        Background("wormhole")


def test_kind_aliases():
    assert Background("flat").kind is BackgroundKind.MINKOWSKI
    assert Background("cosmic-string", 0.4).kind is BackgroundKind.COSMIC_STRING
    assert BackgroundKind.parse(BackgroundKind.COSMIC_DISLOCATION) is BackgroundKind.COSMIC_DISLOCATION


def test_params_validation():
    with pytest.raises(ValueError):
        PhysicalParams(m=0.0)
    with pytest.raises(ValueError):
        PhysicalParams(omega=-1.0)
    with pytest.raises(ValueError):
        PhysicalParams(k=float("nan"))
    assert PhysicalParams(2.0, 3.0).m_omega == 6.0


def test_quantum_numbers_validation():
    with pytest.raises(ValueError):
        QuantumNumbers(-1, 0, 1)
    with pytest.raises(ValueError):
        QuantumNumbers(0, 0, 0)
    with pytest.raises(ValueError):
        QuantumNumbers(0, 0.5, 1)
    assert QuantumNumbers(0, 1, 1) < QuantumNumbers(1, 0, -1)


def test_parse_spin():
    assert parse_spin("+1") == 1 and parse_spin("-1") == -1 and parse_spin(1) == 1
    with pytest.raises(ValueError):
        parse_spin("up")


def test_config_round_trip():
    bg = Background.cosmic_dislocation(0.37, -1.25)
    params = PhysicalParams(1.5, 0.1, -0.3, 2.0)
    qn = QuantumNumbers(3, -2, -1)
    assert Background.from_config(bg.to_config()) == bg
    assert PhysicalParams.from_config(params.to_config()) == params
    assert QuantumNumbers.from_config(qn.to_config()) == qn
    zeta = effective_zeta(bg, qn, params)
    assert zeta_from_config(zeta_to_config(zeta)) == zeta


def _draws(rng, count):
    for _ in range(count):
        yield (
            QuantumNumbers(int(rng.integers(0, 6)), int(rng.integers(-6, 7)), int(rng.choice([1, -1]))),
            PhysicalParams(rng.uniform(0.1, 3), rng.uniform(0.1, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)),
            rng.uniform(0.01, 1.0),
        )


def test_limit_chain_exact():
    rng = np.random.default_rng(11)
    for qn, params, eta in _draws(rng, 500):
        flat = effective_zeta(Background.minkowski(), qn, params)
        assert effective_zeta(Background.cosmic_string(1.0), qn, params) == flat
        string = effective_zeta(Background.cosmic_string(eta), qn, params)
        assert effective_zeta(Background.cosmic_dislocation(eta, 0.0), qn, params) == string


def test_phase_orbit_shift():
    rng = np.random.default_rng(12)
    for qn, params, eta in _draws(rng, 300):
        for bg in (Background.minkowski(), Background.cosmic_string(eta), Background.cosmic_dislocation(eta, 0.7)):
            for sign in (1, -1):
                a = effective_zeta(bg, qn, params.replace(mu_lambda=params.mu_lambda + sign))
                b = effective_zeta(bg, QuantumNumbers(qn.n, qn.l + sign * qn.s, qn.s), params)
                assert a == pytest.approx(b, abs=1e-12)


def test_spin_flip_consistency():
    flat, params = Background.minkowski(), PhysicalParams()
    for l in range(-4, 5):
        down = effective_zeta(flat, QuantumNumbers(0, l, -1), params)
        up = effective_zeta(flat, QuantumNumbers(0, l + 1, 1), params)
        assert down == l + 1 == up
