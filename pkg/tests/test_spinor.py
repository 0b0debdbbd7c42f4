import dataclasses
import math

import numpy as np
import pytest

from dirac_ac.model import Background, PhysicalParams, QuantumNumbers
from dirac_ac.oracle import RadialGrid
from dirac_ac.spectrum import energy_level, quantization_beta
from dirac_ac.spinor import (
    PAULI,
    SpinorError,
    build_spinor,
    count_nodes,
    dirac_residual,
    norm_integral,
    normalize,
    radial_wavefunction,
    residual_gate,
)

FLAT = Background.minkowski()


def test_pauli_frame():
    for phi in (0.0, 0.4, 2.9):
        sr, sp = PAULI.sigma_rho(phi), PAULI.sigma_phi(phi)
        np.testing.assert_allclose(sr @ sr, np.eye(2), atol=1e-15)
        np.testing.assert_allclose(sr, math.cos(phi) * PAULI.sigma1 + math.sin(phi) * PAULI.sigma2)
        np.testing.assert_allclose(sp, -math.sin(phi) * PAULI.sigma1 + math.cos(phi) * PAULI.sigma2)


def test_radial_wavefunction_examples():
    p = PhysicalParams()
    qn = QuantumNumbers(0, 0, 1)
    assert radial_wavefunction(FLAT, p, qn, 1.0) == pytest.approx(math.exp(-0.5), rel=1e-15)
    assert radial_wavefunction(FLAT, p, qn, 0.0) == 1.0
    assert radial_wavefunction(FLAT, PhysicalParams(mu_lambda=0.3), qn, 0.0) == 0.0
    rho = np.linspace(0.1, 3.0, 9)
    pure = radial_wavefunction(FLAT, PhysicalParams(mu_lambda=0.7), qn, rho)
    np.testing.assert_allclose(pure, np.exp(-rho**2 / 2) * (rho**2) ** 0.35, rtol=1e-14)
    with pytest.raises(ValueError):
        radial_wavefunction(FLAT, p, qn, -1.0)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_node_count(n):
    p = PhysicalParams(mu_lambda=0.5)
    field = build_spinor(FLAT, p, QuantumNumbers(n, 0, 1), RadialGrid.default(1.0, 1024))
    assert count_nodes(field.components[0]) == n


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.5, 3.0])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_radial_profile_solves_radial_equation(n, nu):
    # R'' + R'/rho - nu^2 R/rho^2 - Omega^2 rho^2 R + beta R = 0 with the quantized beta
    omega_g = 1.3
    bg = Background.cosmic_string(0.5)
    # pick mu_lambda so that |zeta|/eta = nu for s = +1, l = 0
    p = PhysicalParams(1.0, omega_g, nu * 0.5 - 0.25, 0.0)
    qn = QuantumNumbers(n, 0, 1)
    zeta = energy_level(bg, p, qn).zeta
    assert abs(zeta) / 0.5 == pytest.approx(nu, abs=1e-14)
    beta = quantization_beta(n, zeta, 0.5, 1.0, omega_g)
    h = 1e-3
    rho = np.linspace(0.5, 2.5, 21)
    R = lambda r: radial_wavefunction(bg, p, qn, r)
    d1 = (R(rho - 2 * h) - 8 * R(rho - h) + 8 * R(rho + h) - R(rho + 2 * h)) / (12 * h)
    d2 = (-R(rho - 2 * h) + 16 * R(rho - h) - 30 * R(rho) + 16 * R(rho + h) - R(rho + 2 * h)) / (12 * h * h)
    lhs = d2 + d1 / rho - nu**2 * R(rho) / rho**2 - omega_g**2 * rho**2 * R(rho) + beta * R(rho)
    scale = np.max(np.abs(beta * R(rho)))
    assert np.max(np.abs(lhs)) / scale < 1e-6


def test_structural_zeros():
    p = PhysicalParams(mu_lambda=0.3)
    up = build_spinor(FLAT, p, QuantumNumbers(0, 0, 1))
    assert np.all(up.components[1] == 0) and np.all(up.components[2] == 0)
    down = build_spinor(FLAT, p, QuantumNumbers(1, 0, -1))
    assert np.all(down.components[0] == 0) and np.all(down.components[3] == 0)
    axial = build_spinor(FLAT, p.replace(k=0.5), QuantumNumbers(0, 0, 1))
    assert np.max(np.abs(axial.components[2])) > 0


def test_aligned_ground_state_has_no_lower_component():
    # zeta = 0, n = 0: the lower bracket vanishes identically and E = m
    field = build_spinor(FLAT, PhysicalParams(), QuantumNumbers(0, 0, 1))
    assert field.energy == 1.0
    assert np.all(field.components[3] == 0)
    assert dirac_residual(field) < 1e-8


def test_residual_example():
    field = build_spinor(FLAT, PhysicalParams(mu_lambda=0.25), QuantumNumbers(0, 0, 1))
    assert dirac_residual(field) < 1e-8


CASES = [
    (Background.minkowski(), PhysicalParams(1.0, 1.0, 0.3, 0.0)),
    (Background.cosmic_string(0.6), PhysicalParams(1.2, 0.8, -0.4, 0.0)),
    (Background.cosmic_dislocation(0.7, 0.5), PhysicalParams(0.9, 1.1, 0.15, 0.0)),
]


@pytest.mark.parametrize("bg,params", CASES)
@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("l,s", [(0, 1), (-2, 1), (1, -1), (-1, -1)])
def test_residual_gate(bg, params, n, l, s):
    field = build_spinor(bg, params, QuantumNumbers(n, l, s))
    assert dirac_residual(field) < residual_gate(field)


def test_residual_is_gauge_independent():
    qn = QuantumNumbers(1, -1, 1)
    bg, p = CASES[2]
    base = dirac_residual(build_spinor(bg, p, qn))
    moved = dirac_residual(build_spinor(bg, p, qn, gauge=(0.7, 1.9, -2.3)))
    assert moved < residual_gate(build_spinor(bg, p, qn))
    assert moved == pytest.approx(base, rel=1e-3, abs=1e-12)


def test_residual_detects_wrong_energy():
    field = build_spinor(FLAT, PhysicalParams(mu_lambda=0.25), QuantumNumbers(1, 0, 1))
    assert dirac_residual(field.with_energy(field.energy * 1.01)) > 1e-3


def test_residual_rejects_literal_bracket():
    # bracket (Omega rho - |zeta|/rho + zeta/rho) in place of the derived one
    p = PhysicalParams(mu_lambda=0.25)
    qn = QuantumNumbers(0, 0, 1)
    field = build_spinor(FLAT, p, qn)
    rho, e, zeta = field.rho, field.energy, field.zeta
    f = field.components[0].real
    wrong = field.components.copy()
    wrong[3] = 1j * f * (p.m_omega * rho - abs(zeta) / rho + zeta / rho) / (e + p.m)
    assert dirac_residual(dataclasses.replace(field, components=wrong)) > 1e-3


def test_axial_momentum_breaks_ansatz():
    # with k != 0 the single-spin ansatz is not an exact solution of the coupled system
    for bg, p in CASES:
        field = build_spinor(bg, p.replace(k=0.5), QuantumNumbers(0, 0, 1))
        assert dirac_residual(field) > 1e-2


def test_residual_errors():
    coarse = build_spinor(FLAT, PhysicalParams(), QuantumNumbers(0, 0, 1), RadialGrid(8.0, 128))
    with pytest.raises(SpinorError, match="grid too coarse"):
        dirac_residual(coarse)
    field = build_spinor(FLAT, PhysicalParams(), QuantumNumbers(0, 0, 1))
    empty = dataclasses.replace(field, components=np.zeros_like(field.components))
    with pytest.raises(SpinorError, match="empty field"):
        dirac_residual(empty)
    with pytest.raises(SpinorError, match="zero-norm"):
        normalize(empty)


def test_normalize_idempotent_and_scale_invariant():
    field = build_spinor(*CASES[1], QuantumNumbers(2, -1, 1))
    once = normalize(field)
    assert norm_integral(once) == pytest.approx(1 / (2 * math.pi), rel=1e-12)
    np.testing.assert_allclose(normalize(once).components, once.components, rtol=1e-12, atol=0)
    np.testing.assert_allclose(normalize(field.scaled(7.0)).components, once.components, rtol=1e-12, atol=0)


@pytest.mark.parametrize("m_omega", [0.5, 1.0, 2.0])
def test_gaussian_normalization_constant(m_omega):
    # int C^2 exp(-m omega rho^2) rho drho = C^2/(2 m omega) = 1/(2 pi)
    field = normalize(build_spinor(FLAT, PhysicalParams(1.0, m_omega), QuantumNumbers(0, 0, 1)))
    assert field.norm_constant == pytest.approx(math.sqrt(m_omega / math.pi), rel=1e-10)
    rho = field.rho
    np.testing.assert_allclose(
        field.components[0].real, field.norm_constant * np.exp(-m_omega * rho**2 / 2), rtol=1e-12
    )


def test_export_rows_and_header():
    field = normalize(build_spinor(FLAT, PhysicalParams(mu_lambda=0.25), QuantumNumbers(0, 0, 1), RadialGrid(6.0, 300)))
    rows = field.rows()
    assert len(rows) == 300
    assert list(rows[0]) == ["rho", "re1", "im1", "re2", "im2", "re3", "im3", "re4", "im4"]
    header = field.header()
    assert header["energy"] == field.energy and header["norm_constant"] == field.norm_constant
