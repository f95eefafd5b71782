"""Sensor couplings, the output operator and its adjoint."""

import math

import numpy as np
import pytest

from gradobs.errors import DomainError
from gradobs.sensing import (
    BilinearTable,
    FILAMENT,
    Filament,
    POINTWISE,
    Sensor,
    SensorSuite,
    ZONE,
    adjoint_inject,
    counterexample_sensor,
    coupling,
    coupling_matrix,
    grad_coupling,
    observe,
)
from gradobs.spectral import Region, SpectralField, build_basis


def test_pointwise_coupling_is_evaluation():
    basis = build_basis(1, 4)
    c = 0.37
    sensor = Sensor(POINTWISE, (c,))
    for j, mode in enumerate(basis.modes, start=1):
        expected = math.sqrt(2.0) * math.sin(j * math.pi * c)
        assert coupling(sensor, mode) == pytest.approx(expected, rel=1e-14)


def test_pointwise_grad_coupling_closed_form():
    basis = build_basis(1, 5)
    c = 0.41
    sensor = Sensor(POINTWISE, (c,))
    for j, mode in enumerate(basis.modes, start=1):
        expected = math.sqrt(2.0) * j * math.pi * math.cos(j * math.pi * c)
        assert grad_coupling(sensor, mode, 0) == pytest.approx(expected, rel=1e-13)


def test_zone_coupling_closed_form():
    # constant distribution on [a, b]: (f, xi_j) = sqrt(2)(cos(j pi a) - cos(j pi b))/(j pi)
    a, b = 0.2, 0.7
    sensor = Sensor(
        ZONE, Region((((a, b),),)), lambda pts: np.ones(pts.shape[0])
    )
    basis = build_basis(1, 6)
    for j, mode in enumerate(basis.modes, start=1):
        expected = math.sqrt(2.0) * (
            math.cos(j * math.pi * a) - math.cos(j * math.pi * b)
        ) / (j * math.pi)
        assert coupling(sensor, mode) == pytest.approx(expected, abs=1e-13)


def test_filament_coupling_selects_first_transverse_mode():
    # sin(pi x2) on {x1 = 1/2}: coupling is sin(j pi / 2) * delta_{k,1}
    sensor = counterexample_sensor()
    basis = build_basis(2, 4)
    for mode in basis.modes:
        j, k = mode.indices
        expected = math.sin(j * math.pi / 2.0) if k == 1 else 0.0
        assert coupling(sensor, mode) == pytest.approx(expected, abs=1e-13)


def test_observe_adjoint_inject_duality():
    # <C y, z>_{R^p} equals <y, C* z>_{L^2} for random states and channels
    basis = build_basis(2, 3)
    suite = SensorSuite(
        (
            Sensor(POINTWISE, (0.31, 0.57)),
            counterexample_sensor(),
        )
    )
    rng = np.random.default_rng(11)
    y = SpectralField(basis, rng.normal(size=len(basis)))
    z = rng.normal(size=len(suite))
    lhs = float(observe(y, suite) @ z)
    rhs = float(y.coefficients @ adjoint_inject(z, suite, basis).coefficients)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_coupling_matrix_consistency():
    basis = build_basis(1, 3)
    suite = SensorSuite((Sensor(POINTWISE, (0.3,)), Sensor(POINTWISE, (0.8,))))
    kappa = coupling_matrix(suite, basis)
    assert kappa.shape == (2, 3)
    for i, sensor in enumerate(suite.sensors):
        for j, mode in enumerate(basis.modes):
            assert kappa[i, j] == coupling(sensor, mode)


def test_bilinear_table_reproduces_bilinear_function():
    x1 = np.linspace(0.0, 1.0, 5)
    x2 = np.linspace(0.0, 1.0, 7)
    values = 2.0 * x1[:, None] + 3.0 * x2[None, :] - x1[:, None] * x2[None, :]
    table = BilinearTable(x1, x2, values)
    rng = np.random.default_rng(5)
    pts = rng.uniform(0.0, 1.0, size=(40, 2))
    expected = 2.0 * pts[:, 0] + 3.0 * pts[:, 1] - pts[:, 0] * pts[:, 1]
    assert np.max(np.abs(table(pts) - expected)) < 1e-13


def test_sensor_validation():
    with pytest.raises(DomainError):
        Sensor("blob", (0.5,))
    with pytest.raises(DomainError):
        Sensor(POINTWISE, (1.5,))
    with pytest.raises(DomainError):
        Sensor(ZONE, Region((((0.0, 1.0),),)))  # missing distribution
    with pytest.raises(DomainError):
        Sensor(FILAMENT, (0.5, 0.5))  # geometry must be a Filament
    with pytest.raises(DomainError):
        Filament(axis=2, interval=(0.0, 1.0), fixed=0.5)
    with pytest.raises(DomainError):
        Filament(axis=0, interval=(0.7, 0.2), fixed=0.5)
    with pytest.raises(DomainError):
        SensorSuite(())


def test_grad_coupling_rejects_bad_axis():
    basis = build_basis(1, 2)
    sensor = Sensor(POINTWISE, (0.4,))
    with pytest.raises(DomainError):
        grad_coupling(sensor, basis.modes[0], 1)


def test_adjoint_inject_channel_count():
    basis = build_basis(1, 2)
    suite = SensorSuite((Sensor(POINTWISE, (0.4,)),))
    with pytest.raises(DomainError):
        adjoint_inject(np.ones(2), suite, basis)
