"""Define fixtures for the test suite."""

from __future__ import annotations

from pathlib import Path
from typing import Callable
from unittest import mock

import numpy as np
import pytest
import pytest_mock

from hrsurf import codec
from hrsurf.ambient import AmbientSpace, IsoparametricFamily, OdeCoefficients
from hrsurf.families import get_family
from hrsurf.profile import ConstructParams, HypersurfaceModel, construct

# pylint: disable=redefined-outer-name

ProfileFactory = Callable[..., Path]


def rk4(
    coeffs: OdeCoefficients, s0: float, tau0: float, s_end: float, steps: int = 2000
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate `tau' = a tau + b` from `tau(s0) = tau0` with the classical fourth-order Runge-Kutta scheme."""
    s = np.linspace(s0, s_end, steps + 1)
    h = (s_end - s0) / steps
    tau = np.empty_like(s)
    tau[0] = tau0
    for i in range(steps):
        x, y = s[i], tau[i]
        k1 = coeffs.tau_prime(x, y)
        k2 = coeffs.tau_prime(x + h / 2, y + h * k1 / 2)
        k3 = coeffs.tau_prime(x + h / 2, y + h * k2 / 2)
        k4 = coeffs.tau_prime(x + h, y + h * k3)
        tau[i + 1] = y + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
    return s, tau


@pytest.fixture
def h3_spheres() -> IsoparametricFamily:
    """Geodesic spheres of the real hyperbolic space `H^3`."""
    return get_family('spheres', AmbientSpace.parse('hfm:R:3'))


@pytest.fixture
def s3_spheres() -> IsoparametricFamily:
    """Geodesic spheres of the round sphere `S^3`."""
    return get_family('spheres', AmbientSpace.parse('sn:3'))


@pytest.fixture
def h3_horospheres() -> IsoparametricFamily:
    """Horospheres of `H^3`."""
    return get_family('horospheres', AmbientSpace.parse('hfm:R:3'))


@pytest.fixture
def h3_equidistants() -> IsoparametricFamily:
    """Equidistant hypersurfaces of `H^3`."""
    return get_family('equidistants', AmbientSpace.parse('hfm:R:3'))


@pytest.fixture
def h3_sphere_model(h3_spheres: IsoparametricFamily) -> HypersurfaceModel:
    """The rotational sphere of `H^3 x R` with `H_1 = 4`."""
    return construct(h3_spheres, 1, 4.0, 'sphere')


@pytest.fixture
def profile_file(tmp_path: Path) -> ProfileFactory:
    """Construct a model and write it to a profile file in the temporary directory."""

    def factory(space: str, family: str, r: int, hr: float, scenario: str, **params: float) -> Path:
        model = construct(get_family(family, AmbientSpace.parse(space)), r, hr, scenario, ConstructParams(**params))
        path = tmp_path / f'{scenario}.json'
        path.write_text(codec.dumps('json', codec.model_to_primitives(model)), encoding='utf-8')
        return path

    return factory


@pytest.fixture(autouse=True)
def mock_logging_basic_config(mocker: pytest_mock.MockerFixture) -> mock.MagicMock:
    """Mock the `logging.basicConfig` function."""
    return mocker.patch('logging.basicConfig')
