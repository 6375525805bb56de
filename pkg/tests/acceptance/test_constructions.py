"""End-to-end checks of the construction catalog: regimes, constancy, structure, asymptotics, and meshes."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pytest
from typer.testing import CliRunner

from hrsurf import cli
from hrsurf.ambient import (
    AmbientSpace,
    IsoparametricFamily,
    c_limit,
    delta_hr,
    horosphere_hr0,
    ode_coefficients,
    s_r_constant,
)
from hrsurf.errors import ParameterOutOfRegime
from hrsurf.export import mesh_audit, to_obj
from hrsurf.families import get_family
from hrsurf.ode import solve_regular_at_zero
from hrsurf.profile import ConstructParams, HypersurfaceModel, construct, slab_halfwidth
from hrsurf.verify import verify_constancy, verify_height_estimate

# pylint: disable=redefined-outer-name

runner = CliRunner()

H3_DELTA_4 = math.atanh(0.5)
"""`delta` of `H_1 = 4` in `H^3`."""

HC2_HR0 = horosphere_hr0(AmbientSpace.parse('hfm:C:2'), 2)


def family(space: str, kind: str = 'spheres') -> IsoparametricFamily:
    """Look up an isoparametric family by its space and kind."""
    return get_family(kind, AmbientSpace.parse(space))


def build(
    space: str, kind: str, r: int, hr: float, scenario: str, lam: Optional[float] = None, **params: Any
) -> HypersurfaceModel:
    """Construct a model with the default numerical parameters."""
    return construct(family(space, kind), r, hr, scenario, ConstructParams(lam=lam, **params))


CATALOG = {
    'C1_Sphere': ('hfm:R:3', 'spheres', 1, 4.0, 'sphere', None),
    'C2_EntireGraph': ('hfm:R:3', 'spheres', 1, 1.0, 'entire-graph', None),
    'C3_Delaunay': ('hfm:R:3', 'spheres', 1, 4.0, 'delaunay', H3_DELTA_4 / 2),
    'C4_SymmetricUnboundedAnnulus': ('hfm:R:3', 'spheres', 1, 1.0, 'unbounded-annulus', 1.0),
    'S3-sphere': ('sn:3', 'spheres', 1, 2.0, 'sphere', None),
    'S3-delaunay': ('sn:3', 'spheres', 1, 2.0, 'delaunay', math.pi / 8),
    'Catenoid': ('hfm:R:3', 'spheres', 1, 0.0, 'catenoid', 1.0),
    'MinimalDelaunay': ('sn:3', 'spheres', 1, 0.0, 'minimal-delaunay', math.pi / 4),
    'HorosphereBigraph': ('hfm:C:2', 'horospheres', 2, HC2_HR0 / 2, 'horosphere-bigraph', None),
    'EquidistantBigraph': ('hfm:R:3', 'equidistants', 1, 1.0, 'equidistant-bigraph', math.atanh(0.5) + 0.5),
    'EquidistantAsymptoticGraph': ('hfm:R:3', 'equidistants', 1, 1.0, 'equidistant-graph', None),
    'MinimalEquidistantSlab-0.5': ('hfm:R:3', 'equidistants', 1, 0.0, 'minimal-equidistant', 0.5),
    'MinimalEquidistantAsymptotic': ('hfm:R:3', 'equidistants', 1, 0.0, 'minimal-equidistant', 1.0),
    'MinimalEquidistantSlab-2': ('hfm:R:3', 'equidistants', 1, 0.0, 'minimal-equidistant', 2.0),
    'MinimalParabolicSlab': ('hfm:R:3', 'horospheres', 1, 0.0, 'minimal-parabolic', None),
    'MinimalEntireConstantAngle': ('hfm:R:3', 'horospheres', 3, 0.0, 'constant-angle', 1.0),
    'Cylinder': ('hfm:R:3', 'spheres', 1, 4.0, 'cylinder', None),
}


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             regimes


@pytest.mark.slow
@pytest.mark.parametrize(('space', 'r'), [('hfm:R:3', 1), ('hfm:C:2', 2)])
def test_sphere_regime_gate(space: str, r: int) -> None:
    """Spheres of `H_F^m x R` exist exactly when `H_r > C_F(r)`."""
    spheres = family(space)
    c_f = c_limit(spheres.space, r)

    for hr in np.linspace(0.5 * c_f, 1.5 * c_f, 20):
        if hr > c_f:
            assert 'C1_Sphere' == construct(spheres, r, float(hr), 'sphere').classification
        else:
            with pytest.raises(ParameterOutOfRegime):
                construct(spheres, r, float(hr), 'sphere')


@pytest.mark.parametrize('hr', [0.1, 1.0, 10.0])
def test_round_product_spheres_always_exist(hr: float) -> None:
    """Every `H_r > 0` has a sphere in `S^n x R`."""
    assert 'C1_Sphere' == build('sn:3', 'spheres', 1, hr, 'sphere').classification


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             constancy


@pytest.mark.slow
@pytest.mark.parametrize('label', list(CATALOG))
def test_constancy(label: str) -> None:
    """Every entry of the catalog keeps `H_r` constant within the default tolerances."""
    model = build(*CATALOG[label])

    if not label.startswith('S3-'):
        assert label.split('-')[0] == model.classification
    report = verify_constancy(model)
    assert report.passed, [check.detail for check in report.failures]
    assert report.max_hr_residual <= 1e-8 * max(1.0, abs(model.target_hr))


@pytest.mark.parametrize('label', ['C1_Sphere', 'S3-sphere'])
def test_height_estimate(label: str) -> None:
    """The half-height of the strictly convex spheres is bounded by the inverse least curvature."""
    model = build(*CATALOG[label])
    assert 'strict' == model.convexity
    check = verify_height_estimate(model)
    assert check.passed, check.detail


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             structure


def test_minimal_delaunay_crossings() -> None:
    """The minimal Delaunay annulus of `S^3 x R` with neck `pi/4` bulges at `3 pi/4`."""
    model = build(*CATALOG['MinimalDelaunay'])
    np.testing.assert_allclose((math.pi / 4, 3 * math.pi / 4), model.crossings, rtol=0, atol=1e-10)


@pytest.mark.slow
def test_minimal_delaunay_period_converges() -> None:
    """Doubling the samples leaves the period unchanged."""
    coarse = build(*CATALOG['MinimalDelaunay'], samples=2048)
    fine = build(*CATALOG['MinimalDelaunay'], samples=4096)
    assert coarse.period is not None and fine.period is not None
    assert abs(coarse.period - fine.period) <= 1e-7


def test_delaunay_tangent_signs() -> None:
    """`tau` leaves the neck downward and reaches the bulge upward."""
    model = build(*CATALOG['C3_Delaunay'])
    lam, lam_bar = model.crossings
    coeffs = ode_coefficients(family('hfm:R:3'), 1, 4.0)
    assert coeffs.tau_prime(lam, 1.0) < 0 < coeffs.tau_prime(lam_bar, 1.0)


def test_parabolic_slab_width() -> None:
    """The minimal parabolic slab of `H^3 x R` has half-width `pi r / 2a = pi / 4`."""
    model = build(*CATALOG['MinimalParabolicSlab'])
    assert abs(math.pi / 4 - slab_halfwidth(model)) <= 1e-6


@pytest.mark.parametrize('lam', [1.5, 2.0, 4.0])
def test_equidistant_bigraph_heights(lam: float) -> None:
    """Minimal equidistant bigraphs stay below `pi r / 2(n - r)`."""
    model = build('hfm:R:3', 'equidistants', 1, 0.0, 'minimal-equidistant', lam)
    assert 0 < slab_halfwidth(model) <= math.pi / 4


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             asymptotics


def test_entire_graph_asymptotics() -> None:
    """The entire graph approaches the cylinder over the sphere with `rho = (H_r / C_F(r))^(1/r)`."""
    model = build(*CATALOG['C2_EntireGraph'])
    assert abs(40.0 - model.base.s[-1]) <= 1e-12
    assert abs(0.5 - model.base.rho[-1]) <= 1e-6

    solution = solve_regular_at_zero(ode_coefficients(family('hfm:R:3'), 1, 1.0), 40.0)
    assert abs(solution.rho_prime(40.0)) < 1e-3


def test_equidistant_graph_diverges() -> None:
    """The equidistant graph falls without bound toward the equidistant at `s_r`."""
    model = build(*CATALOG['EquidistantAsymptoticGraph'])
    s_r = s_r_constant(3, 1, 1.0)
    assert abs(s_r + 1e-6 - model.base.s[0]) <= 1e-12
    assert model.base.phi[0] < -5


def test_sphere_delta() -> None:
    """The sphere of `H^3 x R` with `H_1 = 4` is tangent to the leaf of radius `delta`."""
    assert abs(H3_DELTA_4 - delta_hr(family('hfm:R:3'), 1, 4.0)) <= 1e-10


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             meshes and the command line


@pytest.mark.parametrize(
    ('args', 'euler'),
    [(('sn:2', 'spheres', 1, 2.0, 'sphere'), 2), (('hfm:R:2', 'spheres', 1, 0.0, 'catenoid', 1.0), 0)],
    ids=['sphere', 'catenoid'],
)
def test_mesh_audit(args: tuple[Any, ...], euler: int) -> None:
    """Spheres close up, catenoids are annuli, and no triangle degenerates."""
    audit = mesh_audit(to_obj(build(*args)))
    assert euler == audit.euler
    assert audit.min_area > 1e-12


@pytest.mark.slow
@pytest.mark.parametrize('label', ['C1_Sphere', 'C3_Delaunay', 'MinimalParabolicSlab'])
def test_construct_then_verify(label: str, tmp_path: Path) -> None:
    """Profiles written by `construct` pass `verify`."""
    space, kind, r, hr, scenario, lam = CATALOG[label]
    out = tmp_path / f'{scenario}.json'
    args = ['-s', space, '-f', kind, '-r', str(r), '--hr', repr(hr), '--scenario', scenario, '-o', str(out)]
    if lam is not None:
        args += ['-l', repr(lam)]

    constructed = runner.invoke(cli.app, ['construct', *args])
    verified = runner.invoke(cli.app, ['verify', str(out)])

    assert 0 == constructed.exit_code, constructed.stdout
    assert 0 == verified.exit_code, verified.stdout
    assert label == json.loads(out.read_text(encoding='utf-8'))['classification']
