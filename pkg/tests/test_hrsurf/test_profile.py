"""Test construction and classification of the rotational, parabolic, and hyperbolic models."""

from __future__ import annotations

import math
from typing import Any, Optional

import numpy as np
import pytest
from scipy import optimize

from hrsurf.ambient import AmbientSpace, IsoparametricFamily, RegularAtZero, ValueAt, s_r_constant, unit_at
from hrsurf.errors import OutOfRange, ParameterOutOfRegime, UnsupportedCombination
from hrsurf.families import get_family
from hrsurf.profile import (
    LABELS,
    SCENARIOS,
    ConstructParams,
    classify,
    construct,
    default_initial,
    delaunay_period,
    phi_quadrature,
    sample_grid,
    slab_halfwidth,
)

# pylint: disable=redefined-outer-name


class Circle:
    """The unit circle `phi = 1 - sqrt(1 - s^2)`, whose `rho` is `s`."""

    def rho(self, s: Any) -> Any:
        """`rho = s`."""
        return np.asarray(s, dtype=float)

    def rho_prime(self, s: Any) -> Any:
        """`rho' = 1`."""
        return np.ones_like(np.asarray(s, dtype=float))


def test_phi_through_a_vertical_tangent() -> None:
    """The height integral stays accurate up to the vertical tangent."""
    s = sample_grid(0.0, 1.0, ('AxisPoint', 'VerticalTangent'), 400)
    phi, slope = phi_quadrature(Circle(), s, ('AxisPoint', 'VerticalTangent'))
    np.testing.assert_allclose(1 - np.sqrt(1 - s**2), phi, atol=1e-10)
    assert math.isinf(slope[-1])


def test_sample_grid() -> None:
    """Samples cluster at vertical tangents, and approach a singular point geometrically."""
    grid = sample_grid(0.0, 2.0, ('VerticalTangent', 'VerticalTangent'), 9)
    steps = np.diff(grid)
    assert steps[0] < steps[4] > steps[-1]

    grid = sample_grid(1.001, 5.0, ('Asymptotic', 'Asymptotic'), 10, singular=1.0)
    assert (1.001, 5.0) == (grid[0], grid[-1])
    assert np.all(np.diff(np.diff(grid)) > 0)

    with pytest.raises(OutOfRange):
        sample_grid(0.0, 1.0, ('OpenEnd', 'OpenEnd'), 1)


def test_catalog() -> None:
    """Every scenario has a builder and every label is distinct."""
    assert 13 == len(SCENARIOS)
    assert len(LABELS) == len(set(LABELS))


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             rotational models


def test_sphere(h3_spheres: IsoparametricFamily) -> None:
    """The `H_1 = 4` sphere of `H^3 x R` closes at the analytic crossing and is symmetric about its equator."""
    model = construct(h3_spheres, 1, 4.0, 'sphere')
    s0 = optimize.brentq(lambda s: 2 * (math.sinh(s) * math.cosh(s) - s) - math.sinh(s) ** 2, 0.1, 5.0, xtol=1e-14)

    assert 'C1_Sphere' == model.classification
    assert 'strict' == model.convexity
    assert abs(s0 - model.crossings[0]) <= 1e-9

    base, mirror = (piece.profile for piece in model.pieces)
    assert ('AxisPoint', 'VerticalTangent') == base.endpoints
    assert 0.0 == base.s[0]
    assert 1.0 == base.tau[-1]
    assert np.all(np.diff(base.phi) >= 0)
    assert model.symmetry == base.phi[-1]
    np.testing.assert_allclose(2 * model.symmetry - base.phi, mirror.phi)
    assert 'mirror' == model.pieces[1].placement.kind


@pytest.mark.parametrize(('spec', 'r', 'hr', 'convexity'), [('sn:2', 1, 2.0, 'strict'), ('sn:3', 1, 1.0, 'nonconvex')])
def test_sphere_of_the_round_product(spec: str, r: int, hr: float, convexity: str) -> None:
    """Every `H_r > 0` closes into a sphere in `S^n x R`; small `H_1` leaves past the equator."""
    family = get_family('spheres', AmbientSpace.parse(spec))
    model = construct(family, r, hr, 'sphere')
    assert 'C1_Sphere' == model.classification
    assert convexity == model.convexity
    assert (model.crossings[0] > math.pi / 2) is (convexity == 'nonconvex')


def test_sphere_with_r_above_one_stays_in_the_hemisphere(s3_spheres: IsoparametricFamily) -> None:
    """For `r >= 2` the regular solution of `S^n` reaches `1` before the equator."""
    model = construct(s3_spheres, 2, 1.0, 'sphere')
    assert model.crossings[0] < math.pi / 2
    assert 'strict' == model.convexity


def test_sphere_regime(h3_spheres: IsoparametricFamily) -> None:
    """Below `C_F(r)` no compact sphere exists."""
    with pytest.raises(ParameterOutOfRegime) as exc_info:
        construct(h3_spheres, 1, 2.0, 'sphere')
    assert 'H_r <= C_F(r)' == exc_info.value.inequality


def test_entire_graph(h3_spheres: IsoparametricFamily) -> None:
    """Below `C_F(r)` the regular solution is an entire graph whose `tau` tends to `H_r / C_F(r)`."""
    model = construct(h3_spheres, 1, 1.0, 'entire-graph')
    assert 'C2_EntireGraph' == model.classification
    assert 1 == len(model.pieces)
    assert ('AxisPoint', 'Asymptotic') == model.base.endpoints
    assert abs(0.5 - model.base.tau[-1]) <= 1e-9
    assert np.all(np.diff(model.base.phi) > 0)


@pytest.mark.parametrize(('scenario', 'hr'), [('entire-graph', 3.0), ('entire-graph', 0.0), ('delaunay', 1.0)])
def test_rotational_regimes(h3_spheres: IsoparametricFamily, scenario: str, hr: float) -> None:
    """Each rotational scenario rejects the `H_r` of the other regime."""
    with pytest.raises(ParameterOutOfRegime):
        construct(h3_spheres, 1, hr, scenario, ConstructParams(lam=0.3))


def test_entire_graph_needs_a_hyperbolic_space(s3_spheres: IsoparametricFamily) -> None:
    """In `S^n x R` the regular solution always closes up."""
    with pytest.raises(ParameterOutOfRegime):
        construct(s3_spheres, 1, 1.0, 'entire-graph')


def test_delaunay(h3_spheres: IsoparametricFamily) -> None:
    """The Delaunay annulus oscillates between its neck and its bulge around `delta`."""
    model = construct(h3_spheres, 1, 4.0, 'delaunay', ConstructParams(lam=0.3))
    lam, lam_bar = model.crossings
    assert 'C3_Delaunay' == model.classification
    assert 0.3 == lam
    assert lam < math.atanh(0.5) < lam_bar
    assert ('VerticalTangent', 'VerticalTangent') == model.base.endpoints
    assert model.period == delaunay_period(model) > 0
    assert abs(model.params['delta'] - math.atanh(0.5)) <= 1e-10


@pytest.mark.parametrize(
    ('spec', 'r', 'hr', 'scenario', 'lam'),
    [
        ('hfm:R:3', 1, 4.0, 'sphere', None),
        ('sn:2', 1, 2.0, 'sphere', None),
        ('hfm:R:3', 1, 4.0, 'delaunay', 0.3),
        ('hfm:R:3', 1, 1.0, 'unbounded-annulus', 1.0),
        ('sn:3', 1, 0.0, 'minimal-delaunay', 0.6),
    ],
)
def test_vertical_tangents_glue_smoothly(spec: str, r: int, hr: float, scenario: str, lam: Optional[float]) -> None:
    """At every vertical tangent, the angle function of each piece falls to `0` so mirrored pieces meet `C^1`."""
    family = get_family('spheres', AmbientSpace.parse(spec))
    model = construct(family, r, hr, scenario, ConstructParams(lam=lam))

    ends = 0
    for piece in model.pieces:
        profile = piece.profile
        for index, inner, endpoint in ((0, 1, profile.endpoints[0]), (-1, -2, profile.endpoints[1])):
            if endpoint != 'VerticalTangent':
                continue
            ends += 1
            assert profile.theta[index] <= 1e-5
            assert 0.0 == profile.slope_angle[index]
            assert profile.theta[inner] > profile.theta[index]
    assert ends >= 2  # noqa: PLR2004


def test_delaunay_regime(h3_spheres: IsoparametricFamily) -> None:
    """The neck lies inside the sphere of radius `delta`, and must be given."""
    with pytest.raises(ParameterOutOfRegime) as exc_info:
        construct(h3_spheres, 1, 4.0, 'delaunay', ConstructParams(lam=1.0))
    assert exc_info.value.inequality.startswith('lambda not in (0, delta_Hr')

    with pytest.raises(ParameterOutOfRegime) as exc_info:
        construct(h3_spheres, 1, 4.0, 'delaunay')
    assert 'lambda is unset' == exc_info.value.inequality


def test_minimal_delaunay_is_symmetric_about_the_equator(s3_spheres: IsoparametricFamily) -> None:
    """For `H_1 = 0` on `S^3`, `tau = (sin(lam) / sin(s))^2` returns to `1` at `pi - lam`."""
    model = construct(s3_spheres, 1, 0.0, 'minimal-delaunay', ConstructParams(lam=0.6))
    assert 'MinimalDelaunay' == model.classification
    assert abs(math.pi - 0.6 - model.crossings[1]) <= 1e-10
    assert model.period == delaunay_period(model) > 0

    with pytest.raises(ParameterOutOfRegime):
        construct(s3_spheres, 1, 0.0, 'minimal-delaunay', ConstructParams(lam=2.0))


def test_unbounded_annulus(h3_spheres: IsoparametricFamily) -> None:
    """Below `C_F(r)` a vertical tangent opens into an annulus mirrored through `phi = 0`."""
    model = construct(h3_spheres, 1, 1.0, 'unbounded-annulus', ConstructParams(lam=1.0))
    assert 'C4_SymmetricUnboundedAnnulus' == model.classification
    assert 2 == len(model.pieces)
    assert model.period is None
    assert 0.0 == model.symmetry == model.base.phi[0]
    np.testing.assert_allclose(-model.base.phi, model.pieces[1].profile.phi)
    assert ('VerticalTangent', 'Asymptotic') == model.base.endpoints


def test_catenoid(h3_spheres: IsoparametricFamily) -> None:
    """Catenoids are r-minimal and rise to a bounded height."""
    model = construct(h3_spheres, 1, 0.0, 'catenoid', ConstructParams(lam=1.0))
    assert 'Catenoid' == model.classification
    assert np.all(np.diff(model.base.phi) >= 0)
    assert math.isfinite(model.base.phi[-1])

    with pytest.raises(ParameterOutOfRegime):
        construct(h3_spheres, 1, 1.0, 'catenoid', ConstructParams(lam=1.0))


def test_cylinder(h3_spheres: IsoparametricFamily) -> None:
    """The cylinder sits on the sphere of radius `delta`."""
    model = construct(h3_spheres, 1, 4.0, 'cylinder')
    assert 'Cylinder' == model.classification
    assert abs(math.atanh(0.5) - model.params['radius']) <= 1e-10
    assert model.base.is_degenerate

    with pytest.raises(ParameterOutOfRegime):
        construct(h3_spheres, 1, 1.0, 'cylinder')


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             parabolic and hyperbolic models


def test_horosphere_bigraph(h3_horospheres: IsoparametricFamily) -> None:
    """The bigraph has a vertical tangent on the horosphere `s = 0` and `tau` tends to `H_r` at `-inf`."""
    model = construct(h3_horospheres, 2, 0.5, 'horosphere-bigraph')
    assert 'HorosphereBigraph' == model.classification
    assert (0.0, 1.0) == (model.base.s[-1], model.base.tau[-1])
    assert abs(0.5 - model.base.tau[0]) <= 1e-12


@pytest.mark.parametrize(('r', 'hr', 'inequality'), [(1, 0.5, 'r odd'), (2, 1.0, 'H_r not in (0, H_r^0 = 1)')])
def test_horosphere_bigraph_regime(h3_horospheres: IsoparametricFamily, r: int, hr: float, inequality: str) -> None:
    """Horosphere-type bigraphs need an even `r` and `0 < H_r < H_r^0`."""
    with pytest.raises(ParameterOutOfRegime) as exc_info:
        construct(h3_horospheres, r, hr, 'horosphere-bigraph')
    assert inequality == exc_info.value.inequality


def test_minimal_parabolic_slab(h3_horospheres: IsoparametricFamily) -> None:
    """With `tau = e^(a s)` the half-width of the slab is `r pi / (2 a)`."""
    model = construct(h3_horospheres, 1, 0.0, 'minimal-parabolic')
    assert 'MinimalParabolicSlab' == model.classification
    assert 2.0 == model.params['a']
    assert abs(math.pi / 4 - slab_halfwidth(model)) <= 1e-8
    assert model.slab == slab_halfwidth(model)


def test_constant_angle(h3_horospheres: IsoparametricFamily, h3_equidistants: IsoparametricFamily) -> None:
    """n-minimal graphs have constant slope `lambda`."""
    for family in (h3_horospheres, h3_equidistants):
        model = construct(family, 3, 0.0, 'constant-angle', ConstructParams(lam=0.5))
        assert 'MinimalEntireConstantAngle' == model.classification
        np.testing.assert_allclose(0.5 * model.base.s, model.base.phi, atol=1e-10)
        assert math.isinf(slab_halfwidth(model))

    with pytest.raises(ParameterOutOfRegime):
        construct(h3_horospheres, 2, 0.0, 'constant-angle', ConstructParams(lam=0.5))


def test_equidistant_bigraph(h3_equidistants: IsoparametricFamily) -> None:
    """The bigraph starts beyond the equidistant `s_r` and `tau` tends to `H_r / C_r`."""
    model = construct(h3_equidistants, 1, 1.0, 'equidistant-bigraph', ConstructParams(lam=1.0))
    assert 'EquidistantBigraph' == model.classification
    assert abs(s_r_constant(3, 1, 1.0) - model.params['s_r']) <= 1e-15
    assert abs(0.5 - model.base.tau[-1]) <= 1e-9

    with pytest.raises(ParameterOutOfRegime) as exc_info:
        construct(h3_equidistants, 1, 1.0, 'equidistant-bigraph', ConstructParams(lam=0.3))
    assert exc_info.value.inequality.startswith('lambda <= s_r')


def test_equidistant_graph(h3_equidistants: IsoparametricFamily) -> None:
    """The graph is anchored one unit past `s_r` unless told otherwise."""
    s_r = s_r_constant(3, 1, 1.0)
    model = construct(h3_equidistants, 1, 1.0, 'equidistant-graph')
    assert 'EquidistantAsymptoticGraph' == model.classification
    assert abs(s_r + 1.0 - model.params['anchor']) <= 1e-15
    anchor = int(np.argmin(np.abs(model.base.s - model.params['anchor'])))
    assert 0.0 == model.base.phi[anchor]

    with pytest.raises(ParameterOutOfRegime):
        construct(h3_equidistants, 1, 1.0, 'equidistant-graph', ConstructParams(anchor=0.1))


@pytest.mark.parametrize(
    ('lam', 'label', 'pieces'),
    [(0.5, 'MinimalEquidistantSlab', 1), (2.0, 'MinimalEquidistantSlab', 2), (1.0, 'MinimalEquidistantAsymptotic', 1)],
)
def test_minimal_equidistant(h3_equidistants: IsoparametricFamily, lam: float, label: str, pieces: int) -> None:
    """`tau(0) = lambda` separates the entire slab graphs, the bigraphs, and the asymptotic graph."""
    model = construct(h3_equidistants, 1, 0.0, 'minimal-equidistant', ConstructParams(lam=lam))
    assert label == model.classification
    assert pieces == len(model.pieces)
    if label == 'MinimalEquidistantSlab':
        assert 0 < slab_halfwidth(model) < math.inf
    if lam > 1:
        assert abs(math.acosh(math.sqrt(lam)) - model.crossings[0]) <= 1e-12


def test_unknown_scenarios(h3_spheres: IsoparametricFamily, h3_equidistants: IsoparametricFamily) -> None:
    """Unknown scenarios and scenarios of another family are unsupported."""
    with pytest.raises(UnsupportedCombination):
        construct(h3_spheres, 1, 4.0, 'torus')
    with pytest.raises(UnsupportedCombination):
        construct(h3_equidistants, 1, 4.0, 'sphere')


def test_periods_and_slabs_need_the_right_model(h3_sphere_model: Any) -> None:
    """Only Delaunay-type models have a period, and only slab models a half-width."""
    with pytest.raises(ValueError, match='not periodic'):
        delaunay_period(h3_sphere_model)
    with pytest.raises(ValueError, match='does not lie in a slab'):
        slab_halfwidth(h3_sphere_model)


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             classification

CLASSIFY_CASES = [
    ('hfm:R:3', 'spheres', 1, 4.0, RegularAtZero(), 'C1_Sphere', 'strict'),
    ('hfm:R:3', 'spheres', 1, 1.0, RegularAtZero(), 'C2_EntireGraph', None),
    ('hfm:R:3', 'spheres', 1, 2.0, RegularAtZero(), 'C2_EntireGraph', None),
    ('hfm:R:3', 'spheres', 1, 4.0, unit_at(0.3), 'C3_Delaunay', None),
    ('hfm:R:3', 'spheres', 1, 1.0, unit_at(0.5), 'C4_SymmetricUnboundedAnnulus', None),
    ('hfm:R:3', 'spheres', 1, 4.0, unit_at(math.atanh(0.5)), 'Cylinder', None),
    ('hfm:R:3', 'spheres', 1, 0.0, unit_at(1.0), 'Catenoid', None),
    ('hfm:R:3', 'spheres', 3, 0.0, unit_at(1.0), 'Cylinder', None),
    ('sn:3', 'spheres', 1, 2.0, RegularAtZero(), 'C1_Sphere', 'strict'),
    ('sn:3', 'spheres', 1, 4 / math.pi, RegularAtZero(), 'C1_Sphere', 'convex'),
    ('sn:3', 'spheres', 1, 1.0, RegularAtZero(), 'C1_Sphere', 'nonconvex'),
    ('sn:3', 'spheres', 1, 1.0, unit_at(0.5), 'C3_Delaunay', None),
    ('sn:3', 'spheres', 1, 0.0, unit_at(0.5), 'MinimalDelaunay', None),
    ('hfm:R:3', 'horospheres', 2, 0.5, unit_at(0.0), 'HorosphereBigraph', None),
    ('hfm:R:3', 'horospheres', 2, 1.0, unit_at(0.0), 'Cylinder', None),
    ('hfm:R:3', 'horospheres', 1, 0.0, unit_at(0.0), 'MinimalParabolicSlab', None),
    ('hfm:R:3', 'horospheres', 3, 0.0, unit_at(0.0), 'MinimalEntireConstantAngle', None),
    ('hfm:R:3', 'equidistants', 1, 1.0, unit_at(1.0), 'EquidistantBigraph', None),
    ('hfm:R:3', 'equidistants', 1, 1.0, unit_at(math.atanh(0.5)), 'EquidistantAsymptoticGraph', None),
    ('hfm:R:3', 'equidistants', 1, 0.0, ValueAt(0.0, 0.5), 'MinimalEquidistantSlab', None),
    ('hfm:R:3', 'equidistants', 1, 0.0, ValueAt(0.0, 1.0), 'MinimalEquidistantAsymptotic', None),
    ('hfm:R:3', 'equidistants', 3, 0.0, ValueAt(0.0, 0.5), 'MinimalEntireConstantAngle', None),
]


@pytest.mark.parametrize(('spec', 'kind', 'r', 'hr', 'initial', 'label', 'convexity'), CLASSIFY_CASES)
def test_classify(  # noqa: PLR0913
    spec: str, kind: str, r: int, hr: float, initial: Any, label: str, convexity: Optional[str]
) -> None:
    """Classification follows the regime of `(r, H_r)` and the initial condition."""
    family = get_family(kind, AmbientSpace.parse(spec))
    actual = classify(family, r, hr, initial)
    assert (label, convexity) == actual


def test_classify_regular_minimal(h3_spheres: IsoparametricFamily) -> None:
    """The regular r-minimal solution is a horizontal slice, not a hypersurface of the catalog."""
    with pytest.raises(ParameterOutOfRegime):
        classify(h3_spheres, 1, 0.0, RegularAtZero())


def test_default_initial_conditions(
    h3_spheres: IsoparametricFamily, h3_horospheres: IsoparametricFamily, h3_equidistants: IsoparametricFamily
) -> None:
    """Each family has its own distinguished solution."""
    assert RegularAtZero() == default_initial(h3_spheres, 1, 4.0)
    assert ValueAt(0.0, 1.0) == default_initial(h3_horospheres, 2, 0.5)
    assert ValueAt(0.0, 1.0) == default_initial(h3_equidistants, 1, 0.0)
    assert ValueAt(s_r_constant(3, 1, 1.0), 1.0) == default_initial(h3_equidistants, 1, 1.0)
    graph = classify(h3_equidistants, 1, 1.0, default_initial(h3_equidistants, 1, 1.0))
    assert 'EquidistantAsymptoticGraph' == graph.label
