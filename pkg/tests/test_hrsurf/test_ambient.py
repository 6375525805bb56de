"""Test ambient spaces, the family catalog, and the named constants."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from hrsurf.ambient import (
    AmbientSpace,
    IsoparametricFamily,
    c_limit,
    c_limit_exact,
    cr_constant,
    cylinder_radius,
    delta_hr,
    horosphere_hr0,
    invert_leaf_hr,
    leaf_hr,
    ode_coefficients,
    s_r_constant,
    small_s_asymptotics_check,
    sphere_integral,
    unit_derivative,
)
from hrsurf.errors import InvalidSpace, OutOfDomain, OutOfRange, UnsupportedCombination
from hrsurf.families import get_family

HYPERBOLIC_SPACES = (
    [f'hfm:R:{m}' for m in range(2, 17)]
    + [f'hfm:C:{m}' for m in range(1, 9)]
    + [f'hfm:K:{m}' for m in range(1, 5)]
    + ['hfm:O:2']
)


@pytest.mark.parametrize('spec', HYPERBOLIC_SPACES)
def test_c_limit_is_the_far_field_of_leaf_hr(spec: str) -> None:
    """`|H_r^s|` of geodesic spheres approaches `C_F(r)` for every hyperbolic space of dimension at most 16."""
    space = AmbientSpace.parse(spec)
    family = get_family('spheres', space)
    for r in range(1, space.n):
        expected = c_limit(space, r)
        actual = abs(leaf_hr(family, r, 40.0))
        assert abs(expected - actual) <= 1e-12 * expected


@pytest.mark.parametrize('n', range(2, 17))
def test_c_limit_real(n: int) -> None:
    """`C_R(r)` is the binomial coefficient `C(n-1, r)`, and vanishes for `r = n`."""
    space = AmbientSpace.parse(f'hfm:R:{n}')
    for r in range(1, n):
        assert Fraction(math.comb(n - 1, r)) == c_limit_exact(space, r)
    assert 0 == c_limit_exact(space, n)


@pytest.mark.parametrize('m', range(2, 9))
def test_c_limit_complex_top_order(m: int) -> None:
    """`C_C(n-1)` is `1 / 2^(n-2)`."""
    space = AmbientSpace.parse(f'hfm:C:{m}')
    assert Fraction(1, 2 ** (space.n - 2)) == c_limit_exact(space, space.n - 1)


def test_c_limit_needs_a_hyperbolic_space() -> None:
    """`C_F(r)` is undefined on spheres."""
    with pytest.raises(UnsupportedCombination):
        c_limit(AmbientSpace.parse('sn:3'), 1)


@pytest.mark.parametrize(('n', 'r'), [(2, 1), (3, 1), (3, 2), (5, 2), (8, 7)])
def test_cr_constant(n: int, r: int) -> None:
    """`C_r = ((n - r) / n) C(n, r)` equals `C(n-1, r)`."""
    assert math.comb(n - 1, r) == cr_constant(n, r)


def test_cr_constant_range() -> None:
    """`C_r` needs `1 <= r < n`."""
    with pytest.raises(OutOfRange):
        cr_constant(3, 3)


def test_s_r_constant() -> None:
    """The equidistant at `s_r` has `|H_r| = H_r`."""
    family = get_family('equidistants', AmbientSpace.parse('hfm:R:4'))
    s_r = s_r_constant(4, 2, 1.5)
    assert abs(1.5 - abs(leaf_hr(family, 2, s_r))) <= 1e-12
    with pytest.raises(OutOfRange):
        s_r_constant(4, 2, 3.0)


@pytest.mark.parametrize(('n', 'expected'), [(2, 1.0), (3, math.pi / 4), (4, 2 / 3), (5, 3 * math.pi / 16)])
def test_sphere_integral(n: int, expected: float) -> None:
    """`S(n)` follows the Wallis integrals."""
    assert abs(expected - sphere_integral(n)) <= 1e-13


@pytest.mark.parametrize('spec', ['hfm:R:3', 'hfm:C:2', 'hfm:K:2', 'hfm:O:2', 'sn:2', 'sn:5'])
def test_small_radius_expansion(spec: str) -> None:
    """`s^r |H_r^s|` tends to `C(n-1, r)` at the origin."""
    space = AmbientSpace.parse(spec)
    family = get_family('spheres', space)
    for r in range(1, space.n):
        expected = math.comb(space.n - 1, r)
        assert abs(expected - small_s_asymptotics_check(family, r, 1e-4)) <= 1e-6 * expected


def test_delta_hr_inverts_leaf_hr(h3_spheres: IsoparametricFamily) -> None:
    """The geodesic sphere of radius `delta` has `|H_r| = H_r`."""
    delta = delta_hr(h3_spheres, 2, 3.0)
    assert abs(3.0 - abs(leaf_hr(h3_spheres, 2, delta))) <= 1e-10
    assert math.isinf(delta_hr(h3_spheres, 2, 1.0))


def test_delta_hr_sphere(s3_spheres: IsoparametricFamily) -> None:
    """On `S^n`, `delta = arctan((C_r / H_r)^(1/r))`."""
    assert abs(math.atan(2.0 / 3.0) - delta_hr(s3_spheres, 1, 3.0)) <= 1e-15
    with pytest.raises(OutOfRange):
        delta_hr(s3_spheres, 3, 1.0)


def test_delta_hr_needs_spheres(h3_horospheres: IsoparametricFamily) -> None:
    """`delta` is only defined for geodesic spheres."""
    with pytest.raises(UnsupportedCombination):
        delta_hr(h3_horospheres, 1, 3.0)


def test_cylinder_radius(h3_spheres: IsoparametricFamily, h3_equidistants: IsoparametricFamily) -> None:
    """Cylinders sit on the leaf whose `|H_r|` equals the target."""
    assert abs(math.atanh(0.5) - cylinder_radius(h3_spheres, 1, 4.0)) <= 1e-10
    assert s_r_constant(3, 1, 1.0) == cylinder_radius(h3_equidistants, 1, 1.0)
    with pytest.raises(OutOfRange):
        cylinder_radius(h3_spheres, 1, 1.0)


def test_horosphere_hr0() -> None:
    """Horospheres of `H^n` are umbilical with curvature `1`; the others mix `1` and `1/2`."""
    assert 3.0 == horosphere_hr0(AmbientSpace.parse('hfm:R:4'), 2)
    assert 1.25 == horosphere_hr0(AmbientSpace.parse('hfm:C:2'), 2)
    with pytest.raises(UnsupportedCombination):
        horosphere_hr0(AmbientSpace.parse('sn:3'), 1)


def test_unit_derivative(h3_spheres: IsoparametricFamily) -> None:
    """The slope at a vertical tangent vanishes exactly on the cylinder radius."""
    assert abs(unit_derivative(h3_spheres, 1, 4.0, math.atanh(0.5))) <= 1e-12
    with pytest.raises(OutOfDomain):
        unit_derivative(h3_spheres, 1, 4.0, -1.0)


@pytest.mark.parametrize(
    'spec',
    ['hfm:O:3', 'hfm:X:2', 'hfm:R', 'hfm:R:1', 'sn:1', 'sn:two', 'rn:3', '', 'hfm:R:3:1'],
)
def test_parse_rejects(spec: str) -> None:
    """Malformed or nonexistent spaces raise `InvalidSpace`."""
    with pytest.raises(InvalidSpace):
        AmbientSpace.parse(spec)


@pytest.mark.parametrize(
    ('spec', 'n', 'p'), [('hfm:R:5', 5, 4), ('hfm:C:3', 6, 1), ('hfm:K:2', 8, 3), ('hfm:O:2', 16, 7), ('sn:4', 4, 3)]
)
def test_parse(spec: str, n: int, p: int) -> None:
    """The real dimension and the leaf multiplicity follow the division algebra."""
    space = AmbientSpace.parse(spec)
    assert n == space.n
    assert p == space.leaf_multiplicity
    assert spec == str(space)


@pytest.mark.parametrize(
    ('kind', 'spec'),
    [('equidistants', 'hfm:C:2'), ('horospheres', 'sn:3'), ('equidistants', 'sn:3'), ('planes', 'hfm:R:3')],
)
def test_get_family_rejects(kind: str, spec: str) -> None:
    """The catalog has no entry for these combinations."""
    with pytest.raises(UnsupportedCombination):
        get_family(kind, AmbientSpace.parse(spec))


def test_leaf_hr_domain(s3_spheres: IsoparametricFamily) -> None:
    """Leaves outside the family domain do not exist."""
    with pytest.raises(OutOfDomain):
        leaf_hr(s3_spheres, 1, np.array([1.0, math.pi]))


def test_sphere_leaf_sign(s3_spheres: IsoparametricFamily) -> None:
    """Spheres of `S^n` have negative curvature before the equator and positive curvature after it."""
    assert leaf_hr(s3_spheres, 1, 1.0) < 0 < leaf_hr(s3_spheres, 1, 2.0)
    assert abs(leaf_hr(s3_spheres, 1, math.pi / 2)) <= 1e-15


def test_spectrum_is_canonical() -> None:
    """The complex hyperbolic spectrum has one `-coth(s)` and `n-2` copies of `-coth(s/2)/2`."""
    family = get_family('spheres', AmbientSpace.parse('hfm:C:3'))
    spectrum = family.spectrum(1.0)
    assert 5 == spectrum.dimension
    assert [1, 4] == sorted(m for _, m in spectrum)


def test_ode_coefficients_range(h3_spheres: IsoparametricFamily) -> None:
    """`r` lies in `1..n` and `H_r` is non-negative."""
    with pytest.raises(OutOfRange):
        ode_coefficients(h3_spheres, 4, 1.0)
    with pytest.raises(OutOfRange):
        ode_coefficients(h3_spheres, 1, -1.0)


def test_general_and_sign_resolved_coefficients_agree(s3_spheres: IsoparametricFamily) -> None:
    """The cot/tan coefficients of `S^n` equal `a = r H_r / H_{r-1}` and `b = (-1)^(r-1) r H / H_{r-1}`."""
    s = np.linspace(0.1, 1.4, 7)
    for r in (1, 2):
        coeffs = ode_coefficients(s3_spheres, r, 0.75)
        general = IsoparametricFamily.coefficients(s3_spheres, r, 0.75)
        np.testing.assert_allclose(general.a(s), coeffs.a(s), rtol=1e-12)
        np.testing.assert_allclose(general.b(s), coeffs.b(s), rtol=1e-12)


@pytest.mark.parametrize('spec', ['hfm:R:2', 'hfm:R:3', 'hfm:R:5', 'hfm:C:2', 'hfm:C:3', 'hfm:K:2', 'hfm:O:2'])
def test_sphere_coefficients_are_monotone(spec: str) -> None:
    """On geodesic spheres `a` and `b` never decrease, `a < 0` below `r = n`, `a = 0` at `r = n`, and `b = H_1`."""
    family = get_family('spheres', AmbientSpace.parse(spec))
    s = np.geomspace(1e-2, 50.0, 400)
    near = s[:-1] <= 5.0  # noqa: PLR2004
    for r in range(1, family.n + 1):
        coeffs = ode_coefficients(family, r, 1.5)
        a = np.broadcast_to(coeffs.a(s), s.shape)
        b = np.broadcast_to(coeffs.b(s), s.shape)
        da, db = np.diff(a), np.diff(b)

        assert np.all(da >= -1e-12 * (1 + np.abs(a[:-1]))), r
        assert np.all(db >= -1e-12 * (1 + np.abs(b[:-1]))), r
        assert np.all((da + db)[near] > 0), r
        if r < family.n:
            assert np.all(a < 0), r
        else:
            assert np.all(a == 0), r
        if r == 1:
            np.testing.assert_allclose(1.5, b, rtol=1e-15)


@pytest.mark.parametrize('spec', ['hfm:R:3', 'hfm:R:6', 'hfm:C:2', 'hfm:C:4', 'hfm:K:2', 'hfm:O:2'])
def test_far_field_of_the_coefficients(spec: str) -> None:
    """`-b/a` tends to `H_r / C_F(r)` far from the center."""
    space = AmbientSpace.parse(spec)
    family = get_family('spheres', space)
    for r in range(1, space.n):
        coeffs = ode_coefficients(family, r, 2.5)
        ratio = float(-coeffs.b(40.0) / coeffs.a(40.0))
        expected = 2.5 / c_limit(space, r)
        assert abs(expected - ratio) <= 1e-6 * expected, r


def test_invert_leaf_hr(h3_spheres: IsoparametricFamily) -> None:
    """Inverting `|H_1^s| = 2 coth(s)` gives `atanh(2 / H)`."""
    assert abs(math.atanh(0.5) - invert_leaf_hr(h3_spheres, 1, 4.0)) <= 1e-10
