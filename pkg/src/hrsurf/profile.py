"""Turn solutions of the `tau` ODE into sampled profile curves and glued hypersurface models.

A graph over an isoparametric family is `(f_s(p), phi(s))`; with `rho = tau^(1/r)` its height is

    phi(s) = int rho / sqrt(1 - rho^2) ds,

which is improper wherever `rho` reaches `1` (a vertical tangent). `construct()` builds one scenario: it solves the
ODE, finds the radii where `tau = 1`, samples the profile, integrates the height, and glues reflected copies.

>>> from hrsurf.ambient import AmbientSpace
>>> from hrsurf.families import get_family
>>> family = get_family('spheres', AmbientSpace.parse('hfm:R:3'))
>>> classify(family, 1, 4.0, RegularAtZero())
Classification(label='C1_Sphere', convexity='strict')
>>> classify(family, 1, 1.0, ValueAt(0.5)).label
'C4_SymmetricUnboundedAnnulus'
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing
import warnings
from typing import Any, Callable, Dict, Literal, Mapping, NamedTuple, Optional, Protocol, Tuple, Union

import numpy as np
from scipy import optimize

from hrsurf.ambient import (
    InitialCondition,
    IsoparametricFamily,
    OdeCoefficients,
    RegularAtZero,
    ValueAt,
    c_limit,
    cr_constant,
    cylinder_radius,
    delta_hr,
    horosphere_hr0,
    ode_coefficients,
    s_r_constant,
    sphere_integral,
)
from hrsurf.errors import (
    DivergentEndpoint,
    NoBracket,
    OutOfRange,
    ParameterOutOfRegime,
    UnsupportedCombination,
)
from hrsurf.ode import TauSolution, scan_crossing, solve_initial, solve_regular_at_zero
from hrsurf.quadrature import gauss_legendre, integrate_panels

__all__ = [
    'LABELS',
    'SCENARIOS',
    'Classification',
    'ConstructParams',
    'ConvexityT',
    'EndpointT',
    'HypersurfaceModel',
    'LabelT',
    'Piece',
    'Placement',
    'ProfileCurve',
    'ScenarioT',
    'classify',
    'construct',
    'default_initial',
    'delaunay_period',
    'phi_quadrature',
    'sample_grid',
    'slab_halfwidth',
    'sphere_convexity',
]

logger = logging.getLogger(__name__)

EndpointT = Literal['AxisPoint', 'VerticalTangent', 'Asymptotic', 'OpenEnd']
"""How a profile ends: on the rotation axis, with a vertical tangent, asymptotically, or truncated."""

LabelT = Literal[
    'C1_Sphere',
    'C2_EntireGraph',
    'C3_Delaunay',
    'C4_SymmetricUnboundedAnnulus',
    'Catenoid',
    'MinimalDelaunay',
    'HorosphereBigraph',
    'EquidistantBigraph',
    'EquidistantAsymptoticGraph',
    'MinimalEquidistantSlab',
    'MinimalEquidistantAsymptotic',
    'MinimalEntireConstantAngle',
    'MinimalParabolicSlab',
    'Cylinder',
]
"""The classification of a constructed hypersurface."""

ScenarioT = Literal[
    'sphere',
    'entire-graph',
    'delaunay',
    'unbounded-annulus',
    'catenoid',
    'minimal-delaunay',
    'horosphere-bigraph',
    'equidistant-bigraph',
    'equidistant-graph',
    'minimal-equidistant',
    'minimal-parabolic',
    'constant-angle',
    'cylinder',
]
"""The constructions understood by `construct()`."""

ConvexityT = Literal['strict', 'convex', 'nonconvex']

LABELS: tuple[LabelT, ...] = typing.get_args(LabelT)

THETA_SWITCH = 0.999
"""Panels next to a vertical tangent where `rho` exceeds this are integrated in `theta = arcsin(rho)`."""

SINGULAR_OFFSET = 1e-6
"""Profiles with a divergent height stop this far from the singular radius."""

PHI_ORDER = 8
VERTICAL_SLOPE_FLOOR = 1e-9
EDGE_SLACK = 1e-9


class RhoFunction(Protocol):
    """Anything exposing `rho` and `rho'` as vectorized functions of `s` (e.g. `hrsurf.ode.TauSolution`)."""

    def rho(self, s: Any) -> Any:
        """Evaluate `rho(s)`."""

    def rho_prime(self, s: Any) -> Any:
        """Evaluate `rho'(s)`."""


@dataclasses.dataclass(frozen=True, eq=False)
class ProfileCurve:
    """A sampled profile curve `s -> (tau, rho, phi, phi')`, increasing in `s`."""

    s: np.ndarray
    tau: np.ndarray
    rho: np.ndarray
    phi: np.ndarray
    phi_prime: np.ndarray
    """`rho / sqrt(1 - rho^2)`; infinite at vertical tangents, negated on mirror pieces."""

    endpoints: Tuple[EndpointT, EndpointT]
    r: int
    target_hr: float
    family: IsoparametricFamily

    def __len__(self) -> int:
        """The number of samples."""
        return len(self.s)

    @property
    def theta(self) -> np.ndarray:
        """The angle function `sqrt(1 - rho^2)` from the `rho` samples."""
        return typing.cast(np.ndarray, np.sqrt(np.clip(1.0 - self.rho**2, 0.0, None)))

    @property
    def slope_angle(self) -> np.ndarray:
        """The angle function `1 / sqrt(1 + phi'^2)` from the height slope."""
        with np.errstate(over='ignore'):
            return typing.cast(np.ndarray, 1.0 / np.sqrt(1.0 + self.phi_prime**2))

    @property
    def is_degenerate(self) -> bool:
        """Whether every sample sits on the same leaf (cylinders)."""
        return bool(np.all(self.s == self.s[0]))

    def reflected(self, height: float) -> ProfileCurve:
        """Reflect through the horizontal slice at `height`."""
        return dataclasses.replace(self, phi=2 * height - self.phi, phi_prime=-self.phi_prime)


@dataclasses.dataclass(frozen=True)
class Placement:
    """How a piece sits in `M x R`."""

    kind: Literal['base', 'mirror'] = 'base'
    height: float = 0.0
    """For mirror pieces, the height of the reflecting slice."""


class Piece(NamedTuple):
    """A profile curve with its placement."""

    profile: ProfileCurve
    placement: Placement


@dataclasses.dataclass(frozen=True, eq=False)
class HypersurfaceModel:
    """The glued profile pieces of one hypersurface, its classification, and its symmetry data."""

    family: IsoparametricFamily
    r: int
    target_hr: float
    scenario: ScenarioT
    classification: LabelT
    pieces: Tuple[Piece, ...]
    convexity: Optional[ConvexityT] = None
    symmetry: Optional[float] = None
    """Height of the horizontal slice of reflection symmetry."""

    period: Optional[float] = None
    """Vertical period of Delaunay-type annuli; the copies are implied, not stored."""

    slab: Optional[float] = None
    """Half-width `alpha` of the slab `|z| < alpha` containing the hypersurface."""

    crossings: Tuple[float, ...] = ()
    """Radii where `tau = 1`."""

    params: Mapping[str, Any] = dataclasses.field(default_factory=dict)

    @property
    def space(self) -> Any:
        """The ambient space."""
        return self.family.space

    @property
    def base(self) -> ProfileCurve:
        """The fundamental piece."""
        return self.pieces[0].profile


@dataclasses.dataclass(frozen=True)
class ConstructParams:
    """Numerical and geometric parameters of a construction."""

    lam: Optional[float] = None
    """The scenario parameter: a unit radius, `tau(0)` for r-minimal equidistants, or the constant slope."""

    anchor: Optional[float] = None
    """Where `phi = 0` for profiles with a divergent end."""

    samples: int = 2048
    s_max: float = 40.0
    panel_width: float = 0.05
    gauss_order: int = 12
    anchor_offset: float = 1.0


class Classification(NamedTuple):
    """A classification label and, for spheres of `S^n`, their convexity."""

    label: LabelT
    convexity: Optional[ConvexityT] = None


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             sampling and height


def sample_grid(
    lo: float, hi: float, endpoints: Tuple[EndpointT, EndpointT], samples: int, *, singular: Optional[float] = None
) -> np.ndarray:
    """Return `samples` increasing radii on `[lo, hi]`, clustered toward vertical-tangent ends.

    With `singular`, the radii approach that point geometrically instead (`lo` is then its offset start):

    >>> grid = sample_grid(0.0, 1.0, ('AxisPoint', 'VerticalTangent'), 5)
    >>> float(grid[0]), float(grid[-1]), bool(grid[-1] - grid[-2] < grid[1] - grid[0])
    (0.0, 1.0, True)
    """
    if samples < 2:  # noqa: PLR2004
        raise OutOfRange(f'at least 2 samples are needed: {samples}')

    t = np.linspace(0.0, 1.0, samples)
    if singular is not None:
        offset = lo - singular
        grid = singular + offset * ((hi - singular) / offset) ** t
    else:
        dense_lo, dense_hi = (end == 'VerticalTangent' for end in endpoints)
        if dense_lo and dense_hi:
            u = (1 - np.cos(np.pi * t)) / 2
        elif dense_hi:
            u = np.sin(np.pi * t / 2)
        elif dense_lo:
            u = 1 - np.cos(np.pi * t / 2)
        else:
            u = t
        grid = lo + (hi - lo) * u

    grid[0], grid[-1] = lo, hi
    return grid


def phi_quadrature(
    curve: RhoFunction,
    s: np.ndarray,
    endpoints: Tuple[EndpointT, EndpointT],
    *,
    anchor_index: int = 0,
    order: int = PHI_ORDER,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate the height `phi` over the sample radii `s`, with `phi(s[anchor_index]) = 0`.

    Each gap between samples is a Gauss–Legendre panel in `s`, except the run of panels next to a vertical-tangent
    end where `rho > THETA_SWITCH`: those are integrated in `theta = arcsin(rho)` as `sin(theta) / rho'(s(theta))`,
    which stays bounded when `rho'` does not vanish at the end.

    A constant `rho = c` gives `phi = s c / sqrt(1 - c^2)`:

    >>> class Flat:
    ...     def rho(self, s): return np.full_like(np.asarray(s, dtype=float), 0.6)
    ...     def rho_prime(self, s): return np.zeros_like(np.asarray(s, dtype=float))
    >>> phi, slope = phi_quadrature(Flat(), np.linspace(0.0, 2.0, 5), ('OpenEnd', 'OpenEnd'))
    >>> round(float(phi[-1]), 12), round(float(slope[0]), 12)
    (1.5, 0.75)

    Returns:
        tuple[numpy.ndarray, numpy.ndarray]: the heights and slopes `phi'` at `s`
    """
    s = np.asarray(s, dtype=float)
    rho = _rho_samples(curve, s, endpoints)

    vertical = [k for k, end in ((0, endpoints[0]), (-1, endpoints[1])) if end == 'VerticalTangent']
    for k in vertical:
        slope = float(np.asarray(curve.rho_prime(s[k])))
        if abs(slope) <= VERTICAL_SLOPE_FLOOR:
            raise DivergentEndpoint(f"rho' = {slope:g} at the vertical tangent s = {s[k]:g}: the height diverges")

    theta_panels = _theta_panels(rho, endpoints)
    increments = np.zeros(len(s) - 1)
    plain = ~theta_panels
    if plain.any():
        increments[plain] = integrate_panels(lambda u: _slope(curve.rho(u)), s[:-1][plain], s[1:][plain], order)
    if theta_panels.any():
        k = np.nonzero(theta_panels)[0]
        increments[k] = _theta_increments(curve, s[k], s[k + 1], rho[k], rho[k + 1], order)
        logger.debug('%d panels integrated in theta', len(k))

    phi = np.concatenate([[0.0], np.cumsum(increments)])
    phi -= phi[anchor_index]
    return phi, _slope(rho)


def _rho_samples(curve: RhoFunction, s: np.ndarray, endpoints: Tuple[EndpointT, EndpointT]) -> np.ndarray:
    rho = np.clip(np.asarray(curve.rho(s), dtype=float), 0.0, 1.0)
    if endpoints[0] == 'VerticalTangent':
        rho[0] = 1.0
    if endpoints[1] == 'VerticalTangent':
        rho[-1] = 1.0
    return rho


def _slope(rho: Any) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        gap = np.sqrt(np.clip(1.0 - rho**2, 0.0, None))
        return np.where(gap > 0, rho / np.where(gap > 0, gap, 1.0), np.inf)


def _theta_panels(rho: np.ndarray, endpoints: Tuple[EndpointT, EndpointT]) -> np.ndarray:
    """Mark the contiguous runs of near-vertical panels touching vertical-tangent ends."""
    near = np.maximum(rho[:-1], rho[1:]) > THETA_SWITCH
    mask = np.zeros_like(near)
    if endpoints[0] == 'VerticalTangent':
        run = np.argmin(near) if not near.all() else len(near)
        mask[:run] = True
    if endpoints[1] == 'VerticalTangent':
        run = np.argmin(near[::-1]) if not near.all() else len(near)
        mask[len(near) - run :] = True
    return mask


def _theta_increments(
    curve: RhoFunction, lo: np.ndarray, hi: np.ndarray, rho_lo: np.ndarray, rho_hi: np.ndarray, order: int
) -> np.ndarray:
    theta_lo, theta_hi = np.arcsin(rho_lo), np.arcsin(rho_hi)
    nodes, weights = gauss_legendre(order)
    half = (theta_hi - theta_lo)[:, np.newaxis] / 2
    theta = theta_lo[:, np.newaxis] + half * (nodes + 1)

    a = np.broadcast_to(np.minimum(lo, hi)[:, np.newaxis], theta.shape)
    b = np.broadcast_to(np.maximum(lo, hi)[:, np.newaxis], theta.shape)
    fraction = np.divide((theta - theta_lo[:, np.newaxis]), 2 * half, out=np.full_like(theta, 0.5), where=half != 0)
    guess = lo[:, np.newaxis] + fraction * (hi - lo)[:, np.newaxis]
    target = np.sin(theta)

    with warnings.catch_warnings():
        warnings.simplefilter('ignore', RuntimeWarning)
        radius = optimize.newton(
            lambda x: np.asarray(curve.rho(np.clip(x, a, b))) - target,
            guess,
            fprime=lambda x: np.asarray(curve.rho_prime(np.clip(x, a, b))),
            tol=1e-15,
            maxiter=50,
            disp=False,
        )
    radius = np.clip(radius, a, b)
    integrand = target / np.asarray(curve.rho_prime(radius))
    return typing.cast(np.ndarray, (integrand * half * weights).sum(axis=-1))


def _anchored(s: np.ndarray, anchor: float) -> tuple[np.ndarray, int]:
    """Move the sample nearest to `anchor` onto it; ends stay put."""
    k = int(np.argmin(np.abs(s - anchor)))
    if s[k] == anchor:
        return s, k
    k = min(max(k, 1), len(s) - 2)
    s = s.copy()
    s[k] = anchor
    return s, k


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             scenarios


@dataclasses.dataclass(frozen=True)
class _Job:
    family: IsoparametricFamily
    r: int
    hr: float
    params: ConstructParams
    coeffs: OdeCoefficients

    @property
    def lam(self) -> float:
        if self.params.lam is None:
            raise ParameterOutOfRegime('lambda is unset', 'this scenario is parametrized by --lambda')
        return float(self.params.lam)

    @property
    def upper(self) -> float:
        """The far end of integration: `s_max`, or just short of a finite end of the coefficient domain."""
        dom_hi = self.coeffs.domain[1]
        return self.params.s_max if math.isinf(dom_hi) else min(self.params.s_max, dom_hi - EDGE_SLACK)

    def solve(self, s0: float, tau0: float, lo: float, hi: float) -> TauSolution:
        return solve_initial(
            self.coeffs, s0, tau0, (lo, hi), width=self.params.panel_width, order=self.params.gauss_order
        )

    def regular(self) -> TauSolution:
        return solve_regular_at_zero(
            self.coeffs, self.upper, width=self.params.panel_width, order=self.params.gauss_order
        )

    def profile(
        self,
        solution: TauSolution,
        lo: float,
        hi: float,
        endpoints: Tuple[EndpointT, EndpointT],
        *,
        anchor: Optional[float] = None,
        singular: Optional[float] = None,
    ) -> ProfileCurve:
        s = sample_grid(lo, hi, endpoints, self.params.samples, singular=singular)
        index = 0
        if anchor is not None:
            s, index = _anchored(s, anchor)

        phi, phi_prime = phi_quadrature(solution, s, endpoints, anchor_index=index)
        tau = np.array(solution.eval(s), dtype=float)
        if endpoints[0] == 'VerticalTangent':
            tau[0] = 1.0
        if endpoints[1] == 'VerticalTangent':
            tau[-1] = 1.0
        rho = np.clip(tau, 0.0, None) ** (1 / self.r)
        logger.debug('profile on [%g, %g] with ends %s', lo, hi, endpoints)
        return ProfileCurve(s, tau, rho, phi, phi_prime, endpoints, self.r, self.hr, self.family)

    def model(self, scenario: ScenarioT, label: LabelT, pieces: Tuple[Piece, ...], **kwargs: Any) -> HypersurfaceModel:
        params = {key: value for key, value in dataclasses.asdict(self.params).items() if value is not None}
        params.update(kwargs.pop('params', {}))
        return HypersurfaceModel(self.family, self.r, self.hr, scenario, label, pieces, params=params, **kwargs)


def _mirrored(profile: ProfileCurve, height: float) -> Tuple[Piece, ...]:
    return (Piece(profile, Placement()), Piece(profile.reflected(height), Placement('mirror', height)))


def _require(family: IsoparametricFamily, *kinds: str, space: Optional[str] = None) -> None:
    if family.kind not in kinds or (space and family.space.kind != space):
        raise UnsupportedCombination(f'this scenario is not defined for {family}')


def _build_sphere(job: _Job) -> HypersurfaceModel:
    family, r, hr = job.family, job.r, job.hr
    _require(family, 'spheres')
    if hr <= 0:
        raise ParameterOutOfRegime('H_r <= 0', 'spheres need a positive H_r')
    convexity: Optional[ConvexityT] = 'strict'
    if family.space.kind == 'hyperbolic':
        c = c_limit(family.space, r)
        if hr <= c:
            raise ParameterOutOfRegime('H_r <= C_F(r)', f'no compact sphere exists (C_F({r}) = {c:g})')
    else:
        convexity = sphere_convexity(family.n, r, hr)

    solution = job.regular()
    try:
        s0 = scan_crossing(solution, 1.0, 0.0, job.upper)
    except NoBracket as exc:
        raise ParameterOutOfRegime('s_0 > s_max', f'tau stays below 1 up to s_max = {job.upper:g}') from exc

    profile = job.profile(solution, 0.0, s0, ('AxisPoint', 'VerticalTangent'))
    height = float(profile.phi[-1])
    return job.model(
        'sphere',
        'C1_Sphere',
        _mirrored(profile, height),
        convexity=convexity,
        symmetry=height,
        crossings=(s0,),
        params={'s0': s0},
    )


def _build_entire_graph(job: _Job) -> HypersurfaceModel:
    family, r, hr = job.family, job.r, job.hr
    _require(family, 'spheres')
    if family.space.kind == 'sphere':
        raise ParameterOutOfRegime('M = S^n', 'every rotational H_r-graph of S^n x R closes up into a sphere')
    if hr <= 0 or r >= family.n:
        raise ParameterOutOfRegime('H_r <= 0 or r = n', 'entire graphs need 0 < H_r <= C_F(r) and r < n')
    c = c_limit(family.space, r)
    if hr > c:
        raise ParameterOutOfRegime('H_r > C_F(r)', f'the graph closes up into a sphere (C_F({r}) = {c:g})')

    solution = job.regular()
    profile = job.profile(solution, 0.0, job.upper, ('AxisPoint', 'Asymptotic'))
    return job.model('entire-graph', 'C2_EntireGraph', (Piece(profile, Placement()),))


def _build_delaunay(job: _Job) -> HypersurfaceModel:
    family, r, hr = job.family, job.r, job.hr
    _require(family, 'spheres')
    if hr <= 0 or r >= family.n:
        raise ParameterOutOfRegime('H_r <= 0 or r = n', 'Delaunay-type annuli need H_r > 0 and r < n')
    delta = delta_hr(family, r, hr)
    if math.isinf(delta):
        raise ParameterOutOfRegime('H_r <= C_F(r)', 'the annulus is not periodic; see unbounded-annulus')
    lam = job.lam
    if not 0 < lam < delta:
        raise ParameterOutOfRegime(f'lambda not in (0, delta_Hr = {delta:g})', 'no Delaunay-type annulus')

    solution = job.solve(lam, 1.0, lam, job.upper)
    lam_bar = scan_crossing(solution, 1.0, lam, job.upper, start_off=True)
    profile = job.profile(solution, lam, lam_bar, ('VerticalTangent', 'VerticalTangent'))
    height = float(profile.phi[-1])
    return job.model(
        'delaunay',
        'C3_Delaunay',
        _mirrored(profile, height),
        symmetry=height,
        period=2 * (height - float(profile.phi[0])),
        crossings=(lam, lam_bar),
        params={'delta': delta},
    )


def _build_unbounded_annulus(job: _Job) -> HypersurfaceModel:
    family, r, hr = job.family, job.r, job.hr
    _require(family, 'spheres', space='hyperbolic')
    if hr <= 0 or r >= family.n:
        raise ParameterOutOfRegime('H_r <= 0 or r = n', 'unbounded annuli need H_r > 0 and r < n')
    c = c_limit(family.space, r)
    if hr > c:
        raise ParameterOutOfRegime('H_r > C_F(r)', f'the annulus is periodic (C_F({r}) = {c:g}); see delaunay')
    lam = job.lam
    if lam <= 0:
        raise ParameterOutOfRegime('lambda <= 0', 'the neck radius must be positive')

    solution = job.solve(lam, 1.0, lam, job.upper)
    profile = job.profile(solution, lam, job.upper, ('VerticalTangent', 'Asymptotic'))
    return job.model(
        'unbounded-annulus', 'C4_SymmetricUnboundedAnnulus', _mirrored(profile, 0.0), symmetry=0.0, crossings=(lam,)
    )


def _build_catenoid(job: _Job) -> HypersurfaceModel:
    family, r = job.family, job.r
    _require(family, 'spheres', space='hyperbolic')
    if job.hr != 0:
        raise ParameterOutOfRegime('H_r != 0', 'catenoids are r-minimal')
    if r >= family.n:
        raise ParameterOutOfRegime('r = n', 'rotational n-minimal hypersurfaces are cylinders; see cylinder')
    lam = job.lam
    if lam <= 0:
        raise ParameterOutOfRegime('lambda <= 0', 'the neck radius must be positive')

    solution = job.solve(lam, 1.0, lam, job.upper)
    profile = job.profile(solution, lam, job.upper, ('VerticalTangent', 'Asymptotic'))
    return job.model('catenoid', 'Catenoid', _mirrored(profile, 0.0), symmetry=0.0, crossings=(lam,))


def _build_minimal_delaunay(job: _Job) -> HypersurfaceModel:
    family, r = job.family, job.r
    _require(family, 'spheres', space='sphere')
    if job.hr != 0:
        raise ParameterOutOfRegime('H_r != 0', 'see delaunay for H_r > 0')
    if r >= family.n:
        raise ParameterOutOfRegime('r = n', 'rotational n-minimal hypersurfaces are cylinders; see cylinder')
    lam = job.lam
    if not 0 < lam < math.pi / 2:
        raise ParameterOutOfRegime('lambda not in (0, pi/2)', 'no r-minimal Delaunay-type annulus')

    hi = math.pi - SINGULAR_OFFSET
    solution = job.solve(lam, 1.0, lam, hi)
    lam_bar = scan_crossing(solution, 1.0, lam, hi, start_off=True)
    profile = job.profile(solution, lam, lam_bar, ('VerticalTangent', 'VerticalTangent'))
    height = float(profile.phi[-1])
    return job.model(
        'minimal-delaunay',
        'MinimalDelaunay',
        _mirrored(profile, height),
        symmetry=height,
        period=2 * (height - float(profile.phi[0])),
        crossings=(lam, lam_bar),
    )


def _build_horosphere_bigraph(job: _Job) -> HypersurfaceModel:
    family, r, hr = job.family, job.r, job.hr
    _require(family, 'horospheres')
    if r % 2:
        raise ParameterOutOfRegime('r odd', 'horosphere-type H_r-hypersurfaces exist only for even r')
    if r >= family.n:
        raise ParameterOutOfRegime('r >= n', 'horosphere-type H_r-hypersurfaces need r <= n-1')
    h0 = horosphere_hr0(family.space, r)
    if not 0 < hr < h0:
        raise ParameterOutOfRegime(f'H_r not in (0, H_r^0 = {h0:g})', 'no horosphere-type bigraph')

    solution = job.solve(0.0, 1.0, -job.params.s_max, 0.0)
    profile = job.profile(solution, -job.params.s_max, 0.0, ('Asymptotic', 'VerticalTangent'), anchor=0.0)
    return job.model(
        'horosphere-bigraph', 'HorosphereBigraph', _mirrored(profile, 0.0), symmetry=0.0, crossings=(0.0,)
    )


def _equidistant_regime(job: _Job) -> float:
    family, r, hr = job.family, job.r, job.hr
    _require(family, 'equidistants')
    if r >= family.n:
        raise ParameterOutOfRegime('r = n', 'equidistant-type H_r-hypersurfaces need r < n')
    c_r = float(cr_constant(family.n, r))
    if not 0 < hr < c_r:
        raise ParameterOutOfRegime(f'H_r not in (0, C_r = {c_r:g})', 'no equidistant-type H_r-hypersurface')
    return s_r_constant(family.n, r, hr)


def _build_equidistant_bigraph(job: _Job) -> HypersurfaceModel:
    s_r = _equidistant_regime(job)
    lam = job.lam
    if lam <= s_r:
        raise ParameterOutOfRegime(f'lambda <= s_r = {s_r:g}', 'the bigraph starts beyond s_r')

    solution = job.solve(lam, 1.0, lam, job.upper)
    profile = job.profile(solution, lam, job.upper, ('VerticalTangent', 'Asymptotic'))
    return job.model(
        'equidistant-bigraph',
        'EquidistantBigraph',
        _mirrored(profile, 0.0),
        symmetry=0.0,
        crossings=(lam,),
        params={'s_r': s_r},
    )


def _build_equidistant_graph(job: _Job) -> HypersurfaceModel:
    s_r = _equidistant_regime(job)
    anchor = job.params.anchor if job.params.anchor is not None else s_r + job.params.anchor_offset
    if not s_r + SINGULAR_OFFSET < anchor < job.upper:
        raise ParameterOutOfRegime(f'anchor not in (s_r, s_max) = ({s_r:g}, {job.upper:g})', 'misplaced anchor')

    solution = job.solve(s_r, 1.0, s_r, job.upper)
    profile = job.profile(
        solution, s_r + SINGULAR_OFFSET, job.upper, ('Asymptotic', 'Asymptotic'), anchor=anchor, singular=s_r
    )
    logger.info('height diverges toward s_r = %g; profile truncated at s_r + %g', s_r, SINGULAR_OFFSET)
    return job.model(
        'equidistant-graph',
        'EquidistantAsymptoticGraph',
        (Piece(profile, Placement()),),
        crossings=(s_r,),
        params={'s_r': s_r, 'anchor': anchor},
    )


def _build_minimal_equidistant(job: _Job) -> HypersurfaceModel:
    family, r = job.family, job.r
    _require(family, 'equidistants')
    if job.hr != 0:
        raise ParameterOutOfRegime('H_r != 0', 'see equidistant-bigraph for H_r > 0')
    if r >= family.n:
        raise ParameterOutOfRegime('r = n', 'n-minimal translation graphs have constant angle; see constant-angle')
    lam, s_max = job.lam, job.params.s_max
    if lam <= 0:
        raise ParameterOutOfRegime('lambda <= 0', 'tau(0) = lambda must be positive')

    if math.isclose(lam, 1.0, rel_tol=0.0, abs_tol=1e-12):
        solution = job.solve(0.0, 1.0, 0.0, s_max)
        anchor = job.params.anchor if job.params.anchor is not None else job.params.anchor_offset
        profile = job.profile(
            solution, SINGULAR_OFFSET, s_max, ('Asymptotic', 'Asymptotic'), anchor=anchor, singular=0.0
        )
        logger.info('height diverges toward E_0; profile truncated at s = %g', SINGULAR_OFFSET)
        return job.model(
            'minimal-equidistant',
            'MinimalEquidistantAsymptotic',
            (Piece(profile, Placement()),),
            params={'anchor': anchor},
        )

    if lam > 1:
        s_lam = float(np.arccosh(lam ** (1 / (family.n - r))))
        solution = job.solve(s_lam, 1.0, s_lam, s_max)
        profile = job.profile(solution, s_lam, s_max, ('VerticalTangent', 'Asymptotic'))
        pieces = _mirrored(profile, 0.0)
        crossings: Tuple[float, ...] = (s_lam,)
    else:
        solution = job.solve(0.0, lam, -s_max, s_max)
        profile = job.profile(solution, -s_max, s_max, ('Asymptotic', 'Asymptotic'), anchor=0.0)
        pieces = (Piece(profile, Placement()),)
        crossings = ()

    slab = max(float(np.max(np.abs(piece.profile.phi))) for piece in pieces)
    return job.model(
        'minimal-equidistant', 'MinimalEquidistantSlab', pieces, symmetry=0.0, slab=slab, crossings=crossings
    )


def _build_minimal_parabolic(job: _Job) -> HypersurfaceModel:
    family, r = job.family, job.r
    _require(family, 'horospheres')
    if job.hr != 0:
        raise ParameterOutOfRegime('H_r != 0', 'see horosphere-bigraph for H_r > 0')
    if r >= family.n:
        raise ParameterOutOfRegime('r = n', 'n-minimal parabolic graphs have constant angle; see constant-angle')

    solution = job.solve(0.0, 1.0, -job.params.s_max, 0.0)
    profile = job.profile(solution, -job.params.s_max, 0.0, ('Asymptotic', 'VerticalTangent'), anchor=0.0)
    slab = float(np.max(np.abs(profile.phi)))
    return job.model(
        'minimal-parabolic',
        'MinimalParabolicSlab',
        _mirrored(profile, 0.0),
        symmetry=0.0,
        slab=slab,
        crossings=(0.0,),
        params={'a': float(job.coeffs.a(0.0))},
    )


def _build_constant_angle(job: _Job) -> HypersurfaceModel:
    family, r = job.family, job.r
    _require(family, 'horospheres', 'equidistants')
    if job.hr != 0 or r != family.n:
        raise ParameterOutOfRegime('H_r != 0 or r != n', 'constant-angle graphs are n-minimal')
    lam = job.lam
    if lam <= 0:
        raise ParameterOutOfRegime('lambda <= 0', 'the slope must be positive')

    s_max = job.params.s_max
    rho = lam / math.sqrt(1 + lam**2)
    solution = job.solve(0.0, rho**r, -s_max, s_max)
    profile = job.profile(solution, -s_max, s_max, ('OpenEnd', 'OpenEnd'), anchor=0.0)
    return job.model('constant-angle', 'MinimalEntireConstantAngle', (Piece(profile, Placement()),))


def _build_cylinder(job: _Job) -> HypersurfaceModel:
    family, r, hr = job.family, job.r, job.hr
    if r == family.n:
        if hr != 0:
            raise ParameterOutOfRegime('H_n != 0', 'cylinders have a vanishing Gauss-Kronecker curvature')
        radius = job.lam
    elif family.kind == 'horospheres':
        h0 = horosphere_hr0(family.space, r)
        if r % 2 or not math.isclose(hr, h0, rel_tol=1e-12):
            raise ParameterOutOfRegime(f'H_r != H_r^0 = {h0:g} or r odd', 'no cylinder over a horosphere')
        radius = job.params.lam or 0.0
    elif hr == 0:
        if family.kind == 'spheres' and family.space.kind == 'sphere':
            radius = math.pi / 2
        elif family.kind == 'equidistants':
            radius = 0.0
        else:
            raise ParameterOutOfRegime('H_r = 0', f'no leaf of {family} is r-minimal')
    else:
        try:
            radius = cylinder_radius(family, r, hr)
        except OutOfRange as exc:
            raise ParameterOutOfRegime(str(exc).split(':')[0], 'no leaf has this H_r') from exc

    if not family.contains(radius) or not job.coeffs.contains(radius):
        raise ParameterOutOfRegime(f'radius {radius:g} outside {family.domain}', 'no such leaf')

    samples, s_max = job.params.samples, job.params.s_max
    ones = np.ones(samples)
    profile = ProfileCurve(
        np.full(samples, float(radius)),
        ones,
        ones.copy(),
        np.linspace(-s_max, s_max, samples),
        np.full(samples, np.inf),
        ('OpenEnd', 'OpenEnd'),
        r,
        hr,
        family,
    )
    return job.model('cylinder', 'Cylinder', (Piece(profile, Placement()),), params={'radius': float(radius)})


Builder = Callable[[_Job], HypersurfaceModel]

SCENARIOS: Dict[ScenarioT, Builder] = {
    'sphere': _build_sphere,
    'entire-graph': _build_entire_graph,
    'delaunay': _build_delaunay,
    'unbounded-annulus': _build_unbounded_annulus,
    'catenoid': _build_catenoid,
    'minimal-delaunay': _build_minimal_delaunay,
    'horosphere-bigraph': _build_horosphere_bigraph,
    'equidistant-bigraph': _build_equidistant_bigraph,
    'equidistant-graph': _build_equidistant_graph,
    'minimal-equidistant': _build_minimal_equidistant,
    'minimal-parabolic': _build_minimal_parabolic,
    'constant-angle': _build_constant_angle,
    'cylinder': _build_cylinder,
}
"""Map each scenario to its builder."""


def construct(
    family: IsoparametricFamily,
    r: int,
    target_hr: float,
    scenario: Union[ScenarioT, str],
    params: Optional[ConstructParams] = None,
) -> HypersurfaceModel:
    """Build the `scenario` hypersurface with `H_r = target_hr` over `family`.

    Raises:
        ParameterOutOfRegime: the parameters lie outside the regime in which the scenario exists
        UnsupportedCombination: the scenario is not defined for the family
    """
    try:
        builder = SCENARIOS[typing.cast(ScenarioT, scenario)]
    except KeyError as exc:
        raise UnsupportedCombination(f"unknown scenario: '{scenario}'") from exc

    coeffs = ode_coefficients(family, r, target_hr)
    model = builder(_Job(family, r, float(target_hr), params or ConstructParams(), coeffs))
    logger.debug('constructed %s (%s) with %d pieces', model.classification, scenario, len(model.pieces))
    return model


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             classification


def sphere_convexity(n: int, r: int, target_hr: float) -> ConvexityT:
    """Convexity of the rotational `H_r`-sphere of `S^n x R`: strict unless `r = 1` and `H_1 <= 1/S(n)`.

    >>> sphere_convexity(3, 1, 4 / np.pi), sphere_convexity(3, 1, 1.0), sphere_convexity(3, 2, 0.1)
    ('convex', 'nonconvex', 'strict')
    """
    if r > 1:
        return 'strict'
    threshold = 1 / sphere_integral(n)
    if math.isclose(target_hr, threshold, rel_tol=1e-12):
        return 'convex'
    return 'strict' if target_hr > threshold else 'nonconvex'


def default_initial(family: IsoparametricFamily, r: int, target_hr: float) -> InitialCondition:
    """Return the distinguished initial condition of a family.

    Geodesic spheres start regular at the origin. Horospheres start with a vertical tangent on the horosphere
    `s = 0`. Equidistants start on the boundary case: the vertical tangent at `s_r`, or `tau(0) = 1` when r-minimal.

    >>> from hrsurf.ambient import AmbientSpace
    >>> from hrsurf.families import get_family
    >>> default_initial(get_family('horospheres', AmbientSpace.parse('hfm:R:3')), 2, 0.5)
    ValueAt(s0=0.0, tau0=1.0)
    """
    if family.kind == 'spheres':
        return RegularAtZero()
    if family.kind == 'horospheres':
        return ValueAt(0.0, 1.0)
    if target_hr == 0:
        return ValueAt(0.0, 1.0)
    return ValueAt(s_r_constant(family.n, r, target_hr), 1.0)


def classify(family: IsoparametricFamily, r: int, target_hr: float, initial: InitialCondition) -> Classification:
    """Return the label of the hypersurface generated by `initial` (no integration needed).

    `initial` is `RegularAtZero()` or a `ValueAt`; `unit_at(lam)` marks a vertical tangent at radius `lam`, and for
    r-minimal equidistants `ValueAt(0, lam)` gives `tau(0) = lam`.
    """
    n = family.n
    minimal = target_hr == 0

    if family.kind == 'horospheres':
        if minimal:
            return Classification('MinimalEntireConstantAngle' if r == n else 'MinimalParabolicSlab')
        if math.isclose(target_hr, horosphere_hr0(family.space, r), rel_tol=1e-12):
            return Classification('Cylinder')
        return Classification('HorosphereBigraph')

    if family.kind == 'equidistants':
        if minimal and r == n:
            return Classification('MinimalEntireConstantAngle')
        if minimal:
            start = initial.tau0 * math.cosh(initial.s0) ** (n - r) if isinstance(initial, ValueAt) else 0.0
            if math.isclose(start, 1.0, rel_tol=0.0, abs_tol=1e-12):
                return Classification('MinimalEquidistantAsymptotic')
            return Classification('MinimalEquidistantSlab')
        s_r = s_r_constant(n, r, target_hr)
        if isinstance(initial, ValueAt) and math.isclose(initial.s0, s_r, abs_tol=1e-12):
            return Classification('EquidistantAsymptoticGraph')
        return Classification('EquidistantBigraph')

    if isinstance(initial, RegularAtZero):
        if minimal:
            raise ParameterOutOfRegime('H_r = 0', 'the regular r-minimal solution is a horizontal slice')
        if family.space.kind == 'sphere':
            return Classification('C1_Sphere', sphere_convexity(n, r, target_hr))
        if r < n and target_hr <= c_limit(family.space, r):
            return Classification('C2_EntireGraph')
        return Classification('C1_Sphere', 'strict')

    if (minimal and r == n) or (r < n and abs(_unit_slope(family, r, target_hr, initial)) <= 1e-12):
        return Classification('Cylinder')
    if minimal:
        return Classification('MinimalDelaunay' if family.space.kind == 'sphere' else 'Catenoid')
    if family.space.kind == 'sphere' or (r < n and target_hr > c_limit(family.space, r)):
        return Classification('C3_Delaunay')
    return Classification('C4_SymmetricUnboundedAnnulus')


def _unit_slope(family: IsoparametricFamily, r: int, target_hr: float, initial: ValueAt) -> float:
    coeffs = ode_coefficients(family, r, target_hr)
    return float(coeffs.tau_prime(initial.s0, initial.tau0))


def delaunay_period(model: HypersurfaceModel) -> float:
    """Return the vertical period `2 (phi(lam_bar) - phi(lam))` of a Delaunay-type annulus."""
    if model.classification not in ('C3_Delaunay', 'MinimalDelaunay'):
        raise ValueError(f'{model.classification} is not periodic')
    base = model.base
    return 2 * float(base.phi[-1] - base.phi[0])


def slab_halfwidth(model: HypersurfaceModel) -> float:
    """Return `sup |phi|` of a slab-bounded model; constant-angle graphs are unbounded (`+inf`)."""
    if model.classification == 'MinimalEntireConstantAngle':
        return math.inf
    if model.classification not in ('MinimalParabolicSlab', 'MinimalEquidistantSlab'):
        raise ValueError(f'{model.classification} does not lie in a slab')
    return max(float(np.max(np.abs(piece.profile.phi))) for piece in model.pieces)


logger.debug('successfully imported %s', __name__)
