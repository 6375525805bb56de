"""Ambient spaces, isoparametric families, ODE coefficients, and the named constants.

Every hypersurface built by `hrsurf` is a graph over the leaves of one isoparametric family of `M`; a family is an
`IsoparametricFamily` subclass in `hrsurf.families`. This module holds the shared API and the constants that depend
only on the ambient space:

>>> space = AmbientSpace.parse('hfm:R:3')
>>> space, space.n
(AmbientSpace('hfm:R:3'), 3)
>>> c_limit(space, 1)
2.0
>>> float(cr_constant(3, 1))
2.0
"""

from __future__ import annotations

import abc
import dataclasses
import logging
import math
import typing
from fractions import Fraction
from typing import Any, Callable, ClassVar, Literal, NamedTuple, Optional, Tuple, Union

import numpy as np
from scipy import integrate, optimize

from hrsurf.errors import InvalidSpace, OutOfDomain, OutOfRange, UnsupportedCombination
from hrsurf.symfun import CurvatureSpectrum, elem_sym_entries

__all__ = [
    'AmbientSpace',
    'ClosedForm',
    'FamilyKindT',
    'FieldT',
    'InitialCondition',
    'IsoparametricFamily',
    'OdeCoefficients',
    'RegularAtZero',
    'ValueAt',
    'c_limit',
    'c_limit_exact',
    'cr_constant',
    'cylinder_radius',
    'delta_hr',
    'horosphere_entries',
    'horosphere_hr0',
    'invert_leaf_hr',
    'leaf_hr',
    'ode_coefficients',
    's_r_constant',
    'small_s_asymptotics_check',
    'sphere_integral',
    'unit_at',
    'unit_derivative',
]

logger = logging.getLogger(__name__)

FieldT = Literal['R', 'C', 'K', 'O']
"""Real, complex, quaternionic, and octonionic hyperbolic spaces."""

SpaceKindT = Literal['hyperbolic', 'sphere']

FamilyKindT = Literal['spheres', 'horospheres', 'equidistants']
"""The catalog of isoparametric families."""

FIELD_DIMENSION: dict[FieldT, int] = {'R': 1, 'C': 2, 'K': 4, 'O': 8}

Coefficient = Callable[[Any], np.ndarray]
Interval = Tuple[float, float]


@dataclasses.dataclass(frozen=True)
class AmbientSpace:
    """The Riemannian factor `M` of `M x R`: a hyperbolic space `H_F^m` or a round sphere `S^n`.

    >>> AmbientSpace.parse('hfm:O:2').n
    16
    >>> AmbientSpace.parse('hfm:C:2').leaf_multiplicity
    1
    >>> AmbientSpace.parse('hfm:O:3')
    Traceback (most recent call last):
    ...
    hrsurf.errors.InvalidSpace: the octonionic hyperbolic space only exists for m=2: 'hfm:O:3'
    """

    kind: SpaceKindT
    """Either `'hyperbolic'` or `'sphere'`."""

    n: int
    """The real dimension."""

    field: Optional[FieldT] = None
    """The division algebra of a hyperbolic space."""

    rank: Optional[int] = None
    """The `m` of `H_F^m`."""

    def __post_init__(self) -> None:
        """Enforce the dimension rules."""
        if self.n < 2:
            raise InvalidSpace(f'the dimension must be at least 2: {self}')
        if self.kind == 'hyperbolic':
            if self.field not in FIELD_DIMENSION or not self.rank or self.rank < 1:
                raise InvalidSpace(f'malformed hyperbolic space: {self}')
            if self.field == 'O' and self.rank != 2:  # noqa: PLR2004
                raise InvalidSpace(f'the octonionic hyperbolic space only exists for m=2: {str(self)!r}')
            if self.n != self.rank * FIELD_DIMENSION[self.field]:
                raise InvalidSpace(f'inconsistent dimension: {self}')

    @classmethod
    def hyperbolic(cls, field: FieldT, rank: int) -> AmbientSpace:
        """Create `H_F^m`."""
        return cls('hyperbolic', rank * FIELD_DIMENSION.get(field, 0), field, rank)

    @classmethod
    def sphere(cls, n: int) -> AmbientSpace:
        """Create `S^n`."""
        return cls('sphere', n)

    @classmethod
    def parse(cls, text: str) -> AmbientSpace:
        """Parse `hfm:<F>:<m>` or `sn:<n>`."""
        prefix, *rest = text.strip().split(':')
        try:
            if prefix == 'hfm' and len(rest) == 2:  # noqa: PLR2004
                return cls.hyperbolic(typing.cast(FieldT, rest[0].upper()), int(rest[1]))
            if prefix == 'sn' and len(rest) == 1:
                return cls.sphere(int(rest[0]))
        except ValueError as exc:
            if isinstance(exc, InvalidSpace):
                raise
            raise InvalidSpace(f'malformed space: {text!r}') from exc

        raise InvalidSpace(f"malformed space (expected 'hfm:<F>:<m>' or 'sn:<n>'): {text!r}")

    def __str__(self) -> str:
        """Format the space as accepted by `parse`."""
        if self.kind == 'sphere':
            return f'sn:{self.n}'
        return f'hfm:{self.field}:{self.rank}'

    def __repr__(self) -> str:
        """Represent the space by its parseable spec."""
        return f'{type(self).__name__}({str(self)!r})'

    @property
    def leaf_multiplicity(self) -> int:
        """The multiplicity `p` of `-coth(s)` on geodesic spheres of `H_F^m`."""
        if self.kind == 'sphere':
            return self.n - 1
        return self.n - 1 if self.field == 'R' else FIELD_DIMENSION[typing.cast(FieldT, self.field)] - 1


@dataclasses.dataclass(frozen=True)
class RegularAtZero:
    """The solution starting at the origin with `tau(0) = 0` (rotational graphs crossing the axis)."""

    def __str__(self) -> str:
        """Describe the condition."""
        return 'tau(0)=0'


@dataclasses.dataclass(frozen=True)
class ValueAt:
    """Prescribe `tau(s0) = tau0`."""

    s0: float
    tau0: float = 1.0

    def __str__(self) -> str:
        """Describe the condition."""
        return f'tau({self.s0:g})={self.tau0:g}'


InitialCondition = Union[RegularAtZero, ValueAt]


def unit_at(lam: float) -> ValueAt:
    """Return the initial condition `tau(lam) = 1` (a vertical tangent at radius `lam`)."""
    return ValueAt(float(lam), 1.0)


class ClosedForm(NamedTuple):
    """An explicit solution of `tau' = a tau + b`."""

    name: str
    """Identifies the formula in provenance records."""

    evaluate: Callable[[np.ndarray], np.ndarray]


@dataclasses.dataclass(frozen=True)
class OdeCoefficients:
    """The coefficients of `tau' = a(s) tau + b(s)` for graphs with `H_r = target_hr` over a family."""

    family: IsoparametricFamily
    r: int
    target_hr: float
    a: Coefficient = dataclasses.field(repr=False)
    b: Coefficient = dataclasses.field(repr=False)
    domain: Interval = (-math.inf, math.inf)
    """The open interval on which `a` and `b` are finite."""

    singular_at_zero: bool = False
    """Whether `s * a(s)` tends to a nonzero constant at the origin (regular singular point)."""

    b_r: Optional[float] = None
    """`r H_r / C(n-1, r-1)`, the normalized constant of the sign-resolved forms."""

    def tau_prime(self, s: Any, tau: Any) -> Any:
        """Return `a(s) tau + b(s)`."""
        return self.a(s) * tau + self.b(s)

    def contains(self, s: Any) -> Any:
        """Whether `s` lies in the open coefficient domain."""
        lo, hi = self.domain
        return (np.asarray(s) > lo) & (np.asarray(s) < hi)


class IsoparametricFamily(abc.ABC):
    """A family of parallel hypersurfaces `{f_s}` of `M` with constant principal curvatures on each leaf."""

    kind: ClassVar[FamilyKindT]
    """The catalog name of the family."""

    orientation_note: ClassVar[str]
    """The sign convention behind the leaf spectrum."""

    domain: ClassVar[Interval]
    """The open interval of the parallel parameter."""

    space: AmbientSpace
    """The ambient space."""

    def __init__(self, space: AmbientSpace) -> None:
        """Attach the family to `space`."""
        if not self.supports(space):
            raise UnsupportedCombination(f'{self.kind} are not part of the catalog for {space}')
        self.space = space

    def __repr__(self) -> str:
        """Represent the family as its invocation.

        >>> from hrsurf.families import get_family
        >>> get_family('spheres', AmbientSpace.parse('sn:3'))
        SphericalSpheres(space=AmbientSpace('sn:3'))
        """
        annotations = {key: None for klass in type(self).__mro__ for key in getattr(klass, '__annotations__', {})}
        args = ', '.join(
            f'{key}={getattr(self, key)!r}'
            for key in annotations
            if key not in {'kind', 'orientation_note', 'domain', 'return'} and hasattr(self, key)
        )
        return f'{type(self).__name__}({args})'

    def __str__(self) -> str:
        """Name the family and its space."""
        return f'{self.kind} of {self.space}'

    def __eq__(self, other: object) -> bool:
        """Two families are equal when they have the same type and space."""
        return type(self) is type(other) and self.space == typing.cast(IsoparametricFamily, other).space

    def __hash__(self) -> int:
        """Hash by type and space."""
        return hash((type(self).__name__, self.space))

    @property
    def n(self) -> int:
        """The dimension of the ambient space."""
        return self.space.n

    @classmethod
    @abc.abstractmethod
    def supports(cls, space: AmbientSpace) -> bool:
        """Whether the family exists in `space`."""

    @abc.abstractmethod
    def entries(self, s: Any) -> list[tuple[Any, int]]:
        """Leaf principal curvatures at `s` as `(value, multiplicity)` pairs, vectorized over `s`."""

    def contains(self, s: Any) -> Any:
        """Whether `s` lies in the open family domain."""
        lo, hi = self.domain
        return (np.asarray(s) > lo) & (np.asarray(s) < hi)

    def spectrum(self, s: float) -> CurvatureSpectrum:
        """Return the canonical spectrum of the leaf at `s`."""
        self._check_domain(s)
        return CurvatureSpectrum.from_entries((float(v), m) for v, m in self.entries(float(s)))

    def leaf_hr(self, r: int, s: Any) -> Any:
        """Return `H_r^s`, vectorized over `s`."""
        if r < 0:
            raise ValueError(f'r must be non-negative: {r}')
        self._check_domain(s)
        return elem_sym_entries(self.entries(np.asarray(s, dtype=float)), r)

    def coefficient_domain(self, r: int, target_hr: float) -> Interval:
        """The open interval on which the ODE coefficients for `(r, target_hr)` are defined."""
        return self.domain

    def singular_at_zero(self, r: int) -> bool:
        """Whether the origin is a regular singular point of the ODE."""
        return False

    def coefficients(self, r: int, target_hr: float) -> OdeCoefficients:
        """Return the general-form coefficients `a = r H_r / H_{r-1}`, `b = (-1)^(r-1) r H / H_{r-1}`."""
        domain = self.coefficient_domain(r, target_hr)
        grid = np.linspace(*np.clip(domain, -40.0, 40.0), 257)[1:-1]
        if np.any(elem_sym_entries(self.entries(grid), r - 1) == 0):
            raise UnsupportedCombination(f'H_{r - 1} of {self} vanishes on {domain}')

        def a(s: Any) -> np.ndarray:
            s = np.asarray(s, dtype=float)
            entries = self.entries(s)
            ratio = r * elem_sym_entries(entries, r) / elem_sym_entries(entries, r - 1)
            return np.broadcast_to(ratio, s.shape).astype(float)

        def b(s: Any) -> np.ndarray:
            s = np.asarray(s, dtype=float)
            return np.broadcast_to(
                (-1) ** (r - 1) * r * target_hr / elem_sym_entries(self.entries(s), r - 1), s.shape
            ).astype(float)

        return OdeCoefficients(self, r, float(target_hr), a, b, domain, self.singular_at_zero(r))

    def closed_form(
        self, coeffs: OdeCoefficients, initial: InitialCondition, interval: Interval
    ) -> Optional[ClosedForm]:
        """Return an explicit solution for `initial` on `interval`, if one is known."""
        return None

    def tau_limit(self, coeffs: OdeCoefficients, tau_end: float, at: Optional[float] = None) -> float:
        """Return the limit of a solution at the end `at` of the domain; `tau_end` is its value at its last sample."""
        raise UnsupportedCombination(f'no limit formula for {self}')

    def _check_domain(self, s: Any) -> None:
        if not np.all(self.contains(s)):
            raise OutOfDomain(f'{s} is outside the domain {self.domain} of {self}')


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             named constants


def leaf_hr(family: IsoparametricFamily, r: int, s: Any) -> Any:
    """Return `H_r^s` of the leaf at `s` under the family's orientation.

    >>> from hrsurf.families import get_family
    >>> spheres = get_family('spheres', AmbientSpace.parse('hfm:R:3'))
    >>> bool(np.isclose(leaf_hr(spheres, 1, 1.0), -2 / np.tanh(1.0)))
    True
    """
    return family.leaf_hr(r, s)


def ode_coefficients(family: IsoparametricFamily, r: int, target_hr: float) -> OdeCoefficients:
    """Return the coefficients `a`, `b` of `tau' = a tau + b` for `H_r = target_hr` graphs over `family`."""
    if not 1 <= r <= family.n:
        raise OutOfRange(f'r must satisfy 1 <= r <= n={family.n}: {r}')
    if target_hr < 0:
        raise OutOfRange(f'H_r must be non-negative: {target_hr}')
    coeffs = family.coefficients(r, target_hr)
    logger.debug('coefficients for %s, r=%d, H_r=%s on %s', family, r, target_hr, coeffs.domain)
    return coeffs


def horosphere_entries(space: AmbientSpace) -> list[tuple[float, int]]:
    """Principal curvatures of horospheres: all `1` for `F = R`, else `{1 (x1), 1/2 (x n-2)}`."""
    if space.kind != 'hyperbolic':
        raise UnsupportedCombination(f'horospheres only exist in hyperbolic spaces: {space}')
    if space.field == 'R':
        return [(1.0, space.n - 1)]
    return [(1.0, 1), (0.5, space.n - 2)]


def horosphere_hr0(space: AmbientSpace, r: int) -> float:
    """Return `H_r^0`, the `r`-th mean curvature of every horosphere.

    >>> horosphere_hr0(AmbientSpace.parse('hfm:C:2'), 1)
    2.0
    """
    return float(elem_sym_entries(horosphere_entries(space), r))


def c_limit_exact(space: AmbientSpace, r: int) -> Fraction:
    """Return `C_F(r)` as an exact fraction.

    >>> c_limit_exact(AmbientSpace.parse('hfm:C:2'), 3)
    Fraction(1, 4)
    """
    if space.kind != 'hyperbolic':
        raise UnsupportedCombination(f'C_F(r) is defined for hyperbolic spaces: {space}')
    n = space.n
    if not 1 <= r <= n:
        raise OutOfRange(f'r must satisfy 1 <= r <= n={n}: {r}')
    if r == n:
        return Fraction(0)

    if space.field == 'R':
        return Fraction(math.comb(n - 1, r))
    if space.field == 'C':
        half = Fraction(1, 2)
        return half**r * math.comb(n - 2, r) + half ** (r - 1) * math.comb(n - 2, r - 1)

    p = space.leaf_multiplicity
    return typing.cast(Fraction, elem_sym_entries([(Fraction(1, 2), n - p - 1), (Fraction(1), p)], r))


def c_limit(space: AmbientSpace, r: int) -> float:
    """Return `C_F(r) = lim |H_r^s|` of geodesic spheres of `H_F^m` as the radius tends to infinity."""
    return float(c_limit_exact(space, r))


def cr_constant(n: int, r: int) -> Fraction:
    """Return `C_r = ((n - r) / n) C(n, r)`, which equals `C(n-1, r)`.

    >>> cr_constant(4, 3)
    Fraction(1, 1)
    """
    if not 1 <= r < n:
        raise OutOfRange(f'C_r requires 1 <= r < n={n}: {r}')
    return Fraction(n - r, n) * math.comb(n, r)


def s_r_constant(n: int, r: int, target_hr: float) -> float:
    """Return `s_r = arctanh((H_r / C_r)^(1/r))`, the equidistant whose `H_r` equals `target_hr`.

    >>> round(s_r_constant(3, 1, 1.0), 6)
    0.549306
    """
    c_r = float(cr_constant(n, r))
    if not 0 < target_hr < c_r:
        raise OutOfRange(f'H_r must satisfy 0 < H_r < C_r = {c_r:g}: {target_hr}')
    return float(np.arctanh((target_hr / c_r) ** (1 / r)))


def sphere_integral(n: int) -> float:
    """Return `S(n)`, the integral of `sin^(n-1)` over `[0, pi/2]`.

    >>> round(sphere_integral(3), 12) == round(np.pi / 4, 12)
    True
    """
    if n < 2:  # noqa: PLR2004
        raise OutOfRange(f'n must be at least 2: {n}')
    value, _ = integrate.quad(lambda u: math.sin(u) ** (n - 1), 0.0, math.pi / 2, epsabs=1e-14, epsrel=1e-14)
    return float(value)


def delta_hr(
    family: IsoparametricFamily, r: int, target_hr: float, xtol: float = 1e-12, maxiter: int = 200
) -> float:
    """Return `delta`, the largest radius whose geodesic sphere has `|H_r| >= target_hr`.

    On `S^n` the radius is `arctan((C_r / H_r)^(1/r))`; on `H_F^m` it is found by bisection on the strictly
    decreasing `|H_r^s|`, and is infinite when `target_hr <= C_F(r)`:

    >>> from hrsurf.families import get_family
    >>> h3 = get_family('spheres', AmbientSpace.parse('hfm:R:3'))
    >>> abs(delta_hr(h3, 1, 4.0) - np.arctanh(0.5)) < 1e-10
    True
    >>> delta_hr(h3, 1, 2.0)
    inf
    """
    if family.kind != 'spheres':
        raise UnsupportedCombination(f'delta is defined for geodesic spheres, not {family.kind}')
    if not 1 <= r <= family.n - 1:
        raise OutOfRange(f'delta requires 1 <= r <= n-1={family.n - 1}: {r}')
    if target_hr <= 0:
        raise OutOfRange(f'delta requires H_r > 0: {target_hr}')

    if family.space.kind == 'sphere':
        c_r = float(cr_constant(family.n, r))
        return float(np.arctan((c_r / target_hr) ** (1 / r)))

    if target_hr <= c_limit(family.space, r):
        return math.inf
    return invert_leaf_hr(family, r, target_hr, xtol, maxiter)


def invert_leaf_hr(
    family: IsoparametricFamily, r: int, target_hr: float, xtol: float = 1e-12, maxiter: int = 200
) -> float:
    """Solve `|H_r^s| = target_hr` on a family whose `|H_r^s|` decreases from `+inf` at the origin."""

    def excess(s: float) -> float:
        return float(abs(family.leaf_hr(r, s))) - target_hr

    lo = hi = 1.0
    while excess(lo) <= 0:
        lo /= 2
    while excess(hi) > 0:
        hi *= 2
        if hi > 1024:  # noqa: PLR2004
            return math.inf
    return float(optimize.bisect(excess, lo, hi, xtol=xtol, maxiter=maxiter))


def cylinder_radius(family: IsoparametricFamily, r: int, target_hr: float) -> float:
    """Return the radius of the leaf `L` with `H_r(L x R) = target_hr`.

    These are the leaves with `|H_r^s| = target_hr`: `delta` for geodesic spheres and `s_r` for equidistants.
    """
    if r >= family.n:
        raise OutOfRange(f'cylinders with r = n = {family.n} have a free radius')
    if family.kind == 'spheres':
        radius = delta_hr(family, r, target_hr)
        if math.isinf(radius):
            raise OutOfRange(f'H_r <= C_F(r) = {c_limit(family.space, r):g}: no leaf has |H_r| = {target_hr:g}')
        return radius
    if family.kind == 'equidistants':
        return s_r_constant(family.n, r, target_hr)
    raise UnsupportedCombination(f'no cylinder over {family}')


def unit_derivative(family: IsoparametricFamily, r: int, target_hr: float, lam: float) -> float:
    """Return `tau'(lam)` of the solution through `tau(lam) = 1`, that is `a(lam) + b(lam)`.

    On geodesic spheres of `H^3` with `r = 1` this is `H - 2 coth(lam)`:

    >>> from hrsurf.families import get_family
    >>> h3 = get_family('spheres', AmbientSpace.parse('hfm:R:3'))
    >>> bool(np.isclose(unit_derivative(h3, 1, 4.0, 1.0), 4 - 2 / np.tanh(1.0)))
    True
    """
    coeffs = ode_coefficients(family, r, target_hr)
    if not coeffs.contains(lam):
        raise OutOfDomain(f'{lam} is outside the coefficient domain {coeffs.domain}')
    return float(coeffs.tau_prime(lam, 1.0))


def small_s_asymptotics_check(family: IsoparametricFamily, r: int, s: float) -> float:
    """Return `s^r |H_r^s|`, which tends to `C(n-1, r)` at the origin for geodesic spheres."""
    if family.kind != 'spheres':
        raise UnsupportedCombination(f'the small-radius expansion applies to geodesic spheres, not {family.kind}')
    return float(s**r * abs(family.leaf_hr(r, s)))


logger.debug('successfully imported %s', __name__)
