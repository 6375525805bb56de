"""Geodesic spheres, the leaves of rotational hypersurfaces.

In `H_F^m` the sphere of radius `s` has principal curvatures `-coth(s)/2 (x n-p-1)` and `-coth(s) (x p)` with
`p = n-1, 1, 3, 7` for `F = R, C, K, O`; in `S^n` every principal curvature is `-cot(s)`:

>>> from hrsurf.ambient import AmbientSpace
>>> HyperbolicSpheres(AmbientSpace.parse('hfm:C:2')).spectrum(1.0).dimension
3
>>> round(SphericalSpheres(AmbientSpace.parse('sn:3')).leaf_hr(2, np.pi / 4), 12)
1.0
"""

from __future__ import annotations

import logging
import math
from typing import Any, Optional

import numpy as np

from hrsurf.ambient import (
    AmbientSpace,
    ClosedForm,
    InitialCondition,
    Interval,
    IsoparametricFamily,
    OdeCoefficients,
    RegularAtZero,
    ValueAt,
    c_limit,
    sphere_integral,
)
from hrsurf.quadrature import CumulativeIntegral
from hrsurf.symfun import elem_sym_entries

__all__ = ['HyperbolicSpheres', 'SphericalSpheres']

logger = logging.getLogger(__name__)


class HyperbolicSpheres(IsoparametricFamily):
    """Geodesic spheres of `H_F^m`, parametrized by their radius."""

    kind = 'spheres'
    domain = (0.0, math.inf)
    orientation_note = 'outward unit normal; every principal curvature is negative'

    @classmethod
    def supports(cls, space: AmbientSpace) -> bool:
        """Geodesic spheres exist in every hyperbolic space."""
        return space.kind == 'hyperbolic'

    def entries(self, s: Any) -> list[tuple[Any, int]]:
        """`-coth(s/2)/2` with multiplicity `n-p-1` and `-coth(s)` with multiplicity `p`."""
        p = self.space.leaf_multiplicity
        found: list[tuple[Any, int]] = []
        if rest := self.n - p - 1:
            found.append((-0.5 / np.tanh(s / 2), rest))
        found.append((-1.0 / np.tanh(s), p))
        return found

    def singular_at_zero(self, r: int) -> bool:
        """The origin is a regular singular point for `1 <= r < n`."""
        return 1 <= r < self.n

    def coefficients(self, r: int, target_hr: float) -> OdeCoefficients:
        """Return `a = -r |H_r^s| / |H_{r-1}^s|` and `b = r H_r / |H_{r-1}^s|`."""

        def a(s: Any) -> np.ndarray:
            entries = self.entries(np.asarray(s, dtype=float))
            return np.asarray(-r * np.abs(elem_sym_entries(entries, r)) / np.abs(elem_sym_entries(entries, r - 1)))

        def b(s: Any) -> np.ndarray:
            s = np.asarray(s, dtype=float)
            return np.broadcast_to(r * target_hr / np.abs(elem_sym_entries(self.entries(s), r - 1)), s.shape)

        return OdeCoefficients(self, r, float(target_hr), a, b, self.domain, self.singular_at_zero(r))

    def closed_form(
        self, coeffs: OdeCoefficients, initial: InitialCondition, interval: Interval
    ) -> Optional[ClosedForm]:
        """Catenoids (`H_r = 0`): `tau = tau0 exp(int_{s0}^s a)`; constant for `r = n`."""
        if coeffs.target_hr or not isinstance(initial, ValueAt):
            return None

        tau0 = initial.tau0
        if coeffs.r == self.n:
            return ClosedForm('constant', lambda s: np.full_like(np.asarray(s, dtype=float), tau0))

        primitive = CumulativeIntegral(coeffs.a, initial.s0, *interval, refine=interval)
        return ClosedForm('catenoid', lambda s: tau0 * np.exp(primitive(s)))

    def tau_limit(self, coeffs: OdeCoefficients, tau_end: float, at: Optional[float] = None) -> float:
        """Return `H_r / C_F(r)` as the radius tends to infinity; `+inf` for `r = n`."""
        if coeffs.r == self.n:
            return math.inf if coeffs.target_hr else tau_end
        return coeffs.target_hr / c_limit(self.space, coeffs.r)


class SphericalSpheres(IsoparametricFamily):
    """Geodesic spheres of `S^n` centered at a pole, parametrized by their radius `s in (0, pi)`."""

    kind = 'spheres'
    domain = (0.0, math.pi)
    orientation_note = 'normal pointing away from the center; spheres past the equator have positive curvature'

    @classmethod
    def supports(cls, space: AmbientSpace) -> bool:
        """Geodesic spheres of the round sphere."""
        return space.kind == 'sphere'

    def entries(self, s: Any) -> list[tuple[Any, int]]:
        """`-cot(s)` with multiplicity `n - 1`."""
        return [(-1.0 / np.tan(s), self.n - 1)]

    def singular_at_zero(self, r: int) -> bool:
        """The origin is a regular singular point for `1 <= r < n`."""
        return 1 <= r < self.n

    def coefficient_domain(self, r: int, target_hr: float) -> Interval:
        """`tan^(r-1)` blows up at the equator, so `r >= 2` with `H_r > 0` stops at `pi/2`."""
        if r > 1 and target_hr > 0:
            return (0.0, math.pi / 2)
        return self.domain

    def coefficients(self, r: int, target_hr: float) -> OdeCoefficients:
        """Return `a = -(n-r) cot(s)` and `b = b_r tan^(r-1)(s)`."""
        n = self.n
        b_r = r * target_hr / math.comb(n - 1, r - 1)

        def a(s: Any) -> np.ndarray:
            return np.asarray(-(n - r) / np.tan(s))

        def b(s: Any) -> np.ndarray:
            s = np.asarray(s, dtype=float)
            if r == 1 or not b_r:
                return np.full_like(s, b_r)
            return np.asarray(b_r * np.tan(s) ** (r - 1))

        domain = self.coefficient_domain(r, target_hr)
        return OdeCoefficients(self, r, float(target_hr), a, b, domain, self.singular_at_zero(r), b_r)

    def closed_form(
        self, coeffs: OdeCoefficients, initial: InitialCondition, interval: Interval
    ) -> Optional[ClosedForm]:
        """Every solution on `S^n` is explicit up to one quadrature of `sin^(n-1) / cos^(r-1)`."""
        n, r = self.n, coeffs.r
        b_r = coeffs.b_r or 0.0

        if isinstance(initial, ValueAt) and not b_r:
            s0, tau0 = initial.s0, initial.tau0
            return ClosedForm('sphere-minimal', lambda s: tau0 * (np.sin(s0) / np.sin(s)) ** (n - r))

        def weight(u: Any) -> np.ndarray:
            return np.asarray(np.sin(u) ** (n - 1) / np.cos(u) ** (r - 1))

        if isinstance(initial, RegularAtZero):
            primitive = CumulativeIntegral(weight, 0.0, *interval, refine=interval)

            def regular(s: Any) -> np.ndarray:
                s = np.asarray(s, dtype=float)
                with np.errstate(divide='ignore', invalid='ignore'):
                    value = b_r * primitive(s) / np.sin(s) ** (n - r)
                return np.where(s > 0, value, 0.0)

            return ClosedForm('sphere-regular', regular)

        s0, tau0 = initial.s0, initial.tau0
        primitive = CumulativeIntegral(weight, s0, *interval, refine=interval)
        scale = b_r / np.sin(s0) ** (n - r)
        return ClosedForm(
            'sphere-general', lambda s: (np.sin(s0) / np.sin(s)) ** (n - r) * (tau0 + scale * primitive(s))
        )

    def tau_limit(self, coeffs: OdeCoefficients, tau_end: float, at: Optional[float] = None) -> float:
        """Solutions blow up at the end of their domain; at the equator the regular `r = 1` one equals `H_1 S(n)`."""
        if at is not None and coeffs.r == 1 and math.isclose(at, math.pi / 2) and coeffs.target_hr:
            return coeffs.target_hr * sphere_integral(self.n)
        return math.inf


logger.debug('successfully imported %s', __name__)
