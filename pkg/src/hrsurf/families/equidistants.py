"""Equidistant hypersurfaces of `H^n`, the leaves of hyperbolic-translation-invariant hypersurfaces.

The leaf at signed distance `s` from a totally geodesic hyperplane is umbilical with principal curvature
`-tanh(s)`, so the spectrum is odd in `s`:

>>> from hrsurf.ambient import AmbientSpace
>>> family = Equidistants(AmbientSpace.parse('hfm:R:3'))
>>> family.spectrum(-1.0) == family.spectrum(1.0).negated()
True
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
    ValueAt,
    cr_constant,
)

__all__ = ['Equidistants']

logger = logging.getLogger(__name__)


class Equidistants(IsoparametricFamily):
    """Equidistants of a fixed totally geodesic hyperplane `E_0` of the real hyperbolic space."""

    kind = 'equidistants'
    domain = (-math.inf, math.inf)
    orientation_note = 'normal pointing away from E_0 for s > 0; curvature -tanh(s)'

    @classmethod
    def supports(cls, space: AmbientSpace) -> bool:
        """Only the real hyperbolic space is umbilically foliated this way."""
        return space.kind == 'hyperbolic' and space.field == 'R'

    def entries(self, s: Any) -> list[tuple[Any, int]]:
        """`-tanh(s)` with multiplicity `n - 1`."""
        return [(-np.tanh(s), self.n - 1)]

    def coefficient_domain(self, r: int, target_hr: float) -> Interval:
        """`tanh^(1-r)` blows up at `E_0` when `r >= 2` and `H_r > 0`."""
        if r >= 2 and target_hr > 0:  # noqa: PLR2004
            return (0.0, math.inf)
        return self.domain

    def coefficients(self, r: int, target_hr: float) -> OdeCoefficients:
        """Return `a = -(n-r) tanh(s)` and `b = b_r tanh^(1-r)(s)`."""
        n = self.n
        b_r = r * target_hr / math.comb(n - 1, r - 1)

        def a(s: Any) -> np.ndarray:
            return np.asarray(-(n - r) * np.tanh(s))

        def b(s: Any) -> np.ndarray:
            s = np.asarray(s, dtype=float)
            if r == 1 or not b_r:
                return np.full_like(s, b_r)
            return np.asarray(b_r * np.tanh(s) ** (1 - r))

        domain = self.coefficient_domain(r, target_hr)
        return OdeCoefficients(self, r, float(target_hr), a, b, domain, False, b_r)

    def closed_form(
        self, coeffs: OdeCoefficients, initial: InitialCondition, interval: Interval
    ) -> Optional[ClosedForm]:
        """r-minimal solutions: `tau = tau0 (cosh(s0) / cosh(s))^(n-r)`."""
        if coeffs.target_hr or not isinstance(initial, ValueAt):
            return None
        s0, tau0, power = initial.s0, initial.tau0, self.n - coeffs.r
        return ClosedForm('equidistant-minimal', lambda s: tau0 * (np.cosh(s0) / np.cosh(s)) ** power)

    def tau_limit(self, coeffs: OdeCoefficients, tau_end: float, at: Optional[float] = None) -> float:
        """Return `H_r / C_r` as `s` tends to infinity; r-minimal solutions decay to `0` unless `r = n`."""
        if coeffs.r == self.n:
            return tau_end if not coeffs.target_hr else math.inf
        if not coeffs.target_hr:
            return 0.0
        return coeffs.target_hr / float(cr_constant(self.n, coeffs.r))


logger.debug('successfully imported %s', __name__)
