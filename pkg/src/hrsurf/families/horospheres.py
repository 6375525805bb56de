"""Horospheres, the leaves of parabolic-invariant hypersurfaces.

Horospheres are congruent to one another, so the ODE has constant coefficients. With the normal pointing toward
the center at infinity their principal curvatures are all `1` in `H^n`, and `1 (x1)`, `1/2 (x n-2)` otherwise:

>>> from hrsurf.ambient import AmbientSpace
>>> Horospheres(AmbientSpace.parse('hfm:C:2')).spectrum(0.0)
CurvatureSpectrum(entries=((0.5, 2), (1.0, 1)))
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
    horosphere_entries,
)

__all__ = ['Horospheres']

logger = logging.getLogger(__name__)


class Horospheres(IsoparametricFamily):
    """The horospheres sharing one point at infinity, parametrized by signed distance."""

    kind = 'horospheres'
    domain = (-math.inf, math.inf)
    orientation_note = 'normal pointing to the common point at infinity; every principal curvature is positive'

    @classmethod
    def supports(cls, space: AmbientSpace) -> bool:
        """Horospheres exist in every hyperbolic space."""
        return space.kind == 'hyperbolic'

    def entries(self, s: Any) -> list[tuple[Any, int]]:
        """The spectrum does not depend on `s`."""
        return horosphere_entries(self.space)

    def closed_form(
        self, coeffs: OdeCoefficients, initial: InitialCondition, interval: Interval
    ) -> Optional[ClosedForm]:
        """`tau = (tau0 + b/a) e^(a (s - s0)) - b/a`, or `tau0 + b (s - s0)` when `a = 0`."""
        if not isinstance(initial, ValueAt):
            return None

        s0, tau0 = initial.s0, initial.tau0
        a, b = float(coeffs.a(s0)), float(coeffs.b(s0))
        if a == 0:
            return ClosedForm('linear', lambda s: tau0 + b * (np.asarray(s, dtype=float) - s0))

        name = 'horosphere-exponential' if b else 'horosphere-minimal'
        return ClosedForm(name, lambda s: (tau0 + b / a) * np.exp(a * (np.asarray(s, dtype=float) - s0)) - b / a)

    def tau_limit(self, coeffs: OdeCoefficients, tau_end: float, at: Optional[float] = None) -> float:
        """Return the limit `-b/a` as `s` tends to `-inf` (the default end for horospheres)."""
        a, b = float(coeffs.a(0.0)), float(coeffs.b(0.0))
        if at is not None and at > 0:
            return math.inf
        if a == 0:
            return tau_end if b == 0 else -math.inf
        return -b / a


logger.debug('successfully imported %s', __name__)
