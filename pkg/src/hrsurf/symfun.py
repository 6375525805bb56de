"""Elementary symmetric polynomials over curvature multisets.

A principal-curvature multiset is stored as `(value, multiplicity)` pairs; the `r`-th mean curvature of a
hypersurface is the `r`-th elementary symmetric polynomial of its principal curvatures:

>>> elem_sym(CurvatureSpectrum.from_entries([(2, 3)]), 2)
12

Multiplicities are folded in with the binomial recurrence, so the list is never expanded.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing
from typing import Any, Iterable, Tuple

__all__ = ['CurvatureSpectrum', 'elem_sym', 'elem_sym_entries', 'full_array_hr', 'graph_hr']

logger = logging.getLogger(__name__)

EntryT = Tuple[Any, int]
"""A `(value, multiplicity)` pair; `value` may be a float, a `fractions.Fraction`, or a `numpy` array."""

SpectrumLike = typing.Union['CurvatureSpectrum', Iterable[EntryT]]


@dataclasses.dataclass(frozen=True)
class CurvatureSpectrum:
    """The principal curvatures of an isoparametric leaf, merged by value.

    >>> CurvatureSpectrum.from_entries([(1.0, 1), (0.5, 2), (1.0, 1), (3.0, 0)])
    CurvatureSpectrum(entries=((0.5, 2), (1.0, 2)))
    >>> CurvatureSpectrum.from_entries([(1.0, 1), (0.5, 2), (1.0, 1)]).dimension
    4
    """

    entries: Tuple[Tuple[float, int], ...] = ()
    """Canonical `(value, multiplicity)` pairs: distinct values, sorted, every multiplicity positive."""

    @classmethod
    def from_entries(cls, entries: Iterable[EntryT]) -> CurvatureSpectrum:
        """Merge exactly-equal values and drop zero multiplicities."""
        merged: dict[Any, int] = {}
        for value, multiplicity in entries:
            if multiplicity < 0:
                raise ValueError(f'negative multiplicity: {multiplicity}')
            if multiplicity:
                merged[value] = merged.get(value, 0) + int(multiplicity)

        return cls(tuple(sorted(merged.items())))

    def __iter__(self) -> typing.Iterator[tuple[float, int]]:
        """Iterate over the canonical entries."""
        return iter(self.entries)

    @property
    def dimension(self) -> int:
        """The total multiplicity (dimension of the leaf)."""
        return sum(m for _, m in self.entries)

    def expanded(self) -> list[float]:
        """List every curvature once per multiplicity."""
        return [v for v, m in self.entries for _ in range(m)]

    def negated(self) -> CurvatureSpectrum:
        """Flip the sign of every curvature (opposite orientation)."""
        return CurvatureSpectrum.from_entries((-v, m) for v, m in self.entries)


def elem_sym_entries(entries: Iterable[EntryT], r: int) -> Any:
    """Return `e_r` of the multiset described by `entries`.

    The values are only combined with `+` and `*`, so `float`, `fractions.Fraction`, and `numpy` arrays (evaluated
    elementwise) all work:

    >>> from fractions import Fraction
    >>> elem_sym_entries([(Fraction(1, 2), 2), (Fraction(1), 1)], 2)
    Fraction(5, 4)
    >>> elem_sym_entries([], 0), elem_sym_entries([], 3)
    (1, 0)
    """
    if r < 0:
        raise ValueError(f'r must be non-negative: {r}')

    coeffs: list[Any] = [1] + [0] * r
    for value, multiplicity in entries:
        power: list[Any] = [1]
        for _ in range(min(multiplicity, r)):
            power.append(power[-1] * value)

        # descending k keeps the lower orders of the previous prefix intact
        for k in range(r, 0, -1):
            total = coeffs[k]
            for j in range(1, min(multiplicity, k) + 1):
                total = total + math.comb(multiplicity, j) * power[j] * coeffs[k - j]
            coeffs[k] = total

    return coeffs[r]


def elem_sym(spectrum: SpectrumLike, r: int) -> Any:
    """Return the `r`-th elementary symmetric polynomial of the expanded `spectrum`.

    >>> elem_sym(CurvatureSpectrum(), 2), elem_sym(CurvatureSpectrum(((5.0, 1),)), 0)
    (0, 1)
    """
    return elem_sym_entries(_entries(spectrum), r)


def graph_hr(spectrum: SpectrumLike, rho: Any, rho_prime: Any, r: int) -> Any:
    """Return the `r`-th mean curvature of a graph over the leaf with `spectrum`, from `rho` and `rho'`.

    Only the leaf invariants `H_r^s` and `H_{r-1}^s` are needed:

    >>> graph_hr(CurvatureSpectrum(((0.0, 2),)), 0.5, 0.25, 1)
    0.25
    """
    entries = list(_entries(spectrum))
    return (-1) ** r * elem_sym_entries(entries, r) * rho**r + (-1) ** (r - 1) * elem_sym_entries(
        entries, r - 1
    ) * rho ** (r - 1) * rho_prime


def full_array_hr(spectrum: SpectrumLike, rho: Any, rho_prime: Any, r: int) -> Any:
    """Return `e_r` of the graph's full principal-curvature array `{-rho k_i} U {rho'}`.

    This route never uses the closed form of `graph_hr`; the two must agree to rounding error:

    >>> leaf = CurvatureSpectrum(((-2.0, 2),))
    >>> full_array_hr(leaf, 1.0, 0.0, 2), graph_hr(leaf, 1.0, 0.0, 2)
    (4.0, 4.0)
    """
    array = [(-rho * value, multiplicity) for value, multiplicity in _entries(spectrum)]
    array.append((rho_prime, 1))
    return elem_sym_entries(array, r)


def _entries(spectrum: SpectrumLike) -> Iterable[EntryT]:
    if isinstance(spectrum, CurvatureSpectrum):
        return spectrum.entries
    return spectrum


logger.debug('successfully imported %s', __name__)
