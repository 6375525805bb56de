"""Gauss–Legendre panel rules shared by the ODE solver and the height quadrature."""

from __future__ import annotations

import functools
import logging
import math
import typing
from typing import Callable, Iterable

import numpy as np
from scipy import special

__all__ = ['CumulativeIntegral', 'gauss_legendre', 'integrate_panels', 'nearest_edge', 'panel_edges', 'panel_nodes']

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

REFINE_FLOOR = 1e-12
"""Geometric refinement toward a singular point stops at this relative distance."""


@functools.lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Return the nodes and weights of the `order`-point rule on `[-1, 1]`.

    >>> nodes, weights = gauss_legendre(3)
    >>> round(float(weights.sum()), 12)
    2.0
    """
    nodes, weights = special.roots_legendre(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_nodes(lo: np.ndarray, hi: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Map the reference rule onto every panel `[lo_k, hi_k]`.

    Returns nodes and weights shaped `lo.shape + (order,)`. Reversed panels (`hi < lo`) get negative weights, so
    sums are oriented integrals.
    """
    nodes, weights = gauss_legendre(order)
    lo = np.asarray(lo, dtype=float)[..., np.newaxis]
    hi = np.asarray(hi, dtype=float)[..., np.newaxis]
    half = (hi - lo) / 2
    return lo + half * (nodes + 1), half * weights


def integrate_panels(integrand: Integrand, lo: np.ndarray, hi: np.ndarray, order: int) -> np.ndarray:
    """Integrate `integrand` over each panel `[lo_k, hi_k]`.

    >>> float(integrate_panels(np.cos, np.array([0.0]), np.array([np.pi / 2]), 8)[0])  # doctest: +ELLIPSIS
    1.0000000...
    """
    nodes, weights = panel_nodes(lo, hi, order)
    return typing.cast(np.ndarray, (integrand(nodes) * weights).sum(axis=-1))


def panel_edges(
    origin: float, lo: float, hi: float, width: float, refine: Iterable[float] = (), floor: float = REFINE_FLOOR
) -> np.ndarray:
    """Return sorted panel edges covering `[lo, hi]`, stepping by `width` away from `origin`.

    Every point in `refine` gets a geometric sequence of extra edges approaching it, down to `floor` (relative to
    `max(1, |point|)`), so panels shrink toward integrable singularities at interval ends:

    >>> panel_edges(0.0, 0.0, 1.0, 0.5).tolist()
    [0.0, 0.5, 1.0]
    >>> edges = panel_edges(0.0, 0.0, 1.0, 0.5, refine=[1.0])
    >>> bool(edges[-1] == 1.0 and 1.0 - edges[-2] < 1e-11)
    True
    """
    if not lo <= origin <= hi:
        raise ValueError(f'origin {origin} outside [{lo}, {hi}]')

    forward = np.arange(origin, hi, width) if hi > origin else np.empty(0)
    backward = np.arange(origin, lo, -width) if lo < origin else np.empty(0)
    extra = [lo, hi, origin]
    for point in refine:
        depth = max(0, math.ceil(math.log2(width / (floor * max(1.0, abs(point))))))
        steps = width * 2.0 ** -np.arange(1, depth + 1)
        extra.extend(point + steps)
        extra.extend(point - steps)

    edges = np.unique(np.concatenate([forward, backward, np.asarray(extra, dtype=float)]))
    return edges[(edges >= lo) & (edges <= hi)]


class CumulativeIntegral:
    """Tabulated antiderivative `F(s) = ∫_origin^s f(u) du` on `[lo, hi]`.

    Panel integrals are accumulated at the edges from `panel_edges`; evaluation adds one Gauss–Legendre correction
    from the nearest edge:

    >>> F = CumulativeIntegral(np.cos, origin=0.0, lo=0.0, hi=3.0)
    >>> round(float(F(np.pi / 2)), 12)
    1.0
    """

    def __init__(
        self,
        integrand: Integrand,
        origin: float,
        lo: float,
        hi: float,
        width: float = 0.05,
        order: int = 12,
        refine: Iterable[float] = (),
    ) -> None:
        """Tabulate the antiderivative of `integrand`."""
        self.integrand = integrand
        self.order = order
        self.origin = origin
        self.edges = panel_edges(origin, lo, hi, width, refine)

        increments = integrate_panels(integrand, self.edges[:-1], self.edges[1:], order)
        totals = np.concatenate([[0.0], np.cumsum(increments)])
        k0 = int(np.searchsorted(self.edges, origin))
        self.values = totals - totals[k0]
        logger.debug('tabulated %d panels on [%s, %s]', len(increments), lo, hi)

    def __call__(self, s: typing.Any) -> np.ndarray:
        """Evaluate the antiderivative at `s` (scalar or array)."""
        s = np.asarray(s, dtype=float)
        nearest = nearest_edge(self.edges, s)
        correction = integrate_panels(self.integrand, self.edges[nearest], s, self.order)
        return typing.cast(np.ndarray, self.values[nearest] + correction)


def nearest_edge(edges: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Index of the edge closest to each `s`."""
    right = np.clip(np.searchsorted(edges, s), 1, len(edges) - 1)
    left = right - 1
    return np.where(np.abs(s - edges[left]) <= np.abs(edges[right] - s), left, right)


logger.debug('successfully imported %s', __name__)
