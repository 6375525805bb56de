"""Solve the linear ODE `tau' = a(s) tau + b(s)` of a graph over an isoparametric family.

Closed forms are used whenever the family knows one. Otherwise the integrating-factor formula is applied panel by
panel: across `[x, y]`

    tau(y) = tau(x) exp(A(x, y)) + int_x^y b(u) exp(A(u, y)) du,    A(u, y) = int_u^y a,

with nested Gauss–Legendre rules, so the integrating factor is re-anchored at every panel and never overflows.

>>> from hrsurf.ambient import AmbientSpace, ode_coefficients
>>> from hrsurf.families import get_family
>>> coeffs = ode_coefficients(get_family('horospheres', AmbientSpace.parse('hfm:R:3')), 3, 0.0)
>>> solution = solve_initial(coeffs, 0.0, 0.5, (-1.0, 1.0))
>>> solution.provenance
Provenance(kind='closed-form', name='linear')
>>> solution.eval(0.75)
0.5
"""

from __future__ import annotations

import dataclasses
import logging
import math
import typing
from typing import Any, Callable, Literal, NamedTuple, Optional

import numpy as np
from scipy import optimize

from hrsurf.ambient import InitialCondition, Interval, OdeCoefficients, RegularAtZero, ValueAt, unit_at
from hrsurf.errors import DomainExceeded, NoBracket, OutOfDomain, UnsupportedCombination
from hrsurf.quadrature import nearest_edge, panel_edges, panel_nodes

__all__ = [
    'MethodT',
    'Provenance',
    'RegularAtZero',
    'TauSolution',
    'ValueAt',
    'find_crossing',
    'scan_crossing',
    'solve_initial',
    'solve_regular_at_zero',
    'tau_limit',
    'unit_at',
]

logger = logging.getLogger(__name__)

MethodT = Literal['auto', 'numeric']
"""`'auto'` prefers a closed form; `'numeric'` always integrates."""

SEED_RADIUS = 1e-8
"""Regular solutions are started this far from the singular origin."""

PANEL_WIDTH = 0.05
GAUSS_ORDER = 12
CHUNK = 4096

Evaluator = Callable[[np.ndarray], np.ndarray]


class Provenance(NamedTuple):
    """Where a solution comes from."""

    kind: Literal['closed-form', 'numeric']
    name: str


@dataclasses.dataclass(frozen=True)
class TauSolution:
    """The solution `tau` on a closed interval, with its initial data and provenance."""

    coeffs: OdeCoefficients
    interval: Interval
    initial: InitialCondition
    provenance: Provenance
    evaluator: Evaluator = dataclasses.field(repr=False, compare=False)

    def eval(self, s: Any) -> Any:
        """Evaluate `tau(s)`; returns a `float` for scalar input."""
        arr = self._checked(s)
        out = np.asarray(self.evaluator(arr), dtype=float)
        return float(out) if out.ndim == 0 else out

    def deriv(self, s: Any) -> Any:
        """Evaluate `tau'(s)` through the ODE itself, `a(s) tau(s) + b(s)`."""
        arr = self._checked(s)
        out = np.asarray(self.coeffs.tau_prime(arr, self.evaluator(arr)), dtype=float)
        return float(out) if out.ndim == 0 else out

    def rho(self, s: Any) -> Any:
        """Evaluate `rho = tau^(1/r)`."""
        tau = np.clip(np.asarray(self.eval(s), dtype=float), 0.0, None)
        out = tau ** (1 / self.coeffs.r)
        return float(out) if out.ndim == 0 else out

    def rho_prime(self, s: Any) -> Any:
        """Evaluate `rho' = tau' / (r rho^(r-1))`."""
        r = self.coeffs.r
        if r == 1:
            return self.deriv(s)
        out = np.asarray(self.deriv(s)) / (r * np.asarray(self.rho(s)) ** (r - 1))
        return float(out) if out.ndim == 0 else out

    def _checked(self, s: Any) -> np.ndarray:
        arr = np.asarray(s, dtype=float)
        lo, hi = self.interval
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if arr.size and (arr.min() < lo - slack or arr.max() > hi + slack):
            raise DomainExceeded(f'{s} lies outside the solution interval [{lo}, {hi}]')
        return arr


def solve_initial(
    coeffs: OdeCoefficients,
    s0: float,
    tau0: float,
    interval: Interval,
    *,
    method: MethodT = 'auto',
    width: float = PANEL_WIDTH,
    order: int = GAUSS_ORDER,
) -> TauSolution:
    """Solve with `tau(s0) = tau0` on the closed `interval`, which must lie inside the coefficient domain."""
    lo, hi = map(float, interval)
    dom_lo, dom_hi = coeffs.domain
    if not dom_lo < lo <= hi < dom_hi:
        raise DomainExceeded(f'[{lo}, {hi}] leaves the coefficient domain {coeffs.domain}')
    if not lo <= s0 <= hi:
        raise OutOfDomain(f'initial point {s0} outside [{lo}, {hi}]')

    initial = ValueAt(float(s0), float(tau0))
    if method == 'auto' and (closed := coeffs.family.closed_form(coeffs, initial, (lo, hi))):
        logger.debug('closed form %s for %s', closed.name, initial)
        return TauSolution(coeffs, (lo, hi), initial, Provenance('closed-form', closed.name), closed.evaluate)

    table = _IntegratingFactorTable(coeffs, s0, tau0, panel_edges(s0, lo, hi, width, _singular_ends(coeffs, lo, hi)))
    return TauSolution(coeffs, (lo, hi), initial, Provenance('numeric', 'integrating-factor'), table.bind(order))


def solve_regular_at_zero(
    coeffs: OdeCoefficients,
    upper: Optional[float] = None,
    *,
    method: MethodT = 'auto',
    width: float = PANEL_WIDTH,
    order: int = GAUSS_ORDER,
) -> TauSolution:
    """Solve with `tau(0) = 0` on `[0, upper]` (default: the whole coefficient domain, truncated at `40`).

    The numeric path starts at `SEED_RADIUS` from one implicit Euler step out of the origin (taken in `t = s^r`),
    refined by Richardson extrapolation against two half steps; below the seed `tau` follows its leading power `s^r`.
    """
    family = coeffs.family
    if family.kind != 'spheres' or not (coeffs.singular_at_zero or coeffs.r == family.n):
        raise UnsupportedCombination(f'regular solutions at the origin need geodesic spheres, got {family}')

    dom_lo, dom_hi = coeffs.domain
    if upper is None:
        upper = min(40.0, dom_hi - 1e-9) if math.isfinite(dom_hi) else 40.0
    if not dom_lo <= 0.0 < upper < dom_hi:
        raise DomainExceeded(f'[0, {upper}] leaves the coefficient domain {coeffs.domain}')

    initial = RegularAtZero()
    interval = (0.0, float(upper))
    if method == 'auto' and (closed := family.closed_form(coeffs, initial, interval)):
        logger.debug('closed form %s for %s', closed.name, initial)
        return TauSolution(coeffs, interval, initial, Provenance('closed-form', closed.name), closed.evaluate)

    seed = _regular_seed(coeffs, SEED_RADIUS)
    edges = panel_edges(SEED_RADIUS, SEED_RADIUS, upper, width, _singular_ends(coeffs, SEED_RADIUS, upper))
    panels = _IntegratingFactorTable(coeffs, SEED_RADIUS, seed, edges).bind(order)
    r = coeffs.r

    def evaluate(s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        inner = s < SEED_RADIUS
        out = np.asarray(panels(np.where(inner, SEED_RADIUS, s)), dtype=float)
        return np.where(inner, seed * (np.clip(s, 0.0, None) / SEED_RADIUS) ** r, out)

    logger.debug('seeded regular solution: tau(%g) = %r', SEED_RADIUS, seed)
    return TauSolution(coeffs, interval, initial, Provenance('numeric', 'integrating-factor'), evaluate)


def tau_limit(solution: TauSolution, coeffs: Optional[OdeCoefficients] = None, at: Optional[float] = None) -> float:
    """Return the limit of `tau` at the end `at` of the family domain (default: the far end).

    >>> from hrsurf.ambient import AmbientSpace, ode_coefficients
    >>> from hrsurf.families import get_family
    >>> coeffs = ode_coefficients(get_family('spheres', AmbientSpace.parse('hfm:R:3')), 1, 1.0)
    >>> tau_limit(solve_regular_at_zero(coeffs, 2.0))
    0.5
    """
    coeffs = coeffs or solution.coeffs
    return float(coeffs.family.tau_limit(coeffs, float(solution.eval(solution.interval[1])), at))


def find_crossing(
    solution: TauSolution, level: float, bracket: Interval, *, xtol: float = 1e-12, maxiter: int = 200
) -> float:
    """Return `s` in `bracket` with `tau(s) = level`; the bracket must straddle the level."""
    lo, hi = bracket
    f_lo, f_hi = solution.eval(lo) - level, solution.eval(hi) - level
    if f_lo == 0:
        return float(lo)
    if f_hi == 0:
        return float(hi)
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoBracket(f'tau - {level:g} keeps the sign {np.sign(f_lo):+g} on [{lo}, {hi}]')

    root = optimize.brentq(lambda s: solution.eval(s) - level, lo, hi, xtol=xtol, maxiter=maxiter)
    logger.debug('tau = %g at s = %r', level, root)
    return float(root)


def scan_crossing(
    solution: TauSolution, level: float, lo: float, hi: float, *, points: int = 4096, start_off: bool = False
) -> float:
    """Return the first crossing of `level` in `(lo, hi]`, located on a grid and refined by `find_crossing`.

    With `start_off`, the start `lo` itself (where `tau` may already equal `level`) is skipped.
    """
    start = lo + 1e-9 * max(1.0, hi - lo) if start_off else lo
    grid = np.linspace(start, hi, points)
    excess = np.asarray(solution.eval(grid)) - level
    changes = np.nonzero(np.sign(excess[:-1]) != np.sign(excess[1:]))[0]
    if not changes.size:
        raise NoBracket(f'tau never reaches {level:g} on ({lo}, {hi}]')
    k = int(changes[0])
    return find_crossing(solution, level, (float(grid[k]), float(grid[k + 1])))


class _IntegratingFactorTable:
    """`tau` tabulated at panel edges, propagated outward from the anchor edge."""

    def __init__(self, coeffs: OdeCoefficients, s0: float, tau0: float, edges: np.ndarray) -> None:
        self.coeffs = coeffs
        self.edges = edges
        self.values = np.empty_like(edges)

        k0 = int(np.searchsorted(edges, s0))
        self.values[k0] = tau0
        growth, forcing = _panel_terms(coeffs, edges[k0:-1], edges[k0 + 1 :], GAUSS_ORDER)
        for k, (g, f) in enumerate(zip(growth, forcing), start=k0):
            self.values[k + 1] = self.values[k] * g + f
        growth, forcing = _panel_terms(coeffs, edges[1 : k0 + 1], edges[:k0], GAUSS_ORDER)
        for k in range(k0 - 1, -1, -1):
            self.values[k] = self.values[k + 1] * growth[k] + forcing[k]

        logger.debug('propagated tau across %d panels from s0=%g', len(edges) - 1, s0)

    def bind(self, order: int) -> Evaluator:
        def evaluate(s: np.ndarray) -> np.ndarray:
            s = np.asarray(s, dtype=float)
            flat = s.ravel()
            out = np.empty_like(flat)
            for start in range(0, flat.size, CHUNK):
                chunk = flat[start : start + CHUNK]
                nearest = nearest_edge(self.edges, chunk)
                growth, forcing = _panel_terms(self.coeffs, self.edges[nearest], chunk, order)
                out[start : start + CHUNK] = self.values[nearest] * growth + forcing
            return out.reshape(s.shape)

        return evaluate


def _panel_terms(coeffs: OdeCoefficients, x: np.ndarray, y: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Return `exp(A(x, y))` and `int_x^y b(u) exp(A(u, y)) du` for every panel `x -> y`."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    growth = np.exp(_integrate_a(coeffs, x, y, order))

    nodes, weights = panel_nodes(x, y, order)
    tail = _integrate_a(coeffs, nodes, np.broadcast_to(y[..., np.newaxis], nodes.shape), order)
    forcing = (coeffs.b(nodes) * np.exp(tail) * weights).sum(axis=-1)
    return growth, forcing


def _integrate_a(coeffs: OdeCoefficients, lo: np.ndarray, hi: np.ndarray, order: int) -> np.ndarray:
    nodes, weights = panel_nodes(lo, hi, order)
    return typing.cast(np.ndarray, (coeffs.a(nodes) * weights).sum(axis=-1))


def _regular_seed(coeffs: OdeCoefficients, eps: float) -> float:
    """Richardson-extrapolated implicit Euler value of the regular solution at `eps`.

    The steps are taken in `t = s^r`, where the regular solution starts out linear.
    """
    r = coeffs.r

    def implicit_euler(steps: int) -> float:
        dt = eps**r / steps
        tau = 0.0
        for k in range(1, steps + 1):
            s = (k * dt) ** (1 / r)
            jacobian = r * s ** (r - 1)
            tau = float((tau + dt * coeffs.b(s) / jacobian) / (1.0 - dt * coeffs.a(s) / jacobian))
        return tau

    return 2 * implicit_euler(2) - implicit_euler(1)


def _singular_ends(coeffs: OdeCoefficients, lo: float, hi: float) -> list[float]:
    """Interval ends within one panel of a finite end of the coefficient domain."""
    dom_lo, dom_hi = coeffs.domain
    ends = []
    if math.isfinite(dom_lo) and lo - dom_lo < 1.0:
        ends.append(lo)
    if math.isfinite(dom_hi) and dom_hi - hi < 1.0:
        ends.append(hi)
    return ends


logger.debug('successfully imported %s', __name__)
