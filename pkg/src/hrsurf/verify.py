"""Check constructed models pointwise, independently of the solver that built them.

At every sample the principal curvatures of the graph are rebuilt from the stored `rho` and the leaf spectrum,

    k_i = -rho k_i^s (with the leaf multiplicities),    k_n = rho',

and `H_r` is evaluated as the elementary symmetric polynomial of this array. `rho'` comes two ways: from the ODE
relation `a tau + b`, and from a quintic spline through the `rho` samples. The ODE route only sees `rho` and `tau`
disagree; the sampled route also catches a stored `tau` that solves the wrong equation.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from typing import Any, List, NamedTuple, Optional, Tuple

import numpy as np
from scipy import interpolate

from hrsurf.ambient import ode_coefficients
from hrsurf.errors import NotApplicable
from hrsurf.profile import ConvexityT, HypersurfaceModel, ProfileCurve
from hrsurf.settings import Tolerances
from hrsurf.symfun import elem_sym_entries, full_array_hr, graph_hr

__all__ = [
    'Check',
    'ConvexityProfile',
    'VerificationReport',
    'classify_samples',
    'curvature_extremes',
    'principal_curvatures',
    'verify_constancy',
    'verify_convexity',
    'verify_height_estimate',
    'verify_model',
]

logger = logging.getLogger(__name__)

SPLINE_DEGREE = 5
SPLINE_MARGIN = 3
"""Spline derivatives are not compared at this many samples next to each end."""

_INNER = slice(SPLINE_MARGIN, -SPLINE_MARGIN)


class Check(NamedTuple):
    """The outcome of one check."""

    name: str
    passed: bool
    detail: str = ''


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """Every check run on a model, and the largest `H_r` residuals."""

    max_hr_residual: float
    residual_location: float
    """The `s` of the worst sample."""

    checks: Tuple[Check, ...]
    tolerances: Tolerances

    max_sampled_residual: float = 0.0
    """Largest residual with `rho'` taken from the spline through the samples, scaled by the sensitivity to `rho'`."""

    sampled_location: float = math.nan

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[Check]:
        """The failed checks."""
        return [check for check in self.checks if not check.passed]


class ConvexityProfile(NamedTuple):
    """The per-sample convexity of the fundamental piece and whether it matches the classification."""

    s: np.ndarray
    classes: np.ndarray
    """`'strict'`, `'convex'`, or `'nonconvex'` at each sample of `s`."""

    check: Check


@dataclasses.dataclass(frozen=True)
class _Reconstruction:
    s: np.ndarray
    keep: np.ndarray
    tau: np.ndarray
    rho: np.ndarray
    rho_prime: np.ndarray
    entries: List[Tuple[Any, int]]


def _reconstruct(profile: ProfileCurve) -> _Reconstruction:
    """Keep the samples where the curvatures are finite and attach `rho' = (a tau + b) / (r rho^(r-1))`."""
    family, r = profile.family, profile.r
    coeffs = ode_coefficients(family, r, profile.target_hr)
    keep = np.asarray(family.contains(profile.s) & coeffs.contains(profile.s), dtype=bool)
    if r > 1:
        keep &= profile.rho > 0

    s, tau, rho = profile.s[keep], profile.tau[keep], profile.rho[keep]
    if profile.is_degenerate:
        rho_prime = np.zeros_like(s)
    else:
        rho_prime = np.asarray(coeffs.tau_prime(s, tau), dtype=float) / (r * rho ** (r - 1))
    return _Reconstruction(s, keep, tau, rho, rho_prime, family.entries(s))


def principal_curvatures(profile: ProfileCurve) -> tuple[np.ndarray, np.ndarray]:
    """Return the sample radii and the `(samples, n)` array of principal curvatures, axis samples excluded."""
    rec = _reconstruct(profile)
    return rec.s, _curvature_array(rec)


def _curvature_array(rec: _Reconstruction) -> np.ndarray:
    columns = [np.broadcast_to(-rec.rho * value, rec.s.shape) for value, mult in rec.entries for _ in range(mult)]
    columns.append(rec.rho_prime)
    return np.column_stack(columns)


def curvature_extremes(profile: ProfileCurve) -> tuple[np.ndarray, np.ndarray]:
    """Return the smallest and largest principal curvature at every sample; `nan` where they are undefined."""
    rec = _reconstruct(profile)
    curvatures = _curvature_array(rec)
    k_min = np.full(len(profile), np.nan)
    k_max = np.full(len(profile), np.nan)
    k_min[rec.keep] = curvatures.min(axis=-1)
    k_max[rec.keep] = curvatures.max(axis=-1)
    return k_min, k_max


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             constancy


def verify_constancy(model: HypersurfaceModel, tolerances: Optional[Tolerances] = None) -> VerificationReport:
    """Compare `H_r` of the rebuilt curvature array with the target at every sample of every piece.

    H_r > 0 is compared relatively (`hr_relative`), r-minimal models absolutely (`hr_absolute`). The same comparison
    with the spline `rho'` is divided by `1 + |e_(r-1)| (1 + |rho'|)`, the size of an admissible spline error, and
    held to `derivative` on top of that. Failures are report entries; nothing is raised.
    """
    tol = tolerances or Tolerances()
    target = model.target_hr
    minimal = target == 0
    limit = tol.hr_absolute if minimal else tol.hr_relative
    sampled_limit = tol.derivative + limit

    worst, sampled = _Worst(), _Worst()
    checks: list[Check] = []
    for index, (profile, placement) in enumerate(model.pieces):
        label = f'piece {index} ({placement.kind})'
        if len(profile) < 2:  # noqa: PLR2004
            checks.append(Check('samples', False, f'{label}: {len(profile)} samples'))
            continue

        rec = _reconstruct(profile)
        full = np.asarray(full_array_hr(rec.entries, rec.rho, rec.rho_prime, model.r), dtype=float)
        closed = np.asarray(graph_hr(rec.entries, rec.rho, rec.rho_prime, model.r), dtype=float)
        full = np.broadcast_to(full, rec.s.shape)

        worst.update(np.abs(full - target) / (1.0 if minimal else target), rec.s)
        fitted = _spline_rho_prime(profile, rec)
        if fitted is not None:
            sampled.update(_sampled_residual(rec, fitted, model.r, target), rec.s[_INNER])

        two_route = float(np.max(np.abs(full - closed) / np.maximum(1.0, np.abs(full)), initial=0.0))
        checks.append(
            Check('two-route', two_route <= tol.two_route, f'{label}: max |e_r - H_r(graph)| = {two_route:.3g}')
        )
        checks.append(_check_rho_tau(profile, label, tol))
        checks.append(_check_derivative(rec, fitted, label, tol, profile.is_degenerate))
        checks.append(_check_angle(profile, label, tol))
        checks.append(_check_bounds(profile, label))
        checks.append(_check_monotone(profile, placement.kind, label))

    kind = 'absolute' if minimal else 'relative'
    passed = worst.value <= limit and sampled.value <= sampled_limit
    detail = f'max {kind} H_r residual {worst.value:.3g} at s = {worst.s:.6g}'
    if not math.isnan(sampled.s):
        detail += f"; with the spline rho' {sampled.value:.3g} at s = {sampled.s:.6g}"
    if worst.value > limit:
        detail += f'; violates residual <= {limit:g}'
    if sampled.value > sampled_limit:
        detail += f'; violates spline residual <= {sampled_limit:g}'
    checks.insert(0, Check('constancy', passed, detail))
    logger.debug('constancy of %s: %s', model.classification, detail)
    return VerificationReport(worst.value, worst.s, tuple(checks), tol, sampled.value, sampled.s)


class _Worst:
    """The largest residual seen so far and where it was; the first sample seen counts even at zero."""

    def __init__(self) -> None:
        self.value, self.s = 0.0, math.nan

    def update(self, residual: np.ndarray, s: np.ndarray) -> None:
        """Keep the largest entry of `residual` if it beats the current one."""
        if not residual.size:
            return
        k = int(np.argmax(residual))
        if residual[k] > self.value or math.isnan(self.s):
            self.value, self.s = float(residual[k]), float(s[k])


def _spline_rho_prime(profile: ProfileCurve, rec: _Reconstruction) -> Optional[np.ndarray]:
    """Differentiate a quintic spline through `rho` at the kept samples, away from both ends."""
    if profile.is_degenerate or len(rec.s) < 2 * SPLINE_MARGIN + SPLINE_DEGREE + 1:
        return None
    spline = interpolate.make_interp_spline(rec.s, rec.rho, k=SPLINE_DEGREE)
    return np.asarray(spline.derivative()(rec.s[_INNER]), dtype=float)


def _sampled_residual(rec: _Reconstruction, fitted: np.ndarray, r: int, target: float) -> np.ndarray:
    rho = rec.rho[_INNER]
    entries = [(value[_INNER] if np.ndim(value) else value, mult) for value, mult in rec.entries]
    hr = np.broadcast_to(np.asarray(full_array_hr(entries, rho, fitted, r), dtype=float), rho.shape)
    leaf = [(-rho * value, mult) for value, mult in entries]
    sensitivity = np.abs(np.broadcast_to(np.asarray(elem_sym_entries(leaf, r - 1), dtype=float), rho.shape))
    scale = max(1.0, abs(target)) * (1 + sensitivity * (1 + np.abs(rec.rho_prime[_INNER])))
    return np.abs(hr - target) / scale


def _check_rho_tau(profile: ProfileCurve, label: str, tol: Tolerances) -> Check:
    gap = float(np.max(np.abs(np.clip(profile.rho, 0.0, None) ** profile.r - profile.tau), initial=0.0))
    return Check('rho-tau', gap <= tol.two_route, f'{label}: max |rho^r - tau| = {gap:.3g}')


def _check_derivative(
    rec: _Reconstruction, fitted: Optional[np.ndarray], label: str, tol: Tolerances, degenerate: bool
) -> Check:
    if degenerate:
        return Check('derivative', True, f'{label}: constant radius')
    if fitted is None:
        return Check('derivative', True, f'{label}: too few samples for a spline')

    expected = rec.rho_prime[_INNER]
    excess = np.abs(fitted - expected) / (1 + np.abs(expected))
    k = int(np.argmax(excess))
    passed = bool(excess[k] <= tol.derivative)
    return Check(
        'derivative',
        passed,
        f"{label}: spline rho' vs (a tau + b)/(r rho^(r-1)) differ by {excess[k]:.3g} at s = {rec.s[_INNER][k]:.6g}",
    )


def _check_angle(profile: ProfileCurve, label: str, tol: Tolerances) -> Check:
    gap = float(np.max(np.abs(profile.theta - profile.slope_angle), initial=0.0))
    return Check('angle', gap <= tol.angle, f"{label}: max |sqrt(1 - rho^2) - 1/sqrt(1 + phi'^2)| = {gap:.3g}")


def _check_bounds(profile: ProfileCurve, label: str) -> Check:
    lo, hi = float(np.min(profile.rho)), float(np.max(profile.rho))
    return Check('rho-bounds', 0.0 <= lo and hi <= 1.0, f'{label}: rho in [{lo:.6g}, {hi:.6g}]')


def _check_monotone(profile: ProfileCurve, kind: str, label: str) -> Check:
    steps = np.diff(profile.phi) if kind == 'base' else -np.diff(profile.phi)
    slack = 1e-12 * max(1.0, float(np.max(np.abs(profile.phi), initial=0.0)))
    low = float(np.min(steps, initial=0.0))
    direction = 'non-decreasing' if kind == 'base' else 'non-increasing'
    return Check('monotone', low >= -slack, f'{label}: phi {direction} (smallest step {low:.3g})')


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             geometric claims


def classify_samples(curvatures: np.ndarray) -> np.ndarray:
    """Classify each row of principal curvatures as `'strict'`, `'convex'`, or `'nonconvex'`.

    >>> classify_samples(np.array([[1.0, 2.0], [0.0, 1.0], [-1.0, 1.0]])).tolist()
    ['strict', 'convex', 'nonconvex']
    """
    scale = 1e-12 * (1 + np.max(np.abs(curvatures), axis=-1))
    strict = np.all(curvatures > scale[:, np.newaxis], axis=-1)
    convex = np.all(curvatures >= -scale[:, np.newaxis], axis=-1)
    return np.where(strict, 'strict', np.where(convex, 'convex', 'nonconvex'))


def verify_convexity(model: HypersurfaceModel) -> ConvexityProfile:
    """Classify each sample of the fundamental piece by the signs of its principal curvatures.

    The aggregate is compared with what the classification asserts: strictly convex spheres of `H_F^m`, the
    convexity flag of spheres of `S^n` (nonconvex exactly past the equator), entire graphs without nonconvex points,
    and the sign pattern of horosphere-type (`n-1` negative, one non-negative) and equidistant-type (`n-1`
    positive, one non-positive) hypersurfaces.
    """
    profile = model.base
    s, curvatures = principal_curvatures(profile)
    classes = classify_samples(curvatures)
    label = model.classification
    scale = 1e-12 * (1 + np.max(np.abs(curvatures), axis=-1))

    if label == 'C1_Sphere' and model.space.kind == 'sphere':
        check = _sphere_claim(s, classes, model.convexity)
    elif label == 'C1_Sphere':
        check = Check('convexity', bool(np.all(classes == 'strict')), _census(classes, 'strictly convex'))
    elif label == 'C2_EntireGraph':
        check = Check('convexity', not np.any(classes == 'nonconvex'), _census(classes, 'convex'))
    elif label == 'HorosphereBigraph':
        leaf, vertical = curvatures[:, :-1], curvatures[:, -1]
        passed = bool(np.all(leaf < 0) and np.all(vertical >= -scale))
        check = Check('convexity', passed, 'n-1 negative and one non-negative principal curvature')
    elif label in ('EquidistantBigraph', 'EquidistantAsymptoticGraph'):
        leaf, vertical = curvatures[:, :-1], curvatures[:, -1]
        passed = bool(np.all(leaf > 0) and np.all(vertical <= scale))
        check = Check('convexity', passed, 'n-1 positive and one non-positive principal curvature')
    else:
        check = Check('convexity', True, f'no convexity claim for {label}')

    logger.debug('convexity of %s: %s', label, check.detail)
    return ConvexityProfile(s, classes, check)


def _census(classes: np.ndarray, claim: str) -> str:
    counts = {key: int(np.sum(classes == key)) for key in ('strict', 'convex', 'nonconvex')}
    return f'claimed {claim}; samples: ' + ', '.join(f'{count} {key}' for key, count in counts.items())


def _sphere_claim(s: np.ndarray, classes: np.ndarray, convexity: Optional[ConvexityT]) -> Check:
    if convexity == 'strict':
        return Check('convexity', bool(np.all(classes == 'strict')), _census(classes, 'strictly convex'))
    if convexity == 'convex':
        return Check('convexity', not np.any(classes == 'nonconvex'), _census(classes, 'convex'))

    equator = math.pi / 2
    outer = s > equator + 1e-9
    inner = s < equator - 1e-9
    passed = bool(np.all(classes[outer] == 'nonconvex') and not np.any(classes[inner] == 'nonconvex') and outer.any())
    return Check('convexity', passed, _census(classes, 'nonconvex exactly past the equator'))


def verify_height_estimate(model: HypersurfaceModel, tolerance: float = 1e-9) -> Check:
    """Check that the upper half of a strictly convex sphere is no higher than `1 / min k_1`.

    The height is measured from the equator slice (the vertical-tangent ring) to the pole.

    Raises:
        NotApplicable: the model is not a strictly convex sphere
    """
    if model.classification != 'C1_Sphere' or model.convexity != 'strict':
        raise NotApplicable(f'the height estimate needs a strictly convex sphere, not {model.classification}')

    profile = model.base
    _, curvatures = principal_curvatures(profile)
    smallest = float(np.min(curvatures))
    if smallest <= 0:
        return Check('height-estimate', False, f'smallest principal curvature {smallest:.3g} is not positive')

    height = float(profile.phi[-1] - profile.phi[0])
    bound = 1 / smallest
    return Check(
        'height-estimate',
        height <= bound + tolerance,
        f'height {height:.9g} <= 1/min k_1 = {bound:.9g} (slack {bound - height:.3g})',
    )


def verify_model(model: HypersurfaceModel, tolerances: Optional[Tolerances] = None) -> VerificationReport:
    """Run the constancy, convexity, and (where it applies) height-estimate checks."""
    report = verify_constancy(model, tolerances)
    checks = list(report.checks)
    checks.append(verify_convexity(model).check)
    try:
        checks.append(verify_height_estimate(model))
    except NotApplicable as exc:
        logger.debug('skipped the height estimate: %s', exc)

    return dataclasses.replace(report, checks=tuple(checks))


logger.debug('successfully imported %s', __name__)
