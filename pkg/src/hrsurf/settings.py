"""Typed views of `hrsurf`'s settings file, and the job configuration built from it.

The settings file is YAML loaded by `pyspry` with the `HRSURF` prefix, so top-level keys read `HRSURF_DEFAULTS`,
`HRSURF_TOLERANCES`, and `HRSURF_JOBS`. Every value has a built-in default; a `JobConfig` takes command-line flags
first, then the settings file, then those defaults:

>>> Tolerances.from_primitives({'hr_relative': 1e-6}).hr_relative
1e-06
>>> job = JobConfig.resolve(None, space='hfm:R:3', family='spheres', r=1, hr=4.0, scenario='sphere')
>>> job.params().samples
2048
"""

from __future__ import annotations

import dataclasses
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Type, TypeVar

import pyspry

from hrsurf.ambient import AmbientSpace, IsoparametricFamily
from hrsurf.families import get_family
from hrsurf.profile import ConstructParams, HypersurfaceModel, construct

__all__ = ['Defaults', 'JobConfig', 'Tolerances', 'section']

logger = logging.getLogger(__name__)

T = TypeVar('T')


@dataclasses.dataclass(frozen=True)
class Defaults:
    """Numerical defaults for construction and export (`HRSURF_DEFAULTS`)."""

    samples: int = 2048
    """Samples per profile piece."""

    s_max: float = 40.0
    """Truncation of unbounded profiles."""

    azimuth: int = 128
    """Azimuthal resolution of OBJ meshes."""

    panel_width: float = 0.05
    gauss_order: int = 12
    anchor_offset: float = 1.0
    """Default distance from a singular radius to the `phi = 0` anchor."""

    @classmethod
    def from_primitives(cls, data: Optional[Mapping[str, Any]]) -> Defaults:
        """Create an instance from a mapping, ignoring (and logging) unknown keys."""
        return _from_primitives(cls, data)


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """Verification and root-finding tolerances (`HRSURF_TOLERANCES`)."""

    hr_relative: float = 1e-8
    """`H_r` residual for `H_r > 0`, relative to the target."""

    hr_absolute: float = 1e-9
    """`H_r` residual for r-minimal models."""

    two_route: float = 1e-10
    derivative: float = 1e-6
    """Allowed gap between the spline derivative of `rho` and the ODE value of `rho'`."""

    angle: float = 1e-12
    bisection: float = 1e-12
    max_iterations: int = 200

    @classmethod
    def from_primitives(cls, data: Optional[Mapping[str, Any]]) -> Tolerances:
        """Create an instance from a mapping, ignoring (and logging) unknown keys."""
        return _from_primitives(cls, data)

    def with_residual(self, tol: Optional[float]) -> Tolerances:
        """Override both `H_r` residual tolerances (the `--tol` flag)."""
        if tol is None:
            return self
        return dataclasses.replace(self, hr_relative=tol, hr_absolute=tol)


def _from_primitives(cls: Type[T], data: Optional[Mapping[str, Any]]) -> T:
    data = dict(data or {})
    names = [field.name for field in dataclasses.fields(cls)]  # type: ignore[arg-type]
    if unknown := sorted(set(data) - set(names)):
        logger.warning('ignoring unknown settings keys for %s: %s', cls.__name__, ', '.join(unknown))
    return cls(**{key: data[key] for key in names if key in data})


def section(settings: Optional[pyspry.Settings], key: str) -> Dict[str, Any]:
    """Return the `HRSURF_<key>` mapping of `settings`, or an empty one."""
    if settings is None:
        return {}
    try:
        value = getattr(settings, key)
    except (AttributeError, KeyError):
        return {}
    return dict(value or {})


@dataclasses.dataclass(frozen=True)
class JobConfig:
    """Everything needed to construct one model."""

    space: str
    """`hfm:<F>:<m>` or `sn:<n>`."""

    family: str
    r: int
    hr: float
    scenario: str
    lam: Optional[float] = None
    anchor: Optional[float] = None
    defaults: Defaults = Defaults()
    tolerances: Tolerances = Tolerances()
    out: Optional[Path] = None

    @classmethod
    def resolve(cls, settings: Optional[pyspry.Settings], **flags: Any) -> JobConfig:
        """Merge command-line `flags` (unset ones are `None`) over the settings file and the built-in defaults.

        Flags named after a `Defaults` field (e.g. `samples`, `s_max`) override that default.
        """
        base = Defaults.from_primitives(section(settings, 'DEFAULTS'))
        tolerances = Tolerances.from_primitives(section(settings, 'TOLERANCES'))

        given = {key: value for key, value in flags.items() if value is not None}
        overrides = {key: given.pop(key) for key in list(given) if key in Defaults.__dataclass_fields__}
        if 'tol' in given:
            tolerances = tolerances.with_residual(given.pop('tol'))

        return cls(defaults=dataclasses.replace(base, **overrides), tolerances=tolerances, **given)

    @classmethod
    def from_primitives(cls, data: Mapping[str, Any], settings: Optional[pyspry.Settings] = None) -> JobConfig:
        """Create a job from an entry of `HRSURF_JOBS` (the `lambda` key maps to `lam`)."""
        data = dict(data)
        if 'lambda' in data:
            data['lam'] = data.pop('lambda')
        return cls.resolve(settings, **data)

    def ambient(self) -> AmbientSpace:
        """Parse the ambient space."""
        return AmbientSpace.parse(self.space)

    def isoparametric_family(self) -> IsoparametricFamily:
        """Look up the family in the catalog."""
        return get_family(self.family, self.ambient())

    def params(self) -> ConstructParams:
        """The construction parameters of this job."""
        d = self.defaults
        return ConstructParams(
            lam=self.lam,
            anchor=self.anchor,
            samples=d.samples,
            s_max=d.s_max,
            panel_width=d.panel_width,
            gauss_order=d.gauss_order,
            anchor_offset=d.anchor_offset,
        )

    def build(self) -> HypersurfaceModel:
        """Construct the model."""
        logger.debug('constructing %s', self)
        return construct(self.isoparametric_family(), self.r, self.hr, self.scenario, self.params())

    def describe(self) -> str:
        """Summarize the job on one line."""
        lam = '' if self.lam is None else f' lambda={self.lam:g}'
        return f'{self.scenario}: {self.family} of {self.space}, r={self.r}, H_r={self.hr:g}{lam}'


logger.debug('successfully imported %s', __name__)
