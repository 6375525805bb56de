""".. include:: ../../README.md

# Navigation
- `hrsurf.symfun` for elementary symmetric polynomials of curvature spectra
- `hrsurf.ambient` for ambient spaces, isoparametric families, and their constants
    - `hrsurf.families.spheres`
    - `hrsurf.families.horospheres`
    - `hrsurf.families.equidistants`
- `hrsurf.ode` for the linear ODE solved by `tau = rho^r`
- `hrsurf.profile` for construction and classification
- `hrsurf.verify` for independent checks of constructed models
- `hrsurf.codec` and `hrsurf.export` for files
- `hrsurf.cli` for commands and CLI documentation
"""  # noqa: D415

from __future__ import annotations

__version__ = '0.0.0'

from pathlib import Path

from pyspry import Settings

__all__ = ['DEFAULT_SETTINGS_PATHS', 'load_settings', 'resolve_settings_path']

DEFAULT_SETTINGS_PATHS = [
    Path.cwd() / 'hrsurf-settings.yaml',
    Path.home() / 'hrsurf-settings.yaml',
    Path('/etc/hrsurf/settings.yaml'),
]
"""Check each of these locations for `hrsurf`'s settings file.

The following locations are checked (ordered by priority):

1. `./hrsurf-settings.yaml`
2. `~/hrsurf-settings.yaml`
3. `/etc/hrsurf/settings.yaml`
"""

SETTINGS_PREFIX = 'HRSURF'


def load_settings(path: Path) -> Settings:
    """Load the settings from the given path."""
    return Settings.load(path, SETTINGS_PREFIX)


def resolve_settings_path() -> Path:
    """Return the first path in `DEFAULT_SETTINGS_PATHS` that exists."""
    for path in DEFAULT_SETTINGS_PATHS:
        if path.is_file():
            return path

    raise FileNotFoundError('Could not find hrsurf settings', DEFAULT_SETTINGS_PATHS)
