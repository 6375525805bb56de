"""The catalog of isoparametric families.

Each family kind lives in a module of this package and is implemented as a subclass of
`hrsurf.ambient.IsoparametricFamily`. `get_family()` imports the module for a kind and returns the instance that
supports the requested space:

>>> from hrsurf.ambient import AmbientSpace
>>> get_family('equidistants', AmbientSpace.parse('hfm:R:3'))
Equidistants(space=AmbientSpace('hfm:R:3'))

## Available Families

- `hrsurf.families.spheres`: geodesic spheres of `H_F^m` and of `S^n`
- `hrsurf.families.horospheres`: horospheres of `H_F^m`
- `hrsurf.families.equidistants`: equidistant hypersurfaces of `H^n`
"""

from __future__ import annotations

import importlib
import logging
import typing

from hrsurf.ambient import AmbientSpace, FamilyKindT, IsoparametricFamily
from hrsurf.errors import UnsupportedCombination

__all__ = ['FAMILY_KINDS', 'get_family']

logger = logging.getLogger(__name__)

FAMILY_KINDS: tuple[FamilyKindT, ...] = typing.get_args(FamilyKindT)


def get_family(kind: str, space: AmbientSpace) -> IsoparametricFamily:
    """Import the `IsoparametricFamily` subclass for `kind` that supports `space`."""
    if kind not in FAMILY_KINDS:
        raise UnsupportedCombination(f"unknown family: '{kind}' (expected one of {', '.join(FAMILY_KINDS)})")

    module = importlib.import_module(f'hrsurf.families.{kind}')
    for val in module.__dict__.values():
        try:
            is_subclass = issubclass(val, IsoparametricFamily)
        except TypeError:
            continue

        if is_subclass and val is not IsoparametricFamily and val.kind == kind and val.supports(space):
            return typing.cast(IsoparametricFamily, val(space))

    raise UnsupportedCombination(f'{kind} are not part of the catalog for {space}')


logger.debug('successfully imported %s', __name__)
