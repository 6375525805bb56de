"""Serialize models, reports, and tables.

Profiles are written as JSON following the versioned schema `hrsurf/1`:

    {schema, space, family, r, hr, scenario, classification, convexity, params, crossings,
     symmetry?, period?, slab_halfwidth?,
     pieces: [{placement: {kind, height}, endpoints: [lo, hi], samples: [{s, tau, rho, phi, phi_prime}]}]}

Keys are sorted and floats use their shortest round-trip form, so the same model always produces the same bytes.
An infinite `phi'` (a vertical tangent) is written as `null`.

Other documents go through the `dumps()` / `loads()` registry:

>>> print(dumps('yaml', {'C_F(r)': 2.0}))
C_F(r): 2.0
<BLANKLINE>
>>> loads('json', '{"a": 1}')
{'a': 1}
"""

from __future__ import annotations

import dataclasses
import json
import logging
import math
import typing
from typing import Any, Callable, Dict, Optional

import numpy as np
import tomlkit as toml
import yaml

from hrsurf.ambient import AmbientSpace
from hrsurf.errors import SchemaError
from hrsurf.families import get_family
from hrsurf.profile import LABELS, SCENARIOS, HypersurfaceModel, Piece, Placement, ProfileCurve

if typing.TYPE_CHECKING:  # pragma: no cover
    from hrsurf.verify import VerificationReport

__all__ = [
    'DUMPERS',
    'LOADERS',
    'SCHEMA',
    'FormatT',
    'dumps',
    'loads',
    'model_from_primitives',
    'model_to_primitives',
    'report_to_primitives',
]

logger = logging.getLogger(__name__)

SCHEMA = 'hrsurf/1'

FormatT = typing.Literal['json', 'toml', 'yaml']
"""The supported serialization formats."""

LoadT = Callable[[str], Dict[str, Any]]
DumpT = Callable[[Dict[str, Any]], str]

SAMPLE_KEYS = ('s', 'tau', 'rho', 'phi', 'phi_prime')


def dump_json(data: Dict[str, Any]) -> str:
    """Dump deterministic JSON: sorted keys, one-space indent, no `NaN` / `Infinity`."""
    return json.dumps(data, sort_keys=True, indent=1, allow_nan=False) + '\n'


def dump_yaml(data: Dict[str, Any]) -> str:
    """Dump YAML with the keys in insertion order."""
    return typing.cast(str, yaml.safe_dump(data, sort_keys=False))


LOADERS: dict[FormatT, LoadT] = {
    'json': json.loads,
    'toml': toml.loads,
    'yaml': yaml.safe_load,
}

DUMPERS: dict[FormatT, DumpT] = {
    'json': dump_json,
    'toml': toml.dumps,  # pyright: ignore[reportUnknownMemberType]
    'yaml': dump_yaml,
}


def dumps(fmt: FormatT, data: dict[str, Any]) -> str:
    """Serialize the given `data` object to the given `FormatT`."""
    try:
        dump = DUMPERS[fmt]
    except KeyError as exc:
        raise ValueError(f"unsupported format: '{fmt}'") from exc

    return dump(data)


def loads(fmt: FormatT, raw: str) -> dict[str, Any]:
    """Deserialize the given `raw` string for the given `FormatT`."""
    try:
        load = LOADERS[fmt]
    except KeyError as exc:
        raise ValueError(f"unsupported format: '{fmt}'") from exc

    return load(raw)


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             profiles


def _finite(value: Any) -> Optional[float]:
    value = float(value)
    return value if math.isfinite(value) else None


def _primitive(value: Any) -> Any:
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    return _finite(value)


def _piece_to_primitives(piece: Piece) -> dict[str, Any]:
    profile, placement = piece
    columns = [profile.s, profile.tau, profile.rho, profile.phi, profile.phi_prime]
    samples = [
        {key: _finite(value) for key, value in zip(SAMPLE_KEYS, row)} for row in zip(*(c.tolist() for c in columns))
    ]
    return {
        'placement': {'kind': placement.kind, 'height': float(placement.height)},
        'endpoints': list(profile.endpoints),
        'samples': samples,
    }


def model_to_primitives(model: HypersurfaceModel) -> dict[str, Any]:
    """Convert a model to JSON-ready primitives."""
    data: dict[str, Any] = {
        'schema': SCHEMA,
        'space': str(model.space),
        'family': model.family.kind,
        'r': int(model.r),
        'hr': float(model.target_hr),
        'scenario': model.scenario,
        'classification': model.classification,
        'convexity': model.convexity,
        'params': {key: _primitive(value) for key, value in sorted(model.params.items())},
        'crossings': [float(s) for s in model.crossings],
        'pieces': [_piece_to_primitives(piece) for piece in model.pieces],
    }
    if model.symmetry is not None:
        data['symmetry'] = float(model.symmetry)
    if model.period is not None:
        data['period'] = float(model.period)
    if model.slab is not None:
        data['slab_halfwidth'] = _finite(model.slab)
    return data


def model_from_primitives(data: dict[str, Any]) -> HypersurfaceModel:
    """Rebuild a model from `model_to_primitives()` output.

    Raises:
        SchemaError: the schema tag is wrong, or a key is missing or malformed
    """
    if not isinstance(data, dict) or data.get('schema') != SCHEMA:
        tag = data.get('schema') if isinstance(data, dict) else type(data).__name__
        raise SchemaError(f"expected schema '{SCHEMA}', got {tag!r}")

    try:
        family = get_family(data['family'], AmbientSpace.parse(data['space']))
        r, hr = int(data['r']), float(data['hr'])
        if data['classification'] not in LABELS or data['scenario'] not in SCENARIOS:
            raise SchemaError(f"unknown classification or scenario: {data['classification']}, {data['scenario']}")

        pieces = tuple(_piece_from_primitives(piece, family, r, hr) for piece in data['pieces'])
        if not pieces:
            raise SchemaError('a profile needs at least one piece')

        model = HypersurfaceModel(
            family,
            r,
            hr,
            data['scenario'],
            data['classification'],
            pieces,
            convexity=data.get('convexity'),
            symmetry=data.get('symmetry'),
            period=data.get('period'),
            slab=math.inf if data.get('slab_halfwidth', 0.0) is None else data.get('slab_halfwidth'),
            crossings=tuple(float(s) for s in data.get('crossings', ())),
            params=dict(data.get('params', {})),
        )
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f'malformed profile: {exc!r}') from exc

    logger.debug('loaded %s with %d pieces', model.classification, len(model.pieces))
    return model


def _piece_from_primitives(data: dict[str, Any], family: Any, r: int, hr: float) -> Piece:
    samples = data['samples']
    if len(samples) < 2:  # noqa: PLR2004
        raise SchemaError(f'a piece needs at least 2 samples, got {len(samples)}')

    columns = {key: np.array([row[key] for row in samples], dtype=float) for key in SAMPLE_KEYS}
    columns['phi_prime'] = np.where(np.isnan(columns['phi_prime']), np.inf, columns['phi_prime'])
    placement = Placement(data['placement']['kind'], float(data['placement']['height']))
    if placement.kind == 'mirror':
        columns['phi_prime'] = np.where(np.isinf(columns['phi_prime']), -np.inf, columns['phi_prime'])

    lo, hi = data['endpoints']
    profile = ProfileCurve(endpoints=(lo, hi), r=r, target_hr=hr, family=family, **columns)
    return Piece(profile, placement)


def report_to_primitives(report: VerificationReport) -> dict[str, Any]:
    """Convert a verification report to JSON-ready primitives."""
    return {
        'schema': SCHEMA,
        'passed': report.passed,
        'max_hr_residual': _finite(report.max_hr_residual),
        'residual_location': _finite(report.residual_location),
        'max_sampled_residual': _finite(report.max_sampled_residual),
        'sampled_location': _finite(report.sampled_location),
        'checks': [check._asdict() for check in report.checks],
        'tolerances': dataclasses.asdict(report.tolerances),
    }


logger.debug('successfully imported %s', __name__)
