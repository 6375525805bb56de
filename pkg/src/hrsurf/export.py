"""Write profiles as CSV tables and surfaces of revolution as Wavefront OBJ meshes.

Only rotational models of 3-dimensional products revolve into a mesh. The horizontal slice is drawn in a planar
chart, which is a visualization convention and carries no geometry:

- `S^2`: azimuthal-equidistant chart around the pole, planar radius `s`
- `H^2`: Poincaré disk, planar radius `tanh(s/2)`

The OBJ file is rendered from the package template:

```jinja
.. include:: ./templates/mesh.obj.j2
```
"""

from __future__ import annotations

import csv
import io
import logging
import math
import typing
from typing import List, NamedTuple, Optional, Tuple

import jinja2
import numpy as np

import hrsurf
from hrsurf.errors import UnsupportedExport
from hrsurf.profile import HypersurfaceModel, ProfileCurve
from hrsurf.verify import curvature_extremes

__all__ = ['CSV_COLUMNS', 'MeshAudit', 'mesh_audit', 'to_csv', 'to_obj']

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('s', 'tau', 'rho', 'phi', 'theta', 'k_min', 'k_max')

DEFAULT_RINGS = 256
JUNCTION_TOLERANCE = 1e-6
"""Consecutive profile points closer than this (in the chart) are merged."""

AXIS_RADIUS = 1e-12

Point = Tuple[float, float]


def to_csv(model: HypersurfaceModel, piece: int = 0) -> str:
    """Return one RFC 4180 row per sample of a piece (default: the fundamental one).

    Curvatures are left empty where they are undefined (on the rotation axis).
    """
    try:
        profile = model.pieces[piece].profile
    except IndexError as exc:
        raise UnsupportedExport(f'the model has {len(model.pieces)} pieces, not {piece + 1}') from exc

    k_min, k_max = curvature_extremes(profile)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\r\n')
    writer.writerow(CSV_COLUMNS)
    for row in zip(profile.s, profile.tau, profile.rho, profile.phi, profile.theta, k_min, k_max):
        writer.writerow(['' if math.isnan(value) else repr(float(value)) for value in row])

    logger.debug('wrote %d csv rows', len(profile))
    return buffer.getvalue()


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             meshes


class MeshAudit(NamedTuple):
    """Counts and quality of a triangle mesh."""

    vertices: int
    edges: int
    faces: int
    euler: int
    """`V - E + F`: `2` for a closed sphere, `0` for an annulus."""

    min_area: float


def _chart(model: HypersurfaceModel) -> tuple[str, typing.Callable[[np.ndarray], np.ndarray]]:
    space = model.space
    if space.n != 2 or model.family.kind != 'spheres':  # noqa: PLR2004
        raise UnsupportedExport(f'meshes need rotational models of S^2 x R or H^2 x R, not {model.family}')
    if model.classification == 'Cylinder':
        raise UnsupportedExport('a cylinder has no profile to revolve')
    if space.kind == 'sphere':
        return 'azimuthal-equidistant (planar radius = s)', lambda s: s
    return 'Poincare disk (planar radius = tanh(s/2))', lambda s: np.tanh(s / 2)


def _polyline(profile: ProfileCurve, chart: typing.Callable[[np.ndarray], np.ndarray], rings: int) -> List[Point]:
    index = np.unique(np.round(np.linspace(0, len(profile) - 1, min(rings, len(profile)))).astype(int))
    radius = chart(profile.s[index])
    if not np.all(np.isfinite(radius)) or np.any(radius < 0):
        raise UnsupportedExport('the profile leaves the chart')
    return list(zip(radius.tolist(), profile.phi[index].tolist()))


def _close(p: Point, q: Point) -> bool:
    return math.dist(p, q) < JUNCTION_TOLERANCE


def _chain(base: List[Point], mirror: List[Point]) -> List[Point]:
    """Join two pieces at their shared vertical-tangent ring."""
    if _close(base[-1], mirror[-1]):
        return base + mirror[::-1][1:]
    if _close(base[0], mirror[0]):
        return mirror[::-1] + base[1:]
    if _close(base[-1], mirror[0]):
        return base + mirror[1:]
    if _close(base[0], mirror[-1]):
        return mirror + base[1:]
    raise UnsupportedExport('the pieces do not meet')


def _deduplicated(points: List[Point]) -> List[Point]:
    kept = [points[0]]
    for point in points[1:]:
        if not _close(point, kept[-1]):
            kept.append(point)
    return kept


def _triangulate(points: List[Point], azimuth: int) -> tuple[np.ndarray, np.ndarray]:
    """Revolve the `(radius, height)` polyline; axis points become single pole vertices."""
    angles = 2 * np.pi * np.arange(azimuth) / azimuth
    cos, sin = np.cos(angles), np.sin(angles)

    vertices: list[np.ndarray] = []
    faces: list[tuple[int, int, int]] = []
    previous: Optional[list[int]] = None
    count = 0
    for radius, height in points:
        if radius <= AXIS_RADIUS:
            vertices.append(np.array([[0.0, 0.0, height]]))
            ring = [count] * azimuth
            count += 1
        else:
            vertices.append(np.column_stack([radius * cos, radius * sin, np.full(azimuth, height)]))
            ring = list(range(count, count + azimuth))
            count += azimuth

        if previous is not None:
            for j in range(azimuth):
                a, b = previous[j], previous[(j + 1) % azimuth]
                c, d = ring[j], ring[(j + 1) % azimuth]
                if a != b:
                    faces.append((a, b, d))
                if c != d:
                    faces.append((a, d, c))
        previous = ring

    return np.concatenate(vertices), np.array(faces, dtype=int)


def to_obj(model: HypersurfaceModel, azimuth: int = 128, rings: Optional[int] = None) -> str:
    """Revolve the profile pieces into a triangle mesh and render it as OBJ text.

    Raises:
        UnsupportedExport: the model is not a rotational model of `S^2 x R` or `H^2 x R`, or it is a cylinder
    """
    chart_name, chart = _chart(model)
    if azimuth < 3:  # noqa: PLR2004
        raise UnsupportedExport(f'the azimuthal resolution must be at least 3: {azimuth}')

    lines = [_polyline(piece.profile, chart, rings or DEFAULT_RINGS) for piece in model.pieces]
    points = lines[0] if len(lines) == 1 else _chain(lines[0], lines[1])
    vertices, faces = _triangulate(_deduplicated(points), azimuth)

    loader = jinja2.PackageLoader('hrsurf')
    env = jinja2.Environment(autoescape=jinja2.select_autoescape(default=False), loader=loader)
    rendered = env.get_template('mesh.obj.j2').render(
        version=hrsurf.__version__,
        space=str(model.space),
        classification=model.classification,
        r=model.r,
        hr=f'{model.target_hr:.12g}',
        chart=chart_name,
        vertices=[' '.join(f'{x:.12g}' for x in vertex) for vertex in vertices.tolist()],
        faces=[' '.join(str(i + 1) for i in face) for face in faces.tolist()],
    )
    logger.debug('rendered %d vertices and %d faces', len(vertices), len(faces))
    return rendered


def mesh_audit(text: str) -> MeshAudit:
    """Count the vertices, edges, and faces of OBJ text and find its smallest triangle.

    >>> audit = mesh_audit('v 0 0 0\\nv 1 0 0\\nv 0 1 0\\nf 1 2 3\\n')
    >>> audit.euler, audit.min_area
    (1, 0.5)
    """
    vertices: list[list[float]] = []
    faces: list[list[int]] = []
    for line in text.splitlines():
        kind, *fields = line.split() or ['']
        if kind == 'v':
            vertices.append([float(x) for x in fields[:3]])
        elif kind == 'f':
            faces.append([int(x.split('/')[0]) - 1 for x in fields[:3]])

    v, f = np.array(vertices, dtype=float), np.array(faces, dtype=int).reshape(-1, 3)
    edges = {tuple(sorted(pair)) for a, b, c in f.tolist() for pair in ((a, b), (b, c), (c, a))}
    if len(f):
        cross = np.cross(v[f[:, 1]] - v[f[:, 0]], v[f[:, 2]] - v[f[:, 0]])
        min_area = float(np.min(np.linalg.norm(cross, axis=-1)) / 2)
    else:
        min_area = math.nan

    return MeshAudit(len(v), len(edges), len(f), len(v) - len(edges) + len(f), min_area)


logger.debug('successfully imported %s', __name__)
