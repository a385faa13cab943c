"""OBJ export of radial surfaces sampled on a latitude-longitude grid."""

import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import DomainError, NumericError

__all__ = ["export_mesh", "grid_directions"]


def grid_directions(lat: int, lon: int) -> np.ndarray:
    """Unit directions: north pole, lat*lon interior grid, south pole."""
    if lat < 3 or lon < 3:
        raise DomainError(f"need lat >= 3 and lon >= 3, got lat={lat}, lon={lon}")
    dirs = [np.array([0.0, 0.0, 1.0])]
    for i in range(1, lat + 1):
        polar = math.pi * i / (lat + 1)
        sin_p, cos_p = math.sin(polar), math.cos(polar)
        for j in range(lon):
            azimuth = 2.0 * math.pi * j / lon
            dirs.append(np.array([
                sin_p * math.cos(azimuth), sin_p * math.sin(azimuth), cos_p
            ]))
    dirs.append(np.array([0.0, 0.0, -1.0]))
    return np.array(dirs)


def export_mesh(radial, lat: int, lon: int, path) -> None:
    """Write vertices rho(u) * u and a pole-fan triangulation as ASCII OBJ."""
    directions = grid_directions(lat, lon)
    vertices = []
    for u in directions:
        rho = float(radial(u))
        if rho <= 0.0:
            raise NumericError(f"nonpositive radial value {rho} at grid point {u}")
        vertices.append(rho * u)

    faces = []
    south = lat * lon + 1  # 0-based index of the south pole
    row = lambda i, j: 1 + i * lon + (j % lon)
    for j in range(lon):
        faces.append((0, row(0, j), row(0, j + 1)))
    for i in range(lat - 1):
        for j in range(lon):
            a, b = row(i, j), row(i, j + 1)
            c, d = row(i + 1, j), row(i + 1, j + 1)
            faces.append((a, c, d))
            faces.append((a, d, b))
    for j in range(lon):
        faces.append((south, row(lat - 1, j + 1), row(lat - 1, j)))

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            for v in vertices:
                handle.write(f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}\n")
            for f in faces:
                handle.write(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
