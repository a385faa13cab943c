import numpy as np
import pytest

from polystar.bodies import cube
from polystar.errors import DomainError, NumericError
from polystar.mesh import export_mesh, grid_directions


def _parse_obj(path):
    verts, faces = [], []
    for line in path.read_text().splitlines():
        if line.startswith("v "):
            verts.append([float(v) for v in line.split()[1:]])
        elif line.startswith("f "):
            faces.append([int(i) for i in line.split()[1:]])
        else:
            pytest.fail(f"unexpected OBJ record: {line!r}")
    return np.array(verts), faces


def test_grid_directions_cover_sphere():
    dirs = grid_directions(8, 12)
    assert dirs.shape == (8 * 12 + 2, 3)
    np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(dirs[0], [0, 0, 1], atol=1e-12)
    np.testing.assert_allclose(dirs[-1], [0, 0, -1], atol=1e-12)


def test_unit_sphere_mesh(tmp_path):
    path = tmp_path / "ball.obj"
    export_mesh(lambda u: 1.0, 8, 10, path)
    verts, faces = _parse_obj(path)
    assert len(verts) == 8 * 10 + 2
    assert len(faces) == 2 * 8 * 10
    np.testing.assert_allclose(np.linalg.norm(verts, axis=1), 1.0, atol=1e-12)
    for face in faces:
        assert len(face) == 3
        assert all(1 <= i <= len(verts) for i in face)


def test_cube_mesh_vertices_on_boundary(tmp_path):
    path = tmp_path / "cube.obj"
    b = cube()
    export_mesh(b.eval, 16, 16, path)
    verts, _ = _parse_obj(path)
    np.testing.assert_allclose(np.max(np.abs(verts), axis=1), 1.0, atol=1e-9)


def test_rejects_nonpositive_radius(tmp_path):
    with pytest.raises(NumericError):
        export_mesh(lambda u: float(u[2]), 8, 8, tmp_path / "bad.obj")


def test_rejects_tiny_grid(tmp_path):
    with pytest.raises(DomainError):
        export_mesh(lambda u: 1.0, 2, 8, tmp_path / "bad.obj")
