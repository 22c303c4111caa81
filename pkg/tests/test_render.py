import math
from collections import Counter

import numpy as np
import pytest

from tribrot.dynamics import IterationConfig, complex_escape
from tribrot.render import (
    Box3,
    Grid2D,
    Mesh,
    VoxelGrid,
    Window2,
    axis_centers,
    extract_surface,
    raster2d,
    thread_count,
    voxelize,
    write_obj,
    write_obj_layers,
    write_pgm,
    write_tbvx,
)
from tribrot.slices import hyperbrot_closed, hyperbrot_iter, slice_membership

FAST = IterationConfig(max_iter=300)


class TestTypes:
    def test_window_validation(self):
        with pytest.raises(ValueError):
            Window2(1, 0, 0, 1, 8, 8)
        with pytest.raises(ValueError):
            Window2(0, 1, 0, 1, 0, 8)

    def test_box_validation(self):
        with pytest.raises(ValueError):
            Box3.cube(1.0, -1.0, 8)
        with pytest.raises(ValueError):
            Box3.cube(0.0, 1.0, 1)

    def test_axis_centers(self):
        centers = axis_centers(0.0, 1.0, 4)
        assert np.allclose(centers, [0.125, 0.375, 0.625, 0.875])


class TestRaster2D:
    def test_deep_interior_window_all_bounded(self):
        win = Window2(-0.1, 0.1, -0.1, 0.1, 16, 16)
        grid = raster2d("mandelbrot", win, FAST)
        assert (grid.cells == 0).all()

    def test_single_cell_at_origin(self):
        win = Window2(-1.0, 1.0, -1.0, 1.0, 1, 1)
        grid = raster2d("mandelbrot", win, FAST)
        assert grid.cells.tolist() == [0]

    def test_matches_scalar_escape(self):
        win = Window2(-2.2, 0.8, -1.3, 1.3, 23, 17)
        grid = raster2d("mandelbrot", win, FAST)
        us = axis_centers(win.umin, win.umax, win.width)
        vs = axis_centers(win.vmin, win.vmax, win.height)[::-1]
        for j in range(win.height):
            for i in range(win.width):
                res = complex_escape(complex(us[i], vs[j]), FAST)
                expected = 0 if res.bounded else res.escape_iter
                assert grid.cells[j * win.width + i] == expected

    def test_hyperbrot_matches_scalar_iteration(self):
        win = Window2(-2.5, 1.0, -1.5, 1.5, 19, 13)
        grid = raster2d("hyperbrot", win, FAST)
        us = axis_centers(win.umin, win.umax, win.width)
        vs = axis_centers(win.vmin, win.vmax, win.height)[::-1]
        for j in range(win.height):
            for i in range(win.width):
                res = hyperbrot_iter(float(us[i]), float(vs[j]), FAST)
                expected = 0 if res.bounded else res.escape_iter
                assert grid.cells[j * win.width + i] == expected

    def test_hyperbrot_closed_form_agreement_away_from_boundary(self):
        res = 96
        win = Window2(-2.5, 1.0, -1.5, 1.5, res, res)
        cfg = IterationConfig(max_iter=1000)
        grid = raster2d("hyperbrot", win, cfg)
        us = axis_centers(win.umin, win.umax, res)
        vs = axis_centers(win.vmin, win.vmax, res)[::-1]
        diag = math.hypot((win.umax - win.umin) / res, (win.vmax - win.vmin) / res)
        for j in range(res):
            for i in range(res):
                a, b = float(us[i]), float(vs[j])
                spread = abs(a + 0.875) + abs(b)
                if abs(spread - 1.125) / math.sqrt(2) <= diag:
                    continue
                assert (grid.cells[j * res + i] == 0) == hyperbrot_closed(a, b)

    def test_setA_square_interior(self):
        win = Window2(-1.5, 1.5, -1.5, 1.5, 33, 33)
        grid = raster2d("setA", win, FAST)
        # the center cell (0, 0) stays bounded
        assert grid.cells[16 * 33 + 16] == 0

    def test_unknown_set(self):
        with pytest.raises(ValueError):
            raster2d("burning_ship", Window2(0, 1, 0, 1, 4, 4), FAST)


class TestVoxelize:
    def test_firebrot_center_voxel_bounded(self):
        vox = voxelize("firebrot", Box3.cube(-0.75, 0.75, 16), FAST)
        # voxel nearest the origin
        centers = axis_centers(-0.75, 0.75, 16)
        k = int(np.argmin(np.abs(centers)))
        assert vox.counts.reshape(16, 16, 16)[k, k, k] == 0

    def test_matches_scalar_membership(self):
        box = Box3.cube(-0.75, 0.75, 8)
        vox = voxelize("firebrot", box, FAST)
        centers = axis_centers(-0.75, 0.75, 8)
        counts = vox.counts.reshape(8, 8, 8)
        for iz in range(8):
            for iy in range(8):
                for ix in range(8):
                    p = (centers[ix], centers[iy], centers[iz])
                    res = slice_membership("firebrot", p, FAST)
                    expected = 0 if res.bounded else res.escape_iter
                    assert counts[iz, iy, ix] == expected

    def test_earthbrot_matches_closed_form_off_the_faces(self):
        box = Box3.cube(-2.2, 0.5, 16)
        vox = voxelize("earthbrot", box, IterationConfig(max_iter=1000))
        centers = axis_centers(-2.2, 0.5, 16)
        counts = vox.counts.reshape(16, 16, 16)
        for iz in range(16):
            for iy in range(16):
                for ix in range(16):
                    p = np.array([centers[ix], centers[iy], centers[iz]])
                    if np.any(np.abs(p - 0.25) < 0.01) or np.any(np.abs(p + 2.0) < 0.01):
                        continue
                    inside = bool(np.all(p >= -2.0) and np.all(p <= 0.25))
                    assert (counts[iz, iy, ix] == 0) == inside

    def test_starbrot_mirror_symmetric(self):
        vox = voxelize("starbrot", Box3.cube(-0.75, 0.75, 12), FAST)
        c = vox.counts.reshape(12, 12, 12)
        assert np.array_equal(c, c[:, ::-1, :])

    def test_starbrot_is_the_union(self):
        box = Box3.cube(-0.75, 0.75, 10)
        star = voxelize("starbrot", box, FAST).counts
        fire = voxelize("firebrot", box, FAST).counts.reshape(10, 10, 10)
        mirrored = fire[:, ::-1, :].ravel()
        fire = fire.ravel()
        assert np.array_equal(star == 0, (fire == 0) | (mirrored == 0))


class TestExtractSurface:
    def test_single_inside_voxel(self):
        counts = np.ones(8, dtype=np.uint32)
        counts[0] = 0
        vox = VoxelGrid(Box3.cube(0.0, 2.0, 2), 10, counts)
        mesh = extract_surface(vox)
        assert len(mesh.vertices) == 8
        assert len(mesh.faces) == 6

    def test_all_inside_grid_is_the_hull_box(self):
        n = 3
        vox = VoxelGrid(Box3.cube(0.0, 3.0, n), 10,
                        np.zeros(n ** 3, dtype=np.uint32))
        mesh = extract_surface(vox)
        assert len(mesh.faces) == 6 * n * n
        xs = [v[0] for v in mesh.vertices]
        assert min(xs) == 0.0 and max(xs) == 3.0

    def test_watertight_every_face_once(self):
        vox = voxelize("firebrot", Box3.cube(-0.75, 0.75, 12), FAST)
        mesh = extract_surface(vox)
        seen = Counter(tuple(sorted(f)) for f in mesh.faces)
        assert all(count == 1 for count in seen.values())
        for face in mesh.faces:
            assert len(set(face)) == 4
            assert all(0 <= i < len(mesh.vertices) for i in face)

    def test_divergence_layer_grows_with_threshold(self):
        vox = voxelize("firebrot", Box3.cube(-0.75, 0.75, 12), FAST)
        tight = extract_surface(vox)  # bounded voxels only
        loose = extract_surface(vox, threshold=3)  # plus slow escapers
        assert len(loose.vertices) >= len(tight.vertices)

    def test_firebrot_far_vertex_is_near_a_tetrahedron_corner(self):
        n = 64
        vox = voxelize("firebrot", Box3.cube(-0.75, 0.75, n),
                       IterationConfig(max_iter=500))
        mesh = extract_surface(vox)
        far = max(mesh.vertices, key=lambda v: v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
        corners = [(0.25, 0.25, 0.25), (-0.25, -0.25, 0.25),
                   (0.25, -0.25, -0.25), (-0.25, 0.25, -0.25)]
        pitch = 1.5 / n
        best = min(math.dist(far, c) for c in corners)
        assert best <= 2 * pitch * math.sqrt(3)

    def test_volume_fraction_converges_to_the_tetrahedron(self):
        edge = math.sqrt(2) / 2
        tetra_volume = edge ** 3 / (6 * math.sqrt(2))
        surface = math.sqrt(3) * edge ** 2
        box_volume = 1.5 ** 3
        errors = []
        for n in (8, 16, 32):
            vox = voxelize("firebrot", Box3.cube(-0.75, 0.75, n),
                           IterationConfig(max_iter=500))
            est = float((vox.counts == 0).mean()) * box_volume
            pitch = 1.5 / n
            assert abs(est - tetra_volume) <= 2.0 * surface * pitch
            errors.append(abs(est - tetra_volume))
        assert errors[-1] <= errors[0] + 1e-12


class TestWriters:
    def test_pgm_bytes_bounded(self, tmp_path):
        path = tmp_path / "a.pgm"
        write_pgm(Grid2D(1, 1, 1000, np.array([0], dtype=np.uint32)), path)
        assert path.read_bytes() == b"P5\n1 1\n255\n\x00"

    def test_pgm_bytes_escape_at_limit(self, tmp_path):
        path = tmp_path / "b.pgm"
        write_pgm(Grid2D(1, 1, 1000, np.array([1000], dtype=np.uint32)), path)
        assert path.read_bytes() == b"P5\n1 1\n255\n\xff"

    def test_pgm_header_lines(self, tmp_path):
        path = tmp_path / "c.pgm"
        write_pgm(Grid2D(3, 2, 100, np.zeros(6, dtype=np.uint32)), path)
        data = path.read_bytes()
        header, pixels = data[:-6], data[-6:]
        assert header.decode("ascii").count("\n") == 3
        assert pixels == b"\x00" * 6

    def test_obj_unit_cube(self, tmp_path):
        vox = VoxelGrid(Box3.cube(0.0, 1.0, 2), 10,
                        np.array([0, 1, 1, 1, 1, 1, 1, 1], dtype=np.uint32))
        mesh = extract_surface(vox)
        path = tmp_path / "cube.obj"
        write_obj(mesh, path)
        lines = path.read_text().splitlines()
        assert sum(1 for l in lines if l.startswith("v ")) == 8
        assert sum(1 for l in lines if l.startswith("f ")) == 6

    def test_obj_empty_mesh_keeps_a_comment_header(self, tmp_path):
        path = tmp_path / "empty.obj"
        write_obj(Mesh((), ()), path)
        lines = path.read_text().splitlines()
        assert len(lines) == 1 and lines[0].startswith("#")

    def test_obj_roundtrip_vertex_count(self, tmp_path):
        vox = voxelize("firebrot", Box3.cube(-0.75, 0.75, 8), FAST)
        mesh = extract_surface(vox)
        path = tmp_path / "f.obj"
        write_obj(mesh, path)
        verts = [l for l in path.read_text().splitlines() if l.startswith("v ")]
        assert len(verts) == len(mesh.vertices)
        reread = [tuple(float(t) for t in l.split()[1:]) for l in verts]
        assert all(math.dist(a, b) <= 1e-8 for a, b in zip(reread, mesh.vertices))

    def test_obj_layers(self, tmp_path):
        vox = voxelize("firebrot", Box3.cube(-0.75, 0.75, 8), FAST)
        layers = [(f"layer_{t}", extract_surface(vox, t)) for t in (5, 50)]
        path = tmp_path / "layers.obj"
        write_obj_layers(layers, path)
        text = path.read_text()
        assert text.count("\no layer_") == 2

    def test_tbvx_layout(self, tmp_path):
        n = 4
        counts = np.arange(n ** 3, dtype=np.uint32)
        vox = VoxelGrid(Box3.cube(0.0, 1.0, n), 300, counts)
        path = tmp_path / "v.tbvx"
        write_tbvx(vox, path)
        raw = path.read_bytes()
        assert raw[:4] == b"TBVX"
        assert int.from_bytes(raw[4:8], "little") == n
        assert int.from_bytes(raw[8:12], "little") == 300
        assert int.from_bytes(raw[12:16], "little") == 0
        body = np.frombuffer(raw[16:], dtype="<u2")
        assert np.array_equal(body, counts.astype("<u2"))

    def test_tbvx_rejects_wide_counts(self, tmp_path):
        vox = VoxelGrid(Box3.cube(0.0, 1.0, 2), 70000,
                        np.zeros(8, dtype=np.uint32))
        with pytest.raises(ValueError):
            write_tbvx(vox, tmp_path / "x.tbvx")


class TestDeterminism:
    def test_thread_count_parsing(self, monkeypatch):
        monkeypatch.setenv("TRIBROT_THREADS", "3")
        assert thread_count() == 3
        monkeypatch.setenv("TRIBROT_THREADS", "0")
        assert thread_count() >= 1
        monkeypatch.setenv("TRIBROT_THREADS", "junk")
        assert thread_count() >= 1

    def test_voxel_counts_independent_of_threads(self, monkeypatch):
        box = Box3.cube(-0.75, 0.75, 24)
        monkeypatch.setenv("TRIBROT_THREADS", "1")
        one = voxelize("starbrot", box, FAST).counts
        monkeypatch.setenv("TRIBROT_THREADS", "8")
        eight = voxelize("starbrot", box, FAST).counts
        assert np.array_equal(one, eight)

    def test_raster_bytes_independent_of_threads(self, monkeypatch, tmp_path):
        win = Window2(-2.5, 1.0, -1.5, 1.5, 128, 96)
        monkeypatch.setenv("TRIBROT_THREADS", "1")
        write_pgm(raster2d("hyperbrot", win, FAST), tmp_path / "one.pgm")
        monkeypatch.setenv("TRIBROT_THREADS", "8")
        write_pgm(raster2d("hyperbrot", win, FAST), tmp_path / "eight.pgm")
        assert (tmp_path / "one.pgm").read_bytes() == \
            (tmp_path / "eight.pgm").read_bytes()
