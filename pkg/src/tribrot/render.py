"""Rasterization, voxelization and file output.

Grids store escape counts (0 marks a bounded cell) so one evaluation feeds
any number of divergence-layer surfaces.  Evaluation is chunked over fixed
index ranges; the thread count (TRIBROT_THREADS, 0 or unset = auto) changes
only the scheduling, never the arithmetic, so outputs are byte-reproducible.
"""

from __future__ import annotations

import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dynamics import DEFAULT_CONFIG, IterationConfig, combine_counts, escape_counts
from .slices import SliceSpec, component_vectors, resolve_slice

__all__ = [
    "Window2",
    "Grid2D",
    "Box3",
    "VoxelGrid",
    "Mesh",
    "axis_centers",
    "raster2d",
    "voxelize",
    "extract_surface",
    "write_pgm",
    "write_obj",
    "write_obj_layers",
    "write_tbvx",
]

_CHUNK = 1 << 16

RASTER_SETS = ("mandelbrot", "hyperbrot", "setA")


def thread_count() -> int:
    """Worker count from TRIBROT_THREADS; 0 or unset means auto."""
    raw = os.environ.get("TRIBROT_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


@dataclass(frozen=True)
class Window2:
    umin: float
    umax: float
    vmin: float
    vmax: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.umin < self.umax and self.vmin < self.vmax):
            raise ValueError("window extents must be increasing")
        if self.width < 1 or self.height < 1:
            raise ValueError("resolution must be >= 1")


@dataclass(frozen=True)
class Grid2D:
    """Escape counts on a raster; row 0 is the top scanline (largest v)."""

    width: int
    height: int
    max_iter: int
    cells: np.ndarray  # uint32, row-major, length width*height


@dataclass(frozen=True)
class Box3:
    """Axis-aligned box with the same voxel resolution n along each axis."""

    bounds: tuple  # ((xmin, xmax), (ymin, ymax), (zmin, zmax))
    n: int

    def __post_init__(self):
        object.__setattr__(self, "bounds",
                           tuple((float(a), float(b)) for a, b in self.bounds))
        if len(self.bounds) != 3 or any(a >= b for a, b in self.bounds):
            raise ValueError("box needs three increasing (min, max) pairs")
        if self.n < 2:
            raise ValueError("voxel resolution must be >= 2")

    @classmethod
    def cube(cls, lo: float, hi: float, n: int) -> "Box3":
        return cls(((lo, hi), (lo, hi), (lo, hi)), n)


@dataclass(frozen=True)
class VoxelGrid:
    """Escape counts on an n^3 lattice, x-fastest order."""

    box: Box3
    max_iter: int
    counts: np.ndarray  # uint32, length n**3

    @property
    def n(self) -> int:
        return self.box.n


@dataclass(frozen=True)
class Mesh:
    vertices: tuple  # of (x, y, z)
    faces: tuple     # of vertex-index quads


def axis_centers(lo: float, hi: float, n: int) -> np.ndarray:
    """Cell/voxel center coordinates of n equal cells spanning [lo, hi]."""
    step = (hi - lo) / n
    return lo + (np.arange(n, dtype=np.float64) + 0.5) * step


def _counts_for_components(components, cfg: IterationConfig) -> np.ndarray:
    """Escape counts for points whose per-slot parameters are given as
    (real, imag) array pairs; evaluation is chunked deterministically."""
    size = components[0][0].size
    per_slot = [np.empty(size, dtype=np.uint32) for _ in components]
    chunks = [(s, min(s + _CHUNK, size)) for s in range(0, size, _CHUNK)]

    def run(chunk):
        lo, hi = chunk
        for out, (cr, ci) in zip(per_slot, components):
            out[lo:hi] = escape_counts(cr[lo:hi],
                                       None if ci is None else ci[lo:hi], cfg)

    workers = thread_count()
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, chunks))
    else:
        for chunk in chunks:
            run(chunk)
    return combine_counts(per_slot, cfg.max_iter)


def raster2d(set_name: str, win: Window2, cfg: IterationConfig = DEFAULT_CONFIG) -> Grid2D:
    """Rasterize one of the 2D sets, sampling each cell at its center."""
    if set_name not in RASTER_SETS:
        raise ValueError(f"unknown 2D set {set_name!r}")
    u = axis_centers(win.umin, win.umax, win.width)
    v = axis_centers(win.vmin, win.vmax, win.height)[::-1]  # top row first
    uu = np.broadcast_to(u, (win.height, win.width)).ravel()
    vv = np.broadcast_to(v[:, None], (win.height, win.width)).ravel()

    if set_name == "mandelbrot":
        components = [(uu, vv)]
    elif set_name == "hyperbrot":
        components = [(uu + vv, None), (uu - vv, None)]
    else:  # setA
        zero = np.zeros_like(uu)
        components = [(zero, uu + vv), (zero, uu - vv)]

    counts = _counts_for_components(components, cfg)
    return Grid2D(win.width, win.height, cfg.max_iter, counts)


def _slice_components(spec: SliceSpec, uu, vv, ww):
    vecs = component_vectors(spec)
    comps = []
    for slot in range(4):
        a, b, c = (vec[slot] for vec in vecs)
        cr = uu * a.real + vv * b.real + ww * c.real
        if a.imag == 0.0 and b.imag == 0.0 and c.imag == 0.0:
            ci = None
        else:
            ci = uu * a.imag + vv * b.imag + ww * c.imag
        comps.append((cr, ci))
    return comps


def voxelize(slice_like, box: Box3, cfg: IterationConfig = DEFAULT_CONFIG) -> VoxelGrid:
    """Classify every voxel center of ``box`` against a slice.

    ``slice_like`` is a SliceSpec, a named slice, or "starbrot" (the union of
    the tetrahedron slice with its reflected dual; a voxel of the union is
    bounded if either part is, and otherwise keeps the later escape count).
    """
    (x0, x1), (y0, y1), (z0, z1) = box.bounds
    n = box.n
    xs = axis_centers(x0, x1, n)
    ys = axis_centers(y0, y1, n)
    zs = axis_centers(z0, z1, n)
    # counts index is ix + n*(iy + n*iz): x varies fastest
    uu = np.broadcast_to(xs, (n, n, n)).ravel()
    vv = np.broadcast_to(ys[None, :, None], (n, n, n)).ravel()
    ww = np.broadcast_to(zs[:, None, None], (n, n, n)).ravel()

    if isinstance(slice_like, str) and slice_like.lower() == "starbrot":
        spec = resolve_slice("firebrot")
        counts_a = _counts_for_components(_slice_components(spec, uu, vv, ww), cfg)
        counts_b = _counts_for_components(_slice_components(spec, uu, -vv, ww), cfg)
        either_bounded = (counts_a == 0) | (counts_b == 0)
        counts = np.where(either_bounded, np.uint32(0),
                          np.maximum(counts_a, counts_b)).astype(np.uint32)
    else:
        spec = resolve_slice(slice_like)
        counts = _counts_for_components(_slice_components(spec, uu, vv, ww), cfg)
    return VoxelGrid(box, cfg.max_iter, counts)


# -- surface extraction ---------------------------------------------------------

# Face corner offsets per axis direction, wound to face outward.
_FACE_CORNERS = {
    (1, 0, 0): ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),
    (-1, 0, 0): ((0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)),
    (0, 1, 0): ((0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)),
    (0, -1, 0): ((0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)),
    (0, 0, 1): ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)),
    (0, 0, -1): ((0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)),
}


def extract_surface(vox: VoxelGrid, threshold: int = None) -> Mesh:
    """Cuberille surface: one quad between each inside/outside voxel face.

    Inside means a bounded voxel (count 0); with a ``threshold`` it also
    includes voxels that survived at least that many iterations, which is
    how divergence layers are rendered.  Shared corners are deduplicated and
    every exposed face appears exactly once, so the mesh is watertight.
    """
    n = vox.n
    counts = vox.counts.reshape(n, n, n)  # [iz, iy, ix]
    inside = counts == 0
    if threshold is not None:
        inside = inside | (counts >= threshold)

    (x0, x1), (y0, y1), (z0, z1) = vox.box.bounds
    steps = ((x1 - x0) / n, (y1 - y0) / n, (z1 - z0) / n)
    origin = (x0, y0, z0)

    vertex_index = {}
    vertices = []
    faces = []

    def vert(ix, iy, iz):
        key = (ix, iy, iz)
        i = vertex_index.get(key)
        if i is None:
            i = len(vertices)
            vertex_index[key] = i
            vertices.append((origin[0] + ix * steps[0],
                             origin[1] + iy * steps[1],
                             origin[2] + iz * steps[2]))
        return i

    inside_cells = np.argwhere(inside)
    for iz, iy, ix in inside_cells:
        for (dx, dy, dz), corners in _FACE_CORNERS.items():
            nx, ny, nz = ix + dx, iy + dy, iz + dz
            if 0 <= nx < n and 0 <= ny < n and 0 <= nz < n and inside[nz, ny, nx]:
                continue
            faces.append(tuple(vert(ix + cx, iy + cy, iz + cz)
                               for cx, cy, cz in corners))
    return Mesh(tuple(vertices), tuple(faces))


# -- writers ---------------------------------------------------------------------

def write_pgm(g: Grid2D, path) -> None:
    """Binary PGM: bounded cells black, escapes shaded by first escape
    iteration (55 + 200 * iter / max_iter, rounded)."""
    counts = np.asarray(g.cells, dtype=np.float64)
    shade = np.rint(55.0 + 200.0 * counts / g.max_iter)
    pixels = np.where(counts == 0, 0.0, np.clip(shade, 0.0, 255.0))
    data = pixels.astype(np.uint8).tobytes()
    with open(path, "wb") as fh:
        fh.write(f"P5\n{g.width} {g.height}\n255\n".encode("ascii"))
        fh.write(data)


def _obj_lines(mesh: Mesh, offset: int):
    for x, y, z in mesh.vertices:
        yield f"v {x:.9g} {y:.9g} {z:.9g}\n"
    for face in mesh.faces:
        yield "f " + " ".join(str(i + 1 + offset) for i in face) + "\n"


def write_obj(mesh: Mesh, path) -> None:
    """Wavefront OBJ with 1-based indices and 9 significant digits."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# cuberille mesh: {len(mesh.vertices)} vertices, "
                 f"{len(mesh.faces)} faces\n")
        fh.writelines(_obj_lines(mesh, 0))


def write_obj_layers(named_meshes, path) -> None:
    """Several meshes in one OBJ, one ``o`` object per (name, mesh) pair."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# cuberille mesh layers: {len(named_meshes)}\n")
        offset = 0
        for name, mesh in named_meshes:
            fh.write(f"o {name}\n")
            fh.writelines(_obj_lines(mesh, offset))
            offset += len(mesh.vertices)


def write_tbvx(vox: VoxelGrid, path) -> None:
    """Raw voxel dump: 16-byte header (magic "TBVX", u32 n, u32 max_iter,
    u32 reserved, little-endian) then n^3 u16 counts, x-fastest."""
    if vox.max_iter > 0xFFFF:
        raise ValueError("max_iter too large for u16 voxel counts")
    header = struct.pack("<4sIII", b"TBVX", vox.n, vox.max_iter, 0)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(vox.counts.astype("<u2").tobytes())
