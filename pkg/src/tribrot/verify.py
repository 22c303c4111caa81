"""Verification suites behind the ``verify`` command.

Each check returns a JSON-serializable dict with its parameters, metrics and
a pass flag; identical parameters and seed give byte-identical reports.  The
heavy sampled checks run on coefficient arrays of shape (8, K) through
batched kernels that mirror the scalar algebra operation for operation.
"""

from __future__ import annotations

import numpy as np

from .algebra import (
    Tricomplex,
    Idem4,
    idem4_compose,
    idem4_decompose,
    idempotent_elements,
)
from .algebra import _CONJ_SIGNS, _MUL_INDEX, _MUL_SIGN  # shared tables
from .dynamics import IterationConfig, escape_counts
from .polytopes import builtin_system, edge_graph, enumerate_vertices, fm_eliminate, is_redundant
from .render import Box3, axis_centers, voxelize
from .slices import SLICE_BOXES, char_membership, slice_membership

__all__ = ["CHECK_NAMES", "run_checks"]

CHECK_NAMES = ("algebra", "idempotents", "char-equivalence", "closed-forms", "polyhedra")

SQRT2 = float(np.sqrt(2.0))


# -- batched algebra kernels ------------------------------------------------------

def mul_batch(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficient-array product, same pairing order as the scalar multiply."""
    out = np.zeros_like(a)
    for i in range(8):
        out[_MUL_INDEX[i][i]] += _MUL_SIGN[i][i] * (a[i] * b[i])
        for j in range(i + 1, 8):
            out[_MUL_INDEX[i][j]] += _MUL_SIGN[i][j] * (a[i] * b[j] + a[j] * b[i])
    return out


def conjugate_batch(a: np.ndarray, k: int) -> np.ndarray:
    signs = np.array(_CONJ_SIGNS[k], dtype=np.float64)
    return a * signs[:, None]


def decompose_batch(a: np.ndarray):
    """Idempotent components of coefficient arrays: four (re, im) pairs."""
    x1, x2, x3, x4, x5, x6, x7, x8 = a
    re_s, re_d = x1 + x7, x1 - x7
    im_s, im_d = x2 + x8, x2 - x8
    p, q = x4 - x6, x4 + x6
    r, s = x3 - x5, x3 + x5
    return (
        (re_s + p, im_s - r),
        (re_s - p, im_s + r),
        (re_d + q, im_d - s),
        (re_d - q, im_d + s),
    )


def compose_batch(components) -> np.ndarray:
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = components
    sr, si = a1 + a2, b1 + b2
    tr, ti = a3 + a4, b3 + b4
    d12r, d12i = a2 - a1, b2 - b1
    d34r, d34i = a4 - a3, b4 - b3
    return np.stack([
        (sr + tr) / 4.0,
        (si + ti) / 4.0,
        (d12i + d34i) / 4.0,
        -(d12r + d34r) / 4.0,
        (d34i - d12i) / 4.0,
        (d12r - d34r) / 4.0,
        (sr - tr) / 4.0,
        (si - ti) / 4.0,
    ])


def _conjugate_product_batch(a: np.ndarray) -> np.ndarray:
    """a times its seven conjugates, literal coefficient-domain route."""
    p = a.copy()
    for k in range(1, 8):
        p = mul_batch(p, conjugate_batch(a, k))
    return p


# -- individual checks -------------------------------------------------------------

def check_algebra(samples: int, seed: int, cfg: IterationConfig) -> dict:
    rng = np.random.default_rng(seed)
    k = max(int(samples), 1)
    a = rng.uniform(-2.0, 2.0, size=(8, k))
    b = rng.uniform(-2.0, 2.0, size=(8, k))
    c = rng.uniform(-2.0, 2.0, size=(8, k))

    metrics = {}
    ok = True

    ab = mul_batch(a, b)
    commut_exact = bool(np.array_equal(ab, mul_batch(b, a)))
    metrics["commutativity_exact"] = commut_exact
    ok &= commut_exact

    assoc_l = mul_batch(ab, c)
    assoc_r = mul_batch(a, mul_batch(b, c))
    scale = 1.0 + np.abs(assoc_l).max(axis=0)
    assoc_rel = float((np.abs(assoc_l - assoc_r).max(axis=0) / scale).max())
    metrics["associativity_max_rel"] = assoc_rel
    ok &= assoc_rel <= 1e-10

    dist_l = mul_batch(a, b + c)
    dist_r = mul_batch(a, b) + mul_batch(a, c)
    scale = 1.0 + np.abs(dist_l).max(axis=0)
    dist_rel = float((np.abs(dist_l - dist_r).max(axis=0) / scale).max())
    metrics["distributivity_max_rel"] = dist_rel
    ok &= dist_rel <= 1e-10

    # products act component-wise on the idempotent components
    ea, eb = decompose_batch(a), decompose_batch(b)
    eab = decompose_batch(ab)
    tbt_rel = 0.0
    for (ar, ai), (br, bi), (pr, pi) in zip(ea, eb, eab):
        qr = ar * br - ai * bi
        qi = ar * bi + ai * br
        scale = 1.0 + np.maximum(np.abs(pr), np.abs(pi))
        tbt_rel = max(tbt_rel,
                      float((np.abs(pr - qr) / scale).max()),
                      float((np.abs(pi - qi) / scale).max()))
    metrics["term_by_term_max_rel"] = tbt_rel
    ok &= tbt_rel <= 1e-10

    # compose(decompose(a)) == a
    rt = compose_batch(decompose_batch(a))
    round_abs = float(np.abs(rt - a).max())
    metrics["decompose_roundtrip_max_abs"] = round_abs
    ok &= round_abs <= 1e-12

    # the conjugate product collapses to a non-negative real
    prod = _conjugate_product_batch(a)
    tol = 1e-9 * (1.0 + np.sqrt((a * a).sum(axis=0)) ** 8)
    nonreal_ratio = float((np.abs(prod[1:]).max(axis=0) / tol).max())
    real_floor_ratio = float((prod[0] / tol).min())
    metrics["conj_product_nonreal_max_ratio"] = nonreal_ratio
    metrics["conj_product_real_min_ratio"] = real_floor_ratio
    ok &= nonreal_ratio <= 1.0 and real_floor_ratio >= -1.0

    # inverses for the clearly invertible subset
    cp = prod[0]
    mask = cp > 1e-6
    if mask.any():
        sub = a[:, mask]
        comps = decompose_batch(sub)
        inv_comps = []
        for (er, ei) in comps:
            n2 = er * er + ei * ei
            inv_comps.append((er / n2, -ei / n2))
        inv = compose_batch(inv_comps)
        resid = mul_batch(sub, inv)
        resid[0] -= 1.0
        inv_resid = float(np.abs(resid).max())
    else:
        inv_resid = 0.0
    metrics["inverse_subset"] = int(mask.sum())
    metrics["inverse_max_residual"] = inv_resid
    ok &= inv_resid <= 1e-8

    # conjugations: involutions whose compositions close into a group of 8
    patterns = {(1.0,) * 8} | {tuple(_CONJ_SIGNS[k]) for k in range(1, 8)}
    closure = all(tuple(x * y for x, y in zip(p, q)) in patterns
                  for p in patterns for q in patterns)
    involution = all(all(s * s == 1.0 for s in p) for p in patterns)
    metrics["conjugation_group_order"] = len(patterns)
    metrics["conjugation_group_closed"] = bool(closure and involution)
    ok &= closure and involution and len(patterns) == 8

    # the span of {1, j1, j2, j3} is closed under multiplication, exactly
    bd_a, bd_b = a.copy(), b.copy()
    for row in (1, 2, 4, 7):
        bd_a[row] = 0.0
        bd_b[row] = 0.0
    bd = mul_batch(bd_a, bd_b)
    bidup_exact = bool((bd[[1, 2, 4, 7]] == 0.0).all())
    metrics["biduplex_closure_exact"] = bidup_exact
    ok &= bidup_exact

    # full-product orbits match the composed component orbits
    orbit_samples = min(1000, k)
    orbit_rel = _orbit_oracle_max_rel(rng, orbit_samples)
    metrics["orbit_oracle_samples"] = orbit_samples
    metrics["orbit_oracle_max_rel"] = orbit_rel
    ok &= orbit_rel <= 1e-8

    return {
        "check": "algebra",
        "params": {"samples": k, "seed": int(seed)},
        "metrics": metrics,
        "pass": bool(ok),
    }


def _orbit_oracle_max_rel(rng, samples: int, max_steps: int = 20,
                          magnitude_cap: float = 1e6) -> float:
    """Compare full-product orbits against composed component orbits.

    Comparison stops once an orbit passes the magnitude cap; beyond that the
    point has escaped beyond doubt and both routes merely overflow.
    """
    worst = 0.0
    for _ in range(samples):
        c = Tricomplex(*rng.uniform(-2.0, 2.0, size=8))
        n = int(rng.integers(1, max_steps + 1))
        ce = idem4_decompose(c)
        z = Tricomplex.zero()
        e = [0j, 0j, 0j, 0j]
        for _step in range(n):
            z = z * z + c
            e = [ei * ei + ci for ei, ci in zip(e, ce)]
            composed = idem4_compose(Idem4(*e))
            scale = 1.0 + z.sup_norm()
            diff = max(abs(x - y) for x, y in zip(z.coeffs, composed.coeffs))
            worst = max(worst, diff / scale)
            if z.sup_norm() > magnitude_cap:
                break
    return float(worst)


def check_idempotents(samples: int = 0, seed: int = 0,
                      cfg: IterationConfig = None) -> dict:
    elements = idempotent_elements()
    metrics = {}
    ok = True

    metrics["count"] = len(elements)
    ok &= len(elements) == 16

    squares_exact = all((e * e).coeffs == e.coeffs for e in elements)
    metrics["squares_exact"] = bool(squares_exact)
    ok &= squares_exact

    distinct = len({e.coeffs for e in elements}) == 16
    metrics["distinct"] = bool(distinct)
    ok &= distinct

    # idempotents are exactly the 0/1 component patterns
    patterns = {idem4_compose(Idem4(complex(b0), complex(b1),
                                    complex(b2), complex(b3))).coeffs
                for b0 in (0.0, 1.0) for b1 in (0.0, 1.0)
                for b2 in (0.0, 1.0) for b3 in (0.0, 1.0)}
    matches = patterns == {e.coeffs for e in elements}
    metrics["matches_component_patterns"] = bool(matches)
    ok &= matches

    # exhaustive sweep of the dyadic lattice the sixteen live on
    lattice = (-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0)
    found = set()
    for x1 in lattice:
        for x4 in lattice:
            for x6 in lattice:
                for x7 in lattice:
                    e = Tricomplex(x1, 0.0, 0.0, x4, 0.0, x6, x7, 0.0)
                    if (e * e).coeffs == e.coeffs:
                        found.add(e.coeffs)
    sweep_exact = found == {e.coeffs for e in elements}
    metrics["lattice_sweep_candidates"] = len(lattice) ** 4
    metrics["lattice_sweep_matches"] = bool(sweep_exact)
    ok &= sweep_exact

    return {
        "check": "idempotents",
        "params": {},
        "metrics": metrics,
        "pass": bool(ok),
    }


_CHAR_SLICES = ("tetrabrot", "arrowheadbrot", "mousebrot",
                "metabrot", "turtlebrot", "hourglassbrot")


def check_char_equivalence(samples: int, seed: int, cfg: IterationConfig) -> dict:
    rng = np.random.default_rng(seed)
    per_slice = max(int(samples), 1)
    metrics = {"per_slice_points": per_slice, "mismatches": {}}
    ok = True
    for name in _CHAR_SLICES:
        box = SLICE_BOXES[name]
        pts = np.column_stack([rng.uniform(lo, hi, size=per_slice)
                               for lo, hi in box])
        mismatches = 0
        for p in pts:
            p = tuple(p)
            if char_membership(name, p, cfg) != slice_membership(name, p, cfg).bounded:
                mismatches += 1
        metrics["mismatches"][name] = mismatches
        ok &= mismatches == 0
    return {
        "check": "char-equivalence",
        "params": {"samples": per_slice, "seed": int(seed),
                   "max_iter": cfg.max_iter},
        "metrics": metrics,
        "pass": bool(ok),
    }


def _real_line_check(cfg: IterationConfig) -> dict:
    points = np.linspace(-2.25, 0.5, 4501)
    step = points[1] - points[0]
    counts = escape_counts(points, None, cfg)
    bounded = counts == 0
    expected = (points >= -2.0) & (points <= 0.25)
    guard = (np.minimum(np.abs(points + 2.0), np.abs(points - 0.25))
             > 2.0 * step)
    mismatches = int((bounded != expected)[guard].sum())
    return {"points": 4501, "mismatches_outside_guard": mismatches,
            "pass": mismatches == 0}


def _hyperbrot_grid_check(cfg: IterationConfig, res: int) -> dict:
    u = axis_centers(-2.5, 1.0, res)
    v = axis_centers(-1.5, 1.5, res)
    uu = np.broadcast_to(u, (res, res)).ravel()
    vv = np.broadcast_to(v[:, None], (res, res)).ravel()
    plus = escape_counts(uu + vv, None, cfg)
    minus = escape_counts(uu - vv, None, cfg)
    bounded = (plus == 0) & (minus == 0)
    inside = np.abs(uu + 0.875) + np.abs(vv) <= 1.125
    inside_escapes = int((inside & ~bounded).sum())
    extra = float((bounded & ~inside).mean())
    return {"grid": res, "inside_escapes": inside_escapes,
            "extra_bounded_fraction": extra,
            "pass": inside_escapes == 0 and extra <= 0.01}


def _voxel_closed_check(name: str, bounds, res: int, cfg: IterationConfig,
                        closed) -> dict:
    box = Box3(bounds, res)
    vox = voxelize(name, box, cfg)
    bounded = (vox.counts == 0).reshape(res, res, res)
    xs = axis_centers(*box.bounds[0], res)
    ys = axis_centers(*box.bounds[1], res)
    zs = axis_centers(*box.bounds[2], res)
    uu = np.broadcast_to(xs, (res, res, res))
    vv = np.broadcast_to(ys[None, :, None], (res, res, res))
    ww = np.broadcast_to(zs[:, None, None], (res, res, res))
    inside = closed(uu, vv, ww)
    inside_escapes = int((inside & ~bounded).sum())
    symdiff = float((inside ^ bounded).mean())
    return {"slice": name, "grid": res, "inside_escapes": inside_escapes,
            "symmetric_difference_fraction": symdiff,
            "pass": inside_escapes == 0 and symdiff <= 0.02}


def _firebrot_closed_arr(u, v, w):
    return ((u - v + w <= 0.25) & (-u + v + w <= 0.25)
            & (u + v - w <= 0.25) & (-u - v - w <= 0.25))


def _earthbrot_closed_arr(u, v, w):
    return ((u >= -2.0) & (u <= 0.25) & (v >= -2.0) & (v <= 0.25)
            & (w >= -2.0) & (w <= 0.25))


def _airbrot_closed_arr(u, v, w):
    return np.abs(u + 0.875) + np.abs(v) + np.abs(w) <= 1.125


def check_closed_forms(samples: int, seed: int, cfg: IterationConfig,
                       grid2d: int = 512, grid3d: int = 64) -> dict:
    parts = {
        "real_line": _real_line_check(cfg),
        "hyperbrot": _hyperbrot_grid_check(cfg, grid2d),
        "firebrot": _voxel_closed_check(
            "firebrot", ((-0.75, 0.75),) * 3, grid3d, cfg, _firebrot_closed_arr),
        "earthbrot": _voxel_closed_check(
            "earthbrot", ((-2.2, 0.5),) * 3, grid3d, cfg, _earthbrot_closed_arr),
        "airbrot": _voxel_closed_check(
            "airbrot", ((-2.2, 0.5), (-1.2, 1.2), (-1.2, 1.2)), grid3d, cfg,
            _airbrot_closed_arr),
    }
    return {
        "check": "closed-forms",
        "params": {"max_iter": cfg.max_iter, "grid2d": grid2d, "grid3d": grid3d},
        "metrics": parts,
        "pass": bool(all(p["pass"] for p in parts.values())),
    }


def _polytope_part(name: str, expected_vertices, expected_edges: int,
                   expected_length: float) -> dict:
    sys = builtin_system(name)
    vertices = enumerate_vertices(sys)
    report = edge_graph(sys, vertices)
    expected = sorted(tuple(v) for v in expected_vertices)
    vertex_err = (max(max(abs(a - b) for a, b in zip(u, v))
                      for u, v in zip(vertices, expected))
                  if len(vertices) == len(expected) else float("inf"))
    length_err = (max(abs(l - expected_length) for l in report.edge_lengths)
                  if report.edge_lengths else float("inf"))
    passed = (len(vertices) == len(expected) and vertex_err <= 1e-12
              and len(report.edges) == expected_edges
              and length_err <= 1e-12 and report.is_regular)
    return {
        "system": name,
        "vertices": [list(v) for v in vertices],
        "edge_count": len(report.edges),
        "edge_length": float(report.edge_lengths[0]) if report.edge_lengths else None,
        "expected_edge_length": expected_length,
        "max_vertex_error": vertex_err,
        "max_edge_length_error": length_err,
        "is_regular": bool(report.is_regular),
        "pass": bool(passed),
    }


def check_polyhedra(samples: int = 0, seed: int = 0,
                    cfg: IterationConfig = None) -> dict:
    tetra_vertices = [(0.25, 0.25, 0.25), (-0.25, -0.25, 0.25),
                      (0.25, -0.25, -0.25), (-0.25, 0.25, -0.25)]
    octa_vertices = [(0.25, 0.0, 0.0), (-2.0, 0.0, 0.0),
                     (-0.875, 1.125, 0.0), (-0.875, -1.125, 0.0),
                     (-0.875, 0.0, 1.125), (-0.875, 0.0, -1.125)]
    cube_vertices = [(x, y, z) for x in (-2.0, 0.25)
                     for y in (-2.0, 0.25) for z in (-2.0, 0.25)]

    parts = {
        "firebrot4": _polytope_part("firebrot4", tetra_vertices, 6, SQRT2 / 2.0),
        "airbrot": _polytope_part("airbrot", octa_vertices, 12, 1.125 * SQRT2),
        "earthbrot": _polytope_part("earthbrot", cube_vertices, 12, 2.25),
    }

    fire8 = builtin_system("firebrot8")
    fire4_vertices = enumerate_vertices(builtin_system("firebrot4"))
    fire8_vertices = enumerate_vertices(fire8)
    same_polytope = (len(fire4_vertices) == len(fire8_vertices)
                     and all(max(abs(a - b) for a, b in zip(u, v)) <= 1e-12
                             for u, v in zip(fire4_vertices, fire8_vertices)))

    redundancy = [is_redundant(row, fire8) for row in fire8.rows]
    redundancy_ok = redundancy == [False, True, False, True,
                                   False, True, False, True]

    # project out the first and last variables; the middle one must be pinned
    # to [-1/4, 1/4]
    projected = fm_eliminate(fm_eliminate(fire8, 0), 1)
    upper = min(r.offset / r.normal[0] for r in projected.rows if r.normal[0] > 0)
    lower = max(r.offset / r.normal[0] for r in projected.rows if r.normal[0] < 0)
    fm_ok = abs(upper - 0.25) <= 1e-12 and abs(lower - (-0.25)) <= 1e-12

    parts["firebrot8"] = {
        "system": "firebrot8",
        "same_vertices_as_reduced": bool(same_polytope),
        "redundant_rows": [bool(r) for r in redundancy],
        "fm_middle_upper_bound": float(upper),
        "fm_middle_lower_bound": float(lower),
        "pass": bool(same_polytope and redundancy_ok and fm_ok),
    }

    return {
        "check": "polyhedra",
        "params": {},
        "metrics": parts,
        "pass": bool(all(p["pass"] for p in parts.values())),
    }


# -- driver ------------------------------------------------------------------------

def run_checks(names, samples: int = 100000, seed: int = 0,
               max_iter: int = 1000, grid2d: int = 512, grid3d: int = 64) -> dict:
    """Run the named checks (or all of them) and aggregate a report."""
    cfg = IterationConfig(max_iter=max_iter)
    selected = list(CHECK_NAMES) if "all" in names else list(names)
    for name in selected:
        if name not in CHECK_NAMES:
            raise ValueError(f"unknown check {name!r}")

    results = []
    for name in selected:
        if name == "algebra":
            results.append(check_algebra(samples, seed, cfg))
        elif name == "idempotents":
            results.append(check_idempotents())
        elif name == "char-equivalence":
            results.append(check_char_equivalence(max(samples // 10, 1), seed, cfg))
        elif name == "closed-forms":
            results.append(check_closed_forms(samples, seed, cfg, grid2d, grid3d))
        elif name == "polyhedra":
            results.append(check_polyhedra())

    return {
        "schema": 1,
        "params": {
            "checks": selected,
            "samples": int(samples),
            "seed": int(seed),
            "max_iter": int(max_iter),
            "grid2d": int(grid2d),
            "grid3d": int(grid3d),
        },
        "checks": results,
        "pass": bool(all(r["pass"] for r in results)),
    }
