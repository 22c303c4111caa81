"""Escape-time iteration of z -> z*z + c over complex and tricomplex values.

A tricomplex orbit splits exactly into four independent complex orbits along
the idempotent components, so membership tests run four plain Mandelbrot
iterations instead of full eight-coefficient products.  ``direct_orbit``
keeps the full product around as a cross-check oracle.

The batch kernel performs the same arithmetic as the scalar loop, operation
for operation, so grid evaluations and point probes agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .algebra import Tricomplex, idem4_decompose

__all__ = [
    "IterationConfig",
    "EscapeResult",
    "DEFAULT_CONFIG",
    "complex_escape",
    "real_escape",
    "tc_escape",
    "direct_orbit",
    "m_sup_estimate",
    "escape_counts",
    "combine_counts",
]


@dataclass(frozen=True)
class IterationConfig:
    """Iteration budget and escape disk; the finite stand-in for boundedness."""

    max_iter: int = 1000
    escape_radius: float = 2.0

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.escape_radius < 2.0:
            raise ValueError("escape_radius must be >= 2")


DEFAULT_CONFIG = IterationConfig()


class EscapeResult(NamedTuple):
    bounded: bool
    escape_iter: Optional[int]


def _interior_shortcut(x: float, y: float) -> bool:
    """Strictly inside the main cardioid or the period-2 disk; such orbits
    never escape, so skipping the iteration cannot change any decision."""
    xq = x - 0.25
    q = xq * xq + y * y
    if q * (q + xq) < 0.25 * y * y:
        return True
    xp = x + 1.0
    return xp * xp + y * y < 0.0625


@lru_cache(maxsize=1 << 14)
def _escape_iter_cached(c: complex, max_iter: int, r2: float) -> int:
    if _interior_shortcut(c.real, c.imag):
        return 0
    z = 0j
    for n in range(1, max_iter + 1):
        z = z * z + c
        if z.real * z.real + z.imag * z.imag > r2:
            return n
    return 0


def _result(n: int) -> EscapeResult:
    return EscapeResult(True, None) if n == 0 else EscapeResult(False, n)


def complex_escape(c: complex, cfg: IterationConfig = DEFAULT_CONFIG) -> EscapeResult:
    """Iterate z -> z*z + c from 0; escape when |z| exceeds the radius."""
    r = cfg.escape_radius
    return _result(_escape_iter_cached(complex(c), cfg.max_iter, r * r))


def real_escape(x: float, cfg: IterationConfig = DEFAULT_CONFIG) -> EscapeResult:
    """Real-axis escape iteration; identical decisions to complex_escape."""
    r2 = cfg.escape_radius * cfg.escape_radius
    z = 0.0
    for n in range(1, cfg.max_iter + 1):
        z = z * z + x
        if z * z > r2:
            return EscapeResult(False, n)
    return EscapeResult(True, None)


def tc_escape(c: Tricomplex, cfg: IterationConfig = DEFAULT_CONFIG) -> EscapeResult:
    """Tricomplex membership test via the four idempotent component orbits.

    Bounded iff every component stays bounded; the escape iteration is the
    earliest component escape.
    """
    results = [complex_escape(z, cfg) for z in idem4_decompose(c)]
    if all(r.bounded for r in results):
        return EscapeResult(True, None)
    return EscapeResult(False, min(r.escape_iter for r in results if not r.bounded))


def direct_orbit(c: Tricomplex, n: int) -> Tricomplex:
    """n-fold iteration of z -> z*z + c from 0 using full tricomplex products."""
    if n < 0:
        raise ValueError("orbit length must be >= 0")
    z = Tricomplex.zero()
    for _ in range(n):
        z = z * z + c
    return z


def escape_counts(cr, ci=None, cfg: IterationConfig = DEFAULT_CONFIG):
    """Vectorized escape iteration over arrays of parameter values.

    ``cr``/``ci`` are the real and imaginary parts (``ci=None`` for real
    orbits).  Returns uint32 counts of the same shape: 0 marks a bounded
    point, otherwise the first escaping iteration.  Bit-identical to the
    scalar loops.
    """
    cr = np.ascontiguousarray(cr, dtype=np.float64)
    shape = cr.shape
    cr = cr.ravel()
    r2 = cfg.escape_radius * cfg.escape_radius
    counts = np.zeros(cr.size, dtype=np.uint32)
    idx = np.arange(cr.size)

    if ci is not None:
        ci = np.ascontiguousarray(ci, dtype=np.float64).ravel()
        if ci.shape != cr.shape:
            raise ValueError("cr and ci must have the same shape")
        if not ci.any():
            ci = None

    if ci is None:
        z = np.zeros_like(cr)
        c = cr
        for n in range(1, cfg.max_iter + 1):
            z = z * z + c
            esc = z * z > r2
            if esc.any():
                counts[idx[esc]] = n
                keep = ~esc
                z = z[keep]
                c = c[keep]
                idx = idx[keep]
                if idx.size == 0:
                    break
    else:
        zr = np.zeros_like(cr)
        zi = np.zeros_like(cr)
        ar, ai = cr, ci
        for n in range(1, cfg.max_iter + 1):
            t = zr * zi
            zr = zr * zr - zi * zi + ar
            zi = t + t + ai
            esc = zr * zr + zi * zi > r2
            if esc.any():
                counts[idx[esc]] = n
                keep = ~esc
                zr = zr[keep]
                zi = zi[keep]
                ar = ar[keep]
                ai = ai[keep]
                idx = idx[keep]
                if idx.size == 0:
                    break
    return counts.reshape(shape)


def combine_counts(count_arrays, max_iter: int):
    """Combine per-component escape counts: bounded only if every component
    is bounded, otherwise the earliest escape."""
    stack = np.stack([np.asarray(c, dtype=np.uint32) for c in count_arrays])
    sentinel = np.uint32(max_iter + 1)
    masked = np.where(stack == 0, sentinel, stack)
    combined = masked.min(axis=0)
    return np.where(combined == sentinel, np.uint32(0), combined).astype(np.uint32)


def m_sup_estimate(samples: int, cfg: IterationConfig = DEFAULT_CONFIG) -> float:
    """Largest imaginary height q such that some p + q*i1 stays bounded,
    scanned on a grid of about samples-by-samples points over
    [-2, 0.5] x [0, 1.5].

    The grid always contains the point 0 + 1i (whose orbit is pre-periodic
    and bounded but sits on a hairline filament a generic lattice misses),
    so the estimate never drops below 1.
    """
    if samples < 100:
        raise ValueError("samples must be >= 100")
    p = np.union1d(np.linspace(-2.0, 0.5, samples), [0.0])
    q = np.union1d(np.linspace(0.0, 1.5, samples), [1.0])
    cr = np.broadcast_to(p, (q.size, p.size))
    ci = np.broadcast_to(q[:, None], (q.size, p.size))
    counts = escape_counts(np.ascontiguousarray(cr), np.ascontiguousarray(ci), cfg)
    bounded_rows = (counts == 0).any(axis=1)
    return float(q[bounded_rows].max()) if bounded_rows.any() else 0.0
