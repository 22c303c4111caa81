"""Halfspace systems: Fourier-Motzkin elimination, vertex enumeration,
redundancy detection and edge-graph regularity reports.

Systems in scope are tiny (at most eight rows, three variables), so vertex
enumeration brute-forces all 3-row subsets with a Cramer solve.  All built-in
systems have dyadic data, which keeps the linear algebra exact in floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "Halfspace",
    "HalfspaceSystem",
    "PolytopeReport",
    "UnboundedSystemError",
    "InfeasibleSystemError",
    "fm_eliminate",
    "is_redundant",
    "enumerate_vertices",
    "edge_graph",
    "builtin_system",
]

_FEAS_TOL = 1e-9
_DEDUP_TOL = 1e-9
_REGULAR_TOL = 1e-9


class UnboundedSystemError(ValueError):
    """The operation needs a bounded polytope but the system has a recession
    direction."""


class InfeasibleSystemError(ValueError):
    """Elimination produced a contradictory constraint (0 <= b with b < 0)."""


@dataclass(frozen=True)
class Halfspace:
    """One linear inequality normal . x <= offset."""

    normal: tuple
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(float(a) for a in self.normal))
        object.__setattr__(self, "offset", float(self.offset))
        if not any(a != 0.0 for a in self.normal):
            raise ValueError("halfspace normal must be nonzero")

    def value(self, x) -> float:
        return sum(a * v for a, v in zip(self.normal, x))


@dataclass(frozen=True)
class HalfspaceSystem:
    rows: tuple
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if len(r.normal) != self.dim:
                raise ValueError("all rows must match the system dimension")

    def without(self, row: Halfspace) -> "HalfspaceSystem":
        """Drop one occurrence of ``row``."""
        rows = list(self.rows)
        try:
            rows.remove(row)
        except ValueError:
            raise ValueError("row is not part of the system") from None
        return HalfspaceSystem(tuple(rows), self.dim)

    def contains(self, x, tol: float = _FEAS_TOL) -> bool:
        return all(r.value(x) <= r.offset + tol for r in self.rows)


def fm_eliminate(sys: HalfspaceSystem, var: int) -> HalfspaceSystem:
    """Project out one variable by Fourier-Motzkin pairing.

    Rows with zero coefficient on ``var`` pass through; each positive row is
    combined with each negative row after normalizing the eliminated
    coefficient to +/-1.  Trivial rows (zero normal, nonnegative offset) are
    dropped; a contradictory trivial row raises InfeasibleSystemError.
    Feasibility of the projection is preserved.
    """
    if not 0 <= var < sys.dim:
        raise ValueError(f"variable index {var} out of range for dim {sys.dim}")

    def drop(normal):
        return tuple(a for i, a in enumerate(normal) if i != var)

    zero_rows, pos_rows, neg_rows = [], [], []
    for r in sys.rows:
        a = r.normal[var]
        if a > 0.0:
            pos_rows.append(r)
        elif a < 0.0:
            neg_rows.append(r)
        else:
            zero_rows.append(r)

    out = []

    def push(normal, offset):
        if any(a != 0.0 for a in normal):
            out.append(Halfspace(normal, offset))
        elif offset < -_FEAS_TOL:
            raise InfeasibleSystemError(f"derived contradiction 0 <= {offset}")

    for r in zero_rows:
        push(drop(r.normal), r.offset)
    for rp in pos_rows:
        ap = rp.normal[var]
        for rn in neg_rows:
            an = -rn.normal[var]
            normal = tuple(p / ap + q / an
                           for p, q in zip(drop(rp.normal), drop(rn.normal)))
            push(normal, rp.offset / ap + rn.offset / an)

    return HalfspaceSystem(tuple(out), sys.dim - 1)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _solve3(n1, b1, n2, b2, n3, b3):
    """Cramer solve of three tight constraints; None when nearly singular."""
    a11, a12, a13 = n1
    a21, a22, a23 = n2
    a31, a32, a33 = n3
    c1 = a22 * a33 - a23 * a32
    c2 = a23 * a31 - a21 * a33
    c3 = a21 * a32 - a22 * a31
    d = a11 * c1 + a12 * c2 + a13 * c3
    if d > -1e-12 and d < 1e-12:
        return None
    x = (b1 * c1
         + a12 * (a23 * b3 - b2 * a33)
         + a13 * (b2 * a32 - a22 * b3)) / d
    y = (a11 * (b2 * a33 - a23 * b3)
         + b1 * c2
         + a13 * (a21 * b3 - b2 * a31)) / d
    z = (a11 * (a22 * b3 - b2 * a32)
         + a12 * (b2 * a31 - a21 * b3)
         + b1 * c3) / d
    return (x, y, z)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _recession_direction(sys: HalfspaceSystem):
    """A nonzero direction d with normal . d <= 0 for every row, or None.

    An unbounded polyhedron's recession cone either has an extreme ray lying
    on two independent constraint planes (covered by the cross products) or
    contains a line orthogonal to every normal (covered by the rank check).
    """
    normals = [r.normal for r in sys.rows]

    def feasible_dir(d):
        dx, dy, dz = d
        n = math.sqrt(dx * dx + dy * dy + dz * dz)
        if n < 1e-12:
            return False
        dx, dy, dz = dx / n, dy / n, dz / n
        for a1, a2, a3 in normals:
            if a1 * dx + a2 * dy + a3 * dz > 1e-9:
                return False
        return True

    candidates = []
    for a, b in combinations(normals, 2):
        c = _cross(a, b)
        candidates.append(c)
        candidates.append((-c[0], -c[1], -c[2]))
    # Rank-deficient normal sets leave whole orthogonal directions free.
    rank3 = any(abs(_det3(rows)) > 1e-12 for rows in combinations(normals, 3)) \
        if len(normals) >= 3 else False
    if not rank3:
        axes = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        for a in normals[:1]:
            for e in axes:
                c = _cross(a, e)
                candidates.append(c)
                candidates.append((-c[0], -c[1], -c[2]))
        candidates.extend([tuple(-x for x in normals[0])] if normals else axes)
        if not normals:
            candidates.extend(axes)
    for d in candidates:
        if feasible_dir(d):
            return d
    return None


def enumerate_vertices(sys: HalfspaceSystem) -> list:
    """Vertices of a bounded 3D system: all feasible 3-subset solutions,
    deduplicated and sorted lexicographically."""
    if sys.dim != 3:
        raise ValueError("vertex enumeration expects a 3D system")
    if len(sys.rows) < 3:
        raise UnboundedSystemError("fewer than three constraints cannot bound 3D")
    d = _recession_direction(sys)
    if d is not None:
        raise UnboundedSystemError(f"system is unbounded along {d}")

    flat = [(r.normal[0], r.normal[1], r.normal[2], r.offset) for r in sys.rows]
    solved_any = False
    vertices = []
    for (a1, a2, a3, b1), (c1, c2, c3, b2), (e1, e2, e3, b3) in combinations(flat, 3):
        pt = _solve3((a1, a2, a3), b1, (c1, c2, c3), b2, (e1, e2, e3), b3)
        if pt is None:
            continue
        solved_any = True
        x, y, z = pt
        feasible = True
        for n1, n2, n3, b in flat:
            if n1 * x + n2 * y + n3 * z > b + _FEAS_TOL:
                feasible = False
                break
        if not feasible:
            continue
        duplicate = False
        for vx, vy, vz in vertices:
            if (abs(x - vx) <= _DEDUP_TOL and abs(y - vy) <= _DEDUP_TOL
                    and abs(z - vz) <= _DEDUP_TOL):
                duplicate = True
                break
        if not duplicate:
            vertices.append(pt)
    if not solved_any:
        raise ValueError("every 3-row subset was singular")
    return sorted(vertices)


def is_redundant(row: Halfspace, sys: HalfspaceSystem) -> bool:
    """True iff dropping ``row`` leaves the feasible set unchanged, decided by
    maximizing the row over the remaining system's vertices."""
    reduced = sys.without(row)
    vertices = enumerate_vertices(reduced)
    if not vertices:
        raise ValueError("reduced system has no vertices to test against")
    return max(row.value(v) for v in vertices) <= row.offset + _FEAS_TOL


@dataclass(frozen=True)
class PolytopeReport:
    vertices: tuple
    edges: tuple
    edge_lengths: tuple
    is_regular: bool
    tolerance: float


def edge_graph(sys: HalfspaceSystem, vertices) -> PolytopeReport:
    """Connect vertex pairs lying on two common independent tight constraints
    and report edge lengths and regularity."""
    vertices = [tuple(v) for v in vertices]
    tight_sets = []
    for v in vertices:
        tight_sets.append({i for i, r in enumerate(sys.rows)
                           if abs(r.value(v) - r.offset) <= _FEAS_TOL})

    edges = []
    lengths = []
    for (i, vi), (j, vj) in combinations(enumerate(vertices), 2):
        shared = tight_sets[i] & tight_sets[j]
        if len(shared) < 2:
            continue
        normals = [sys.rows[k].normal for k in sorted(shared)]
        if not any(max(abs(c) for c in _cross(a, b)) > 1e-9
                   for a, b in combinations(normals, 2)):
            continue
        edges.append((i, j))
        lengths.append(math.dist(vi, vj))

    degrees = [0] * len(vertices)
    for i, j in edges:
        degrees[i] += 1
        degrees[j] += 1
    regular = bool(edges) \
        and max(lengths) - min(lengths) <= _REGULAR_TOL \
        and len(set(degrees)) == 1
    return PolytopeReport(tuple(vertices), tuple(edges), tuple(lengths),
                          regular, _REGULAR_TOL)


def builtin_system(name: str) -> HalfspaceSystem:
    """The polyhedral systems behind the regular slices.

    * ``firebrot4``: the reduced tetrahedron system, four rows at 1/4.
    * ``firebrot8``: the full pre-reduction system, offsets alternating 1/4, 2.
    * ``airbrot``: |x1 + 7/8| + |x2| + |x3| <= 9/8 expanded to eight rows.
    * ``earthbrot``: the box [-2, 1/4]^3.
    """
    name = name.lower()
    if name == "firebrot4":
        rows = [
            Halfspace((1.0, -1.0, 1.0), 0.25),
            Halfspace((-1.0, 1.0, 1.0), 0.25),
            Halfspace((1.0, 1.0, -1.0), 0.25),
            Halfspace((-1.0, -1.0, -1.0), 0.25),
        ]
    elif name == "firebrot8":
        rows = [
            Halfspace((1.0, -1.0, 1.0), 0.25),
            Halfspace((-1.0, 1.0, -1.0), 2.0),
            Halfspace((-1.0, 1.0, 1.0), 0.25),
            Halfspace((1.0, -1.0, -1.0), 2.0),
            Halfspace((1.0, 1.0, -1.0), 0.25),
            Halfspace((-1.0, -1.0, 1.0), 2.0),
            Halfspace((-1.0, -1.0, -1.0), 0.25),
            Halfspace((1.0, 1.0, 1.0), 2.0),
        ]
    elif name == "airbrot":
        # s1*(x1 + 7/8) + s2*x2 + s3*x3 <= 9/8 over all sign choices.
        rows = [Halfspace((s1, s2, s3), 1.125 - s1 * 0.875)
                for s1 in (1.0, -1.0)
                for s2 in (1.0, -1.0)
                for s3 in (1.0, -1.0)]
    elif name == "earthbrot":
        rows = []
        for axis in range(3):
            up = [0.0, 0.0, 0.0]
            up[axis] = 1.0
            dn = [0.0, 0.0, 0.0]
            dn[axis] = -1.0
            rows.append(Halfspace(tuple(up), 0.25))
            rows.append(Halfspace(tuple(dn), 2.0))
    else:
        raise ValueError(f"unknown builtin system {name!r}")
    return HalfspaceSystem(tuple(rows), 3)
