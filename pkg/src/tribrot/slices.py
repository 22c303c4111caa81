"""Three-dimensional slices of the tricomplex Mandelbrot set.

A slice is the set of bounded parameters inside the real span of three
distinct basis units; the eight principal slices carry traditional names
(tetrabrot, airbrot, ...).  Slices in the idempotent basis are supported as
well, most notably the earthbrot cube.  Several slices admit closed-form
membership predicates; the iteration route is always available for
cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Tricomplex,
    gamma,
    gamma_bar,
    idem4_decompose,
)
from .dynamics import DEFAULT_CONFIG, EscapeResult, IterationConfig, complex_escape, real_escape, tc_escape

__all__ = [
    "SliceSpec",
    "PRINCIPAL_SLICES",
    "IDEMPOTENT_UNITS",
    "EARTHBROT",
    "SLICE_BOXES",
    "embed",
    "component_vectors",
    "slice_membership",
    "idem_slice_membership",
    "char_membership",
    "hyperbrot_closed",
    "hyperbrot_iter",
    "setA_membership",
    "firebrot_closed",
    "airbrot_closed",
    "earthbrot_closed",
    "star_dual",
    "starbrot_membership",
]

_PRINCIPAL_UNIT_TAGS = ("1", "i1", "i2", "j1", "i3", "j2", "j3", "i4")


def _idempotent_units():
    g1, g1b = gamma(1), gamma_bar(1)
    g3, g3b = gamma(3), gamma_bar(3)
    i1 = Tricomplex.unit("i1")
    base = {
        "g1g3": g1 * g3,
        "g1bg3": g1b * g3,
        "g1g3b": g1 * g3b,
        "g1bg3b": g1b * g3b,
    }
    out = dict(base)
    for name, value in base.items():
        out["i1" + name] = i1 * value
    return out


#: The eight idempotent-basis elements usable as slice axes.
IDEMPOTENT_UNITS = _idempotent_units()


@dataclass(frozen=True)
class SliceSpec:
    """Three distinct axis units spanning a 3D subspace.

    ``kind`` is "principal" (plain basis units) or "idempotent" (elements of
    IDEMPOTENT_UNITS).
    """

    units: tuple
    kind: str = "principal"

    def __post_init__(self):
        if len(self.units) != 3 or len(set(self.units)) != 3:
            raise ValueError("a slice needs three distinct units")
        if self.kind == "principal":
            known = _PRINCIPAL_UNIT_TAGS
        elif self.kind == "idempotent":
            known = IDEMPOTENT_UNITS
        else:
            raise ValueError(f"unknown slice kind {self.kind!r}")
        for u in self.units:
            if u not in known:
                raise ValueError(f"unknown {self.kind} unit {u!r}")

    def unit_values(self) -> tuple:
        if self.kind == "principal":
            return tuple(Tricomplex.unit(u) for u in self.units)
        return tuple(IDEMPOTENT_UNITS[u] for u in self.units)


#: The eight principal slices with their fixed unit triples.
PRINCIPAL_SLICES = {
    "tetrabrot": SliceSpec(("1", "i1", "i2")),
    "arrowheadbrot": SliceSpec(("1", "i1", "j1")),
    "mousebrot": SliceSpec(("i1", "i2", "j1")),
    "turtlebrot": SliceSpec(("i1", "i2", "j2")),
    "hourglassbrot": SliceSpec(("i1", "j1", "j2")),
    "metabrot": SliceSpec(("i1", "i2", "i3")),
    "airbrot": SliceSpec(("1", "j1", "j2")),
    "firebrot": SliceSpec(("j1", "j2", "j3")),
}

#: The idempotent slice that renders as a cube.
EARTHBROT = SliceSpec(("g1g3", "g1bg3", "g1g3b"), kind="idempotent")

#: Default axis extents covering each named slice.
SLICE_BOXES = {
    "tetrabrot": ((-2.2, 0.8), (-1.3, 1.3), (-1.3, 1.3)),
    "arrowheadbrot": ((-2.2, 0.8), (-1.3, 1.3), (-1.2, 1.2)),
    "mousebrot": ((-1.3, 1.3), (-1.3, 1.3), (-1.3, 1.3)),
    "turtlebrot": ((-1.3, 1.3), (-1.3, 1.3), (-1.3, 1.3)),
    "hourglassbrot": ((-1.3, 1.3), (-1.3, 1.3), (-1.3, 1.3)),
    "metabrot": ((-1.3, 1.3), (-1.3, 1.3), (-1.3, 1.3)),
    "airbrot": ((-2.2, 0.5), (-1.2, 1.2), (-1.2, 1.2)),
    "firebrot": ((-0.75, 0.75), (-0.75, 0.75), (-0.75, 0.75)),
    "starbrot": ((-0.75, 0.75), (-0.75, 0.75), (-0.75, 0.75)),
    "earthbrot": ((-2.2, 0.5), (-2.2, 0.5), (-2.2, 0.5)),
}


def resolve_slice(name_or_spec) -> SliceSpec:
    """Accept a SliceSpec or a named slice ("tetrabrot", ..., "earthbrot")."""
    if isinstance(name_or_spec, SliceSpec):
        return name_or_spec
    name = str(name_or_spec).lower()
    if name in PRINCIPAL_SLICES:
        return PRINCIPAL_SLICES[name]
    if name == "earthbrot":
        return EARTHBROT
    raise ValueError(f"unknown slice {name_or_spec!r}")


def embed(spec: SliceSpec, p) -> Tricomplex:
    """Map slice coordinates (u, v, w) to the ambient tricomplex point."""
    u, v, w = p
    a, b, c = spec.unit_values()
    return a * float(u) + b * float(v) + c * float(w)


def component_vectors(spec: SliceSpec) -> tuple:
    """Idempotent components of the three axis units.

    The component vector of any slice point is the same linear combination of
    these three, which is what the grid evaluator exploits.
    """
    return tuple(idem4_decompose(u) for u in spec.unit_values())


def slice_membership(spec, p, cfg: IterationConfig = DEFAULT_CONFIG) -> EscapeResult:
    """Escape-time membership of a point in a (principal or idempotent) slice."""
    return tc_escape(embed(resolve_slice(spec), p), cfg)


def idem_slice_membership(spec: SliceSpec, p, cfg: IterationConfig = DEFAULT_CONFIG) -> EscapeResult:
    """Membership in an idempotent-basis slice."""
    if spec.kind != "idempotent":
        raise ValueError("spec must be an idempotent slice")
    return slice_membership(spec, p, cfg)


# -- 2D sets -----------------------------------------------------------------

def hyperbrot_closed(a: float, b: float) -> bool:
    """Closed form of the hyperbolic-plane bounded set: |a + 7/8| + |b| <= 9/8."""
    return abs(a + 0.875) + abs(b) <= 1.125


def hyperbrot_iter(a: float, b: float, cfg: IterationConfig = DEFAULT_CONFIG) -> EscapeResult:
    """Escape iteration over hyperbolic numbers a + b*j1.

    The hyperbolic plane splits into two real orbits at a+b and a-b.
    """
    r1 = real_escape(a + b, cfg)
    r2 = real_escape(a - b, cfg)
    if r1.bounded and r2.bounded:
        return EscapeResult(True, None)
    its = [r.escape_iter for r in (r1, r2) if not r.bounded]
    return EscapeResult(False, min(its))


def setA_membership(a2: float, a3: float, cfg: IterationConfig = DEFAULT_CONFIG) -> bool:
    """Membership in the span{i1, i2} projection of the bicomplex bounded set:
    both (a2+a3)*i1 and (a2-a3)*i1 must have bounded orbits."""
    return (complex_escape(complex(0.0, a2 + a3), cfg).bounded
            and complex_escape(complex(0.0, a2 - a3), cfg).bounded)


# -- closed-form 3D predicates -------------------------------------------------

def firebrot_closed(c4: float, c6: float, c7: float) -> bool:
    """Tetrahedron predicate: the four idempotent components of
    c4*j1 + c6*j2 + c7*j3 are real and must each stay <= 1/4."""
    return (c4 - c6 + c7 <= 0.25
            and -c4 + c6 + c7 <= 0.25
            and c4 + c6 - c7 <= 0.25
            and -c4 - c6 - c7 <= 0.25)


def airbrot_closed(c1: float, c4: float, c6: float) -> bool:
    """Octahedron predicate: |c1 + 7/8| + |c4| + |c6| <= 9/8."""
    return abs(c1 + 0.875) + abs(c4) + abs(c6) <= 1.125


def earthbrot_closed(x1: float, x2: float, x3: float) -> bool:
    """Cube predicate: each idempotent coordinate within [-2, 1/4]."""
    return all(-2.0 <= x <= 0.25 for x in (x1, x2, x3))


# -- membership via geometrical characterizations ------------------------------

def _in_m1(re: float, im: float, cfg) -> bool:
    return complex_escape(complex(re, im), cfg).bounded


def _char_tetrabrot(p, cfg) -> bool:
    c1, c2, c3 = p
    return _in_m1(c1, c2 - c3, cfg) and _in_m1(c1, c2 + c3, cfg)


def _char_arrowheadbrot(p, cfg) -> bool:
    c1, c2, c4 = p
    return _in_m1(c1 + c4, c2, cfg) and _in_m1(c1 - c4, c2, cfg)


def _char_mousebrot(p, cfg) -> bool:
    c2, c3, c4 = p
    return _in_m1(c4, c2 - c3, cfg) and _in_m1(-c4, c2 + c3, cfg)


def _char_metabrot(p, cfg) -> bool:
    c2, c3, c5 = p
    return setA_membership(c2, c3 - c5, cfg) and setA_membership(c2, c3 + c5, cfg)


def _char_turtlebrot(p, cfg) -> bool:
    # Intersection of the mousebrot-shaped slices with third unit +/-j1,
    # relabelled into the (i1, i2, j2) frame.
    c2, c3, c6 = p
    return _char_mousebrot((c2, c3, c6), cfg) and _char_mousebrot((c2, c3, -c6), cfg)


def _char_hourglassbrot(p, cfg) -> bool:
    # Intersection of the arrowheadbrot-shaped slices with first unit +/-1,
    # relabelled into the (i1, j1, j2) frame.
    c2, c4, c6 = p
    return (_char_arrowheadbrot((c6, c2, c4), cfg)
            and _char_arrowheadbrot((-c6, c2, c4), cfg))


def _char_airbrot(p, cfg) -> bool:
    return airbrot_closed(*p)


def _char_firebrot(p, cfg) -> bool:
    return firebrot_closed(*p)


_CHAR_DISPATCH = {
    "tetrabrot": _char_tetrabrot,
    "arrowheadbrot": _char_arrowheadbrot,
    "mousebrot": _char_mousebrot,
    "turtlebrot": _char_turtlebrot,
    "hourglassbrot": _char_hourglassbrot,
    "metabrot": _char_metabrot,
    "airbrot": _char_airbrot,
    "firebrot": _char_firebrot,
}


def char_membership(slice_name: str, p, cfg: IterationConfig = DEFAULT_CONFIG) -> bool:
    """Membership through the slice's geometrical characterization.

    For the six irregular slices this reduces to the same complex orbits as
    the iteration route, so the two agree exactly; for airbrot and firebrot
    it is the polyhedral closed form.
    """
    name = str(slice_name).lower()
    if name not in _CHAR_DISPATCH:
        raise ValueError(f"no characterization for slice {slice_name!r}")
    return _CHAR_DISPATCH[name](tuple(float(x) for x in p), cfg)


# -- the stellated octahedron ---------------------------------------------------

def star_dual(c: Tricomplex) -> Tricomplex:
    """Reflection pairing the tetrahedron with its dual: -(fifth conjugate).

    On the span of {j1, j2, j3} this maps c4*j1 + c6*j2 + c7*j3 to
    c4*j1 - c6*j2 + c7*j3.
    """
    return -c.conjugate(5)


def starbrot_membership(p, cfg: IterationConfig = DEFAULT_CONFIG) -> bool:
    """Union of the tetrahedron slice and its reflected dual, in the
    (j1, j2, j3) frame."""
    u, v, w = (float(x) for x in p)
    return firebrot_closed(u, v, w) or firebrot_closed(u, -v, w)
