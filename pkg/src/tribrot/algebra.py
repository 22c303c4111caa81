"""Tricomplex arithmetic.

The algebra lives on eight real coefficients over the basis
``1, i1, i2, j1, i3, j2, j3, i4`` where the four ``i`` units square to -1,
the three ``j`` units square to +1, and every product of units commutes
(``j1 = i1*i2``, ``j2 = i1*i3``, ``j3 = i2*i3``, ``i4 = i1*i2*i3``).
Complex numbers embed as the span of ``1, i1`` and bicomplex numbers as the
span of ``1, i1, i2, j1``.

Everything here is pure and immutable; values are safe to share between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "UNIT_TAGS",
    "SignedUnit",
    "unit_mul",
    "Tricomplex",
    "Bicomplex",
    "Idem4",
    "NonInvertibleError",
    "idem4_decompose",
    "idem4_compose",
    "gamma3_decompose",
    "gamma2_decompose",
    "gamma",
    "gamma_bar",
    "idempotent_elements",
]

#: Basis units in canonical coefficient order.
UNIT_TAGS = ("1", "i1", "i2", "j1", "i3", "j2", "j3", "i4")

# Each unit is a product of the three generators i1, i2, i3; the exponent
# triple determines the whole multiplication table.
_UNIT_EXPONENTS = {
    "1": (0, 0, 0),
    "i1": (1, 0, 0),
    "i2": (0, 1, 0),
    "j1": (1, 1, 0),
    "i3": (0, 0, 1),
    "j2": (1, 0, 1),
    "j3": (0, 1, 1),
    "i4": (1, 1, 1),
}

_EXPONENT_INDEX = {exp: UNIT_TAGS.index(tag) for tag, exp in _UNIT_EXPONENTS.items()}


class SignedUnit(NamedTuple):
    """A basis unit together with a sign, e.g. ``-j3``."""

    sign: int
    unit: str


def _build_unit_tables():
    sign = [[0] * 8 for _ in range(8)]
    index = [[0] * 8 for _ in range(8)]
    exps = [_UNIT_EXPONENTS[t] for t in UNIT_TAGS]
    for a in range(8):
        for b in range(8):
            ea, eb = exps[a], exps[b]
            # Every shared generator contributes one factor i**2 = -1.
            shared = sum(x & y for x, y in zip(ea, eb))
            sign[a][b] = -1 if shared & 1 else 1
            index[a][b] = _EXPONENT_INDEX[tuple(x ^ y for x, y in zip(ea, eb))]
    return tuple(map(tuple, sign)), tuple(map(tuple, index))


_MUL_SIGN, _MUL_INDEX = _build_unit_tables()

# Conjugations are coefficient sign patterns.  Writing a value as
# z1 + z2*i2 + z3*i3 + z4*j3 with z1..z4 in the span of {1, i1}, conjugate k
# flips the 1-based coefficient slots listed here (complex conjugation of a
# z-part flips its i1 slot; a minus sign flips both slots of that part).
_CONJ_FLIPS = {
    1: (5, 6, 7, 8),
    2: (2, 4, 6, 8),
    3: (3, 4, 7, 8),
    4: (2, 3, 6, 7),
    5: (2, 4, 5, 7),
    6: (3, 4, 5, 6),
    7: (2, 3, 5, 8),
}

_CONJ_SIGNS = {
    k: tuple(-1.0 if (i + 1) in flips else 1.0 for i in range(8))
    for k, flips in _CONJ_FLIPS.items()
}


def unit_mul(u: str, v: str) -> SignedUnit:
    """Multiply two basis units, returning the signed resulting unit."""
    try:
        a = UNIT_TAGS.index(u)
        b = UNIT_TAGS.index(v)
    except ValueError:
        raise ValueError(f"unknown basis unit: {u!r} or {v!r}") from None
    return SignedUnit(_MUL_SIGN[a][b], UNIT_TAGS[_MUL_INDEX[a][b]])


class NonInvertibleError(ZeroDivisionError):
    """Raised for zero divisors; carries the conjugate-product value."""

    def __init__(self, conj_product: float):
        super().__init__(f"zero divisor: conjugate product {conj_product!r} is ~0")
        self.conj_product = conj_product


def _mul_coeffs(a, b):
    out = [0.0] * 8
    for i in range(8):
        ai = a[i]
        bi = b[i]
        out[_MUL_INDEX[i][i]] += _MUL_SIGN[i][i] * (ai * bi)
        for j in range(i + 1, 8):
            aj = a[j]
            bj = b[j]
            if (ai == 0.0 and aj == 0.0) or (bi == 0.0 and bj == 0.0):
                continue
            # Symmetric pairing keeps multiplication exactly commutative.
            out[_MUL_INDEX[i][j]] += _MUL_SIGN[i][j] * (ai * bj + aj * bi)
    return out


@dataclass(frozen=True)
class Tricomplex:
    """An element of the eight-dimensional tricomplex algebra.

    Coefficients follow the basis order ``1, i1, i2, j1, i3, j2, j3, i4``.
    """

    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0
    x4: float = 0.0
    x5: float = 0.0
    x6: float = 0.0
    x7: float = 0.0
    x8: float = 0.0

    @property
    def coeffs(self) -> tuple:
        return (self.x1, self.x2, self.x3, self.x4,
                self.x5, self.x6, self.x7, self.x8)

    @classmethod
    def from_coeffs(cls, coeffs) -> "Tricomplex":
        return cls(*map(float, coeffs))

    @classmethod
    def zero(cls) -> "Tricomplex":
        return cls()

    @classmethod
    def one(cls) -> "Tricomplex":
        return cls(1.0)

    @classmethod
    def unit(cls, tag: str) -> "Tricomplex":
        if tag not in UNIT_TAGS:
            raise ValueError(f"unknown basis unit: {tag!r}")
        c = [0.0] * 8
        c[UNIT_TAGS.index(tag)] = 1.0
        return cls(*c)

    @classmethod
    def from_complex(cls, z: complex) -> "Tricomplex":
        z = complex(z)
        return cls(z.real, z.imag)

    def __add__(self, other):
        if isinstance(other, Tricomplex):
            return Tricomplex(*(x + y for x, y in zip(self.coeffs, other.coeffs)))
        if isinstance(other, (int, float)):
            return Tricomplex(self.x1 + other, *self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Tricomplex(*(-x for x in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, Tricomplex):
            return Tricomplex(*(x - y for x, y in zip(self.coeffs, other.coeffs)))
        if isinstance(other, (int, float)):
            return Tricomplex(self.x1 - other, *self.coeffs[1:])
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Tricomplex):
            return Tricomplex(*_mul_coeffs(self.coeffs, other.coeffs))
        if isinstance(other, (int, float)):
            return Tricomplex(*(x * other for x in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def sup_norm(self) -> float:
        return max(abs(x) for x in self.coeffs)

    def norm(self) -> float:
        """Euclidean norm of the eight coefficients."""
        return math.sqrt(sum(x * x for x in self.coeffs))

    def conjugate(self, k: int) -> "Tricomplex":
        """The k-th conjugate, k in 1..7.

        Conjugates are the seven non-identity sign involutions generated by
        negating i1, i2 and i3; together with the identity they form a group
        isomorphic to Z2^3.
        """
        if k not in _CONJ_SIGNS:
            raise ValueError(f"conjugate index must be in 1..7, got {k!r}")
        return Tricomplex(*(s * x for s, x in zip(_CONJ_SIGNS[k], self.coeffs)))

    def conj_product(self) -> float:
        """Product of this value with all seven of its conjugates.

        The result always lands on the non-negative real axis; the real part
        is returned after checking that the other coefficients vanished up to
        roundoff.
        """
        p = self
        for k in range(1, 8):
            p = p * self.conjugate(k)
        tol = 1e-9 * (1.0 + self.norm() ** 8)
        residual = max(abs(x) for x in p.coeffs[1:])
        if residual > tol:
            raise ArithmeticError(
                f"conjugate product did not collapse to a real: residual {residual}"
            )
        return p.x1

    def inverse(self) -> "Tricomplex":
        """Multiplicative inverse.

        Equals the product of the seven conjugates divided by the real
        conjugate product; it is evaluated per idempotent component (where
        that quotient reduces to an ordinary complex reciprocal) to avoid
        the cancellation the coefficient-wise product would suffer.

        Raises NonInvertibleError for zero divisors, i.e. whenever the
        conjugate product vanishes.
        """
        e1, e2, e3, e4 = idem4_decompose(self)
        cp = ((e1.real * e1.real + e1.imag * e1.imag)
              * (e2.real * e2.real + e2.imag * e2.imag)
              * (e3.real * e3.real + e3.imag * e3.imag)
              * (e4.real * e4.real + e4.imag * e4.imag))
        tau = 1e-12 * (1.0 + self.norm() ** 8)
        if not cp > tau:
            raise NonInvertibleError(cp)
        return idem4_compose(Idem4(1.0 / e1, 1.0 / e2, 1.0 / e3, 1.0 / e4))

    def is_close(self, other: "Tricomplex", tol: float = 1e-12) -> bool:
        return all(abs(x - y) <= tol for x, y in zip(self.coeffs, other.coeffs))

    def __str__(self):
        from .parsing import format_tc

        return format_tc(self)


@dataclass(frozen=True)
class Bicomplex:
    """Span of ``1, i1, i2, j1``; the tricomplex subalgebra with x5..x8 = 0."""

    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0
    x4: float = 0.0

    @property
    def coeffs(self) -> tuple:
        return (self.x1, self.x2, self.x3, self.x4)

    def as_tricomplex(self) -> Tricomplex:
        return Tricomplex(self.x1, self.x2, self.x3, self.x4)


class Idem4(NamedTuple):
    """Complex components along the four idempotent basis elements.

    Slot order: gamma1*gamma3, conj(gamma1)*gamma3, gamma1*conj(gamma3),
    conj(gamma1)*conj(gamma3).  Multiplication of tricomplex values acts
    component-wise on these slots.
    """

    e1: complex
    e2: complex
    e3: complex
    e4: complex


def idem4_decompose(a: Tricomplex) -> Idem4:
    """Split a value into its four complex idempotent components."""
    x1, x2, x3, x4, x5, x6, x7, x8 = a.coeffs
    re_s = x1 + x7
    re_d = x1 - x7
    im_s = x2 + x8
    im_d = x2 - x8
    p = x4 - x6
    q = x4 + x6
    r = x3 - x5
    s = x3 + x5
    return Idem4(
        complex(re_s + p, im_s - r),
        complex(re_s - p, im_s + r),
        complex(re_d + q, im_d - s),
        complex(re_d - q, im_d + s),
    )


def idem4_compose(e: Idem4) -> Tricomplex:
    """Rebuild a tricomplex value from its four idempotent components."""
    e1, e2, e3, e4 = e
    s = e1 + e2
    t = e3 + e4
    d12 = e2 - e1
    d34 = e4 - e3
    return Tricomplex(
        (s.real + t.real) / 4.0,
        (s.imag + t.imag) / 4.0,
        (d12.imag + d34.imag) / 4.0,
        -(d12.real + d34.real) / 4.0,
        (d34.imag - d12.imag) / 4.0,
        (d12.real - d34.real) / 4.0,
        (s.real - t.real) / 4.0,
        (s.imag - t.imag) / 4.0,
    )


def gamma3_decompose(a: Tricomplex) -> tuple:
    """Split against gamma3 = (1+j3)/2: returns bicomplex (b1, b2) with
    ``a = b1*gamma3 + b2*conj(gamma3)``."""
    x1, x2, x3, x4, x5, x6, x7, x8 = a.coeffs
    return (
        Bicomplex(x1 + x7, x2 + x8, x3 - x5, x4 - x6),
        Bicomplex(x1 - x7, x2 - x8, x3 + x5, x4 + x6),
    )


def gamma2_decompose(a: Tricomplex) -> tuple:
    """Split against gamma2 = (1+j2)/2: returns bicomplex (b1, b2) with
    ``a = b1*gamma2 + b2*conj(gamma2)``."""
    x1, x2, x3, x4, x5, x6, x7, x8 = a.coeffs
    return (
        Bicomplex(x1 + x6, x2 - x5, x3 + x8, x4 - x7),
        Bicomplex(x1 - x6, x2 + x5, x3 - x8, x4 + x7),
    )


def gamma(k: int) -> Tricomplex:
    """The idempotent (1 + jk)/2 for k in 1..3."""
    return (Tricomplex.one() + Tricomplex.unit(f"j{_check_gamma_index(k)}")) * 0.5


def gamma_bar(k: int) -> Tricomplex:
    """The idempotent (1 - jk)/2 for k in 1..3."""
    return (Tricomplex.one() - Tricomplex.unit(f"j{_check_gamma_index(k)}")) * 0.5


def _check_gamma_index(k: int) -> int:
    if k not in (1, 2, 3):
        raise ValueError(f"hyperbolic-unit index must be in 1..3, got {k!r}")
    return k


def idempotent_elements() -> list:
    """All sixteen idempotents of the algebra, in a fixed order.

    The list is 0, 1, the six (1 +/- jk)/2, the four pairwise products of
    the gamma1 and gamma3 idempotents, and the complements of those four
    products.  Each entry satisfies e*e == e exactly (all coefficients are
    dyadic) and the entries are pairwise distinct.
    """
    g1, g1b = gamma(1), gamma_bar(1)
    g3, g3b = gamma(3), gamma_bar(3)
    products = [g1 * g3, g1b * g3, g1 * g3b, g1b * g3b]
    out = [Tricomplex.zero(), Tricomplex.one()]
    for k in (1, 2, 3):
        out.append(gamma(k))
        out.append(gamma_bar(k))
    out.extend(products)
    out.extend(Tricomplex.one() - p for p in products)
    return out
