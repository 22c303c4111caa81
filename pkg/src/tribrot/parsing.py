"""Text form of tricomplex values.

Grammar: signed terms ``[coefficient][unit]`` joined by ``+`` / ``-`` with
optional whitespace around the operators.  The coefficient is a decimal
literal (default 1) and the unit one of ``i1 i2 i3 i4 j1 j2 j3``; a term may
be a bare coefficient (real part) or a bare unit.  Repeated units accumulate.
"""

from __future__ import annotations

import re

from .algebra import UNIT_TAGS, Tricomplex

__all__ = ["ParseError", "parse_tc", "format_tc", "format_complex"]

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_WORD = re.compile(r"[A-Za-z]+\d*")


class ParseError(ValueError):
    """Malformed tricomplex text; carries the 0-based offset of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.position = position


def parse_tc(text: str) -> Tricomplex:
    """Parse text like ``"1 - 2i1 + 0.25j3"`` into a value."""
    coeffs = [0.0] * 8
    pos = 0
    end = len(text)

    def skip_ws(p):
        while p < end and text[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == end:
        raise ParseError("empty input", pos)

    first = True
    while True:
        sign = 1.0
        if first:
            if pos < end and text[pos] in "+-":
                sign = -1.0 if text[pos] == "-" else 1.0
                pos = skip_ws(pos + 1)
        else:
            pos = skip_ws(pos)
            if pos == end:
                break
            if text[pos] not in "+-":
                raise ParseError("expected '+' or '-' between terms", pos)
            sign = -1.0 if text[pos] == "-" else 1.0
            pos = skip_ws(pos + 1)
        first = False

        m = _NUMBER.match(text, pos)
        if m:
            try:
                coef = float(m.group())
            except ValueError:
                raise ParseError(f"malformed number {m.group()!r}", pos) from None
            pos = m.end()
            if pos < end and text[pos].isalpha():
                pos = _read_unit(text, pos, coeffs, sign * coef)
            else:
                coeffs[0] += sign * coef
        elif pos < end and text[pos].isalpha():
            pos = _read_unit(text, pos, coeffs, sign)
        else:
            raise ParseError("expected a term", pos)

    return Tricomplex(*coeffs)


def _read_unit(text, pos, coeffs, value):
    m = _WORD.match(text, pos)
    tag = m.group()
    if tag not in UNIT_TAGS:
        raise ParseError(f"unknown unit {tag!r}", pos)
    coeffs[UNIT_TAGS.index(tag)] += value
    return m.end()


def _format_coefficient(c: float) -> str:
    if c == int(c) and abs(c) < 1e16:
        return str(int(c))
    return repr(c)


def format_tc(a: Tricomplex) -> str:
    """Canonical text: terms in basis order, zero terms omitted, "0" for zero.

    ``parse_tc(format_tc(a)) == a`` for all finite values.
    """
    parts = []
    for tag, c in zip(UNIT_TAGS, a.coeffs):
        if c == 0.0:
            continue
        mag = abs(c)
        if tag == "1":
            body = _format_coefficient(mag)
        elif mag == 1.0:
            body = tag
        else:
            body = _format_coefficient(mag) + tag
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    if not parts:
        return "0"
    return " ".join(parts)


def format_complex(z: complex) -> str:
    """Format a complex value in the same term style, with i1 as the unit."""
    return format_tc(Tricomplex(z.real, z.imag))
