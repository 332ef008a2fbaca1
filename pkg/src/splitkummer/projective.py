"""Helpers for coordinate vectors in projective space."""

from __future__ import annotations

from typing import Sequence

from .errors import ExceptionalPoint


def is_zero(vec: Sequence) -> bool:
    return all(c.value == 0 for c in vec)


def proj_equal(a: Sequence, b: Sequence) -> bool:
    """True iff a and b are nonzero and every 2x2 cross product vanishes."""
    if len(a) != len(b) or is_zero(a) or is_zero(b):
        return False
    p = a[0].field.p
    n = len(a)
    for i in range(n):
        ai, bi = a[i].value, b[i].value
        for j in range(i + 1, n):
            if (ai * b[j].value - a[j].value * bi) % p:
                return False
    return True


def normalize(vec: Sequence) -> tuple:
    """Scale so that the first nonzero coordinate is 1."""
    for c in vec:
        if c.value:
            inv = pow(c.value, -1, c.field.p)
            return tuple(c.field(x.value * inv) for x in vec)
    raise ValueError("zero vector has no projective normalization")


def normalized_key(vec: Sequence) -> tuple:
    """Hashable canonical form of a projective point (plain ints)."""
    return tuple(c.value for c in normalize(vec))


def first_usable(forms: Sequence[Sequence], map_name: str, point=None):
    """Index and value of the first form that is not the zero vector."""
    for i, f in enumerate(forms):
        if not is_zero(f):
            return i, tuple(f)
    raise ExceptionalPoint(map_name, point)


def to_hex(vec: Sequence) -> str:
    return ":".join(c.hex() for c in vec)


def parse_hex(field, text: str, n: int) -> tuple:
    parts = text.strip().split(":")
    if len(parts) != n:
        raise ValueError(f"expected {n} colon-separated hex fields, got {text!r}")
    return tuple(field.parse(s) for s in parts)
