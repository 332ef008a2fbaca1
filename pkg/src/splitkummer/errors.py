"""Exceptions raised by the arithmetic layers."""


class KummerError(Exception):
    """Base class for arithmetic exceptions in this package."""


class DivisionByZero(KummerError, ZeroDivisionError):
    pass


class NonSquare(KummerError, ValueError):
    """Square root requested of a non-residue (e.g. a twist point)."""


class FieldMismatch(KummerError, TypeError):
    """Operands belong to fields with different moduli."""


class NotOnCurve(KummerError, ValueError):
    pass


class InvalidPoint(KummerError, ValueError):
    """Coordinates violate the defining relations of a Kummer model."""


class IncompleteCurve(KummerError):
    """The Edwards parameter d is a square, so the addition law has exceptions."""


class DegenerateOutput(KummerError):
    """A polynomial map returned the zero vector."""


class ExceptionalPoint(KummerError):
    """Every available representative of a map vanishes at the input.

    ``map_name`` names the map, ``point`` is the offending input and ``step``
    is set by the ladder to the index of the failing step.
    """

    def __init__(self, map_name: str, point=None, step: int | None = None):
        self.map_name = map_name
        self.point = point
        self.step = step
        msg = f"{map_name} is undefined at {point}"
        if step is not None:
            msg += f" (ladder step {step})"
        super().__init__(msg)


class Inconsistent(KummerError, ValueError):
    """No sign choice of the lifted factors reproduces the Z coordinate."""
