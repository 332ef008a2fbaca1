"""Arithmetic on the split Kummer surface of an Edwards curve."""

from .edwards import CurveParams, EdwardsCurve, EdwardsPoint
from .errors import (
    DegenerateOutput,
    DivisionByZero,
    ExceptionalPoint,
    FieldMismatch,
    IncompleteCurve,
    Inconsistent,
    InvalidPoint,
    KummerError,
    NonSquare,
    NotOnCurve,
)
from .field import FieldElement, OpCount, PrimeField
from .kummer1 import K1Point, duplicate, project
from .kummer2 import K2Point, K2PointP7, K2PointTriple, project_k2, project_pair
from .ladder import LadderState, ladder_init, ladder_step, scalar_mul_ladder

__version__ = "0.1.0"
