"""Chordal metric on the extended plane and dyadic coefficient rounding.

The chordal distance of two finite points is
``|a - b| / (sqrt(1 + |a|^2) sqrt(1 + |b|^2))``; against infinity it is
``1 / sqrt(1 + |a|^2)``, and the distance of infinity from itself is 0.
Values always lie in [0, 1] (the result is clamped at 1 to absorb the
last-ulp rounding of antipodal pairs).

Sup distances over compact sets are evaluated on finite samples only, so
they are certified lower bounds of the true sup; the sample mesh is
attached to the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidSampleError, PrecisionTooCoarseError
from .samples import CompactSample
from .series import (
    ExtendedComplex,
    Polynomial,
    RationalFunction,
    as_extended,
    rational_normalize,
)


def chordal(a, b) -> float:
    """Chordal distance between two points of the extended plane."""
    ea, eb = as_extended(a), as_extended(b)
    if ea.is_infinity and eb.is_infinity:
        return 0.0
    if ea.is_infinity:
        return 1.0 / math.sqrt(1.0 + abs(eb.finite) ** 2)
    if eb.is_infinity:
        return 1.0 / math.sqrt(1.0 + abs(ea.finite) ** 2)
    za, zb = ea.finite, eb.finite
    value = abs(za - zb) / (math.sqrt(1.0 + abs(za) ** 2) * math.sqrt(1.0 + abs(zb) ** 2))
    return min(value, 1.0)


@dataclass(frozen=True)
class SupChordal:
    """Sampled sup of a chordal distance: a lower bound plus mesh metadata."""

    value: float
    at: complex
    mesh: float
    label: str


def sup_chordal(f, g, sample: CompactSample) -> SupChordal:
    """max over the sample of chordal(f(z), g(z)).

    ``f`` and ``g`` are callables returning complex or ExtendedComplex
    (a constant ExtendedComplex is also accepted).  Indeterminate
    evaluations propagate as errors.
    """
    if len(sample) == 0:
        raise InvalidSampleError("empty sample")
    fe = _as_evaluator(f)
    ge = _as_evaluator(g)
    best, arg = -1.0, sample.points[0]
    for z in sample.points:
        d = chordal(fe(z), ge(z))
        if d > best:
            best, arg = d, z
    return SupChordal(best, complex(arg), sample.mesh, sample.label)


def _as_evaluator(obj):
    if isinstance(obj, ExtendedComplex):
        return lambda z: obj
    if callable(obj):
        return obj
    value = as_extended(obj)
    return lambda z: value


def dyadic_round(value: complex, bits: int) -> complex:
    """Round real and imaginary parts to the nearest multiple of 2^-bits."""
    scale = 2.0 ** bits
    return complex(round(value.real * scale) / scale, round(value.imag * scale) / scale)


def rationalize_coefficients(rational: RationalFunction, bits: int) -> RationalFunction:
    """Dyadic approximation of a rational function's coefficients.

    Every coefficient's real and imaginary parts are rounded to the
    nearest multiple of 2^-bits and the pair is re-normalized, which
    keeps all coefficients in Q + iQ.  Rationals whose coefficients are
    already dyadic at this precision are fixed points.  Rounding that
    collapses the denominator to zero raises PrecisionTooCoarseError.
    """
    num = Polynomial(
        [dyadic_round(c, bits) for c in rational.numerator.coefficients],
        rational.numerator.center,
    )
    den = Polynomial(
        [dyadic_round(c, bits) for c in rational.denominator.coefficients],
        rational.denominator.center,
    )
    if den.is_zero:
        raise PrecisionTooCoarseError(f"denominator rounds to zero at 2^-{bits}")
    return rational_normalize(num, den)
