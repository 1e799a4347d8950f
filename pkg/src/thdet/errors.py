"""Exception taxonomy for the library.

Every error raised on a contract violation derives from :class:`ThdetError`,
so callers can distinguish library-level failures from programming errors.
"""

from __future__ import annotations


class ThdetError(Exception):
    """Base class for all library errors."""


class ConfigError(ThdetError):
    """A run-level configuration is inconsistent (bad precision, node counts,
    contour radii outside the admissible band, unknown output format, ...)."""


class NonSquare(ThdetError):
    """A square matrix was required."""


class Singular(ThdetError):
    """A linear solve met a pivot below the precision-scaled threshold."""


class OutsideAnnulus(ThdetError):
    """Evaluation point or contour radius lies outside the validity annulus."""


class PhaseUnresolved(ThdetError):
    """Adjacent-node phase jumps stayed >= pi/2 even at the maximum node count;
    the winding of the sampled function cannot be certified."""


class ZeroOnCircle(ThdetError):
    """A sampled value on the unit circle vanished (or was negligibly small);
    winding and logarithm are undefined."""


class NonzeroWinding(ThdetError):
    """A continuous logarithm / multiplicative split requires winding zero."""


class InvalidParams(ThdetError):
    """Parameter values outside the supported domain."""


class NodeCountTooSmall(ThdetError):
    """Quadrature node count must be a power of two and at least 4x the
    truncation order."""


class TruncationExceeded(ThdetError):
    """A requested series coefficient index falls outside the truncation."""


class SingularDn(ThdetError):
    """A determinant in a ratio or coefficient system is numerically zero at
    the scale-relative threshold."""


class OnCircle(ThdetError):
    """An off-circle evaluation point was required (|z| != 1)."""


class ModelNotFactorizable(ThdetError):
    """The pair is not of the solvable model form: the Hankel/Toeplitz ratio
    d = w/phi must satisfy d(z)*d(1/z) = 1 on the unit circle."""


class DegeneratePredictor(ThdetError):
    """The ratio predictor's denominator functional is below threshold."""


class GenericityFailed(ThdetError):
    """One or more genericity monitors fell below threshold.

    Attributes:
        failed: names of the monitors that failed (subset of m1..m4)
        magnitudes: dict name -> measured magnitude (mpf)
    """

    def __init__(self, failed, magnitudes):
        self.failed = tuple(failed)
        self.magnitudes = dict(magnitudes)
        details = ", ".join(f"{k}={magnitudes[k]}" for k in self.failed)
        super().__init__(f"genericity monitors below threshold: {details}")


class GenericConditionFailed(ThdetError):
    """A closed-form solver's generic nonvanishing condition failed.

    Attributes:
        name: which condition failed (e.g. 'corner-minor', 'P11', 'alpha',
              'delta')
        magnitude: the measured modulus
    """

    def __init__(self, name, magnitude):
        self.name = name
        self.magnitude = magnitude
        super().__init__(f"generic condition '{name}' failed: |value| = {magnitude}")


class MissingData(ThdetError):
    """A partially-populated matrix was asked for an entry outside its mask.

    Attributes:
        matrix: name of the matrix
        entry: (row, column), 1-based
    """

    def __init__(self, matrix, entry):
        self.matrix = matrix
        self.entry = entry
        super().__init__(f"matrix {matrix!r} has no populated entry {entry}")


class ConsistencyError(ThdetError):
    """Two independent computation routes for the same quantity disagree
    beyond tolerance; indicates numerical breakdown, not a warning."""
