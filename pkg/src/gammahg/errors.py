"""Exception hierarchy shared by all gammahg modules.

Every domain error carries a stable ``code`` string so the CLI can map
failures to exit codes and machine-readable error records without string
matching on messages.
"""


class GammaHGError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class InvalidEntry(GammaHGError):
    """A gamma vector contains a zero entry."""

    code = "invalid_entry"


class SumNotZero(GammaHGError):
    """The entries of a gamma vector do not sum to zero."""

    code = "sum_not_zero"


class TrivialSystem(GammaHGError):
    """Full cancellation: the vector represents the trivial local system."""

    code = "trivial_system"


class NotPrime(GammaHGError):
    """Operation requires a prime gamma vector (coprime entries)."""

    code = "not_prime"


class RowOneNotOnes(GammaHGError):
    code = "row_one_not_ones"


class KernelConditionFailed(GammaHGError):
    code = "kernel_condition_failed"


class TwistConditionFailed(GammaHGError):
    code = "twist_condition_failed"


class NotUnimodular(GammaHGError):
    code = "not_unimodular"


class CriterionFails(GammaHGError):
    """The product criterion for a singular fibre does not hold."""

    code = "criterion_fails"


class PointOutsideCone(GammaHGError):
    code = "point_outside_cone"


class InteriorPoint(GammaHGError):
    """Weight eigenvalue formula does not apply to interior points."""

    code = "interior_point"


class DegenerateModel(GammaHGError):
    code = "degenerate_model"


class UnreducibleForm(GammaHGError):
    code = "unreducible_form"


class ZeroClass(GammaHGError):
    """The class reduces to zero; its annihilator is the unit ideal."""

    code = "zero_class"


class MultipleNegativeEntries(GammaHGError):
    code = "multiple_negative_entries"


class NotQuadrilateral(GammaHGError):
    code = "not_quadrilateral"


class OppositePair(GammaHGError):
    code = "opposite_pair"


class Unsupported(GammaHGError):
    code = "unsupported"


class ParseError(GammaHGError):
    """Malformed textual input (gamma strings, forms, operator text)."""

    code = "parse_error"
