# tropadic/adic/errors.py

class TropadicError(RuntimeError):
    """Base class for every error the kernel reports.

    `code` is the machine-readable tag the CLI emits.
    """
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message or self.__class__.__name__)
        self.details = details


class DivisionByZero(TropadicError):
    code = "division_by_zero"

class WidthMismatch(TropadicError):
    code = "width_mismatch"

class DimensionMismatch(TropadicError):
    code = "dimension_mismatch"

class MonoidMismatch(TropadicError):
    code = "monoid_mismatch"

class GammaMismatch(TropadicError):
    code = "gamma_mismatch"

class NotInCont(TropadicError):
    code = "not_in_cont"

class NotInContInterior(TropadicError):
    code = "not_in_cont_interior"

class BottomColumnHit(TropadicError):
    code = "bottom_column_hit"

class IdentityHasNoClass(TropadicError):
    code = "identity_has_no_class"

class BaseMismatch(TropadicError):
    code = "base_mismatch"

class InsufficientPrecision(TropadicError):
    code = "insufficient_precision"

class NotInImage(TropadicError):
    code = "not_in_image"

class NotCertified(TropadicError):
    code = "not_certified"

class NoGenerators(TropadicError):
    code = "no_generators"

class WitnessSearchExhausted(TropadicError):
    code = "witness_search_exhausted"

class ChainConstructionFailed(TropadicError):
    code = "chain_construction_failed"

class RankTooLarge(TropadicError):
    code = "rank_too_large"

class WPerpendicular(TropadicError):
    code = "w_perpendicular"

class ParseError(TropadicError):
    code = "parse_error"

# Construction-time validation
class InvalidMatrix(TropadicError):
    code = "invalid_matrix"

class NotStronglyConvex(TropadicError):
    code = "not_strongly_convex"

class InvalidStream(TropadicError):
    code = "invalid_stream"

class PlotUnavailable(TropadicError):
    code = "plot_unavailable"
