"""Exception types shared across the package."""

__all__ = [
    "LlpError",
    "EmptySupport",
    "NonPositiveWeight",
    "WeightsDoNotSumToOne",
    "DuplicateSupportPoint",
    "DomainMismatch",
    "IntractableExactProportion",
    "MalformedEncoding",
    "InfiniteClass",
    "BudgetExceeded",
    "InvalidParams",
    "ZeroGap",
    "UnreachableCount",
    "CollisionPersistent",
    "InvalidNoiseBound",
    "OracleReject",
    "DegenerateSample",
    "NoCandidateAccepted",
    "InvalidAuxiliaryCount",
]


class LlpError(Exception):
    """Base class for every error raised by llp_lab."""


class EmptySupport(LlpError):
    """A distribution was given no atoms."""


class NonPositiveWeight(LlpError):
    """A distribution atom has weight <= 0."""


class WeightsDoNotSumToOne(LlpError):
    """Explicit distribution weights do not sum to exactly 1."""


class DuplicateSupportPoint(LlpError):
    """The same point appears twice in an explicit distribution."""


class DomainMismatch(LlpError):
    """A hypothesis was evaluated on a point outside its input space."""


class IntractableExactProportion(LlpError):
    """Exact proportion requested for a hypothesis with no closed form on a cube too large to enumerate."""


class MalformedEncoding(LlpError):
    """A hypothesis bit string does not decode to a valid hypothesis."""


class InfiniteClass(LlpError):
    """Enumeration requested for a class with no finite enumeration."""


class BudgetExceeded(LlpError):
    """An enumeration or search would exceed its candidate budget."""


class InvalidParams(LlpError):
    """Arguments outside a formula's precondition (e.g. m < d)."""


class ZeroGap(LlpError):
    """Gap-based sample size requested with beta = 0."""


class UnreachableCount(LlpError):
    """No threshold can realize the target positive count: it falls strictly inside a block of identical points."""


class CollisionPersistent(LlpError):
    """Distinct points kept colliding in projection across every retry."""


class InvalidNoiseBound(LlpError):
    """Noise bound outside [0, 1/2)."""


class OracleReject(LlpError):
    """An oracle refused a query and the caller has no fallback."""


class DegenerateSample(LlpError):
    """A reduction was handed an empty input sample."""


class NoCandidateAccepted(LlpError):
    """No oracle candidate passed the disagreement test."""


class InvalidAuxiliaryCount(LlpError):
    """Auxiliary block size too small for the cover-to-subset-count reduction."""
