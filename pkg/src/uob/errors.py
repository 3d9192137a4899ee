"""Exception hierarchy for the uob package."""


class UobError(Exception):
    """Base class for all domain errors raised by uob."""


class AlgebraMismatch(UobError):
    """Operands belong to different multi-matrix algebras."""


class DimensionMismatch(UobError):
    """Inclusion data fails the dimension count A @ sub_dims == super_dims."""


class EmptyColumn(UobError):
    """A column of the inclusion matrix is zero: the inclusion is not unital."""


class DisconnectedDiagram(UobError):
    """Bratteli diagram is disconnected; the Markov trace is not unique."""


class SpectralConditionFailed(UobError):
    """A^t n != d m for any integer d; no unitary orthonormal basis exists."""


class NotAbelian(UobError):
    """Construction requires an abelian subalgebra (all sub blocks of size 1)."""


class ShapeMismatch(UobError):
    """Generalized Weyl construction needs equal super blocks and constant column sums."""


class NotPinched(UobError):
    """Input to the block-averaging step has off-block mass above tolerance."""


class NonStandardTrace(UobError):
    """Mixed-unitary form is only available for the standard (equal-weight) trace."""


class SingularGram(UobError):
    """Gram matrix of the projection basis is numerically degenerate."""


class MiddleAlgebraMismatch(UobError):
    """Concatenation requires the inner sub-algebra to equal the outer super-algebra."""


class CardinalityMismatch(UobError):
    """Direct sums of bases require equal cardinalities."""


class NotMultiple(UobError):
    """Full-matrix subalgebra M_m requires every super block size to be a multiple of m."""


class DivisibilityError(UobError):
    """Internal arithmetic contradiction in the full-matrix super-algebra construction."""


class PartitionOfUnityFailed(UobError):
    """Sum of U e1 U* deviates from the identity; input was not a genuine basis."""


class NoKnownConstruction(UobError):
    """No construction implemented here applies to the given inclusion."""
