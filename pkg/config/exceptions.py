"""
Exception taxonomy shared by every package.

SpecError and its subclasses mean the input is malformed (exit code 2),
ComputationRefused means a configured bound stops the computation (exit
code 3) and InternalInconsistency should never be raised on valid input.
"""


class SpecError(ValueError):
    """Malformed user input"""


class PhaseParseError(SpecError):
    pass


class GroupLiteralError(SpecError):
    pass


class HadamardParseError(SpecError):
    pass


class NotHadamardError(HadamardParseError):
    pass


class WordParseError(SpecError):
    pass


class TwistShapeError(SpecError):
    pass


class ComputationRefused(RuntimeError):
    """A size, finiteness or precision bound prevents the computation"""


class BoundExceeded(ComputationRefused):
    pass


class MemoryGuardError(ComputationRefused):
    pass


class InfiniteGroupError(ComputationRefused):
    pass


class NotLocallyFreeError(ComputationRefused):
    pass


class PrecisionError(ComputationRefused):
    pass


class InternalInconsistency(RuntimeError):
    """Raised when a cross-check between two computations disagrees"""


class NonConstantRatio(InternalInconsistency):
    pass


class NonIntegerCluster(InternalInconsistency):
    pass


class NonMarkovTrace(InternalInconsistency):
    pass


class IllConditionedTrace(InternalInconsistency):
    pass
