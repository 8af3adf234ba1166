"""Exception hierarchy.

Every error raised by the library derives from :class:`CharvarError`, which is
itself a ``ValueError`` so callers validating user input can catch either.
"""


class CharvarError(ValueError):
    """Base class for all library errors."""


class InvalidPartition(CharvarError):
    pass


class WeightMismatch(CharvarError):
    pass


class PartExceedsWidth(CharvarError):
    pass


class ArityMismatch(CharvarError):
    pass


class AllWidthsOne(CharvarError):
    pass


class InvalidConfiguration(CharvarError):
    pass


class UnpairedM(InvalidConfiguration):
    pass


class InvalidOverlap(InvalidConfiguration):
    pass


class ZeroPart(InvalidConfiguration):
    pass


class ConvolutionError(CharvarError):
    """Raised when a middle convolution step cannot be carried out."""


class DegenerateKernel(ConvolutionError):
    pass


class NegativePart(ConvolutionError):
    pass


class InvalidConvolution(ConvolutionError):
    pass


class EigenvalueCollision(ConvolutionError):
    pass
