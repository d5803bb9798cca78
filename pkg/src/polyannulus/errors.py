"""Exception types raised by the solvers and the I/O layer."""


class AnnulusError(ValueError):
    """Base class for every error raised by this package."""


class DegenerateShape(AnnulusError):
    """The reference shape is not full-dimensional."""


class OriginNotInterior(AnnulusError):
    """The origin is not strictly inside the reference shape."""


class DimensionTooHigh(AnnulusError):
    """Halfspaces must be supplied for shapes of dimension above three."""


class EmptyCloud(AnnulusError):
    """An operation received a point cloud with no points."""


class DegenerateAnnulus(AnnulusError):
    """Fatness statistics are undefined for zero width or zero inner radius."""


class InvalidParameter(AnnulusError):
    pass


class GridTooLarge(AnnulusError):
    """A search grid exceeds the configured evaluation cap.

    ``required`` holds the cap that would have admitted the grid.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class SlimnessDiverged(AnnulusError):
    """The slimness estimate kept growing past the retry cap."""


class FacetUnsampled(AnnulusError):
    """The sampling density is too coarse to place a sample on every facet."""


class TooLargeForOracle(AnnulusError):
    pass


class NotPlanar(AnnulusError):
    pass


class DegenerateDirection(AnnulusError):
    pass


class InfeasibleProgram(AnnulusError):
    """A linear program has no feasible point (only reachable through bad input)."""


class InputFormatError(AnnulusError):
    """A point or shape file could not be parsed.

    ``line`` is the 1-based line number of the offending row when known.
    """

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
