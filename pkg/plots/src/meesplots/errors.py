class PlotInputError(Exception):
    """Base class for unusable input files."""


class SchemaError(PlotInputError):
    """File exists but does not match the expected CSV/JSON layout."""


class EmptyInput(PlotInputError):
    """File parses but carries no data rows."""


class GeometryMismatch(PlotInputError):
    """Overlaid layers disagree on bin counts or axis ranges."""
