"""Offline rendering of the generator CLI's CSV/JSON outputs."""

from .errors import EmptyInput, GeometryMismatch, PlotInputError, SchemaError
from .io import CurveTable, HistogramGrid, read_curves, read_histogram
from .render import FigureSpec, RenderResult, render_curves, render_heatmap

__version__ = "0.1.0"
