"""hhgplots: publication-style figures for hhgsim CSV/JSON artifacts.

Consumes only the documented file schemas; never imports the simulator.
"""

from .figures import FIGURE_KINDS, FigureSpec, render
from .readers import SchemaError

__version__ = "0.1.0"
