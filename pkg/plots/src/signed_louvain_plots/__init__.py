"""Figure rendering for the signed-network toolkit CSV outputs."""

from .render import SchemaError, plot_bench, plot_sweep

__all__ = ["SchemaError", "plot_bench", "plot_sweep"]
