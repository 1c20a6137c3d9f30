"""Invariant functions and pseudometrics on disc, Reinhardt, balanced and Hartogs domains."""

from .foundations import (
    ComplexVector,
    Kind,
    MetricKind,
    MetricValue,
    Status,
    vec,
)

__version__ = "0.1.0"

__all__ = ["ComplexVector", "Kind", "MetricKind", "MetricValue", "Status", "vec", "__version__"]
