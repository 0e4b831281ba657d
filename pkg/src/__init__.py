"""dal-perf: divide-and-learn performance prediction for configurable software."""

__version__ = "0.1.0"
