"""Figure rendering for rational-base normality datasets."""

__version__ = "0.1.0"
