"""Exact stability checks for reductive and non-reductive GIT quotients."""

__version__ = "0.1.0"
