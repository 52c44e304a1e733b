"""Exact computations for the rank 3 hyperbolic Kac-Moody algebra F and its subalgebras."""

__version__ = "0.1.0"
