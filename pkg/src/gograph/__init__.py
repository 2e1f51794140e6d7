"""Geodesic graphs of homogeneous Riemannian and Finsler (alpha, beta) metrics."""

__version__ = "0.1.0"
