"""Exact decomposition of tensor products of k[x]-modules and quiver representations."""

__version__ = "0.1.0"
