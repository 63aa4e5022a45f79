"""Exact homological computations over finite-dimensional algebras.

Minimal resolutions, Ext and Hochschild dimensions, Koszul objects, ghost
certificates and lower bounds on triangulated-category dimensions.
"""

__version__ = "0.1.0"
