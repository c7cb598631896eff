"""Exact order-by-order construction of a separation-of-variables star product
for a Kahler-Poisson structure vanishing on a Levi nondegenerate hypersurface."""

__version__ = "0.1.0"
