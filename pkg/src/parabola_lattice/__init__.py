"""Exact lattice-point counts under and near the dilated parabola y = x^2/a,
quadratic Gauss sums in closed form, and empirical checks of their bounds."""

__version__ = "0.1.0"
