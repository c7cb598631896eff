"""Exact coefficients, jets, fiber-graded jets and one-parameter formal series."""

from . import linalg, multiindex
from .fiber import FiberGradedJet
from .gaussian import I, GaussianRational, parse_rational
from .jet import Jet
from .series import FormalSeries, scalar_series, series_inv


def jet_mul(a, b):
    return a * b


def jet_diff(a, var):
    return a.diff(var)


def jet_inv(a):
    return a.inv()


def jet_log_ratio(a):
    return a.log_ratio()


__all__ = [
    "GaussianRational",
    "I",
    "Jet",
    "FiberGradedJet",
    "FormalSeries",
    "series_inv",
    "scalar_series",
    "parse_rational",
    "jet_mul",
    "jet_diff",
    "jet_inv",
    "jet_log_ratio",
    "linalg",
    "multiindex",
]
