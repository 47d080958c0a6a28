"""Exact Barnes-Wall lattice constructions and invariants."""

from fractions import Fraction

from . import _bwlat
from ._bwlat import (
    Error,
    asymptotics_table,
    code_properties,
    e8_frame_invariants,
    exponent_interval,
    survey_avoiding,
    verify_certificate,
    verify_stream,
)

__all__ = [
    "Error",
    "asymptotics_table",
    "bernoulli",
    "build_bw",
    "code_properties",
    "discriminant_invariants",
    "e8_frame_invariants",
    "exponent_interval",
    "mass",
    "minimal_vector_count",
    "minimal_vectors",
    "minkowski_bound",
    "omega_plus_order",
    "survey_avoiding",
    "verify_certificate",
    "verify_stream",
    "washtenawize_bw",
    "ypsilanti",
]


def _lattice(raw):
    raw["basis"] = [[int(x) for x in row] for row in raw["basis"]]
    raw["determinant"] = Fraction(raw["determinant"])
    return raw


def build_bw(d):
    return _lattice(_bwlat.build_bw(d))


def minimal_vector_count(d):
    return int(_bwlat.minimal_vector_count(d))


def minimal_vectors(d, q=0):
    """Minimal vectors of BW_d[q] as integer rows over 2**denom_exp."""
    rows, denom_exp = _bwlat.minimal_vectors(d, q)
    return rows, denom_exp


def discriminant_invariants(d):
    return [int(x) for x in _bwlat.discriminant_invariants(d)]


def washtenawize_bw(e, degree):
    raw = _lattice(_bwlat.washtenawize_bw(e, degree))
    raw["min_norm"] = Fraction(raw["min_norm"])
    raw["washtenaw_ratio"] = Fraction(raw["washtenaw_ratio"])
    return raw


def ypsilanti(seed=0, negative_control=False):
    raw = _bwlat.ypsilanti(seed, negative_control)
    raw["determinant"] = int(raw["determinant"])
    if raw["cross_norm"] is not None:
        raw["cross_norm"] = Fraction(raw["cross_norm"])
    return raw


def mass(n):
    return Fraction(_bwlat.mass(n))


def bernoulli(j):
    return Fraction(_bwlat.bernoulli(j))


def omega_plus_order(n, q):
    return int(_bwlat.omega_plus_order(n, q))


def minkowski_bound(n):
    return int(_bwlat.minkowski_bound(n))
