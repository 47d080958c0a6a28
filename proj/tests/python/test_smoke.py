from fractions import Fraction
from math import prod

import pytest

import bwlat


def test_bw4_invariants():
    bw = bwlat.build_bw(4)
    assert bw["rank"] == 16
    assert bw["even"]
    assert bw["determinant"] == 256
    assert bw["duality_level"] == 1
    assert bwlat.discriminant_invariants(4) == [2] * 8


def test_minimal_vectors_have_minimal_norm():
    rows, e = bwlat.minimal_vectors(3)
    assert len(rows) == bwlat.minimal_vector_count(3) == 240
    norms = {Fraction(sum(x * x for x in v), 4**e) for v in rows}
    assert norms == {2}
    assert len({tuple(v) for v in rows}) == 240


def test_mass_is_reciprocal_weyl_order():
    weyl_e8 = prod([2, 8, 12, 14, 18, 20, 24, 30])
    assert bwlat.mass(8) == Fraction(1, weyl_e8)
    assert 10**7 < bwlat.mass(32) < 10**8


def test_asymptotics_first_row():
    assert bwlat.asymptotics_table(1) == ["1 .5000000000 1.375000000 .3437500000"]


def test_codes_and_frames():
    props = bwlat.code_properties("affine2", 4)
    assert (props["length"], props["dimension"], props["min_weight"]) == (16, 11, 4)
    assert bwlat.e8_frame_invariants() == [1, 2, 3, 4]


def test_washtenawization_and_gluing():
    w = bwlat.washtenawize_bw(3, 3)
    assert w["rank"] == 64
    assert w["washtenaw_ratio"] == Fraction(1, 2)
    y = bwlat.ypsilanti(seed=3)
    assert y["even"] and y["determinant"] == 1 and y["separated"]
    assert bwlat.verify_certificate(y["certificate"])
    bad = bwlat.ypsilanti(negative_control=True)
    assert not bad["separated"]
    assert bad["cross_norm"] == 4


def test_errors_carry_their_kind():
    with pytest.raises(bwlat.Error) as info:
        bwlat.mass(12)
    assert info.value.kind == "InvalidDimension"
    with pytest.raises(ValueError):
        bwlat.build_bw(0)


def test_group_orders():
    assert bwlat.omega_plus_order(3, 2) == 20160
    assert bwlat.minkowski_bound(8) % 696729600 == 0
