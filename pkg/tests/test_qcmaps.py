import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcforge.errors import DomainError
from qcforge.frozen import ANNULUS_BAND, TWIST_BAND
from qcforge.geometry import Point
from qcforge.qcmaps import (annulus_extension, annulus_extension_any,
                            invert_piecewise, twist_extension, validate)

GRID = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45]


def _annulus_form(a, b):
    return max(b * (1 - 2 * a) / (a * (1 - 2 * b)),
               a * (1 - 2 * b) / (b * (1 - 2 * a)))


def test_annulus_identity_is_exactly_conformal():
    for a in (0.1, 0.25, 0.4):
        t = annulus_extension(a, a)
        assert t.max_dilatation == 1.0
        assert all(k == 1.0 for k in t.cell_dilatations)


def test_annulus_parameter_validation():
    with pytest.raises(DomainError):
        annulus_extension(0.0, 0.2)
    with pytest.raises(DomainError):
        annulus_extension(0.3, 0.1)  # plain builder needs a <= b
    with pytest.raises(DomainError):
        annulus_extension_any(0.2, 0.5)


def test_annulus_dilatation_tracks_modulus_ratio():
    for a in GRID:
        for b in GRID:
            if a == b:
                continue
            t = annulus_extension_any(a, b)
            r = t.max_dilatation / _annulus_form(a, b)
            assert ANNULUS_BAND[0] <= r <= ANNULUS_BAND[1], (a, b, r)


def test_annulus_validates_on_grid():
    for a in (0.1, 0.25, 0.4):
        for b in (0.1, 0.25, 0.4):
            t = annulus_extension_any(a, b)
            rep = validate(t, target_area=1.0 - (1.0 - 2 * b) ** 2)
            assert rep.ok, (a, b, rep)


def test_annulus_boundary_maps():
    t = annulus_extension(0.1, 0.3)
    # outer boundary fixed pointwise
    for p in (Point(0.5, 0.5), Point(-0.5, 0.2), Point(0.31, -0.5)):
        assert t.apply(p).dist(p) < 1e-12
    # inner boundary scaled by (1-2b)/(1-2a)
    s = (1 - 0.6) / (1 - 0.2)
    for p in (Point(0.4, 0.4), Point(-0.4, 0.1)):
        q = t.apply(p)
        assert q.dist(p.scale(s)) < 1e-12


def test_annulus_any_swaps_cleanly():
    """a > b is the cell-wise inverse of the swapped template."""
    t = annulus_extension_any(0.3, 0.1)
    assert t.param("a") == 0.3 and t.param("b") == 0.1
    back = annulus_extension(0.1, 0.3)
    assert t.max_dilatation == back.max_dilatation


def test_inverse_dilatations_bitwise_equal():
    for t in (annulus_extension(0.1, 0.3), twist_extension(0.07)):
        ti = invert_piecewise(t)
        assert ti.cell_dilatations == t.cell_dilatations
        assert ti.max_dilatation == t.max_dilatation


def test_inverse_roundtrip():
    t = annulus_extension(0.15, 0.35)
    ti = invert_piecewise(t)
    rng = np.random.default_rng(8)
    done = 0
    while done < 100:
        p = Point(*rng.uniform(-0.5, 0.5, 2))
        if t.locate(p) < 0:
            continue
        assert ti.apply(t.apply(p)).dist(p) < 1e-12
        done += 1


def test_twist_parameter_range():
    for bad in (0.0, 0.2, 0.5, -0.1):
        with pytest.raises(DomainError):
            twist_extension(bad)


def test_twist_cell_count():
    assert len(twist_extension(0.1).pieces) == 24


def test_twist_validates_and_dilatation_band():
    for a in np.arange(0.02, 0.1801, 0.02):
        t = twist_extension(float(a))
        target = 0.5 - 2 * (0.5 - 2 * a) ** 2
        rep = validate(t, target_area=target, tol=1e-9)
        assert rep.ok, (a, rep)
        assert TWIST_BAND[0] <= t.max_dilatation * a <= TWIST_BAND[1]


def test_twist_boundary_fixed():
    t = twist_extension(0.1)
    for p in (Point(0.0, -0.3), Point(0.5, 0.2), Point(0.25, 0.5),
              Point(0.37, -0.5)):
        assert t.apply(p).dist(p) < 1e-12


def test_twist_hole_correspondence():
    """Left hole boundary -> top hole boundary, right -> bottom, by the
    axis-respecting similarity."""
    a = 0.1
    t = twist_extension(a)
    s = (0.5 - 2 * a) / 0.125  # hole scale factor
    cases = [
        (Point(0.125, 0.0), Point(0.25, 0.25)),   # left -> top
        (Point(0.375, 0.0), Point(0.25, -0.25)),  # right -> bottom
    ]
    for center, image_center in cases:
        for dx, dy in ((0.0625, 0.0), (0.0, -0.0625), (0.0625, 0.0625)):
            p = Point(center.x + dx, center.y + dy)
            expect = Point(image_center.x + s * dx, image_center.y + s * dy)
            assert t.apply(p).dist(expect) < 1e-12


def test_twist_json_shape():
    obj = twist_extension(0.05).to_json_obj()
    assert obj["domain_kind"] == "twist(a=0.05)"
    assert len(obj["pieces"]) == 24
    assert len(obj["pieces"][0]["map"]) == 6


def test_validate_flags_area_mismatch():
    t = twist_extension(0.1)
    rep = validate(t, target_area=0.3)
    assert not rep.ok
    assert rep.surjective_area_defect > 1e-9


@given(st.floats(0.02, 0.48), st.floats(0.02, 0.48))
@settings(max_examples=30, deadline=None)
def test_annulus_always_validates(a, b):
    t = annulus_extension_any(a, b)
    rep = validate(t, target_area=1.0 - (1.0 - 2 * b) ** 2)
    assert rep.continuous and rep.oriented
    assert rep.surjective_area_defect < 1e-9


@given(st.floats(0.005, 0.195))
@settings(max_examples=30, deadline=None)
def test_twist_always_oriented(a):
    t = twist_extension(a)
    rep = validate(t, target_area=0.5 - 2 * (0.5 - 2 * a) ** 2)
    assert rep.continuous and rep.oriented and rep.boundary_ok
