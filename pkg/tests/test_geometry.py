import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conesectors import _kernels_py
from conesectors.geometry import (
    ConeSpec,
    DimensionMismatch,
    GeometryError,
    LatticeWindow,
    cone,
    closure_contains,
    contains_point,
    int_cone_params,
    lattice_points,
    membership_sign,
    sign_sqrt1,
    sign_sqrt2,
)

mpmath.mp.prec = 128


def _mpf(q) -> mpmath.mpf:
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def mp_membership(c: ConeSpec, x) -> int:
    """128-bit floating evaluation of the defining inequality; +1/-1/0-ish."""
    v = [_mpf(xi) - _mpf(pi) for xi, pi in zip(x, c.apex)]
    t = [mpmath.mpf(a) for a in c.axis]
    lhs = mpmath.fsum(a * b for a, b in zip(v, t))
    rhs = mpmath.sqrt(mpmath.fsum(a * a for a in v)) * \
        mpmath.sqrt(mpmath.fsum(a * a for a in t)) * _mpf(c.cos_half_angle)
    return mpmath.sign(lhs - rhs)


def mp_boundary_angle_gap(c: ConeSpec, x) -> float:
    """Angular distance of x from the cone boundary, in radians."""
    v = [_mpf(xi) - _mpf(pi) for xi, pi in zip(x, c.apex)]
    norm = mpmath.sqrt(mpmath.fsum(a * a for a in v))
    if norm == 0:
        return 0.0
    t = [mpmath.mpf(a) for a in c.axis]
    tn = mpmath.sqrt(mpmath.fsum(a * a for a in t))
    cosang = mpmath.fsum(a * b for a, b in zip(v, t)) / (norm * tn)
    cosang = max(-1, min(1, cosang))
    return float(abs(mpmath.acos(cosang) - mpmath.acos(_mpf(c.cos_half_angle))))


class TestConeSpec:
    def test_validation(self):
        with pytest.raises(GeometryError):
            cone((0, 0), (0, 0), 0)
        with pytest.raises(GeometryError):
            cone((0, 0), (1, 0), 1)
        with pytest.raises(GeometryError):
            cone((0, 0), (1, 0), Fraction(-5, 4))
        with pytest.raises(DimensionMismatch):
            cone((0, 0, 0), (1, 0), 0)

    def test_axis_gcd_canonicalization(self):
        assert cone((0, 0), (4, -6), Fraction(1, 2)) == cone((0, 0), (2, -3), Fraction(1, 2))
        assert cone((0, 0), (4, 6), 0).axis == (2, 3)

    def test_half_space_apex_degeneracy(self):
        # cos = 0: the apex may slide orthogonally to the axis
        assert cone((2, 5), (1, 0), 0) == cone((2, -17), (1, 0), 0)
        assert cone((2, 5), (1, 0), 0) != cone((3, 5), (1, 0), 0)
        # a non-right angle pins the apex
        assert cone((2, 5), (1, 0), Fraction(1, 2)) != cone((2, 4), (1, 0), Fraction(1, 2))

    def test_json_roundtrip(self):
        c = cone((Fraction(1, 3), -2), (3, -5), Fraction(-7, 9))
        back = ConeSpec.from_json(c.to_json())
        assert back == c
        d = c.to_dict()
        assert d["dim"] == 2 and d["axis"] == [3, -5] and d["cos"] == [-7, 9]


class TestContainsPoint:
    def test_half_plane(self):
        c = cone((0, 0), (1, 0), 0)
        assert contains_point(c, (3, 1))
        assert not contains_point(c, (0, 5))  # boundary is excluded

    def test_apex_excluded(self):
        c = cone((2, 2), (1, 0), 0)
        assert not contains_point(c, (2, 2))
        assert closure_contains(c, (2, 2))

    def test_rational_points(self):
        c = cone((0, 0), (1, 0), Fraction(1, 2))
        assert contains_point(c, (Fraction(5, 2), Fraction(1, 2)))
        assert not contains_point(c, (Fraction(1, 2), Fraction(7, 8)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            contains_point(cone((0, 0), (1, 0), 0), (1, 2, 3))

    def test_three_dimensional(self):
        c = cone((0, 0, 0), (1, 1, 1), Fraction(4, 5))
        assert contains_point(c, (5, 5, 5))
        assert not contains_point(c, (5, -5, 0))

    def test_against_float_oracle(self):
        # membership agrees with a 128-bit evaluation away from the boundary
        rng = random.Random(20240)
        pool = [Fraction(k, 10) for k in range(-9, 10)]
        checked = 0
        while checked < 10_000:
            apex = (Fraction(rng.randint(-8, 8), rng.choice((1, 2))),
                    Fraction(rng.randint(-8, 8), rng.choice((1, 2))))
            axis = (rng.randint(-9, 9), rng.randint(-9, 9))
            if not any(axis):
                continue
            c = ConeSpec(apex, axis, rng.choice(pool))
            x = (rng.randint(-30, 30), rng.randint(-30, 30))
            if tuple(map(Fraction, x)) == c.apex:
                continue
            if mp_boundary_angle_gap(c, x) <= 1e-6:
                continue
            assert contains_point(c, x) == (mp_membership(c, x) > 0)
            checked += 1


class TestLatticeWindow:
    def test_point_count_and_order(self):
        w = LatticeWindow((0, 0), (2, 1))
        assert w.point_count == 6
        assert list(w.points()) == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]

    def test_invalid(self):
        with pytest.raises(GeometryError):
            LatticeWindow((0, 0), (-1, 0))


class TestLatticePoints:
    def test_half_plane_window(self):
        got = lattice_points(cone((0, 0), (1, 0), 0), LatticeWindow((0, 0), (2, 2)))
        assert got == [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]

    def test_disjoint_window_empty(self):
        got = lattice_points(cone((0, 0), (1, 0), 0), LatticeWindow((-5, -5), (-1, 5)))
        assert got == []

    def test_scan_matches_float_oracle(self):
        # brute-force scan cross-checked against the high-precision evaluation
        c = cone((0, 0), (1, 0), Fraction(3, 5))
        window = LatticeWindow.square(4)
        got = set(lattice_points(c, window))
        for x in window.points():
            if mp_boundary_angle_gap(c, x) <= 1e-9:
                continue
            assert (x in got) == (mp_membership(c, x) > 0)

    def test_every_open_cone_catches_lattice_points(self):
        rng = random.Random(99)
        for _ in range(50):
            axis = (rng.randint(-7, 7), rng.randint(-7, 7))
            if not any(axis):
                continue
            c = ConeSpec(
                (Fraction(rng.randint(-6, 6), 2), Fraction(rng.randint(-6, 6), 2)),
                axis, Fraction(rng.choice(range(-9, 10)), 10))
            assert lattice_points(c, LatticeWindow.square(64)) != []

    def test_compiled_and_python_kernels_agree(self):
        rng = random.Random(5)
        for _ in range(40):
            axis = (rng.randint(-8, 8), rng.randint(-8, 8))
            if not any(axis):
                continue
            c = ConeSpec((Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))),
                         axis, Fraction(rng.choice(range(-9, 10)), 10))
            w = LatticeWindow.square(12)
            args = int_cone_params(c) + (w.lo[0], w.hi[0], w.lo[1], w.hi[1])
            assert lattice_points(c, w) == _kernels_py.scan_cone_2d(*args)


class TestRadicalSigns:
    @given(st.integers(-50, 50), st.integers(-50, 50), st.integers(0, 50))
    @settings(derandomize=True, max_examples=300)
    def test_sign_sqrt1(self, a, b, r):
        got = sign_sqrt1(Fraction(a), Fraction(b), Fraction(r))
        ref = mpmath.sign(a + b * mpmath.sqrt(r))
        if abs(a + b * mpmath.sqrt(r)) > 1e-20:
            assert got == ref
        else:
            assert got == 0 or abs(a + b * mpmath.sqrt(r)) < 1e-12

    @given(st.integers(-20, 20), st.integers(-20, 20), st.integers(0, 30),
           st.integers(-20, 20), st.integers(0, 30))
    @settings(derandomize=True, max_examples=300)
    def test_sign_sqrt2(self, q0, q1, r1, q2, r2):
        got = sign_sqrt2(Fraction(q0), Fraction(q1), Fraction(r1),
                         Fraction(q2), Fraction(r2))
        val = q0 + q1 * mpmath.sqrt(r1) + q2 * mpmath.sqrt(r2)
        if abs(val) > 1e-20:
            assert got == mpmath.sign(val)

    def test_membership_sign_zero_on_boundary(self):
        # (3,4) lies on the boundary ray of the 3/5-cone about the x-axis
        c = cone((0, 0), (1, 0), Fraction(3, 5))
        assert membership_sign(c, (3, 4)) == 0
        assert not contains_point(c, (3, 4))
        assert closure_contains(c, (3, 4))
