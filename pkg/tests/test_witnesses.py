import random
from fractions import Fraction

import pytest

from conesectors.geometry import (
    ConeSpec,
    LatticeWindow,
    cone,
    contains_point,
    first_common_point,
    first_in_a_not_in_b,
)
from conesectors.witnesses import (
    PreconditionError,
    Tri,
    complement_witness,
    cone_subset,
    disjoint,
    enlargement_witness,
    eventual_containment,
    minimal_integer_lambda,
    separation_witness,
    shrink_witness,
)

W50 = LatticeWindow.square(50)


def random_cone(rng, apex_range=8):
    while True:
        axis = (rng.randint(-8, 8), rng.randint(-8, 8))
        if any(axis):
            break
    apex = (Fraction(rng.randint(-2 * apex_range, 2 * apex_range), 2),
            Fraction(rng.randint(-2 * apex_range, 2 * apex_range), 2))
    return ConeSpec(apex, axis, Fraction(rng.choice(range(-9, 10)), 10))


class TestComplement:
    def test_parameter_flip(self):
        v = complement_witness(cone((0, 0), (1, 0), 0))
        assert v == cone((0, 0), (-1, 0), 0)
        v = complement_witness(cone((0, 0), (0, 1), Fraction(3, 5)))
        assert v.axis == (0, -1) and v.cos_half_angle == Fraction(-3, 5)

    def test_window_soundness(self):
        u = cone((1, 0), (2, 1), Fraction(1, 2))
        v = complement_witness(u)
        assert first_common_point(u, v, LatticeWindow.square(20)) is None

    def test_random_windows(self):
        rng = random.Random(3)
        for _ in range(40):
            u = random_cone(rng)
            assert first_common_point(u, complement_witness(u), W50) is None


class TestShrink:
    def test_same_axis(self):
        got = shrink_witness(cone((0, 0), (1, 0), 0), (0, 0), (1, 0), Fraction(3, 5))
        assert got == cone((0, 0), (1, 0), Fraction(3, 5))

    def test_offset_apex_scan(self):
        outer = cone((0, 0), (1, 0), Fraction(1, 2))
        got = shrink_witness(outer, (4, 1), (1, 0), Fraction(9, 10))
        assert first_in_a_not_in_b(got, outer, LatticeWindow.square(30)) is None

    def test_precondition_angle(self):
        with pytest.raises(PreconditionError, match="angle"):
            shrink_witness(cone((0, 0), (1, 0), Fraction(1, 2)), (0, 0), (0, 1),
                           Fraction(9, 10))

    def test_precondition_closure(self):
        with pytest.raises(PreconditionError, match="closure"):
            shrink_witness(cone((0, 0), (1, 0), Fraction(1, 2)), (-3, 0), (1, 0),
                           Fraction(9, 10))

    def test_precondition_beta(self):
        # beta must undercut alpha minus the axis tilt
        with pytest.raises(PreconditionError, match="beta"):
            shrink_witness(cone((0, 0), (1, 0), Fraction(1, 2)), (0, 0), (4, 3),
                           Fraction(9, 10))


class TestEventualContainment:
    def test_known_configuration(self):
        target = cone((0, 0), (1, 0), Fraction(1, 2))
        lam = eventual_containment(target, (0, 10), (1, 0))
        # the returned bound certifies membership (probes run inside the call)
        assert contains_point(target, (lam, 10))
        # oracle: integer membership scan finds the first integer entry at 6
        members = [n for n in range(21)
                   if contains_point(target, (n, 10))]
        assert members == list(range(6, 21))
        assert minimal_integer_lambda(target, (0, 10), (1, 0), cap=20) == 6

    def test_half_plane_threshold(self):
        target = cone((0, 0), (1, 0), 0)
        assert not contains_point(target, (0, 0))
        for lam in (6, 7, 50):
            assert contains_point(target, (-5 + lam, 0))
        assert not contains_point(target, (0, 0))  # lambda = 5 lands on the wall
        assert minimal_integer_lambda(target, (-5, 0), (1, 0)) == 6

    def test_interior_start(self):
        target = cone((0, 0), (1, 0), Fraction(1, 2))
        lam = eventual_containment(target, (3, 0), (1, 0))
        assert lam >= 0 and contains_point(target, (3 + lam, 0))

    def test_direction_not_interior(self):
        with pytest.raises(PreconditionError):
            eventual_containment(cone((0, 0), (1, 0), Fraction(1, 2)), (0, 0), (0, 1))

    def test_random_probes(self):
        rng = random.Random(11)
        done = 0
        while done < 30:
            target = random_cone(rng)
            u = (rng.randint(-4, 4), rng.randint(-4, 4))
            if not any(u):
                continue
            q = (rng.randint(-6, 6), rng.randint(-6, 6))
            try:
                lam = eventual_containment(target, q, u)
            except PreconditionError:
                continue
            for probe in (lam, lam + 1, 2 * lam, 10 * lam):
                pt = tuple(a + probe * b for a, b in zip(map(Fraction, q), u))
                assert contains_point(target, pt)
            done += 1


class TestEnlargement:
    def check(self, u, v, window=W50):
        vp, big = enlargement_witness(u, v)
        assert first_in_a_not_in_b(vp, v, window) is None, "V' escapes V"
        assert first_in_a_not_in_b(u, big, window) is None, "U escapes W"
        assert first_in_a_not_in_b(vp, big, window) is None, "V' escapes W"

    def test_identical_cones(self):
        self.check(cone((0, 0), (1, 0), 0), cone((0, 0), (1, 0), 0))

    def test_antipodal_axes(self):
        self.check(cone((0, 0), (1, 0), Fraction(1, 2)),
                   cone((0, 0), (-1, 0), Fraction(1, 2)))

    def test_offset_apexes(self):
        self.check(cone((0, 0), (1, 0), Fraction(1, 2)),
                   cone((10, 0), (0, 1), Fraction(1, 2)))

    def test_random(self):
        rng = random.Random(17)
        for _ in range(25):
            self.check(random_cone(rng), random_cone(rng))


class TestSeparation:
    def test_empty_tuple(self):
        u = cone((0, 0), (1, 0), 0)
        assert separation_witness(u, ()) == u

    def test_two_sided(self):
        u = cone((0, 0), (1, 0), 0)
        others = (cone((0, 6), (0, 1), Fraction(1, 2)),
                  cone((0, -6), (0, -1), Fraction(1, 2)))
        got = separation_witness(u, others)
        w = LatticeWindow.square(60)
        assert first_in_a_not_in_b(got, u, w) is None
        met = sum(1 for o in others if first_common_point(got, o, w) is not None)
        assert met <= 1

    def test_axis_inside_single_other(self):
        u = cone((0, 0), (1, 0), Fraction(1, 2))
        other = cone((0, 0), (1, 0), Fraction(9, 10))
        got = separation_witness(u, (other,))
        assert first_in_a_not_in_b(got, u, W50) is None
        assert first_in_a_not_in_b(got, other, W50) is None

    def test_rejects_non_disjoint_others(self):
        u = cone((0, 0), (1, 0), 0)
        with pytest.raises(PreconditionError):
            separation_witness(u, (cone((0, 0), (1, 0), Fraction(1, 2)),
                                   cone((0, 0), (2, 1), Fraction(1, 2))))

    def test_random(self):
        rng = random.Random(23)
        w = LatticeWindow.square(50)
        done = 0
        while done < 25:
            u = random_cone(rng)
            others = []
            for _ in range(10):
                cand = random_cone(rng)
                if len(others) < 2 and all(
                        disjoint(cand, o).status is Tri.TRUE for o in others):
                    others.append(cand)
            got = separation_witness(u, tuple(others))
            assert first_in_a_not_in_b(got, u, w) is None
            met = sum(1 for o in others if first_common_point(got, o, w) is not None)
            assert met <= 1
            done += 1


class TestDisjoint:
    def test_opposite_half_planes(self):
        d = disjoint(cone((0, 0), (1, 0), 0), cone((0, 0), (-1, 0), 0))
        assert d.status is Tri.TRUE

    def test_quadrant_overlap_witness(self):
        d = disjoint(cone((0, 0), (1, 0), 0), cone((0, 0), (0, 1), 0))
        assert d.status is Tri.FALSE
        assert contains_point(cone((0, 0), (1, 0), 0), d.witness)
        assert contains_point(cone((0, 0), (0, 1), 0), d.witness)

    def test_tangent_three_four_five(self):
        # half-angles arccos(3/5) + arccos(4/5) = 90 degrees exactly: the open
        # cones share only the boundary ray through (3, 4)
        u = cone((0, 0), (1, 0), Fraction(3, 5))
        v = cone((0, 0), (0, 1), Fraction(4, 5))
        d = disjoint(u, v)
        assert d.status is Tri.TRUE
        assert first_common_point(u, v, LatticeWindow.square(100)) is None
        assert not contains_point(u, (3, 4)) and not contains_point(v, (3, 4))

    def test_offset_apex_bounded_scan(self):
        u = cone((0, 6), (0, 1), Fraction(1, 2))
        v = cone((0, -6), (0, -1), Fraction(1, 2))
        d = disjoint(u, v)
        assert d.status is Tri.TRUE and d.method == "bounded-scan"

    def test_identical_cones_share_points(self):
        d = disjoint(cone((0, 0), (1, 1), Fraction(1, 2)),
                     cone((0, 0), (2, 2), Fraction(1, 2)))
        assert d.status is Tri.FALSE

    def test_unknown_on_distinct_apex_tangency(self):
        # overlapping parallel half-planes: the tangent fragment stays Unknown
        # without a window, sound rather than complete
        d = disjoint(cone((0, 0), (1, 0), 0), cone((3, 0), (-1, 0), 0))
        assert d.status is Tri.UNKNOWN
        d = disjoint(cone((0, 0), (1, 0), 0), cone((3, 0), (-1, 0), 0),
                     window=LatticeWindow.square(10))
        assert d.status is Tri.FALSE and d.witness is not None

    def test_soundness_random(self):
        rng = random.Random(31)
        w100 = LatticeWindow.square(100)
        trues = falses = 0
        for _ in range(120):
            u, v = random_cone(rng, 4), random_cone(rng, 4)
            if u == v:
                continue
            d = disjoint(u, v)
            if d.status is Tri.TRUE:
                assert first_common_point(u, v, w100) is None
                trues += 1
            elif d.status is Tri.FALSE:
                assert contains_point(u, d.witness) and contains_point(v, d.witness)
                falses += 1
        assert trues > 10 and falses > 10


class TestConeSubset:
    def test_common_apex_routes(self):
        assert cone_subset(cone((0, 0), (1, 0), Fraction(3, 5)),
                           cone((0, 0), (1, 0), 0)).status is Tri.TRUE
        assert cone_subset(cone((0, 0), (1, 1), Fraction(9, 10)),
                           cone((0, 0), (1, 0), Fraction(-1, 2))).status is Tri.TRUE

    def test_deep_apex_route(self):
        inner = cone((4, 1), (1, 0), Fraction(9, 10))
        outer = cone((0, 0), (1, 0), Fraction(1, 2))
        assert cone_subset(inner, outer).status is Tri.TRUE

    def test_refutation_with_window(self):
        cert = cone_subset(cone((0, 0), (1, 0), 0),
                           cone((0, 0), (1, 0), Fraction(3, 5)),
                           LatticeWindow.square(20))
        assert cert.status is Tri.FALSE and cert.witness is not None

    def test_window_certification_soundness(self):
        rng = random.Random(41)
        w = LatticeWindow.square(25)
        for _ in range(60):
            inner, outer = random_cone(rng, 4), random_cone(rng, 4)
            cert = cone_subset(inner, outer, w)
            if cert.status is Tri.TRUE:
                assert first_in_a_not_in_b(inner, outer, w) is None
            else:
                assert contains_point(inner, cert.witness)
                assert not contains_point(outer, cert.witness)

    def test_exact_route_soundness_large_window(self):
        rng = random.Random(43)
        w = LatticeWindow.square(80)
        exact = 0
        for _ in range(150):
            inner, outer = random_cone(rng, 3), random_cone(rng, 3)
            cert = cone_subset(inner, outer)
            if cert.status is Tri.TRUE:
                assert first_in_a_not_in_b(inner, outer, w) is None
                exact += 1
        assert exact > 5
