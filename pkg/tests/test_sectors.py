import random
from fractions import Fraction

import numpy as np
import pytest

from conesectors.checks import tiny_dense_configuration
from conesectors.geometry import LatticeWindow, cone, contains_point
from conesectors.pauli import EdgeLattice, dense_matrix, single_x, single_z
from conesectors.sectors import (
    ConeMissesWindow,
    OrientationError,
    SectorError,
    SectorLabel,
    apply_endo,
    assumption_checks,
    braiding,
    braiding_scalar,
    default_zigzag,
    fact_product,
    holonomy_T,
    holonomy_residue,
    interchange_check,
    make_sector,
    mono_product,
    monodromy,
    relocalized_variant,
    sectors_equal_on_margin,
    strict_localization_violations,
    transporter,
    vacuum_intertwiner,
)

LAT = EdgeLattice(LatticeWindow.square(8))
V = cone((0, 0), (1, 0), 0)
U1 = cone((0, 0), (2, 1), Fraction(9, 10))
U2 = cone((0, 0), (2, -1), Fraction(9, 10))
AUX = (U1, U2, V)


class TestLabels:
    def test_fusion_group(self):
        e, m, eps, vac = (SectorLabel.E, SectorLabel.M, SectorLabel.EPS,
                          SectorLabel.VACUUM)
        assert e.fuse(e) is vac and m.fuse(m) is vac
        assert e.fuse(m) is eps and m.fuse(e) is eps
        assert eps.fuse(eps) is vac and eps.fuse(e) is m

    def test_parse(self):
        assert SectorLabel.parse("eps") is SectorLabel.EPS
        with pytest.raises(SectorError):
            SectorLabel.parse("q")


class TestMakeSector:
    def test_vacuum(self):
        s = make_sector(SectorLabel.VACUUM, V, LAT)
        assert s.string.is_scalar() and s.paths == ()
        g = single_x(LAT, 5)
        assert apply_endo(s, g) == g

    @pytest.mark.parametrize("label", [SectorLabel.E, SectorLabel.M, SectorLabel.EPS])
    def test_paths_inside_cone_and_escaping(self, label):
        s = make_sector(label, V, LAT)
        doubled = V.scaled(2)
        for p in s.paths:
            assert len(p.edges) >= 1
            for e in p.support_edges:
                mx, my = LAT.midpoint(LAT.edges[e])
                assert contains_point(doubled, (int(2 * mx), int(2 * my)))
        # the string type matches the label
        if label is SectorLabel.E:
            assert s.string.z_mask and not s.string.x_mask
        if label is SectorLabel.M:
            assert s.string.x_mask and not s.string.z_mask

    @pytest.mark.parametrize("label", [SectorLabel.E, SectorLabel.M, SectorLabel.EPS])
    def test_strict_localization(self, label):
        for region in (V, cone((0, 0), (1, 1), Fraction(1, 2)),
                       cone((1, 0), (-1, 2), Fraction(0, 1))):
            s = make_sector(label, region, LAT)
            assert strict_localization_violations(s) == []
            # literal check: every out-of-cone margin generator is fixed
            inside = set(LAT.edges_in_cone(region))
            for i in LAT.margin_edges(2):
                if i in inside:
                    continue
                for g in (single_x(LAT, i), single_z(LAT, i)):
                    assert apply_endo(s, g) == g

    def test_cone_missing_window(self):
        with pytest.raises(ConeMissesWindow):
            make_sector(SectorLabel.E, cone((100, 100), (1, 0), Fraction(9, 10)), LAT)

    def test_variant_path_differs(self):
        a = make_sector(SectorLabel.E, V, LAT)
        b = make_sector(SectorLabel.E, V, LAT, variant=1)
        assert a.paths[0].base == b.paths[0].base
        assert a.string != b.string


class TestEndomorphism:
    def test_flip_on_crossing(self):
        from conesectors.pauli import PauliString

        s = make_sector(SectorLabel.E, V, LAT)
        edge = s.paths[0].edges[0]
        g = single_x(LAT, edge)
        minus_one = PauliString(LAT, 2, 0, 0)
        assert apply_endo(s, g) == minus_one * g

    def test_multiplicative_and_adjoint(self):
        rng = random.Random(6)
        s = make_sector(SectorLabel.EPS, V, LAT)
        n = LAT.n_edges
        from conesectors.pauli import PauliString
        for _ in range(30):
            a = PauliString(LAT, rng.randrange(4), rng.getrandbits(n), rng.getrandbits(n))
            b = PauliString(LAT, rng.randrange(4), rng.getrandbits(n), rng.getrandbits(n))
            assert apply_endo(s, a * b) == apply_endo(s, a) * apply_endo(s, b)
            assert apply_endo(s, a.adjoint()) == apply_endo(s, a).adjoint()
            assert apply_endo(s, a).x_mask == a.x_mask  # rho(a) = +/- a
            assert apply_endo(s, a).z_mask == a.z_mask

    def test_against_dense_oracle(self):
        lat, (tu1, tu2, tv) = tiny_dense_configuration()
        s = make_sector(SectorLabel.EPS, tv, lat)
        rng = random.Random(7)
        from conesectors.pauli import PauliString
        fs = dense_matrix(s.string)
        for _ in range(10):
            a = PauliString(lat, rng.randrange(4), rng.getrandbits(10),
                            rng.getrandbits(10))
            assert np.allclose(fs @ dense_matrix(a) @ fs.conj().T,
                               dense_matrix(apply_endo(s, a)))


class TestTransporter:
    def test_same_cone_identity_like(self):
        s = make_sector(SectorLabel.E, V, LAT)
        u, t = transporter(s, V)
        assert t.string == s.string
        assert u.op.is_scalar() and u.verify()

    def test_rotation_intertwiner_contract(self):
        for label in (SectorLabel.E, SectorLabel.M, SectorLabel.EPS):
            s = make_sector(label, V, LAT)
            u, t = transporter(s, U1)
            assert u.verify()
            assert strict_localization_violations(t) == []
            # literal margin check of u rho_s(g) = rho_t(g) u
            for i in LAT.margin_edges(2)[::7]:
                for g in (single_x(LAT, i), single_z(LAT, i)):
                    assert u.op * apply_endo(s, g) == apply_endo(t, g) * u.op

    def test_vacuum_transporter_trivial(self):
        s = make_sector(SectorLabel.VACUUM, V, LAT)
        u, t = transporter(s, U1)
        assert u.op.is_scalar() and t.string.is_scalar()

    def test_variant_paths_still_intertwine(self):
        s = make_sector(SectorLabel.M, V, LAT)
        u, t = relocalized_variant(s, 2)
        assert u.verify()
        assert t.cone == s.cone and t.string != s.string


class TestProducts:
    def test_fact_nullary_is_vacuum(self):
        s = fact_product((), V, LAT)
        assert s.label is SectorLabel.VACUUM and s.string.is_scalar()

    def test_fact_unary_is_inclusion(self):
        s = make_sector(SectorLabel.E, U1, LAT)
        t = fact_product((s,), V, LAT)
        assert t.string == s.string and t.cone == V

    def test_fact_piecewise_action(self):
        # the composite acts as the first factor inside its cone, as the
        # second inside the other, and trivially outside both
        s1 = make_sector(SectorLabel.E, U1, LAT)
        s2 = make_sector(SectorLabel.M, U2, LAT)
        prod = fact_product((s1, s2), V, LAT)
        assert prod.label is SectorLabel.EPS
        in1, in2 = set(LAT.edges_in_cone(U1)), set(LAT.edges_in_cone(U2))
        for i in LAT.margin_edges(2):
            for g in (single_x(LAT, i), single_z(LAT, i)):
                got = apply_endo(prod, g)
                if i in in1:
                    assert got == apply_endo(s1, g)
                elif i in in2:
                    assert got == apply_endo(s2, g)
                else:
                    assert got == g

    def test_fact_order_irrelevant_up_to_margin(self):
        s1 = make_sector(SectorLabel.E, U1, LAT)
        s2 = make_sector(SectorLabel.M, U2, LAT)
        a = fact_product((s1, s2), V, LAT)
        b = fact_product((s2, s1), V, LAT)
        assert sectors_equal_on_margin(a, b)

    def test_fact_rejects_overlap(self):
        s1 = make_sector(SectorLabel.E, U1, LAT)
        s2 = make_sector(SectorLabel.M, cone((0, 0), (2, 1), Fraction(4, 5)), LAT)
        with pytest.raises(SectorError):
            fact_product((s1, s2), V, LAT)

    def test_mono_unit(self):
        s = make_sector(SectorLabel.E, V, LAT)
        vac = make_sector(SectorLabel.VACUUM, V, LAT)
        assert mono_product(s, vac).string == s.string
        assert mono_product(vac, s).string == s.string

    def test_mono_associative(self):
        a = make_sector(SectorLabel.E, V, LAT)
        b = make_sector(SectorLabel.M, V, LAT)
        c = make_sector(SectorLabel.E, V, LAT, variant=1)
        lhs = mono_product(a, mono_product(b, c))
        rhs = mono_product(mono_product(a, b), c)
        assert lhs.string == rhs.string and lhs.label == rhs.label

    def test_mono_requires_common_cone(self):
        with pytest.raises(SectorError):
            mono_product(make_sector(SectorLabel.E, V, LAT),
                         make_sector(SectorLabel.E, U1, LAT))

    def test_ee_fuses_to_vacuum(self):
        s = make_sector(SectorLabel.E, V, LAT)
        same = mono_product(s, s)
        assert same.label is SectorLabel.VACUUM and same.string.is_scalar()
        alt = mono_product(s, make_sector(SectorLabel.E, V, LAT, variant=1))
        assert alt.label is SectorLabel.VACUUM and not alt.string.is_scalar()
        w = vacuum_intertwiner(alt)
        assert w.verify() and w.op.weight > 0

    def test_em_is_eps(self):
        e = make_sector(SectorLabel.E, V, LAT)
        m = make_sector(SectorLabel.M, V, LAT)
        composite = mono_product(e, m)
        assert composite.label is SectorLabel.EPS
        assert sectors_equal_on_margin(composite, make_sector(SectorLabel.EPS, V, LAT))


class TestBraiding:
    def test_statistics_table(self):
        se = make_sector(SectorLabel.E, V, LAT)
        sm = make_sector(SectorLabel.M, V, LAT)
        eps = make_sector(SectorLabel.EPS, V, LAT)
        assert monodromy(se, sm, AUX) == -1
        assert monodromy(sm, se, AUX) == -1
        assert monodromy(se, se, AUX) == 1
        assert monodromy(sm, sm, AUX) == 1
        assert braiding_scalar(braiding(eps, eps, AUX)) == -1
        assert monodromy(eps, eps, AUX) == 1

    def test_vacuum_unit_coherence(self):
        s = make_sector(SectorLabel.E, V, LAT)
        vac = make_sector(SectorLabel.VACUUM, V, LAT)
        assert braiding_scalar(braiding(s, vac, AUX)) == 1
        assert braiding_scalar(braiding(vac, s, AUX)) == 1

    def test_intertwiner_contract(self):
        se = make_sector(SectorLabel.E, V, LAT)
        sm = make_sector(SectorLabel.M, V, LAT)
        tau = braiding(se, sm, AUX)
        assert tau.op.is_scalar() and tau.verify()

    def test_orientation_enforced(self):
        se = make_sector(SectorLabel.E, V, LAT)
        sm = make_sector(SectorLabel.M, V, LAT)
        with pytest.raises(OrientationError):
            braiding(se, sm, (U2, U1, V))

    def test_choice_independence_of_transport_paths(self):
        se = make_sector(SectorLabel.E, V, LAT)
        sm = make_sector(SectorLabel.M, V, LAT)
        base = braiding_scalar(braiding(se, sm, AUX))
        for variant in (1, 2):
            assert braiding_scalar(braiding(se, sm, AUX, variant=variant)) == base

    def test_naturality_square(self):
        # tau_{s1, s2'} . (1 <> v) == (v <> 1) . tau_{s1, s2} for a
        # relocalization v: s2 -> s2' inside the same cone
        s1 = make_sector(SectorLabel.E, V, LAT)
        s2 = make_sector(SectorLabel.M, V, LAT)
        v, s2p = relocalized_variant(s2, 1)
        tau = braiding(s1, s2, AUX)
        tau_p = braiding(s1, s2p, AUX)
        lhs = tau_p.op * apply_endo(s1, v.op)
        rhs = v.op * tau.op
        mm = LAT.mask(LAT.margin_edges(2))
        diff = lhs * rhs.adjoint()
        assert (diff.x_mask & mm) == 0 and (diff.z_mask & mm) == 0

    def test_monodromy_multiplicativity(self):
        se = make_sector(SectorLabel.E, V, LAT)
        sm = make_sector(SectorLabel.M, V, LAT)
        eps = make_sector(SectorLabel.EPS, V, LAT)
        composite = mono_product(se, sm)
        for s3 in (se, sm, eps):
            assert monodromy(composite, s3, AUX) == \
                monodromy(se, s3, AUX) * monodromy(sm, s3, AUX)

    def test_dense_oracle_composite(self):
        lat, taux = tiny_dense_configuration()
        tv = taux[2]
        tse = make_sector(SectorLabel.E, tv, lat)
        tsm = make_sector(SectorLabel.M, tv, lat)
        tau = braiding(tse, tsm, taux)
        u, _ = transporter(tse, taux[0])
        ud, _ = transporter(tsm, taux[1])
        d = dense_matrix
        f1, f2, du, dud = d(tse.string), d(tsm.string), d(u.op), d(ud.op)
        tau_dense = (f2 @ du.conj().T @ f2.conj().T) @ dud.conj().T @ du \
            @ (f1 @ dud @ f1.conj().T)
        assert np.allclose(tau_dense, d(tau.op))
        assert np.allclose(tau_dense, tau.op.scalar() * np.eye(2 ** lat.n_edges))


class TestInterchange:
    def test_em_me_configuration(self):
        pairs = ((make_sector(SectorLabel.E, U1, LAT),
                  make_sector(SectorLabel.M, U1, LAT)),
                 (make_sector(SectorLabel.M, U2, LAT),
                  make_sector(SectorLabel.E, U2, LAT)))
        rep = interchange_check(pairs, AUX, LAT)
        assert rep.passed and rep.checked > 100

    def test_all_vacuum_trivial(self):
        vac1 = make_sector(SectorLabel.VACUUM, U1, LAT)
        vac2 = make_sector(SectorLabel.VACUUM, U2, LAT)
        rep = interchange_check(((vac1, vac1), (vac2, vac2)), AUX, LAT)
        assert rep.passed


class TestHolonomy:
    @pytest.mark.parametrize("label", list(SectorLabel))
    def test_trivial_for_all_labels(self, label):
        zz = default_zigzag()
        s = make_sector(label, zz[0], LAT)
        res = holonomy_T(s, zz, LAT)
        assert res.trivial
        assert res.final.string == s.string  # canonical path returns exactly
        assert res.witness.verify()
        assert res.mid_supports_ok
        assert holonomy_residue(res) == 1

    def test_zigzag_validation(self):
        zz = default_zigzag()
        s = make_sector(SectorLabel.E, zz[0], LAT)
        with pytest.raises(OrientationError):
            holonomy_T(s, (zz[0], zz[3], zz[2], zz[1]), LAT)  # wound the other way
        with pytest.raises(SectorError):
            holonomy_T(s, (zz[0], zz[1], zz[0], zz[3]), LAT)  # middle not antipodal

    def test_sector_must_sit_in_first_cone(self):
        zz = default_zigzag()
        s = make_sector(SectorLabel.E, zz[2], LAT)
        with pytest.raises(SectorError):
            holonomy_T(s, zz, LAT)


class TestBoundaryRings:
    def test_closed_ring_routes(self):
        from conesectors.sectors import _arc_routes, _ring_nodes

        nodes, closed = _ring_nodes((0, 0), (2, 2))
        assert closed and len(nodes) == 8
        routes = _arc_routes(nodes, True, (0, 0), (2, 2))
        assert len(routes) == 2
        for route in routes:
            assert route[0] == (0, 0) and route[-1] == (2, 2)
            for a, b in zip(route, route[1:]):
                assert abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1

    def test_open_segment_routes(self):
        from conesectors.sectors import _arc_routes, _ring_nodes

        nodes, closed = _ring_nodes((0, 0), (3, 0))
        assert not closed
        assert _arc_routes(nodes, False, (1, 0), (3, 0)) == [[(1, 0), (2, 0), (3, 0)]]
        assert _arc_routes(nodes, False, (2, 0), (0, 0)) == [[(2, 0), (1, 0), (0, 0)]]
        assert _arc_routes(nodes, False, (2, 0), (2, 0)) == [[(2, 0)]]


class TestAssumptionChecks:
    def test_em_pair(self):
        rep = assumption_checks(U1, U2, LAT)
        assert rep.passed and rep.checked > 1000

    def test_vacuum_pair(self):
        rep = assumption_checks(U1, U2, LAT,
                                labels=(SectorLabel.VACUUM, SectorLabel.VACUUM))
        assert rep.passed

    def test_rejects_overlapping(self):
        with pytest.raises(SectorError):
            assumption_checks(cone((0, 0), (1, 0), 0), cone((0, 0), (2, 1),
                                                            Fraction(1, 2)), LAT)
