"""Toric-code superselection sectors strictly localized in cones.

A sector is represented by a half-infinite string operator truncated at the
window boundary: Z-type along a direct-lattice path for a vertex charge (e),
X-type along a dual-lattice path for a plaquette flux (m), both for the
composite fermion (eps).  The induced endomorphism acts by conjugation, so
every structural statement (localization, charge transport, the fusion
products, braiding, the interchange law and the zig-zag holonomy) becomes an
exact identity of Pauli strings checked on interior-margin generators.

Charge transporters close the two truncated strings with an arc along the
window boundary ring, the finite-window shadow of the connector at infinity;
the arc is routed the short way around (or through an explicitly given cone),
matching the requirement that a transporter lives in a region containing both
localization cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .geometry import ConeSpec, contains_point, cone
from .pauli import (
    EdgeLattice,
    PauliString,
    identity_string,
    single_x,
    single_z,
    x_string,
    z_string,
    disjoint_for_edges,
)
from .witnesses import Tri, cone_subset

DEFAULT_MARGIN = 2


class SectorError(ValueError):
    pass


class ConeMissesWindow(SectorError):
    pass


class OrientationError(SectorError):
    pass


class SectorLabel(Enum):
    """Anyon types of the Z2 double model; fusion is bitwise XOR."""

    VACUUM = (0, 0)
    E = (1, 0)
    M = (0, 1)
    EPS = (1, 1)

    def fuse(self, other: "SectorLabel") -> "SectorLabel":
        return SectorLabel((self.value[0] ^ other.value[0],
                            self.value[1] ^ other.value[1]))

    @staticmethod
    def parse(name: str) -> "SectorLabel":
        key = name.strip().lower()
        table = {"vacuum": SectorLabel.VACUUM, "1": SectorLabel.VACUUM,
                 "e": SectorLabel.E, "m": SectorLabel.M, "eps": SectorLabel.EPS,
                 "epsilon": SectorLabel.EPS}
        if key not in table:
            raise SectorError(f"unknown sector label {name!r}")
        return table[key]


@dataclass(frozen=True)
class StringPath:
    """A self-avoiding staircase escaping through the window boundary.

    kind 'e': nodes are direct-lattice vertices and the operator acts on the
    traversed edges; kind 'm': nodes are plaquettes (dual vertices) and the
    operator acts on the crossed direct edges.  `edges` are the core edges up
    to the boundary ring; `ext_edge` is the final escape crossing through the
    outermost layer (dual paths only), part of the sector string but not of
    the ring-truncated transporter copies.
    """

    kind: str
    base: tuple[int, int]
    nodes: tuple[tuple[int, int], ...]
    edges: tuple[int, ...]
    ext_edge: int | None = None

    @property
    def exit(self) -> tuple[int, int]:
        return self.nodes[-1]

    @property
    def support_edges(self) -> tuple[int, ...]:
        if self.ext_edge is None:
            return self.edges
        return self.edges + (self.ext_edge,)


@dataclass(frozen=True)
class Sector:
    label: SectorLabel
    cone: ConeSpec
    lattice: EdgeLattice
    string: PauliString
    paths: tuple[StringPath, ...]

    def endo(self, a: PauliString) -> PauliString:
        return self.string * a * self.string.adjoint()


@dataclass(frozen=True)
class Intertwiner:
    """A unitary Pauli u with u rho_src(a) = rho_dst(a) u on margin operators."""

    op: PauliString
    src: Sector
    dst: Sector

    def verify(self, margin: int = DEFAULT_MARGIN) -> bool:
        lat = self.op.lattice
        k = self.dst.string.adjoint() * self.op * self.src.string
        mm = lat.mask(lat.margin_edges(margin))
        return (k.x_mask & mm) == 0 and (k.z_mask & mm) == 0


# ---------------------------------------------------------------------------
# Canonical staircase paths.
# ---------------------------------------------------------------------------

def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def _walk(cone2: ConeSpec, start: tuple[int, int], axis: tuple[int, int],
          lo: tuple[int, int], hi: tuple[int, int], edge_of_step, variant: int):
    """Greedy staircase from `start` along `axis` until it exits [lo, hi];
    every traversed edge must lie inside the doubled cone.

    Returns the node sequence or None (invalid start).  The first `variant`
    forks take the secondary direction, producing alternate path choices.
    """
    tx, ty = axis
    sx, sy = _sgn(tx), _sgn(ty)
    x, y = start

    def on_ring(px, py):
        return px in (lo[0], hi[0]) or py in (lo[1], hi[1])

    nx = ny = 0
    nodes = [start]
    detours = variant
    for _ in range(4 * (hi[0] - lo[0] + hi[1] - lo[1] + 2) + 4 * variant + 4):
        ranked = []
        if sx and lo[0] <= x + sx <= hi[0]:
            ranked.append((abs((nx + 1) * abs(ty) - ny * abs(tx)), 0, (sx, 0)))
        if sy and lo[1] <= y + sy <= hi[1]:
            ranked.append((abs(nx * abs(ty) - (ny + 1) * abs(tx)), 1, (0, sy)))
        if not ranked:
            return tuple(nodes) if len(nodes) >= 2 else None
        ranked.sort()
        if detours > 0:
            # bump sideways when possible: a perpendicular step inside the cone
            perp = (0, 1) if tx and not ty else ((1, 0) if ty and not tx else None)
            if perp is not None:
                for pstep in (perp, (-perp[0], -perp[1])):
                    nxt = (x + pstep[0], y + pstep[1])
                    if not (lo[0] <= nxt[0] <= hi[0] and lo[1] <= nxt[1] <= hi[1]):
                        continue
                    edge, mid2 = edge_of_step((x, y), pstep)
                    if edge is None or not contains_point(cone2, mid2):
                        continue
                    ranked.insert(0, (-1, -1, pstep))
                    break
            elif len(ranked) == 2:
                ranked = ranked[::-1]
            detours -= 1
        moved = False
        for _err, _pref, step in ranked:
            edge, mid2 = edge_of_step((x, y), step)
            if edge is None or not contains_point(cone2, mid2):
                continue
            x, y = x + step[0], y + step[1]
            if step[0]:
                nx += abs(step[0])
            else:
                ny += abs(step[1])
            if (x, y) in nodes:
                return None
            nodes.append((x, y))
            moved = True
            break
        if not moved:
            return None
        if on_ring(x, y):
            return tuple(nodes)  # the path has escaped through the boundary
    return None  # pragma: no cover - loop bound generous


def _direct_edge_of_step(lat: EdgeLattice):
    idx = lat.edge_index

    def edge_of_step(node, step):
        x, y = node
        if step == (1, 0):
            e = ("h", x, y)
        elif step == (-1, 0):
            e = ("h", x - 1, y)
        elif step == (0, 1):
            e = ("v", x, y)
        else:
            e = ("v", x, y - 1)
        if e not in idx:
            return None, None
        kind, ex, ey = e
        mid2 = (2 * ex + 1, 2 * ey) if kind == "h" else (2 * ex, 2 * ey + 1)
        return idx[e], mid2

    return edge_of_step


def _dual_edge_of_step(lat: EdgeLattice):
    idx = lat.edge_index

    def edge_of_step(node, step):
        x, y = node
        if step == (1, 0):
            e = ("v", x + 1, y)
        elif step == (-1, 0):
            e = ("v", x, y)
        elif step == (0, 1):
            e = ("h", x, y + 1)
        else:
            e = ("h", x, y)
        if e not in idx:
            return None, None
        kind, ex, ey = e
        mid2 = (2 * ex + 1, 2 * ey) if kind == "h" else (2 * ex, 2 * ey + 1)
        return idx[e], mid2

    return edge_of_step


def _edges_along(nodes, edge_of_step):
    edges = []
    for a, b in zip(nodes, nodes[1:]):
        step = (b[0] - a[0], b[1] - a[1])
        e, _ = edge_of_step(a, step)
        edges.append(e)
    return edges


def _build_kind(lat: EdgeLattice, region: ConeSpec, kind: str, start, variant):
    cone2 = region.scaled(2)
    if kind == "e":
        lo, hi = lat.window.lo, lat.window.hi
        eos = _direct_edge_of_step(lat)
    else:
        lo = lat.window.lo
        hi = (lat.window.hi[0] - 1, lat.window.hi[1] - 1)
        if hi[0] < lo[0] or hi[1] < lo[1]:
            return None
        eos = _dual_edge_of_step(lat)
    nodes = _walk(cone2, start, region.axis, lo, hi, eos, variant)
    if nodes is None or len(nodes) < 2:
        return None
    edges = _edges_along(nodes, eos)
    if len(set(edges)) != len(edges):
        return None
    ext = None
    if kind == "m":
        # escape crossing through the outermost edge layer, so that the flux
        # string pierces the ring where charge-transporter arcs run; prefer
        # the escape direction whose crossed midpoint stays inside the cone
        fx, fy = nodes[-1]
        tx, ty = region.axis
        steps = [(_sgn(tx), 0), (0, _sgn(ty))]
        if abs(ty) > abs(tx):
            steps.reverse()
        candidates = []
        for step in steps:
            if step == (0, 0):
                continue
            nxt = (fx + step[0], fy + step[1])
            if lo[0] <= nxt[0] <= hi[0] and lo[1] <= nxt[1] <= hi[1]:
                continue  # not an escape direction
            e, mid2 = eos((fx, fy), step)
            if e is not None and e not in edges:
                candidates.append((0 if contains_point(cone2, mid2) else 1, e))
        if candidates:
            candidates.sort()
            ext = candidates[0][1]
    return StringPath(kind, start, nodes, tuple(edges), ext)


def _chebyshev_to_apex(apex, pt) -> Fraction:
    return max(abs(Fraction(c) - a) for c, a in zip(pt, apex))


def _start_candidates(lat: EdgeLattice, region: ConeSpec, kind: str):
    if kind == "e":
        pts = [v for v in lat.vertices() if contains_point(region, v)]
        pts.sort(key=lambda v: (_chebyshev_to_apex(region.apex, v), v))
        return pts
    cone2 = region.scaled(2)
    pts = [p for p in lat.plaquettes()
           if contains_point(cone2, (2 * p[0] + 1, 2 * p[1] + 1))]
    pts.sort(key=lambda p: (_chebyshev_to_apex(region.apex,
                                               (Fraction(2 * p[0] + 1, 2),
                                                Fraction(2 * p[1] + 1, 2))), p))
    return pts


def _build_path(lat: EdgeLattice, region: ConeSpec, kind: str,
                variant: int) -> StringPath:
    cands = _start_candidates(lat, region, kind)
    for start in cands[:4000]:
        path = _build_kind(lat, region, kind, start, variant)
        if path is not None:
            return path
    raise ConeMissesWindow(
        f"no {kind}-type escape path for the cone inside window "
        f"{lat.window.lo}-{lat.window.hi}"
    )


def make_sector(label: SectorLabel, region: ConeSpec, lat: EdgeLattice,
                variant: int = 0) -> Sector:
    """The canonical sector of the given type, strictly localized in `region`:
    staircase string(s) from the canonical basepoint out along the cone axis."""
    if region.dim != 2:
        raise SectorError("sectors live on the two-dimensional lattice")
    if label is SectorLabel.VACUUM:
        return Sector(label, region, lat, identity_string(lat), ())
    paths = []
    op = identity_string(lat)
    if label.value[0]:
        p = _build_path(lat, region, "e", variant)
        paths.append(p)
        op = op * z_string(lat, p.support_edges)
    if label.value[1]:
        p = _build_path(lat, region, "m", variant)
        paths.append(p)
        op = op * x_string(lat, p.support_edges)
    return Sector(label, region, lat, op, tuple(paths))


# ---------------------------------------------------------------------------
# Endomorphism action and localization checks.
# ---------------------------------------------------------------------------

def apply_endo(s: Sector, a: PauliString) -> PauliString:
    """rho(a) = F a F* for the sector's truncated string F."""
    return s.endo(a)


def endos_equal_on_margin(f1: PauliString, f2: PauliString,
                          lat: EdgeLattice, margin: int = DEFAULT_MARGIN) -> bool:
    """Whether Ad(f1) and Ad(f2) agree on every margin generator: f1 f2*
    must commute with each single-edge X and Z inside the margin."""
    k = f1 * f2.adjoint()
    mm = lat.mask(lat.margin_edges(margin))
    return (k.x_mask & mm) == 0 and (k.z_mask & mm) == 0


def sectors_equal_on_margin(s: Sector, t: Sector, margin: int = DEFAULT_MARGIN) -> bool:
    return endos_equal_on_margin(s.string, t.string, s.lattice, margin)


def strict_localization_violations(s: Sector, margin: int = DEFAULT_MARGIN) -> list[int]:
    """Margin edges outside the localization cone on which the endomorphism
    moves a generator (expected: none)."""
    lat = s.lattice
    inside = set(lat.edges_in_cone(s.cone))
    out = []
    for i in lat.margin_edges(margin):
        if i in inside:
            continue
        if (s.string.x_mask >> i) & 1 or (s.string.z_mask >> i) & 1:
            out.append(i)
    return out


# ---------------------------------------------------------------------------
# Boundary rings and connecting arcs.
# ---------------------------------------------------------------------------

def _ring_nodes(lo, hi):
    """Boundary nodes of the integer box [lo, hi], counterclockwise; an open
    segment when the box is degenerate (single row or column)."""
    (x0, y0), (x1, y1) = lo, hi
    if x0 == x1 and y0 == y1:
        return [(x0, y0)], False
    if x0 == x1:
        return [(x0, y) for y in range(y0, y1 + 1)], False
    if y0 == y1:
        return [(x, y0) for x in range(x0, x1 + 1)], False
    nodes = [(x, y0) for x in range(x0, x1 + 1)]
    nodes += [(x1, y) for y in range(y0 + 1, y1 + 1)]
    nodes += [(x, y1) for x in range(x1 - 1, x0 - 1, -1)]
    nodes += [(x0, y) for y in range(y1 - 1, y0, -1)]
    return nodes, True


def _arc_routes(nodes, closed, a, b):
    """Candidate node routes a -> b along the ring (ccw and cw)."""
    ia, ib = nodes.index(a), nodes.index(b)
    n = len(nodes)
    if ia == ib:
        return [[a]]
    if not closed:
        step = 1 if ib > ia else -1
        return [nodes[ia:ib + step:step] if step > 0 else nodes[ia:ib - 1 if ib else None:step]]
    fwd = [nodes[(ia + k) % n] for k in range(((ib - ia) % n) + 1)]
    bwd = [nodes[(ia - k) % n] for k in range(((ia - ib) % n) + 1)]
    return [fwd, bwd]


def _arc_edges(lat: EdgeLattice, kind: str, route):
    eos = _direct_edge_of_step(lat) if kind == "e" else _dual_edge_of_step(lat)
    edges = _edges_along(route, eos)
    if any(e is None for e in edges):
        return None
    return edges


def _connecting_arc(lat: EdgeLattice, kind: str, a, b,
                    via: ConeSpec | None) -> list[int]:
    """Edges of a boundary arc from exit a to exit b.

    Routed inside `via` when one route's support fits there, else the short
    way (ties counterclockwise).  Degenerate windows have a unique route.
    """
    if kind == "e":
        nodes, closed = _ring_nodes(lat.window.lo, lat.window.hi)
    else:
        nodes, closed = _ring_nodes(lat.window.lo,
                                    (lat.window.hi[0] - 1, lat.window.hi[1] - 1))
    routes = _arc_routes(nodes, closed, a, b)
    scored = []
    for route in routes:
        edges = _arc_edges(lat, kind, route)
        if edges is None:
            continue
        inside = True
        if via is not None:
            via2 = via.scaled(2)
            for e in edges:
                ekind, ex, ey = lat.edges[e]
                mid2 = (2 * ex + 1, 2 * ey) if ekind == "h" else (2 * ex, 2 * ey + 1)
                if not contains_point(via2, mid2):
                    inside = False
                    break
        scored.append((0 if (via is not None and inside) else 1, len(edges), edges))
    if not scored:
        raise SectorError("no boundary route between string exits")
    scored.sort(key=lambda t: (t[0], t[1]))
    return scored[0][2]


# ---------------------------------------------------------------------------
# Charge transport.
# ---------------------------------------------------------------------------

def _core_string(lat: EdgeLattice, paths) -> PauliString:
    """Product of the ring-truncated component strings (escape edges dropped)."""
    op = identity_string(lat)
    for p in paths:
        op = op * (z_string(lat, p.edges) if p.kind == "e" else x_string(lat, p.edges))
    return op


def transporter(s: Sector, target: ConeSpec, lat: EdgeLattice | None = None,
                variant: int = 0, via: ConeSpec | None = None
                ) -> tuple[Intertwiner, Sector]:
    """Relocalize s into `target`: returns (u, t) with t the canonical sector
    there and u the string along old path + boundary arc + new path.

    u is assembled from the ring-truncated copies of the two strings closed
    by an arc along the boundary ring: the finite-window shadow of the
    standard transporter, whose crossings with strings piercing the ring
    carry the braiding data.  u intertwines on all margin operators.
    """
    lat = lat or s.lattice
    if lat.window != s.lattice.window:
        raise SectorError("transporter window mismatch")
    t = make_sector(s.label, target, lat, variant)
    u = _core_string(lat, t.paths) * _core_string(lat, s.paths).adjoint()
    by_kind_old = {p.kind: p for p in s.paths}
    by_kind_new = {p.kind: p for p in t.paths}
    for kind in sorted(by_kind_old):
        arc = _connecting_arc(lat, kind, by_kind_old[kind].exit,
                              by_kind_new[kind].exit, via)
        if kind == "e":
            u = z_string(lat, arc) * u
        else:
            u = x_string(lat, arc) * u
    return Intertwiner(u, s, t), t


def relocalized_variant(s: Sector, variant: int) -> tuple[Intertwiner, Sector]:
    """A same-cone relocalization along an alternate canonical path."""
    return transporter(s, s.cone, s.lattice, variant)


# ---------------------------------------------------------------------------
# Factorization and monoidal products.
# ---------------------------------------------------------------------------

def _edge_certified_subset(inner: ConeSpec, outer: ConeSpec, lat: EdgeLattice) -> bool:
    cert = cone_subset(inner.scaled(2), outer.scaled(2), lat.window.scaled(2))
    return cert.status is Tri.TRUE


def fact_product(sectors: tuple[Sector, ...], target: ConeSpec,
                 lat: EdgeLattice | None = None) -> Sector:
    """Fuse sectors localized in pairwise-disjoint subcones of `target` into
    one sector there: conjugation by the product of the component strings.

    On a generator supported in the i-th cone every other component string
    commutes past it, so the composite acts exactly as the i-th sector;
    outside all the cones it acts trivially.
    """
    sectors = tuple(sectors)
    if lat is None:
        if not sectors:
            raise SectorError("0-ary product needs an explicit lattice")
        lat = sectors[0].lattice
    if not sectors:
        return make_sector(SectorLabel.VACUUM, target, lat)
    for i, s in enumerate(sectors):
        if s.lattice.window != lat.window:
            raise SectorError(f"component {i} lives on a different window")
        if not _edge_certified_subset(s.cone, target, lat):
            raise SectorError(f"component {i} cone not certified inside the target")
    for i in range(len(sectors)):
        for j in range(i + 1, len(sectors)):
            d = disjoint_for_edges(sectors[i].cone, sectors[j].cone, lat.window)
            if d.status is not Tri.TRUE:
                raise SectorError(
                    f"component cones {i},{j} not certified disjoint ({d.status.value})"
                )
    op = identity_string(lat)
    label = SectorLabel.VACUUM
    paths: tuple[StringPath, ...] = ()
    for s in sectors:
        op = op * s.string
        label = label.fuse(s.label)
        paths = paths + s.paths
    return Sector(label, target, lat, op, paths)


def mono_product(s: Sector, t: Sector) -> Sector:
    """Composition of the localized endomorphisms of two sectors in the same
    cone; the monoidal product, with label fusion."""
    if s.cone != t.cone:
        raise SectorError("monoidal product requires a common localization cone")
    if s.lattice.window != t.lattice.window:
        raise SectorError("window mismatch")
    return Sector(s.label.fuse(t.label), s.cone, s.lattice,
                  s.string * t.string, s.paths + t.paths)


def vacuum_intertwiner(s: Sector, margin: int = DEFAULT_MARGIN) -> Intertwiner:
    """For a sector whose endomorphism agrees with the vacuum on the margin
    (e.g. e<>e fusion), the explicit finite unitary down to the vacuum."""
    vac = make_sector(SectorLabel.VACUUM, s.cone, s.lattice)
    w = Intertwiner(s.string.adjoint(), s, vac)
    if not w.verify(margin):
        raise SectorError("sector is not margin-equivalent to the vacuum")
    return w


# ---------------------------------------------------------------------------
# Braiding.
# ---------------------------------------------------------------------------

def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def validate_braiding_cones(u1: ConeSpec, u2: ConeSpec, v: ConeSpec,
                            lat: EdgeLattice):
    """(U1, U2) -> V must be a valid binary operation with U1 counterclockwise
    of U2 as seen from V's apex."""
    for i, u in enumerate((u1, u2)):
        if not _edge_certified_subset(u, v, lat):
            raise SectorError(f"auxiliary cone {i + 1} not certified inside V")
    d = disjoint_for_edges(u1, u2, lat.window)
    if d.status is not Tri.TRUE:
        raise SectorError(f"auxiliary cones not certified disjoint ({d.status.value})")
    if _cross(u2.axis, u1.axis) <= 0:
        raise OrientationError("U1 must be counterclockwise of U2 seen from V")


def braiding(s1: Sector, s2: Sector, aux: tuple[ConeSpec, ConeSpec, ConeSpec],
             variant: int = 0) -> Intertwiner:
    """The braiding isomorphism s1<>s2 -> s2<>s1 assembled from charge
    transporters u: s1 -> U1 and u': s2 -> U2 as

        tau = rho2(u*) . u'* . u . rho1(u')

    For this Abelian model tau is a +/-1 multiple of the identity and the
    intertwiner contract holds by construction.
    """
    u1c, u2c, vc = aux
    if s1.cone != vc or s2.cone != vc:
        raise SectorError("both sectors must be strictly localized in V")
    validate_braiding_cones(u1c, u2c, vc, s1.lattice)
    u, _ = transporter(s1, u1c, variant=variant)
    udot, _ = transporter(s2, u2c, variant=variant)
    tau = (
        apply_endo(s2, u.op.adjoint())
        * udot.op.adjoint()
        * u.op
        * apply_endo(s1, udot.op)
    )
    return Intertwiner(tau, mono_product(s1, s2), mono_product(s2, s1))


def braiding_scalar(tau: Intertwiner) -> complex:
    if not tau.op.is_scalar():
        raise SectorError("braiding is not scalar; not an Abelian configuration")
    return tau.op.scalar()


def monodromy(s1: Sector, s2: Sector, aux, variant: int = 0) -> complex:
    """The double braiding tau_{s2,s1} . tau_{s1,s2}: the orientation-free
    statistics scalar."""
    t12 = braiding(s1, s2, aux, variant)
    t21 = braiding(s2, s1, aux, variant)
    comp = t21.op * t12.op
    if not comp.is_scalar():
        raise SectorError("monodromy is not scalar")
    return comp.scalar()


# ---------------------------------------------------------------------------
# Interchange of the two products.
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    checked: int
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked,
                "violations": self.violations, "pass": self.passed}


def interchange_check(pairs, aux, lat: EdgeLattice,
                      margin: int = DEFAULT_MARGIN) -> CheckReport:
    """Object- and morphism-level interchange of the in-cone composition
    product against the disjoint-region product, on every margin generator.

    pairs = ((s1, s1d), (s2, s2d)) with the first pair localized in U1 and
    the second in U2; aux = (U1, U2, V).
    """
    (s1, s1d), (s2, s2d) = pairs
    u1c, u2c, vc = aux
    report = CheckReport("interchange", 0, [])
    lhs = fact_product((mono_product(s1, s1d), mono_product(s2, s2d)), vc, lat)
    rhs = mono_product(fact_product((s1, s2), vc, lat),
                       fact_product((s1d, s2d), vc, lat))

    for i in lat.margin_edges(margin):
        for g in (single_x(lat, i), single_z(lat, i)):
            report.checked += 1
            if lhs.endo(g) != rhs.endo(g):
                report.violations.append({"edge": i, "gen": g.render()})

    # morphism level: intertwiners along alternate localization paths
    l1, _ = relocalized_variant(s1, 1)
    l1d, _ = relocalized_variant(s1d, 1)
    l2, _ = relocalized_variant(s2, 1)
    l2d, _ = relocalized_variant(s2d, 1)
    lhs_m = (l1.op * apply_endo(s1, l1d.op)) * (l2.op * apply_endo(s2, l2d.op))
    fact_first = fact_product((s1, s2), vc, lat)
    rhs_m = (l1.op * l2.op) * (fact_first.string * (l1d.op * l2d.op)
                               * fact_first.string.adjoint())
    report.checked += 1
    if lhs_m != rhs_m:
        report.violations.append({"level": "morphism",
                                  "lhs": lhs_m.mask_hex(), "rhs": rhs_m.mask_hex()})
    return report


# ---------------------------------------------------------------------------
# Zig-zag holonomy.
# ---------------------------------------------------------------------------

def default_zigzag() -> tuple[ConeSpec, ConeSpec, ConeSpec, ConeSpec]:
    """Quadrant-style zig-zag around the origin, wound once clockwise:
    left wedge -> upper wide cone <- right wedge -> lower wide cone <- left."""
    half = Fraction(1, 2)
    wide = Fraction(-9, 10)
    return (
        cone((0, 0), (-1, 0), half),
        cone((0, 0), (0, 1), wide),
        cone((0, 0), (1, 0), half),
        cone((0, 0), (0, -1), wide),
    )


@dataclass
class HolonomyResult:
    sector: Sector
    final: Sector
    witness: Intertwiner
    mid_supports_ok: bool

    @property
    def trivial(self) -> bool:
        return sectors_equal_on_margin(self.sector, self.final)


def holonomy_T(s: Sector, zigzag, lat: EdgeLattice,
               margin: int = DEFAULT_MARGIN) -> HolonomyResult:
    """Transport s once around the apex along V1 -> V2 <- V3 -> V4 <- V1.

    Containments are certified exactly (common apex); the winding is
    validated as four clockwise turns with antipodal middle axes.  The two
    quasi-inverse steps rotate the canonical path by half a turn each, the
    first through V2, the second through V4.  Returns the final sector and
    the composite intertwiner; for the toric code the final sector equals
    the input on the margin.
    """
    v1, v2, v3, v4 = zigzag
    if not all(v.apex == v1.apex for v in (v2, v3, v4)):
        raise SectorError("zig-zag cones must share a common apex")
    from .witnesses import _subset_exact, _is_antipodal

    for inner, outer, leg in ((v1, v2, "V1<=V2"), (v3, v2, "V3<=V2"),
                              (v3, v4, "V3<=V4"), (v1, v4, "V1<=V4")):
        if not _subset_exact(inner, outer):
            raise SectorError(f"zig-zag containment {leg} not certified")
    axes = [v1.axis, v2.axis, v3.axis, v4.axis, v1.axis]
    if not all(_cross(axes[i], axes[i + 1]) < 0 for i in range(4)):
        raise OrientationError("zig-zag must wind clockwise")
    if not _is_antipodal(v1.axis, v3.axis):
        raise OrientationError("middle cone axis must be antipodal to the start")
    if s.cone != v1:
        raise SectorError("sector must be strictly localized in the first cone")

    u1, mid = transporter(s, v3, via=v2)
    u2, final = transporter(mid, v1, via=v4)
    v2_mask = lat.mask(lat.edges_in_cone(v2))
    v4_mask = lat.mask(lat.edges_in_cone(v4))
    ok = (u1.op.support_mask & ~v2_mask) == 0 and (u2.op.support_mask & ~v4_mask) == 0
    w = Intertwiner(u2.op * u1.op, s, final)
    return HolonomyResult(s, final, w, ok)


def holonomy_residue(result: HolonomyResult) -> complex:
    """Scalar left of the holonomy witness after dividing out the closed
    stabilizer loops it contains: the witness acts as this scalar on every
    stabilized state.  Raises if the witness is not a stabilizer product.

    The X part is reduced over the star generators and the Z part over the
    plaquettes by echelon elimination over GF(2), with the Pauli phases
    carried along exactly.
    """
    w = result.witness.op
    lat = w.lattice
    from .pauli import stabilizers

    stars, plaqs = stabilizers(lat)
    residual = w
    for attr, gens in (("x_mask", stars), ("z_mask", plaqs)):
        basis: dict[int, tuple[int, PauliString]] = {}
        for g in gens:
            v, prod = getattr(g, attr), g
            while v:
                h = v.bit_length() - 1
                if h not in basis:
                    basis[h] = (v, prod)
                    break
                bv, bp = basis[h]
                v ^= bv
                prod = prod * bp
        while getattr(residual, attr):
            h = getattr(residual, attr).bit_length() - 1
            if h not in basis:
                raise SectorError("holonomy witness is not a stabilizer product")
            residual = residual * basis[h][1]
    if not residual.is_scalar():
        raise SectorError("holonomy witness is not a stabilizer product")
    return residual.scalar()


# ---------------------------------------------------------------------------
# Finite-window identities for disjoint localization cones.
# ---------------------------------------------------------------------------

def assumption_checks(u1c: ConeSpec, u2c: ConeSpec, lat: EdgeLattice,
                      margin: int = DEFAULT_MARGIN,
                      labels=(SectorLabel.E, SectorLabel.M)) -> CheckReport:
    """The three compatibility identities for sectors in disjoint cones:
    (1) the two representations' generator images commute; (2) morphisms
    localized in the two cones commute with each other and with the other
    representation; (3) a transporter of the second sector into a cone
    disjoint from the first commutes with the first representation.
    """
    report = CheckReport("assumption-checks", 0, [])
    d = disjoint_for_edges(u1c, u2c, lat.window)
    if d.status is not Tri.TRUE:
        raise SectorError(f"cones not certified disjoint ({d.status.value})")
    s1 = make_sector(labels[0], u1c, lat)
    s2 = make_sector(labels[1], u2c, lat)

    mm = set(lat.margin_edges(margin))
    gens1 = [g for i in lat.edges_in_cone(u1c) if i in mm
             for g in (single_x(lat, i), single_z(lat, i))]
    gens2 = [g for i in lat.edges_in_cone(u2c) if i in mm
             for g in (single_x(lat, i), single_z(lat, i))]

    # (1) commuting images
    img1 = [apply_endo(s1, g) for g in gens1]
    img2 = [apply_endo(s2, g) for g in gens2]
    from . import kernels

    bad = kernels.commutation_violations(
        [g.x_mask for g in img1], [g.z_mask for g in img1],
        [g.x_mask for g in img2], [g.z_mask for g in img2],
    )
    report.checked += len(img1) * len(img2)
    for i, j in bad:
        report.violations.append({"item": 1, "g1": gens1[i].render(),
                                  "g2": gens2[j].render()})

    # (2) morphisms localized in the two cones
    l1, _ = relocalized_variant(s1, 1)
    l2, _ = relocalized_variant(s2, 1)
    report.checked += 1
    if l1.op * l2.op != l2.op * l1.op:
        report.violations.append({"item": 2, "detail": "L1 L2 != L2 L1"})
    for g in img1:
        report.checked += 1
        if not l2.op.commutes_with(g):
            report.violations.append({"item": 2, "detail": "L2 vs rep1",
                                      "gen": g.render()})
    for g in img2:
        report.checked += 1
        if not l1.op.commutes_with(g):
            report.violations.append({"item": 2, "detail": "L1 vs rep2",
                                      "gen": g.render()})

    # (3) transporter into a cone disjoint from U1 (here: a subcone of U2)
    from .witnesses import shrink_witness

    sub = None
    for cand in (Fraction(9, 10), Fraction(4, 5), Fraction(3, 4)):
        try:
            sub = shrink_witness(u2c, u2c.apex, u2c.axis, cand)
            break
        except Exception:
            continue
    if sub is not None:
        try:
            u2t, _ = transporter(s2, sub)
        except ConeMissesWindow:
            u2t = None
        if u2t is not None:
            for g in img1:
                report.checked += 1
                if not u2t.op.commutes_with(g):
                    report.violations.append({"item": 3, "gen": g.render()})
    return report
