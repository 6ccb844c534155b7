"""Constructive witnesses for the geometric closure properties of cone regions.

complement / shrink / enlargement / separation witnesses, eventual containment
of half-lines, an exact (sound, partially complete) disjointness decision, and
a sufficient containment test.  Everything is decided with the exact radical
sign arithmetic from geometry; window scans are only used to *refute* or to
window-certify, never to establish an R^n fact.

Decidability scope: dimension 2 and common-apex cones in any dimension are
fully decided; general-apex higher-dimensional questions may return Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, gcd, isqrt

from .geometry import (
    ConeSpec,
    DimensionMismatch,
    GeometryError,
    LatticeWindow,
    Vec,
    angle_lt,
    angle_plus_cmp,
    angle_minus_two_arccos_cmp,
    as_fraction,
    closure_contains,
    contains_point,
    cos_angle_cmp,
    cos_lower_bound,
    dot,
    first_common_point,
    first_in_a_not_in_b,
    lattice_points,
    qvec,
    sqrt_upper_bound,
)


class PreconditionError(GeometryError):
    """A witness precondition failed; the message names the inequality."""


class Tri(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Disjointness:
    status: Tri
    witness: Vec | None = None
    method: str = ""

    def __bool__(self):
        raise TypeError("three-valued result; compare .status explicitly")


@dataclass(frozen=True)
class Certificate:
    """Outcome of a containment query, with the route that decided it."""

    status: Tri
    method: str = ""
    witness: Vec | None = None


# A fixed grid of cosines approaching 1; used when a construction merely needs
# "some sufficiently small angle".  Deterministic by construction.
_COS_GRID = tuple(1 - Fraction(1, 2**k) for k in range(1, 13))


def _cos_grid(k_max: int = 256):
    """Cosines 1 - 2^-k approaching 1, for searches that must succeed for
    every strictly positive angular gap of bounded-height inputs."""
    for k in range(1, k_max + 1):
        yield 1 - Fraction(1, 2**k)


def _check_same_dim(a: ConeSpec, b: ConeSpec):
    if a.dim != b.dim:
        raise DimensionMismatch("cones of different dimension")


# ---------------------------------------------------------------------------
# Complement.
# ---------------------------------------------------------------------------

def complement_witness(u: ConeSpec) -> ConeSpec:
    """A cone whose lattice points all avoid u: same apex, reversed axis,
    supplementary half-angle.  The reversed open cone lies in the closed
    complement of u in R^n."""
    return ConeSpec(u.apex, tuple(-a for a in u.axis), -u.cos_half_angle)


# ---------------------------------------------------------------------------
# Eventual containment of half-lines.
# ---------------------------------------------------------------------------

def eventual_containment(target: ConeSpec, q, u: Vec) -> Fraction:
    """A rational lam* with q + lam*u inside target for every lam >= lam*.

    Requires angle(axis, u) < half-angle.  The bound is
    ||q - p|| (1 + |c|) / (cos(angle) - c) with the cosine replaced by a
    rational lower bound, plus 1; soundness is re-certified by exact
    membership probes at lam*, lam*+1, 2 lam* and 10 lam*.
    """
    q = qvec(q)
    u = tuple(int(x) for x in u)
    if len(q) != target.dim or len(u) != target.dim:
        raise DimensionMismatch("dimension mismatch")
    if not any(u):
        raise PreconditionError("direction u must be nonzero")
    t, c = target.axis, target.cos_half_angle
    if cos_angle_cmp(t, u, c) <= 0:
        raise PreconditionError("angle(axis, u) >= half-angle: direction not interior")
    diff = tuple(a - b for a, b in zip(q, target.apex))
    d_up = sqrt_upper_bound(dot(diff, diff))
    bits = 8
    while True:
        lb = cos_lower_bound(t, u, bits)
        if lb > c:
            break
        bits *= 2
        if bits > 4096:  # pragma: no cover - cannot happen for lb -> cos
            raise GeometryError("failed to separate cos(angle) from c")
    lam = d_up * (1 + abs(c)) / (lb - c) + 1
    for probe in (lam, lam + 1, 2 * lam, 10 * lam):
        point = tuple(a + probe * b for a, b in zip(q, u))
        assert contains_point(target, point), "eventual containment bound unsound"
    return lam


def minimal_integer_lambda(target: ConeSpec, q, u: Vec, cap: int | None = None) -> int:
    """Smallest integer lam >= 0 with q + lam*u inside target."""
    q = qvec(q)
    if cap is None:
        cap = int(ceil(eventual_containment(target, q, u))) + 1
    for lam in range(cap + 1):
        if contains_point(target, tuple(a + lam * b for a, b in zip(q, u))):
            return lam
    raise GeometryError(f"no integer lambda <= {cap} gives membership")


# ---------------------------------------------------------------------------
# Shrinking: subcones with a chosen apex, axis and angle.
# ---------------------------------------------------------------------------

def shrink_witness(outer: ConeSpec, q, u: Vec, beta_cos) -> ConeSpec:
    """The cone (q, u, beta) together with a containment guarantee in outer.

    Preconditions (each reported by name on failure): q in the closure of
    outer; angle(axis, u) < alpha; beta < alpha - angle(axis, u).  For a wide
    outer cone with an offset apex the plain angle conditions do not suffice
    (directions can wrap past pi), so an extra guard is enforced: the apex
    must coincide, or the outer cone must be convex (cos >= 0), or in
    dimension 2 the wrap-around bound alpha + angle + beta <= pi must hold.
    """
    q = qvec(q)
    u = tuple(int(x) for x in u)
    if len(q) != outer.dim or len(u) != outer.dim:
        raise DimensionMismatch("dimension mismatch")
    if not any(u):
        raise PreconditionError("direction u must be nonzero")
    beta_cos = as_fraction(beta_cos)
    if not (-1 < beta_cos < 1):
        raise PreconditionError("beta_cos must lie strictly between -1 and 1")
    t, ca = outer.axis, outer.cos_half_angle
    if not closure_contains(outer, q):
        raise PreconditionError("apex q not in the closure of the outer cone")
    if cos_angle_cmp(t, u, ca) <= 0:
        raise PreconditionError("angle(axis, u) >= alpha")
    if angle_plus_cmp(t, u, beta_cos, ca) >= 0:
        raise PreconditionError("beta >= alpha - angle(axis, u)")
    if q != outer.apex and ca < 0:
        if outer.dim != 2:
            raise PreconditionError(
                "offset-apex shrink of a wide cone is only decided in dimension 2"
            )
        if angle_plus_cmp(t, u, beta_cos, -ca) > 0:
            raise PreconditionError("wrap-around guard alpha + angle + beta <= pi failed")
    return ConeSpec(q, u, beta_cos)


# ---------------------------------------------------------------------------
# Sufficient containment routes (exact, sound; complete enough in dim 2).
# ---------------------------------------------------------------------------

def _subset_exact(inner: ConeSpec, outer: ConeSpec) -> bool:
    """Sound sufficient test for inner <= outer as open cones in R^n."""
    t, gamma_cos = outer.axis, outer.cos_half_angle
    u, beta_cos = inner.axis, inner.cos_half_angle
    # common apex: pure direction comparison, any dimension
    if inner.apex == outer.apex:
        return angle_plus_cmp(t, u, beta_cos, gamma_cos) <= 0
    if angle_plus_cmp(t, u, beta_cos, gamma_cos) >= 0:
        return False
    # deep-apex route, any dimension: the inner apex sits well inside outer in
    # a convex direction cap around the inner axis
    if beta_cos >= 0:
        for mbar in _COS_GRID:
            if angle_plus_cmp(t, u, mbar, gamma_cos) < 0 and contains_point(
                ConeSpec(outer.apex, u, mbar), inner.apex
            ):
                return True
    # dimension-2 interval route: apex anywhere in the closure, with the
    # wrap-around guard alpha + angle + beta <= pi
    if inner.dim == 2 and closure_contains(outer, inner.apex):
        if angle_plus_cmp(t, u, beta_cos, -gamma_cos) <= 0:
            return True
    return False


def _in_closed_cone(inner: ConeSpec, apex, axis: Vec, cos_val) -> bool:
    """Sound sufficient test for inner <= closed cone {angle <= arccos(cos)}."""
    target = ConeSpec(qvec(apex), axis, cos_val)
    t, gc = target.axis, target.cos_half_angle
    u, bc = inner.axis, inner.cos_half_angle
    if inner.apex == target.apex:
        return angle_plus_cmp(t, u, bc, gc) <= 0
    if angle_plus_cmp(t, u, bc, gc) > 0:
        return False
    if not closure_contains(target, inner.apex):
        if bc >= 0:
            for mbar in _COS_GRID:
                if angle_plus_cmp(t, u, mbar, gc) <= 0 and contains_point(
                    ConeSpec(target.apex, u, mbar), inner.apex
                ):
                    return True
        return False
    if gc >= 0:  # convex closed cone, any dimension
        return True
    if inner.dim == 2 and angle_plus_cmp(t, u, bc, -gc) <= 0:
        return True
    return False


def cone_subset(inner: ConeSpec, outer: ConeSpec,
                window: LatticeWindow | None = None) -> Certificate:
    """Containment of cone-shaped subsets: exact routes first, then a window
    scan that either refutes with a witness or window-certifies."""
    _check_same_dim(inner, outer)
    if inner == outer:
        return Certificate(Tri.TRUE, "identical")
    if _subset_exact(inner, outer):
        return Certificate(Tri.TRUE, "exact")
    if window is not None:
        w = first_in_a_not_in_b(inner, outer, window)
        if w is not None:
            return Certificate(Tri.FALSE, "scan", w)
        return Certificate(Tri.TRUE, f"window:{window.lo}-{window.hi}")
    return Certificate(Tri.UNKNOWN, "undecided")


# ---------------------------------------------------------------------------
# Interior / witness-point searches (used only to exhibit lattice points).
# ---------------------------------------------------------------------------

def _reduce(v: Vec) -> Vec:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v) if g else v


def _farey_pairs(max_den: int = 16):
    pairs = []
    for s in range(2, 2 * max_den + 1):
        for a in range(1, s):
            b = s - a
            if a <= max_den and b <= max_den and gcd(a, b) == 1:
                pairs.append((a, b))
    return pairs


def _interior_common_direction(c1: ConeSpec, c2: ConeSpec) -> Vec:
    """An integer direction strictly interior to both direction caps."""
    t1, t2 = c1.axis, c2.axis
    if angle_lt(t2, t1, c2.cos_half_angle):
        return t1
    if angle_lt(t1, t2, c1.cos_half_angle):
        return t2
    for bits in (4, 8, 16, 32):
        s1 = isqrt(dot(t1, t1) << (2 * bits))
        s2 = isqrt(dot(t2, t2) << (2 * bits))
        for a, b in _farey_pairs():
            d = tuple(a * s2 * x + b * s1 * y for x, y in zip(t1, t2))
            if any(d) and angle_lt(t1, d, c1.cos_half_angle) and \
                    angle_lt(t2, d, c2.cos_half_angle):
                return _reduce(d)
    # antipodal-axis overlaps and other thin cases: brute force by norm
    n = c1.dim
    bound = 2
    while bound <= 256:
        box = LatticeWindow((-bound,) * n, (bound,) * n)
        for d in box.points():
            if any(d) and angle_lt(t1, d, c1.cos_half_angle) and \
                    angle_lt(t2, d, c2.cos_half_angle):
                return _reduce(d)
        bound *= 2
    raise GeometryError("no interior common direction found")


def _round_point(q) -> Vec:
    return tuple(int(round(x)) for x in q)


def _find_point_inside(c: ConeSpec) -> Vec:
    """Some lattice point of the cone (always exists for open cones)."""
    lam = Fraction(1)
    for k in range(42):
        center = _round_point(tuple(p + lam * t for p, t in zip(c.apex, c.axis)))
        r = max(2, 2**k)
        pts = lattice_points(c, LatticeWindow.square(r, c.dim, center))
        if pts:
            return pts[0]
        lam *= 4
    raise GeometryError("point search exhausted")  # pragma: no cover


def _find_common_lattice_point(c1: ConeSpec, c2: ConeSpec) -> Vec:
    """A lattice point in both cones; precondition: the open R^n intersection
    is nonempty and unbounded in some common interior direction."""
    d = _interior_common_direction(c1, c2)
    q0 = c1.apex
    lam = max(
        eventual_containment(c1, q0, d),
        eventual_containment(c2, q0, d),
        Fraction(1),
    )
    for k in range(42):
        center = _round_point(tuple(p + lam * t for p, t in zip(q0, d)))
        r = max(2, 2**k)
        w = first_common_point(c1, c2, LatticeWindow.square(r, c1.dim, center))
        if w is not None:
            return w
        lam *= 4
    raise GeometryError("common point search exhausted")  # pragma: no cover


# ---------------------------------------------------------------------------
# Disjointness.
# ---------------------------------------------------------------------------

def _sqrt_interval(r: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    num, den = r.numerator, r.denominator
    s = isqrt((num * den) << (2 * bits))
    scale = den << bits
    return Fraction(s, scale), Fraction(s + 1, scale)


def _intersection_radius_bound(c1: ConeSpec, c2: ConeSpec) -> Fraction | None:
    """Rational R such that every common point x has ||x - p1|| <= R.

    Valid whenever angle(t1,t2) > alpha1 + alpha2 (strictly): then
    sin(angle - alpha1 - alpha2) > 0 and the standard chord bound applies.
    """
    t1, t2 = c1.axis, c2.axis
    a = dot(t1, t2)
    p = dot(t1, t1) * dot(t2, t2)
    c1c, c2c = c1.cos_half_angle, c2.cos_half_angle
    diff = tuple(x - y for x, y in zip(c1.apex, c2.apex))
    d_up = sqrt_upper_bound(dot(diff, diff))
    for bits in (16, 32, 64, 128, 256):
        sp_lo, sp_hi = _sqrt_interval(Fraction(p), bits)
        if sp_lo == 0:
            continue
        cos_lo = Fraction(a) / sp_hi if a >= 0 else Fraction(a) / sp_lo
        cos_hi = Fraction(a) / sp_lo if a >= 0 else Fraction(a) / sp_hi
        sin_lo, sin_hi = _sqrt_interval(Fraction(p - a * a, p), bits)
        s1_lo, s1_hi = _sqrt_interval(1 - c1c * c1c, bits)
        s2_lo, s2_hi = _sqrt_interval(1 - c2c * c2c, bits)
        # cos(a1+a2) = c1 c2 - s1 s2, sin(a1+a2) = s1 c2 + c1 s2
        cs_lo = c1c * c2c - s1_hi * s2_hi
        cs_hi = c1c * c2c - s1_lo * s2_lo
        def mul_lo(xl, xh, yl, yh):
            return min(xl * yl, xl * yh, xh * yl, xh * yh)
        sn_lo = mul_lo(s1_lo, s1_hi, c2c, c2c) + mul_lo(c1c, c1c, s2_lo, s2_hi)
        sn_hi = max(s1_lo * c2c, s1_hi * c2c) + max(c1c * s2_lo, c1c * s2_hi)
        # sin(theta - (a1+a2)) = sin(theta) cos(a1+a2) - cos(theta) sin(a1+a2)
        lower = mul_lo(sin_lo, sin_hi, cs_lo, cs_hi) - max(
            cos_lo * sn_lo, cos_lo * sn_hi, cos_hi * sn_lo, cos_hi * sn_hi
        )
        if lower > 0:
            return max(d_up, d_up / lower) + 2
    return None


def disjoint(u: ConeSpec, v: ConeSpec, *, window: LatticeWindow | None = None,
             scan_radius_cap: int = 1500) -> Disjointness:
    """Three-valued disjointness of the induced lattice subsets.

    True is only returned on a sound certificate (exact angle criterion,
    containment in the complement, or an exhaustive scan of a box that
    provably contains the whole R^n intersection).  False always carries a
    common lattice point.  Everything else is Unknown.
    """
    _check_same_dim(u, v)
    if u == v:
        return Disjointness(Tri.FALSE, _find_point_inside(u), "identical-cones")
    t1, t2 = u.axis, v.axis
    c1, c2 = u.cos_half_angle, v.cos_half_angle
    if u.apex == v.apex:
        s = angle_minus_two_arccos_cmp(t1, t2, c1, c2)
        if s >= 0:
            return Disjointness(Tri.TRUE, None, "common-apex-angle")
        return Disjointness(Tri.FALSE, _find_common_lattice_point(u, v),
                            "common-apex-overlap")
    s = angle_minus_two_arccos_cmp(t1, t2, c1, c2)
    if s < 0:
        return Disjointness(Tri.FALSE, _find_common_lattice_point(u, v),
                            "direction-overlap")
    if s > 0 and u.dim == 2:
        radius = _intersection_radius_bound(u, v)
        if radius is not None and radius <= scan_radius_cap:
            r = int(ceil(radius)) + 1
            box = LatticeWindow.square(r, 2, _round_point(u.apex))
            # widen by the rounding slack of the box center
            box = LatticeWindow(tuple(x - 1 for x in box.lo), tuple(x + 1 for x in box.hi))
            w = first_common_point(u, v, box)
            if w is None:
                return Disjointness(Tri.TRUE, None, "bounded-scan")
            return Disjointness(Tri.FALSE, w, "bounded-scan")
    neg_t1 = tuple(-x for x in t1)
    neg_t2 = tuple(-x for x in t2)
    if _in_closed_cone(v, u.apex, neg_t1, -c1) or _in_closed_cone(u, v.apex, neg_t2, -c2):
        return Disjointness(Tri.TRUE, None, "complement-containment")
    if window is not None:
        w = first_common_point(u, v, window)
        if w is not None:
            return Disjointness(Tri.FALSE, w, "window-scan")
    return Disjointness(Tri.UNKNOWN, None, "undecided")


# ---------------------------------------------------------------------------
# Deep subcones: the workhorse behind enlargement and separation.
# ---------------------------------------------------------------------------

def _deep_subcone(targets: list[ConeSpec], base, direction: Vec) -> ConeSpec:
    """A cone (q, direction, beta) with q far out on base + lam*direction,
    contained in every target cone.

    Precondition: direction is strictly interior to each target's cap.  The
    containment certificate is the convex-cap argument: q lies in a cap of
    cosine mbar_i >= 0 around `direction` anchored at target i's apex, and
    angle(t_i, direction) + max(mbar_i, beta) < half-angle_i.
    """
    base = qvec(base)
    lam = Fraction(1)
    for tg in targets:
        lam = max(lam, eventual_containment(tg, base, direction))
    beta_cos = None
    for cand in _cos_grid():
        if all(angle_plus_cmp(tg.axis, direction, cand, tg.cos_half_angle) < 0
               for tg in targets):
            beta_cos = cand
            break
    if beta_cos is None:  # pragma: no cover - gaps of bounded inputs are wider
        raise GeometryError("no admissible opening angle for deep subcone")
    # per-target cap cosine: the widest grid cap below the angular slack
    caps = []
    for tg in targets:
        cap = None
        for mbar in _cos_grid():
            if angle_plus_cmp(tg.axis, direction, mbar, tg.cos_half_angle) < 0:
                cap = mbar
                break
        if cap is None:  # pragma: no cover
            raise GeometryError("no admissible anchoring cap for deep subcone")
        caps.append(cap)
    for _ in range(80):
        q = tuple(b + lam * d for b, d in zip(base, direction))
        if all(contains_point(ConeSpec(tg.apex, direction, cap), q)
               for tg, cap in zip(targets, caps)):
            result = ConeSpec(q, direction, beta_cos)
            for tg in targets:
                assert _subset_exact(result, tg) or _deep_certified(result, tg), \
                    "deep subcone certificate failed"
            return result
        lam *= 2
    raise GeometryError("deep subcone search exhausted")  # pragma: no cover


def _deep_certified(inner: ConeSpec, outer: ConeSpec) -> bool:
    if angle_plus_cmp(outer.axis, inner.axis, inner.cos_half_angle,
                      outer.cos_half_angle) >= 0:
        return False
    for mbar in _cos_grid():
        if angle_plus_cmp(outer.axis, inner.axis, mbar, outer.cos_half_angle) < 0:
            return contains_point(ConeSpec(outer.apex, inner.axis, mbar), inner.apex)
    return False  # pragma: no cover


def _is_antipodal(t: Vec, u: Vec) -> bool:
    if dot(t, u) >= 0:
        return False
    return all(t[i] * u[j] == t[j] * u[i] for i in range(len(t)) for j in range(i + 1, len(t)))


def _tilt_axis(t: Vec, accept) -> Vec:
    """Smallest-perturbation integer axis K*t + (+/-)e_j passing `accept`."""
    n = len(t)
    k = 2
    while k <= 1 << 24:
        for j in range(n):
            for s in (1, -1):
                cand = tuple(k * t[i] + (s if i == j else 0) for i in range(n))
                if any(cand) and accept(cand):
                    return _reduce(cand)
        k *= 2
    raise GeometryError("axis tilt search exhausted")  # pragma: no cover


def _shrink_common_apex(c: ConeSpec, new_axis: Vec) -> ConeSpec:
    """Subcone of c with the same apex and the given interior axis."""
    for cand in _cos_grid():
        if angle_plus_cmp(c.axis, new_axis, cand, c.cos_half_angle) < 0:
            return ConeSpec(c.apex, new_axis, cand)
    raise GeometryError("no opening angle for tilted subcone")  # pragma: no cover


# ---------------------------------------------------------------------------
# Enlargement and separation.
# ---------------------------------------------------------------------------

def enlargement_witness(u: ConeSpec, v: ConeSpec) -> tuple[ConeSpec, ConeSpec]:
    """Cones (v_prime, w) with v_prime <= v and u, v_prime <= w.

    Follows the constructive recipe: widen u's angle beyond both its own
    half-angle and the axis separation (first replacing v by a tilted
    subcone when the axes are antipodal), then drop a thin cone far along
    v's axis, inside both v and the widened cone.
    """
    _check_same_dim(u, v)
    if _is_antipodal(u.axis, v.axis):
        new_axis = _tilt_axis(
            v.axis,
            lambda cand: angle_lt(v.axis, cand, v.cos_half_angle)
            and not _is_antipodal(u.axis, cand),
        )
        v_tilted = _shrink_common_apex(v, new_axis)
        v_prime, w = enlargement_witness(u, v_tilted)
        return v_prime, w
    t, ca = u.axis, u.cos_half_angle
    bits = 8
    while True:
        lb = cos_lower_bound(t, v.axis, bits)
        if lb > -1:
            break
        bits *= 2
    m = min(ca, lb)
    gamma_cos = (m - 1) / 2
    w = ConeSpec(u.apex, t, gamma_cos)
    assert _subset_exact(u, w)
    v_prime = _deep_subcone([v, w], v.apex, v.axis)
    return v_prime, w


def separation_witness(u: ConeSpec, others: tuple[ConeSpec, ...]) -> ConeSpec:
    """A subcone of u whose lattice points meet at most one of `others`.

    Preconditions: the others are pairwise disjoint (certified).  Axis/angle
    degeneracies angle(axis, t_i) == alpha_i are removed internally by
    tilting u's axis within u.
    """
    others = tuple(others)
    for o in others:
        _check_same_dim(u, o)
    for i in range(len(others)):
        for j in range(i + 1, len(others)):
            d = disjoint(others[i], others[j])
            if d.status is not Tri.TRUE:
                raise PreconditionError(
                    f"others[{i}] and others[{j}] not certified disjoint ({d.status.value})"
                )
    if not others:
        return u
    work = u
    if any(cos_angle_cmp(work.axis, o.axis, o.cos_half_angle) == 0 for o in others):
        new_axis = _tilt_axis(
            work.axis,
            lambda cand: angle_lt(work.axis, cand, work.cos_half_angle)
            and all(cos_angle_cmp(cand, o.axis, o.cos_half_angle) != 0 for o in others),
        )
        work = _shrink_common_apex(work, new_axis)
    t = work.axis
    inside = [i for i, o in enumerate(others)
              if cos_angle_cmp(t, o.axis, o.cos_half_angle) > 0]
    if inside:
        # axis points into others[i]: drop the subcone into u and that one
        target = others[inside[0]]
        return _deep_subcone([work, target], work.apex, t)
    # axis avoids every cap: route into all open complement cones
    comps = [complement_witness(o) for o in others]
    for o, comp in zip(others, comps):
        if cos_angle_cmp(comp.axis, t, comp.cos_half_angle) <= 0:  # pragma: no cover
            raise GeometryError("complement direction unexpectedly not interior")
    return _deep_subcone([work] + comps, work.apex, t)
