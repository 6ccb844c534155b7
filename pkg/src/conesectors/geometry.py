"""Exact geometry of open Euclidean cones and the subsets of Z^n they cut out.

An open cone is parametrized by a rational apex p, an unnormalized integer
axis t != 0 and the rational cosine c of its half-angle.  A point x belongs to
the cone iff x != p and (x - p).t > ||x - p|| ||t|| c, which is decided by
exact sign analysis of expressions of the form q0 + q1*sqrt(r1) + q2*sqrt(r2)
with rational q_i, r_i.  No floating point is used anywhere in this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from . import kernels

Vec = tuple[int, ...]
QVec = tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


class DimensionMismatch(GeometryError):
    pass


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def qvec(v: Sequence) -> QVec:
    return tuple(as_fraction(x) for x in v)


def ivec(v: Sequence[int]) -> Vec:
    return tuple(int(x) for x in v)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def sign(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Exact sign analysis of radical expressions.
# ---------------------------------------------------------------------------

def sign_sqrt1(a, b, r) -> int:
    """Sign of a + b*sqrt(r) for rational a, b and rational r >= 0."""
    if r < 0:
        raise GeometryError("negative radicand")
    if r == 0 or b == 0:
        return sign(a)
    if a == 0:
        return sign(b)
    if sign(a) == sign(b):
        return sign(a)
    d = a * a - b * b * r
    if d == 0:
        return 0
    return sign(a) if d > 0 else sign(b)


def sign_sqrt2(q0, q1, r1, q2, r2) -> int:
    """Sign of q0 + q1*sqrt(r1) + q2*sqrt(r2), all arguments rational, r_i >= 0.

    Decided by isolating one radical at a time and squaring with sign
    bookkeeping; exact for every input.
    """
    if r1 == 0:
        q1 = 0
    if r2 == 0:
        q2 = 0
    if q1 == 0 and q2 == 0:
        return sign(q0)
    if q2 == 0:
        return sign_sqrt1(q0, q1, r1)
    if q1 == 0:
        return sign_sqrt1(q0, q2, r2)
    # u := q1*sqrt(r1) + q2*sqrt(r2)
    if sign(q1) == sign(q2):
        su = sign(q1)
    else:
        su = sign(q1 * q1 * r1 - q2 * q2 * r2)
        su = sign(q1) if su > 0 else (sign(q2) if su < 0 else 0)
    if su == 0:
        return sign(q0)
    if q0 == 0 or sign(q0) == su:
        return su
    # compare |u| with |q0| via u^2 = q1^2 r1 + q2^2 r2 + 2 q1 q2 sqrt(r1 r2)
    d = sign_sqrt1(q1 * q1 * r1 + q2 * q2 * r2 - q0 * q0, 2 * q1 * q2, r1 * r2)
    if d > 0:
        return su
    if d < 0:
        return sign(q0)
    return 0


def cos_angle_cmp(t: Vec, u: Vec, c) -> int:
    """Sign of cos(angle(t, u)) - c for integer vectors t, u and rational c."""
    a = dot(t, u)
    p = dot(t, t) * dot(u, u)
    if p == 0:
        raise GeometryError("zero vector has no direction")
    return sign_sqrt1(a, -c, p)


def angle_leq(t: Vec, u: Vec, c) -> bool:
    """angle(t, u) <= arccos(c), i.e. cos(angle) >= c."""
    return cos_angle_cmp(t, u, c) >= 0


def angle_lt(t: Vec, u: Vec, c) -> bool:
    return cos_angle_cmp(t, u, c) > 0


def angle_plus_cmp(t: Vec, u: Vec, c_add, c_target) -> int:
    """Sign of (angle(t, u) + arccos(c_add)) - arccos(c_target).

    Both cosines must lie in the open interval (-1, 1).  Uses the cosine
    addition formula; the branch angle+arccos(c_add) >= pi is detected first
    so that the subsequent cosine comparison is monotone.
    """
    a = dot(t, u)
    p = dot(t, t) * dot(u, u)
    if p == 0:
        raise GeometryError("zero vector has no direction")
    # angle + arccos(c_add) >= pi  iff  cos(angle) <= -c_add
    if sign_sqrt1(a, c_add, p) <= 0:
        return 1  # arccos(c_target) < pi always
    # cos(angle + arccos(c_add)) = (a*c_add - sqrt((p - a^2)(1 - c_add^2)))/sqrt(p)
    return sign_sqrt2(-a * c_add, c_target, p, Fraction(1), (p - a * a) * (1 - c_add * c_add))


def angle_minus_two_arccos_cmp(t1: Vec, t2: Vec, c1, c2) -> int:
    """Sign of angle(t1, t2) - arccos(c1) - arccos(c2).

    Reduces to angle_plus_cmp through angle(-t1, t2) = pi - angle(t1, t2).
    """
    neg = tuple(-x for x in t1)
    return -angle_plus_cmp(neg, t2, c1, -c2)


def cos_lower_bound(t: Vec, u: Vec, bits: int) -> Fraction:
    """A rational lower bound for cos(angle(t, u)), within ~2**-bits."""
    a = dot(t, u)
    p = dot(t, t) * dot(u, u)
    s_lo = isqrt(p << (2 * bits))
    if a >= 0:
        return Fraction(a << bits, s_lo + 1)
    return Fraction(a << bits, s_lo)


def sqrt_upper_bound(r: Fraction) -> Fraction:
    """The least fraction of the form k/den >= sqrt(r) produced by isqrt."""
    r = as_fraction(r)
    if r < 0:
        raise GeometryError("negative radicand")
    num, den = r.numerator, r.denominator
    root = isqrt(num * den)
    if root * root == num * den:
        return Fraction(root, den)
    return Fraction(root + 1, den)


# ---------------------------------------------------------------------------
# Cones and windows.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeSpec:
    """An open cone in R^n: apex, unnormalized integer axis, cos half-angle.

    Instances are canonicalized on construction: the axis is reduced by the
    gcd of its entries, and for the half-space degeneracy (cos = 0) the apex
    is translated to the foot of the perpendicular from the origin, so that
    equal cones compare equal.
    """

    apex: QVec
    axis: Vec
    cos_half_angle: Fraction

    def __post_init__(self):
        apex = qvec(self.apex)
        axis = ivec(self.axis)
        c = as_fraction(self.cos_half_angle)
        if len(apex) != len(axis):
            raise DimensionMismatch("apex and axis dimensions differ")
        if not any(axis):
            raise GeometryError("axis must be nonzero")
        if not (-1 < c < 1):
            raise GeometryError("cos_half_angle must lie strictly between -1 and 1")
        g = 0
        for entry in axis:
            g = gcd(g, abs(entry))
        axis = tuple(entry // g for entry in axis)
        if c == 0:
            # half-space: the cone only depends on axis and apex.axis, so
            # normalize the apex to the foot of the perpendicular from 0.
            t_sq = dot(axis, axis)
            lam = Fraction(dot(apex, axis), t_sq)
            apex = tuple(lam * a for a in axis)
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "cos_half_angle", c)

    @property
    def dim(self) -> int:
        return len(self.axis)

    def scaled(self, k: int) -> "ConeSpec":
        """The cone k*C (apex scaled by k, same direction data), k > 0."""
        if k <= 0:
            raise GeometryError("scale factor must be positive")
        return ConeSpec(tuple(k * a for a in self.apex), self.axis, self.cos_half_angle)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "apex": [[a.numerator, a.denominator] for a in self.apex],
            "axis": list(self.axis),
            "cos": [self.cos_half_angle.numerator, self.cos_half_angle.denominator],
        }

    @staticmethod
    def from_dict(d: dict) -> "ConeSpec":
        apex = tuple(Fraction(num, den) for num, den in d["apex"])
        cnum, cden = d["cos"]
        return ConeSpec(apex, tuple(d["axis"]), Fraction(cnum, cden))

    @staticmethod
    def from_json(s: str) -> "ConeSpec":
        return ConeSpec.from_dict(json.loads(s))


def cone(apex: Sequence, axis: Sequence[int], c) -> ConeSpec:
    """Convenience constructor accepting ints, strings like '3/5', Fractions."""
    return ConeSpec(qvec(apex), ivec(axis), as_fraction(c))


@dataclass(frozen=True)
class LatticeWindow:
    """An axis-aligned box of lattice points, lo <= x <= hi componentwise."""

    lo: Vec
    hi: Vec

    def __post_init__(self):
        lo, hi = ivec(self.lo), ivec(self.hi)
        if len(lo) != len(hi):
            raise DimensionMismatch("lo and hi dimensions differ")
        if any(a > b for a, b in zip(lo, hi)):
            raise GeometryError("empty window")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @staticmethod
    def square(radius: int, dim: int = 2, center: Sequence[int] | None = None) -> "LatticeWindow":
        c = tuple(center) if center is not None else (0,) * dim
        return LatticeWindow(tuple(x - radius for x in c), tuple(x + radius for x in c))

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def point_count(self) -> int:
        n = 1
        for a, b in zip(self.lo, self.hi):
            n *= b - a + 1
        return n

    def contains(self, x: Sequence[int]) -> bool:
        return all(a <= v <= b for v, a, b in zip(x, self.lo, self.hi))

    def points(self) -> Iterator[Vec]:
        """All lattice points in lexicographic order."""

        def rec(prefix: tuple, i: int):
            if i == self.dim:
                yield prefix
                return
            for v in range(self.lo[i], self.hi[i] + 1):
                yield from rec(prefix + (v,), i + 1)

        yield from rec((), 0)

    def scaled(self, k: int) -> "LatticeWindow":
        return LatticeWindow(tuple(k * a for a in self.lo), tuple(k * b for b in self.hi))


# ---------------------------------------------------------------------------
# Membership predicates.
# ---------------------------------------------------------------------------

def _check_dim(c: ConeSpec, x: Sequence):
    if len(x) != c.dim:
        raise DimensionMismatch(f"point of dim {len(x)} vs cone of dim {c.dim}")


def membership_sign(c: ConeSpec, x: Sequence) -> int:
    """Sign of (x-p).t - ||x-p|| ||t|| c; 0 at the apex and on the boundary."""
    _check_dim(c, x)
    v = tuple(as_fraction(xi) - pi for xi, pi in zip(x, c.apex))
    if not any(v):
        return 0
    lhs = dot(v, c.axis)
    radicand = dot(v, v) * dot(c.axis, c.axis)
    return sign_sqrt1(lhs, -c.cos_half_angle, radicand)


def contains_point(c: ConeSpec, x: Sequence) -> bool:
    """Exact membership of a point (integer or rational) in the open cone."""
    return membership_sign(c, x) > 0


def closure_contains(c: ConeSpec, x: Sequence) -> bool:
    """Membership in the closure: apex and boundary included."""
    _check_dim(c, x)
    v = tuple(as_fraction(xi) - pi for xi, pi in zip(x, c.apex))
    if not any(v):
        return True
    lhs = dot(v, c.axis)
    radicand = dot(v, v) * dot(c.axis, c.axis)
    return sign_sqrt1(lhs, -c.cos_half_angle, radicand) >= 0


# ---------------------------------------------------------------------------
# Window scans (kernel-accelerated for dim 2).
# ---------------------------------------------------------------------------

_KERNEL_COORD_BOUND = 1 << 30
_KERNEL_AXIS_BOUND = 1 << 15
_KERNEL_COS_BOUND = 1 << 15


def int_cone_params(c: ConeSpec) -> tuple[int, ...]:
    """(p_num..., p_den, t..., c_num, c_den) with a common apex denominator."""
    den = 1
    for a in c.apex:
        den = den * a.denominator // gcd(den, a.denominator)
    nums = tuple(int(a * den) for a in c.apex)
    cf = c.cos_half_angle
    return nums + (den,) + c.axis + (cf.numerator, cf.denominator)


def kernel_safe(c: ConeSpec, window: LatticeWindow) -> bool:
    if c.dim != 2:
        return False
    params = int_cone_params(c)
    pnx, pny, den, tx, ty, cn, cd = params
    span = max(abs(v) for v in window.lo + window.hi)
    if den * span + max(abs(pnx), abs(pny)) >= _KERNEL_COORD_BOUND:
        return False
    if max(abs(tx), abs(ty)) >= _KERNEL_AXIS_BOUND:
        return False
    if max(abs(cn), cd) >= _KERNEL_COS_BOUND:
        return False
    return True


def _scan_impl(cones: tuple[ConeSpec, ...], window: LatticeWindow):
    """Pick the kernel backend for a dim-2 scan: the compiled kernel inside
    its integer-range guard, the exact pure-Python kernel otherwise."""
    from conesectors import _kernels_py

    if all(kernel_safe(c, window) for c in cones):
        return kernels
    return _kernels_py


def lattice_points(c: ConeSpec, window: LatticeWindow) -> list[Vec]:
    """All window points inside the cone, in lexicographic order."""
    if c.dim != window.dim:
        raise DimensionMismatch("cone and window dimensions differ")
    if c.dim == 2:
        impl = _scan_impl((c,), window)
        return impl.scan_cone_2d(
            *int_cone_params(c),
            window.lo[0], window.hi[0], window.lo[1], window.hi[1],
        )
    return [x for x in window.points() if contains_point(c, x)]


def first_common_point(c1: ConeSpec, c2: ConeSpec, window: LatticeWindow) -> Vec | None:
    """Lexicographically first window point lying in both open cones."""
    if c1.dim == 2 and window.dim == 2:
        impl = _scan_impl((c1, c2), window)
        return impl.first_common_2d(
            *(int_cone_params(c1) + int_cone_params(c2)),
            window.lo[0], window.hi[0], window.lo[1], window.hi[1],
        )
    for x in window.points():
        if contains_point(c1, x) and contains_point(c2, x):
            return x
    return None


def first_in_a_not_in_b(a: ConeSpec, b: ConeSpec, window: LatticeWindow) -> Vec | None:
    """First window point of A outside B; None certifies A&window <= B."""
    if a.dim == 2 and window.dim == 2:
        impl = _scan_impl((a, b), window)
        return impl.first_in_a_not_in_b_2d(
            *(int_cone_params(a) + int_cone_params(b)),
            window.lo[0], window.hi[0], window.lo[1], window.hi[1],
        )
    for x in window.points():
        if contains_point(a, x) and not contains_point(b, x):
            return x
    return None
