"""Pure-Python reference kernels (arbitrary-precision integers).

Same interface as the compiled extension conesectors._kernels; used as the
import-time fallback and as the baseline in benchmarks/bench_kernels.py.
"""

from __future__ import annotations


def _member(pnx: int, pny: int, den: int, tx: int, ty: int, cn: int, cd: int,
            x: int, y: int) -> bool:
    """Open-cone membership of (x, y): (x-p).t > ||x-p|| ||t|| c, exactly."""
    vx = den * x - pnx
    vy = den * y - pny
    if vx == 0 and vy == 0:
        return False
    lhs = (vx * tx + vy * ty) * cd
    if cn == 0:
        return lhs > 0
    rad = (vx * vx + vy * vy) * (tx * tx + ty * ty)
    if cn > 0:
        return lhs > 0 and lhs * lhs > cn * cn * rad
    return lhs >= 0 or lhs * lhs < cn * cn * rad


def scan_cone_2d(pnx, pny, den, tx, ty, cn, cd, x0, x1, y0, y1):
    out = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if _member(pnx, pny, den, tx, ty, cn, cd, x, y):
                out.append((x, y))
    return out


def first_common_2d(pnx1, pny1, den1, tx1, ty1, cn1, cd1,
                    pnx2, pny2, den2, tx2, ty2, cn2, cd2,
                    x0, x1, y0, y1):
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if _member(pnx1, pny1, den1, tx1, ty1, cn1, cd1, x, y) and \
                    _member(pnx2, pny2, den2, tx2, ty2, cn2, cd2, x, y):
                return (x, y)
    return None


def first_in_a_not_in_b_2d(pnx1, pny1, den1, tx1, ty1, cn1, cd1,
                           pnx2, pny2, den2, tx2, ty2, cn2, cd2,
                           x0, x1, y0, y1):
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if _member(pnx1, pny1, den1, tx1, ty1, cn1, cd1, x, y) and \
                    not _member(pnx2, pny2, den2, tx2, ty2, cn2, cd2, x, y):
                return (x, y)
    return None


def commutation_violations(x1, z1, x2, z2, limit=16):
    """Indices (i, j) of anticommuting pairs between two Pauli families.

    x1, z1, x2, z2 are equal-length-per-family lists of int bitmasks; the
    symplectic form is popcount(x_i & z_j) + popcount(z_i & x_j) mod 2.
    """
    out = []
    for i in range(len(x1)):
        xi, zi = x1[i], z1[i]
        for j in range(len(x2)):
            if ((xi & z2[j]).bit_count() + (zi & x2[j]).bit_count()) & 1:
                out.append((i, j))
                if len(out) >= limit:
                    return out
    return out
