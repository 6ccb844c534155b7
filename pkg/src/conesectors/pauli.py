"""Qubits on the edges of a finite Z^2 window: exact Pauli-string calculus.

Pauli strings are stored as (phase exponent of i, X bitmask, Z bitmask) over
the edge set; multiplication keeps exact phases with the convention
X*Z = -i*Y fixed globally.  A dense matrix oracle (numpy Kronecker products)
is available for small windows and is the independent cross-check for the
symplectic fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from .geometry import ConeSpec, LatticeWindow
from .witnesses import Disjointness, Tri, disjoint

DENSE_QUBIT_CAP = 12


class NetError(ValueError):
    pass


class WindowMismatch(NetError):
    pass


Edge = tuple[str, int, int]  # ('h'|'v', base vertex x, base vertex y)


@dataclass(frozen=True)
class EdgeLattice:
    """Edges of the square lattice restricted to a window of vertices.

    Horizontal edge ('h', x, y) joins (x, y)-(x+1, y); vertical edge
    ('v', x, y) joins (x, y)-(x, y+1).  Stars at the window boundary keep
    only in-window edges; plaquettes are the complete unit squares.
    """

    window: LatticeWindow

    def __post_init__(self):
        if self.window.dim != 2:
            raise NetError("edge lattices are two-dimensional")

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        (x0, y0), (x1, y1) = self.window.lo, self.window.hi
        out = []
        for x in range(x0, x1 + 1):
            for y in range(y0, y1 + 1):
                if x < x1:
                    out.append(("h", x, y))
                if y < y1:
                    out.append(("v", x, y))
        return tuple(out)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def midpoint(self, edge: Edge) -> tuple[Fraction, Fraction]:
        kind, x, y = edge
        if kind == "h":
            return (Fraction(2 * x + 1, 2), Fraction(y))
        return (Fraction(x), Fraction(2 * y + 1, 2))

    def vertices(self):
        yield from self.window.points()

    def star_edges(self, v: tuple[int, int]) -> tuple[int, ...]:
        """Indices of the (up to 4) in-window edges incident to vertex v."""
        x, y = v
        idx = self.edge_index
        out = []
        for e in (("h", x, y), ("h", x - 1, y), ("v", x, y), ("v", x, y - 1)):
            if e in idx:
                out.append(idx[e])
        return tuple(out)

    def plaquettes(self):
        """Lower-left corners (x, y) of the complete unit squares."""
        (x0, y0), (x1, y1) = self.window.lo, self.window.hi
        for x in range(x0, x1):
            for y in range(y0, y1):
                yield (x, y)

    def plaquette_edges(self, p: tuple[int, int]) -> tuple[int, ...]:
        x, y = p
        idx = self.edge_index
        es = (("h", x, y), ("v", x + 1, y), ("h", x, y + 1), ("v", x, y))
        return tuple(idx[e] for e in es)

    def is_interior_vertex(self, v: tuple[int, int]) -> bool:
        return all(lo < c < hi for c, lo, hi in zip(v, self.window.lo, self.window.hi))

    def edges_in_cone(self, cone: ConeSpec) -> tuple[int, ...]:
        """Edges whose midpoint lies in the cone (exact half-integer test,
        carried out in integers on the doubled lattice)."""
        from conesectors._kernels_py import _member
        from .geometry import int_cone_params

        pnx, pny, den, tx, ty, cn, cd = int_cone_params(cone.scaled(2))
        out = []
        for i, (kind, ex, ey) in enumerate(self.edges):
            mx2, my2 = (2 * ex + 1, 2 * ey) if kind == "h" else (2 * ex, 2 * ey + 1)
            if _member(pnx, pny, den, tx, ty, cn, cd, mx2, my2):
                out.append(i)
        return tuple(out)

    def margin_edges(self, margin: int) -> tuple[int, ...]:
        """Edges whose midpoint is at least `margin` from every window face."""
        (x0, y0), (x1, y1) = self.window.lo, self.window.hi
        out = []
        for i, e in enumerate(self.edges):
            mx, my = self.midpoint(e)
            if x0 + margin <= mx <= x1 - margin and y0 + margin <= my <= y1 - margin:
                out.append(i)
        return tuple(out)

    def mask(self, edge_indices) -> int:
        m = 0
        for i in edge_indices:
            m |= 1 << i
        return m


_PHASE_CHARS = {0: "+", 1: "+i*", 2: "-", 3: "-i*"}
_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),      # X
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),     # Z
    # X*Z = -iY with the global convention; stored unphased as the product XZ
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """i^phase_exp * prod_e X_e^{x bit} Z_e^{z bit} over the edge qubits."""

    lattice: EdgeLattice
    phase_exp: int
    x_mask: int
    z_mask: int

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", self.phase_exp & 3)

    def _check(self, other: "PauliString"):
        if self.lattice.window != other.lattice.window:
            raise WindowMismatch("operands live on different windows")

    def __mul__(self, other: "PauliString") -> "PauliString":
        self._check(other)
        # commute Z-part of self past X-part of other: each swap gives -1
        swaps = (self.z_mask & other.x_mask).bit_count()
        return PauliString(
            self.lattice,
            (self.phase_exp + other.phase_exp + 2 * swaps) & 3,
            self.x_mask ^ other.x_mask,
            self.z_mask ^ other.z_mask,
        )

    def adjoint(self) -> "PauliString":
        swaps = (self.x_mask & self.z_mask).bit_count()
        return PauliString(self.lattice, (-self.phase_exp + 2 * swaps) & 3,
                           self.x_mask, self.z_mask)

    def commutes_with(self, other: "PauliString") -> bool:
        self._check(other)
        return (
            (self.x_mask & other.z_mask).bit_count()
            + (self.z_mask & other.x_mask).bit_count()
        ) % 2 == 0

    @property
    def support_mask(self) -> int:
        return self.x_mask | self.z_mask

    @property
    def weight(self) -> int:
        return self.support_mask.bit_count()

    def is_scalar(self) -> bool:
        return self.support_mask == 0

    def scalar(self) -> complex:
        """The value of a scalar string as a complex number (1, i, -1, -i)."""
        if not self.is_scalar():
            raise NetError("string has nonempty support")
        return 1j**self.phase_exp

    def render(self) -> str:
        parts = []
        for i in range(self.lattice.n_edges):
            has_x = (self.x_mask >> i) & 1
            has_z = (self.z_mask >> i) & 1
            if has_x:
                parts.append(f"X(e{i})")
            if has_z:
                parts.append(f"Z(e{i})")
        body = "".join(parts) if parts else "1"
        return _PHASE_CHARS[self.phase_exp] + body

    def mask_hex(self) -> str:
        """Bit-exact rendering: phase exponent, X mask, Z mask."""
        return f"i^{self.phase_exp}|x:{self.x_mask:x}|z:{self.z_mask:x}"


def identity_string(lattice: EdgeLattice) -> PauliString:
    return PauliString(lattice, 0, 0, 0)


def single_x(lattice: EdgeLattice, edge: int) -> PauliString:
    return PauliString(lattice, 0, 1 << edge, 0)


def single_z(lattice: EdgeLattice, edge: int) -> PauliString:
    return PauliString(lattice, 0, 0, 1 << edge)


def x_string(lattice: EdgeLattice, edges) -> PauliString:
    return PauliString(lattice, 0, lattice.mask(edges), 0)


def z_string(lattice: EdgeLattice, edges) -> PauliString:
    return PauliString(lattice, 0, 0, lattice.mask(edges))


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    return a * b


def commutes(a: PauliString, b: PauliString) -> bool:
    return a.commutes_with(b)


def dense_matrix(a: PauliString, lattice: EdgeLattice | None = None) -> np.ndarray:
    """Dense matrix of a Pauli string; the independent oracle (<= 12 qubits)."""
    lattice = lattice or a.lattice
    if lattice.window != a.lattice.window:
        raise WindowMismatch("string does not live on the given lattice")
    n = lattice.n_edges
    if n > DENSE_QUBIT_CAP:
        raise NetError(f"{n} qubits exceeds the dense-oracle cap {DENSE_QUBIT_CAP}")
    m = np.array([[1]], dtype=complex)
    for i in range(n):
        bits = ((a.x_mask >> i) & 1, (a.z_mask >> i) & 1)
        m = np.kron(m, _SINGLE[bits])
    return (1j**a.phase_exp) * m


def stabilizers(lattice: EdgeLattice) -> tuple[list[PauliString], list[PauliString]]:
    """Star (X-type, per vertex) and plaquette (Z-type, per unit square)
    operators, truncated to in-window edges at the boundary."""
    stars = [x_string(lattice, lattice.star_edges(v)) for v in lattice.vertices()]
    plaqs = [z_string(lattice, lattice.plaquette_edges(p)) for p in lattice.plaquettes()]
    return stars, plaqs


@dataclass(frozen=True)
class RegionAlgebra:
    """Single-edge X and Z generators for the edges inside a region."""

    lattice: EdgeLattice
    edge_indices: tuple[int, ...]
    region: ConeSpec | None = None

    @staticmethod
    def from_cone(lattice: EdgeLattice, region: ConeSpec) -> "RegionAlgebra":
        return RegionAlgebra(lattice, lattice.edges_in_cone(region), region)

    @staticmethod
    def from_edges(lattice: EdgeLattice, edges) -> "RegionAlgebra":
        return RegionAlgebra(lattice, tuple(sorted(edges)), None)

    def generators(self) -> list[PauliString]:
        gens = []
        for i in self.edge_indices:
            gens.append(single_x(self.lattice, i))
            gens.append(single_z(self.lattice, i))
        return gens


def disjoint_for_edges(u: ConeSpec, v: ConeSpec,
                       window: LatticeWindow | None = None) -> Disjointness:
    """Disjointness sound for edge midpoints: decide on the doubled lattice,
    where half-integer midpoints become integer points."""
    w2 = window.scaled(2) if window is not None else None
    return disjoint(u.scaled(2), v.scaled(2), window=w2)


@dataclass
class CommutationReport:
    pairs_checked: int
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"pairs_checked": self.pairs_checked, "violations": self.violations}


def perp_commutativity_check(u1: ConeSpec, u2: ConeSpec,
                             lattice: EdgeLattice) -> CommutationReport:
    """All cross-region generator pairs commute, for certified-disjoint cones.

    Disjointness is certified on the doubled lattice so that it covers the
    half-integer edge midpoints carrying the qubits.
    """
    d = disjoint_for_edges(u1, u2, lattice.window)
    if d.status is not Tri.TRUE:
        raise NetError(f"regions not certified disjoint on edges ({d.status.value})")
    alg1 = RegionAlgebra.from_cone(lattice, u1)
    alg2 = RegionAlgebra.from_cone(lattice, u2)
    g1 = alg1.generators()
    g2 = alg2.generators()
    bad = kernels.commutation_violations(
        [g.x_mask for g in g1], [g.z_mask for g in g1],
        [g.x_mask for g in g2], [g.z_mask for g in g2],
    )
    violations = [
        {"g1": g1[i].render(), "g2": g2[j].render()} for i, j in bad
    ]
    return CommutationReport(len(g1) * len(g2), violations)
