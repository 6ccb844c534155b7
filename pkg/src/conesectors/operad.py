"""The colored symmetric operad of pairwise-orthogonal cone inclusions.

Operations are tuples (target; sources) of cone regions with every source
contained in the target and sources pairwise disjoint; composition is
concatenation of source tuples, the symmetric group acts by reordering.
An operation is only created when every containment and disjointness claim
carries a sound certificate; undecided geometry is rejected, never assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .geometry import ConeSpec, LatticeWindow
from .witnesses import (
    Certificate,
    Disjointness,
    Tri,
    cone_subset,
    disjoint,
    separation_witness,
    shrink_witness,
)


class OperationError(ValueError):
    pass


class NotContainedError(OperationError):
    def __init__(self, index: int, certificate: Certificate):
        self.index = index
        self.certificate = certificate
        super().__init__(f"source {index} not contained in target ({certificate.method})")


class NotDisjointError(OperationError):
    def __init__(self, i: int, j: int, witness):
        self.pair = (i, j)
        self.witness = witness
        super().__init__(f"sources {i} and {j} share lattice point {witness}")


class UndecidedError(OperationError):
    def __init__(self, kind: str, indices):
        self.kind = kind
        self.indices = indices
        super().__init__(f"{kind} undecided for indices {indices}")


@dataclass(frozen=True)
class OrthogonalSite:
    """Cone regions of a fixed dimension with certified hom/orthogonality.

    Containment falls back to window certification on the configured box
    when the exact routes do not apply; disjointness is the sound
    three-valued decision from the witnesses module.
    """

    dim: int = 2
    window_radius: int = 64

    def _window(self) -> LatticeWindow:
        return LatticeWindow.square(self.window_radius, self.dim)

    def hom(self, inner: ConeSpec, outer: ConeSpec) -> Certificate:
        return cone_subset(inner, outer, self._window())

    def orthogonal(self, a: ConeSpec, b: ConeSpec) -> Disjointness:
        return disjoint(a, b)


@dataclass(frozen=True)
class OperadOperation:
    target: ConeSpec
    sources: tuple[ConeSpec, ...]

    @property
    def arity(self) -> int:
        return len(self.sources)

    def __repr__(self):
        return f"OperadOperation(arity={self.arity}, target={self.target.to_json()})"


def identity_operation(v: ConeSpec) -> OperadOperation:
    return OperadOperation(v, (v,))


def point_operation(v: ConeSpec) -> OperadOperation:
    """The unique 0-ary operation into v."""
    return OperadOperation(v, ())


def make_operation(site: OrthogonalSite, target: ConeSpec,
                   sources: tuple[ConeSpec, ...]) -> OperadOperation:
    """Validate and build (target; sources); rejects on refuted or undecided
    containment/orthogonality."""
    sources = tuple(sources)
    for i, s in enumerate(sources):
        cert = site.hom(s, target)
        if cert.status is Tri.FALSE:
            raise NotContainedError(i, cert)
        if cert.status is Tri.UNKNOWN:
            raise UndecidedError("containment", (i,))
    for i in range(len(sources)):
        for j in range(i + 1, len(sources)):
            if sources[i] == sources[j]:
                raise NotDisjointError(i, j, None)
            d = site.orthogonal(sources[i], sources[j])
            if d.status is Tri.FALSE:
                raise NotDisjointError(i, j, d.witness)
            if d.status is Tri.UNKNOWN:
                raise UndecidedError("orthogonality", (i, j))
    return OperadOperation(target, sources)


def compose(site: OrthogonalSite, outer: OperadOperation,
            inners: tuple[OperadOperation, ...]) -> OperadOperation:
    """Operadic composition: graft each inner operation onto the matching
    source of the outer one and concatenate the source tuples.

    The result is revalidated: containment is transitive and disjointness is
    inherited by subsets, so certified validity of the inputs certifies the
    output; any directly decidable claim is also re-checked and must agree.
    """
    inners = tuple(inners)
    if len(inners) != outer.arity:
        raise OperationError(f"arity mismatch: {len(inners)} inners for arity {outer.arity}")
    for i, (src, inner) in enumerate(zip(outer.sources, inners)):
        if inner.target != src:
            raise OperationError(f"inner {i} targets {inner.target}, expected {src}")
    sources = tuple(s for inner in inners for s in inner.sources)
    result = OperadOperation(outer.target, sources)
    # direct spot re-certification: a refutation here would contradict heredity
    for i, s in enumerate(sources):
        cert = site.hom(s, outer.target)
        if cert.status is Tri.FALSE:  # pragma: no cover - heredity violation
            raise OperationError(f"heredity violated: composed source {i} escapes target")
    offsets = []
    k = 0
    for inner in inners:
        offsets.append(k)
        k += inner.arity
    for bi in range(len(inners)):
        for bj in range(bi + 1, len(inners)):
            for a in range(inners[bi].arity):
                for b in range(inners[bj].arity):
                    d = site.orthogonal(inners[bi].sources[a], inners[bj].sources[b])
                    if d.status is Tri.FALSE:  # pragma: no cover
                        raise OperationError(
                            f"heredity violated: sources {offsets[bi]+a},{offsets[bj]+b} meet"
                        )
    return result


def permute(op: OperadOperation, sigma: tuple[int, ...]) -> OperadOperation:
    """Right action of a permutation: sources reordered as (U_sigma(1), ...).

    Valid without revalidation since disjointness is symmetric.
    """
    if sorted(sigma) != list(range(op.arity)):
        raise OperationError(f"sigma {sigma} is not a permutation of arity {op.arity}")
    return OperadOperation(op.target, tuple(op.sources[s] for s in sigma))


# ---------------------------------------------------------------------------
# Law checking on sampled fragments.
# ---------------------------------------------------------------------------

_COS_CHOICES = tuple(Fraction(k, 10) for k in range(-9, 10))
_NARROW_COS = tuple(Fraction(k, 10) for k in range(5, 10))


@dataclass
class LawCheckReport:
    samples_requested: int
    seed: int
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "samples": self.samples_requested,
            "seed": self.seed,
            "checked": dict(sorted(self.checked.items())),
            "violations": self.violations,
        }


def _primitive_axis(rng: random.Random, dim: int, bound: int = 8) -> tuple[int, ...]:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if any(v):
            g = 0
            for x in v:
                g = gcd(g, abs(x))
            return tuple(x // g for x in v)


def _admissible(target: ConeSpec, sources: list[ConeSpec], cand: ConeSpec) -> bool:
    """Cheap exact prefilter for common-apex candidates: containment by the
    angle-sum criterion, disjointness by the angle criterion."""
    from .geometry import angle_plus_cmp, angle_minus_two_arccos_cmp

    if angle_plus_cmp(target.axis, cand.axis, cand.cos_half_angle,
                      target.cos_half_angle) > 0:
        return False
    for s in sources:
        if s == cand:
            return False
        if angle_minus_two_arccos_cmp(s.axis, cand.axis, s.cos_half_angle,
                                      cand.cos_half_angle) < 0:
            return False
    return True


def _sample_nest_at(site: OrthogonalSite, rng: random.Random, target: ConeSpec,
                    depth: int, arities):
    arity = rng.choice(arities)
    sources: list[ConeSpec] = []
    for _ in range(arity):
        for _attempt in range(80):
            cand = ConeSpec(target.apex, _primitive_axis(rng, site.dim),
                            rng.choice(_NARROW_COS))
            if _admissible(target, sources, cand):
                sources.append(cand)
                break
        # a narrow target may not fit the requested number of disjoint
        # subcones; keep what was found rather than rejecting the sample
    op = make_operation(site, target, tuple(sources))
    if depth == 0:
        return (op, None)
    inners = []
    for src in op.sources:
        nested = _sample_nest_at(site, rng, src, depth - 1, (0, 1, 1, 2))
        if nested is None:
            return None
        inners.append(nested)
    return (op, tuple(inners))


def _try_sample_nest(site: OrthogonalSite, rng: random.Random, depth: int):
    """A target cone with a valid tuple of disjoint subcones; at depth > 0
    each subcone recursively carries its own nest (for associativity)."""
    radius = max(4, site.window_radius // 2)
    apex = tuple(rng.randint(-radius, radius) for _ in range(site.dim))
    target = ConeSpec(
        tuple(Fraction(a) for a in apex),
        _primitive_axis(rng, site.dim),
        rng.choice(_COS_CHOICES),
    )
    return _sample_nest_at(site, rng, target, depth, (0, 1, 2, 2, 3, 3))


def _try_sample_offset_pair(site: OrthogonalSite, rng: random.Random):
    """A binary operation whose sources come from the witness constructions:
    a tilted common-apex shrink plus a separated cone with an offset apex."""
    from .geometry import cos_angle_cmp

    radius = max(4, site.window_radius // 4)
    apex = tuple(rng.randint(-radius, radius) for _ in range(site.dim))
    target = ConeSpec(tuple(Fraction(a) for a in apex),
                      _primitive_axis(rng, site.dim), rng.choice((Fraction(0), Fraction(-1, 2))))
    for _attempt in range(40):
        axis = _primitive_axis(rng, site.dim)
        c1 = rng.choice(_NARROW_COS)
        # inside the target, but with the target axis outside the shrunk cap,
        # so that separation routes through the complement
        try:
            u1 = shrink_witness(target, target.apex, axis, c1)
        except Exception:
            continue
        if cos_angle_cmp(target.axis, axis, c1) >= 0:
            continue
        try:
            u2 = separation_witness(target, (u1,))
            return make_operation(site, target, (u1, u2))
        except OperationError:
            continue
        except Exception:
            continue
    return None


def _block_permutation(arities: list[int], sigma: tuple[int, ...]) -> tuple[int, ...]:
    """The permutation of concatenated positions induced by permuting blocks."""
    offsets = []
    k = 0
    for a in arities:
        offsets.append(k)
        k += a
    out = []
    for s in sigma:
        out.extend(range(offsets[s], offsets[s] + arities[s]))
    return tuple(out)


def check_operad_laws(site: OrthogonalSite, samples: int, seed: int) -> LawCheckReport:
    """Sample operations and verify unit, associativity and equivariance laws.

    Violations are collected (expected: none); sampling is deterministic in
    the seed.
    """
    rng = random.Random(seed)
    report = LawCheckReport(samples_requested=samples, seed=seed)
    counts = {"unit": 0, "associativity": 0, "equivariance": 0, "revalidation": 0,
              "offset_pairs": 0}

    def violation(law, detail):
        report.violations.append({"law": law, "detail": detail})

    produced = 0
    while produced < samples:
        nest = _try_sample_nest(site, rng, depth=2)
        if nest is None:
            continue
        produced += 1
        op, inners = nest

        # unit laws
        ids = tuple(identity_operation(s) for s in op.sources)
        if compose(site, op, ids) != op:
            violation("unit", {"side": "right", "op": repr(op)})
        if compose(site, identity_operation(op.target), (op,)) != op:
            violation("unit", {"side": "left", "op": repr(op)})
        counts["unit"] += 1

        if inners is not None:
            gs = tuple(g for g, _ in inners)
            hs_nested = tuple(h for _, h in inners)
            # two evaluation orders of the two-level composite
            fg = compose(site, op, gs)
            hs_flat = tuple(h_op for hs in hs_nested for h_op, _ in (hs or ()))
            lhs = compose(site, fg, hs_flat)
            gh = tuple(
                compose(site, g, tuple(h_op for h_op, _ in (hs or ())))
                for g, hs in zip(gs, hs_nested)
            )
            rhs = compose(site, op, gh)
            if lhs != rhs:
                violation("associativity", {"lhs": repr(lhs), "rhs": repr(rhs)})
            counts["associativity"] += 1

            # equivariance of composition under the symmetric action
            if op.arity >= 2:
                sigma = tuple(rng.sample(range(op.arity), op.arity))
                left = permute(
                    compose(site, op, gs),
                    _block_permutation([g.arity for g in gs], sigma),
                )
                right = compose(site, permute(op, sigma), tuple(gs[s] for s in sigma))
                if left != right:
                    violation("equivariance", {"sigma": sigma, "op": repr(op)})
                counts["equivariance"] += 1

            # validity heredity: every composite revalidates from scratch
            try:
                make_operation(site, lhs.target, lhs.sources)
            except OperationError as exc:
                violation("revalidation", {"error": str(exc)})
            counts["revalidation"] += 1

        # occasionally mix in an offset-apex pair built from witnesses
        if produced % 8 == 0:
            pair = _try_sample_offset_pair(site, rng)
            if pair is not None:
                counts["offset_pairs"] += 1
                if compose(site, pair, tuple(identity_operation(s) for s in pair.sources)) != pair:
                    violation("unit", {"side": "right-offset", "op": repr(pair)})
                swapped = permute(pair, (1, 0))
                if permute(swapped, (1, 0)) != pair:
                    violation("equivariance", {"detail": "double swap", "op": repr(pair)})

    report.checked = counts
    return report
