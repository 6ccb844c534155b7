"""Command-line harness: cone queries, operad law checks, net checks, sector
computations, and the one-shot verify-all pipeline with JSON reports.

All randomness flows from a single 64-bit seed, split per check by a stable
CRC of the check name, so identical configurations produce identical reports
(byte-identical except wall time).
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
import zlib
from dataclasses import dataclass
from fractions import Fraction

from . import __version__, checks, kernels
from .geometry import ConeSpec, LatticeWindow, cone, contains_point, lattice_points
from .pauli import EdgeLattice, perp_commutativity_check, stabilizers, commutes
from .sectors import (
    SectorLabel,
    braiding,
    braiding_scalar,
    default_zigzag,
    holonomy_T,
    holonomy_residue,
    make_sector,
    monodromy,
)
from .witnesses import (
    complement_witness,
    disjoint,
    eventual_containment,
    minimal_integer_lambda,
    shrink_witness,
)

ENV_PREFIX = "CONESECTORS_"

CHECK_ORDER = (
    "operad-laws",
    "geometric-witnesses",
    "perp-commutativity",
    "toric-statistics",
    "interchange",
    "assumption-checks",
    "holonomy",
    "haag-duality-note",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    dim: int = 2
    window_radius: int = 32
    margin: int = 2
    samples: int = 500
    seed: int = 1
    checks: tuple[str, ...] = CHECK_ORDER

    def __post_init__(self):
        if self.margin < 1:
            raise ConfigError("margin must be >= 1")
        if self.window_radius <= 2 * self.margin:
            raise ConfigError("window_radius must exceed twice the margin")
        if not self.checks:
            raise ConfigError("no checks requested")
        unknown = [c for c in self.checks if c not in CHECK_ORDER]
        if unknown:
            raise ConfigError(f"unknown check names: {', '.join(unknown)}")
        if self.dim != 2:
            raise ConfigError("the verification pipeline is specific to dim 2")

    def to_dict(self) -> dict:
        return {"dim": self.dim, "window_radius": self.window_radius,
                "margin": self.margin, "samples": self.samples,
                "seed": self.seed, "checks": list(self.checks)}


def seed_for(seed: int, name: str) -> int:
    """Stable per-check split of the run seed."""
    return (seed ^ zlib.crc32(name.encode())) & 0xFFFFFFFFFFFFFFFF


def _scaled(samples: int, num: int, den: int, cap: int | None = None) -> int:
    n = max(1, samples * num // den)
    return min(n, cap) if cap else n


def run(config: RunConfig) -> dict:
    """Execute the requested checks in declared order; returns the report."""
    start = time.perf_counter()
    results = []
    for name in config.checks:
        s = seed_for(config.seed, name)
        if name == "operad-laws":
            out = checks.check_operad(config.samples, s,
                                      window_radius=config.window_radius)
        elif name == "geometric-witnesses":
            out = checks.check_witnesses(_scaled(config.samples, 2, 5), s)
        elif name == "perp-commutativity":
            out = checks.check_perp_commutativity(_scaled(config.samples, 1, 5), s)
        elif name == "toric-statistics":
            out = checks.check_statistics(s, window_radius=min(config.window_radius, 8))
        elif name == "interchange":
            out = checks.check_interchange(_scaled(config.samples, 1, 25), s,
                                           window_radius=min(config.window_radius, 16),
                                           margin=config.margin)
        elif name == "assumption-checks":
            out = checks.check_assumptions(_scaled(config.samples, 1, 10), s,
                                           window_radius=min(config.window_radius, 8),
                                           margin=config.margin)
        elif name == "holonomy":
            out = checks.check_holonomy(s, window_radius=min(config.window_radius, 8),
                                        margin=config.margin)
        elif name == "haag-duality-note":
            out = checks.check_haag_note(s)
        else:  # pragma: no cover - guarded by RunConfig
            raise ConfigError(f"unknown check {name}")
        results.append(out.to_dict())
    report = {
        "schema": 1,
        "config": config.to_dict(),
        "checks": results,
        "passed": all(r["pass"] for r in results),
        "wall_time_s": round(time.perf_counter() - start, 3),
        "versions": {
            "conesectors": __version__,
            "python": platform.python_version(),
            "kernel_backend": kernels.BACKEND,
        },
    }
    return report


# ---------------------------------------------------------------------------
# Argument helpers.
# ---------------------------------------------------------------------------

def _parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def _parse_vec(s: str):
    return tuple(_parse_fraction(x) for x in s.split(","))


def _parse_ivec(s: str):
    return tuple(int(x) for x in s.split(","))


def _parse_cone(s: str) -> ConeSpec:
    """Accepts the canonical JSON form or 'apex;axis;cos' with commas."""
    s = s.strip()
    if s.startswith("{"):
        return ConeSpec.from_dict(json.loads(s))
    apex, axis, c = s.split(";")
    return cone(_parse_vec(apex), _parse_ivec(axis), _parse_fraction(c))


def _emit(obj, path: str | None = None):
    text = json.dumps(obj, sort_keys=True, indent=2, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _env_default(name: str, fallback, cast):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    return cast(raw)


def _load_config_file(path: str) -> dict:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return json.loads(text)
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _build_run_config(args) -> RunConfig:
    base = {
        "dim": _env_default("dim", 2, int),
        "window_radius": _env_default("window", 32, int),
        "margin": _env_default("margin", 2, int),
        "samples": _env_default("samples", 500, int),
        "seed": _env_default("seed", 1, int),
        "checks": CHECK_ORDER,
    }
    if args.config:
        loaded = _load_config_file(args.config)
        for key in ("dim", "window_radius", "margin", "samples", "seed"):
            if key in loaded:
                try:
                    base[key] = int(loaded[key])
                except ValueError as exc:
                    raise ConfigError(f"config field {key}: {exc}") from exc
        if "checks" in loaded:
            val = loaded["checks"]
            base["checks"] = tuple(val) if isinstance(val, list) else \
                tuple(x for x in str(val).split(",") if x)
    for key, attr in (("dim", "dim"), ("window_radius", "window"),
                      ("margin", "margin"), ("samples", "samples"),
                      ("seed", "seed")):
        val = getattr(args, attr, None)
        if val is not None:
            base[key] = val
    if getattr(args, "checks", None):
        base["checks"] = tuple(x for x in args.checks.split(",") if x)
    return RunConfig(**base)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------

def _cmd_cone(args) -> int:
    if args.cone_cmd == "contains":
        c = _parse_cone(args.cone)
        print(json.dumps({"contains": contains_point(c, _parse_vec(args.point))}))
        return 0
    if args.cone_cmd == "scan":
        c = _parse_cone(args.cone)
        window = LatticeWindow.square(args.window, c.dim,
                                      _parse_ivec(args.center) if args.center else None)
        for pt in lattice_points(c, window):
            print(",".join(str(x) for x in pt))
        return 0
    if args.cone_cmd == "complement":
        print(complement_witness(_parse_cone(args.cone)).to_json())
        return 0
    if args.cone_cmd == "disjoint":
        window = LatticeWindow.square(args.window) if args.window else None
        d = disjoint(_parse_cone(args.a), _parse_cone(args.b), window=window)
        _emit({"status": d.status.value, "witness": d.witness, "method": d.method})
        return 0 if d.status.value != "unknown" else 2
    if args.cone_cmd == "shrink":
        got = shrink_witness(_parse_cone(args.outer), _parse_vec(args.apex),
                             _parse_ivec(args.axis), _parse_fraction(args.cos))
        print(got.to_json())
        return 0
    if args.cone_cmd == "eventual":
        target = _parse_cone(args.target)
        lam = eventual_containment(target, _parse_vec(args.point),
                                   _parse_ivec(args.direction))
        out = {"lambda_star": str(lam)}
        if args.minimal_integer:
            out["minimal_integer"] = minimal_integer_lambda(
                target, _parse_vec(args.point), _parse_ivec(args.direction))
        _emit(out)
        return 0
    raise ConfigError(f"unknown cone subcommand {args.cone_cmd}")


def _cmd_operad(args) -> int:
    out = checks.check_operad(args.samples, args.seed, window_radius=args.window,
                              dim=args.dim)
    _emit({"checked": out.details["checked"], "violations": out.counterexamples},
          args.report)
    return 0 if out.passed else 1


def _cmd_net(args) -> int:
    lat = EdgeLattice(LatticeWindow.square(args.window))
    if args.net_cmd == "perp":
        rep = perp_commutativity_check(_parse_cone(args.a), _parse_cone(args.b), lat)
        _emit(rep.to_dict(), args.report)
        return 0 if rep.passed else 1
    if args.net_cmd == "stabilizers":
        stars, plaqs = stabilizers(lat)
        ops = stars + plaqs
        all_commute = all(commutes(p, q) for p in ops for q in ops)
        squares = all((p * p).scalar() == 1 for p in ops)
        _emit({"stars": len(stars), "plaquettes": len(plaqs),
               "pairwise_commute": all_commute, "squares_identity": squares},
              args.report)
        return 0 if all_commute and squares else 1
    raise ConfigError(f"unknown net subcommand {args.net_cmd}")


def _cmd_sectors(args) -> int:
    if args.sectors_cmd == "braid":
        lat, aux = checks.statistics_configuration(args.window)
        l1, l2 = (SectorLabel.parse(x) for x in args.pair.split(","))
        s1 = make_sector(l1, aux[2], lat)
        s2 = make_sector(l2, aux[2], lat)
        tau = braiding(s1, s2, aux)
        report = {
            "config": {"pair": args.pair, "window": args.window,
                       "orientation": "U1 counterclockwise of U2",
                       "cones": [c.to_dict() for c in aux]},
            "scalar_phase": checks._fmt_scalar(braiding_scalar(tau)),
            "monodromy": checks._fmt_scalar(monodromy(s1, s2, aux)),
            "intertwiner_hex": tau.op.mask_hex(),
            "checks": [
                {"name": "intertwiner-contract", "pass": tau.verify(args.margin)},
                {"name": "scalar", "pass": tau.op.is_scalar()},
            ],
        }
        _emit(report, args.report)
        return 0 if all(c["pass"] for c in report["checks"]) else 1
    if args.sectors_cmd == "holonomy":
        if args.zigzag != "quadrants":
            raise ConfigError("only the 'quadrants' zig-zag is built in")
        lat = EdgeLattice(LatticeWindow.square(args.window))
        zz = default_zigzag()
        s = make_sector(SectorLabel.parse(args.label), zz[0], lat)
        res = holonomy_T(s, zz, lat, args.margin)
        report = {
            "config": {"label": args.label, "window": args.window,
                       "zigzag": args.zigzag},
            "scalar_phase": checks._fmt_scalar(holonomy_residue(res)),
            "intertwiner_hex": res.witness.op.mask_hex(),
            "checks": [
                {"name": "sector-returns", "pass": res.trivial},
                {"name": "intertwiner-contract", "pass": res.witness.verify(args.margin)},
                {"name": "transport-supports", "pass": res.mid_supports_ok},
            ],
        }
        _emit(report, args.report)
        return 0 if all(c["pass"] for c in report["checks"]) else 1
    if args.sectors_cmd == "interchange":
        out = checks.check_interchange(args.configs, args.seed,
                                       window_radius=args.window, margin=args.margin)
        _emit(out.to_dict(), args.report)
        return 0 if out.passed else 1
    if args.sectors_cmd == "assumption1":
        out = checks.check_assumptions(args.configs, args.seed,
                                       window_radius=args.window, margin=args.margin)
        _emit(out.to_dict(), args.report)
        return 0 if out.passed else 1
    raise ConfigError(f"unknown sectors subcommand {args.sectors_cmd}")


def _cmd_verify_all(args) -> int:
    config = _build_run_config(args)
    report = run(config)
    _emit(report, args.report)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="conesectors",
        description="Exact cone geometry, the operad of orthogonal cone "
                    "inclusions, and toric-code sector computations.",
        epilog=f"Flags fall back to {ENV_PREFIX}* environment variables "
               "(e.g. CONESECTORS_SEED) and to --config files.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("cone", help="exact cone geometry queries")
    pcs = pc.add_subparsers(dest="cone_cmd", required=True)
    q = pcs.add_parser("contains")
    q.add_argument("--cone", required=True)
    q.add_argument("--point", required=True)
    q = pcs.add_parser("scan")
    q.add_argument("--cone", required=True)
    q.add_argument("--window", type=int, required=True)
    q.add_argument("--center")
    q = pcs.add_parser("complement")
    q.add_argument("--cone", required=True)
    q = pcs.add_parser("disjoint")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--window", type=int)
    q = pcs.add_parser("shrink")
    q.add_argument("--outer", required=True)
    q.add_argument("--apex", required=True)
    q.add_argument("--axis", required=True)
    q.add_argument("--cos", required=True)
    q = pcs.add_parser("eventual")
    q.add_argument("--target", required=True)
    q.add_argument("--point", required=True)
    q.add_argument("--direction", required=True)
    q.add_argument("--minimal-integer", action="store_true")

    po = sub.add_parser("operad", help="operad law checking")
    pos = po.add_subparsers(dest="operad_cmd", required=True)
    q = pos.add_parser("laws")
    q.add_argument("--dim", type=int, default=2)
    q.add_argument("--samples", type=int, default=500)
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--window", type=int, default=32)
    q.add_argument("--report")

    pn = sub.add_parser("net", help="observable-net checks")
    pns = pn.add_subparsers(dest="net_cmd", required=True)
    q = pns.add_parser("perp")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--window", type=int, default=8)
    q.add_argument("--report")
    q = pns.add_parser("stabilizers")
    q.add_argument("--window", type=int, default=3)
    q.add_argument("--report")

    ps = sub.add_parser("sectors", help="sector computations")
    pss = ps.add_subparsers(dest="sectors_cmd", required=True)
    q = pss.add_parser("braid")
    q.add_argument("--pair", default="e,m")
    q.add_argument("--window", type=int, default=8)
    q.add_argument("--margin", type=int, default=2)
    q.add_argument("--report")
    q = pss.add_parser("holonomy")
    q.add_argument("--label", default="e")
    q.add_argument("--zigzag", default="quadrants")
    q.add_argument("--window", type=int, default=8)
    q.add_argument("--margin", type=int, default=2)
    q.add_argument("--report")
    q = pss.add_parser("interchange")
    q.add_argument("--configs", type=int, default=20)
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--window", type=int, default=16)
    q.add_argument("--margin", type=int, default=2)
    q.add_argument("--report")
    q = pss.add_parser("assumption1")
    q.add_argument("--configs", type=int, default=50)
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--window", type=int, default=8)
    q.add_argument("--margin", type=int, default=2)
    q.add_argument("--report")

    pv = sub.add_parser("verify-all", help="run every check and emit a report")
    pv.add_argument("--dim", type=int)
    pv.add_argument("--window", type=int)
    pv.add_argument("--margin", type=int)
    pv.add_argument("--samples", type=int)
    pv.add_argument("--seed", type=int)
    pv.add_argument("--checks", help="comma-separated check names")
    pv.add_argument("--config", help="JSON or key=value config file")
    pv.add_argument("--report", help="write the JSON report here")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "cone":
            return _cmd_cone(args)
        if args.cmd == "operad":
            return _cmd_operad(args)
        if args.cmd == "net":
            return _cmd_net(args)
        if args.cmd == "sectors":
            return _cmd_sectors(args)
        if args.cmd == "verify-all":
            return _cmd_verify_all(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
