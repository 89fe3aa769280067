"""Command-line front door: solve, lower bounds, generators, verification.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 solver or
resource error. `solve` emits the retraction and a run record (algorithm,
instance digest, stretch, lower bounds, wall time, version) as JSON.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from math import isqrt

from . import __version__
from .core import (Instance, ResourceError, Retraction, SolverError,
                   SubgraphHost, ValidationError, gen_column_deleted_grid,
                   gen_grid, gen_random_planar, parse_instance,
                   parse_retraction, serialize_instance, serialize_retraction,
                   stretch)
from . import bounds as bounds_mod


def _read_instance(path):
    with open(path) as fh:
        return parse_instance(fh.read())


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _digest(instance):
    return hashlib.sha256(serialize_instance(instance).encode()).hexdigest()


def _solve(args):
    inst = _read_instance(args.input)
    t0 = time.monotonic()
    extra = {}
    if args.algo == "planar":
        from .planar import optimal_retract_planar
        collect = {} if args.emit_curves else None
        ret, rep = optimal_retract_planar(inst, collect)
        if args.emit_curves and collect.get("curves") is not None:
            extra["curves"] = [list(p) for p in collect["curves"].paths]
    elif args.algo == "approx":
        from .approx import approx_retract
        ret, rep = approx_retract(inst)
    elif args.algo == "treewidth":
        from .treewidth import optimal_retract_tw
        if args.host_edges:
            with open(args.host_edges) as fh:
                data = json.load(fh)
            host = SubgraphHost(tuple(data["anchors"]),
                                [tuple(e) for e in data["edges"]])
            ret, rep = optimal_retract_tw(inst, host)
            # non-cycle host: the stretch lives in the host metric, so the
            # cycle-metric serializer and bounds do not apply
            record = {
                "algorithm": "treewidth",
                "instance_sha256": _digest(inst),
                "stretch": rep.max_stretch,
                "wall_time_s": round(time.monotonic() - t0, 6),
                "version": __version__,
            }
            text = json.dumps({"assignment": list(ret.assignment),
                               "stretch": rep.max_stretch},
                              sort_keys=True, separators=(",", ":")) + "\n"
            _write(args.output, text)
            sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
            return 0
        ret, rep = optimal_retract_tw(inst)
    elif args.algo == "euclid":
        if inst.points is None:
            raise ValidationError("euclid solver needs a 'points' field")
        from .euclid import PointSet, euclid_retract
        ps = PointSet(tuple(inst.points), inst.anchors)
        res = euclid_retract(ps)
        ret = Retraction(res.assignment)
        record = {
            "algorithm": "euclid",
            "instance_sha256": _digest(inst),
            "ratio_sq": [res.ratio_sq.numerator, res.ratio_sq.denominator],
            "wall_time_s": round(time.monotonic() - t0, 6),
            "version": __version__,
        }
        _write(args.output, serialize_retraction(inst, ret))
        sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
        return 0
    else:  # oracle
        from .oracle import brute_force_optimal
        ret, rep = brute_force_optimal(inst)
    record = {
        "algorithm": args.algo,
        "instance_sha256": _digest(inst),
        "stretch": rep.max_stretch,
        "lower_bounds": {
            "distance": bounds_mod.distance_stretch_lower_bound(inst),
        },
        "wall_time_s": round(time.monotonic() - t0, 6),
        "version": __version__,
    }
    record.update(extra)
    _write(args.output, serialize_retraction(inst, ret))
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")
    return 0


def _lb(args):
    inst = _read_instance(args.input)
    if args.method == "distance":
        value = bounds_mod.distance_stretch_lower_bound(inst)
        out = {"method": "distance", "bound": value}
    elif args.method == "lp":
        value = bounds_mod.lp_stretch_lower_bound(inst)
        out = {"method": "lp", "bound": value}
        k = inst.k
        feasible, cert = bounds_mod.lp_feasible(inst, k)
        if not feasible:
            out["certificate"] = [
                {"cycle": list(c.vertices),
                 "sum": [c.total.numerator, c.total.denominator]}
                for c in cert]
    else:  # sperner
        m = isqrt(inst.n)
        if m * m != inst.n or gen_grid(m).edges != inst.edges:
            raise ValidationError("sperner bound applies to gen_grid "
                                  "instances only")
        from .planar import optimal_retract_planar
        ret, _ = optimal_retract_planar(inst)
        coloring = bounds_mod.retraction_coloring(inst, ret)
        tri = bounds_mod.sperner_certificate(m, coloring)
        value = -(-2 * m // 3)
        out = {"method": "sperner", "bound": value, "triangle": list(tri)}
    print(json.dumps(out, sort_keys=True))
    return 0


def _gen(args):
    if args.family == "grid":
        inst = gen_grid(args.m)
    elif args.family == "colgrid":
        inst = gen_column_deleted_grid(args.m)
    elif args.family == "random-planar":
        inst = gen_random_planar(args.n, args.k, args.seed)
    else:  # random-points
        from .euclid import gen_random_points
        ps = gen_random_points(args.n, args.k, args.seed)
        inst = _points_instance(ps)
    _write(args.output, serialize_instance(inst))
    return 0


def _points_instance(ps):
    """Wrap a PointSet as an Instance carrying coordinates: vertices with the
    anchor polygon as edges (the euclid solver rebuilds its own graph)."""
    from .euclid import delaunay_spanner
    g = delaunay_spanner(ps)
    return Instance(ps.n, g.edges, ps.anchor_indices, points=ps.points)


def _verify(args):
    inst = _read_instance(args.input)
    with open(args.retraction) as fh:
        ret, claimed = parse_retraction(fh.read())
    rep = stretch(inst, ret)   # validates and measures
    if claimed is not None and claimed != rep.max_stretch:
        raise ValidationError("claimed stretch %r, actual %d"
                              % (claimed, rep.max_stretch))
    print(json.dumps({"valid": True, "stretch": rep.max_stretch},
                     sort_keys=True))
    return 0


def _build_parser():
    p = argparse.ArgumentParser(prog="retract",
                                description="minimum-stretch retraction "
                                            "toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("solve", help="run a solver on an instance")
    sp.add_argument("--algo", required=True,
                    choices=["planar", "approx", "treewidth", "euclid",
                             "oracle"])
    sp.add_argument("-i", "--input", required=True)
    sp.add_argument("-o", "--output", default="-")
    sp.add_argument("--emit-curves", action="store_true")
    sp.add_argument("--host-edges",
                    help="JSON {anchors: [...], edges: [[u,v],...]} for "
                         "treewidth with a non-cycle host")
    sp.set_defaults(func=_solve)

    lp = sub.add_parser("lb", help="compute a stretch lower bound")
    lp.add_argument("--method", required=True,
                    choices=["distance", "lp", "sperner"])
    lp.add_argument("-i", "--input", required=True)
    lp.set_defaults(func=_lb)

    gp = sub.add_parser("gen", help="generate an instance")
    gp.add_argument("family",
                    choices=["grid", "colgrid", "random-planar",
                             "random-points"])
    gp.add_argument("--m", type=int, default=3)
    gp.add_argument("--n", type=int, default=5)
    gp.add_argument("--k", type=int, default=8)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("-o", "--output", default="-")
    gp.set_defaults(func=_gen)

    vp = sub.add_parser("verify", help="re-check a retraction file")
    vp.add_argument("-i", "--input", required=True)
    vp.add_argument("-r", "--retraction", required=True)
    vp.set_defaults(func=_verify)
    return p


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except ValidationError as exc:
        sys.stderr.write("validation error: %s\n" % exc)
        return 2
    except (SolverError, ResourceError) as exc:
        sys.stderr.write("solver error: %s\n" % exc)
        return 3
    except OSError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
