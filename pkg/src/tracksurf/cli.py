r"""
The ``tracksurf`` command line tool.

Subcommands::

    validate FILE                        check a .ttk track or .fsf surface
    cones FILE.ttk                       weight-cone summary (JSON)
    vertex-cycles FILE.ttk               extreme rays of the cone (CSV)
    split FILE.ttk BRANCH {R,L}          one split, child written as .ttk
    drive FILE.ttk N                     N measure-driven full splits (.ssl)
    periodicity FILE.ttk N               scan a driven run for a return (JSON)
    saddle-connections FILE.fsf BOUND    holonomies up to length BOUND (CSV)
    k-epsilon FILE.fsf EPSILON           thick-part test + certificate (JSON)
    horocycle-avg FILE.fsf               time average along the horocycle (CSV+JSON)
    sl2z orbit|gap|classify|lebesgue     the linear SL(2, Z) action

Global flags: ``--exact`` / ``--float`` select the arithmetic (exact input
runs exactly by default), ``--seed`` fixes the RNG where one is used,
``--out`` redirects the payload to a file.  Output is deterministic:
rerunning a command reproduces it byte for byte.

Exit status: 0 on success, 1 when a well-posed query answers in the
negative (invalid object, tie in a driven split, no periodic return, not
in the thick part), 2 on unusable input.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .cone import BranchWeights, cone_dimension, is_recurrent, is_transversely_recurrent, vertex_cycles
from .errors import (
    NonGenericMeasureError,
    ParseError,
    StructureError,
    TracksurfError,
)
from .flatsurface import FlowState, as_float_surface
from .formats import (
    parse_number,
    parse_surface,
    parse_track,
    read_text,
    serialize_number,
    serialize_sequence,
    serialize_track,
    write_text,
)
from .nondivergence import horocycle_average, in_K_epsilon, verify_circuit
from .saddle import saddle_connections
from .sl2z import classify_seed, discreteness_gap, lebesgue_invariance_check, orbit_ball
from .splitting import LEFT, RIGHT, detect_periodicity, drive_sequence, split


def _load_any(path):
    text = read_text(path)
    first = text.split(None, 1)[0] if text.split() else ""
    if first == "ttk":
        return ("track",) + parse_track(text)
    if first == "fsf":
        return ("surface", parse_surface(text), None)
    raise ParseError(1, "unrecognized file (expected a ttk or fsf magic line)")


def _load_track(path, need_weights=False):
    kind, obj, weights = _load_any(path)
    if kind != "track":
        raise ParseError(1, "expected a .ttk track file")
    if need_weights and weights is None:
        raise ParseError(0, "this command needs a weights line in the .ttk file")
    return obj, weights


def _load_surface(path, use_float=False, matrix=None):
    kind, obj, _ = _load_any(path)
    if kind != "surface":
        raise ParseError(1, "expected a .fsf surface file")
    if use_float:
        obj = as_float_surface(obj)
    if matrix is not None:
        return FlowState(obj, matrix)
    return obj


def _parse_matrix(tokens, use_float):
    if tokens is None:
        return None
    vals = [parse_number(t) for t in tokens]
    if use_float:
        vals = [float(v) for v in vals]
    return ((vals[0], vals[1]), (vals[2], vals[3]))


def _emit(args, text):
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _json(payload):
    return json.dumps(payload, sort_keys=True, separators=(", ", ": ")) + "\n"


def _num_repr(x):
    return serialize_number(x)


# -- subcommand bodies ----------------------------------------------------


def _cmd_validate(args):
    kind, obj, weights = _load_any(args.file)
    report = obj.validate()
    if weights is not None:
        report = report + [
            "weight violation: %s" % v for v in weights.violations()
        ]
    lines = ["%s: %s" % (kind, "valid" if not report else "invalid")]
    lines += ["  - %s" % r for r in report]
    _emit(args, "\n".join(lines) + "\n")
    return 0 if not report else 1


def _cmd_cones(args):
    track, _ = _load_track(args.file)
    track.require_valid()
    payload = {
        "genus": track.genus,
        "punctures": track.punctures,
        "switches": track.num_switches,
        "branches": track.num_branches,
        "cone_dimension": cone_dimension(track),
        "recurrent": is_recurrent(track)[0],
        "transversely_recurrent": is_transversely_recurrent(track)[0],
    }
    _emit(args, _json(payload))
    return 0


def _cmd_vertex_cycles(args):
    track, _ = _load_track(args.file)
    track.require_valid()
    rows = [",".join("b%d" % b for b in range(track.num_branches))]
    for ray in vertex_cycles(track):
        rows.append(",".join(_num_repr(w) for w in ray.weights))
    _emit(args, "\n".join(rows) + "\n")
    return 0


def _cmd_split(args):
    track, weights = _load_track(args.file)
    track.require_operable()
    direction = RIGHT if args.direction == "R" else LEFT
    rec = split(track, args.branch, direction)
    _emit(args, serialize_track(rec.child))
    return 0


def _cmd_drive(args):
    track, weights = _load_track(args.file, need_weights=True)
    track.require_operable()
    try:
        seq = drive_sequence(track, weights, args.steps)
    except NonGenericMeasureError as err:
        sys.stderr.write(
            "non-generic measure: %s (branch %r, step %r)\n"
            % (err, err.branch, err.step)
        )
        return 1
    _emit(args, serialize_sequence(seq))
    return 0


def _cmd_periodicity(args):
    track, weights = _load_track(args.file, need_weights=True)
    track.require_operable()
    try:
        seq = drive_sequence(track, weights, args.steps)
    except NonGenericMeasureError as err:
        sys.stderr.write(
            "non-generic measure: %s (branch %r, step %r)\n"
            % (err, err.branch, err.step)
        )
        return 1
    hit = detect_periodicity(seq)
    if hit is None:
        _emit(args, _json({"periodic": False, "steps": args.steps}))
        return 1
    i, j, iso = hit
    scale = None
    pushed = iso.apply_measure(seq.steps[i].measure)
    for x, y in zip(pushed.weights, seq.steps[j].measure.weights):
        if y:
            scale = x / y
            break
    expansion = None
    for s in seq.steps[i + 1 : j + 1]:
        expansion = s.ratio if expansion is None else expansion * s.ratio
    payload = {
        "periodic": True,
        "first": i,
        "return": j,
        "period": j - i,
        "measure_scale": _num_repr(scale),
        "period_expansion": _num_repr(expansion),
        "branch_map": list(iso.branch_map),
    }
    _emit(args, _json(payload))
    return 0


def _cmd_saddle_connections(args):
    state = _load_surface(args.file, args.use_float, args.matrix)
    bound = parse_number(args.bound)
    conns = saddle_connections(state, bound, itineraries=False)
    rows = ["x,y,norm2,end0,end1"]
    for c in conns:
        x, y = c.holonomy
        rows.append(
            "%s,%s,%s,%d,%d"
            % (_num_repr(x), _num_repr(y), _num_repr(c.norm2()), c.endpoints[0], c.endpoints[1])
        )
    _emit(args, "\n".join(rows) + "\n")
    return 0


def _cmd_k_epsilon(args):
    state = _load_surface(args.file, args.use_float, args.matrix)
    epsilon = parse_number(args.epsilon)
    report = in_K_epsilon(state, epsilon)
    payload = {
        "epsilon": _num_repr(epsilon),
        "in_k": report.in_k,
        "short_connections": len(report.connections),
    }
    if report.in_k:
        payload["connected"] = report.connected
    else:
        verify_circuit(report)
        payload["circuit"] = [
            [_num_repr(c.holonomy[0]), _num_repr(c.holonomy[1])]
            for c in report.circuit
        ]
        payload["circuit_verified"] = True
    _emit(args, _json(payload))
    return 0 if report.in_k else 1


def _cmd_horocycle_avg(args):
    state = _load_surface(args.file, args.use_float, args.matrix)
    series = horocycle_average(state, args.delta, args.t_max, args.dt)
    rows = ["t,in_k"]
    for t, flag in zip(series.times, series.in_k):
        rows.append("%r,%d" % (t, 1 if flag else 0))
    summary = _json(
        {
            "delta": args.delta,
            "t_max": args.t_max,
            "dt": args.dt,
            "samples": len(series.times),
            "fraction": series.fraction,
        }
    )
    if args.out:
        write_text(args.out, "\n".join(rows) + "\n")
        sys.stdout.write(summary)
    else:
        sys.stdout.write("\n".join(rows) + "\n")
        sys.stdout.write(summary)
    return 0


def _seed_pair(args):
    x = parse_number(args.x)
    y = parse_number(args.y)
    if args.use_float:
        x, y = float(x), float(y)
    return (x, y)


def _cmd_sl2z(args):
    if args.action == "classify":
        cls = classify_seed(_seed_pair(args))
        _emit(args, _json({"kind": cls.kind, "detail": cls.detail}))
        return 0
    if args.action == "orbit":
        pts = orbit_ball(_seed_pair(args), parse_number(args.radius), args.depth)
        rows = ["x,y,word"]
        for p in pts:
            rows.append(
                "%s,%s,%s" % (_num_repr(p.coordinates[0]), _num_repr(p.coordinates[1]), p.word or "e")
            )
        _emit(args, "\n".join(rows) + "\n")
        return 0
    if args.action == "gap":
        seed = _seed_pair(args)
        pts = orbit_ball(seed, parse_number(args.radius), args.depth)
        payload = {
            "seed": [_num_repr(seed[0]), _num_repr(seed[1])],
            "mode": "float" if any(isinstance(c, float) for c in seed) else "exact",
            "radius": _num_repr(parse_number(args.radius)),
            "depth": args.depth,
            "count": len(pts),
            "gap": discreteness_gap(pts),
        }
        _emit(args, _json(payload))
        return 0
    # lebesgue
    g = _parse_matrix(args.matrix, use_float=False)
    box = tuple(float(parse_number(t)) for t in args.box)
    disc = lebesgue_invariance_check(g, box, args.samples, seed=args.seed)
    _emit(
        args,
        _json({"discrepancy": disc, "samples": args.samples, "seed": args.seed}),
    )
    return 0


# -- parser ----------------------------------------------------------------


def _build_parser():
    top = argparse.ArgumentParser(
        prog="tracksurf",
        description="train tracks, splitting sequences, and flat-surface dynamics",
    )
    top.add_argument("--version", action="version", version="tracksurf %s" % __version__)
    top.add_argument(
        "--exact",
        dest="use_float",
        action="store_false",
        default=False,
        help="keep exact arithmetic when the input is exact (default)",
    )
    top.add_argument(
        "--float",
        dest="use_float",
        action="store_true",
        help="coerce input coordinates to floats",
    )
    top.add_argument("--seed", type=int, default=0, help="RNG seed where sampling is used")
    top.add_argument("--out", default=None, help="write the payload to this file")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a .ttk or .fsf file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("cones", help="weight-cone summary of a track")
    p.add_argument("file")
    p.set_defaults(func=_cmd_cones)

    p = sub.add_parser("vertex-cycles", help="extreme rays of the transverse cone")
    p.add_argument("file")
    p.set_defaults(func=_cmd_vertex_cycles)

    p = sub.add_parser("split", help="split a track at a large branch")
    p.add_argument("file")
    p.add_argument("branch", type=int)
    p.add_argument("direction", choices=("R", "L"))
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("drive", help="measure-driven full splitting run")
    p.add_argument("file")
    p.add_argument("steps", type=int)
    p.set_defaults(func=_cmd_drive)

    p = sub.add_parser("periodicity", help="scan a driven run for a projective return")
    p.add_argument("file")
    p.add_argument("steps", type=int)
    p.set_defaults(func=_cmd_periodicity)

    p = sub.add_parser("saddle-connections", help="holonomies up to a length bound")
    p.add_argument("file")
    p.add_argument("bound")
    p.add_argument("--matrix", nargs=4, metavar=("A", "B", "C", "D"), default=None)
    p.set_defaults(func=_cmd_saddle_connections)

    p = sub.add_parser("k-epsilon", help="thick-part membership with certificate")
    p.add_argument("file")
    p.add_argument("epsilon")
    p.add_argument("--matrix", nargs=4, metavar=("A", "B", "C", "D"), default=None)
    p.set_defaults(func=_cmd_k_epsilon)

    p = sub.add_parser("horocycle-avg", help="thick-part time average along the horocycle")
    p.add_argument("file")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--matrix", nargs=4, metavar=("A", "B", "C", "D"), default=None)
    p.set_defaults(func=_cmd_horocycle_avg)

    p = sub.add_parser("sl2z", help="the linear SL(2, Z) action on the plane")
    act = p.add_subparsers(dest="action", required=True)

    q = act.add_parser("orbit", help="orbit points in a norm ball (CSV)")
    q.add_argument("x")
    q.add_argument("y")
    q.add_argument("--radius", required=True)
    q.add_argument("--depth", type=int, required=True)
    q.set_defaults(func=_cmd_sl2z)

    q = act.add_parser("gap", help="minimum pairwise distance of an orbit ball (JSON)")
    q.add_argument("x")
    q.add_argument("y")
    q.add_argument("--radius", required=True)
    q.add_argument("--depth", type=int, required=True)
    q.set_defaults(func=_cmd_sl2z)

    q = act.add_parser("classify", help="seed dichotomy (JSON)")
    q.add_argument("x")
    q.add_argument("y")
    q.set_defaults(func=_cmd_sl2z)

    q = act.add_parser("lebesgue", help="Monte-Carlo area-invariance check (JSON)")
    q.add_argument("--matrix", nargs=4, metavar=("A", "B", "C", "D"), required=True)
    q.add_argument("--box", nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX"), required=True)
    q.add_argument("--samples", type=int, default=10**6)
    q.set_defaults(func=_cmd_sl2z)

    return top


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "matrix", None) is not None and args.command != "sl2z":
        args.matrix = _parse_matrix(args.matrix, args.use_float)
    try:
        return args.func(args)
    except (ParseError, StructureError, OSError) as err:
        sys.stderr.write("error: %s\n" % err)
        return 2
    except TracksurfError as err:
        sys.stderr.write("error: %s\n" % err)
        return 1
    except (ValueError, TypeError) as err:
        sys.stderr.write("error: %s\n" % err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
