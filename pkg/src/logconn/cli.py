"""Command-line front end: ``logconn {sample,verify,transform,chart,garnier}``.

Exit codes: 0 on success, 1 when a check or computation fails, 2 on usage
or input-format errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import replace

from .algebra import DEFAULT_TOL, EXACT, FLOAT, PoleConfig, scalar
from .connection import LogConnection, from_fuchsian
from .fuchsian import FuchsianSystem
from .garnier import GarnierPoint, garnier_coordinates, garnier_normal_form, garnier_to_connection
from .gauge import replay
from .painleve import (
    F2Point,
    PQPoint,
    link_to_fuchsian,
    point_to_connection,
    shifted_spectral,
    to_pq,
)
from .sampling import (
    make_rng,
    random_connection,
    random_fuchsian,
    random_garnier,
    random_pqpoint,
    random_real,
    to_backend,
)
from .serialize import (
    SchemaError,
    connection_to_json,
    enc,
    from_json,
    move_from_json,
    to_json,
)
from .spectral import SpectralData
from .verify import SUITES, run

log = logging.getLogger("logconn")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# I/O


def _read(path):
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON input: {exc}") from exc


def _write(obj, path):
    text = json.dumps(obj, indent=2)
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _convert_point(pt, backend):
    if backend == EXACT:
        return pt
    conv = lambda z: scalar(z, backend)  # noqa: E731
    spectral = SpectralData(tuple(map(conv, pt.spectral.plus)), tuple(map(conv, pt.spectral.minus)))
    t = PoleConfig(tuple(map(conv, pt.t)))
    if isinstance(pt, GarnierPoint):
        return GarnierPoint(tuple((conv(q), conv(p)) for q, p in pt.pairs), spectral, t)
    return replace(pt, spectral=spectral, t=t, q=conv(pt.q), p=conv(pt.p))


# --------------------------------------------------------------------------
# subcommands


def cmd_sample(args):
    rng = make_rng(args.seed)
    out = []
    for _ in range(args.count):
        if args.kind == "fuchsian":
            obj = random_fuchsian(rng)
            obj = to_backend(obj, args.backend) if args.backend != EXACT else obj
        elif args.kind == "connection":
            obj = random_connection(rng, _shape(args.shape), args.backend)
        elif args.kind == "pqpoint":
            spectral = None
            if args.shifted:
                spectral = shifted_spectral([random_real(rng) for _ in range(4)])
            obj = _convert_point(random_pqpoint(rng, spectral), args.backend)
        else:
            obj = _convert_point(random_garnier(rng, args.poles or 5), args.backend)
        out.append(to_json(obj))
    _write(out[0] if args.count == 1 else out, args.out)
    return EXIT_OK


def _shape(text):
    try:
        d1, d2 = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bundle shape must look like '0,1', got {text!r}") from None
    return d1, d2


def cmd_verify(args):
    suite = args.suite or args.suite_pos or "all"
    if suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    report = run(suite, args.count, args.seed, args.backend, args.tol)
    doc = report.as_dict()
    doc["suite"] = suite
    if "jacobian_ratio" in report.extra:
        doc["jacobian_ratio"] = enc(report.extra["jacobian_ratio"])
    if args.emit_csv and "jacobian_samples" in report.extra:
        with open(args.emit_csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["q_re", "q_im", "p_re", "p_im", "ratio_re", "ratio_im"])
            for s in report.extra["jacobian_samples"]:
                writer.writerow([s.q.real, s.q.imag, s.p.real, s.p.imag, s.ratio.real, s.ratio.imag])
    _write(doc, args.out)
    log.info("%s: %d/%d passed", suite, report.passed, report.total)
    return EXIT_OK if report.ok else EXIT_FAIL


def _load_connection(obj):
    value = from_json(obj)
    if isinstance(value, FuchsianSystem):
        return from_fuchsian(value)
    if isinstance(value, LogConnection):
        return value
    raise UsageError("transform needs a connection or a Fuchsian system")


def cmd_transform(args):
    doc = _read(args.input)
    if isinstance(doc, dict) and "connection" in doc:
        conn_doc, moves = doc["connection"], doc.get("moves", [])
    else:
        conn_doc, moves = doc, []
    if args.moves:
        moves = _read(args.moves)
    if not isinstance(moves, list):
        raise UsageError("the move log must be a JSON list")
    conn = _load_connection(conn_doc)
    start = len(conn.history)
    out = replay(conn, [move_from_json(m) for m in moves], args.tol)
    doc = connection_to_json(out)
    doc["applied"] = doc.get("history", [])[start:]
    _write(doc, args.out)
    return EXIT_OK


def cmd_chart(args):
    value = from_json(_read(args.input))
    if args.direction == "from-pq":
        if not isinstance(value, PQPoint):
            raise UsageError("from-pq needs a chart point")
        result = to_json(point_to_connection(value, args.tol))
    elif args.direction == "to-pq":
        if not isinstance(value, LogConnection):
            raise UsageError("to-pq needs a connection")
        result = to_json(to_pq(value, args.tol))
    else:
        if not isinstance(value, PQPoint):
            raise UsageError("to-cubic needs a chart point")
        image = link_to_fuchsian(value, args.tol)
        if isinstance(image, F2Point):
            result = {"divisor": "E4-", "c0": enc(image.c0), "connection": to_json(image.connection)}
        else:
            result = to_json(image)
    _write(result, args.out)
    return EXIT_OK


def cmd_garnier(args):
    if args.input is None and args.poles:
        value = random_garnier(make_rng(args.seed), args.poles)
    else:
        value = from_json(_read(args.input))
    if isinstance(value, GarnierPoint):
        if args.direction == "normal-form":
            result = to_json(garnier_normal_form(value, args.tol))
        else:
            result = to_json(garnier_to_connection(value, args.tol))
    elif isinstance(value, LogConnection):
        result = to_json(garnier_coordinates(value, args.tol))
    else:
        raise UsageError("garnier needs a Garnier point or a connection on O + O(1)")
    _write(result, args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=(EXACT, FLOAT), default=EXACT)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--in", dest="input", metavar="FILE", help="JSON input (default: stdin)")
    common.add_argument("--out", metavar="FILE", help="JSON output (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="logconn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="emit random valid objects")
    p.add_argument("kind", choices=("fuchsian", "connection", "pqpoint", "garnier"))
    p.add_argument("-n", "--count", type=int, default=1)
    p.add_argument("--n", dest="poles", type=int, help="number of poles for garnier points")
    p.add_argument("--shape", default="0,1", help="bundle type d1,d2 for connections")
    p.add_argument("--shifted", action="store_true",
                   help="chart points with the spectral data accepted by 'chart --direction to-cubic'")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("suite_pos", nargs="?", metavar="SUITE")
    p.add_argument("--suite")
    p.add_argument("-n", "--count", type=int)
    p.add_argument("--emit-csv", metavar="FILE", help="write the Jacobian samples as CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", parents=[common], help="apply a move log to a connection")
    p.add_argument("--moves", metavar="FILE", help="JSON list of moves")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("chart", parents=[common], help="convert between chart points and connections")
    p.add_argument("--direction", choices=("to-pq", "from-pq", "to-cubic"), required=True)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("garnier", parents=[common], help="Garnier point <-> connection")
    p.add_argument("--n", dest="poles", type=int, help="sample a random point with this many poles")
    p.add_argument("--direction", choices=("to-connection", "normal-form"), default="to-connection",
                   help="for Garnier-point input; connections always map to points")
    p.set_defaults(func=cmd_garnier)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.tol <= 0:
        parser.error("--tol must be positive")
    if getattr(args, "count", None) is not None and args.count <= 0:
        parser.error("the sample count must be positive")
    try:
        return args.func(args)
    except (UsageError, SchemaError) as exc:
        print(f"logconn: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"logconn: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
