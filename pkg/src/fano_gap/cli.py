"""Command line front end.

Exit codes: 0 when everything is certified, 2 when something is refuted,
3 when a decision stays undecided at the precision cap, 1 for usage errors.
"""

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__
from . import dh as dhmod
from . import formulas, toric
from .blowup import ModelError, build_model, psi_fn
from .exact import MAX_BITS
from .gap import (SCHEMA, Undecided, bundle, dumps, replay_case_iv, sweep, table_rows)
from .headline import headline
from .threshold import DEFAULT_WIDTH, solve_T

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_UNDECIDED = 0, 1, 2, 3


def _bits(s: str) -> int:
    b = int(s)
    if not 64 <= b <= MAX_BITS:
        raise argparse.ArgumentTypeError("--bits must lie in [64, %d]" % MAX_BITS)
    return b


def _positive_fraction(s: str) -> Fraction:
    try:
        if s.startswith("2^"):
            x = Fraction(2) ** int(s[2:])
        else:
            x = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("expected a rational like 1/1024 or 2^-40, got %r" % s)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dec(x, places: int) -> str:
    return "%.*f" % (places, float(x))


def cmd_verify(args) -> int:
    start = time.time()
    certs = sweep(args.n_max, jobs=args.jobs)
    if args.d is not None:
        certs = [c for c in certs if c.d == args.d]
    grids = replay_case_iv() if args.d is None else None
    extra = {"n_max": args.n_max, "d_filter": args.d}
    if grids is not None:
        extra["case_iv_replay"] = grids
    doc = bundle(certs, extra)
    if args.format == "text":
        lines = ["%3d %3d %-22s %s" % (c.n, c.d, c.route, c.verdict) for c in certs]
        if grids is not None:
            lines.append("case IV grids: %d checked, %d failures" % (grids["checked"], len(grids["failures"])))
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(dumps(doc) + "\n", args.out)
    if args.out:
        meta = {"schema": SCHEMA, "version": __version__, "jobs": args.jobs,
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
                "elapsed_seconds": round(time.time() - start, 3)}
        with open(args.out + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
    if any(c.verdict == "refuted" for c in certs) or (grids and grids["failures"]):
        return EXIT_REFUTED
    if any(c.verdict == "undecided" for c in certs):
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_tables(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    which = args.which
    if which in ("d-of-r", "r-of-d"):
        try:
            rows = table_rows(which, bits=args.bits)
        except Undecided as exc:
            print("undecided: %s" % exc, file=sys.stderr)
            return EXIT_UNDECIDED
        key, val = ("r", "d(r)") if which == "d-of-r" else ("d", "r(d)")
        header = [key, val, "status", "lo", "hi"] + (["decimal (display only)"] if args.decimal else [])
        w.writerow(header)
        for row in rows:
            rec = [row[key], row[val], row["status"],
                   "" if row["lo"] is None else str(row["lo"]), "" if row["hi"] is None else str(row["hi"])]
            if args.decimal:
                rec.append("" if row["lo"] is None else _dec((row["lo"] + row["hi"]) / 2, args.decimal))
            w.writerow(rec)
    elif which == "c-seq":
        n = args.n or 4
        c = formulas.c_sequence(n)
        w.writerow(["r", "c_r"])
        for r, v in enumerate(c):
            w.writerow([r, v])
    elif which == "blowup-vol":
        n = args.n or 5
        w.writerow(["dY", "volume", "segre", "below_2n^n"] + (["decimal (display only)"] if args.decimal else []))
        for dY in range(1, n + 1):
            v = formulas.vol_blowup_hyperplane_subvariety(n, dY)
            rec = [dY, str(v), str(formulas.vol_blowup_segre(n, dY)), v < 2 * n ** n]
            if args.decimal:
                rec.append(_dec(v, args.decimal))
            w.writerow(rec)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_threshold(args) -> int:
    if args.n is None or args.d is None:
        print("threshold needs --n and --d", file=sys.stderr)
        return EXIT_USAGE
    try:
        model = build_model(args.n, args.d, args.ell)
    except ModelError as exc:
        print("model error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    res = solve_T(model, args.width)
    if args.format == "json":
        doc = {"model": {"n": model.n, "d": model.d, "ell": model.ell, "A": str(model.A)}}
        doc.update({"T": [str(res.T.lo), str(res.T.hi)],
                    "phi_at_T": [str(res.phi_at_T.lo), str(res.phi_at_T.hi)],
                    "width": str(res.width), "method": res.method,
                    "phi_T_below_2n^n": res.phi_at_T.hi < 2 * model.n ** model.n})
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        p = args.decimal or 9
        lines = [
            "model n=%d d=%d ell=%d  A=%s" % (model.n, model.d, model.ell, model.A),
            "T      in [%s, %s]" % (_dec(res.T.lo, p), _dec(res.T.hi, p)),
            "phi(T) in [%s, %s]" % (_dec(res.phi_at_T.lo, p), _dec(res.phi_at_T.hi, p)),
            "2n^n   =  %d" % (2 * model.n ** model.n),
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_toric(args) -> int:
    try:
        if args.file:
            with open(args.file) as fh:
                H = toric.parse_text(fh.read())
        else:
            if args.n is None:
                print("toric --builtin needs --n", file=sys.stderr)
                return EXIT_USAGE
            H = toric.builtin(args.builtin or "BlPn-2Pn", args.n)
        geo = toric.volume_barycenter(H)
    except toric.PolytopeError as exc:
        print("polytope error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    doc = geo.to_json()
    doc["n"] = H.n
    doc["reflexive"] = H.is_reflexive_form()
    if doc["reflexive"]:
        dr = toric.delta_toric(H)
        doc["delta"] = str(dr.delta)
        doc["delta_minimizer"] = list(dr.minimizer)
    if args.format == "json":
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = ["vertices: %d" % len(geo.vertices), "volume: %s" % geo.volume,
                 "barycenter: (%s)" % ", ".join(str(a) for a in geo.barycenter)]
        if "delta" in doc:
            lines.append("delta: %s (minimized at %s)" % (doc["delta"], tuple(doc["delta_minimizer"])))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_dh(args) -> int:
    n = args.n or 4
    rows = dhmod.rho_samples(n, args.grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["xi", "rho"] + (["rho decimal (display only)"] if args.decimal else []))
    for x, v in rows:
        w.writerow([str(x), str(v)] + ([_dec(v, args.decimal)] if args.decimal else []))
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_volumes(args) -> int:
    n = args.n or 5
    reports = [formulas.VolumeReport.build("product", {"r": r}, formulas.vol_product(n, r, (n - r + 1) ** (n - r)), n)
               for r in range(1, n)]
    reports += [formulas.hypersurface_report(n, b) for b in range(1, n + 1)]
    if n >= 3:
        reports += [formulas.VolumeReport.build("blowup", {"dY": dY},
                                                formulas.vol_blowup_hyperplane_subvariety(n, dY), n)
                    for dY in range(1, n + 1)]
    h = headline(n)
    doc = {"n": n, "reports": [r.to_json() for r in reports],
           "headline": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in h.items()}}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK if h["ok"] else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fano-gap", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json", "text"), default_fmt="json"):
        sp.add_argument("--bits", type=_bits, default=256, help="starting precision, 64..4096")
        sp.add_argument("--format", choices=fmt, default=default_fmt)
        sp.add_argument("--out", default=None, help="write to this file instead of stdout")
        sp.add_argument("--decimal", type=int, default=0, metavar="PLACES",
                        help="also print decimal approximations")

    sp = sub.add_parser("verify", help="certify phi(T) < 2n^n for all 3 <= d <= n-1")
    sp.add_argument("--n-max", type=int, default=12, help="largest dimension to sweep (>= 5)")
    sp.add_argument("--d", type=int, default=None, help="restrict to one curve degree")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes; output does not depend on it")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tables", help="threshold tables, c_r sequence, blowup volumes (CSV)")
    sp.add_argument("which", choices=("d-of-r", "r-of-d", "c-seq", "blowup-vol"))
    sp.add_argument("--n", type=int, default=None)
    common(sp, fmt=("csv",), default_fmt="csv")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("threshold", help="solve (T - A) phi(T) = Phi(T) for one model")
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--ell", type=int, choices=(1, 2), default=2, help="weight of the blowup")
    sp.add_argument("--width", type=_positive_fraction, default=DEFAULT_WIDTH,
                    help="target enclosure width, e.g. 2^-40 or 1/1000")
    common(sp, default_fmt="text")
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("toric", help="vertices, volume, barycenter and delta of a polytope")
    sp.add_argument("file", nargs="?", default=None, help="polytope in H-format text")
    sp.add_argument("--builtin", choices=toric.BUILTINS, default=None)
    sp.add_argument("--n", type=int, default=None)
    common(sp, default_fmt="text")
    sp.set_defaults(func=cmd_toric)

    sp = sub.add_parser("dh", help="sample the DH density of the quadric (CSV)")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--grid", type=_positive_fraction, default=Fraction(1, 8), help="sample spacing on [0, 2]")
    common(sp, fmt=("csv",), default_fmt="csv")
    sp.set_defaults(func=cmd_dh)

    sp = sub.add_parser("volumes", help="closed-form volumes and the 2n^n ranking for one n")
    sp.add_argument("--n", type=int, default=5)
    common(sp)
    sp.set_defaults(func=cmd_volumes)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n_max", None) is not None and args.n_max < 5:
        print("--n-max must be >= 5", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
