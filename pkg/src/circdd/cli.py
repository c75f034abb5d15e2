"""ddc: command-line front end.

Results go to stdout, diagnostics and progress to stderr.  Exit status is
0 on success, 1 when a verification fails and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .bounds import bounds_record
from .errors import InputError, ResidueClassUnavailable, VerificationError
from .families import construct_family
from .graph import diameter, make_graph
from .lattice import DIRECT_MAX_K, covering_check, lattice_basis, orthant_representatives, quotient_multipliers
from .search import SearchLimits, SearchProgress, search_extremal
from .spectra import DEFAULT_TAU, SPECTRUM_MAX_N, apply_multiplier, inertia, multiplier_isomorphic, spectrum
from .tables import TABLE_NAMES, build_table, render


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def parse_range(text: str) -> list[int]:
    """'5', '2..7' or '2,4,6'."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return parse_int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")


def default_threads() -> int:
    env = os.environ.get("DDC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _emit_rows(fmt: str, columns: list[str], rows: list[list], records: list[dict]) -> str:
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return buf.getvalue()
    cells = [[str(c) for c in r] for r in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) if cells else len(c) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _gens_text(g) -> str:
    return ",".join(map(str, g))


# ---------------------------------------------------------------- commands

def cmd_diameter(args) -> int:
    if args.record:
        src = Path(args.record).read_text()
        rec = json.loads(src)
        if isinstance(rec, list):
            if len(rec) != 1:
                raise InputError("record file must hold exactly one record")
            rec = rec[0]
        n, gens, self_inv = rec["n"], rec["generators"], rec["degree"] % 2 == 1
        iso, prov = rec.get("iso_class"), rec.get("provenance", "input")
    else:
        if args.n is None or args.gens is None:
            raise InputError("give --n and --gens, or --record")
        n, gens, self_inv, iso, prov = args.n, args.gens, args.self_inverse, None, "input"
    g = make_graph(n, gens, self_inverse=self_inv)
    k = diameter(g)
    pairs = list(g.generator_set.pairs)
    rec = {"n": g.n, "degree": g.degree, "generators": pairs, "diameter": k,
           "iso_class": iso, "provenance": prov}
    if args.format == "human":
        half = f" + {g.n // 2} (self-inverse)" if g.generator_set.has_half else ""
        out = f"C({g.n}; {_gens_text(pairs)}{half}): degree {g.degree}, diameter {k}\n"
    elif args.format == "json":
        out = json.dumps(rec, indent=2) + "\n"
    else:
        row = [g.n, g.degree, _gens_text(pairs), k, "" if iso is None else iso, prov]
        out = _emit_rows("csv", ["n", "degree", "generators", "diameter", "iso_class", "provenance"], [row], [])
    sys.stdout.write(out)
    return 0


def cmd_construct(args) -> int:
    records = []
    failed = False
    for k in args.k:
        try:
            recs = construct_family(args.degree, k, args.iso_class, args.set,
                                    verify=not args.no_verify)
        except VerificationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            failed = True
            continue
        if not args.all_sets and args.set is None:
            seen, keep = set(), []
            for r in recs:
                key = (r.iso_class, r.provenance.split(" ")[0] if r.iso_class is None else "")
                if key not in seen:
                    seen.add(key)
                    keep.append(r)
            recs = keep
        records.extend(recs)
    cols = ["Degree d", "Diameter k", "order", "Isomorphism class", "Set", "Generator set",
            "Status", "Verified", "Provenance"]
    rows = [[r.degree, r.diameter, r.order, "-" if r.iso_class is None else r.iso_class, r.variant,
             _gens_text(r.gens), r.extremal_status.value,
             {True: "yes", None: "skipped"}.get(r.verified, "no"), r.provenance] for r in records]
    sys.stdout.write(_emit_rows(args.format, cols, rows, [r.as_json() for r in records]))
    return 1 if failed else 0


def cmd_bounds(args) -> int:
    cols = ["Degree d", "Diameter k", "Dimension f", "Lee sphere S(f,k)",
            "Upper bound M_AC(d,k)", "Lower bound CJ(d,k)", "CJ generator set"]
    rows, recs = [], []
    for k in args.k:
        b = bounds_record(args.degree, k)
        wit = list(b.cj_witness.gens) if b.cj_witness is not None else None
        rows.append([b.degree, b.diameter, b.dimension, b.lee_sphere, b.upper,
                     "-" if b.lower is None else b.lower, "-" if wit is None else _gens_text(wit)])
        recs.append({"degree": b.degree, "diameter": b.diameter, "dimension": b.dimension,
                     "lee_sphere": b.lee_sphere, "upper": b.upper, "lower": b.lower,
                     "cj_witness": wit, "cj_a": b.cj_a})
    sys.stdout.write(_emit_rows(args.format, cols, rows, recs))
    return 0


def _progress_printer(quiet: bool):
    last = [0.0]

    def show(p: SearchProgress) -> None:
        now = time.monotonic()
        if quiet or (now - last[0] < 1.0 and p.units_done != p.units_total):
            return
        last[0] = now
        print(f"n={p.n} units {p.units_done}/{p.units_total} sets={p.sets_tested} "
              f"rate={p.rate:.0f}/s elapsed={p.elapsed:.1f}s", file=sys.stderr)

    return show


def cmd_search(args) -> int:
    res = search_extremal(
        args.degree, args.k, args.ceiling, args.mode,
        full_enumeration=args.audit, threads=args.threads, checkpoint=args.checkpoint,
        progress=_progress_printer(args.quiet), check_spectra=not args.no_spectra,
    )
    rec = {"degree": res.degree, "diameter": res.diameter, "extremal_order": res.extremal_order,
           "ceiling": res.ceiling, "classes": [list(w.pairs) for w in res.witnesses],
           "exhaustive": res.exhaustive, "audited": res.audited, "sets_tested": res.sets_tested,
           "orders_tried": res.orders_tried, "spectrally_distinct": res.spectrally_distinct}
    if args.format == "json":
        sys.stdout.write(json.dumps(rec, indent=2) + "\n")
    elif args.format == "csv":
        cols = ["Degree d", "Diameter k", "order", "Distinct solutions", "Generator set", "Limit of search"]
        rows = [[res.degree, res.diameter, res.extremal_order, res.class_count, _gens_text(w.pairs), res.ceiling]
                for w in res.witnesses]
        sys.stdout.write(_emit_rows("csv", cols, rows, []))
    else:
        scope = "exhaustive" if res.exhaustive else "first witness"
        lines = [f"degree {res.degree}, diameter {res.diameter}: largest order {res.extremal_order} "
                 f"({scope} search up to {res.ceiling}, {res.sets_tested} sets tested)",
                 f"distinct solutions up to multiplier isomorphism: {res.class_count}"]
        lines += [f"  {_gens_text(w.pairs)}" for w in res.witnesses]
        if res.spectrally_distinct is not None:
            lines.append(f"spectra pairwise distinct: {res.spectrally_distinct}")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_spectrum(args) -> int:
    g = make_graph(args.n, args.gens, self_inverse=args.self_inverse)
    s = spectrum(g, tolerance=args.tau, allow_large=args.allow_long)
    ine = inertia(s)
    ev = s.sorted()
    rec = {"n": g.n, "degree": g.degree, "generators": list(g.generator_set.pairs),
           "tau": args.tau, "positive": ine.positive, "zero": ine.zero, "negative": ine.negative,
           "min": float(ev[0]), "max": float(ev[-1])}
    if args.eigenvalues:
        rec["eigenvalues"] = [float(x) for x in s.eigenvalues]
    if args.format == "json":
        sys.stdout.write(json.dumps(rec, indent=2) + "\n")
    elif args.format == "csv":
        cols = ["n", "Generator set", "Positive", "Zero", "Negative", "Smallest eigenvalue", "Largest eigenvalue"]
        sys.stdout.write(_emit_rows("csv", cols, [[g.n, _gens_text(rec["generators"]), ine.positive, ine.zero,
                                                    ine.negative, repr(rec["min"]), repr(rec["max"])]], []))
    else:
        out = (f"C({g.n}; {_gens_text(rec['generators'])}): inertia (+{ine.positive}, "
               f"0:{ine.zero}, -{ine.negative}) at tau={args.tau:g}; "
               f"eigenvalues in [{rec['min']:.12g}, {rec['max']:.12g}]\n")
        if args.eigenvalues:
            out += "".join(f"{l} {x!r}\n" for l, x in enumerate(s.eigenvalues, start=1))
        sys.stdout.write(out)
    return 0


def cmd_iso(args) -> int:
    if args.multiplier is not None:
        img = apply_multiplier(args.n, args.gens_a, args.multiplier)
        rec = {"n": args.n, "multiplier": args.multiplier, "generators": list(img.gens)}
        text = f"{args.multiplier} * {{{_gens_text(args.gens_a)}}} = {{{_gens_text(img.gens)}}} (mod {args.n})\n"
    else:
        if args.gens_b is None:
            raise InputError("give --gens-b or --multiplier")
        u = multiplier_isomorphic(args.n, args.gens_a, args.gens_b)
        rec = {"n": args.n, "isomorphic": u is not None, "multiplier": u}
        text = (f"isomorphic via multiplier {u}\n" if u is not None
                else "no multiplier maps one set onto the other\n")
    if args.format == "json":
        sys.stdout.write(json.dumps(rec, indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_emit_rows("csv", list(rec), [[_gens_text(v) if isinstance(v, list) else v
                                                         for v in rec.values()]], []))
    else:
        sys.stdout.write(text)
    return 0


def cmd_lattice(args) -> int:
    out, recs = [], []
    failed = False
    for k in args.k:
        lat = lattice_basis(k)
        mult = quotient_multipliers(lat)
        gens = mult.generators(lat.index)
        rec = {"k": k, "parity": lat.parity, "lat_a": lat.lat_a, "basis": [list(v) for v in lat.basis],
               "index": lat.index, "multipliers": list(mult.multipliers), "generators": list(gens)}
        if args.orthants:
            o = orthant_representatives(lat)
            rec["orthants"] = {f"v{i}": list(v) for i, v in enumerate(o.derived, start=5)}
        if args.verify:
            method = args.method or ("both" if k <= DIRECT_MAX_K else "quotient_bfs")
            cert = covering_check(k, method)
            rec["covered"] = cert.covered
            rec["certificate"] = cert.summary()
            failed |= not cert.covered
        recs.append(rec)
        if args.format == "human":
            out.append(f"k={k} ({lat.parity}, a={lat.lat_a}) index {lat.index}")
            out += [f"  v{i} = {tuple(v)}" for i, v in enumerate(lat.basis, start=1)]
            out.append(f"  quotient Z_{lat.index}, generators {_gens_text(gens)}")
            if args.orthants:
                out += [f"  {name} = {tuple(v)}" for name, v in rec["orthants"].items()]
            if args.verify:
                out.append(f"  covering {str(rec['covered']).lower()}: {rec['certificate']}")
    if args.format == "json":
        sys.stdout.write(json.dumps(recs if len(recs) > 1 else recs[0], indent=2) + "\n")
    elif args.format == "csv":
        cols = ["Diameter k", "Index", "Generator set", "Covered"]
        rows = [[r["k"], r["index"], _gens_text(r["generators"]),
                 str(r.get("covered", "-")).lower()] for r in recs]
        sys.stdout.write(_emit_rows("csv", cols, rows, []))
    else:
        sys.stdout.write("\n".join(out) + "\n")
    return 1 if failed else 0


def cmd_table(args) -> int:
    sys.stdout.write(render(build_table(args.name, allow_long=args.allow_long), args.format))
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--threads", type=int, default=None,
                        help="parallel workers (default: $DDC_THREADS or CPU count)")

    p = argparse.ArgumentParser(prog="ddc", description="Degree-diameter tools for circulant graphs.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    s = sub.add_parser("diameter", parents=[common], help="diameter of a circulant graph")
    s.add_argument("--n", type=int)
    s.add_argument("--gens", type=parse_int_list)
    s.add_argument("--self-inverse", action="store_true", help="adjoin n/2 (odd degree)")
    s.add_argument("--record", metavar="PATH", help="read n and generators from a JSON record")
    s.set_defaults(func=cmd_diameter)

    s = sub.add_parser("construct", parents=[common], help="build family graphs")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--k", type=parse_range, required=True, help="diameter or range a..b")
    s.add_argument("--class", dest="iso_class", type=int, choices=(1, 2))
    s.add_argument("--set", type=int, choices=(1, 2, 3, 4))
    s.add_argument("--all-sets", action="store_true", help="emit every generator set, not one per class")
    s.add_argument("--no-verify", action="store_true", help="skip the BFS diameter check")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("bounds", parents=[common], help="Lee-sphere, M_AC and CJ bounds")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--k", type=parse_range, required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", parents=[common], help="exhaustive search for extremal graphs")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ceiling", type=int, help="largest order to try (default M_AC)")
    s.add_argument("--mode", choices=("exhaustive", "first_witness"), default="exhaustive")
    s.add_argument("--audit", action="store_true", help="enumerate every set (no divisor pruning)")
    s.add_argument("--checkpoint", metavar="PATH")
    s.add_argument("--limits", metavar="PATH", help="JSON map degree -> largest desk-scale k")
    s.add_argument("--allow-long", action="store_true")
    s.add_argument("--no-spectra", action="store_true", help="skip the spectral distinctness check")
    s.add_argument("--quiet", action="store_true", help="no progress on stderr")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues and inertia")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gens", type=parse_int_list, required=True)
    s.add_argument("--self-inverse", action="store_true")
    s.add_argument("--tau", type=float, default=DEFAULT_TAU, help="zero threshold")
    s.add_argument("--eigenvalues", action="store_true", help="also print every eigenvalue")
    s.add_argument("--allow-long", action="store_true", help=f"permit n > {SPECTRUM_MAX_N}")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("iso", parents=[common], help="multiplier isomorphism")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gens-a", type=parse_int_list, required=True)
    s.add_argument("--gens-b", type=parse_int_list)
    s.add_argument("--multiplier", type=int, help="apply this unit to --gens-a")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("lattice", parents=[common], help="degree-8 lattice construction")
    s.add_argument("--k", type=parse_range, required=True)
    s.add_argument("--verify", action="store_true", help="check the covering S_{4,k} + L_k = Z^4")
    s.add_argument("--method", choices=("quotient_bfs", "direct_lattice", "both"))
    s.add_argument("--orthants", action="store_true", help="show the derived orthant vectors")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("table", parents=[common], help="regenerate a published table")
    s.add_argument("--name", required=True, type=str.upper, choices=TABLE_NAMES)
    s.add_argument("--allow-long", action="store_true", help="include the slow 5H rows")
    s.set_defaults(func=cmd_table)
    return p


def _validate(p: argparse.ArgumentParser, args) -> None:
    if args.threads is None:
        args.threads = default_threads()
    elif args.threads < 1:
        p.error("--threads must be >= 1")
    if args.command == "search":
        limits = SearchLimits.from_file(args.limits) if args.limits else SearchLimits()
        if not args.allow_long and not limits.allows(args.degree, args.k):
            p.error(f"search for degree {args.degree}, k={args.k} exceeds the desk-scale limit "
                    f"(k <= {limits.max_k.get(args.degree, 0)}); pass --allow-long to run it")
    if args.command == "spectrum" and args.n > SPECTRUM_MAX_N and not args.allow_long:
        p.error(f"n={args.n} exceeds {SPECTRUM_MAX_N}; pass --allow-long")
    if args.command == "lattice" and args.method == "direct_lattice" and max(args.k) > DIRECT_MAX_K:
        p.error(f"--method direct_lattice supports k <= {DIRECT_MAX_K}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    p = build_parser()
    args = p.parse_args(argv)
    _validate(p, args)
    try:
        return args.func(args)
    except (InputError, ResidueClassUnavailable) as exc:
        print(f"ddc {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"ddc {args.command}: verification failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"ddc {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
