"""Command-line front end: verify files, run constructions, searches, tables
and bounds.

Exit codes: 0 success, 1 a verified negative answer (or out-of-range
construction parameters, or a search that hit its limit), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .constructions import (
    OutOfRange,
    double_star,
    near_complete_construction,
    near_complete_range,
    tau_construction_range,
    tau_critical_construction,
)
from .hypercore import UHGFormatError, complement_hypergraph, complementary_hypergraph, read_uhg, write_uhg
from .search import (
    PROV_DOUBLE_STAR,
    PROV_NEAR_COMPLETE,
    PROV_TAU,
    SearchConfig,
    Status,
    default_threads,
    existence_table,
    solve_existence,
)
from .transversal import is_uniquely_tau_critical, nonexistence_bound, tau_side, transversal_number, tuza_bound
from .verify import verify_complementary, verify_uniquely_saturated

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


def _record(command: str, params: dict, **extra) -> dict:
    rec = {"command": command, "params": params, "version": __version__}
    rec.update(extra)
    return rec


def _write_json(path: Path, data: dict) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        H = read_uhg(args.path)
    except UHGFormatError as e:
        print(f"error: {args.path}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.mode == "saturated":
            if args.r is None:
                raise ValueError("--r is required in saturated mode")
            verdict = verify_uniquely_saturated(H, args.r)
        elif args.mode == "complementary":
            if args.s is None:
                raise ValueError("--s is required in complementary mode")
            verdict = verify_complementary(H, H.k if args.t is None else args.t, args.s)
        else:
            verdict = tau_side(H, args.r) if args.r is not None else is_uniquely_tau_critical(H, args.tau)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(verdict.to_json()))
    else:
        print(verdict.describe())
    return EXIT_OK if verdict.ok else EXIT_NO


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    t0 = time.monotonic()
    try:
        if args.theorem == "double-star":
            params = {"n": args.n, "k": args.k, "r": args.r}
            _need(params)
            R = double_star(args.n, args.k, args.r)
            out, theorem = R, PROV_DOUBLE_STAR
            verdict = verify_complementary(R, R.k, args.r - args.k)
            Hc = complement_hypergraph(complementary_hypergraph(R))
        elif args.theorem == "tau-critical":
            params = {"k": args.k, "ell": args.ell, "n": args.n}
            _need(params)
            Hc = tau_critical_construction(args.k, args.ell, args.n)
            out, theorem = Hc, PROV_TAU
            verdict = tau_side(Hc, args.n - args.ell)
        else:
            params = {"k": args.k, "n": args.n}
            _need(params)
            Hc = near_complete_construction(args.k, args.n)
            out, theorem = Hc, PROV_NEAR_COMPLETE
            verdict = tau_side(Hc, args.n - 1)
    except OutOfRange as e:
        print(f"out of range: {e}", file=sys.stderr)
        return EXIT_NO
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    # the object is re-verified from scratch before anything is written
    if not verdict.ok:
        print(f"construction failed verification: {verdict.describe()}", file=sys.stderr)
        return EXIT_NO
    tau = transversal_number(Hc).tau
    stem = args.out or "{}-{}".format(args.theorem, "-".join(f"{k}{v}" for k, v in params.items()))
    uhg = Path(stem).with_suffix(".uhg")
    write_uhg(out, uhg, comment=f"{args.theorem} {json.dumps(params, sort_keys=True)}")
    rec = _record("construct", params, theorem=theorem, verdict=verdict.to_json(), tau=tau,
                  certificate_path=str(uhg),
                  stats={"edges": len(out.edges), "uniformity": out.k,
                         "seconds": round(time.monotonic() - t0, 3)})
    _write_json(uhg.with_suffix(".json"), rec)
    print(f"wrote {uhg} ({len(out.edges)} edges, {out.k}-uniform, tau = {tau})")
    return EXIT_OK


def _need(params: dict) -> None:
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise ValueError("missing " + ", ".join(f"--{m}" for m in missing))


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def cmd_search(args) -> int:
    cfg = SearchConfig(symmetry=args.symmetry, all_solutions=args.all,
                       node_limit=args.node_limit, time_limit=args.time_limit,
                       parallel=args.parallel or default_threads())
    try:
        res = solve_existence(args.n, args.t, args.s, cfg)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    params = {"n": args.n, "t": args.t, "s": args.s, "k": res.k, "r": res.r}
    print(f"{res.status.value} n={args.n} t={args.t} s={args.s} (k={res.k}, r={res.r}) "
          f"nodes={res.stats.nodes} time={res.stats.wall_time:.2f}s")
    paths = []
    if args.out:
        certs = res.all_certificates if args.all else ([res.certificate] if res.certificate else [])
        for idx, R in enumerate(certs):
            p = Path(f"{args.out}-{idx}.uhg" if args.all else f"{args.out}.uhg")
            write_uhg(R, p, comment=f"search n={args.n} t={args.t} s={args.s}")
            paths.append(str(p))
        rec = _record("search", params, status=res.status.value, certificates=paths,
                      stats=res.stats.to_json())
        _write_json(Path(f"{args.out}.json"), rec)
    if args.all and res.all_certificates:
        print(f"{len(res.all_certificates)} solutions")
    return EXIT_NO if res.status is Status.LIMIT else EXIT_OK


# ---------------------------------------------------------------------------
# table and bounds
# ---------------------------------------------------------------------------

def cmd_table(args) -> int:
    table = existence_table(args.k, range(1, args.max_ell + 1), range(1, args.max_s + 1),
                            budget=args.budget, certify=args.certify,
                            parallel=args.parallel or default_threads(),
                            symmetry=args.symmetry)
    text = json.dumps(table.to_json(), indent=2) + "\n" if args.format == "json" else table.to_tsv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    k, ell = args.k, args.ell
    print(f"tuza_bound(k={k}, tau={ell + 1}) = {tuza_bound(k, ell + 1)}")
    print(f"nonexistence_bound(k={k}, ell={ell}) = {nonexistence_bound(k, ell)}"
          f"  (no examples with n >= this value and n - r = {ell})")
    if ell == 1 and k >= 3:
        lo, hi = near_complete_range(k)
        print(f"n - r = 1 requires n <= (k+2)^2/4 = {hi}; near-complete construction covers {lo} <= n <= {hi}")
    if k >= 3:
        from .johnson import chromatic_number
        res = chromatic_number(ell + k - 1, k - 1, args.chi_budget)
        lo, hi = tau_construction_range(k, ell, res.value)
        exact = "" if res.exact else " (chromatic number is an upper bound)"
        print(f"tau-critical construction covers {lo} <= n <= {hi}{exact}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uksat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a .uhg file")
    v.add_argument("path")
    v.add_argument("--mode", choices=["saturated", "complementary", "tau-critical"], required=True)
    v.add_argument("--r", type=int, help="clique size (saturated; tau-critical with tau = n-r+1)")
    v.add_argument("--t", type=int, help="uniformity of R (complementary; default: from file)")
    v.add_argument("--s", type=int, help="s = r - k (complementary)")
    v.add_argument("--tau", type=int, help="expected tau (tau-critical)")
    v.add_argument("--json", action="store_true", help="print the verdict as JSON")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="build and certify a construction")
    c.add_argument("theorem", choices=["double-star", "tau-critical", "near-complete"])
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--ell", type=int)
    c.add_argument("-o", "--out", help="output stem; writes STEM.uhg and STEM.json")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="exact existence search for (n, t, s)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--parallel", type=int, default=None, metavar="N",
                   help="worker processes (default: UKSAT_THREADS or 1)")
    s.add_argument("--symmetry", action="store_true", help="fix {1..t} as an edge with private subset {1..t-s}")
    s.add_argument("--all", action="store_true", help="enumerate all solutions (n <= 7)")
    s.add_argument("--time-limit", type=float, default=None)
    s.add_argument("--node-limit", type=int, default=None)
    s.add_argument("-o", "--out", help="output stem for certificate(s) and JSON record")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("table", help="existence table for one uniformity")
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--max-ell", type=int, default=5)
    t.add_argument("--max-s", type=int, default=6)
    t.add_argument("--budget", type=float, default=60.0, help="seconds per searched cell")
    t.add_argument("--format", choices=["tsv", "json"], default="tsv")
    t.add_argument("--certify", action="store_true", help="build and verify construction cells")
    t.add_argument("--parallel", type=int, default=None, metavar="N")
    t.add_argument("--symmetry", action="store_true", help="break symmetry in searches (see search --symmetry)")
    t.add_argument("-o", "--out")
    t.set_defaults(func=cmd_table)

    b = sub.add_parser("bounds", help="bounds and construction ranges for (k, ell)")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--ell", type=int, required=True)
    b.add_argument("--chi-budget", type=int, default=200_000)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
