"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 search exhausted,
3 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .apsearch import (APCache, DEFAULT_MAX_D, DEFAULT_MAX_P, SearchBudget, SearchExhausted,
                       find_ap_cached)
from .errors import PrimeLabelError
from .graph import (complete_bipartite, embed_hypercube, hypercube, parse_edge_list,
                    serialize_edge_list)
from .labeling import (MODES, WINDOWED, construct_labeling, labeling_from_json,
                       plan_construction, restrict_to_subgraph, verify_labeling)
from .oracle import check_paths_prime

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_EXHAUSTED = 2
EXIT_USAGE = 3

DEMO_MAX_DIM = 4

log = logging.getLogger("primelabel")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return value


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _budget(args):
    return SearchBudget(args.max_d, args.max_p, args.time_limit)


def _cache(args):
    return None if args.no_cache else APCache()


def _label_kmn(m, n, mode, args):
    """Plan, search, construct and verify; never returns an unverified labeling."""
    plan = plan_construction(m, n, mode)
    ap = None
    if plan.required_len:
        ap = find_ap_cached(plan.required_len, plan.mode == WINDOWED, _budget(args),
                            _cache(args), workers=args.workers)
    labeling = construct_labeling(plan, ap)
    g, _ = complete_bipartite(m, n)
    report = verify_labeling(g, labeling)
    if not report.passed:
        raise RuntimeError(f"constructed labeling failed verification: {report.violations}")
    return labeling


def cmd_gen(args):
    if args.kind == "kmn":
        if len(args.params) != 2:
            raise UsageError("gen kmn takes M N")
        g, _ = complete_bipartite(*args.params)
    else:
        if len(args.params) != 1:
            raise UsageError("gen hypercube takes N")
        g = hypercube(args.params[0])
    _emit(serialize_edge_list(g), args.output)
    return EXIT_OK


def cmd_label(args):
    m, n = args.kmn
    labeling = _label_kmn(m, n, args.mode, args)
    _emit(labeling.to_json(), args.output)
    log.info("K_{%d,%d} labeled (%s mode), verified", m, n, args.mode)
    return EXIT_OK


def cmd_verify(args):
    g = parse_edge_list(Path(args.graph).read_text())
    labeling = labeling_from_json(Path(args.labeling).read_text())
    report = verify_labeling(g, labeling)
    _emit(_dumps(report.as_dict()), args.output)
    log.info("verification %s", "PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_find_ap(args):
    cache = _cache(args)
    ap = find_ap_cached(args.len, args.p_gt_d, _budget(args), cache, workers=args.workers)
    _emit(_dumps(ap.as_dict()), args.output)
    return EXIT_OK


def cmd_demo(args):
    n = args.n
    if n < 1:
        raise UsageError("dimension must be >= 1")
    if n > DEMO_MAX_DIM and not args.force:
        raise UsageError(f"demo is limited to n <= {DEMO_MAX_DIM}; pass --force to override")
    qn = hypercube(n)
    emb = embed_hypercube(n)
    host = _label_kmn(emb.half, emb.half, WINDOWED, args)
    labeling = restrict_to_subgraph(host, emb)
    verify = verify_labeling(qn, labeling)
    paths = check_paths_prime(qn, labeling, args.paths_limit) if verify.passed else None
    passed = paths is not None and verify.passed and paths.passed
    doc = {
        "n": n,
        "pass": passed,
        "labels": {str(v): x for v, x in enumerate(labeling.labels)},
        "provenance": dict(labeling.provenance),
        "verify": verify.as_dict(),
        "paths": paths.as_dict() if paths is not None else None,
    }
    _emit(_dumps(doc), args.output)
    if paths is not None:
        log.info("Q_%d: %s, %d Hamiltonian paths checked%s", n, "PASS" if passed else "FAIL",
                 paths.extra["paths_checked"], " (truncated)" if paths.extra["truncated"] else "")
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="primelabel", description=(
        "Build and check labelings of graphs by distinct positive integers "
        "whose edge sums are all prime."))
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-q", "--quiet", action="store_true", help="no summary on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    search = _Parser(add_help=False)
    search.add_argument("--max-d", type=_positive, default=DEFAULT_MAX_D)
    search.add_argument("--max-p", type=_positive, default=DEFAULT_MAX_P)
    search.add_argument("--time-limit", type=float, default=None, help="seconds")
    search.add_argument("--workers", type=_positive, default=1)
    search.add_argument("--no-cache", action="store_true")

    out = _Parser(add_help=False)
    out.add_argument("-o", "--output", default=None)

    p = sub.add_parser("gen", parents=[out], help="emit K_{m,n} or Q_n as an edge list")
    p.add_argument("kind", choices=["kmn", "hypercube"])
    p.add_argument("params", type=_positive, nargs="+")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("label", parents=[search, out], help="label K_{m,n}")
    p.add_argument("--kmn", nargs=2, type=_positive, required=True, metavar=("M", "N"))
    p.add_argument("--mode", choices=MODES, default=WINDOWED)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("verify", parents=[out], help="check a labeling against a graph")
    p.add_argument("graph")
    p.add_argument("labeling")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("find-ap", parents=[search, out], help="search for a prime AP")
    p.add_argument("len", type=_positive)
    p.add_argument("--p-gt-d", action="store_true")
    p.set_defaults(func=cmd_find_ap)

    p = sub.add_parser("demo", parents=[search, out], help="hypercube end-to-end check")
    p.add_argument("n", type=int)
    p.add_argument("--paths-limit", type=_positive, default=None)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except SearchExhausted as exc:
        print(f"primelabel: {exc}", file=sys.stderr)
        print(_dumps({"exhausted": exc.as_dict()}), end="", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (UsageError, PrimeLabelError, OSError) as exc:
        print(f"primelabel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
