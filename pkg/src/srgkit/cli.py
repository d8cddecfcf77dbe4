"""Command-line interface: ``srgkit <command> ...``.

Exit codes: 0 success, 1 verification or feasibility failure, 2 usage or
input error, 3 search capped before completion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import graphs, hermitian, params, starcomp
from .errors import DomainError, NotPSD, ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPPED = 0, 1, 2, 3

FAMILIES = (
    "cycle", "path", "complete", "complete-bipartite", "petersen", "windmill",
    "generalized-windmill", "hermitian", "line-complete", "line-complete-bipartite",
)


class UsageError(Exception):
    pass


# -- output helpers -------------------------------------------------------------


def _render(records: list[dict[str, str]], fields, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
        w.writeheader()
        w.writerows(records)
        return buf.getvalue()
    widths = {f: max([len(f)] + [len(r[f]) for r in records]) for f in fields}
    lines = ["  ".join(f.rjust(widths[f]) for f in fields)]
    lines += ["  ".join(r[f].rjust(widths[f]) for f in fields) for r in records]
    return "\n".join(lines) + "\n"


def _cert_record(cert) -> dict[str, str]:
    return {
        "n": str(cert.n), "k": str(cert.k), "a": str(cert.a), "c": str(cert.c),
        "connected": str(cert.connected).lower(),
        "identity_checked": str(cert.identity_checked).lower(),
    }


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    rows = params.feasible_c_list(args.a, args.e)
    recs = [params.to_record(d) for _, d in rows]
    _emit(_render(recs, params.RECORD_FIELDS, args.format), args.out)
    return EXIT_OK if recs else EXIT_FAIL


def cmd_scan(args) -> int:
    found = params.scan(args.max_n, jobs=args.jobs)
    if args.a is not None:
        found = [d for d in found if d.a == args.a]
    recs = [params.to_record(d) for d in found]
    _emit(_render(recs, params.RECORD_FIELDS, args.format), args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.e_from < 1 or args.e_to < args.e_from:
        raise UsageError("need 1 <= --e-from <= --e-to")
    es = range(args.e_from, args.e_to + 1)
    bounds = [params.n_bounds(args.a, e) for e in es]
    if args.format == "table":
        cols = [(str(e), str(lo), str(hi)) for e, (lo, hi) in zip(es, bounds)]
        w = [max(len(x) for x in col) for col in cols]
        heads = ("e", "n_min", "n_max")
        hw = max(len(h) for h in heads)
        lines = [
            h.ljust(hw) + "  " + "  ".join(col[i].rjust(wi) for col, wi in zip(cols, w))
            for i, h in enumerate(heads)
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        recs = [{"a": str(args.a), "e": str(e), "n_min": str(lo), "n_max": str(hi)}
                for e, (lo, hi) in zip(es, bounds)]
        _emit(_render(recs, ("a", "e", "n_min", "n_max"), args.format), args.out)
    return EXIT_OK


def _need(value, flag, family):
    if value is None:
        raise UsageError(f"family {family!r} needs {flag}")
    return value


def build_family(family: str, n=None, q=None, e=None) -> graphs.Graph:
    if family == "cycle":
        return graphs.cycle(_need(n, "--n", family))
    if family == "path":
        return graphs.path(_need(n, "--n", family))
    if family == "complete":
        return graphs.complete(_need(n, "--n", family))
    if family == "complete-bipartite":
        return graphs.complete_bipartite(_need(n, "--n", family))
    if family == "petersen":
        return graphs.petersen()
    if family == "windmill":
        return graphs.windmill(_need(n, "--n", family))
    if family == "generalized-windmill":
        return graphs.generalized_windmill(_need(e, "--e", family))
    if family == "hermitian":
        return hermitian.cayley_graph(_need(q, "--q", family))
    if family == "line-complete":
        return graphs.line_graph(graphs.complete(_need(n, "--n", family)))
    if family == "line-complete-bipartite":
        return graphs.line_graph(graphs.complete_bipartite(_need(n, "--n", family)))
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def cmd_construct(args) -> int:
    G = build_family(args.family, n=args.n, q=args.q, e=args.e)
    if args.line:
        G = graphs.line_graph(G)
    if args.complement:
        G = graphs.complement(G)
    text = graphs.to_dot(G) if args.format == "dot" else graphs.encode_graph6(G) + "\n"
    check = graphs.diagnose_srg(G)
    summary = {"family": args.family, "n": str(G.n), "edges": str(G.num_edges())}
    if check.ok:
        summary["certificate"] = _cert_record(check.certificate)
    else:
        summary["certificate"] = None
        summary["reason"] = check.reason
    if args.out:
        _emit(text, args.out)
        sys.stdout.write(json.dumps(summary) + "\n")
    else:
        sys.stdout.write(text)
        sys.stderr.write(json.dumps(summary) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    src = sys.stdin if args.inp == "-" else open(args.inp, encoding="ascii")
    recs = []
    status = EXIT_OK
    with src:
        for lineno, line in enumerate(src, 1):
            if not line.strip():
                continue
            try:
                G = graphs.decode_graph6(line)
            except ParseError as exc:
                raise UsageError(f"line {lineno}: {exc}") from None
            check = graphs.diagnose_srg(G)
            rec = {"line": str(lineno), "n": str(G.n), "srg": str(check.ok).lower()}
            if check.ok:
                rec.update(_cert_record(check.certificate))
                try:
                    t = params.triple_from_srg(*check.certificate.params)
                    rec["e"] = str(t.e)
                except DomainError:
                    rec["e"] = ""
            else:
                status = EXIT_FAIL
                rec["reason"] = check.reason
                rec["witness"] = " ".join(map(str, check.witness or ()))
            recs.append(rec)
    sys.stdout.write(json.dumps(recs, indent=2) + "\n")
    return status


def parse_star_complement(spec: str) -> tuple[graphs.Graph, str | None]:
    """Parse ``cycle:N``, ``complete-bipartite:M``, ``windmill:E`` or ``file:PATH``."""
    kind, sep, arg = spec.partition(":")
    if not sep or not arg:
        raise UsageError(f"malformed star complement {spec!r}")
    if kind == "file":
        try:
            gs = graphs.read_graph6(arg)
        except (OSError, ParseError) as exc:
            raise UsageError(f"cannot read star complement: {exc}") from None
        if len(gs) != 1:
            raise UsageError(f"{arg} must hold exactly one graph6 line")
        return gs[0], None
    try:
        value = int(arg)
    except ValueError:
        raise UsageError(f"malformed size in {spec!r}") from None
    if kind == "cycle":
        return graphs.cycle(value), None
    if kind == "complete-bipartite":
        return graphs.complete_bipartite(value), None
    if kind == "windmill":
        return graphs.generalized_windmill(value), "windmill"
    raise UsageError(f"unknown star complement kind {kind!r}")


def cmd_reconstruct(args) -> int:
    t = params.ParamTriple(args.a, args.c, args.e)
    verdict, _ = params.feasibility(t)
    if not verdict.ok:
        sys.stderr.write(f"parameters {t} are not feasible: {verdict.status} ({verdict.detail})\n")
        return EXIT_FAIL
    Q, kind = parse_star_complement(args.star_complement)
    try:
        problem = starcomp.ReconstructionProblem.from_star_complement(Q, t)
    except DomainError as exc:
        sys.stderr.write(f"not a star complement: {exc}\n")
        return EXIT_FAIL
    hints = None
    if args.hints == "windmill" or (args.hints == "auto" and kind == "windmill"):
        hints = starcomp.windmill_block_hints(args.e)
        if hints.m != problem.m:
            raise UsageError("windmill hints do not match these parameters")
    try:
        result = starcomp.run_reconstruction(problem, node_cap=args.node_cap, block_hints=hints, jobs=args.jobs)
    except NotPSD as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL
    text = "".join(graphs.encode_graph6(G) + "\n" for G in result.graphs)
    summary = {
        "status": str(result.search.status),
        "solutions": str(len(result.search.solutions)),
        "nodes": str(result.search.nodes_explored),
        "rejected": str(result.rejected),
        "graphs": str(len(result.graphs)),
        "parameters": [_cert_record(c) for c in {c.params: c for c in result.certificates}.values()],
    }
    if args.out:
        _emit(text, args.out)
        sys.stdout.write(json.dumps(summary) + "\n")
    else:
        sys.stdout.write(text)
        sys.stderr.write(json.dumps(summary) + "\n")
    if not result.search.complete:
        return EXIT_CAPPED
    return EXIT_OK if result.graphs else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="srgkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=("json", "csv", "table"), default="table")

    s = sub.add_parser("enumerate", help="feasible c for fixed a and e")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--format", **fmt)
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("scan", help="all feasible parameter sets with n <= N")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--a", type=int, help="keep only this value of a")
    s.add_argument("--format", **fmt)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("table", help="n_min / n_max for a range of e")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--e-from", type=int, required=True)
    s.add_argument("--e-to", type=int, required=True)
    s.add_argument("--format", **fmt)
    s.add_argument("--out")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("construct", help="build a named graph and certify it")
    s.add_argument("family", metavar="FAMILY", help=", ".join(FAMILIES))
    s.add_argument("--n", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--e", type=int)
    s.add_argument("--line", action="store_true", help="take the line graph")
    s.add_argument("--complement", action="store_true", help="take the complement (after --line)")
    s.add_argument("--format", choices=("graph6", "dot"), default="graph6")
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="certify graphs read from a graph6 file")
    s.add_argument("--in", dest="inp", required=True, help="graph6 file, or - for stdin")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("reconstruct", help="rebuild graphs from a star complement")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--star-complement", required=True,
                   help="cycle:N, complete-bipartite:M, windmill:E or file:PATH.g6")
    s.add_argument("--node-cap", type=int, default=starcomp.DEFAULT_NODE_CAP)
    s.add_argument("--hints", choices=("auto", "none", "windmill"), default="none")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_reconstruct)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DomainError, ParseError) as exc:
        sys.stderr.write(f"srgkit: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
