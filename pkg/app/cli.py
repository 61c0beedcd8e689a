"""
Command-line front door: python -m app <command> ...
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from app.models.graph import MulticoneParams
from app.models.search import CorpusSource, SearchSpace
from app.models.spectra import MatrixKind
from app.services.claims_service import claims_service
from app.services.closed_form_service import closed_form_service
from app.services.invariant_service import invariant_service
from app.services.numeric_service import numeric_service
from app.services.perfection_service import perfection_service
from app.services.polynomial_service import polynomial_service
from app.services.search_service import SearchService
from app.utils.corpus import atlas_corpus
from app.utils.exceptions import BaseSpectraError, ErrorHandler, UsageError
from app.utils.family_parser import resolve_graph, resolve_target
from app.utils.graph6 import g6_encode, write_corpus
from app.utils.graph_ops import multicone
from app.utils.isomorphism import decide_isomorphism
from app.utils.logging_config import RunLoggingContext, configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAULT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(value: float) -> str:
    text = f"{value:.9f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _kind(text: str) -> MatrixKind:
    try:
        return MatrixKind.parse(text)
    except BaseSpectraError:
        raise argparse.ArgumentTypeError(f"unknown matrix kind '{text}' (use A, L or Q)")


def _emit(args: argparse.Namespace, payload: Dict[str, Any], lines: Sequence[str]) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _graph_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--expr", help="family expression, e.g. 'K1~C4' or 'MC(3,10,4)'")
    group.add_argument("--g6", help="graph6 string")


# Commands

def cmd_gen(args: argparse.Namespace) -> int:
    out = sys.stdout.buffer
    if args.atlas is not None:
        graphs = atlas_corpus(args.atlas)
    elif args.expr is not None or args.g6 is not None:
        graphs = [resolve_graph(args.expr, args.g6)[0]]
    else:
        raise UsageError("gen: one of --expr, --g6 or --atlas is required")
    if args.out:
        with open(args.out, "wb") as handle:
            count = write_corpus(graphs, handle)
        logger.info(f"Wrote {count} graph6 records to {args.out}")
    else:
        write_corpus(graphs, out)
        out.flush()
    return EXIT_OK


def cmd_spec(args: argparse.Namespace) -> int:
    g, _, label = resolve_graph(args.expr, args.g6)
    spectrum = numeric_service.eigenvalues_numeric(g, args.kind, args.tol)
    poly = polynomial_service.char_poly_exact(g, args.kind)
    payload = spectrum.to_report()
    payload.update({"graph6": g6_encode(g).decode("ascii"), "char_poly": poly.to_json()})
    lines = [f"{label}: {args.kind.value}-spectrum on {g.n} vertices (tol {spectrum.tol:g})"]
    lines += [f"  {_fmt(value)}: {mult}" for value, mult in spectrum.groups]
    lines.append(f"  char poly: {poly}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_closed(args: argparse.Namespace) -> int:
    if args.cycle is not None:
        spectrum = closed_form_service.cycle_spectrum(args.cycle, args.kind)
        graph = None
    elif args.complement_c3:
        spectrum = closed_form_service.complement_multicone_c3_spectrum(args.w, args.m)
        graph = None
    else:
        if args.n is None:
            raise UsageError("closed: --n is required for multicone spectra")
        p = MulticoneParams(args.w, args.m, args.n)
        spectrum = closed_form_service.multicone_spectrum(p, args.kind)
        graph = p
    payload = spectrum.to_json()
    lines = [str(spectrum)] + [f"  {_fmt(v)}" for v in spectrum.float_values()]
    if args.check and graph is not None:
        numeric = numeric_service.eigenvalues_numeric(multicone(graph), spectrum.kind)
        agrees = spectrum.matches(numeric.values, 1e-9)
        payload["matches_eigensolver"] = agrees
        lines.append(f"matches eigensolver: {agrees}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_cmp(args: argparse.Namespace) -> int:
    a, _, label_a = resolve_target(args.a)
    b, _, label_b = resolve_target(args.b)
    pa = polynomial_service.char_poly_exact(a, args.kind)
    pb = polynomial_service.char_poly_exact(b, args.kind)
    cospectral = pa.coeffs == pb.coeffs
    iso = decide_isomorphism(a, b)
    payload = {
        "kind": args.kind.value,
        "cospectral": cospectral,
        "isomorphic": iso,
        "vertex_counts": [a.n, b.n],
        "edge_counts": [a.edge_count, b.edge_count],
        "fingerprints": [pa.fingerprint, pb.fingerprint],
    }
    lines = [
        f"{label_a} vs {label_b} ({args.kind.value})",
        f"  cospectral: {str(cospectral).lower()}",
        f"  isomorphic: {str(iso).lower()}",
        f"  vertices: {a.n} / {b.n}, edges: {a.edge_count} / {b.edge_count}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_hunt(args: argparse.Namespace) -> int:
    target, params, label = resolve_target(args.target)
    n = args.n or target.n
    if args.corpus:
        source = CorpusSource.from_path(args.corpus, strict=not args.lenient_padding, lenient=args.lenient)
        space = SearchSpace.corpus(source, n, args.connected_only, args.edges)
    elif args.atlas:
        space = SearchSpace.corpus(CorpusSource.from_graphs(atlas_corpus(n), "atlas"), n, args.connected_only, args.edges)
    else:
        space = SearchSpace.labeled(n, args.connected_only, args.edges, allow_long_run=args.long_run)

    service = SearchService(workers=args.workers)
    if params is not None and args.certify:
        certification = service.certify_ds(params, args.kind, space)
        report = certification.report
        payload: Dict[str, Any] = certification.model_dump(mode="json")
        extra = [f"  expectation: {certification.expectation or 'none'}, consistent: {certification.consistent}",
                 f"  note: {certification.note}"]
    else:
        report = service.find_cospectral_mates(target, space, args.kind, label=label, params=params)
        payload = report.model_dump(mode="json")
        extra = []
    if args.audit and report.params:
        audit = service.mate_degree_audit(report)
        payload["degree_audit"] = audit.model_dump(mode="json")
        extra.append(f"  degree audit: {'ok' if audit.all_ok else 'findings'} (expected min degree {audit.expected_min_degree})")

    lines = [
        f"{label} ({args.kind.value}) over {report.space.source} space on {n} vertices",
        f"  scanned {report.space.scanned}, candidates {report.space.candidates}, polynomial matches {report.space.polynomial_matches}",
        f"  verdict: {report.verdict.value}",
    ]
    lines += [f"  mate {m.graph6} connected={m.connected} components={m.component_count}" for m in report.mates]
    _emit(args, payload, lines + extra)
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace) -> int:
    g, _, label = resolve_graph(args.expr, args.g6)
    report = invariant_service.invariant_report(g)
    a, lap = report.adjacency_facts, report.laplacian_facts
    lines = [
        f"{label}",
        f"  vertices {report.vertex_count}, edges {report.edge_count}, connected {report.connected}",
        f"  triangles {a.triangle_count}, closed walks {a.closed_walk_counts}",
        f"  regular by spectrum {a.is_regular_by_spectrum}, bipartite by spectrum {a.is_bipartite_by_spectrum}",
        f"  components {lap.component_count}, spanning trees {lap.spanning_tree_count}, sum sq degrees {lap.sum_sq_degrees}",
        f"  degree profile {report.degree_profile}",
        f"  join: eigenvalue {report.join.has_join_eigenvalue}, structural {report.join.is_join}",
        f"  positive eigenvalues {report.multipartite.positive_eigenvalue_count}, parts {report.multipartite.parts}",
        f"  three-eigenvalue: {report.three_eigenvalue.status.value}",
    ]
    if report.bound:
        b = report.bound
        lines.append(f"  rho {_fmt(b.rho)} <= bound {_fmt(b.bound)}, equality {b.equality_holds} ({b.structure_class.value})")
    _emit(args, report.model_dump(mode="json"), lines)
    return EXIT_OK


def cmd_perfect(args: argparse.Namespace) -> int:
    g, params, label = resolve_graph(args.expr, args.g6)
    if params is not None:
        report = perfection_service.multicone_report(params, args.max_len)
    else:
        report = perfection_service.is_perfect(g, args.max_len)
    lines = [f"{label}: {'perfect' if report.perfect else 'not perfect'} (cycles up to {report.max_len})"]
    if report.witness:
        lines.append(f"  {report.witness.kind.value}: {report.witness.vertices}")
    if report.predicate is not None:
        lines.append(f"  n even or 3: {report.predicate}")
    _emit(args, report.model_dump(mode="json"), lines)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    summary = claims_service.run_suite(full=args.full, only=args.only)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.claim_id}: {c.detail}" for c in summary.claims]
    lines.append(f"{summary.passed}/{summary.total} claims passed")
    _emit(args, summary.model_dump(mode="json"), lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--log-level", default=None, help="override LOG_LEVEL")

    parser = _Parser(prog="multicone", description="Spectral toolkit for multicone graphs K_w~mC_n")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="write graph6 records")
    gen.add_argument("--expr")
    gen.add_argument("--g6")
    gen.add_argument("--atlas", type=int, help="every graph on this many vertices (up to 7)")
    gen.add_argument("--out", help="output file (default stdout)")
    gen.set_defaults(handler=cmd_gen)

    spec = sub.add_parser("spec", parents=[common], help="numeric spectrum and exact polynomial")
    _graph_args(spec)
    spec.add_argument("--kind", type=_kind, default=MatrixKind.ADJACENCY)
    spec.add_argument("--tol", type=float, default=None)
    spec.set_defaults(handler=cmd_spec)

    closed = sub.add_parser("closed", parents=[common], help="closed-form spectra")
    closed.add_argument("--w", type=int, default=1)
    closed.add_argument("--m", type=int, default=1)
    closed.add_argument("--n", type=int)
    closed.add_argument("--kind", type=_kind, default=MatrixKind.ADJACENCY)
    closed.add_argument("--cycle", type=int, help="spectrum of C_n instead of the multicone")
    closed.add_argument("--complement-c3", action="store_true", help="complement of K_w~mC3")
    closed.add_argument("--check", action="store_true", help="compare with the eigensolver")
    closed.set_defaults(handler=cmd_closed)

    cmp_ = sub.add_parser("cmp", parents=[common], help="exact cospectrality and isomorphism")
    cmp_.add_argument("--a", required=True)
    cmp_.add_argument("--b", required=True)
    cmp_.add_argument("--kind", type=_kind, default=MatrixKind.ADJACENCY)
    cmp_.set_defaults(handler=cmd_cmp)

    hunt = sub.add_parser("hunt", parents=[common], help="exhaustive cospectral-mate search")
    hunt.add_argument("--target", required=True, help="family expression or graph6")
    hunt.add_argument("--kind", type=_kind, default=MatrixKind.ADJACENCY)
    hunt.add_argument("--n", type=int)
    hunt.add_argument("--corpus", help="graph6 corpus file")
    hunt.add_argument("--atlas", action="store_true", help="scan the complete atlas corpus instead of labeled graphs")
    hunt.add_argument("--connected-only", action="store_true")
    hunt.add_argument("--edges", type=int)
    hunt.add_argument("--long-run", action="store_true", help="allow labeled scans on 8 vertices")
    hunt.add_argument("--lenient", action="store_true", help="skip malformed corpus lines")
    hunt.add_argument("--lenient-padding", action="store_true", help="accept nonzero graph6 padding")
    hunt.add_argument("--workers", type=int, default=None)
    hunt.add_argument("--certify", action="store_true", help="annotate with the expected outcome for multicone targets")
    hunt.add_argument("--audit", action="store_true", help="degree audit of connected mates")
    hunt.set_defaults(handler=cmd_hunt)

    inv = sub.add_parser("invariants", parents=[common], help="spectrum-derived invariants")
    _graph_args(inv)
    inv.set_defaults(handler=cmd_invariants)

    perfect = sub.add_parser("perfect", parents=[common], help="odd hole / antihole search")
    _graph_args(perfect)
    perfect.add_argument("--max-len", type=int, default=None)
    perfect.set_defaults(handler=cmd_perfect)

    verify = sub.add_parser("verify-claims", aliases=["verify-paper"], parents=[common], help="run the claim registry")
    verify.add_argument("--full", action="store_true", help="include the long scans")
    verify.add_argument("--only", nargs="+", choices=sorted(claims_service.claims), default=None)
    verify.set_defaults(handler=cmd_verify)
    return parser


def _target_of(args: argparse.Namespace) -> Optional[str]:
    for name in ("target", "expr", "g6", "a"):
        value = getattr(args, name, None)
        if value:
            return value
    return None


def run_command(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv and run one command

    Returns:
        0 on a completed run, 1 on usage or input errors, 2 on internal faults
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e.detail}\n")
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    if not getattr(args, "handler", None):
        sys.stderr.write(parser.format_usage())
        return EXIT_USAGE

    configure_logging(log_level=args.log_level)
    try:
        with RunLoggingContext(args.command, _target_of(args)), ErrorHandler(logger, args.command):
            return args.handler(args)
    except BaseSpectraError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code


def main() -> None:
    sys.exit(run_command())
