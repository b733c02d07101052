"""Command-line interface.

Exit codes: 0 computed answer (including "no"), 1 a verification suite
failed, 2 a budget or cap was exceeded, 64 usage error, 65 bad input file.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Sequence

from . import __version__
from .analysis import chi_o, homomorphism, oclique_violation, omega_ao, omega_ro
from .budget import SearchStats
from .catalog import entries, get, to_dot
from .certificates import Certificate, Exhaustion, VertexSubset
from .errors import BudgetExceeded, GraphFormatError
from .graphs import OrientedGraph, parse_graph, serialize, underlying
from .orientability import decide_orientable
from .structure import metrics

log = logging.getLogger("oclique")

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--json", action="store_true", default=default, help="emit one JSON object")
    p.add_argument("--witness", action="store_true", default=default, help="include the certificate body")
    p.add_argument("--quiet", action="store_true", default=default, help="no human-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oclique", description="Oriented cliques, colourings and verification suites.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _global_flags(p, argparse.SUPPRESS)
        return p

    def budget(p: argparse.ArgumentParser) -> None:
        p.add_argument("--budget-seconds", type=float, default=None)

    p = command("check-oclique", "is every pair at weak distance at most 2?")
    p.add_argument("file")
    p = command("chi-o", "oriented chromatic number")
    p.add_argument("file")
    p.add_argument("--max-k", type=int, default=7)
    budget(p)
    for name in ("omega-ao", "omega-ro"):
        p = command(name, "absolute / relative oriented clique number")
        p.add_argument("file")
        budget(p)
    p = command("metrics", "girth, diameter, domination number, planarity")
    p.add_argument("file")
    p = command("orientable", "does the graph have an oclique orientation?")
    p.add_argument("file")
    p.add_argument("--method", choices=("auto", "brute", "outerplanar"), default="auto")
    p.add_argument("--threads", type=int, default=1)
    budget(p)
    p = command("hom", "find a homomorphism G -> H")
    p.add_argument("file_g")
    p.add_argument("file_h")
    budget(p)
    p = command("catalog", "named graphs")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("id", nargs="?")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of OGRAPH")
    p = command("verify", "run verification suites")
    from .verify.suites import SUITES

    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--max-n", type=int, default=None)
    budget(p)
    p.add_argument("--threads", type=int, default=1)
    return parser


def _read(path: str, expect: str | None = None):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text, expect)


class _Output:
    def __init__(self, args: argparse.Namespace, inputs: list[str]):
        self.args = args
        self.inputs = inputs
        self.started = time.perf_counter()
        self.stats = SearchStats.with_budget(getattr(args, "budget_seconds", None))

    def emit(self, verdict, certificate: Certificate | dict | None, human: str, extra: dict | None = None,
             full: bool = False) -> None:
        """Print the result.

        ``extra`` fields (such as the route an answer took) are attached to the
        certificate object; ``full`` keeps the certificate body even without
        ``--witness``.
        """
        args = self.args
        if args.json:
            if certificate is None:
                cert = dict(extra) if extra else None
            else:
                body = certificate if isinstance(certificate, dict) else certificate.to_dict()
                cert = dict(body) if args.witness or full else {"variant": body.get("variant")}
                cert.update(extra or {})
            obj = {"command": args.command, "input": self.inputs[0] if len(self.inputs) == 1 else self.inputs,
                   "verdict": verdict, "certificate": cert,
                   "stats": {"elapsed_ms": int((time.perf_counter() - self.started) * 1000),
                             "nodes_explored": self.stats.nodes},
                   "version": __version__}
            print(json.dumps(obj))
        elif not args.quiet:
            print(human)
            if args.witness and certificate is not None:
                body = certificate if isinstance(certificate, dict) else certificate.to_dict()
                print(json.dumps(body))


def _cmd_check_oclique(args, out: _Output) -> int:
    g = _read(args.file, "D")
    viol = oclique_violation(g)
    if viol is None:
        out.emit(True, None, "oclique")
    else:
        out.emit(False, viol, f"not an oclique: {viol.u} and {viol.v} are at weak distance > 2")
    return EXIT_OK


def _cmd_chi_o(args, out: _Output) -> int:
    g = _read(args.file, "D")
    if args.max_k < 1:
        raise UsageError("--max-k must be at least 1")
    k, cert = chi_o(g, max_k=args.max_k, stats=out.stats)
    out.emit(k, cert, f"chi_o = {k}")
    return EXIT_OK


def _cmd_omega(args, out: _Output) -> int:
    g = _read(args.file, "D")
    if args.command == "omega-ao":
        k, vs = omega_ao(g, out.stats)
        cert = VertexSubset(vs, "induced")
    else:
        k, vs = omega_ro(g, out.stats)
        cert = VertexSubset(vs, "relative")
    out.stats.check_time()
    out.emit(k, cert, f"{args.command.replace('-', '_')} = {k}  (vertices {' '.join(map(str, vs))})")
    return EXIT_OK


def _cmd_metrics(args, out: _Output) -> int:
    g = _read(args.file)
    u = underlying(g) if isinstance(g, OrientedGraph) else g
    rec = metrics(u).to_dict()
    human = "  ".join(f"{k}={v}" for k, v in rec.items())
    out.emit(rec, None, human)
    return EXIT_OK


def _cmd_orientable(args, out: _Output) -> int:
    g = _read(args.file, "U")
    decision = decide_orientable(g, args.method, out.stats, workers=args.threads)
    cert = decision.certificate
    human = f"{'orientable' if decision.verdict else 'not orientable'} ({decision.path})"
    if isinstance(cert, Exhaustion):
        human += f"  rejected={cert.candidates_rejected} reason={cert.reason}"
    extra = {"path": decision.path}
    if decision.pattern is not None:
        extra["pattern"] = decision.pattern
    out.emit(decision.verdict, cert, human, extra)
    return EXIT_OK


def _cmd_hom(args, out: _Output) -> int:
    g = _read(args.file_g, "D")
    h = _read(args.file_h, "D")
    cert = homomorphism(g, h, out.stats)
    if cert is None:
        out.emit(False, Exhaustion(out.stats.nodes), "no homomorphism")
    else:
        out.emit(True, cert, "homomorphism: " + " ".join(map(str, cert.mapping.image)))
    return EXIT_OK


def _cmd_catalog(args, out: _Output) -> int:
    if args.action == "list":
        listing = [e.to_dict() for e in entries()]
        if args.json:
            out.emit(listing, None, "")
        elif not args.quiet:
            print(json.dumps(listing, indent=2))
        return EXIT_OK
    if not args.id:
        raise UsageError("catalog emit needs an id")
    try:
        entry = get(args.id)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from exc
    text = to_dot(entry.graph, entry.labels, entry.id) if args.dot else serialize(entry.graph)
    if args.json:
        out.emit(text, None, "")
    elif not args.quiet:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args, out: _Output) -> int:
    from .verify.suites import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        log.info("running suite %s", name)
        reports.append(run_suite(name, args.max_n, args.budget_seconds, args.threads))
    verdicts = [r.verdict for r in reports]
    if "fail" in verdicts:
        overall, code = "fail", EXIT_FAIL
    elif "budget-exceeded" in verdicts:
        overall, code = "budget-exceeded", EXIT_BUDGET
    else:
        overall, code = "pass", EXIT_OK
    for r in reports:
        out.stats.nodes += r.counters.get("nodes_explored", 0)
    if args.json:
        body = {"variant": "verification", "reports": [r.to_dict(witnesses=args.witness) for r in reports]}
        out.emit(overall, body, "", full=True)
    elif not args.quiet:
        for r in reports:
            print(f"{r.suite}: {r.verdict} ({r.elapsed_ms} ms) {json.dumps(r.counters)}")
            for c in r.counterexamples:
                print(f"  counterexample: {c.description}")
                if args.witness:
                    print("  " + json.dumps(c.to_dict()))
        print(f"overall: {overall}")
    return code


COMMANDS = {
    "check-oclique": _cmd_check_oclique,
    "chi-o": _cmd_chi_o,
    "omega-ao": _cmd_omega,
    "omega-ro": _cmd_omega,
    "metrics": _cmd_metrics,
    "orientable": _cmd_orientable,
    "hom": _cmd_hom,
    "catalog": _cmd_catalog,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    inputs = [getattr(args, k) for k in ("file", "file_g", "file_h") if getattr(args, k, None)]
    out = _Output(args, inputs)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"oclique: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFormatError as exc:
        print(f"oclique: invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BudgetExceeded as exc:
        verdict = f">{exc.lower_bound - 1}" if exc.lower_bound is not None else "budget-exceeded"
        print(f"oclique: {exc}", file=sys.stderr)
        out.stats.nodes = max(out.stats.nodes, exc.progress.get("nodes_explored", 0))
        out.emit(verdict, None, f"budget exceeded: {exc}",
                 {"lower_bound": exc.lower_bound} if exc.lower_bound is not None else None)
        return EXIT_BUDGET


def main() -> None:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
