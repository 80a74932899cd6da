"""Command line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from typing import Sequence

from .braid_core import (
    BraidWord,
    block_count,
    crossing_stats,
    format_braid,
    genus,
    is_standard_fast,
    parse_braid,
    primality_precheck,
    standardize,
)
from .construction import cable_obstruction, construct, km_family, splice_feasible
from .corpus import random_corpus
from .errors import BraidfolError, CaseExhausted, FailsPrecheck
from .oracle import exhaustive_search, verify_certificate
from .surface_model import render
from .train_track import Certificate

EXIT_OK, EXIT_DOMAIN, EXIT_FAILED, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2, which is reserved for failed checks
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(arg: str | None) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read()
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def _word(arg: str | None) -> BraidWord:
    return parse_braid(_read_text(arg).strip())


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text)


def _report(cert: Certificate) -> str:
    b = cert.braid
    counts = b.counts()
    chosen = [sum(1 for (i, _) in cert.assignment.chosen if i == col) for col in range(1, b.strands)]
    lines = [
        f"braid      {format_braid(b)}",
        f"genus      {cert.genus}",
        "column     " + " ".join(f"{i:>4}" for i in range(1, b.strands)),
        "c_i        " + " ".join(f"{c:>4}" for c in counts),
        "disks      " + " ".join(f"{c:>4}" for c in chosen),
        f"arcs       {cert.assignment.describe()}",
        f"linked     {', '.join(f'a{p[0]},{p[1]}~a{q[0]},{q[1]}' for p, q in cert.ledger.pairs) or 'none'}",
        f"deduction  {cert.ledger.deduction}{' (extrapolated)' if cert.ledger.extrapolated else ''}",
        f"sink free  {cert.sink_report.sink_free}",
        f"tau_sup    {cert.tau_sup}  (slopes r < {cert.tau_sup}; g+1 = {cert.genus + 1})",
        "trace",
    ]
    lines += [f"  {t}" for t in cert.case_trace]
    return "\n".join(lines)


def cmd_stats(args: argparse.Namespace) -> int:
    b = _word(args.word)
    st = crossing_stats(b)
    pre = primality_precheck(b)
    payload = {
        "braid": format_braid(b),
        "n": b.strands,
        "counts": list(st.counts),
        "total": st.total,
        "genus": genus(b),
        "mod3_sums": list(st.mod3_sums),
        "c_odd": st.c_odd,
        "c_even": st.c_even,
        "c_min_choice": st.c_min_choice,
        "c_max_choice": st.c_max_choice,
        "blocks": [block_count(b, i) if c else 0 for i, c in enumerate(st.counts, start=1)],
        "standard": is_standard_fast(b),
        "precheck_violations": pre.violations,
    }
    text = "\n".join(f"{k:<20} {v}" for k, v in payload.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_standardize(args: argparse.Namespace) -> int:
    w = standardize(_word(args.word))
    _emit(args, {"braid": format_braid(w, powers=False)}, format_braid(w, powers=False))
    return EXIT_OK


def cmd_genus(args: argparse.Namespace) -> int:
    g = genus(_word(args.word))
    _emit(args, {"genus": g}, str(g))
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    cert = construct(_word(args.word))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render(cert.assignment.diagram, cert.assignment, "svg"))
    if args.json:
        print(cert.to_json())
    else:
        print(_report(cert))
    if args.ascii:
        print(render(cert.assignment.diagram, cert.assignment, "ascii"), end="")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    ok = verify_certificate(_read_text(args.certificate))
    _emit(args, {"valid": ok}, "valid" if ok else "INVALID")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_search(args: argparse.Namespace) -> int:
    res = exhaustive_search(_word(args.word), max_arcs=args.max_arcs)
    text = f"best tau_sup {res.best_tau}, explored {res.explored}, sink free {res.sink_free_count}"
    if res.best_assignment is not None:
        text += f"\nbest {res.best_assignment.describe()}"
    _emit(args, res.to_dict(), text)
    return EXIT_OK


def cmd_km(args: argparse.Namespace) -> int:
    b = km_family(args.m)
    _emit(args, {"braid": format_braid(b, powers=False), "m": args.m}, format_braid(b, powers=False))
    return EXIT_OK


def cmd_cable(args: argparse.Namespace) -> int:
    v = cable_obstruction(args.p, args.q, args.gk)
    _emit(args, v.to_dict(), "\n".join([v.conclusion, *v.chain]))
    return EXIT_OK


def cmd_splice(args: argparse.Namespace) -> int:
    v = splice_feasible(args.g1, args.g2)
    _emit(args, v.to_dict(), "\n".join([v.conclusion, *v.chain]))
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    strands = (args.n, args.n) if args.n else (5, 8)
    words = random_corpus(args.seed, args.count, strands, (12, args.len))
    rows = []
    failures = 0
    for w in words:
        start = time.perf_counter()
        try:
            cert = construct(w)
            valid = verify_certificate(cert)
            bound = cert.tau_sup >= cert.genus + 1 if w.strands >= 5 else True
            status = "ok" if valid and bound else "FAILED"
            row = {"braid": format_braid(w), "genus": cert.genus, "tau_sup": cert.tau_sup, "status": status}
        except FailsPrecheck as exc:
            row = {"braid": format_braid(w), "genus": genus(w), "tau_sup": None, "status": f"precheck: {exc}"}
        except CaseExhausted as exc:
            row = {"braid": format_braid(w), "genus": genus(w), "tau_sup": None, "status": f"exhausted: {exc}"}
        row["seconds"] = round(time.perf_counter() - start, 4)
        failures += row["status"] not in ("ok",) and not row["status"].startswith("precheck")
        rows.append(row)
    if args.json:
        print(json.dumps({"seed": args.seed, "rows": rows, "failures": failures}, indent=2, sort_keys=True))
    else:
        print(f"{'genus':>5} {'tau':>5} {'status':<8} braid")
        for r in rows:
            print(f"{r['genus']:>5} {str(r['tau_sup']):>5} {r['status']:<8} {r['braid']}")
        print(f"{len(rows)} words, {failures} failures")
    return EXIT_FAILED if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidfol", description="Certify carried slopes for positive braid knots.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, func, help_text: str, word: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine readable output")
        if word:
            sp.add_argument("word", nargs="?", help="braid word, @file, or - for stdin (default stdin)")
        return sp

    add("stats", cmd_stats, "crossing statistics and primality report")
    add("standardize", cmd_standardize, "rewrite to standard form")
    add("genus", cmd_genus, "genus of the closure")
    sp = add("construct", cmd_construct, "build and certify an assignment")
    sp.add_argument("--svg", metavar="PATH", help="also write the diagram as SVG")
    sp.add_argument("--ascii", action="store_true", help="also print the diagram")
    sp = add("verify", cmd_verify, "re-check a certificate independently", word=False)
    sp.add_argument("certificate", nargs="?", help="certificate JSON, @file, or - for stdin")
    sp = add("search", cmd_search, "exhaustive search over assignments")
    sp.add_argument("--max-arcs", type=int, default=12)
    sp = add("km", cmd_km, "word of the K_m family", word=False)
    sp.add_argument("--m", type=int, required=True)
    sp = add("cable", cmd_cable, "(p, +-1) cable obstruction", word=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--gk", type=int, required=True)
    sp = add("splice", cmd_splice, "splice feasibility", word=False)
    sp.add_argument("--g1", type=int, required=True)
    sp.add_argument("--g2", type=int, required=True)
    sp = add("corpus", cmd_corpus, "construct and verify random words", word=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int, default=None, help="strand count (default 5 to 8)")
    sp.add_argument("--len", type=int, default=30, help="maximum word length")
    sp.add_argument("--count", type=int, default=20)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    level = os.environ.get("BRAIDFOL_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CaseExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in exc.trace:
            print(f"  {line}", file=sys.stderr)
        return EXIT_FAILED
    except FailsPrecheck as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in exc.violations:
            print(f"  {line}", file=sys.stderr)
        return EXIT_DOMAIN
    except (BraidfolError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
