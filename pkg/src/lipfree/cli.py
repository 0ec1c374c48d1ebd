"""Command-line front end.

Exit codes: 0 success, 2 parse/usage error, 3 invalid metric input,
4 falsified invariant (a defect; never expected).
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import document as doc
from .errors import DocumentError, LipFreeError, MetricError
from .extremal import classify_molecule, exposure_certificate, verify_certificate
from .free_space import dist_to_subspace, dual_norm_with_witness, primal_norm
from .metric import PROFILES, epsilon_segment, random_space, segment
from .suite import run_suite

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_FALSIFIED = 0, 2, 3, 4

COMMANDS = ("validate", "segments", "classify", "expose", "norm", "dist", "suite", "random", "verify")

log = logging.getLogger("lipfree")


class Falsified(Exception):
    pass


def _fmt(x: Fraction) -> str:
    return str(doc.rational_out(x))


def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _load_space(args):
    if args.input:
        data = doc.load(args.input)
        if data.get("kind", "space") != "space" and "space" in data:
            data = data["space"]
        return doc.space_from_doc(data)
    if args.n is None:
        raise DocumentError("give --input or a generator spec (--n, --profile, --seed)")
    return random_space(args.n, args.profile, args.seed)


def _pairs_label(M, pair):
    return f"({M.points[pair[0]]},{M.points[pair[1]]})"


def cmd_validate(args):
    M = _load_space(args)
    if args.format == "document":
        return doc.dumps(doc.space_to_doc(M)), EXIT_OK
    return f"valid: {M.n} points, base {M.base}\n", EXIT_OK


def cmd_random(args):
    if args.n is None:
        raise DocumentError("random needs --n")
    M = random_space(args.n, args.profile, args.seed)
    if args.format == "table":
        rows = [[M.points[i]] + [_fmt(v) for v in row] for i, row in enumerate(M.dist)]
        return f"base {M.base}\n" + _table(["d"] + list(M.points), rows), EXIT_OK
    return doc.dumps(doc.space_to_doc(M)), EXIT_OK


def cmd_segments(args):
    M = _load_space(args)
    eps = args.eps
    out = []
    for x in range(M.n):
        for y in range(x + 1, M.n):
            seg = segment(M, x, y)
            entry = {"pair": [M.points[x], M.points[y]],
                     "segment": [M.points[z] for z in sorted(seg)]}
            if eps is not None:
                entry["eps_segment"] = [M.points[z] for z in sorted(epsilon_segment(M, x, y, eps))]
            out.append(entry)
    if args.format == "document":
        return doc.dumps(doc.bundle("segments", space=doc.space_to_doc(M, False),
                                    eps=None if eps is None else _fmt(eps), segments=out)), EXIT_OK
    headers = ["pair", "segment"] + (["eps_segment"] if eps is not None else [])
    rows = [[f"({e['pair'][0]},{e['pair'][1]})", " ".join(e["segment"])]
            + ([" ".join(e["eps_segment"])] if eps is not None else []) for e in out]
    return _table(headers, rows), EXIT_OK


def cmd_classify(args):
    M = _load_space(args)
    reports = [classify_molecule(M, pr) for pr in M.ordered_pairs()]
    for r in reports:
        if r.is_exposed and not verify_certificate(r.evidence):
            raise Falsified(f"certificate for {_pairs_label(M, r.pair)} failed replay")
    exposed = sum(r.is_exposed for r in reports)
    summary = {"pairs": len(reports), "extreme": sum(r.is_extreme for r in reports),
               "exposed": exposed, "neither": len(reports) - exposed}
    if args.format == "document":
        return doc.dumps(doc.bundle(
            "classification", space=doc.space_to_doc(M, False),
            reports=[doc.report_to_doc(r, M) for r in reports], summary=summary)), EXIT_OK
    rows = []
    for r in reports:
        ev = r.evidence
        if r.is_exposed:
            note = f"margin {_fmt(ev.margin)}"
        else:
            note = (f"= {_fmt(ev.weights[0])}*m({M.points[r.pair[0]]},{M.points[ev.via]})"
                    f" + {_fmt(ev.weights[1])}*m({M.points[ev.via]},{M.points[r.pair[1]]})")
        rows.append([_pairs_label(M, r.pair), " ".join(M.points[z] for z in sorted(r.segment_points)),
                     "yes" if r.is_extreme else "no", "yes" if r.is_exposed else "no", note])
    text = _table(["pair", "segment", "extreme", "exposed", "evidence"], rows)
    text += (f"\nsummary: {summary['pairs']} ordered pairs, {summary['extreme']} extreme, "
             f"{summary['exposed']} exposed, {summary['neither']} neither\n")
    return text, EXIT_OK


def cmd_expose(args):
    M = _load_space(args)
    certs = [exposure_certificate(M, pr) for pr in M.ordered_pairs() if len(segment(M, *pr)) == 2]
    if not all(verify_certificate(c) for c in certs):
        raise Falsified("an emitted certificate failed replay")
    if args.format == "document":
        return doc.dumps(doc.bundle("certificates",
                                    certificates=[doc.certificate_to_doc(c, False) for c in certs])), EXIT_OK
    rows = [[_pairs_label(M, c.pair), _fmt(c.margin),
             " ".join(f"{M.points[i]}={_fmt(v)}" for i, v in enumerate(c.function.values))]
            for c in certs]
    return _table(["pair", "margin", "function"], rows), EXIT_OK


def _certificate_docs(data):
    if data.get("kind") == "certificates":
        return data["certificates"]
    return [data]


def cmd_verify(args):
    if not args.input:
        raise DocumentError("verify needs --input")
    rows, all_ok = [], True
    for entry in _certificate_docs(doc.load(args.input)):
        cert = doc.certificate_from_doc(entry)
        ok = verify_certificate(cert)
        all_ok &= ok
        rows.append([_pairs_label(cert.function.space, cert.pair), _fmt(cert.margin), "pass" if ok else "FAIL"])
    return _table(["pair", "margin", "replay"], rows), EXIT_OK if all_ok else EXIT_FALSIFIED


def _load_element(args):
    if not args.input:
        raise DocumentError("this command needs --input with an element document")
    return doc.element_from_doc(doc.load(args.input))


def cmd_norm(args):
    mu = _load_element(args)
    dual, witness = dual_norm_with_witness(mu)
    primal, rep = primal_norm(mu)
    status = EXIT_OK if dual == primal else EXIT_FALSIFIED
    M = mu.space
    if args.format == "document":
        return doc.dumps(doc.bundle(
            "norm", element=doc.element_to_doc(mu, False), dual_norm=_fmt(dual),
            primal_norm=_fmt(primal), witness=doc.function_to_doc(witness, False)["values"],
            representation=doc.representation_to_doc(M, rep, False)["terms"])), status
    text = f"dual norm:   {_fmt(dual)}\nprimal norm: {_fmt(primal)}\n"
    text += "witness f:   " + " ".join(f"{M.points[i]}={_fmt(v)}" for i, v in enumerate(witness.values)) + "\n"
    text += "representation:\n" + "".join(
        f"  {_fmt(w)} * m({M.points[x]},{M.points[y]})\n" for w, (x, y) in rep.terms)
    return text, status


def cmd_dist(args):
    mu = _load_element(args)
    M = mu.space
    subset = [s for s in (args.subset or "").split(",") if s]
    if M.base not in subset:
        subset.insert(0, M.base)
    value = dist_to_subspace(mu, subset)
    if args.format == "document":
        return doc.dumps(doc.bundle("distance", element=doc.element_to_doc(mu, False),
                                    subset=subset, distance=_fmt(value))), EXIT_OK
    return f"distance to F({{{', '.join(subset)}}}): {_fmt(value)}\n", EXIT_OK


def cmd_suite(args):
    count = args.count if args.count is not None else 100
    n_max = args.n if args.n is not None else 10
    results = run_suite(args.seed, count, n_max, args.alpha, args.eps)
    ok = all(t.ok for t in results.values())
    if args.format == "document":
        text = doc.dumps(doc.bundle(
            "suite", seed=args.seed, count=count, n_max=n_max,
            results={k: {"passed": t.passed, "failed": t.failed} for k, t in results.items()}))
    else:
        rows = [[k, t.passed, t.failed, "pass" if t.ok else "FAIL"] for k, t in results.items()]
        text = _table(["check", "passed", "failed", "verdict"], rows)
        text += f"\nsuite seed={args.seed} spaces={count} n<={n_max}: {'PASS' if ok else 'FAIL'}\n"
    return text, EXIT_OK if ok else EXIT_FALSIFIED


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}

HELP = {
    "validate": "check a space document against the metric axioms",
    "segments": "list metric segments (and eps-segments with --eps) of every pair",
    "classify": "classify every molecule as extreme/exposed with evidence",
    "expose": "emit exposure certificates for trivial-segment pairs",
    "norm": "free-space norm of an element by both solvers",
    "dist": "distance from an element to the free space over --subset",
    "suite": "run the seeded property suites",
    "random": "generate a seeded random space document",
    "verify": "replay stored exposure certificates",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lipfree", description="Exact computations in Lipschitz-free spaces over finite metric spaces.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=HELP[name])
        p.add_argument("--input", help="input document (space, element or certificates)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--n", type=int, help="points for generated spaces (max points for suite)")
        p.add_argument("--count", type=int, help="number of random spaces for suite")
        p.add_argument("--profile", choices=PROFILES, default="shortest_path")
        p.add_argument("--alpha", type=Fraction)
        p.add_argument("--eps", type=Fraction)
        p.add_argument("--subset", help="comma-separated labels for dist (base added if missing)")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("document", "table"),
                       default="document" if name == "random" else "table")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text, status = HANDLERS[args.command](args)
    except MetricError as exc:
        print(f"invalid metric ({exc.axiom}): {exc} witness={list(exc.witness)}", file=sys.stderr)
        return EXIT_INVALID
    except (DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Falsified as exc:
        print(f"invariant falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except LipFreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
