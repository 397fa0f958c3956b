"""Command-line interface.

    embar cohomology <file> --algebra <Name> [--max-degree N]
    embar bar        <file> --triple <T> [--max-degree N] [--check-cdga]
    embar tor        <file> --triple <T> [--max-degree N] [--oracle]
    embar formality  <file> --triple <T> --certificate <path> [--max-degree N]
    embar compare    <file> --triple <T1> --triple <T2> [--ladder <L>] [--max-degree N]

Every command reads one definition file (see :mod:`embar.parser` for the
format), prints aligned text tables to stdout, and accepts ``--json``
for a machine-readable rendering instead. ``--figure <path>`` renders
the reported dimensions as a figure file alongside the text output.

Exit codes: 0 on success; 2 on input problems (syntax, validation, an
inapplicable oracle, a non-free module in ``formality``); 3 when
``formality`` hits an internal inconsistency; 1 when ``tor --oracle``
finds a disagreement or ``bar --check-cdga`` finds a violated axiom.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import render
from .barcomplex import BarComplexWindow
from .cdga import cohomology_algebra
from .errors import (
    EmbarError,
    MiddleAlgebraNotSimplyConnected,
    NotFree,
    NotPolynomialBase,
    ParseError,
    VanishingFailed,
)
from .formality import formality_certificate
from .parser import DEFAULT_MAX_DEGREE, parse_input
from .shuffle import check_cdga_structure
from .tor import compare_windows, koszul_tor_oracle, oracle_agrees, tor_algebra


def _build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embar",
        description=(
            "Exact bar-complex cohomology, Eilenberg-Moore Tor algebras and "
            "formality certificates for CDGAs over the rationals."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, figure=True):
        p.add_argument("input", help="definition file")
        p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE, metavar="N")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if figure:
            p.add_argument("--figure", metavar="PATH", help="also render a figure file")

    p = sub.add_parser("cohomology", help="cohomology algebra of one CDGA")
    common(p)
    p.add_argument("--algebra", required=True, metavar="NAME")

    p = sub.add_parser("bar", help="bar-complex window of a triple")
    common(p)
    p.add_argument("--triple", required=True, metavar="NAME")
    p.add_argument("--check-cdga", action="store_true", help="verify the shuffle CDGA axioms")

    p = sub.add_parser("tor", help="Tor algebra (Eilenberg-Moore second page)")
    common(p)
    p.add_argument("--triple", required=True, metavar="NAME")
    p.add_argument("--oracle", action="store_true", help="cross-check with the Koszul oracle")

    p = sub.add_parser("formality", help="formality certificate for a pull-back")
    common(p, figure=False)
    p.add_argument("--triple", required=True, metavar="NAME")
    p.add_argument("--certificate", required=True, metavar="PATH")

    p = sub.add_parser("compare", help="compare the cohomology of two windows")
    common(p)
    p.add_argument("--triple", action="append", required=True, metavar="NAME")
    p.add_argument("--ladder", metavar="NAME")
    return parser


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        text = open(args.input, encoding="utf-8").read()
    except OSError as err:
        print(f"cannot read {args.input}: {err}", file=sys.stderr)
        return 2
    try:
        defs = parse_input(text, args.max_degree)
    except ParseError as err:
        print(f"{args.input}:{err.line}:{err.column}: {err.message}", file=sys.stderr)
        return 2
    try:
        return _dispatch(args, defs)
    except ParseError as err:
        print(f"{args.input}:{err.line}:{err.column}: {err.message}", file=sys.stderr)
        return 2
    except NotFree:
        raise  # handled in the formality command
    except MiddleAlgebraNotSimplyConnected as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except EmbarError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def _dispatch(args, defs) -> int:
    if args.command == "cohomology":
        return _cmd_cohomology(args, defs)
    if args.command == "bar":
        return _cmd_bar(args, defs)
    if args.command == "tor":
        return _cmd_tor(args, defs)
    if args.command == "formality":
        return _cmd_formality(args, defs)
    if args.command == "compare":
        return _cmd_compare(args, defs)
    raise AssertionError(args.command)


def _need(table: dict, name: str, what: str):
    if name not in table:
        print(f"error: unknown {what} {name!r}", file=sys.stderr)
        return None
    return table[name]


def _cmd_cohomology(args, defs) -> int:
    A = _need(defs.algebras, args.algebra, "algebra")
    if A is None:
        return 2
    H, _ = cohomology_algebra(A)
    N = A.N
    product_rows = []
    for p in range(1, N + 1):
        for q in range(p, N + 1 - p):
            for i in range(H.dims[p]):
                for j in range(H.dims[q]):
                    value = H.mult_basis(p, i, q, j)
                    rendered = render.combo_str(
                        value, lambda k: f"{H.labels[p + q][k]}@{p + q}"
                    )
                    product_rows.append(
                        {
                            "left": H.labels[p][i],
                            "right": H.labels[q][j],
                            "degree": p + q,
                            "rendered": rendered,
                            "terms": [
                                {"label": H.labels[p + q][k], "coeff": render.coeff_str(c)}
                                for k, c in sorted(value.items())
                            ],
                        }
                    )
    if args.json:
        payload = {
            "command": "cohomology",
            "algebra": args.algebra,
            "max_degree": N,
            "valid_up_to": N - 1,
            "dims": render.dims_json(H.dims),
            "product": [
                {k: row[k] for k in ("left", "right", "terms")} for row in product_rows
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"cohomology of {args.algebra} (window degree {N}, certified through {N - 1})")
        rows = [[str(n), str(d), ", ".join(H.labels[n])] for n, d in enumerate(H.dims)]
        print(render.aligned_table(["degree", "dim", "classes"], rows))
        if product_rows:
            print()
            print("products of positive-degree classes:")
            for row in product_rows:
                print(f"  {row['left']} * {row['right']} = {row['rendered']}")
    if args.figure:
        render.save_dims_figure(
            H.dims, N - 1, args.figure, f"cohomology dims of {args.algebra}"
        )
        if not args.json:
            print(f"figure written to {args.figure}")
    return 0


def _window(args, defs, name):
    triple = _need(defs.triples, name, "triple")
    if triple is None:
        return None
    return BarComplexWindow(defs.system(name))


def _cmd_bar(args, defs) -> int:
    window = _window(args, defs, args.triple)
    if window is None:
        return 2
    N = window.system.N
    counts = window.bigraded_word_counts()
    violations: list[str] | None = None
    if args.check_cdga:
        violations = check_cdga_structure(window)
    if args.json:
        payload = {
            "command": "bar",
            "triple": args.triple,
            "max_degree": N,
            "valid_up_to": N - 1,
            "words": render.bigraded_json(counts, tensor_keyed=False),
            "totals": render.dims_json(window.word_counts()),
            "cdga_check": None if violations is None else {"ok": not violations, "violations": violations},
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"bar window of {args.triple} at degree {N} (word counts)")
        print(render.bigraded_grid(counts, N))
        totals = window.word_counts()
        print()
        print(render.aligned_table(
            ["total degree", "words"], [[str(n), str(c)] for n, c in enumerate(totals)]
        ))
        if violations is not None:
            print()
            if violations:
                print("cdga check FAILED:")
                for v in violations:
                    print(f"  {v}")
            else:
                print("cdga check: associativity, graded commutativity and the")
                print("Leibniz rule verified exhaustively inside the window")
    if args.figure:
        render.save_bigraded_figure(counts, args.figure, f"bar window of {args.triple}", N)
        if not args.json:
            print(f"figure written to {args.figure}")
    return 1 if violations else 0


def _cmd_tor(args, defs) -> int:
    triple = _need(defs.triples, args.triple, "triple")
    if triple is None:
        return 2
    system = defs.system(args.triple)
    try:
        tor = tor_algebra(system.f, system.g)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    oracle = None
    agrees = None
    if args.oracle:
        try:
            oracle = koszul_tor_oracle(system.f, system.g)
        except NotPolynomialBase as err:
            print(f"error: the Koszul oracle does not apply: {err}", file=sys.stderr)
            return 2
        agrees = oracle_agrees(tor, oracle)
    bigraded_totals = (
        {(b, m + b): d for (b, m), d in tor.bigraded_dims.items()}
        if tor.bigraded_dims is not None
        else None
    )
    if args.json:
        payload = {
            "command": "tor",
            "triple": args.triple,
            "max_degree": system.N,
            "valid_up_to": tor.valid_up_to,
            "total": render.dims_json(tor.total_dims),
            "bigraded": render.bigraded_json(tor.bigraded_dims, tensor_keyed=True),
            "product": render.products_json(tor),
        }
        if oracle is not None:
            payload["oracle"] = {
                "agrees": agrees,
                "bigraded": render.bigraded_json(oracle.bigraded_dims, tensor_keyed=True),
            }
        print(json.dumps(payload, indent=2))
    else:
        print(f"Tor algebra of {args.triple} (certified through degree {tor.valid_up_to})")
        print(render.aligned_table(
            ["total degree", "dim"], [[str(n), str(d)] for n, d in enumerate(tor.total_dims)]
        ))
        if bigraded_totals is not None:
            print()
            print("bigraded dims (second-page layout):")
            print(render.bigraded_grid(bigraded_totals, tor.valid_up_to))
        lines = render.product_lines(tor)
        if lines:
            print()
            print("products:")
            for line in lines:
                print(f"  {line}")
        if oracle is not None:
            print()
            print(render.oracle_verdict(tor, oracle, agrees))
    if args.figure and bigraded_totals is not None:
        render.save_bigraded_figure(
            bigraded_totals, args.figure, f"Tor of {args.triple}", tor.valid_up_to
        )
        if not args.json:
            print(f"figure written to {args.figure}")
    return 0 if (agrees is None or agrees) else 1


def _cmd_formality(args, defs) -> int:
    triple = _need(defs.triples, args.triple, "triple")
    if triple is None:
        return 2
    system = defs.system(args.triple)
    try:
        cert = formality_certificate(system.f, system.g)
    except NotFree as err:
        print(f"criterion inapplicable (not a disproof of formality): {err}", file=sys.stderr)
        return 2
    except VanishingFailed as err:
        print(f"internal inconsistency: {err}", file=sys.stderr)
        return 3
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    with open(args.certificate, "w", encoding="utf-8") as fh:
        fh.write(cert.to_text())
    if args.json:
        payload = {
            "command": "formality",
            "triple": args.triple,
            "status": "issued",
            "certificate_path": args.certificate,
            "valid_up_to": cert.valid_up_to,
            "dims": render.dims_json(cert.dims),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"formality certificate issued for {args.triple}")
        print(f"written to {args.certificate}")
        print("pull-back cohomology dims: " + ", ".join(str(d) for d in cert.dims))
    return 0


def _cmd_compare(args, defs) -> int:
    if len(args.triple) != 2:
        print("error: compare needs exactly two --triple arguments", file=sys.stderr)
        return 2
    windows = []
    for name in args.triple:
        w = _window(args, defs, name)
        if w is None:
            return 2
        windows.append(w)
    ladder = None
    if args.ladder:
        if args.ladder not in defs.ladders:
            print(f"error: unknown ladder {args.ladder!r}", file=sys.stderr)
            return 2
        ladder = defs.ladder(args.ladder)
    report = compare_windows(windows[0], windows[1], ladder)
    if args.json:
        payload = {
            "command": "compare",
            "triples": list(args.triple),
            "valid_up_to": report.valid_up_to,
            "rows": [
                {
                    "total_degree": n,
                    "dim": report.dims1[n],
                    "other_dim": report.dims2[n],
                    "equal": report.dims1[n] == report.dims2[n],
                }
                for n in range(len(report.dims1))
            ],
            "dims_equal": report.dims_equal,
            "induced_iso": report.induced_iso,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"cohomology comparison (certified through degree {report.valid_up_to})")
        rows = [
            [
                str(n),
                str(report.dims1[n]),
                str(report.dims2[n]),
                "=" if report.dims1[n] == report.dims2[n] else "DIFFER",
            ]
            for n in range(len(report.dims1))
        ]
        print(render.aligned_table(
            ["total degree", args.triple[0], args.triple[1], ""], rows
        ))
        print()
        print(report.summary())
    if args.figure:
        render.save_compare_figure(
            report.dims1,
            report.dims2,
            (args.triple[0], args.triple[1]),
            args.figure,
            "window cohomology comparison",
        )
        if not args.json:
            print(f"figure written to {args.figure}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
