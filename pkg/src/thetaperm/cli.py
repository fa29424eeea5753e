"""Command-line front end.

Exit codes: 0 success, 2 identity violation, 3 precondition or cap error,
4 internal arithmetic failure (inexact division, integrality).
"""

from __future__ import annotations

import argparse
import json
import sys
from math import factorial

from . import cobordism, combinatorics, genus, hodge, permutohedron, tomei
from .config import FORMATS, Config
from .errors import FormulaViolationError, PreconditionError, ThetapermError
from .polyring import MPoly
from .verify import exit_code, run_verify

SEQUENCE_MAX = 50


def _document(cfg: Config, anchor: str, payload: dict) -> str:
    doc = {"config": cfg.to_dict(), "paper_anchor": anchor, **payload}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _latex_rows(rows) -> str:
    return "".join(" & ".join(str(v) for v in row) + " \\\\\n" for row in rows)


# -- subcommands -----------------------------------------------------------------


def cmd_sequences(args, cfg: Config) -> tuple[str, int]:
    if not 0 <= args.n_max <= SEQUENCE_MAX:
        raise PreconditionError(f"n_max must be in 0..{SEQUENCE_MAX}")
    if args.kind == "stirling2":
        labels = list(range(args.n_max + 1))
        rows = [combinatorics.stirling2_row(n) for n in labels]
        anchor = "st"
    elif args.kind == "eulerian":
        labels = list(range(1, args.n_max + 1))
        rows = [combinatorics.eulerian_row(n) for n in labels]
        anchor = "expli"
    else:
        labels = list(range(args.n_max + 1))
        rows = [(combinatorics.bernoulli(n),) for n in labels]
        anchor = "tau"
    if cfg.format == "json":
        payload = {"kind": args.kind, "rows": {str(n): [str(v) for v in row] for n, row in zip(labels, rows)}}
        return _document(cfg, anchor, payload), 0
    if cfg.format == "latex":
        return _latex_rows([(n, *row) for n, row in zip(labels, rows)]), 0
    if args.kind == "bernoulli":
        return "".join(f"B_{n} = {row[0]}\n" for n, row in zip(labels, rows)), 0
    return "".join(f"{n}: " + " ".join(map(str, row)) + "\n" for n, row in zip(labels, rows)), 0


def cmd_permutohedron(args, cfg: Config) -> tuple[str, int]:
    n = args.n
    if args.what == "f":
        fv = permutohedron.f_vector(n)
        data = {"f_vector": list(fv.counts), "f_poly": permutohedron.f_poly(n)}
        anchor = "fpol"
    elif args.what == "h":
        data = {"h_vector": list(permutohedron.h_vector(n).coefficients), "h_poly": permutohedron.h_poly(n)}
        anchor = "hf"
    else:
        data = {
            "face_oracle": list(permutohedron.face_oracle(n, cap=cfg.face_cap).counts),
            "vertex_index_oracle": list(permutohedron.vertex_index_oracle(n, cap=cfg.perm_cap).coefficients),
        }
        anchor = "st"
    if cfg.format == "json":
        return _document(cfg, anchor, {"n": n, **{k: str(v) if isinstance(v, MPoly) else v for k, v in data.items()}}), 0
    if cfg.format == "latex":
        return "".join(
            f"{k}: ${v.to_latex()}$\n" if isinstance(v, MPoly) else f"{k}: " + " & ".join(map(str, v)) + "\n"
            for k, v in data.items()
        ), 0
    return "".join(f"{k}: {' '.join(map(str, v)) if isinstance(v, list) else v}\n" for k, v in data.items()), 0


def cmd_hodge(args, cfg: Config) -> tuple[str, int]:
    diamond = hodge.hodge_diamond(args.n, oracle=args.oracle)
    problems = diamond.violations()
    code = FormulaViolationError.exit_code if problems else 0
    if cfg.format == "json":
        return _document(cfg, "hpn", {**diamond.to_dict(), "violations": problems}), code
    out = diamond.to_latex() if cfg.format == "latex" else diamond.to_text()
    return out + "".join(f"violation: {p}\n" for p in problems), code


_GF = {
    "td": (genus.td_theta_gf, "FE"),
    "f": (genus.f_gf, "Fex"),
    "h": (genus.h_gf, "H"),
    "chi-y": (genus.chi_y_gf, "geny"),
}


def cmd_genus(args, cfg: Config) -> tuple[str, int]:
    order = args.order or cfg.order
    builder, anchor = _GF[args.which]
    series = builder(order)
    values = [genus.gf_value(series, n) for n in range(order)]
    if cfg.format == "json":
        payload = {"which": args.which, "order": order, "note": series.note, "values": [str(v) for v in values]}
        return _document(cfg, anchor, payload), 0
    if cfg.format == "latex":
        return "".join(f"n={n}: ${v.to_latex()}$ \\\\\n" for n, v in enumerate(values)), 0
    return "".join(f"n={n}: {v}\n" for n, v in enumerate(values)), 0


def cmd_cobordism(args, cfg: Config) -> tuple[str, int]:
    n = args.n
    report = cobordism.class_independence_check(
        n, trials=args.trials, seed=cfg.seed, cap=cfg.class_cap, allow_large=args.allow_large, grade_cap=cfg.grade_cap
    )
    cls = report.distinct[0]
    checks = [
        hodge.Pairing("Td", genus.genus_eval(cls, genus.TODD), MPoly.const(1)),
        hodge.Pairing("Td_st vs (-1)^n h_poly", genus.genus_eval(cls, genus.TODD_ST), (-1) ** n * permutohedron.h_poly(n)),
        hodge.Pairing("euler characteristic", genus.genus_eval(cls, genus.EULER), MPoly.const(factorial(n + 1))),
    ]
    ok = report.consistent and all(p.equal for p in checks)
    code = 0 if ok else FormulaViolationError.exit_code
    if cfg.format == "json":
        payload = {
            "n": n,
            "class": cobordism.theta_to_json(cls),
            "text": str(cls),
            "consistent": report.consistent,
            "distinct": [str(c) for c in report.distinct],
            "points": [[str(z) for z in p.z] for p in report.points],
            "checks": [p.to_dict() for p in checks],
        }
        return _document(cfg, "xpi", payload), code
    if cfg.format == "latex":
        return f"[X_{{\\Pi}}^{{{n}}}] = {cls.to_latex()}\n", code
    lines = [f"[X^{n}] = {cls}", f"points agree: {report.consistent} ({len(report.points)} trials, seed {cfg.seed})"]
    if not report.consistent:
        lines += [f"  distinct: {c}" for c in report.distinct]
    lines += [f"{p.label}: {p.lhs} {'==' if p.equal else '!='} {p.rhs}" for p in checks]
    return "\n".join(lines) + "\n", code


def cmd_tomei(args, cfg: Config) -> tuple[str, int]:
    report = tomei.triality_report(args.n)
    code = 0 if report.all_equal else FormulaViolationError.exit_code
    if cfg.format == "json":
        payload = {"invariants": tomei.tomei_invariants(args.n).to_dict(), "report": report.to_dict()}
        return _document(cfg, "relat1X", payload), code
    return report.to_text(), code


def cmd_verify(args, cfg: Config) -> tuple[str, int]:
    stream = sys.stderr if cfg.format == "json" else None

    def progress(result):
        if stream is not None:
            print(f"{'PASS' if result.ok else 'FAIL'} {result.name}", file=stream)

    results = run_verify(args.n_max, fast=args.fast, cfg=cfg, progress=progress)
    code = exit_code(results)
    if cfg.format == "json":
        payload = {"n_max": args.n_max, "fast": args.fast, "exit_code": code, "checks": [r.to_dict() for r in results]}
        return _document(cfg, "verify", payload), code
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name} [{r.anchor}]")
        lines += [f"    {f}" for f in r.failures]
        if r.error is not None:
            lines.append(f"    {type(r.error).__name__}: {r.error}")
    failed = sum(not r.ok for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines) + "\n", code


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default text)")
    common.add_argument("--seed", type=int, default=None, help="RNG seed; 0 draws one from system entropy")
    common.add_argument("--order", type=int, default=None, help="series truncation order")
    common.add_argument("--face-cap", type=int, default=None)
    common.add_argument("--perm-cap", type=int, default=None)
    common.add_argument("--class-cap", type=int, default=None)
    common.add_argument("--grade-cap", type=int, default=None)

    parser = argparse.ArgumentParser(prog="thetaperm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sequences", parents=[common], help="Stirling, Eulerian or Bernoulli tables")
    p.add_argument("kind", choices=("stirling2", "eulerian", "bernoulli"))
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_sequences)

    p = sub.add_parser("permutohedron", parents=[common], help="f/h data of the permutohedron")
    p.add_argument("n", type=int)
    p.add_argument("what", nargs="?", choices=("f", "h", "oracle"), default="f")
    p.set_defaults(func=cmd_permutohedron)

    p = sub.add_parser("hodge", parents=[common], help="Hodge diamond of the theta divisor")
    p.add_argument("n", type=int)
    p.add_argument("--oracle", action="store_true", help="middle row from the binomial-sum oracle")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("genus", parents=[common], help="genus generating series")
    p.add_argument("which", choices=tuple(_GF))
    p.add_argument("N", nargs="?", type=int, default=None, help="truncation order (overrides --order)")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("cobordism", parents=[common], help="cobordism class of the permutohedral variety")
    p.add_argument("n", type=int)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--allow-large", action="store_true", help="permit n above the class cap")
    p.set_defaults(func=cmd_cobordism)

    p = sub.add_parser("tomei", parents=[common], help="Tomei manifold triality report")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_tomei)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("n_max", type=int)
    p.add_argument("--fast", action="store_true", help="n <= 4, permutohedral class only for n <= 3")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "genus" and args.N is not None:
        args.order = args.N
    try:
        cfg = Config.from_env(
            order=args.order,
            face_cap=args.face_cap,
            perm_cap=args.perm_cap,
            class_cap=args.class_cap,
            grade_cap=args.grade_cap,
            seed=args.seed,
            format=args.format,
        )
        out, code = args.func(args, cfg)
    except ThetapermError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
