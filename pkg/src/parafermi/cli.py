"""Command-line driver: build, verify, analyze, table and contfrac.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .report import Report, _jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    args: argparse.Namespace

    @property
    def fmt(self):
        return getattr(self.args, "format", "text")


def _paraorder(s):
    p = int(s)
    if p < 1 or (p + 1) & p:
        raise argparse.ArgumentTypeError(f"{p} is not a paraorder 2^n - 1")
    return p


# -- table computation ------------------------------------------------------------

def _t2(args):
    from .blockstruct import count_formula, representatives
    from .rootseq import triangle
    rows = []
    for p in (15, 31, 63, 127, 255):
        if p > args.p_max:
            break
        rows.append([p, representatives(triangle("F", p)).count, count_formula(p)])
    return ["p", "T_p", "closed_form"], rows


def _t3(args):
    from .mod8 import table3
    return table3()


def _t5(args):
    from .primesfact import table5
    return table5()


def _t6(args):
    from .primesfact import order_comparison_table
    cols, rows = order_comparison_table()
    return cols, [[q, e, s, round(c, 2), "-" if l is None else l] for q, e, s, c, l in rows]


def _t7(args):
    from .diffs import kissing_representations
    return ["n", "theta", "L_n"], [list(r) for r in kissing_representations().details["rows"]]


def _t8(args):
    from .diffs import SYNOPTICAL, kissing, lookup
    rows = []
    for n, terms in SYNOPTICAL:
        expr = " ".join(f"{'+' if sg > 0 else '-'} {name}_{idx}^({p})" for sg, name, p, idx, _ in terms)
        value = sum(sg * lookup(name, p, idx) for sg, name, p, idx, _ in terms)
        rows.append([n, expr.lstrip("+ "), value, kissing(n)])
    return ["n", "expression", "computed", "L_n"], rows


def _t9(args):
    from .cardioid import table9_rows
    return table9_rows(digits=args.digits)


def _t11(args):
    from .cardioid import place_value_table
    return place_value_table(digits=args.digits)


def _t12(args):
    from .cardioid import kissing_contfrac_table
    cols, rows, _ = kissing_contfrac_table(digits=args.digits)
    return cols, rows


TABLES = {"T2": _t2, "T3": _t3, "T5": _t5, "T6": _t6, "T7": _t7, "T8": _t8,
          "T9": _t9, "T11": _t11, "T12": _t12}


def emit_table(name, columns, rows, fmt="text"):
    """Render a table deterministically as text, CSV or JSON {name, columns, rows}."""
    rows = [list(r) for r in rows]
    if fmt == "json":
        return json.dumps({"name": name, "columns": list(columns), "rows": _jsonable(rows)},
                          ensure_ascii=False)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if fmt == "text":
        lines = [f"{name}: " + " | ".join(str(c) for c in columns)]
        for r in rows:
            lines.append(f"{r[0]} → " + "  ".join(str(x) for x in r[1:]))
        return "\n".join(lines)
    raise UsageError(f"unknown format {fmt}")


# -- verify suites ------------------------------------------------------------------

def _suite_green(p):
    from .green import verify_green_suite
    return [verify_green_suite(p)]


def _suite_rootseq(p):
    from .rootseq import verify_kind_invariants, verify_nilpotency, verify_square, member
    out = []
    for kind in ("F", "D", "H"):
        out += [verify_square(kind, p), verify_kind_invariants(kind, p)]
        if p <= 31:
            out.append(verify_nilpotency(member(kind, p)[0]))
    return out


def _suite_blockstruct(p):
    from .blockstruct import (catalan_symmetry, catalan_traces, check_boxed_areas, check_interordinal_f,
                              check_intraordinal_f, check_secondary_symmetry, representatives_report)
    from .rootseq import triangle
    out = [check_secondary_symmetry(triangle("F", p).square(), 3)]
    if p >= 7:
        out += [catalan_traces(triangle("F", p)), catalan_traces(triangle("H", p)),
                catalan_symmetry(triangle("F", p)), check_interordinal_f(p // 2) if p >= 15 else Report("interordinal (n/a)"),
                check_intraordinal_f(p) if p >= 15 else Report("intraordinal (n/a)"),
                check_boxed_areas(p) if p >= 15 else Report("boxed (n/a)")]
    if p >= 15:
        out.append(representatives_report(p))
    return out


def _suite_mod8(p):
    from .mod8 import MOD8_DETERMINANTS, det_mod8, verify_lambda_table
    dets = Report("mod-8 determinants")
    for q, want in MOD8_DETERMINANTS.items():
        dets.check(det_mod8(q) == want, f"p={q}: det = {det_mod8(q)}, expected {want}")
    return [verify_lambda_table(tuple(q for q in (7, 15, 31, 63) if q <= p) or (7,)), dets]


def _suite_falg(p):
    from .falg import verify_f_algebra, verify_heterotic, verify_mod8_algebra
    if p in (3, 7):
        out = [verify_f_algebra(p), verify_heterotic(p)]
        if p == 7:
            out += [verify_heterotic(7, s) for s in ("S1", "S2", "S3")]
        return out
    return [verify_mod8_algebra(p)]


def _suite_diffs(p):
    from .diffs import kissing_representations, synoptical_check, verify_gmax_decomposition
    return [verify_gmax_decomposition(), kissing_representations(), synoptical_check()]


def _suite_primesfact(p):
    from .primesfact import verify_scpf
    return [verify_scpf()]


def _suite_cardioid(p):
    from .cardioid import (kissing_contfrac_table, leading_coefficient_recurrences, verify_radicals,
                           verify_self_action, verify_successor, verify_vieta)
    return [verify_radicals(), verify_self_action(), verify_vieta(), leading_coefficient_recurrences(),
            verify_successor(), kissing_contfrac_table()[2]]


SUITES = {"green": _suite_green, "rootseq": _suite_rootseq, "blockstruct": _suite_blockstruct,
          "mod8": _suite_mod8, "falg": _suite_falg, "diffs": _suite_diffs,
          "primesfact": _suite_primesfact, "cardioid": _suite_cardioid}


# -- subcommands --------------------------------------------------------------------

def cmd_build(cfg, out):
    from .rootseq import triangle
    a = cfg.args
    t = triangle(a.kind.upper(), a.p)
    sq = t.square()
    rows = [[int(x) for x in row] for row in sq]
    if cfg.fmt == "json":
        out.write(json.dumps({"kind": a.kind, "p": a.p, "triangle": rows}) + "\n")
    elif cfg.fmt == "csv":
        out.write(emit_table(f"{a.kind}{a.p}", [f"c{j}" for j in range(len(rows))], rows, "csv") + "\n")
    else:
        for row in rows:
            out.write(" ".join(str(x) for x in row) + "\n")
    return EXIT_OK


def cmd_verify(cfg, out):
    a = cfg.args
    names = list(SUITES) if a.suite == "all" else [a.suite]
    reports = []
    for name in names:
        reports += SUITES[name](a.p)
    ok = all(r.ok for r in reports)
    if cfg.fmt == "json":
        out.write(json.dumps({"suite": a.suite, "p": a.p, "ok": ok,
                              "reports": [r.to_dict() for r in reports]}, ensure_ascii=False) + "\n")
    else:
        for r in reports:
            out.write(r.summary() + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_analyze(cfg, out):
    a = cfg.args
    if a.what == "factorize":
        from .primesfact import factorize
        f = factorize(a.value)
        res = {"value": a.value, "factors": f.factors, "class": f.tag, "text": f.text()}
    elif a.what == "interpolate":
        from .primesfact import prime_interpolate
        r = prime_interpolate(a.value)
        res = {"value": a.value, "rank": r.rank, "offset": r.offset, "upper_offset": r.upper_offset,
               "text": r.text()}
    elif a.what == "representatives":
        from .blockstruct import representatives_report
        from .diffs import representative_values
        rep = representatives_report(a.p)
        res = {"p": a.p, "values": representative_values("F", a.p), **_jsonable(rep.details)}
    elif a.what == "differences":
        from .diffs import sequence
        res = {"p": a.p, **{n: sequence(n, a.p) for n in ("dG", "oG", "dJ", "oJ")}}
    elif a.what == "scpf":
        from .primesfact import catalan_scpf
        suffix, s = catalan_scpf(a.value)
        res = {"q": a.value, "scpf": suffix, "S": s}
    elif a.what == "search":
        from .diffs import search_parafermial
        expr, rep = search_parafermial(a.value, n=a.n, max_terms=a.max_terms, budget=a.budget)
        if expr is None and rep.details.get("budget_exhausted"):
            raise BudgetExceeded(f"search budget {a.budget} exhausted")
        res = {"target": a.value, "expression": None if expr is None else str(expr), **_jsonable(rep.details)}
    else:
        raise UsageError(f"unknown analysis {a.what}")
    if cfg.fmt == "json":
        out.write(json.dumps(_jsonable(res), ensure_ascii=False) + "\n")
    else:
        for k, v in res.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_table(cfg, out):
    a = cfg.args
    name = a.name.upper()
    if name not in TABLES:
        raise UsageError(f"unknown table {a.name}; choose from {', '.join(TABLES)}")
    cols, rows = TABLES[name](a)
    out.write(emit_table(name, cols, rows, cfg.fmt) + "\n")
    return EXIT_OK


def cmd_contfrac(cfg, out):
    import mpmath
    from fractions import Fraction
    from .cardioid import _intensional, contfrac_expand, half_angle
    a = cfg.args
    if a.target == "cneg":
        if a.k is None or a.k < 2:
            raise UsageError("--k >= 2 is required for target cneg")
        fn = lambda: _intensional(a.k)
        label = f"C_-1/{a.k}"
    else:
        if a.index is None or a.index < 1:
            raise UsageError("--index >= 1 is required for arclength targets")
        pick = {"A": 0, "coA": 1}[a.target]
        fn = lambda: half_angle(a.index)[pick]
        label = f"{a.target}_{a.index}"
    cf = contfrac_expand(fn, a.terms, a.mode, a.digits)
    res = {"target": label, "mode": cf.mode, "stable_prefix": cf.stable_prefix, "quotients": cf.quotients}
    if cfg.fmt == "json":
        out.write(json.dumps(res) + "\n")
    else:
        out.write(f"{label} = [{cf.quotients[0]}; {', '.join(str(x) for x in cf.quotients[1:])}]\n")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="parafermi", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)
    fmt = dict(choices=("text", "json", "csv"), default="text")

    b = sub.add_parser("build", help="print a coefficient triangle")
    b.add_argument("--kind", choices=("f", "d", "h"), default="f")
    b.add_argument("--p", type=_paraorder, required=True)
    b.add_argument("--format", **fmt)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=tuple(SUITES) + ("all",), required=True)
    v.add_argument("--p", type=_paraorder, default=15)
    v.add_argument("--format", **fmt)

    an = sub.add_parser("analyze", help="factorize, interpolate, representatives, differences, scpf, search")
    an.add_argument("what", choices=("factorize", "interpolate", "representatives", "differences", "scpf", "search"))
    an.add_argument("--value", type=int)
    an.add_argument("--p", type=_paraorder, default=15)
    an.add_argument("--n", type=int, default=None)
    an.add_argument("--max-terms", type=int, default=4)
    an.add_argument("--budget", type=int, default=2_000_000)
    an.add_argument("--format", **fmt)

    t = sub.add_parser("table", help="reproduce a table: " + ", ".join(TABLES))
    t.add_argument("--name", required=True)
    t.add_argument("--p-max", type=int, default=255)
    t.add_argument("--digits", type=int, default=None)
    t.add_argument("--format", **fmt)

    c = sub.add_parser("contfrac", help="precision-certified continued fraction")
    c.add_argument("--target", choices=("A", "coA", "cneg"), required=True)
    c.add_argument("--index", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--terms", type=int, default=20)
    c.add_argument("--digits", type=int, default=None)
    c.add_argument("--mode", choices=("simple", "alternating"), default="simple")
    c.add_argument("--format", **fmt)
    return ap


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "analyze": cmd_analyze,
            "table": cmd_table, "contfrac": cmd_contfrac}


def run(argv=None, out=None):
    from .cardioid import PrecisionExhausted
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.subcommand == "analyze" and args.what in ("factorize", "interpolate", "scpf", "search") \
            and args.value is None:
        print("error: --value is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.subcommand](RunConfig(args.subcommand, args), out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionExhausted, BudgetExceeded) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
