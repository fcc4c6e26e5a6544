"""Command-line interface.

Exit status: 0 on success, 2 when a budget refuses the request, 1 on any
other error (including bad flags).  Exact quantities print as decimal
integers or ``num/den`` rationals; values carried in log form print as
``q^<exponent>``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import burnside, collision, ea, fixcount, functions, gf
from .errors import BudgetExceeded, EACountError, SolutionSpaceTooLarge
from .logq import LogQValue


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, LogQValue):
        return v.render()
    if isinstance(v, float):
        return f"{v:.12f}"
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return "" if v is None else str(v)


class Output:
    """Collects records and renders them as text, JSON or CSV."""

    def __init__(self, fmt, path):
        self.fmt = fmt
        self.path = path
        self.records = []

    def add(self, record: dict):
        self.records.append(record)

    def render(self) -> str:
        if self.fmt == "csv":
            buf = io.StringIO()
            cols = list(self.records[0]) if self.records else []
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(cols)
            for r in self.records:
                w.writerow([_fmt(r.get(c)) for c in cols])
            return buf.getvalue()
        if self.fmt == "json":
            rows = [{k: _json_value(v) for k, v in r.items()} for r in self.records]
            return json.dumps(rows[0] if len(rows) == 1 else rows, indent=2) + "\n"
        lines = []
        for r in self.records:
            if len(self.records) > 1 and lines:
                lines.append("")
            lines.extend(f"{k}: {_fmt(v)}" for k, v in r.items())
        return "\n".join(lines) + "\n"

    def write(self):
        text = self.render()
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _json_value(v):
    if isinstance(v, (Fraction, LogQValue)):
        return _fmt(v)
    if isinstance(v, tuple):
        return [_json_value(x) for x in v]
    return v


def _ints(text):
    return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]


# ---------------------------------------------------------------------------
# subcommands


def cmd_group_order(args, out):
    q, n, m = args.q, args.n, args.m
    out.add({
        "q": q, "n": n, "m": m,
        "gl_n": gf.gl_order(n, q), "agl_n": gf.agl_order(n, q),
        "gl_m": gf.gl_order(m, q), "agl_m": gf.agl_order(m, q),
        "gamma_order": ea.gamma_order(q, n, m),
        "agl_n_plus_m": gf.agl_order(n + m, q),
        "function_space_size": functions.function_space_size(q, n, m),
        "function_space_log_q": functions.function_space_log_q(q, n, m),
    })


def _element_from_args(args):
    if args.element:
        return ea.read_element(args.element)
    q, n, m = args.q, args.n, args.m
    P = gf.FqMatrix.from_flat(_ints(args.P), n, n, q) if args.P else gf.FqMatrix.identity(n, q)
    Q = gf.FqMatrix.from_flat(_ints(args.Q), m, m, q) if args.Q else gf.FqMatrix.identity(m, q)
    a = tuple(_ints(args.a)) if args.a else (0,) * n
    b = tuple(_ints(args.b)) if args.b else (0,) * m
    return ea.EAElement(P, a, Q, b)


def cmd_fix_count(args, out):
    g = _element_from_args(args)
    detail = fixcount.fix_count_exact(g)
    rec = {"q": g.q, "n": g.n, "m": g.m, "element": json.dumps(g.to_dict()),
           "orbit_lengths": [L for L, _ in detail.per_orbit],
           "orbit_counts": [c for _, c in detail.per_orbit],
           "fix_count": detail.total, "log_q_fix_count": detail.log_q_total}
    if not g.is_identity():
        rec["upper_bound"] = fixcount.fix_count_upper(g)
    if args.oracle:
        rec["bruteforce"] = fixcount.fix_count_bruteforce(g)
    out.add(rec)


def cmd_fix_count_all(args, out):
    q, n, m = args.q, args.n, args.m
    size = functions.function_space_size(q, n, m)
    oracle = size <= _budget("oracle_budget")
    elements = mismatches = violations = 0
    total = 0
    for g in ea.enumerate_gamma(q, n, m):
        elements += 1
        c = fixcount.fix_count_exact(g).total
        total += c
        if oracle and fixcount.fix_count_bruteforce(g) != c:
            mismatches += 1
        if not g.is_identity() and not c <= fixcount.fix_count_upper(g):
            violations += 1
    out.add({"q": q, "n": n, "m": m, "elements": elements, "oracle_compared": oracle,
             "oracle_mismatches": mismatches if oracle else None,
             "bound_violations": violations, "burnside_sum": total})


def cmd_count_classes(args, out):
    rep = burnside.count_classes(args.q, args.n, args.m, args.method)
    out.add(rep.to_dict() if args.format != "csv" else dict(zip(rep.CSV_HEADER, rep.csv_row())))


def cmd_relative_error(args, out):
    rep = burnside.count_classes(args.q, args.n, args.m, args.method)
    out.add({"q": rep.q, "n": rep.n, "m": rep.m, "method": rep.method,
             "class_count": rep.class_count, "naive_estimate": rep.naive_estimate,
             "ratio": rep.relative_ratio, "ratio_decimal": burnside.decimal_string(rep.relative_ratio),
             "abs_ratio_minus_one": rep.relative_error,
             "abs_ratio_minus_one_decimal": burnside.decimal_string(rep.relative_error)})


def cmd_orbit_census(args, out):
    census = collision.orbit_partition(args.q, args.n, args.m)
    for row in census.csv_rows():
        out.add(dict(zip(census.CSV_HEADER, row)))


def cmd_stabilizer(args, out):
    F = functions.read_table(args.input)
    rep = ea.stabilizer(F)
    out.add({"q": F.q, "n": F.n, "m": F.m, "stabilizer_size": rep.size,
             "is_trivial": rep.is_trivial, "gamma_order": ea.gamma_order(*F.dims)})
    if args.list and args.format != "csv":
        out.records[-1]["elements"] = [json.dumps(g.to_dict()) for g in rep.elements]


def cmd_stab_census(args, out):
    q, n, m = args.q, args.n, args.m
    frac = collision.nontrivial_stab_census(q, n, m)
    census = collision.orbit_partition(q, n, m)
    bound = collision.nontrivial_stab_bound(q, n, m)
    out.add({"q": q, "n": n, "m": m, "nontrivial_fraction": frac,
             "nontrivial_functions": frac.numerator * (census.total // frac.denominator),
             "census_cross_check": Fraction(census.nontrivial_stab_functions(), census.total) == frac,
             "union_bound": bound.value, "union_bound_vacuous": bound.vacuous})


def _estimate_record(e):
    rec = dict(zip(e.CSV_HEADER, e.csv_row()))
    if e.exact is not None:
        rec["within_3_sigma"] = e.within_sigmas(3)
    return rec


def cmd_stab_sample(args, out):
    q, n, m = args.q, args.n, args.m
    exact = None
    if functions.function_space_size(q, n, m) <= _budget("oracle_budget") and args.reference:
        exact = collision.nontrivial_stab_census(q, n, m)
    e = collision.mc_trivial_stab(q, n, m, args.trials, args.seed, args.threads, exact)
    out.add(_estimate_record(e))


def cmd_collision(args, out):
    q, n, m = args.q, args.n, args.m
    if args.mc:
        exact = None
        if functions.function_space_size(q, n, m) <= _budget("oracle_budget"):
            exact = collision.collision_prob_exact(q, n, m)
        out.add(_estimate_record(collision.mc_collision(q, n, m, args.trials, args.seed,
                                                        args.threads, exact)))
        return
    census = collision.orbit_partition(q, n, m)
    p = collision.collision_prob_exact(q, n, m, census)
    upper = collision.collision_upper_ea(q, n, m)
    out.add({"q": q, "n": n, "m": m, "orbits": census.count, "collision_prob": p,
             "collision_prob_decimal": burnside.decimal_string(p),
             "sum_orbit_sizes_squared": census.sum_of_squares(),
             "ea_upper_bound": upper.exact(), "ea_upper_vacuous": upper.vacuous})


def cmd_bounds(args, out):
    q = args.q
    for n in range(1, args.n + 1):
        for m in range(1, args.m + 1):
            ea_up = collision.collision_upper_ea(q, n, m)
            ccz_up = collision.collision_upper_ccz(q, n, m)
            sb = collision.nontrivial_stab_bound(q, n, m)
            out.add({"q": q, "n": n, "m": m, "gamma_order": ea.gamma_order(q, n, m),
                     "function_space_log_q": functions.function_space_log_q(q, n, m),
                     "ea_collision_bound": ea_up, "ea_collision_vacuous": ea_up.vacuous,
                     "ccz_collision_bound": ccz_up, "ccz_collision_vacuous": ccz_up.vacuous,
                     "stab_case1_slack": sb.case1_slack, "stab_case2_slack": sb.case2_slack,
                     "stab_binding_case": sb.binding_case, "stab_bound": sb.value,
                     "stab_bound_vacuous": sb.vacuous,
                     "bound_constant_c": fixcount.bound_constant(q, m)})


def cmd_ea_check(args, out):
    F, G = functions.read_table(args.f), functions.read_table(args.g)
    w = ea.ea_equivalent(F, G)
    out.add({"equivalent": w is not None, "witness": json.dumps(w.to_dict()) if w else None})


def cmd_ccz_check(args, out):
    F, G = functions.read_table(args.f), functions.read_table(args.g)
    w = collision.ccz_equivalent(F, G)
    out.add({"equivalent": w is not None,
             "witness_M": w.M.flat() if w else None, "witness_c": list(w.c) if w else None})


def cmd_selftest(args, out):
    from .selftest import run_all
    results = run_all()
    for r in results:
        out.add({"suite": r.name, "status": "PASS" if r.ok else "FAIL",
                 "checks": r.checked, "failures": len(r.failures)})
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------


BUDGETS = ("enumeration_budget", "oracle_budget", "fit_budget", "group_budget", "conjugacy_budget")


def _budget(name):
    from . import config
    return config.budget(name)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=2)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--m", type=int, default=2)
    common.add_argument("--format", choices=("text", "json", "structured", "csv"), default="text")
    common.add_argument("--output", "-o")
    common.add_argument("--threads", type=int, default=1)
    for b in BUDGETS:
        common.add_argument("--" + b.replace("_", "-"), type=int, dest=b)

    p = _Parser(prog="eacount", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("group-order", cmd_group_order, "orders of GL, AGL, Gamma and |F|")
    sp = add("fix-count", cmd_fix_count, "exact |Fix(g)| for one element")
    sp.add_argument("--element", help="EA element JSON file")
    for name in ("P", "a", "Q", "b"):
        sp.add_argument("--" + name, help="comma-separated entries (matrices row-major)")
    sp.add_argument("--oracle", action="store_true", help="also count by brute force")
    add("fix-count-all", cmd_fix_count_all, "sweep Gamma, compare with the oracle")
    for name, fn, text in (("count-classes", cmd_count_classes, "EA class count via Burnside"),
                           ("relative-error", cmd_relative_error,
                            "class count against the naive |F|/|Gamma| estimate")):
        sp = add(name, fn, text)
        sp.add_argument("--method", choices=sorted(burnside.METHODS), default="exhaustive")
    add("orbit-census", cmd_orbit_census, "partition the function space into orbits")
    sp = add("stabilizer", cmd_stabilizer, "EA stabilizer of a function table")
    sp.add_argument("--input", required=True)
    sp.add_argument("--list", action="store_true", help="list the stabilizer elements")
    add("stab-census", cmd_stab_census, "exact fraction of functions with nontrivial stabilizer")
    sp = add("stab-sample", cmd_stab_sample, "Monte-Carlo nontrivial-stabilizer fraction")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--reference", action="store_true", help="compute the exact census fraction too")
    sp = add("collision", cmd_collision, "EA collision probability")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--mc", action="store_true")
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--seed", type=int)
    add("bounds", cmd_bounds, "bound evaluations over the grid 1..n x 1..m")
    for name, fn in (("ea-check", cmd_ea_check), ("ccz-check", cmd_ccz_check)):
        sp = add(name, fn, f"{name.split('-')[0].upper()} equivalence test")
        sp.add_argument("--f", required=True)
        sp.add_argument("--g", required=True)
    add("selftest", cmd_selftest, "run the oracle-equivalence suites")
    return p


def main(argv=None) -> int:
    saved = {b: os.environ.get("EACOUNT_" + b.upper()) for b in BUDGETS}
    try:
        return _main(argv)
    finally:
        for b, v in saved.items():
            if v is None:
                os.environ.pop("EACOUNT_" + b.upper(), None)
            else:
                os.environ["EACOUNT_" + b.upper()] = v


def _main(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "collision" and args.mc and args.seed is None:
            parser.error("collision --mc requires --seed")
        if args.threads < 1:
            parser.error("--threads must be >= 1")
        for b in BUDGETS:
            value = getattr(args, b)
            if value is not None:
                if value <= 0:
                    parser.error(f"--{b.replace('_', '-')} must be positive")
                os.environ["EACOUNT_" + b.upper()] = str(value)
        if args.format == "structured":
            args.format = "json"
        out = Output(args.format, args.output)
        status = args.func(args, out) or 0
        out.write()
        return status
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (BudgetExceeded, SolutionSpaceTooLarge) as exc:
        print(f"eacount: refused: {exc}", file=sys.stderr)
        return 2
    except (EACountError, ValueError, OSError) as exc:
        print(f"eacount: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
