"""Command-line front end: tables, verification, labeling, set computations, counts.

Exit codes: 0 success (all checks pass), 1 verification failure (report still
printed on stdout as JSON), 2 invalid input or over-budget request.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .algebra import DEFAULT_BUDGET, get_algebra, parse_element
from .canon import class_label_g, class_label_u
from .chars import char_labels_g, class_labels_g, class_size_g, class_size_u, labels_u, table_g, table_u
from .cyclotomic import Cyclotomic
from .errors import BudgetError, DomainError
from .field import is_odd_prime
from .oracle import partition_report, verify_axioms
from .roots import checked_root, shadow_sets, shadow_star_sets, shadow_size


def _fail(code: str, message: str) -> int:
    sys.stderr.write(json.dumps({"code": code, "message": message}) + "\n")
    return 2


def _validate_nq(n: int, q: int) -> Optional[str]:
    if n < 1:
        return "n must be >= 1"
    if not is_odd_prime(q) or q >= 1 << 16:
        return "q must be an odd prime with 3 <= q < 2**16"
    return None


def _cmd_table(args) -> int:
    msg = _validate_nq(args.n, args.q)
    if msg:
        return _fail("invalid_input", msg)
    table = table_u(args.n, args.q) if args.group == "u" else table_g(args.n, args.q)
    if args.format == "json":
        text = json.dumps(table.to_json_dict(), separators=(",", ":")) + "\n"
    else:
        text = table.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    msg = _validate_nq(args.n, args.q)
    if msg:
        return _fail("invalid_input", msg)
    budget = args.budget
    report: dict = {"group": args.group, "n": args.n, "q": args.q}
    table = table_u(args.n, args.q) if args.group == "u" else table_g(args.n, args.q)
    order = (
        args.q ** (args.n * (args.n - 1))
        if args.group == "u"
        else (args.q - 1) ** args.n * args.q ** (args.n * (args.n - 1))
    )
    formula_checks = {
        "square": len(table.rows) == len(table.cols),
        "degrees_positive_integers": all(d >= 1 for d in table.degrees),
        "degree_equals_identity_value": all(
            table.values[i][0] == table.degrees[i] for i in range(len(table.rows))
        ),
        "trivial_row_constant_one": all(v == 1 for v in table.values[0]),
        "class_sizes_sum_to_group_order": sum(table.class_sizes) == order,
    }
    report["formula_checks"] = formula_checks
    ok = all(formula_checks.values())
    if args.skip_oracle:
        report["mode"] = "formula-only"
    else:
        report["mode"] = "full"
        try:
            axioms = verify_axioms(args.n, args.q, args.group, budget)
            part = partition_report(get_algebra(args.n, args.q), args.group, budget)
        except BudgetError as exc:
            return _fail("budget_exceeded", str(exc))
        report["axioms"] = axioms.to_json_dict()
        report["partition"] = part.to_json_dict()
        oracle_sizes_match = sorted(part.block_sizes) == sorted(table.class_sizes)
        report["oracle_class_sizes_match_formula"] = oracle_sizes_match
        ok = ok and axioms.all_pass and part.consistent and oracle_sizes_match
    report["pass"] = ok
    sys.stdout.write(json.dumps(report, separators=(",", ":")) + "\n")
    return 0 if ok else 1


def _cmd_label(args) -> int:
    msg = _validate_nq(args.n, args.q)
    if msg:
        return _fail("invalid_input", msg)
    if (args.element is None) == (args.file is None):
        return _fail("invalid_input", "exactly one of --element and --file is required")
    text = args.element
    if text is None:
        try:
            with open(args.file) as fh:
                text = fh.read().strip()
        except OSError as exc:
            return _fail("invalid_input", f"cannot read {args.file}: {exc}")
    alg = get_algebra(args.n, args.q)
    try:
        elem = parse_element(alg, text)
        if args.group == "u":
            label, _ = class_label_u(alg, elem)
        else:
            label, _ = class_label_g(alg, elem)
    except DomainError as exc:
        return _fail("invalid_input", str(exc))
    sys.stdout.write(json.dumps(label.to_json_dict(), separators=(",", ":")) + "\n")
    return 0


def _cmd_sets(args) -> int:
    try:
        i_str, j_str = args.gamma.split(",")
        gamma = checked_root(int(i_str), int(j_str), args.n)
    except (ValueError, DomainError) as exc:
        return _fail("invalid_input", f"bad --gamma: {exc}")
    plus, minus = shadow_sets(gamma, args.n)
    splus, sminus = shadow_star_sets(gamma, args.n)
    out = {
        "n": args.n,
        "gamma": [gamma.i, gamma.j],
        "S_plus": sorted([r.i, r.j] for r in plus),
        "S_minus": sorted([r.i, r.j] for r in minus),
        "S_star_plus": sorted([r.i, r.j] for r in splus),
        "S_star_minus": sorted([r.i, r.j] for r in sminus),
    }
    sys.stdout.write(json.dumps(out, separators=(",", ":")) + "\n")
    return 0


def _cmd_count(args) -> int:
    msg = _validate_nq(args.n, args.q)
    if msg:
        return _fail("invalid_input", msg)
    n, q = args.n, args.q
    lu = labels_u(n, q)
    cg = class_labels_g(n, q)
    ag = char_labels_g(n, q)
    out = {
        "n": n,
        "q": q,
        "U": {
            "labels": len(lu),
            "group_order": q ** (n * (n - 1)),
            "class_size_total": sum(class_size_u(l, q) for l in lu),
        },
        "G": {
            "superclass_labels": len(cg),
            "supercharacter_labels": len(ag),
            "group_order": (q - 1) ** n * q ** (n * (n - 1)),
            "class_size_total": sum(class_size_g(l, q) for l in cg),
        },
    }
    sys.stdout.write(json.dumps(out, separators=(",", ":")) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rookchar", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="emit a supercharacter table")
    t.add_argument("--group", choices=["u", "g"], required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--format", choices=["json", "csv"], default="json")
    t.add_argument("--out")
    t.set_defaults(func=_cmd_table)

    v = sub.add_parser("verify", help="verify the theory axioms against brute force")
    v.add_argument("--group", choices=["u", "g"], required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--skip-oracle", action="store_true")
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.set_defaults(func=_cmd_verify)

    l = sub.add_parser("label", help="canonical superclass label of an element")
    l.add_argument("--group", choices=["u", "g"], required=True)
    l.add_argument("--n", type=int, required=True)
    l.add_argument("--q", type=int, required=True)
    l.add_argument("--element")
    l.add_argument("--file")
    l.set_defaults(func=_cmd_label)

    s = sub.add_parser("sets", help="shadow sets of a root")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--gamma", required=True, help="root as i,j")
    s.set_defaults(func=_cmd_sets)

    c = sub.add_parser("count", help="label counts, group orders, class-size totals")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=_cmd_count)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except BudgetError as exc:
        return _fail("budget_exceeded", str(exc))
    except DomainError as exc:
        return _fail("invalid_input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
