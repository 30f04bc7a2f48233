"""Command-line interface.

Subcommands: ``analyze``, ``rank``, ``culp``, ``check`` and ``sequent``.

Exit codes:

    0  success
    1  usage error, unreadable or malformed KB file, formula syntax error
    2  KB violates the framework conditions, or a size limit is exceeded
    3  at least one postulate verdict failed
    4  the categoriser iteration did not converge
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .abf import ABF, NodePolicy, build_attack_diagram, subset_label
from .entailment import is_consistent
from .errors import (
    ABFValidationError,
    AtomLimitExceeded,
    KBFileError,
    NoConvergence,
    SizeLimitExceeded,
)
from .export import dumps, rational, real, to_dot
from .formula import order_key, render
from .gradual import DEFAULT_EPSILON, DEFAULT_MAX_ITER, categoriser
from .kb import enumerate_mcs, enumerate_mic, free_formulas
from .kbfile import read_kb
from .culpability import MEASURES, culpability
from .postulates import (
    ABF_POSTULATES,
    SUITE_EPSILON,
    GeneratorParams,
    check_instance,
    flatten_ranking,
    random_abf,
)
from .sequent import Consistency, Filters, Rule, SequentFramework, check_sequent_postulates

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_POSTULATE, EXIT_NO_CONVERGENCE = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _load(path: str) -> ABF:
    return read_kb(path).to_abf()


def _subset(members) -> list[str]:
    return [render(f) for f in sorted(members, key=order_key)]


def _family(family) -> list[list[str]]:
    return sorted((_subset(m) for m in family), key=lambda xs: (len(xs), [_text_key(x) for x in xs]))


def _text_key(text: str) -> tuple[int, bytes]:
    data = text.encode("utf-8")
    return (len(data), data)


def _write(text: str) -> None:
    sys.stdout.write(text)


def _write_dot(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    abf = _load(args.file)
    mcs = _family(enumerate_mcs(abf))
    mic = _family(enumerate_mic(abf))
    free = _subset(free_formulas(abf))
    if args.format == "json":
        _write(dumps({"mcs": mcs, "mic": mic, "free": free}))
        return EXIT_OK
    out = []
    for title, family in (("MCS", mcs), ("MIC", mic)):
        out.append(f"{title} ({len(family)})")
        out += ["  {" + ", ".join(m) + "}" for m in family]
    out.append(f"FREE ({len(free)})")
    out.append("  {" + ", ".join(free) + "}")
    _write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_rank(args) -> int:
    abf = _load(args.file)
    af = build_attack_diagram(abf, args.policy)
    r = categoriser(af, args.eps, args.max_iter)
    labels = [subset_label(n) for n in af.nodes]
    _write_dot(args.dot, to_dot(af, subset_label, r))
    if args.format == "json":
        _write(dumps({
            "policy": NodePolicy(args.policy).value,
            "nodes": [{"id": i, "support": _subset(n)} for i, n in enumerate(af.nodes)],
            "attacks": [list(e) for e in af.attacks],
            "scores": {str(i): real(r[i]) for i in range(len(af))},
            "iterations": r.iterations,
        }))
        return EXIT_OK
    order = sorted(range(len(af)), key=lambda i: (-real(r[i]), _text_key(labels[i])))
    width = max(len(x) for x in labels)
    lines = [f"{'node':<{width}}  score"]
    lines += [f"{labels[i]:<{width}}  {r[i]:.6f}" for i in order]
    lines.append(f"iterations: {r.iterations}")
    _write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_culp(args) -> int:
    abf = _load(args.file)
    kwargs = {}
    if args.measure == "induced":
        kwargs = {"policy": args.policy, "epsilon": args.eps, "max_iter": args.max_iter}
    report = culpability(abf, args.measure, **kwargs)
    items = sorted(report.items(), key=lambda kv: order_key(kv[0]))
    if args.format == "json":
        values = {
            render(f): rational(v) if isinstance(v, Fraction) else real(v) for f, v in items
        }
        _write(dumps({"measure": args.measure, "values": values}))
        return EXIT_OK
    width = max(len(render(f)) for f, _ in items)
    lines = [
        f"{render(f):<{width}}  {v if isinstance(v, Fraction) else format(v, '.6f')}" for f, v in items
    ]
    _write("\n".join(lines) + "\n")
    return EXIT_OK


def _selected_postulates(name: str) -> tuple[str, ...]:
    if name == "all":
        return ABF_POSTULATES
    if name not in ABF_POSTULATES:
        raise _UsageError(f"unknown postulate {name!r}; choose from all, {', '.join(ABF_POSTULATES)}")
    return (name,)


def cmd_check(args) -> int:
    if bool(args.file) == bool(args.random):
        raise _UsageError("give either a KB file or --random")
    postulates = _selected_postulates(args.postulate)
    corrupt = flatten_ranking if args.corrupt_ranking else None
    if args.file:
        instances = [_load(args.file)]
    else:
        params = GeneratorParams(seed=args.seed)
        instances = [random_abf(params, i) for i in range(args.count)]
    verdicts = []
    for abf in instances:
        verdicts += check_instance(abf, postulates, args.eps, args.max_iter, corrupt)
    _write(dumps([v.to_json() for v in _rounded(verdicts)]))
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_POSTULATE


def _rounded(verdicts):
    """Verdicts with witness scores rounded for output."""
    for v in verdicts:
        if v.counterexample:
            for role in v.counterexample.values():
                if isinstance(role, dict) and "score" in role:
                    role["score"] = real(role["score"])
        yield v


def _parse_rules(text: str) -> list[Rule]:
    names = [x.strip().lower() for x in text.split(",") if x.strip()]
    if not names:
        raise _UsageError("--rules needs at least one rule")
    try:
        return sorted({Rule(n) for n in names}, key=list(Rule).index)
    except ValueError:
        raise _UsageError(f"unknown rule in {text!r}; choose from {', '.join(r.value for r in Rule)}") from None


def cmd_sequent(args) -> int:
    abf = _load(args.file)
    rules = _parse_rules(args.rules)
    try:
        filters = Filters.parse(args.filters.split(",")) if args.filters else Filters()
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    if filters.consistency is Consistency.CONSISTENT_ONLY:
        dropped = [f for f in abf.sorted_ab if not is_consistent(abf.gamma + (f,))]
        if dropped:
            sys.stderr.write(
                "warning: consistent-only removes every argument supported by "
                + ", ".join(render(f) for f in dropped)
                + "; blame is inapplicable to these assumptions\n"
            )
    framework = SequentFramework(abf.gamma, abf.ab, filters)
    af = framework.af(rules)
    labels = [a.label() for a in af.nodes]
    r = categoriser(af, SUITE_EPSILON if args.check else args.eps, args.max_iter)
    _write_dot(args.dot, to_dot(af, lambda a: a.label(), r, name="arguments"))
    verdicts = check_sequent_postulates(abf.gamma, abf.ab, af, r) if args.check else []
    if args.format == "json":
        doc = {
            "rules": [x.value for x in rules],
            "filters": [filters.consistency.value, filters.minimality.value],
            "arguments": [
                {"id": i, "support": _subset(a.support), "conclusion": render(a.conclusion)}
                for i, a in enumerate(af.nodes)
            ],
            "attacks": [list(e) for e in af.attacks],
            "scores": {str(i): real(r[i]) for i in range(len(af))},
            "iterations": r.iterations,
        }
        if args.check:
            doc["verdicts"] = [v.to_json() for v in _rounded(verdicts)]
        _write(dumps(doc))
    else:
        width = max(len(x) for x in labels)
        lines = [f"{'id':>4}  {'argument':<{width}}  score"]
        lines += [f"{i:>4}  {labels[i]:<{width}}  {r[i]:.6f}" for i in range(len(af))]
        lines.append(f"attacks ({len(af.attacks)})")
        lines += [f"  {a} -> {b}" for a, b in af.attacks]
        if args.check:
            lines.append("verdicts")
            lines += [f"  {v.postulate_id:<18} {v.status}" for v in verdicts]
        _write("\n".join(lines) + "\n")
    if args.check and not all(v.passed for v in verdicts):
        return EXIT_POSTULATE
    return EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

class _UsageError(Exception):
    pass


def _iteration_flags(p: argparse.ArgumentParser, eps: float = DEFAULT_EPSILON) -> None:
    p.add_argument("--eps", type=_positive_float, default=eps, help=f"convergence threshold (default {eps:g})")
    p.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER, help="iteration budget")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rankarg", description="Ranking semantics and culpability for propositional knowledge bases.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    formats = ("table", "json")
    policies = [p.value for p in NodePolicy]

    p = sub.add_parser("analyze", help="maximal consistent, minimal inconsistent and free assumptions")
    p.add_argument("file")
    p.add_argument("--format", choices=formats, default="table")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rank", help="categoriser scores on the attack diagram")
    p.add_argument("file")
    p.add_argument("--policy", choices=policies, default="powerset")
    p.add_argument("--format", choices=formats, default="table")
    p.add_argument("--dot", metavar="PATH", help="also write the diagram as DOT")
    _iteration_flags(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("culp", help="culpability of each assumption")
    p.add_argument("file")
    p.add_argument("--measure", choices=MEASURES, default="c")
    p.add_argument("--policy", choices=policies, default="powerset", help="diagram for --measure induced")
    p.add_argument("--format", choices=formats, default="table")
    _iteration_flags(p)
    p.set_defaults(func=cmd_culp)

    p = sub.add_parser("check", help="postulate verdicts as JSON (exit 3 on any failure)")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", action="store_true", help="check generated instances instead of a file")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=_positive_int, default=200)
    p.add_argument("--postulate", default="all", help="all or one of: " + ", ".join(ABF_POSTULATES))
    p.add_argument("--corrupt-ranking", action="store_true", help=argparse.SUPPRESS)
    _iteration_flags(p, SUITE_EPSILON)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sequent", help="conclusion-support arguments under the chosen attack rules")
    p.add_argument("file")
    p.add_argument("--rules", default=",".join(r.value for r in Rule),
                   help="comma-separated subset of def,dirdef,ucut,canucut,dirucut (default all)")
    p.add_argument("--filters", default="", help="comma-separated: consistent-only, minimal-only")
    p.add_argument("--format", choices=formats, default="table")
    p.add_argument("--dot", metavar="PATH", help="also write the framework as DOT")
    p.add_argument("--check", action="store_true", help="rank with a tight threshold and check the postulates")
    _iteration_flags(p)
    p.set_defaults(func=cmd_sequent)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"rankarg: error: {exc}\n")
        return EXIT_USAGE
    except KBFileError as exc:
        where = f"{getattr(args, 'file', '') or ''}: " if getattr(args, "file", None) else ""
        sys.stderr.write(f"rankarg: {where}{exc}\n")
        return EXIT_USAGE
    except (ABFValidationError, SizeLimitExceeded, AtomLimitExceeded) as exc:
        sys.stderr.write(f"rankarg: invalid knowledge base: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID
    except NoConvergence as exc:
        sys.stderr.write(f"rankarg: {exc}\n")
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
