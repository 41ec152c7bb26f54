"""Command line front end.

``deltacompat <command> <file>`` runs one of check, represent, decompose,
rational, depend on a certificate document.  Text output by default,
``--json`` for a stable machine-readable document.  Exit codes: 0 success,
2 parse error, 3 incompatible, 4 structure violation, 5 capacity.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .compat import check
from .errors import (
    CapacityError,
    EvaluationError,
    ExpressionParseError,
    MergeConflictError,
    NotCompatibleError,
    StructureViolationError,
)
from .ops import set_evaluation_defaults, sigma, tau
from .parser import parse_document
from .structure import (
    _exp_witness,
    _quotient_witness,
    algebraic_dependence,
    decompose,
    represent,
    standardize,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INCOMPATIBLE = 3
EXIT_STRUCTURE = 4
EXIT_CAPACITY = 5


def _emit(payload: dict, out) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True), file=out)


def _doc(command: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **fields}


def _context_fields(ctx) -> dict:
    return {
        "vars": {
            "t": list(ctx.tvars),
            "x": list(ctx.xvars),
            "y": list(ctx.yvars),
            "q": list(ctx.qvars),
        },
        "ordering": ctx.ordering,
    }


def _single(systems, command: str):
    if len(systems) != 1:
        raise ExpressionParseError(
            f"'{command}' expects exactly one system, the document has {len(systems)}")
    return systems[0]


def _cmd_check(systems, args, out) -> int:
    sys_ = _single(systems, "check")
    report = check(sys_)
    if args.json:
        _emit(_doc("check", ok=report.ok, violations=[
            {
                "condition": v.condition,
                "indices": list(v.indices),
                "residual": v.residual.to_string(),
            }
            for v in report.violations
        ]), out)
    else:
        print(report.describe(), file=out)
    return EXIT_OK if report.ok else EXIT_INCOMPATIBLE


def _cmd_represent(systems, args, out) -> int:
    sys_ = _single(systems, "represent")
    rep = standardize(represent(sys_))
    ctx = rep.ctx
    if args.json:
        _emit(_doc(
            "represent",
            base=rep.base.to_string(),
            power_bases=[a.to_string() for a in rep.power_bases],
            diff_certs=[c.to_string() for c in rep.diff_certs],
            shift_certs=[c.to_string() for c in rep.shift_certs],
            qshift_certs=[c.to_string() for c in rep.qshift_certs],
            **_context_fields(ctx),
        ), out)
        return EXIT_OK
    print(f"base = {rep.base.to_string()}", file=out)
    for name, a in zip(ctx.xvars, rep.power_bases):
        print(f"power_base[{name}] = {a.to_string()}", file=out)
    for name, c in zip(ctx.tvars, rep.diff_certs):
        print(f"diff_cert[{name}] = {c.to_string()}", file=out)
    for name, c in zip(ctx.xvars, rep.shift_certs):
        print(f"shift_cert[{name}] = {c.to_string()}", file=out)
    for name, c in zip(ctx.yvars, rep.qshift_certs):
        print(f"qshift_cert[{name}] = {c.to_string()}", file=out)
    return EXIT_OK


def _cmd_decompose(systems, args, out) -> int:
    sys_ = _single(systems, "decompose")
    prod = decompose(sys_)
    if args.json:
        _emit(_doc(
            "decompose",
            rational_part=prod.rational_part.to_string(),
            powers=[[base.to_string(), name] for base, name in prod.powers],
            diff_certs=[c.to_string() for c in prod.diff_certs],
            shift_certs=[c.to_string() for c in prod.shift_certs],
            qshift_certs=[c.to_string() for c in prod.qshift_certs],
            description=prod.describe(),
            **_context_fields(prod.ctx),
        ), out)
    else:
        print(prod.describe(), file=out)
    return EXIT_OK


def _rational_witness(prod):
    """(witness, obstruction): exactly one of the two is None."""
    if prod.powers:
        return None, "symbolic-powers"
    ctx = prod.ctx
    g_exp = _exp_witness(ctx, prod.diff_certs)
    if g_exp is None:
        return None, "exp-part"
    g_shift = _quotient_witness(ctx, prod.shift_certs, sigma, ctx.xvars)
    if g_shift is None:
        return None, "shift-part"
    g_qshift = _quotient_witness(ctx, prod.qshift_certs, tau, ctx.yvars)
    if g_qshift is None:
        return None, "qshift-part"
    return g_exp * g_shift * g_qshift, None


def _cmd_rational(systems, args, out) -> int:
    sys_ = _single(systems, "rational")
    prod = decompose(sys_)
    witness, obstruction = _rational_witness(prod)
    if args.json:
        payload = _doc("rational", rational=witness is not None)
        if witness is not None:
            payload["witness"] = witness.to_string()
            payload["value"] = (prod.rational_part * witness).to_string()
        else:
            payload["obstruction"] = obstruction
        _emit(payload, out)
        return EXIT_OK
    if witness is None:
        print(f"irrational ({obstruction})", file=out)
    else:
        print("rational", file=out)
        print(f"witness = {witness.to_string()}", file=out)
        print(f"value = {(prod.rational_part * witness).to_string()}", file=out)
    return EXIT_OK


def _cmd_depend(systems, args, out) -> int:
    wit = algebraic_dependence(systems)
    if args.json:
        payload = _doc("depend", dependent=wit is not None,
                       system_count=len(systems))
        if wit is not None:
            payload["omega"] = list(wit.omega)
            payload["value"] = wit.value().to_string()
            payload["exp_witness"] = wit.exp_witness.to_string()
            payload["shift_witness"] = wit.shift_witness.to_string()
            payload["qshift_witness"] = wit.qshift_witness.to_string()
        _emit(payload, out)
        return EXIT_OK
    if wit is None:
        print("independent", file=out)
    else:
        print("dependent", file=out)
        print(f"omega = [{', '.join(str(w) for w in wit.omega)}]", file=out)
        print(f"value = {wit.value().to_string()}", file=out)
    return EXIT_OK


_COMMANDS = {
    "check": (_cmd_check, "verify the compatibility conditions"),
    "represent": (_cmd_represent, "recover the standard representation"),
    "decompose": (_cmd_decompose, "split into rational, power and certificate factors"),
    "rational": (_cmd_rational, "decide whether the solution is rational"),
    "depend": (_cmd_depend, "find integer dependences between several systems"),
}


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="deltacompat",
        description="Exact analysis of rational certificate systems.")
    ap.add_argument("--version", action="version",
                    version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_fn, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="certificate document")
        p.add_argument("--json", action="store_true",
                       help="machine readable output")
        p.add_argument("--ordering", default=None, metavar="lex:...",
                       help="monomial order, e.g. lex:y,x,t,q (overrides the file)")
        p.add_argument("--seed", type=int, default=None, metavar="N",
                       help="seed for evaluation points")
        p.add_argument("--retry-budget", type=int, default=None, metavar="N",
                       dest="retry_budget", help="evaluation retry budget")
    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    out = sys.stdout
    err = sys.stderr
    try:
        if args.seed is not None or args.retry_budget is not None:
            set_evaluation_defaults(args.seed, args.retry_budget)
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        systems = parse_document(text, ordering=args.ordering)
        return _COMMANDS[args.command][0](systems, args, out)
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror or exc}", file=err)
        return EXIT_PARSE
    except ExpressionParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except NotCompatibleError as exc:
        print(exc.report.describe(), file=err)
        return EXIT_INCOMPATIBLE
    except (StructureViolationError, MergeConflictError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_STRUCTURE
    except (CapacityError, EvaluationError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
