"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 factorization failure.  ``--json`` prints one envelope per invocation
on stdout; diagnostics always go to stderr.
"""

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path

from . import errors
from .classgroup import (
    ClassGroup,
    class_group,
    reduced_forms,
    register_group,
    surjection_pi,
)
from .decide import EXAMPLES, decide, oracle_decide, verify_example
from .decompose import decompose_order_ideal
from .forms import QuadForm, check_form, reduce
from .orders import (
    contract,
    disc_context,
    extend,
    format_ideal,
    ideal_conj,
    ideal_inv,
    ideal_mul,
    parse_ideal,
)

SCHEMA_VERSION = "1"
CACHE_VERSION = 1
CACHE_ENV = "QFREP_CACHE_DIR"

log = logging.getLogger("qfrep")


class Mismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Let ideal literals such as -20:1/1:2:2 through as positionals.
        self._negative_number_matcher = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+:")


# -- class-group cache ------------------------------------------------------


def _cache_path(cache_dir, D):
    return Path(cache_dir) / f"classgroup_{-D}.json"


def _valid_table(reps, table):
    n = len(reps)
    if len(table) != n or any(len(row) != n for row in table):
        return False
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full or row[0] != i:
            return False
        if any(table[j][i] != row[j] for j in range(n)):
            return False
    return True


def load_group(D, cache_dir):
    """Class group for D, read from or written to ``cache_dir`` when given."""
    if not cache_dir:
        return class_group(D)
    path = _cache_path(cache_dir, D)
    reps = reduced_forms(D)
    try:
        data = json.loads(path.read_text())
        if (
            data.get("version") == CACHE_VERSION
            and data.get("D") == D
            and [tuple(F) for F in data["reps"]] == reps
            and _valid_table(reps, data["table"])
        ):
            return register_group(ClassGroup(D, reps, data["table"]))
        log.warning("ignoring stale cache entry %s", path)
    except FileNotFoundError:
        pass
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring corrupt cache entry %s: %s", path, exc)
    G = class_group(D)
    payload = {
        "version": CACHE_VERSION,
        "D": D,
        "reps": [list(F) for F in G.reps],
        "table": G.table(),
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload))
        tmp.replace(path)
    except OSError as exc:
        log.warning("could not write cache entry %s: %s", path, exc)
    return G


# -- formatting helpers -----------------------------------------------------


def _form_str(F):
    return f"({F[0]},{F[1]},{F[2]})"


def _ideal_json(A):
    return {
        "literal": format_ideal(A),
        "D": A.ctx.D,
        "scale": f"{A.scale.numerator}/{A.scale.denominator}",
        "a": A.a,
        "b": A.b,
        "norm": str(A.norm()),
        "proper": A.is_proper(),
    }


def _ideal_text(A):
    text = format_ideal(A)
    if A.a == 1:
        text += f"  (= {A.scale}*O)"
    return text


def _form_arg(args):
    return check_form(QuadForm(args.a, args.b, args.c))


# -- commands ---------------------------------------------------------------


def cmd_reduce(args):
    G, M = reduce(_form_arg(args))
    result = {"form": list(G), "transform": [[M.p, M.q], [M.r, M.s]]}
    text = [_form_str(G), f"transform [[{M.p},{M.q}],[{M.r},{M.s}]]"]
    return {"a": args.a, "b": args.b, "c": args.c}, result, text


def cmd_classgroup(args):
    G = load_group(args.D, args.cache_dir)
    ctx = G.ctx
    table = G.table()
    inverses = [x.inverse().index for x in G]
    result = {
        "D": ctx.D,
        "d_K": ctx.d_K,
        "f": ctx.f,
        "h": len(G),
        "forms": [list(F) for F in G.reps],
        "identity": G.identity().index,
        "inverses": inverses,
        "table": table,
    }
    text = [f"D={ctx.D} d_K={ctx.d_K} f={ctx.f} h={len(G)}"]
    for i, F in enumerate(G.reps):
        text.append(f"  {i}: {_form_str(F)}  inverse {inverses[i]}")
    text.append(f"identity {G.identity().index}")
    width = len(str(len(G) - 1))
    text.append("table:")
    for row in table:
        text.append("  " + " ".join(str(k).rjust(width) for k in row))
    return {"D": args.D}, result, text


def cmd_decide(args):
    F = _form_arg(args)
    load_group(F.discriminant, args.cache_dir)
    d = decide(F, args.m)
    result = {
        "verdict": d.verdict,
        "witness": list(d.witness) if d.witness else None,
        "classWitness": (
            [{"value": n, "class": list(c.form)} for n, c in d.class_witness]
            if d.class_witness is not None
            else None
        ),
        "failure": d.failure.value if d.failure else None,
        "failureDetail": list(d.failure_detail) if d.failure_detail else None,
        "trace": d.trace,
    }
    if d.verdict:
        line = "YES"
        if args.certificate:
            line += f" (x,y)=({d.witness[0]},{d.witness[1]})"
    else:
        line = f"NO {d.reason()}"
    text = [line]
    if args.certificate and d.class_witness:
        text += [f"  {n}: {_form_str(c.form)}" for n, c in d.class_witness]
    if args.explain:
        text += ["  " + step for step in d.trace]
    if args.oracle_check:
        o = oracle_decide(F, args.m)
        result["oracle"] = list(o) if o else None
        text.append(f"oracle: {'YES' if o else 'NO'}")
        if (o is not None) != d.verdict:
            raise Mismatch(f"decide and oracle disagree for {F} and m={args.m}")
    return {"form": list(F), "m": args.m}, result, text


def cmd_ideal(args):
    op = args.op
    ideals = [parse_ideal(t) for t in args.ideals]
    need = {"mul": 2, "norm": 1, "conj": 1, "inv": 1, "decompose": 1, "extend": 1, "contract": 1}
    if len(ideals) != need[op]:
        raise errors.InvalidInput(f"ideal {op} takes {need[op]} ideal literal(s)")
    if op in ("extend", "contract") and args.target is None:
        raise errors.InvalidInput(f"ideal {op} needs --to D")
    A = ideals[0]
    echo = {"op": op, "ideals": [format_ideal(I) for I in ideals]}
    if op == "norm":
        n = A.norm()
        return echo, {"norm": str(n)}, [str(n)]
    if op == "decompose":
        dec = decompose_order_ideal(A)
        result = {
            "splitRamified": [{"ideal": _ideal_json(P), "exponent": e} for P, e in dec.split_ramified],
            "inert": [{"q": q, "halfExponent": k} for q, k in dec.inert],
            "conductorParts": [{"l": l, "ideal": _ideal_json(C)} for l, C in dec.conductor_parts],
        }
        text = [f"N = {A.norm()}"]
        text += [f"  prime {format_ideal(P)} ^{e}" for P, e in dec.split_ramified]
        text += [f"  inert ({q}*O) ^{k}" for q, k in dec.inert]
        text += [f"  conductor l={l}: {format_ideal(C)} norm {C.norm()}" for l, C in dec.conductor_parts]
        if dec.is_empty():
            text.append("  (unit ideal)")
        return echo, result, text
    if op == "mul":
        R = ideal_mul(ideals[0], ideals[1])
    elif op == "conj":
        R = ideal_conj(A)
    elif op == "inv":
        R = ideal_inv(A)
    elif op == "extend":
        echo["to"] = args.target
        R = extend(A, disc_context(args.target))
    else:
        echo["to"] = args.target
        R = contract(A, disc_context(args.target))
    return echo, _ideal_json(R), [_ideal_text(R)]


def cmd_pi(args):
    F = _form_arg(args)
    if F.discriminant != args.D:
        raise errors.InvalidForm(f"{_form_str(F)} has discriminant {F.discriminant}, not {args.D}")
    G = load_group(args.D, args.cache_dir)
    load_group(args.Dprime, args.cache_dir)
    y = surjection_pi(G.elem(F), args.Dprime)
    echo = {"D": args.D, "Dprime": args.Dprime, "form": list(F)}
    return echo, {"image": list(y.form)}, [_form_str(y.form)]


def cmd_examples(args):
    rep = verify_example(args.id, args.max)
    log.info("example %s: %.2fs", rep.example_id, rep.seconds)
    result = {
        "example": rep.example_id,
        "form": list(rep.form),
        "checked": rep.checked,
        "agreed": rep.checked - len(rep.disagreements),
        "represented": rep.represented,
        "disagreements": [
            {"m": m, "decide": d, "predicate": p, "oracle": o} for m, d, p, o in rep.disagreements
        ],
    }
    agreed = rep.checked - len(rep.disagreements)
    text = [f"{'OK' if rep.ok else 'FAIL'} {agreed}/{rep.checked}"]
    text += [f"  m={m}: decide={d} predicate={p} oracle={o}" for m, d, p, o in rep.disagreements]
    echo = {"id": rep.example_id, "max": args.max}
    if not rep.ok:
        return echo, result, text, 1
    return echo, result, text


# -- parser -----------------------------------------------------------------


def build_parser():
    # Shared options are accepted before or after the subcommand; SUPPRESS
    # keeps a subparser from clobbering a value given at the top level.
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", help="emit a JSON envelope")
    common.add_argument(
        "--cache-dir", help=f"class-group table cache (default ${CACHE_ENV})"
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="qfrep", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def form_args(p):
        for name in "abc":
            p.add_argument(name, type=int)

    p = sub.add_parser("reduce", parents=[common], help="reduce a positive definite form")
    form_args(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("classgroup", parents=[common], help="list C(D) and its table")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("decide", parents=[common], help="does ax^2+bxy+cy^2 represent m?")
    form_args(p)
    p.add_argument("m", type=int)
    p.add_argument("--certificate", action="store_true", help="print the witness")
    p.add_argument("--explain", action="store_true", help="print the decision trace")
    p.add_argument("--oracle-check", action="store_true", help="cross-check by exhaustive search")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("ideal", parents=[common], help="ideal arithmetic on D:num/den:a:b literals")
    p.add_argument("op", choices=["mul", "norm", "conj", "inv", "extend", "contract", "decompose"])
    p.add_argument("ideals", nargs="+")
    p.add_argument("--to", dest="target", type=int, help="target discriminant for extend/contract")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("pi", parents=[common], help="image of a class under C(D) -> C(D')")
    p.add_argument("D", type=int)
    p.add_argument("Dprime", type=int)
    form_args(p)
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("examples", parents=[common], help="verify a worked example")
    p.add_argument("id", choices=sorted(EXAMPLES))
    p.add_argument("--max", type=int, default=1000)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    args.json = getattr(args, "json", False)
    args.verbose = getattr(args, "verbose", False)
    args.cache_dir = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    code = 0
    try:
        out = args.func(args)
        if len(out) == 4:
            echo, result, text, code = out
        else:
            echo, result, text = out
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return 1
    except errors.FactorizationIncomplete as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except errors.QFRepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        envelope = {
            "schemaVersion": SCHEMA_VERSION,
            "command": args.command,
            "input": echo,
            "result": result,
            "diagnostics": [],
        }
        print(json.dumps(envelope, sort_keys=True))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())
