"""Command-line entry point.

Every command prints exactly one JSON document on standard output.  Exit
status: 0 success, 1 contract or regime error, 2 resource error, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from functools import lru_cache
from typing import Optional, Sequence

from . import adaptive, adversary, combinatorics, nonadaptive
from .errors import ContractError, ResourceError
from .oracle import OracleState
from .sets import Antichain, Family, enumerate_antichains, minimal_covers, random_antichain

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CONTRACT, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc}") from exc


def _hidden(args, k: int) -> Antichain:
    if args.hidden is not None:
        hidden = Antichain.from_json(args.hidden)
        if hidden.n != args.n:
            raise ContractError(f"hidden antichain is over n={hidden.n}, --n is {args.n}")
        if len(hidden) != k:
            raise ContractError(f"hidden antichain has {len(hidden)} members, expected {k}")
        return hidden.canonical()
    if args.random:
        return random_antichain(args.n, k, random.Random(args.seed))
    raise ContractError("pass --hidden JSON or --random")


@lru_cache(maxsize=None)
def _g_values(n: int, k: int) -> Optional[tuple[int, ...]]:
    try:
        return tuple(combinatorics.g_bruteforce(n, m)[0] for m in range(1, k))
    except ResourceError:
        return None


# command handlers


def nonadaptive_build(args):
    family = nonadaptive.build_family(args.n, args.k)
    return {"n": args.n, "k": args.k, "h": nonadaptive.h_formula(args.n, args.k),
            "size": len(family), "family": family.to_json()}


def nonadaptive_verify(args):
    if args.family is not None:
        family = Family.from_json(args.family)
    else:
        family = nonadaptive.build_family(args.n, args.k)
    out = {"n": args.n, "k": args.k, "size": len(family),
           "identifying": nonadaptive.verify_identifying(family, args.n, args.k)}
    if not out["identifying"] and args.n <= adversary.CONFUSION_MAX_N:
        first, second = adversary.confusion_pair(family, args.n, args.k)
        out["confusion_pair"] = [first.to_json(), second.to_json()]
    return out


def nonadaptive_decode(args):
    family = nonadaptive.build_family(args.n, args.k)
    if args.answers is not None:
        answers = args.answers
    else:
        answers = nonadaptive.answers_for(_hidden(args, args.k), family)
    decoded = nonadaptive.decode(args.n, args.k, family, answers)
    return {"n": args.n, "k": args.k, "answers": answers, "decoded": decoded.to_json()}


def adaptive_solve(args):
    hidden = _hidden(args, args.k)
    oracle = OracleState(hidden)
    found, mc_sizes = adaptive.solve_traced(oracle, args.n, args.k)
    g_values = _g_values(args.n, args.k) if args.n <= 6 else None
    if g_values is not None:
        bound, kind = adaptive.theorem3_bound(args.n, args.k, g_values), "bruteforce-g"
    else:
        bound, kind = adaptive.realized_bound(args.n, mc_sizes), "realized-mc"
    return {"hidden": hidden.to_json(), "found": found.to_json(), "queries_used": oracle.count,
            "bound": bound, "bound_kind": kind, "mc_sizes": mc_sizes,
            "ok": found == hidden and oracle.count <= bound,
            "transcript": oracle.log.to_json()["entries"]}


def adaptive_solve_k2(args):
    hidden = _hidden(args, 2)
    oracle = OracleState(hidden)
    found = adaptive.solve_k2(oracle, args.n)
    bound = 2 * args.n
    return {"hidden": hidden.to_json(), "found": found.to_json(), "queries_used": oracle.count,
            "bound": bound, "ok": found == hidden and oracle.count <= bound,
            "transcript": oracle.log.to_json()["entries"]}


def adaptive_exact_f(args):
    value = adaptive.exact_f(args.n, args.k, budget=args.budget, symmetry=args.symmetry)
    count = sum(1 for _ in enumerate_antichains(args.n, args.k))
    return {"n": args.n, "k": args.k, "f": value, "antichains": count,
            "information_bound": adaptive.information_bound(count)}


def adversary_play(args):
    if args.strategy == "partition":
        if args.k is None:
            raise ContractError("--k is required for the partition strategy")
        state = adversary.theorem5_adversary(args.n, args.k)
        found = adaptive.solve(state, args.n, args.k)
        used = state.candidate_queries
    else:
        state = adversary.k2_counting_adversary(args.n)
        found = adaptive.solve_k2(state, args.n)
        used = state.count
    consistent = state.committed is not None and found == state.committed
    return {"strategy": args.strategy, "n": args.n, "k": state.k, "queries_used": used,
            "total_queries": state.count, "lower_bound": state.lower_bound,
            "found": found.to_json(), "ok": consistent and used >= state.lower_bound}


def adversary_confusion(args):
    if args.family is not None:
        family = Family.from_json(args.family)
    else:
        family = nonadaptive.build_family(args.n, args.k)
    pair = adversary.confusion_pair(family, args.n, args.k)
    return {"n": args.n, "k": args.k, "size": len(family),
            "pair": None if pair is None else [pair[0].to_json(), pair[1].to_json()]}


def adversary_certificate_k2(args):
    count, threshold = adversary.k2_first_query_certificate(args.n, args.size)
    return {"n": args.n, "size_of_A": args.size, "count": count, "threshold": threshold,
            "holds": count > threshold}


def comb_g(args):
    value, witness = combinatorics.g_bruteforce(args.n, args.m)
    formula = combinatorics.g_formula(args.n, args.m)
    return {"n": args.n, "m": args.m, "g_bruteforce": value, "g_formula": formula,
            "equal": value == formula, "witness": witness.to_json()}


def comb_mc(args):
    family = Family.from_json(args.family)
    covers = minimal_covers(family)
    return {"family": family.to_json(), "size": len(covers), "minimal_covers": covers.to_json()}


def comb_count_antichains(args):
    out = {"n": args.n, "A": combinatorics.antichain_pair_count(args.n)}
    if args.n <= 6:
        out["enumerated"] = sum(1 for _ in enumerate_antichains(args.n, 2))
    return out


def comb_exact_h(args):
    value = combinatorics.exact_h_search(args.n, args.k)
    try:
        formula = nonadaptive.h_formula(args.n, args.k)
    except ContractError:
        formula = None
    return {"n": args.n, "k": args.k, "h": value, "h_formula": formula}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for --random")
    common.add_argument("--json-indent", type=int, default=None)

    hidden = argparse.ArgumentParser(add_help=False)
    hidden.add_argument("--hidden", type=_json_arg, help='e.g. \'{"n":5,"sets":[[1,3],[2]]}\'')
    hidden.add_argument("--random", action="store_true", help="draw the hidden antichain")

    parser = _Parser(prog="antichain-search", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def command(group, name, handler, parents=(), **flags):
        p = group.add_parser(name, parents=[common, *parents])
        for flag, kwargs in flags.items():
            p.add_argument("--" + flag.replace("_", "-"), **kwargs)
        p.set_defaults(handler=handler, command=name)
        return p

    n = {"type": int, "required": True}
    k = {"type": int, "required": True}

    na = groups.add_parser("nonadaptive").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    command(na, "build", nonadaptive_build, n=n, k=k)
    command(na, "verify", nonadaptive_verify, n=n, k=k, family={"type": _json_arg})
    command(na, "decode", nonadaptive_decode, [hidden], n=n, k=k, answers={"type": _json_arg})

    ad = groups.add_parser("adaptive").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    command(ad, "solve", adaptive_solve, [hidden], n=n, k=k)
    command(ad, "solve-k2", adaptive_solve_k2, [hidden], n=n)
    exact = command(ad, "exact-f", adaptive_exact_f, n=n, k=k,
                    budget={"type": int, "default": adaptive.EXACT_F_BUDGET})
    exact.add_argument("--symmetry", action="store_true", help="memoize up to relabelling")

    av = groups.add_parser("adversary").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    command(av, "play", adversary_play, n=n, k={"type": int},
            strategy={"choices": ["partition", "k2-counting"], "default": "partition"})
    command(av, "confusion", adversary_confusion, n=n, k=k, family={"type": _json_arg})
    command(av, "certificate-k2", adversary_certificate_k2, n=n, size={"type": int, "required": True})

    cb = groups.add_parser("comb").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    command(cb, "g", comb_g, n=n, m={"type": int, "required": True})
    command(cb, "mc", comb_mc, family={"type": _json_arg, "required": True})
    command(cb, "count-antichains", comb_count_antichains, n=n)
    command(cb, "exact-h", comb_exact_h, n=n, k=k)
    return parser


def run(argv: Sequence[str], out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(list(argv))
    doc = {"schema_version": SCHEMA_VERSION, "command": f"{args.group} {args.command}"}
    try:
        doc.update(args.handler(args))
        status = EXIT_OK
    except ContractError as exc:
        doc.update(error=str(exc), error_kind=type(exc).__name__)
        status = EXIT_CONTRACT
    except ResourceError as exc:
        doc.update(error=str(exc), error_kind=type(exc).__name__, bounds=exc.bounds)
        status = EXIT_RESOURCE
    print(json.dumps(doc, indent=args.json_indent), file=out)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
