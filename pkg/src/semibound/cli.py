"""Command line interface.

Inputs are JSON files ``{"dimension": n, "generators": [[["a/b", ...], ...], ...]}``
or ``corpus:NAME`` for a shipped corpus entry.  Exit codes: 0 success,
1 usage or input error, 2 reducible input, 3 inconclusive irreducibility,
4 cap exceeded, 5 internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import arithmetic, irreducibility, semigroup
from .errors import CapExceeded, Inconclusive, InternalContradiction, NotIrreducible
from .irreducibility import Verdict
from .pipeline import (
    corpus,
    corpus_entry,
    dumps,
    load_generators,
    matrix_to_json,
    run_entry,
    verdict_to_json,
    verify_bound,
)
from .semigroup import DEFAULT_CAP

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REDUCIBLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_CAP = 4
EXIT_CONTRADICTION = 5


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with exit code 2 (reducible)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_generators(source):
    if source.startswith("corpus:"):
        return list(corpus_entry(source[len("corpus:"):]).generators)
    if source == "-":
        data = json.load(sys.stdin)
    else:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    return load_generators(data)


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return "\n".join(lines)


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, dict) for x in v) and len(json.dumps(v)) <= 72


def _inline(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    if v is None:
        return "-"
    return str(v)


def _emit(args, obj):
    out = dumps(obj) if args.format == "json" else _text(obj) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _closure(args, gens):
    S = semigroup.closure(gens, args.cap)
    return {
        "size": len(S),
        "zero_index": S.zero_index,
        "generator_indices": list(S.generator_indices),
        "elements": [matrix_to_json(m) for m in S.elements],
        "product": [list(row) for row in S.product],
    }, EXIT_OK


def _green(args, gens):
    S = semigroup.adjoin_zero(semigroup.closure(gens, args.cap))
    g = semigroup.green_relations(S)
    stab = semigroup.check_stability(S, g)
    return {
        "size": len(S),
        "r_classes": [list(c) for c in g.r_classes],
        "l_classes": [list(c) for c in g.l_classes],
        "j_classes": [list(c) for c in g.j_classes],
        "h_classes": [list(c) for c in g.h_classes],
        "j_order": sorted(list(p) for p in g.j_order),
        "idempotents": semigroup.idempotents(S),
        "maximal_subgroup_orders": {str(G.identity_index): G.order for G in semigroup.maximal_subgroups(S, g)},
        "aperiodic": semigroup.is_aperiodic(S, g),
        "stable": stab.ok,
        "stability_witness": list(stab.witness) if stab.witness else None,
    }, (EXIT_OK if stab.ok else EXIT_CONTRADICTION)


def _irreducible(args, gens):
    S = semigroup.closure(gens, args.cap)
    v = irreducibility.is_irreducible(S)
    code = {Verdict.IRREDUCIBLE: EXIT_OK, Verdict.REDUCIBLE: EXIT_REDUCIBLE, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}
    return {"size": len(S), **verdict_to_json(v)}, code[v.verdict]


def _integralize(args, gens):
    S = semigroup.closure(gens, args.cap)
    c = arithmetic.integralize(S)
    return {
        "size": len(S),
        "basis_matrix": matrix_to_json(c.basis_matrix),
        "inverse": matrix_to_json(c.inverse),
        "conjugated_elements": [matrix_to_json(m) for m in c.conjugated_elements],
    }, EXIT_OK


def _verify_bound(args, gens):
    return verify_bound(gens, cap=args.cap, prime_override=args.prime).to_dict(), EXIT_OK


def _minkowski(args, gens):
    S = semigroup.closure(gens, args.cap)
    if not all(m.is_integral() for m in S.elements):
        raise ValueError("minkowski-check needs integer matrices")
    group = [m.to_z() for m in S.elements]
    primes = [args.prime] if args.prime else [2, 3]
    reports = {}
    code = EXIT_OK
    for p in primes:
        rep = arithmetic.minkowski_check(group, p)
        reports[str(p)] = [matrix_to_json(v) for v in rep.violations]
        if not rep.ok:
            code = EXIT_CONTRADICTION
    return {"order": len(group), "violations": reports}, code


def _corpus_run(args):
    results = [run_entry(e, cap=args.cap, prime_override=args.prime) for e in corpus()]
    code = EXIT_OK
    if any(r["outcome"] == "internal_contradiction" for r in results):
        code = EXIT_CONTRADICTION
    return results, code


def _corpus_list(args):
    return [
        {"name": e.name, "dimension": e.dimension, "expected_size": e.expected_size,
         "expected_irreducible": e.expected_irreducible, "notes": e.notes}
        for e in corpus()
    ], EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum semigroup size (default %(default)s)")
    common.add_argument("--prime", type=int, default=None, help="override the prime used for reduction")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = _Parser(prog="semibound", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "closure": _closure,
        "green": _green,
        "irreducible": _irreducible,
        "integralize": _integralize,
        "verify-bound": _verify_bound,
        "minkowski-check": _minkowski,
    }
    for name, fn in handlers.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", help="JSON generator file, '-' for stdin, or corpus:NAME")
        p.set_defaults(handler=fn, needs_input=True)

    cp = sub.add_parser("corpus")
    csub = cp.add_subparsers(dest="corpus_command", required=True)
    run = csub.add_parser("run", parents=[common])
    run.set_defaults(handler=_corpus_run, needs_input=False)
    lst = csub.add_parser("list", parents=[common])
    lst.set_defaults(handler=_corpus_list, needs_input=False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.needs_input:
            gens = _read_generators(args.input)
            result, code = args.handler(args, gens)
        else:
            result, code = args.handler(args)
    except CapExceeded as exc:
        result, code = exc.report or {"status": "cap_exceeded", "cap": exc.cap}, EXIT_CAP
    except NotIrreducible as exc:
        result, code = exc.report or {"status": "reducible", **verdict_to_json(exc.verdict)}, EXIT_REDUCIBLE
    except Inconclusive as exc:
        result, code = exc.report or {"status": "inconclusive"}, EXIT_INCONCLUSIVE
    except InternalContradiction as exc:
        result, code = exc.report or {"status": "internal_contradiction", "error": str(exc)}, EXIT_CONTRADICTION
    except (ValueError, KeyError, OSError) as exc:
        print(f"semibound: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args, result)
    return code


if __name__ == "__main__":
    sys.exit(main())
