"""Command-line front end.

Exit codes: 0 success (or property holds), 1 parse error, 2 validation
error, 3 property does not hold, 4 iteration cap exceeded. Results go to
files; diagnostics go to stderr. ``--enumerate`` prints result members to
stdout on request.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import oracle
from .alphabet import Alphabet, format_word
from .ctrlobs import sup_ctrl_relobs
from .errors import AlphabetError, IterationLimitError, OracleLimitError, ParseError, ValidationError
from .fa import (
    Lang,
    append_event,
    complement,
    difference,
    enumerate_strings,
    intersect,
    max_length,
    prefix_closure,
    relabel,
    shortest_string,
    union,
)
from .finite import FiniteLang
from .modelio import format_fsa, format_lang, load_lang, read_model, to_lang, write_text
from .projection import inverse_project, lookalike, project
from .relobs import DEFAULT_MAX_ITER, Problem, nerode_bound, relobs_violation, sup_relobs
from .supremal import is_controllable, is_normal, sup_closed, sup_controllable, sup_normal

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_FAILS = 3
EXIT_INTERNAL = 4

log = logging.getLogger("supobs")


class _Usage(ValidationError):
    pass


def _err(msg: str) -> None:
    print(f"supobs: {msg}", file=sys.stderr)


def _plant(path: str) -> Lang:
    return load_lang(path)


def _problem(args) -> Problem:
    m = _plant(args.plant)
    c = load_lang(args.spec, m.alphabet)
    return Problem(m, c, allow_trim=getattr(args, "allow_spec_trim", False))


def _emit(args, result: Lang, comment: str) -> None:
    write_text(args.out, format_fsa(result, comment))
    if getattr(args, "enumerate", None) is not None:
        for w in enumerate_strings(result, args.enumerate).sorted():
            print(format_word(w))


def _write_trace(path: Optional[str], trace) -> None:
    if path:
        write_text(path, "\n".join(trace.lines()) + "\n")


# --------------------------------------------------------------------------
# verbs


def cmd_supobs(args) -> int:
    p = _problem(args)
    result, trace = sup_relobs(p, max_iter=args.max_iter)
    _check_bound(p, result)
    _write_trace(args.trace, trace)
    _emit(args, result, "supremal relatively observable sublanguage")
    log.info("converged after %d Omega steps; %d states", trace.iterations, result.size)
    return EXIT_OK


def cmd_supcobs(args) -> int:
    p = _problem(args)
    result, trace = sup_ctrl_relobs(p, max_iter=args.max_iter, nested_trace=args.nested_trace)
    _check_bound(p, result)
    _write_trace(args.trace, trace)
    # same header as supobs so equal languages give byte-identical files
    _emit(args, result, "supremal relatively observable sublanguage")
    log.info("converged after %d Gamma steps; %d states", trace.iterations, result.size)
    return EXIT_OK


def _check_bound(p: Problem, result: Lang) -> None:
    bound = nerode_bound(p)
    if result.size > bound:
        raise AssertionError(f"result has {result.size} states, above the bound {bound}")


def _controllability_witness(k: Lang, m: Lang):
    kbar, mbar = prefix_closure(k), prefix_closure(m)
    found = []
    for ev in k.alphabet.uncontrollable:
        w = shortest_string(difference(intersect(append_event(k, ev), mbar), kbar))
        if w is not None:
            found.append(w)
    return min(found, key=lambda w: (len(w), w)) if found else None


def cmd_check(args) -> int:
    m = _plant(args.plant)
    k = load_lang(args.input, m.alphabet)
    kind = args.kind
    witness = None
    if kind in ("relobs", "ctrlobs"):
        if not args.spec:
            raise _Usage(f"check {kind} needs --spec")
        p = Problem(m, load_lang(args.spec, m.alphabet), allow_trim=args.allow_spec_trim)
        if kind == "ctrlobs" and not is_controllable(k, m):
            ok, witness = False, _controllability_witness(k, m)
        else:
            witness = relobs_violation(k, p)
            ok = witness is None
    elif kind == "normal":
        h = m
        if args.spec:
            c = load_lang(args.spec, m.alphabet)
            h = intersect(prefix_closure(c), m)
        ok = is_normal(k, h)
        if not ok:
            # a member of K that looks like some string of H outside K
            witness = shortest_string(intersect(k, lookalike(difference(h, k))))
            if witness is None:
                witness = shortest_string(difference(k, h))
    else:
        ok = is_controllable(k, m)
        if not ok:
            witness = _controllability_witness(k, m)
    if ok:
        print(f"{kind}: holds", file=sys.stderr)
        return EXIT_OK
    msg = f"{kind}: fails"
    if witness is not None:
        msg += f"; witness: {format_word(witness)}"
    print(msg, file=sys.stderr)
    return EXIT_FAILS


_UNARY = {"project", "complement", "closure", "supf", "append-sigma", "inverse-project"}
_BINARY = {"union", "intersect", "difference", "supn", "supc"}


def cmd_ops(args) -> int:
    op = args.op
    inputs = args.input or []
    want = 1 if op in _UNARY else 2
    if len(inputs) != want:
        raise _Usage(f"ops {op} takes {want} --in operand(s), got {len(inputs)}")
    if op == "inverse-project":
        if not args.plant:
            raise _Usage("ops inverse-project needs --plant to supply the target alphabet")
        target = read_model(args.plant).alphabet
        lo = load_lang(inputs[0], target.observable_alphabet()) if target.observable else None
        if lo is None:
            raise ValidationError("target alphabet has no observable events")
        result = inverse_project(lo, target)
    else:
        a = load_lang(inputs[0])
        b = load_lang(inputs[1], a.alphabet) if want == 2 else None
        if op == "project":
            if not a.alphabet.observable:
                raise ValidationError("no observable events: the projection has an empty alphabet")
            result = project(a)
        elif op == "complement":
            result = complement(a)
        elif op == "closure":
            result = prefix_closure(a)
        elif op == "supf":
            result = sup_closed(a)
        elif op == "append-sigma":
            if not args.event:
                raise _Usage("ops append-sigma needs --event")
            result = append_event(a, args.event)
        elif op == "union":
            result = union(a, b)
        elif op == "intersect":
            result = intersect(a, b)
        elif op == "difference":
            result = difference(a, b)
        elif op == "supn":
            result = sup_normal(a, b)
        else:
            result = sup_controllable(a, b)
    _emit(args, result, f"result of {op}")
    return EXIT_OK


def _load_finite(path: str, alphabet: Optional[Alphabet] = None) -> FiniteLang:
    model = read_model(path)
    if isinstance(model, FiniteLang) and (alphabet is None or model.alphabet == alphabet):
        return model
    lang = to_lang(model)
    if alphabet is not None:
        lang = relabel(lang, alphabet)
    longest = max_length(lang)
    if longest is None:
        raise ValidationError(f"{path}: the oracle needs a finite language")
    return oracle.lang_to_finite(lang, max(longest, 0))


def cmd_oracle(args) -> int:
    op = args.op
    m = _load_finite(args.plant) if args.plant else None
    alphabet = m.alphabet if m is not None else None
    need = {"supobs": ("plant", "spec"), "supcobs": ("plant", "spec"), "check-relobs": ("plant", "spec", "input"),
            "supn": ("plant", "input"), "supc": ("plant", "input"), "supf": ("input",)}[op]
    for name in need:
        if not getattr(args, name):
            raise _Usage(f"oracle {op} needs --{'in' if name == 'input' else name}")
    c = _load_finite(args.spec, alphabet) if args.spec else None
    k = _load_finite(args.input, alphabet) if args.input else None
    if op == "check-relobs":
        ok = oracle.check_relobs_definition(k, c, m)
        print(f"relobs (definition): {'holds' if ok else 'fails'}", file=sys.stderr)
        return EXIT_OK if ok else EXIT_FAILS
    if op == "supobs":
        result = oracle.brute_sup_relobs(c, m)
    elif op == "supcobs":
        result = oracle.brute_sup_ctrl_relobs(c, m)
    elif op == "supn":
        result = oracle.brute_sup_normal(k, m)
    elif op == "supc":
        result = oracle.brute_sup_controllable(k, m)
    else:
        result = oracle.brute_sup_closed(k)
    if not args.out:
        raise _Usage(f"oracle {op} needs --out")
    write_text(args.out, format_lang(result))
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supobs",
        description="Supremal relatively observable (and controllable) sublanguages of regular languages.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    def synthesis(name, helptext, func):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--plant", required=True, help="plant model M (.fsa or .lang)")
        sp.add_argument("--spec", required=True, help="specification C (.fsa or .lang)")
        sp.add_argument("--out", required=True, help="output automaton file")
        sp.add_argument("--trace", help="write a JSON-lines iteration trace here")
        sp.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
        sp.add_argument("--allow-spec-trim", action="store_true", help="replace C by C ∩ M instead of failing")
        sp.add_argument("--enumerate", type=int, metavar="MAXLEN", help="print result members up to MAXLEN")
        sp.set_defaults(func=func)
        return sp

    synthesis("supobs", "compute sup O(C)", cmd_supobs)
    sc = synthesis("supcobs", "compute sup CO(C)", cmd_supcobs)
    sc.add_argument("--nested-trace", action="store_true", help="include the inner Omega runs in the trace")

    ck = sub.add_parser("check", help="check a property of a language")
    ck.add_argument("kind", choices=["relobs", "normal", "controllable", "ctrlobs"])
    ck.add_argument("--in", dest="input", required=True, help="language K to check")
    ck.add_argument("--plant", required=True)
    ck.add_argument("--spec", help="specification C (normal: ambient becomes closure(C) ∩ M)")
    ck.add_argument("--allow-spec-trim", action="store_true")
    ck.set_defaults(func=cmd_check)

    op = sub.add_parser("ops", help="apply a single language operation")
    op.add_argument("op", choices=sorted(_UNARY | _BINARY))
    op.add_argument("--in", dest="input", action="append", help="operand (repeat for binary operations)")
    op.add_argument("--event", help="event for append-sigma")
    op.add_argument("--plant", help="model whose alphabet is the target of inverse-project")
    op.add_argument("--out", required=True)
    op.add_argument("--enumerate", type=int, metavar="MAXLEN")
    op.set_defaults(func=cmd_ops)

    orc = sub.add_parser("oracle", help="brute-force computations on finite languages")
    orc.add_argument("op", choices=["supobs", "supcobs", "supn", "supf", "supc", "check-relobs"])
    orc.add_argument("--in", dest="input")
    orc.add_argument("--plant")
    orc.add_argument("--spec")
    orc.add_argument("--out")
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        _err(f"parse error: {exc}")
        return EXIT_PARSE
    except (AlphabetError, ValidationError, OracleLimitError) as exc:
        _err(f"invalid input: {exc}")
        return EXIT_INVALID
    except IterationLimitError as exc:
        _err(f"internal error: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
