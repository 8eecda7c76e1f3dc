"""Natural projection onto the observable events and its inverse image."""

from __future__ import annotations

from .alphabet import Alphabet
from .errors import AlphabetError
from .fa import Lang, _subset_construction


def project(l: Lang) -> Lang:
    """P(l): erase unobservable events.

    The result lives over the observable sub-alphabet, flags unchanged. If
    every event is unobservable that alphabet is empty and the result is
    {eps} for nonempty ``l``.
    """
    alphabet = l.alphabet
    target = alphabet.observable_alphabet()
    if len(target) == len(alphabet):
        return l
    live = l.coreachable()
    delta = l.delta
    obs = [alphabet.index(ev) for ev in target]
    silent = [alphabet.index(ev) for ev in alphabet.unobservable]

    def closure(states):
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for u in silent:
                t = delta[q][u]
                if t in live and t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(subset, i):
        e = obs[i]
        return closure(t for t in (delta[q][e] for q in subset) if t in live)

    start = closure([0]) if 0 in live else frozenset()
    marked = l.marked
    table, m = _subset_construction(len(target), start, step, lambda s: bool(s & marked))
    return Lang._make(target, table, 0, m)


def inverse_project(lo: Lang, target: Alphabet) -> Lang:
    """P^-1(lo) over ``target``: self-loops on every unobservable event."""
    if target.observable_alphabet() != lo.alphabet:
        raise AlphabetError(
            f"observable events of the target {target.observable_alphabet().names} "
            f"do not match the projected alphabet {lo.alphabet.names}"
        )
    if target == lo.alphabet:
        return lo
    cols = [lo.alphabet.index(ev.name) if ev.observable else None for ev in target]
    rows = tuple(
        tuple(q if c is None else row[c] for c in cols) for q, row in enumerate(lo.delta)
    )
    return Lang._make(target, rows, 0, lo.marked)


def lookalike(l: Lang) -> Lang:
    """[l] = P^-1 P(l): every string that looks like some member of l."""
    return inverse_project(project(l), l.alphabet)
