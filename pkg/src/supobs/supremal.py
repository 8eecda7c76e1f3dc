"""Supremal normal, prefix-closed and controllable sublanguages."""

from __future__ import annotations

from .alphabet import require_same
from .errors import ValidationError
from .fa import (
    Lang,
    append_event,
    complement,
    difference,
    intersect,
    is_subset,
    prefix_closure,
)
from .projection import lookalike


def sup_normal(k: Lang, h: Lang) -> Lang:
    """Largest K' of k with [K'] ∩ h = K'.

    Requires k ⊆ h, under which the answer is k − [h − k]: drop every string
    of k that looks like a string of the ambient h outside k.
    """
    require_same(k.alphabet, h.alphabet)
    if not is_subset(k, h):
        raise ValidationError("sup_normal requires k to be a subset of the ambient h")
    return difference(k, lookalike(difference(h, k)))


def sup_normal_universal(l: Lang) -> Lang:
    """Largest union of whole lookalike classes inside l (normality with ambient Σ*).

    Equals l − [Σ* − l], i.e. {s | [s] ⊆ l}.
    """
    return difference(l, lookalike(complement(l)))


def is_normal(k: Lang, h: Lang) -> bool:
    require_same(k.alphabet, h.alphabet)
    return intersect(lookalike(k), h) == k


def sup_closed(l: Lang) -> Lang:
    """Largest prefix-closed sublanguage: strings whose every prefix is in l."""
    if 0 not in l.marked:
        return Lang.empty(l.alphabet)
    # unmarked states become dead; the canonical form merges them into one dump
    dump = l.size
    rows = tuple(
        tuple(t if t in l.marked else dump for t in row) if q in l.marked else (dump,) * len(row)
        for q, row in enumerate(l.delta)
    ) + ((dump,) * len(l.alphabet),)
    return Lang._make(l.alphabet, rows, 0, l.marked)


def is_controllable(k: Lang, m: Lang) -> bool:
    """closure(k)·Σ_u ∩ closure(m) ⊆ closure(k)."""
    require_same(k.alphabet, m.alphabet)
    kbar = prefix_closure(k)
    mbar = prefix_closure(m)
    for ev in k.alphabet.uncontrollable:
        if not is_subset(intersect(append_event(k, ev), mbar), kbar):
            return False
    return True


def sup_controllable(k: Lang, m: Lang) -> Lang:
    """Largest K' ⊆ k whose closure is invariant under plant-enabled uncontrollable events.

    Works on the product of the recognizers of k and m. A product state is
    bad when the plant's closure allows an uncontrollable event there that
    the surviving candidate does not; bad states and states that can no
    longer reach a marked state of k are removed until nothing changes.
    """
    require_same(k.alphabet, m.alphabet)
    if not is_subset(k, m):
        raise ValidationError("sup_controllable requires k to be a subset of m")
    alphabet = k.alphabet
    unc = [alphabet.index(ev) for ev in alphabet.uncontrollable]
    if not unc:
        return k
    kn = len(alphabet)
    k_live = k.coreachable()
    m_live = m.coreachable()
    dk, dm = k.delta, m.delta
    if 0 not in k_live:
        return k

    # product restricted to the closure of k
    ids = {(0, 0): 0}
    pairs = [(0, 0)]
    succ: list[list[int]] = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        row = []
        for e in range(kn):
            tp = dk[p][e]
            if tp not in k_live:
                row.append(-1)
                continue
            pair = (tp, dm[q][e])
            t = ids.get(pair)
            if t is None:
                t = ids[pair] = len(pairs)
                pairs.append(pair)
            row.append(t)
        succ.append(row)
        i += 1

    n = len(pairs)
    marked = {x for x, (p, _) in enumerate(pairs) if p in k.marked}
    preds = [[] for _ in range(n)]
    for x, row in enumerate(succ):
        for t in row:
            if t >= 0:
                preds[t].append(x)

    alive = set(range(n))
    while True:
        bad = {
            x
            for x in alive
            for e in unc
            if dm[pairs[x][1]][e] in m_live and succ[x][e] not in alive
        }
        alive -= bad
        # keep what is reachable from the start and can still reach a marked state
        reach = set()
        if 0 in alive:
            reach.add(0)
            stack = [0]
            while stack:
                x = stack.pop()
                for t in succ[x]:
                    if t in alive and t not in reach:
                        reach.add(t)
                        stack.append(t)
        co = {x for x in reach if x in marked}
        stack = list(co)
        while stack:
            x = stack.pop()
            for p in preds[x]:
                if p in reach and p not in co:
                    co.add(p)
                    stack.append(p)
        if not bad and co == alive:
            break
        alive = co

    if 0 not in alive:
        return Lang.empty(alphabet)
    dump = n
    rows = tuple(
        tuple(t if (t >= 0 and t in alive) else dump for t in succ[x]) if x in alive else (dump,) * kn
        for x in range(n)
    ) + ((dump,) * kn,)
    return Lang._make(alphabet, rows, 0, marked & alive)
