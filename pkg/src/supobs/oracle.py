"""Brute-force ground truth on explicit finite languages.

Everything here works on plain Python sets of event-name tuples and re-derives
projections by rewriting strings. Apart from the two conversion helpers at
the bottom it does not touch the automaton code, so it can be used to check
it. Supremal elements are obtained by enumerating every subset of a finite
language and taking the union of those with the property; each property is
closed under union, so that union is the supremal element.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Callable, Iterable, Optional

from .alphabet import Alphabet, Event, Word
from .errors import OracleLimitError, ValidationError
from .finite import FiniteLang

#: Largest finite language whose subsets are enumerated (2**20 subsets).
SUBSET_CAP = 20


def closure(strings: Iterable[Word]) -> set:
    out = set()
    for w in strings:
        for i in range(len(w) + 1):
            out.add(w[:i])
    return out


def projector(alphabet: Alphabet) -> Callable[[Word], Word]:
    hidden = {ev.name for ev in alphabet if not ev.observable}
    return lambda w: tuple(a for a in w if a not in hidden)


def _group(strings: Iterable[Word], proj) -> dict:
    groups: dict = {}
    for w in strings:
        groups.setdefault(proj(w), []).append(w)
    return groups


def _same_alphabet(*langs: FiniteLang) -> Alphabet:
    a = langs[0].alphabet
    for other in langs[1:]:
        if other.alphabet != a:
            raise ValidationError("finite languages have different alphabets")
    return a


def _subsets(strings: frozenset, cap: int):
    items = sorted(strings)
    if len(items) > cap:
        raise OracleLimitError(f"{len(items)} strings exceed the enumeration cap of {cap}")
    for r in range(len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def _sup_by_enumeration(base: FiniteLang, test: Callable[[frozenset], bool], cap: int) -> FiniteLang:
    result: set = set()
    for sub in _subsets(base.strings, cap):
        # a subset already covered adds nothing to the union
        if sub <= result:
            continue
        if test(sub):
            result |= sub
    return base.with_strings(result)


# --------------------------------------------------------------------------
# definition-level property checks


class _RelobsContext:
    """Precomputed closures and projection classes for one (C, M) pair."""

    def __init__(self, c: FiniteLang, m: FiniteLang):
        self.alphabet = c.alphabet
        self.names = self.alphabet.names
        self.proj = projector(self.alphabet)
        self.cbar = closure(c.strings)
        self.mbar = closure(m.strings)
        self.c = c.strings
        self.cbar_m = self.cbar & m.strings
        self.cbar_by_proj = _group(self.cbar, self.proj)
        self.cbar_m_by_proj = _group(self.cbar_m, self.proj)

    def observable(self, k: frozenset) -> bool:
        kbar = closure(k)
        proj = self.proj
        # (i): s·σ in K̄, s' in C̄ looking like s, s'·σ in M̄  =>  s'·σ in K̄
        for w in kbar:
            if not w:
                continue
            s, sigma = w[:-1], w[-1]
            for s2 in self.cbar_by_proj.get(proj(s), ()):
                t = s2 + (sigma,)
                if t in self.mbar and t not in kbar:
                    return False
        # (ii): s in K, s' in C̄ ∩ M looking like s  =>  s' in K
        for s in k:
            for s2 in self.cbar_m_by_proj.get(proj(s), ()):
                if s2 not in k:
                    return False
        return True


def check_relobs_definition(k: FiniteLang, c: FiniteLang, m: FiniteLang) -> bool:
    """Relative observability of k w.r.t. (c, m), tested string pair by string pair."""
    _same_alphabet(k, c, m)
    if not k.strings <= c.strings or not c.strings <= m.strings:
        raise ValidationError("expected k ⊆ c ⊆ m")
    return _RelobsContext(c, m).observable(k.strings)


def check_normal_definition(k: FiniteLang, h: FiniteLang) -> bool:
    """[k] ∩ h = k."""
    _same_alphabet(k, h)
    proj = projector(k.alphabet)
    seen = {proj(w) for w in k.strings}
    return {w for w in h.strings if proj(w) in seen} == set(k.strings)


def _normal(k: frozenset, h_by_proj: dict, proj) -> bool:
    for w in k:
        for w2 in h_by_proj.get(proj(w), ()):
            if w2 not in k:
                return False
    # k ⊆ [k] holds trivially; [k] ∩ h ⊇ k needs k ⊆ h
    return all(w in h_by_proj.get(proj(w), ()) for w in k)


def check_closed_definition(l: FiniteLang) -> bool:
    return closure(l.strings) == set(l.strings)


def _controllable(k: frozenset, mbar: set, unc: list) -> bool:
    kbar = closure(k)
    for s in kbar:
        for u in unc:
            t = s + (u,)
            if t in mbar and t not in kbar:
                return False
    return True


def check_controllable_definition(k: FiniteLang, m: FiniteLang) -> bool:
    """closure(k)·Σ_u ∩ closure(m) ⊆ closure(k)."""
    a = _same_alphabet(k, m)
    unc = [ev.name for ev in a if not ev.controllable]
    return _controllable(k.strings, closure(m.strings), unc)


def f_definition(k: FiniteLang, c: FiniteLang, m: FiniteLang) -> FiniteLang:
    """F(K) = {s ∈ K̄ | D(s̄) ∩ M̄ ⊆ K̄} evaluated string by string.

    D(X) collects tσ with t ∈ C̄ whenever some t'σ ∈ X has t' ∈ C̄ and
    P(t') = P(t).
    """
    ctx = _RelobsContext(c, m)
    kbar = closure(k.strings)
    out = set()
    for s in kbar:
        ok = True
        for w in closure([s]):
            if not w:
                continue
            t2, sigma = w[:-1], w[-1]
            if t2 not in ctx.cbar:
                continue
            for t in ctx.cbar_by_proj.get(ctx.proj(t2), ()):
                v = t + (sigma,)
                if v in ctx.mbar and v not in kbar:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(s)
    return k.with_strings(out)


# --------------------------------------------------------------------------
# brute-force supremal elements


def brute_sup_relobs(c: FiniteLang, m: FiniteLang, cap: int = SUBSET_CAP) -> FiniteLang:
    _same_alphabet(c, m)
    if not c.strings <= m.strings:
        raise ValidationError("expected c ⊆ m")
    ctx = _RelobsContext(c, m)
    return _sup_by_enumeration(c, ctx.observable, cap)


def brute_sup_normal(k: FiniteLang, h: FiniteLang, cap: int = SUBSET_CAP) -> FiniteLang:
    _same_alphabet(k, h)
    proj = projector(k.alphabet)
    h_by_proj = _group(h.strings, proj)
    return _sup_by_enumeration(k, lambda sub: _normal(sub, h_by_proj, proj), cap)


def brute_sup_closed(l: FiniteLang, cap: int = SUBSET_CAP) -> FiniteLang:
    return _sup_by_enumeration(l, lambda sub: closure(sub) == set(sub), cap)


def brute_sup_controllable(k: FiniteLang, m: FiniteLang, cap: int = SUBSET_CAP) -> FiniteLang:
    a = _same_alphabet(k, m)
    unc = [ev.name for ev in a if not ev.controllable]
    mbar = closure(m.strings)
    return _sup_by_enumeration(k, lambda sub: _controllable(sub, mbar, unc), cap)


def brute_sup_ctrl_relobs(c: FiniteLang, m: FiniteLang, cap: int = SUBSET_CAP) -> FiniteLang:
    a = _same_alphabet(c, m)
    if not c.strings <= m.strings:
        raise ValidationError("expected c ⊆ m")
    ctx = _RelobsContext(c, m)
    unc = [ev.name for ev in a if not ev.controllable]
    return _sup_by_enumeration(
        c, lambda sub: _controllable(sub, ctx.mbar, unc) and ctx.observable(sub), cap
    )


# --------------------------------------------------------------------------
# bridging to automata


def finite_to_lang(f: FiniteLang):
    from .fa import Lang

    return Lang.from_strings(f.alphabet, f.strings)


def lang_to_finite(l, max_len: int, exact: bool = True) -> FiniteLang:
    """Members of ``l`` up to length ``max_len``.

    With ``exact`` the language must have no longer member; otherwise the
    result may be cut short and then carries ``truncated=True``.
    """
    from .fa import enumerate_strings, max_length

    if exact:
        longest = max_length(l)
        if longest is None or longest > max_len:
            raise ValidationError(
                "language has members longer than max_len"
                if longest is not None
                else "language is infinite"
            )
    return enumerate_strings(l, max_len)


# --------------------------------------------------------------------------
# random finite instances


def random_alphabet(rng: random.Random, size: Optional[int] = None) -> Alphabet:
    n = size if size is not None else rng.randint(2, 4)
    return Alphabet(
        tuple(
            Event(name, observable=rng.random() < 0.6, controllable=rng.random() < 0.6)
            for name in "abcd"[:n]
        )
    )


def random_instance(seed: int, max_strings: int = 10, max_len: int = 4) -> tuple[FiniteLang, FiniteLang]:
    """A random plant M (at most ``max_strings`` strings of length ≤ ``max_len``) and C ⊆ M.

    Strings grow from prefixes of earlier strings so that members share
    prefixes, which is where the interesting interactions happen.
    """
    rng = random.Random(seed)
    alphabet = random_alphabet(rng)
    names = alphabet.names
    target = rng.randint(1, max_strings)
    m: set = set()
    for _ in range(4 * target):
        if len(m) >= target:
            break
        bases = sorted(closure(m)) or [()]
        base = rng.choice(bases) if rng.random() < 0.8 else ()
        room = max_len - len(base)
        extra = rng.randint(0, room) if room > 0 else 0
        m.add(base + tuple(rng.choice(names) for _ in range(extra)))
    # sorted so that the draw order does not depend on string hashing
    c = {w for w in sorted(m) if rng.random() < 0.7}
    return FiniteLang(alphabet, frozenset(m)), FiniteLang(alphabet, frozenset(c))
