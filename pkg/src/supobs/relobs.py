"""Relative observability: the D and F operators, Omega, and the sup O(C) iteration.

Notation used in names and docstrings: ``m`` is the plant's marked
behavior M, ``c`` the specification C ⊆ M, a bar is prefix closure,
``C̄.σ`` is the set of strings sσ with s ∈ C̄, and ``[N]`` is the lookalike
set of N under natural projection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Union

from .alphabet import Event, Word, require_same
from .errors import IterationLimitError, ValidationError
from .fa import (
    Lang,
    append_event,
    complement,
    count_strings,
    difference,
    enumerate_strings,
    intersect,
    intersect_all,
    is_closed,
    is_subset,
    max_length,
    prefix_closure,
    shortest_string,
    union,
    union_all,
)
from .finite import length_lex_key
from .projection import lookalike
from .supremal import sup_closed, sup_normal, sup_normal_universal

log = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 10_000
#: Languages with more members than this are summarized by state count only.
TRACE_ENUM_LIMIT = 1000
#: Returned by :func:`nerode_bound` when the bound does not fit in 63 bits.
BOUND_SATURATED = 2**63 - 1


@dataclass(frozen=True)
class Problem:
    """A plant M and a specification C ⊆ M over one alphabet.

    With ``allow_trim`` a specification that strays outside M is replaced by
    C ∩ M instead of being rejected.
    """

    m: Lang
    c: Lang
    allow_trim: bool = field(default=False, compare=False)

    def __post_init__(self):
        require_same(self.m.alphabet, self.c.alphabet, "plant and specification")
        if not is_subset(self.c, self.m):
            if not self.allow_trim:
                w = shortest_string(difference(self.c, self.m))
                raise ValidationError(
                    f"specification is not contained in the plant (e.g. {' '.join(w) or 'eps'!s})"
                )
            object.__setattr__(self, "c", intersect(self.c, self.m))

    @property
    def alphabet(self):
        return self.m.alphabet

    @cached_property
    def mbar(self) -> Lang:
        return prefix_closure(self.m)

    @cached_property
    def cbar(self) -> Lang:
        return prefix_closure(self.c)

    @cached_property
    def ambient(self) -> Lang:
        """C̄ ∩ M, the ambient language of the normality condition."""
        return intersect(self.cbar, self.m)

    @cached_property
    def _csigma(self) -> dict:
        return {ev.name: append_event(self.c, ev) for ev in self.alphabet}

    def csigma(self, sigma: Union[str, Event]) -> Lang:
        name = sigma.name if isinstance(sigma, Event) else sigma
        self.alphabet.index(sigma)
        return self._csigma[name]

    @cached_property
    def _f_masks(self) -> list:
        # per event: ((M̄ ∩ C̄.σ)^c, (C̄.σ)^c), independent of K
        return [
            (complement(intersect(self.mbar, cs)), complement(cs))
            for cs in (self._csigma[ev.name] for ev in self.alphabet)
        ]

    def with_spec(self, c: Lang) -> "Problem":
        return Problem(self.m, c)


# --------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class TraceRecord:
    """One step of a fixpoint run.

    ``phase`` is ``"F"`` (the closed language F(K_{j-1})), ``"omega"``
    (K_j = Omega(K_{j-1})), ``"supC"`` (sup C(K_{j-1})) or ``"gamma"``
    (K_j = Gamma(K_{j-1})). ``strings`` is filled in only for finite
    languages with at most ``TRACE_ENUM_LIMIT`` members.
    """

    iter: int
    phase: str
    states: int
    strings: Optional[tuple] = None
    converged: bool = False
    inner: Optional["SynthesisTrace"] = field(default=None, compare=False)
    lang: Optional[Lang] = field(default=None, compare=False, repr=False)

    def as_dict(self) -> dict:
        d = {"iter": self.iter, "phase": self.phase, "states": self.states}
        if self.strings is not None:
            d["strings"] = [" ".join(w) if w else "eps" for w in self.strings]
        if self.converged:
            d["converged"] = True
        return d


@dataclass
class SynthesisTrace:
    records: list = field(default_factory=list)

    def add(self, j: int, phase: str, lang: Lang, converged: bool = False, inner=None) -> TraceRecord:
        rec = TraceRecord(j, phase, lang.size, summarize(lang), converged, inner, lang)
        self.records.append(rec)
        return rec

    def phase(self, name: str) -> list:
        return [r for r in self.records if r.phase == name]

    @property
    def iterations(self) -> int:
        return max((r.iter for r in self.records), default=0)

    @property
    def converged(self) -> bool:
        return bool(self.records) and self.records[-1].converged

    def lines(self, prefix: tuple = ()) -> list[str]:
        """JSON-lines rendering; nested runs carry their parents' iteration indices in ``outer``."""
        import json

        out = []
        for r in self.records:
            d = r.as_dict()
            if prefix:
                d = {"outer": list(prefix), **d}
            out.append(json.dumps(d, ensure_ascii=False))
            if r.inner is not None:
                out.extend(r.inner.lines(prefix + (r.iter,)))
        return out


def summarize(lang: Lang) -> Optional[tuple]:
    n = count_strings(lang)
    if n is None or n > TRACE_ENUM_LIMIT:
        return None
    longest = max(max_length(lang), 0)
    return tuple(sorted(enumerate_strings(lang, longest).strings, key=length_lex_key))


# --------------------------------------------------------------------------
# operators


def _check_sub(k: Lang, p: Problem) -> None:
    require_same(k.alphabet, p.alphabet)
    if not is_subset(k, p.c):
        raise ValidationError("K must be a subset of the specification C")


def c_sigma(p: Problem, sigma: Union[str, Event]) -> Lang:
    """C̄.σ: every prefix of C extended by σ."""
    return p.csigma(sigma)


def _d(kbar: Lang, p: Problem) -> Lang:
    parts = []
    for ev in p.alphabet:
        cs = p.csigma(ev)
        parts.append(intersect(lookalike(intersect(kbar, cs)), cs))
    return union_all(parts, p.alphabet)


def d_operator(kbar: Lang, p: Problem) -> Lang:
    """D(K̄): strings tσ of C̄.σ that look like a string of K̄ ending in σ."""
    require_same(kbar.alphabet, p.alphabet)
    if not is_closed(kbar):
        raise ValidationError("d_operator expects a prefix-closed language")
    return _d(kbar, p)


def _f(k: Lang, p: Problem) -> Lang:
    kbar = prefix_closure(k)
    parts = []
    for not_m_cs, not_cs in p._f_masks:
        parts.append(union(sup_normal_universal(union(kbar, not_m_cs)), not_cs))
    return intersect(kbar, sup_closed(intersect_all(parts, p.alphabet)))


def f_operator(k: Lang, p: Problem) -> Lang:
    """F(K) = {s ∈ K̄ | D(s̄) ∩ M̄ ⊆ K̄}.

    Evaluated through boolean operations, normality with ambient Σ*, and the
    supremal closed sublanguage:
    F(K) = K̄ ∩ supF( ⋂_σ supN(K̄ ∪ (M̄ ∩ C̄.σ)^c) ∪ (C̄.σ)^c ).
    The result is always prefix-closed.
    """
    _check_sub(k, p)
    return _f(k, p)


def _omega(k: Lang, p: Problem, f: Optional[Lang] = None) -> Lang:
    if f is None:
        f = _f(k, p)
    return sup_normal(intersect(k, f), p.ambient)


def omega(k: Lang, p: Problem) -> Lang:
    """Omega(K) = supN(K ∩ F(K), C̄ ∩ M); always a subset of K."""
    _check_sub(k, p)
    return _omega(k, p)


def sup_relobs(
    p: Problem,
    *,
    start: Optional[Lang] = None,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[Lang, SynthesisTrace]:
    """Iterate Omega from K_0 = C (or ``start`` ⊆ C) until two iterates are equal.

    The limit is the largest C-observable sublanguage of K_0; with the default
    start that is sup O(C). Returns the limit and the per-iteration trace.
    """
    k = p.c if start is None else start
    if start is not None:
        _check_sub(k, p)
    trace = SynthesisTrace()
    j = 0
    while True:
        j += 1
        if j > max_iter:
            raise IterationLimitError(f"Omega iteration did not converge within {max_iter} steps")
        f = _f(k, p)
        trace.add(j, "F", f)
        nxt = _omega(k, p, f)
        done = nxt == k
        trace.add(j, "omega", nxt, converged=done)
        log.debug("omega step %d: %d -> %d states", j, k.size, nxt.size)
        if done:
            return nxt, trace
        k = nxt


def relobs_violation(k: Lang, p: Problem) -> Optional[Word]:
    """A shortest string witnessing that k is not C-observable, or ``None``.

    The witness either lies in D(K̄) ∩ M̄ but outside K̄, or lies in
    [K] ∩ (C̄ ∩ M) but outside K.
    """
    _check_sub(k, p)
    kbar = prefix_closure(k)
    w = shortest_string(difference(intersect(_d(kbar, p), p.mbar), kbar))
    if w is not None:
        return w
    return shortest_string(difference(intersect(lookalike(k), p.ambient), k))


def check_relobs(k: Lang, p: Problem) -> bool:
    """K is C-observable iff D(K̄) ∩ M̄ ⊆ K̄ and [K] ∩ (C̄ ∩ M) = K."""
    _check_sub(k, p)
    kbar = prefix_closure(k)
    if not is_subset(intersect(_d(kbar, p), p.mbar), kbar):
        return False
    return intersect(lookalike(k), p.ambient) == k


def nerode_bound(p: Problem) -> int:
    """||M||·||C||·2^(||M||·||C||) + 1, saturating at ``BOUND_SATURATED``."""
    return size_bound(p.m.size, p.c.size)


def size_bound(m_size: int, c_size: int) -> int:
    prod = m_size * c_size
    if prod >= 63:
        return BOUND_SATURATED
    return min(prod * 2**prod + 1, BOUND_SATURATED)
