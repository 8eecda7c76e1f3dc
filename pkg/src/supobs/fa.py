"""Finite automata and canonical regular-language values.

Two representations live here:

* :class:`Fsa` is a general, possibly nondeterministic and partial, transition
  structure. It is what model files describe.
* :class:`Lang` is a language value. It always holds the minimal, complete,
  deterministic recognizer of its marked language, with states numbered in
  breadth-first order from the initial state (events visited in alphabet
  order). Because the form is canonical, language equality is structural
  equality and ``len(lang.delta)`` is the Nerode index of the language.

All operations are pure; values are never mutated after construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from .alphabet import Alphabet, Event, Word, require_same
from .errors import AlphabetError, ValidationError
from .finite import FiniteLang, length_lex_key

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Fsa:
    alphabet: Alphabet
    n_states: int
    initial: int
    marked: frozenset
    transitions: frozenset  # of (src, event name, dst)

    def __post_init__(self):
        object.__setattr__(self, "marked", frozenset(self.marked))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        if self.n_states < 1:
            raise ValidationError("an automaton needs at least one state")
        if not 0 <= self.initial < self.n_states:
            raise ValidationError(f"initial state {self.initial} out of range")
        for q in self.marked:
            if not 0 <= q < self.n_states:
                raise ValidationError(f"marked state {q} out of range")
        for src, ev, dst in self.transitions:
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise ValidationError(f"transition ({src}, {ev}, {dst}) has an invalid endpoint")
            if ev not in self.alphabet:
                raise AlphabetError(f"transition ({src}, {ev}, {dst}) uses unknown event {ev!r}")

    def successors(self) -> list[list[list[int]]]:
        """succ[state][event index] -> sorted target list."""
        k = len(self.alphabet)
        succ = [[[] for _ in range(k)] for _ in range(self.n_states)]
        for src, ev, dst in self.transitions:
            succ[src][self.alphabet.index(ev)].append(dst)
        for row in succ:
            for targets in row:
                targets.sort()
        return succ

    def is_deterministic(self) -> bool:
        seen = set()
        for src, ev, _ in self.transitions:
            if (src, ev) in seen:
                return False
            seen.add((src, ev))
        return True

    def is_complete(self) -> bool:
        return {(s, e) for s, e, _ in self.transitions} >= {
            (q, ev) for q in range(self.n_states) for ev in self.alphabet.names
        }

    def accepts(self, s) -> bool:
        current = {self.initial}
        succ = self.successors()
        for name in self.alphabet.word(s):
            i = self.alphabet.index(name)
            current = {t for q in current for t in succ[q][i]}
        return bool(current & self.marked)

    @classmethod
    def from_table(cls, alphabet: Alphabet, delta: Table, initial: int, marked) -> "Fsa":
        names = alphabet.names
        trans = frozenset((q, names[i], t) for q, row in enumerate(delta) for i, t in enumerate(row))
        return cls(alphabet, len(delta), initial, frozenset(marked), trans)


# --------------------------------------------------------------------------
# table-level machinery


def _subset_construction(
    k: int,
    start: frozenset,
    step: Callable[[frozenset, int], frozenset],
    is_marked: Callable[[frozenset], bool],
) -> tuple[Table, frozenset]:
    """Breadth-first subset construction.

    Subsets are numbered in discovery order, visiting events in index order.
    The empty subset is an ordinary (dump) state when reached, so the output
    is complete.
    """
    ids = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for e in range(k):
            target = step(subset, e)
            t = ids.get(target)
            if t is None:
                t = ids[target] = len(order)
                order.append(target)
            row.append(t)
        rows.append(tuple(row))
        i += 1
    marked = frozenset(n for n, subset in enumerate(order) if is_marked(subset))
    return tuple(rows), marked


def _reachable_order(delta: Table, initial: int) -> list[int]:
    seen = {initial}
    order = [initial]
    i = 0
    while i < len(order):
        for t in delta[order[i]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    return order


def _coreachable(delta: Table, marked) -> set:
    n = len(delta)
    preds = [[] for _ in range(n)]
    for q, row in enumerate(delta):
        for t in row:
            preds[t].append(q)
    seen = set(marked)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def _hopcroft(delta: Table, marked, k: int) -> list[int]:
    """Coarsest partition of a complete DFA's states into Nerode classes.

    Returns the block id of every state.
    """
    n = len(delta)
    inv = [[[] for _ in range(n)] for _ in range(k)]
    for q, row in enumerate(delta):
        for e, t in enumerate(row):
            inv[e][t].append(q)

    accepting = {q for q in range(n) if q in marked}
    rejecting = set(range(n)) - accepting
    blocks = [b for b in (accepting, rejecting) if b]
    block_of = [0] * n
    for b, states in enumerate(blocks):
        for q in states:
            block_of[q] = b
    work = set()
    if len(blocks) == 2:
        work.add(0 if len(blocks[0]) <= len(blocks[1]) else 1)
    elif blocks:
        work.add(0)

    while work:
        splitter = tuple(blocks[work.pop()])
        for e in range(k):
            inv_e = inv[e]
            touched: dict[int, set] = {}
            for q in splitter:
                for p in inv_e[q]:
                    touched.setdefault(block_of[p], set()).add(p)
            for b, hit in touched.items():
                whole = blocks[b]
                if len(hit) == len(whole):
                    continue
                rest = whole - hit
                nb = len(blocks)
                blocks[b] = hit
                blocks.append(rest)
                for q in rest:
                    block_of[q] = nb
                if b in work:
                    work.add(nb)
                else:
                    work.add(b if len(hit) <= len(rest) else nb)
    return block_of


def _canonical_table(delta: Table, initial: int, marked, k: int) -> tuple[Table, frozenset]:
    """Trim unreachable states, merge Nerode-equivalent ones, renumber breadth-first."""
    order = _reachable_order(delta, initial)
    local = {q: i for i, q in enumerate(order)}
    sub = tuple(tuple(local[t] for t in delta[q]) for q in order)
    sub_marked = {local[q] for q in order if q in marked}
    block_of = _hopcroft(sub, sub_marked, k)

    rep = {}
    for q in range(len(sub)):
        rep.setdefault(block_of[q], q)
    quotient = {b: tuple(block_of[t] for t in sub[q]) for b, q in rep.items()}

    start = block_of[0]
    number = {start: 0}
    bfs = [start]
    i = 0
    while i < len(bfs):
        for t in quotient[bfs[i]]:
            if t not in number:
                number[t] = len(bfs)
                bfs.append(t)
        i += 1
    table = tuple(tuple(number[t] for t in quotient[b]) for b in bfs)
    new_marked = frozenset(number[block_of[q]] for q in sub_marked)
    return table, new_marked


# --------------------------------------------------------------------------
# language values


class Lang:
    """A regular language, held as its canonical recognizer.

    Do not call the constructor with arbitrary tables; use :meth:`from_fsa`,
    :meth:`from_strings`, the named constructors, or the operations in this
    module. ``Lang._make`` canonicalizes any complete table.
    """

    __slots__ = ("alphabet", "delta", "marked", "_hash", "_co")

    def __init__(self, alphabet: Alphabet, delta: Table, marked: frozenset):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "marked", marked)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_co", None)

    def __setattr__(self, name, value):
        raise AttributeError("Lang values are immutable")

    @classmethod
    def _make(cls, alphabet: Alphabet, delta: Table, initial: int, marked) -> "Lang":
        table, m = _canonical_table(delta, initial, frozenset(marked), len(alphabet))
        return cls(alphabet, table, m)

    @classmethod
    def from_fsa(cls, fsa: Fsa) -> "Lang":
        d = determinize(fsa)
        table = _table_of(d)
        return cls._make(d.alphabet, table, d.initial, d.marked)

    @classmethod
    def from_strings(cls, alphabet: Alphabet, strings: Iterable) -> "Lang":
        """The finite language containing exactly ``strings`` (via a prefix tree)."""
        k = len(alphabet)
        rows: list[list[int]] = [[-1] * k]
        marked = set()
        for s in strings:
            q = 0
            for name in alphabet.word(s):
                e = alphabet.index(name)
                if rows[q][e] < 0:
                    rows[q][e] = len(rows)
                    rows.append([-1] * k)
                q = rows[q][e]
            marked.add(q)
        dump = len(rows)
        rows.append([dump] * k)
        table = tuple(tuple(dump if t < 0 else t for t in row) for row in rows)
        return cls._make(alphabet, table, 0, marked)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Lang":
        return cls(alphabet, ((0,) * len(alphabet),), frozenset())

    @classmethod
    def universe(cls, alphabet: Alphabet) -> "Lang":
        return cls(alphabet, ((0,) * len(alphabet),), frozenset({0}))

    @classmethod
    def epsilon(cls, alphabet: Alphabet) -> "Lang":
        return cls.from_strings(alphabet, [()])

    # -- structure ---------------------------------------------------------

    @property
    def recognizer(self) -> Fsa:
        return Fsa.from_table(self.alphabet, self.delta, 0, self.marked)

    @property
    def size(self) -> int:
        """Number of states of the minimal complete recognizer (the Nerode index)."""
        return len(self.delta)

    def __len__(self):
        return len(self.delta)

    def coreachable(self) -> frozenset:
        """States from which some marked state can be reached."""
        if self._co is None:
            object.__setattr__(self, "_co", frozenset(_coreachable(self.delta, self.marked)))
        return self._co

    def _key(self):
        return (self.alphabet, self.delta, self.marked)

    def __eq__(self, other):
        if not isinstance(other, Lang):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.delta, self.marked, self.alphabet.names)))
        return self._hash

    def __repr__(self):
        return f"Lang(states={self.size}, marked={sorted(self.marked)}, alphabet={self.alphabet.names})"

    # -- operator sugar ----------------------------------------------------

    def __and__(self, other: "Lang") -> "Lang":
        return intersect(self, other)

    def __or__(self, other: "Lang") -> "Lang":
        return union(self, other)

    def __sub__(self, other: "Lang") -> "Lang":
        return difference(self, other)

    def __invert__(self) -> "Lang":
        return complement(self)

    def __le__(self, other: "Lang") -> bool:
        return is_subset(self, other)

    def __contains__(self, s) -> bool:
        return contains(self, s)


def _table_of(fsa: Fsa) -> Table:
    if not (fsa.is_deterministic() and fsa.is_complete()):
        raise ValidationError("automaton must be deterministic and complete")
    k = len(fsa.alphabet)
    rows = [[0] * k for _ in range(fsa.n_states)]
    for src, ev, dst in fsa.transitions:
        rows[src][fsa.alphabet.index(ev)] = dst
    return tuple(tuple(r) for r in rows)


# --------------------------------------------------------------------------
# operations on automata


def determinize(a: Fsa) -> Fsa:
    """Subset construction; the result is deterministic and complete.

    A subset is marked iff it contains a marked state. Subset states are
    numbered in breadth-first discovery order.
    """
    succ = a.successors()

    def step(subset, e):
        return frozenset(t for q in subset for t in succ[q][e])

    table, marked = _subset_construction(
        len(a.alphabet), frozenset({a.initial}), step, lambda s: bool(s & a.marked)
    )
    return Fsa.from_table(a.alphabet, table, 0, marked)


def minimize(a: Fsa) -> Fsa:
    """Minimal complete DFA of a deterministic complete automaton."""
    table = _table_of(a)
    canon, marked = _canonical_table(table, a.initial, a.marked, len(a.alphabet))
    return Fsa.from_table(a.alphabet, canon, 0, marked)


# --------------------------------------------------------------------------
# boolean and structural operations on languages


def complement(l: Lang) -> Lang:
    # flipping the marking of a canonical complete DFA keeps it canonical
    flipped = frozenset(range(l.size)) - l.marked
    return Lang(l.alphabet, l.delta, flipped)


def _product(a: Lang, b: Lang, keep: Callable[[bool, bool], bool]) -> Lang:
    require_same(a.alphabet, b.alphabet)
    k = len(a.alphabet)
    da, db = a.delta, b.delta
    ids = {(0, 0): 0}
    order = [(0, 0)]
    rows = []
    i = 0
    while i < len(order):
        p, q = order[i]
        ra, rb = da[p], db[q]
        row = []
        for e in range(k):
            pair = (ra[e], rb[e])
            t = ids.get(pair)
            if t is None:
                t = ids[pair] = len(order)
                order.append(pair)
            row.append(t)
        rows.append(tuple(row))
        i += 1
    ma, mb = a.marked, b.marked
    marked = [n for n, (p, q) in enumerate(order) if keep(p in ma, q in mb)]
    return Lang._make(a.alphabet, tuple(rows), 0, marked)


def intersect(a: Lang, b: Lang) -> Lang:
    return _product(a, b, lambda x, y: x and y)


def union(a: Lang, b: Lang) -> Lang:
    return _product(a, b, lambda x, y: x or y)


def difference(a: Lang, b: Lang) -> Lang:
    return _product(a, b, lambda x, y: x and not y)


def intersect_all(langs: Iterable[Lang], alphabet: Alphabet) -> Lang:
    result = Lang.universe(alphabet)
    for l in langs:
        result = intersect(result, l)
    return result


def union_all(langs: Iterable[Lang], alphabet: Alphabet) -> Lang:
    result = Lang.empty(alphabet)
    for l in langs:
        result = union(result, l)
    return result


def prefix_closure(l: Lang) -> Lang:
    """Mark every state lying on a path from the initial state to a marked state."""
    return Lang._make(l.alphabet, l.delta, 0, l.coreachable())


def is_closed(l: Lang) -> bool:
    return prefix_closure(l) == l


def append_event(l: Lang, sigma: Union[str, Event]) -> Lang:
    """The language of all strings s·sigma with s a prefix of some member of l.

    Built by adding a fresh state that every live state of the recognizer can
    reach on ``sigma``, marking only that state, and determinizing.
    """
    e = l.alphabet.index(sigma)
    live = l.coreachable()
    n = l.size
    fresh = n
    k = len(l.alphabet)
    succ = [[[] for _ in range(k)] for _ in range(n + 1)]
    for q in live:
        for i, t in enumerate(l.delta[q]):
            if t in live:
                succ[q][i].append(t)
        succ[q][e].append(fresh)

    def step(subset, i):
        return frozenset(t for q in subset for t in succ[q][i])

    start = frozenset({0}) if 0 in live else frozenset()
    table, marked = _subset_construction(k, start, step, lambda s: fresh in s)
    return Lang._make(l.alphabet, table, 0, marked)


def relabel(l: Lang, alphabet: Alphabet) -> Lang:
    """Re-express ``l`` over a larger (or reordered) alphabet.

    Events of ``alphabet`` that ``l`` does not know never occur in its members.
    Shared events must carry identical flags.
    """
    if alphabet == l.alphabet:
        return l
    for ev in l.alphabet:
        if ev.name not in alphabet:
            raise AlphabetError(f"event {ev.name!r} is not in the target alphabet")
        if alphabet[ev.name] != ev:
            raise AlphabetError(f"event {ev.name!r} has different flags in the target alphabet")
    dump = l.size
    cols = [l.alphabet.index(ev.name) if ev.name in l.alphabet else None for ev in alphabet]
    rows = [tuple(dump if c is None else row[c] for c in cols) for row in l.delta]
    rows.append((dump,) * len(alphabet))
    return Lang._make(alphabet, tuple(rows), 0, l.marked)


# --------------------------------------------------------------------------
# predicates and queries


def is_empty(l: Lang) -> bool:
    return not l.marked


def is_subset(a: Lang, b: Lang) -> bool:
    return is_empty(difference(a, b))


def is_equal(a: Lang, b: Lang) -> bool:
    require_same(a.alphabet, b.alphabet)
    return a == b


def run(l: Lang, s) -> int:
    """State reached from the initial state on ``s``."""
    q = 0
    for name in l.alphabet.word(s):
        q = l.delta[q][l.alphabet.index(name)]
    return q


def contains(l: Lang, s) -> bool:
    return run(l, s) in l.marked


def max_length(l: Lang) -> Optional[int]:
    """Length of the longest member; ``None`` if l is infinite, -1 if l is empty."""
    live = l.coreachable()
    if 0 not in live:
        return -1
    depth: dict[int, int] = {}
    on_stack = set()

    # iterative DFS over the live part computing longest path to a marked end
    def longest(root):
        stack = [(root, iter(l.delta[root]))]
        on_stack.add(root)
        while stack:
            q, it = stack[-1]
            advanced = False
            for t in it:
                if t not in live:
                    continue
                if t in on_stack:
                    return False
                if t not in depth:
                    on_stack.add(t)
                    stack.append((t, iter(l.delta[t])))
                    advanced = True
                    break
            if advanced:
                continue
            best = 0 if q in l.marked else -1
            for t in l.delta[q]:
                if t in live and depth[t] >= 0:
                    best = max(best, depth[t] + 1)
            depth[q] = best
            on_stack.discard(q)
            stack.pop()
        return True

    if not longest(0):
        return None
    return depth[0]


def is_finite(l: Lang) -> bool:
    return max_length(l) is not None


def count_strings(l: Lang) -> Optional[int]:
    """Number of members, or ``None`` for an infinite language."""
    if max_length(l) is None:
        return None
    live = l.coreachable()
    memo: dict[int, int] = {}

    # the live subgraph is acyclic here, so a post-order walk terminates
    def count(q):
        stack = [q]
        while stack:
            x = stack[-1]
            pending = [t for t in l.delta[x] if t in live and t not in memo]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            if x not in memo:
                memo[x] = (1 if x in l.marked else 0) + sum(memo[t] for t in l.delta[x] if t in live)
        return memo[q]

    return count(0) if 0 in live else 0


def enumerate_strings(l: Lang, max_len: int) -> FiniteLang:
    """All members of length at most ``max_len``, as a finite language.

    The result's ``truncated`` flag is set when longer members exist.
    """
    if max_len < 0:
        raise ValidationError("max_len must be non-negative")
    live = l.coreachable()
    names = l.alphabet.names
    found = []
    truncated = False
    frontier = [((), 0)] if 0 in live else []
    depth = 0
    while frontier:
        nxt = []
        for w, q in frontier:
            if q in l.marked:
                found.append(w)
            for e, t in enumerate(l.delta[q]):
                if t in live:
                    if depth == max_len:
                        truncated = True
                    else:
                        nxt.append((w + (names[e],), t))
        frontier = nxt
        depth += 1
    return FiniteLang(l.alphabet, frozenset(found), truncated)


def sorted_members(l: Lang, max_len: int) -> list[Word]:
    return sorted(enumerate_strings(l, max_len).strings, key=length_lex_key)


def shortest_string(l: Lang) -> Optional[Word]:
    """A shortest member (least in length-lexicographic order among them), or ``None``."""
    if not l.marked:
        return None
    order = sorted(range(len(l.alphabet)), key=lambda e: l.alphabet.names[e])
    prev: dict[int, Optional[tuple[int, int]]] = {0: None}
    queue = deque([0])
    while queue:
        q = queue.popleft()
        if q in l.marked:
            w = []
            while prev[q] is not None:
                p, e = prev[q]
                w.append(l.alphabet.names[e])
                q = p
            return tuple(reversed(w))
        for e in order:
            t = l.delta[q][e]
            if t not in prev:
                prev[t] = (q, e)
                queue.append(t)
    return None
