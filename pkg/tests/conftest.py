import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from supobs import Alphabet, Event, Fsa, FiniteLang, Lang, Problem

MODELS = Path(__file__).resolve().parent.parent / "models"

# The worked example: three observable and five unobservable events.
EXAMPLE_ALPHABET = Alphabet(
    tuple(Event(n) for n in ("alpha", "gamma", "sigma"))
    + tuple(Event(f"b{i}", observable=False) for i in range(1, 6))
)

PLANT = [
    "eps", "alpha", "gamma", "alpha sigma", "gamma sigma", "b1 alpha sigma",
    "b2 alpha", "b2 alpha b5 sigma", "b3 gamma", "b3 gamma b5 sigma",
    "b4", "b4 alpha", "b4 gamma", "b4 alpha b5", "b4 gamma b5",
]
SPEC = [s for s in PLANT if s not in ("b4 alpha b5", "b4 gamma b5")]

# Intermediate languages of the Omega iteration on the example.
F_K0_REMOVED = ["b2 alpha b5", "b2 alpha b5 sigma", "b3 gamma b5", "b3 gamma b5 sigma"]
K1 = ["eps", "alpha", "gamma", "b2 alpha", "b3 gamma", "b4", "b4 alpha", "b4 gamma"]
F_K1_REMOVED = ["alpha", "b2 alpha", "b4 alpha"]
K2 = ["eps", "gamma", "b3 gamma", "b4", "b4 gamma"]


def words(alphabet, strings):
    return frozenset(alphabet.word(s) for s in strings)


def closure_words(ws):
    return {w[:i] for w in ws for i in range(len(w) + 1)}


@pytest.fixture
def ex():
    """Namespace with the worked example's alphabet, languages and problem."""

    class Ex:
        alphabet = EXAMPLE_ALPHABET

        @staticmethod
        def lang(strings):
            return Lang.from_strings(EXAMPLE_ALPHABET, strings)

        @staticmethod
        def finite(strings):
            return FiniteLang.of(EXAMPLE_ALPHABET, strings)

        @staticmethod
        def words(strings):
            return words(EXAMPLE_ALPHABET, strings)

    Ex.m = Ex.lang(PLANT)
    Ex.c = Ex.lang(SPEC)
    Ex.p = Problem(Ex.m, Ex.c)
    Ex.k0 = Ex.c
    Ex.k1 = Ex.lang(K1)
    Ex.k2 = Ex.lang(K2)
    return Ex


# --------------------------------------------------------------------------
# random automata for property tests

SMALL_ALPHABET = Alphabet(
    (Event("a"), Event("b", observable=False), Event("c", controllable=False))
)


@st.composite
def fsas(draw, alphabet=SMALL_ALPHABET, max_states=5):
    n = draw(st.integers(1, max_states))
    names = alphabet.names
    trans = draw(
        st.frozensets(
            st.tuples(st.integers(0, n - 1), st.sampled_from(names), st.integers(0, n - 1)),
            max_size=3 * n,
        )
    )
    marked = draw(st.frozensets(st.integers(0, n - 1)))
    return Fsa(alphabet, n, 0, marked, trans)


@st.composite
def langs(draw, alphabet=SMALL_ALPHABET, max_states=5):
    return Lang.from_fsa(draw(fsas(alphabet, max_states)))


def brute_members(lang, max_len):
    """Members up to max_len by stepping the recognizer on every string."""
    names = lang.alphabet.names
    out = set()
    layer = [()]
    for _ in range(max_len + 1):
        nxt = []
        for w in layer:
            if w in lang:
                out.add(w)
            nxt.extend(w + (a,) for a in names)
        layer = nxt
    return out


def nfa_members(fsa, max_len):
    names = fsa.alphabet.names
    out = set()
    layer = [()]
    for _ in range(max_len + 1):
        nxt = []
        for w in layer:
            if fsa.accepts(w):
                out.add(w)
            nxt.extend(w + (a,) for a in names)
        layer = nxt
    return out


# --------------------------------------------------------------------------
# a larger synthetic plant: five machines, two of them with silent breakdowns


def _machine(alphabet, start, finish, breakdown=None, repair=None):
    # 0 idle, 1 working, 2 down; marked when idle
    trans = {(0, start, 1), (1, finish, 0)}
    n = 2
    if breakdown:
        trans |= {(1, breakdown, 2), (2, repair, 0)}
        n = 3
    own = {start, finish} | ({breakdown, repair} if breakdown else set())
    trans |= {(q, ev, q) for q in range(n) for ev in alphabet.names if ev not in own}
    return Lang.from_fsa(Fsa(alphabet, n, 0, {0}, trans))


def _buffer(alphabet, put, take, capacity):
    trans = set()
    for i in range(capacity + 1):
        if i < capacity:
            trans.add((i, put, i + 1))
        if i > 0:
            trans.add((i, take, i - 1))
        trans |= {(i, ev, i) for ev in alphabet.names if ev not in (put, take)}
    return Lang.from_fsa(Fsa(alphabet, capacity + 1, 0, set(range(capacity + 1)), trans))


def _mutex(alphabet, first, second):
    (s1, f1), (s2, f2) = first, second
    trans = {(0, s1, 1), (1, f1, 0), (0, s2, 2), (2, f2, 0)}
    trans |= {(q, ev, q) for q in range(3) for ev in alphabet.names if ev not in (s1, f1, s2, f2)}
    return Lang.from_fsa(Fsa(alphabet, 3, 0, {0, 1, 2}, trans))


def _not_while_down(alphabet, breakdown, repair, blocked):
    # `blocked` may not occur between an (unobserved) breakdown and its repair
    trans = {(0, breakdown, 1), (1, repair, 0), (0, blocked, 0)}
    trans |= {(q, ev, q) for q in range(2) for ev in alphabet.names if ev not in (breakdown, repair, blocked)}
    return Lang.from_fsa(Fsa(alphabet, 2, 0, {0, 1}, trans))


def medium_problem():
    """Plant with 3*3*3*2*2 = 108 states (109 with the dump state).

    The specification combines two unit buffers, a mutex, and two rules that
    depend on the silent breakdowns, so observability actually bites.
    """
    ev = []
    for i in range(1, 6):
        ev += [Event(f"s{i}"), Event(f"f{i}", controllable=False)]
    ev += [Event("b1", observable=False, controllable=False), Event("r1")]
    ev += [Event("b2", observable=False, controllable=False), Event("r2")]
    ev += [Event("b3", controllable=False), Event("r3")]
    alphabet = Alphabet(tuple(ev))
    m = _machine(alphabet, "s1", "f1", "b1", "r1")
    for part in (
        _machine(alphabet, "s2", "f2", "b2", "r2"),
        _machine(alphabet, "s3", "f3", "b3", "r3"),
        _machine(alphabet, "s4", "f4"),
        _machine(alphabet, "s5", "f5"),
    ):
        m = m & part
    spec = _buffer(alphabet, "f1", "s2", 1) & _buffer(alphabet, "f2", "s3", 1)
    spec = spec & _mutex(alphabet, ("s4", "f4"), ("s5", "f5"))
    spec = spec & _not_while_down(alphabet, "b1", "r1", "s4")
    spec = spec & _not_while_down(alphabet, "b2", "r2", "s5")
    return Problem(m, m & spec)


def random_corpus(n=200, base_seed=1000):
    from supobs.oracle import random_instance

    return [random_instance(base_seed + i) for i in range(n)]


def sample_subsets(strings, count, rng):
    items = sorted(strings)
    out = [frozenset(), frozenset(items)]
    for _ in range(count):
        out.append(frozenset(w for w in items if rng.random() < 0.5))
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {detail}")
