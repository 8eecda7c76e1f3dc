"""Reading and writing model files.

Two line-oriented UTF-8 formats are supported; ``#`` starts a comment.

Automaton files (``.fsa``)::

    alphabet:
      alpha o=1 c=1
      b1    o=0 c=1
    states: 3
    initial: 0
    marked: 0 2
    trans:
      0 alpha 1
      1 b1 2

Finite-language files (``.lang``), one string per line, ``eps`` for the
empty string::

    alphabet: alpha o=1 c=1, b1 o=0 c=1
    eps
    alpha b1
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional, Union

from .alphabet import EPSILON_TOKEN, Alphabet, Event
from .errors import AlphabetError, ParseError, ValidationError
from .fa import Fsa, Lang, relabel
from .finite import FiniteLang

_KEYWORD = re.compile(r"^(alphabet|states|initial|marked|trans)\s*:\s*(.*)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_event(text: str, where: str = "") -> Event:
    parts = text.split()
    if not parts:
        raise ParseError(f"{where}empty event declaration")
    name, flags = parts[0], {}
    for tok in parts[1:]:
        key, sep, val = tok.partition("=")
        if not sep or key not in ("o", "c") or val not in ("0", "1"):
            raise ParseError(f"{where}bad flag {tok!r} for event {name!r} (expected o=0|1 c=0|1)")
        if key in flags:
            raise ParseError(f"{where}flag {key!r} given twice for event {name!r}")
        flags[key] = val == "1"
    missing = [k for k in ("o", "c") if k not in flags]
    if missing:
        raise ParseError(f"{where}event {name!r} lacks flag(s) {', '.join(missing)}")
    try:
        return Event(name, observable=flags["o"], controllable=flags["c"])
    except AlphabetError as exc:
        raise ParseError(f"{where}{exc}") from None


def _alphabet(events: list, where: str) -> Alphabet:
    try:
        return Alphabet(tuple(events))
    except AlphabetError as exc:
        raise ParseError(f"{where}{exc}") from None


def _int(text: str, what: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"line {lineno}: {what} must be an integer, got {text!r}") from None


def parse_fsa(text: str) -> Fsa:
    events: list = []
    fields: dict = {}
    transitions = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        kw = _KEYWORD.match(line)
        if kw:
            key, rest = kw.groups()
            if key in fields:
                raise ParseError(f"line {lineno}: duplicate '{key}:' section")
            fields[key] = rest
            section = key
            if key in ("alphabet", "trans"):
                if rest:
                    raise ParseError(f"line {lineno}: '{key}:' starts a block; entries go on following lines")
            continue
        if section == "alphabet":
            events.append(parse_event(line, f"line {lineno}: "))
        elif section == "trans":
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: transition must be '<src> <event> <dst>'")
            transitions.append((_int(parts[0], "source", lineno), parts[1], _int(parts[2], "target", lineno)))
        else:
            raise ParseError(f"line {lineno}: unexpected content {line!r}")
    for key in ("alphabet", "states", "initial", "marked"):
        if key not in fields:
            raise ParseError(f"missing '{key}:' section")
    alphabet = _alphabet(events, "")
    n = _int(fields["states"], "state count", 0)
    initial = _int(fields["initial"], "initial state", 0)
    marked = [_int(tok, "marked state", 0) for tok in fields["marked"].split()]
    try:
        return Fsa(alphabet, n, initial, frozenset(marked), frozenset(transitions))
    except (ValidationError, AlphabetError) as exc:
        raise ParseError(str(exc)) from None


def parse_lang(text: str) -> FiniteLang:
    alphabet = None
    strings = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if alphabet is None:
            kw = _KEYWORD.match(line)
            if not kw or kw.group(1) != "alphabet":
                raise ParseError(f"line {lineno}: expected 'alphabet:' header")
            decls = [d for d in kw.group(2).split(",") if d.strip()]
            alphabet = _alphabet([parse_event(d, f"line {lineno}: ") for d in decls], f"line {lineno}: ")
            continue
        words = line.split()
        if words == [EPSILON_TOKEN]:
            strings.append(())
            continue
        for w in words:
            if w not in alphabet:
                raise ParseError(f"line {lineno}: unknown event {w!r}")
        strings.append(tuple(words))
    if alphabet is None:
        raise ParseError("missing 'alphabet:' header")
    return FiniteLang(alphabet, frozenset(strings))


def _looks_like_lang(text: str) -> bool:
    for raw in text.splitlines():
        line = _strip(raw)
        if line:
            kw = _KEYWORD.match(line)
            return bool(kw and kw.group(1) == "alphabet" and kw.group(2))
    return False


def read_model(path: Union[str, Path]) -> Union[Fsa, FiniteLang]:
    """Parse a model file; ``.lang`` files (or an inline alphabet header) are finite languages."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not valid UTF-8") from None
    try:
        if path.suffix == ".lang" or (path.suffix != ".fsa" and _looks_like_lang(text)):
            return parse_lang(text)
        return parse_fsa(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def to_lang(model: Union[Fsa, FiniteLang]) -> Lang:
    if isinstance(model, FiniteLang):
        return Lang.from_strings(model.alphabet, model.strings)
    return Lang.from_fsa(model)


def load_lang(path: Union[str, Path], alphabet: Optional[Alphabet] = None) -> Lang:
    """Read a model file as a language, re-expressed over ``alphabet`` if given."""
    lang = to_lang(read_model(path))
    if alphabet is not None:
        lang = relabel(lang, alphabet)
    return lang


def format_event(ev: Event) -> str:
    return f"{ev.name} o={int(ev.observable)} c={int(ev.controllable)}"


def format_fsa(lang: Lang, comment: Optional[str] = None) -> str:
    """Text of the canonical recognizer; equal languages give identical text."""
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append("alphabet:")
    out.extend(f"  {format_event(ev)}" for ev in lang.alphabet)
    out.append(f"states: {lang.size}")
    out.append("initial: 0")
    out.append("marked: " + " ".join(str(q) for q in sorted(lang.marked)))
    out.append("trans:")
    names = lang.alphabet.names
    for q, row in enumerate(lang.delta):
        for e, t in enumerate(row):
            out.append(f"  {q} {names[e]} {t}")
    return "\n".join(out) + "\n"


def format_lang(f: FiniteLang) -> str:
    out = ["alphabet: " + ", ".join(format_event(ev) for ev in f.alphabet)]
    out.extend(" ".join(w) if w else EPSILON_TOKEN for w in f.sorted())
    return "\n".join(out) + "\n"


def write_text(path: Union[str, Path], text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
