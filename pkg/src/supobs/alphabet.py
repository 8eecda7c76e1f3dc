"""Events and alphabets with observability / controllability flags."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .errors import AlphabetError

#: A string of events, stored as a tuple of event names.
Word = tuple[str, ...]

#: Token that denotes the empty string in text formats; reserved as an event name.
EPSILON_TOKEN = "eps"


@dataclass(frozen=True)
class Event:
    name: str
    observable: bool = True
    controllable: bool = True

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise AlphabetError("event name must be a non-empty string")
        if any(ch.isspace() for ch in self.name) or not self.name.isprintable():
            raise AlphabetError(f"event name {self.name!r} must be printable without whitespace")
        if self.name in (EPSILON_TOKEN, "#") or self.name.startswith("#"):
            raise AlphabetError(f"event name {self.name!r} is reserved")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of events.

    The order matters: it fixes the column order of transition tables and the
    breadth-first numbering of canonical recognizers. Two alphabets are equal
    only if they list the same events, with the same flags, in the same order.

    An empty alphabet is rejected unless ``allow_empty`` is set; the only
    legitimate empty alphabet is the observable part of an alphabet whose
    events are all unobservable.
    """

    events: tuple[Event, ...]
    allow_empty: bool = field(default=False, compare=False, repr=False)
    _index: dict = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        if not events and not self.allow_empty:
            raise AlphabetError("alphabet must contain at least one event")
        index = {}
        for i, ev in enumerate(events):
            if not isinstance(ev, Event):
                raise AlphabetError(f"alphabet entries must be Event instances, got {ev!r}")
            if ev.name in index:
                raise AlphabetError(f"duplicate event name {ev.name!r}")
            index[ev.name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, *specs: Union[str, Event, tuple]) -> "Alphabet":
        """Build an alphabet from Events, bare names, or (name, observable, controllable) tuples.

        Bare names are observable and controllable.
        """
        events = []
        for spec in specs:
            if isinstance(spec, Event):
                events.append(spec)
            elif isinstance(spec, str):
                events.append(Event(spec))
            else:
                events.append(Event(*spec))
        return cls(tuple(events))

    def __len__(self):
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __contains__(self, item) -> bool:
        if isinstance(item, Event):
            i = self._index.get(item.name)
            return i is not None and self.events[i] == item
        return item in self._index

    def __getitem__(self, name: str) -> Event:
        try:
            return self.events[self._index[name]]
        except KeyError:
            raise AlphabetError(f"unknown event {name!r}") from None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(ev.name for ev in self.events)

    def index(self, event: Union[str, Event]) -> int:
        name = event.name if isinstance(event, Event) else event
        try:
            i = self._index[name]
        except KeyError:
            raise AlphabetError(f"unknown event {name!r}") from None
        if isinstance(event, Event) and self.events[i] != event:
            raise AlphabetError(f"event {name!r} has different flags in this alphabet")
        return i

    @property
    def observable(self) -> tuple[Event, ...]:
        return tuple(ev for ev in self.events if ev.observable)

    @property
    def unobservable(self) -> tuple[Event, ...]:
        return tuple(ev for ev in self.events if not ev.observable)

    @property
    def controllable(self) -> tuple[Event, ...]:
        return tuple(ev for ev in self.events if ev.controllable)

    @property
    def uncontrollable(self) -> tuple[Event, ...]:
        return tuple(ev for ev in self.events if not ev.controllable)

    def observable_alphabet(self) -> "Alphabet":
        """The sub-alphabet of observable events, flags unchanged (may be empty)."""
        return Alphabet(self.observable, allow_empty=True)

    def word(self, s: Union[str, Iterable[Union[str, Event]]]) -> Word:
        """Normalize a string of events to a tuple of names, checking membership.

        A ``str`` is split on whitespace; ``"eps"`` and ``""`` denote the empty string.
        """
        if isinstance(s, str):
            parts: Sequence = [] if s.strip() in ("", EPSILON_TOKEN) else s.split()
        else:
            parts = list(s)
        out = []
        for p in parts:
            name = p.name if isinstance(p, Event) else p
            self.index(p if isinstance(p, Event) else name)
            out.append(name)
        return tuple(out)

    def project_word(self, w: Word) -> Word:
        return tuple(a for a in w if self[a].observable)


def require_same(a: Alphabet, b: Alphabet, what: str = "operands") -> None:
    if a != b:
        raise AlphabetError(f"{what} have different alphabets: {a.names} vs {b.names}")


def format_word(w: Word) -> str:
    return " ".join(w) if w else EPSILON_TOKEN
