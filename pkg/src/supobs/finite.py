"""Explicit finite languages: plain sets of event strings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .alphabet import Alphabet, Event, Word, format_word
from .errors import AlphabetError


def length_lex_key(w: Word):
    return (len(w), w)


@dataclass(frozen=True)
class FiniteLang:
    """A finite set of strings over an alphabet.

    ``truncated`` is set when the set was cut from a larger language by a
    length bound, so it is a strict subset of the language it came from.
    """

    alphabet: Alphabet
    strings: frozenset
    truncated: bool = False

    def __post_init__(self):
        words = frozenset(self.alphabet.word(s) for s in self.strings)
        object.__setattr__(self, "strings", words)

    @classmethod
    def of(cls, alphabet: Alphabet, strings: Iterable[Union[str, Iterable[Union[str, Event]]]]) -> "FiniteLang":
        return cls(alphabet, frozenset(alphabet.word(s) for s in strings))

    def __len__(self):
        return len(self.strings)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.sorted())

    def __contains__(self, s) -> bool:
        try:
            return self.alphabet.word(s) in self.strings
        except AlphabetError:
            return False

    def sorted(self) -> list[Word]:
        return sorted(self.strings, key=length_lex_key)

    def with_strings(self, strings: Iterable[Word]) -> "FiniteLang":
        return FiniteLang(self.alphabet, frozenset(strings))

    def __str__(self):
        return "{" + ", ".join(format_word(w) for w in self.sorted()) + "}"
