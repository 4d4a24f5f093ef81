"""Alphabets with formal inverses, words, free reduction, and marked words.

Generators are the lowercase letters a, b, c, ...; the matching uppercase
letter is the formal inverse.  A marked word serializes as ``u#t`` with
exactly one ``#``.  The empty word prints as ``""``; where output formats
need a visible token it is rendered as ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from string import ascii_lowercase

MARKER = "#"
EPSILON_TOKEN = "1"

MAX_RANK = 26


class WordSyntaxError(ValueError):
    """Text that is not a valid word or marked word at the given rank."""


@dataclass(frozen=True, order=True)
class Letter:
    generator: int
    inverted: bool = False

    def __repr__(self) -> str:
        if 0 <= self.generator < MAX_RANK:
            return f"Letter({letter_to_char(self)!r})"
        return f"Letter(generator={self.generator}, inverted={self.inverted})"


Word = tuple[Letter, ...]


def invert_letter(letter: Letter) -> Letter:
    return Letter(letter.generator, not letter.inverted)


def alphabet(rank: int) -> tuple[Letter, ...]:
    """All 2*rank letters in canonical order a, A, b, B, ..."""
    if not 1 <= rank <= MAX_RANK:
        raise ValueError(f"rank must be between 1 and {MAX_RANK}, got {rank}")
    return tuple(Letter(g, inv) for g in range(rank) for inv in (False, True))


def letter_to_char(letter: Letter) -> str:
    char = ascii_lowercase[letter.generator]
    return char.upper() if letter.inverted else char


def char_to_letter(char: str, rank: int) -> Letter:
    if len(char) != 1 or not char.isascii() or not char.isalpha():
        raise WordSyntaxError(f"not a generator letter: {char!r}")
    generator = ord(char.lower()) - ord("a")
    if generator >= rank:
        raise WordSyntaxError(f"generator {char!r} out of range for rank {rank}")
    return Letter(generator, char.isupper())


def parse_word(text: str, rank: int) -> Word:
    if MARKER in text:
        raise WordSyntaxError(f"unexpected {MARKER!r} in word {text!r}")
    return tuple(char_to_letter(char, rank) for char in text)


def format_word(word: Word) -> str:
    return "".join(letter_to_char(letter) for letter in word)


def free_reduce(word: Word) -> Word:
    """The unique reduced form: delete adjacent letter/inverse pairs until none remain."""
    out: list[Letter] = []
    for letter in word:
        if out and out[-1] == invert_letter(letter):
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def rev_invert(word: Word) -> Word:
    """Reverse the word and invert every letter; the formal inverse in the free group."""
    return tuple(invert_letter(letter) for letter in reversed(word))


@dataclass(frozen=True)
class MarkedWord:
    left: Word
    right: Word

    def pair(self) -> tuple[Word, Word]:
        """The two words compared by this marked word; the second is the
        reverse-inverse of the right part."""
        return self.left, rev_invert(self.right)

    def __str__(self) -> str:
        return format_word(self.left) + MARKER + format_word(self.right)


def parse_marked(text: str, rank: int) -> MarkedWord:
    if text.count(MARKER) != 1:
        raise WordSyntaxError(f"expected exactly one {MARKER!r} in {text!r}")
    left, right = text.split(MARKER)
    return MarkedWord(parse_word(left, rank), parse_word(right, rank))


def format_marked(marked: MarkedWord) -> str:
    return str(marked)


def _symbol_index(char: str) -> int:
    if char == MARKER:
        return 2 * MAX_RANK
    if char.isascii() and char.isalpha():
        return 2 * (ord(char.lower()) - ord("a")) + char.isupper()
    raise WordSyntaxError(f"not a word symbol: {char!r}")


def symbol_sort_key(text: str) -> tuple[int, tuple[int, ...]]:
    """Length-then-lexicographic key over the canonical symbol order
    a, A, b, B, ..., with the marker sorting last."""
    return len(text), tuple(_symbol_index(char) for char in text)
