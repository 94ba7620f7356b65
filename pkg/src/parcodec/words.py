"""Words over a size-q integer alphabet, plus the text formats the CLI speaks.

A word is a plain ``tuple[int, ...]`` with every symbol in ``[0, q)``.
Alphabet size and expected length travel with the codec objects, so
validation happens at operation boundaries rather than per value.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .errors import DimensionMismatch, ParseError

Word = tuple[int, ...]

# Text formats: one word per line. "bits" is ASCII 0/1 (q=2), "dna" maps
# A,C,G,T to 0,1,2,3 (q=4).
FORMAT_ALPHABETS = {"bits": "01", "dna": "ACGT"}
FORMAT_Q = {"bits": 2, "dna": 4}


def check_word(word: Word, q: int, length: int | None = None, what: str = "word") -> None:
    """Validate symbol range and (optionally) length; raise DimensionMismatch."""
    if length is not None and len(word) != length:
        raise DimensionMismatch(f"{what} has length {len(word)}, expected {length}")
    for s in word:
        if not (isinstance(s, int) and 0 <= s < q):
            raise DimensionMismatch(f"{what} contains symbol {s!r} outside alphabet [0, {q})")


def all_words(q: int, n: int) -> Iterator[Word]:
    """All q^n words of length n in lexicographic order."""
    return product(range(q), repeat=n)


def word_to_text(word: Word, fmt: str) -> str:
    alphabet = FORMAT_ALPHABETS[fmt]
    try:
        return "".join(alphabet[s] for s in word)
    except IndexError:
        raise DimensionMismatch(f"word {word} not representable in format {fmt!r}") from None


def text_to_word(text: str, fmt: str) -> Word:
    alphabet = FORMAT_ALPHABETS[fmt]
    symbols = []
    for ch in text:
        idx = alphabet.find(ch)
        if idx < 0:
            raise ParseError(f"character {ch!r} is not valid in format {fmt!r}")
        symbols.append(idx)
    return tuple(symbols)
