"""Exact enumerative ranking of fixed-weight binary words (0 < 1, lexicographic)."""

from __future__ import annotations

from math import comb

from .errors import RankOutOfRange
from .words import Word


def lex_rank_fixed_weight(word: Word) -> int:
    """Rank of a binary word among all words of its length and Hamming weight."""
    n = len(word)
    ones = sum(word)
    rank = 0
    for i, symbol in enumerate(word):
        if symbol:
            # every word with 0 here and the same suffix budget comes first
            rank += comb(n - i - 1, ones)
            ones -= 1
    return rank


def lex_unrank_fixed_weight(rank: int, n: int, weight: int) -> Word:
    if not 0 <= rank < comb(n, weight):
        raise RankOutOfRange(f"rank {rank} out of range for {n} choose {weight}")
    symbols = []
    ones = weight
    for i in range(n):
        zero_block = comb(n - i - 1, ones)
        if rank < zero_block:
            symbols.append(0)
        else:
            rank -= zero_block
            symbols.append(1)
            ones -= 1
    return tuple(symbols)
