"""Local constraints: forbidden fixed-length windows anywhere in the word.

A :class:`WindowCoder` describes one family of forbidden windows: an
indicator over length-ell windows plus an injective compressor ``pack`` that
squeezes a forbidden window into ell' < ell symbols.
:func:`forbidden_window_shrink` lifts any such coder into a shrink step: the
first forbidden window is cut out and re-encoded at the tail as
(window index, packed window).

Built-in coders (CLI names in parentheses):

* :func:`min_weight_coder` (mw) - windows must have Hamming weight >= p.
* :func:`weight_window_coder` (lab) - window weight must stay in [wmin, wmax].
* :func:`min_period_coder` (mp) - windows must have minimal period >= p.
* :func:`no_palindrome_coder` (enp) - no window equal to its own
  (optionally complemented) reversal.
* :func:`listed_window_coder` - any explicit window list, rank-compressed.
* :func:`build_palindrome_free` (mpl) - full codec forbidding palindromes of
  every length above a log-scale threshold, via intersection of two
  no-palindrome coders.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

from .core import (
    CodecSpec,
    ShrinkStep,
    build_intersection,
    build_one_symbol,
    ceil_log,
    decode_index,
    encode_index,
)
from .errors import NotACodeword, ParameterViolation
from .ranking import lex_rank_fixed_weight, lex_unrank_fixed_weight
from .words import Word, check_word


@dataclass(frozen=True)
class WindowCoder:
    """Forbidden-window family with an injective width-reducing compressor."""

    q: int
    window_len: int
    packed_len: int
    is_forbidden: Callable[[Word], bool]
    pack: Callable[[Word], Word]
    unpack: Callable[[Word], Word]


def first_forbidden_window(word: Word, coder: WindowCoder) -> int | None:
    """Smallest start index of a forbidden window, or None. Leftmost wins."""
    ell = coder.window_len
    hit = coder.is_forbidden
    for i in range(len(word) - ell + 1):
        if hit(word[i : i + ell]):
            return i
    return None


def forbidden_window_shrink(coder: WindowCoder, n: int, slack: int = 0) -> ShrinkStep:
    """Shrink step that removes the first forbidden window.

    The violating word is rewritten as
    ``prefix + suffix + index(first window) + pack(window) + zero padding``,
    which fits in n - 1 - slack symbols whenever
    ``packed_len <= window_len - ceil_log(n) - 1 - slack``.
    The inverse trusts the encoded index; it never re-scans.
    """
    q, ell, packed = coder.q, coder.window_len, coder.packed_len
    index_width = ceil_log(n, q)
    budget = ell - index_width - 1 - slack
    if packed > budget:
        raise ParameterViolation(
            f"packed window length {packed} exceeds {budget} "
            f"(= window_len - ceil_log(n) - 1 - slack); smallest admissible window_len "
            f"is {packed + index_width + 1 + slack}"
        )
    if ell > n:
        raise ParameterViolation(f"window length {ell} exceeds word length {n}")
    target_len = n - 1 - slack
    content_len = n - ell + index_width + packed
    pad = target_len - content_len

    def satisfies(word: Word) -> bool:
        return first_forbidden_window(word, coder) is None

    def shrink(word: Word) -> Word:
        i = first_forbidden_window(word, coder)
        if i is None:
            raise ValueError("shrink called on a word with no forbidden window")
        return (
            word[:i]
            + word[i + ell :]
            + encode_index(i, index_width, q)
            + coder.pack(word[i : i + ell])
            + (0,) * pad
        )

    def unshrink(word: Word) -> Word:
        if any(word[content_len:]):
            raise NotACodeword("nonzero padding after packed window")
        rest = word[: n - ell]
        i = decode_index(word[n - ell : n - ell + index_width], q)
        if i > n - ell:
            raise NotACodeword(f"window index {i} out of range (max {n - ell})")
        window = coder.unpack(word[content_len - packed : content_len])
        return rest[:i] + window + rest[i:]

    return ShrinkStep(
        q=q, n=n, slack=slack, target_len=target_len,
        shrink=shrink, unshrink=unshrink, satisfies=satisfies,
    )


def min_weight_coder(n: int, ell: int, p: int, slack: int = 0) -> WindowCoder:
    """Binary windows with Hamming weight < p are forbidden (CLI: mw).

    A forbidden window has at most p-1 ones; pack lists their 0-based
    positions, ascending, each in ceil_log(ell+1) bits, padding missing
    entries with the dummy position ell.
    """
    if p < 1:
        raise ParameterViolation(f"minimal weight p must be >= 1, got {p}")
    field = ceil_log(ell + 1, 2)
    packed = (p - 1) * field
    needed = _min_weight_min_ell(n, p, slack)
    if ell < needed:
        raise ParameterViolation(
            f"window length {ell} below bound ceil_log(n) + (p-1)*ceil_log(ell+1) + 1 + slack; "
            f"smallest admissible is {needed}"
        )

    def is_forbidden(window: Word) -> bool:
        return sum(window) < p

    def pack(window: Word) -> Word:
        fields = [encode_index(i, field, 2) for i, s in enumerate(window) if s]
        fields += [encode_index(ell, field, 2)] * (p - 1 - len(fields))
        return tuple(s for f in fields for s in f)

    def unpack(packed_word: Word) -> Word:
        window = [0] * ell
        for start in range(0, packed, field):
            pos = decode_index(packed_word[start : start + field], 2)
            if pos > ell:
                raise NotACodeword(f"one-position {pos} out of range (dummy is {ell})")
            if pos < ell:
                window[pos] = 1
        return tuple(window)

    return WindowCoder(2, ell, packed, is_forbidden, pack, unpack)


def _min_weight_min_ell(n: int, p: int, slack: int) -> int:
    # the bound references ell on both sides; the right side grows only
    # logarithmically, so scan upward
    base = ceil_log(n, 2) + 1 + slack
    ell = 1
    while ell < base + (p - 1) * ceil_log(ell + 1, 2):
        ell += 1
    return ell


def weight_window_coder(n: int, ell: int, wmin: int, wmax: int, slack: int = 0) -> WindowCoder:
    """Binary windows with weight outside [wmin, wmax] are forbidden (CLI: lab).

    Forbidden windows are compressed by their exact enumerative rank, ordered
    by weight ascending then lexicographic; admissibility is the exact count
    check |W| <= 2**packed_len rather than an asymptotic regime.
    """
    if not 0 <= wmin <= wmax <= ell:
        raise ParameterViolation(f"need 0 <= wmin <= wmax <= ell, got [{wmin}, {wmax}], ell={ell}")
    packed = ell - ceil_log(n, 2) - 1 - slack
    if packed < 0:
        raise ParameterViolation(
            f"window length {ell} leaves no room for the packed field "
            f"(needs at least ceil_log(n) + 1 + slack = {ceil_log(n, 2) + 1 + slack})"
        )
    weights = list(range(0, wmin)) + list(range(wmax + 1, ell + 1))
    offsets = {}
    total = 0
    for w in weights:
        offsets[w] = total
        total += comb(ell, w)
    if total > 1 << packed:
        raise ParameterViolation(
            f"forbidden-window count {total} exceeds capacity 2**{packed} = {1 << packed}"
        )

    def is_forbidden(window: Word) -> bool:
        weight = sum(window)
        return weight < wmin or weight > wmax

    def pack(window: Word) -> Word:
        rank = offsets[sum(window)] + lex_rank_fixed_weight(window)
        return encode_index(rank, packed, 2)

    def unpack(packed_word: Word) -> Word:
        rank = decode_index(packed_word, 2)
        if rank >= total:
            raise NotACodeword(f"window rank {rank} out of range (|W| = {total})")
        for w in reversed(weights):
            if rank >= offsets[w]:
                return lex_unrank_fixed_weight(rank - offsets[w], ell, w)
        raise NotACodeword("empty forbidden set cannot be unpacked")

    return WindowCoder(2, ell, packed, is_forbidden, pack, unpack)


def minimal_period(window: Word) -> int:
    """Smallest p in [1, len) with window[i] == window[i+p] for all i; len if none."""
    ell = len(window)
    for p in range(1, ell):
        if all(window[i] == window[i + p] for i in range(ell - p)):
            return p
    return ell


def min_period_coder(n: int, ell: int, p: int, slack: int = 0, q: int = 2) -> WindowCoder:
    """Windows with minimal period < p are forbidden (CLI: mp).

    A window with minimal period p' < p is fully determined by its first p'
    symbols; pack stores that seed, a 1 marker, and zero fill, p symbols total.
    """
    if not 1 <= p <= ell:
        raise ParameterViolation(f"need 1 <= p <= ell, got p={p}, ell={ell}")
    needed = ceil_log(n, q) + p + 1 + slack
    if ell < needed:
        raise ParameterViolation(
            f"window length {ell} below bound ceil_log(n) + p + 1 + slack; "
            f"smallest admissible is {needed}"
        )

    def is_forbidden(window: Word) -> bool:
        return minimal_period(window) < p

    def pack(window: Word) -> Word:
        period = minimal_period(window)
        return window[:period] + (1,) + (0,) * (p - period - 1)

    def unpack(packed_word: Word) -> Word:
        length = p
        while length > 0 and packed_word[length - 1] == 0:
            length -= 1
        if length < 2 or packed_word[length - 1] != 1:
            raise NotACodeword("packed window lacks a period marker")
        seed = packed_word[: length - 1]
        return tuple(seed[i % len(seed)] for i in range(ell))

    return WindowCoder(q, ell, p, is_forbidden, pack, unpack)


def no_palindrome_coder(
    n: int, ell: int, comp: Sequence[int] | None = None, q: int = 2, slack: int = 0
) -> WindowCoder:
    """Windows equal to their own complemented reversal are forbidden (CLI: enp).

    ``comp`` is a self-inverse symbol map (identity by default; pass the DNA
    complement for reverse-complement palindromes).  Such a window is
    determined by its first ceil(ell/2) symbols, which is all pack keeps.
    With a fixed-point-free comp and odd ell no window qualifies; the coder
    then degenerates to an always-false indicator, which is allowed.
    """
    if comp is None:
        comp = tuple(range(q))
    comp = tuple(comp)
    if len(comp) != q or any(comp[comp[s]] != s for s in range(q)):
        raise ParameterViolation(f"comp must be a self-inverse map on [0, {q})")
    if ell // 2 < ceil_log(n, q) + 1 + slack:
        raise ParameterViolation(
            f"floor(ell/2) = {ell // 2} below bound ceil_log(n) + 1 + slack "
            f"= {ceil_log(n, q) + 1 + slack}; smallest admissible ell is "
            f"{2 * (ceil_log(n, q) + 1 + slack)}"
        )
    packed = (ell + 1) // 2

    def is_forbidden(window: Word) -> bool:
        return all(window[i] == comp[window[ell - 1 - i]] for i in range(packed))

    def pack(window: Word) -> Word:
        return window[:packed]

    def unpack(packed_word: Word) -> Word:
        return packed_word + tuple(comp[packed_word[ell - 1 - i]] for i in range(packed, ell))

    return WindowCoder(q, ell, packed, is_forbidden, pack, unpack)


def listed_window_coder(
    windows: Sequence[Word],
    n: int,
    ell: int,
    q: int = 2,
    slack: int = 0,
    packed_len: int | None = None,
) -> WindowCoder:
    """Explicitly listed forbidden windows, compressed by sorted rank.

    ``packed_len`` defaults to the largest width admissible for word length
    n; pass it explicitly to pin a smaller field.
    """
    table = sorted(set(windows))
    for w in table:
        check_word(w, q, ell, what="forbidden window")
    packed = packed_len if packed_len is not None else ell - ceil_log(n, q) - 1 - slack
    if packed < 0 or len(table) > q ** packed:
        raise ParameterViolation(
            f"{len(table)} forbidden windows exceed capacity q**{packed}"
            f" = {q ** max(packed, 0)}"
        )

    def is_forbidden(window: Word) -> bool:
        pos = bisect_left(table, window)
        return pos < len(table) and table[pos] == window

    def pack(window: Word) -> Word:
        return encode_index(bisect_left(table, window), packed, q)

    def unpack(packed_word: Word) -> Word:
        rank = decode_index(packed_word, q)
        if rank >= len(table):
            raise NotACodeword(f"window rank {rank} out of range ({len(table)} windows)")
        return table[rank]

    return WindowCoder(q, ell, packed, is_forbidden, pack, unpack)


def build_palindrome_free(n: int, q: int = 2) -> CodecSpec:
    """Codec whose outputs contain no palindrome of length >= 2*ceil_log(n) + 4 (CLI: mpl).

    Intersects no-palindrome coders for one even and one odd length; any
    longer palindrome contains one of those two lengths, so both are enough.
    """
    ell_even = 2 * ceil_log(n, q) + 4
    members = [
        forbidden_window_shrink(no_palindrome_coder(n, ell, q=q, slack=1), n, slack=1)
        for ell in (ell_even, ell_even + 1)
    ]
    return build_one_symbol(build_intersection(members))
