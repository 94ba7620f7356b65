"""Global constraints: properties of window *pairs* or of the whole word.

* :func:`repeat_free_shrink` (CLI: rf/srf) - no length-ell window may recur,
  optionally after a per-position symbol substitution.
* :func:`reverse_complement_shrink` (CLI: rss) - no two non-overlapping
  windows may be reverse complements of each other.
* :func:`build_secondary_structure` (CLI: ss) - reverse-complement pairs
  forbidden at *every* offset, overlapping included, by intersecting the
  non-overlapping shrink with a reverse-complement-palindrome window coder.
* :func:`build_almost_balanced` (CLI: ab) - total Hamming weight confined to
  [n/2 - sqrt(n), n/2 + sqrt(n)], via exact enumerative ranking of the
  too-light and too-heavy words.  All threshold arithmetic is exact integer
  work; no floating point enters codec semantics.
"""

from __future__ import annotations

from math import comb, isqrt
from typing import Sequence

from .core import (
    CodecSpec,
    ShrinkStep,
    build_intersection,
    build_one_symbol,
    ceil_log,
    decode_index,
    encode_index,
)
from .errors import NotACodeword, ParameterViolation, RankOutOfRange
from .local import forbidden_window_shrink, no_palindrome_coder
from .ranking import lex_rank_fixed_weight, lex_unrank_fixed_weight
from .words import Word

# DNA alphabet is A=0, C=1, G=2, T=3; complement swaps A<->T and C<->G.
DNA_COMPLEMENT: tuple[int, ...] = (3, 2, 1, 0)


def reverse_complement(word: Word, comp: Sequence[int] = DNA_COMPLEMENT) -> Word:
    return tuple(comp[s] for s in reversed(word))


def _normalize_symbol_map(
    symbol_map: Sequence[Sequence[int]] | Sequence[int] | None, ell: int, q: int
) -> tuple[tuple[int, ...], ...] | None:
    """Expand a symbol map to one table per window position; None means identity."""
    if symbol_map is None:
        return None
    tables = list(symbol_map)
    if tables and isinstance(tables[0], int):
        tables = [tuple(symbol_map)] * ell  # one table applied at every position
    if len(tables) != ell:
        raise ParameterViolation(f"need one symbol table per window position ({ell}), got {len(tables)}")
    out = []
    for table in tables:
        table = tuple(table)
        if len(table) != q or any(not 0 <= s < q for s in table):
            raise ParameterViolation(f"symbol table {table} is not a map on [0, {q})")
        out.append(table)
    return tuple(out)


def _find_window_pair(word: Word, ell: int, transform, min_gap: int) -> tuple[int, int] | None:
    """Minimal (i, j), i ordered first, with transform(window at i) == window at j
    and j >= i + min_gap; None when no such pair exists."""
    count = len(word) - ell + 1
    if count < 2:
        return None
    positions: dict[Word, list[int]] = {}
    for j in range(count):
        positions.setdefault(word[j : j + ell], []).append(j)
    for i in range(count):
        matches = positions.get(transform(word[i : i + ell]))
        if not matches:
            continue
        floor = max(i + min_gap, i + 1)
        for j in matches:
            if j >= floor:
                return i, j
    return None


def repeat_free_shrink(
    n: int,
    ell: int,
    q: int = 2,
    symbol_map: Sequence[Sequence[int]] | Sequence[int] | None = None,
    slack: int = 0,
) -> ShrinkStep:
    """No window may equal the (symbolwise-mapped) copy of an earlier window.

    With the default identity map this is the repeat-free constraint; a
    symbol map generalizes it to symbolwise-transformed repeats (CLI: srf).
    The shrink removes the window at the later index j of the first violating
    pair and appends both indices; the inverse either copies the surviving
    window (no overlap) or regrows the removed one symbol by symbol, since an
    overlapping match forces a (j - i)-periodic structure.
    """
    index_width = ceil_log(n, q)
    if ell < 2 * index_width + 1 + slack:
        raise ParameterViolation(
            f"window length {ell} below bound 2*ceil_log(n) + 1 + slack "
            f"= {2 * index_width + 1 + slack}"
        )
    if ell > n:
        raise ParameterViolation(f"window length {ell} exceeds word length {n}")
    tables = _normalize_symbol_map(symbol_map, ell, q)
    if tables is None:
        transform = lambda window: window  # noqa: E731
    else:
        transform = lambda window: tuple(t[s] for t, s in zip(tables, window))  # noqa: E731
    target_len = n - 1 - slack
    content_len = n - ell + 2 * index_width
    pad = target_len - content_len

    def satisfies(word: Word) -> bool:
        return _find_window_pair(word, ell, transform, 1) is None

    def shrink(word: Word) -> Word:
        pair = _find_window_pair(word, ell, transform, 1)
        if pair is None:
            raise ValueError("shrink called on a word with no repeated window")
        i, j = pair
        return (
            word[:j]
            + word[j + ell :]
            + encode_index(i, index_width, q)
            + encode_index(j, index_width, q)
            + (0,) * pad
        )

    def unshrink(word: Word) -> Word:
        if any(word[content_len:]):
            raise NotACodeword("nonzero padding after index fields")
        rest = word[: n - ell]
        i = decode_index(word[n - ell : n - ell + index_width], q)
        j = decode_index(word[n - ell + index_width : content_len], q)
        if not i < j <= n - ell:
            raise NotACodeword(f"index pair ({i}, {j}) out of range")
        if j >= i + ell:
            source = rest[i : i + ell]
            window = transform(source)
        else:
            # the removed window overlapped its match: regrow left to right,
            # reading already-regrown symbols once the source runs past j
            grown: list[int] = []
            for t in range(ell):
                src = rest[i + t] if i + t < j else grown[i + t - j]
                grown.append(src if tables is None else tables[t][src])
            window = tuple(grown)
        return rest[:j] + window + rest[j:]

    return ShrinkStep(
        q=q, n=n, slack=slack, target_len=target_len,
        shrink=shrink, unshrink=unshrink, satisfies=satisfies,
    )


def reverse_complement_shrink(
    n: int, ell: int, comp: Sequence[int] = DNA_COMPLEMENT, slack: int = 0
) -> ShrinkStep:
    """No window may be the reverse complement of an earlier, non-overlapping one.

    Reverse complement is not symbolwise (it reverses), so only pairs with
    j >= i + ell are covered here; :func:`build_secondary_structure` adds the
    overlapping case.  Any self-inverse symbol complement is accepted.
    """
    comp = tuple(comp)
    q = len(comp)
    if any(comp[comp[s]] != s for s in range(q)):
        raise ParameterViolation(f"complement table {comp} is not self-inverse")
    index_width = ceil_log(n, q)
    if ell < 2 * index_width + 1 + slack:
        raise ParameterViolation(
            f"window length {ell} below bound 2*ceil_log(n) + 1 + slack "
            f"= {2 * index_width + 1 + slack}"
        )
    if ell > n:
        raise ParameterViolation(f"window length {ell} exceeds word length {n}")
    transform = lambda window: reverse_complement(window, comp)  # noqa: E731
    target_len = n - 1 - slack
    content_len = n - ell + 2 * index_width
    pad = target_len - content_len

    def satisfies(word: Word) -> bool:
        return _find_window_pair(word, ell, transform, ell) is None

    def shrink(word: Word) -> Word:
        pair = _find_window_pair(word, ell, transform, ell)
        if pair is None:
            raise ValueError("shrink called on a word with no reverse-complement pair")
        i, j = pair
        return (
            word[:j]
            + word[j + ell :]
            + encode_index(i, index_width, q)
            + encode_index(j, index_width, q)
            + (0,) * pad
        )

    def unshrink(word: Word) -> Word:
        if any(word[content_len:]):
            raise NotACodeword("nonzero padding after index fields")
        rest = word[: n - ell]
        i = decode_index(word[n - ell : n - ell + index_width], q)
        j = decode_index(word[n - ell + index_width : content_len], q)
        if not (i + ell <= j <= n - ell):
            raise NotACodeword(f"index pair ({i}, {j}) is not a non-overlapping pair")
        window = reverse_complement(rest[i : i + ell], comp)
        return rest[:j] + window + rest[j:]

    return ShrinkStep(
        q=q, n=n, slack=slack, target_len=target_len,
        shrink=shrink, unshrink=unshrink, satisfies=satisfies,
    )


def build_secondary_structure(n: int, comp: Sequence[int] = DNA_COMPLEMENT) -> CodecSpec:
    """Codec over q=4 forbidding reverse-complement window pairs at any offset (CLI: ss).

    Windows have length 2*ceil_log4(n) + 2.  An overlapping reverse-complement
    pair forces a reverse-complement palindrome of length 2*floor(ell/2) + 2
    inside the word, so intersecting the non-overlapping shrink with a
    no-palindrome coder of that length covers every offset.
    """
    comp = tuple(comp)
    q = len(comp)
    ell = 2 * ceil_log(n, q) + 2
    palindrome_len = 2 * (ell // 2) + 2
    members = [
        reverse_complement_shrink(n, ell, comp, slack=1),
        forbidden_window_shrink(
            no_palindrome_coder(n, palindrome_len, comp=comp, q=q, slack=1), n, slack=1
        ),
    ]
    return build_one_symbol(build_intersection(members))


def count_weight_at_most(n: int, wmax: int) -> int:
    """Number of binary n-words with Hamming weight <= wmax, exactly."""
    return sum(comb(n, w) for w in range(0, min(wmax, n) + 1))


def rank_weight_at_most(word: Word, wmax: int) -> int:
    """Rank of a binary word among weight-<=wmax words (weight asc, then lex)."""
    weight = sum(word)
    if weight > wmax:
        raise RankOutOfRange(f"word weight {weight} exceeds wmax {wmax}")
    return count_weight_at_most(len(word), weight - 1) + lex_rank_fixed_weight(word)


def unrank_weight_at_most(rank: int, n: int, wmax: int) -> Word:
    if not 0 <= rank < count_weight_at_most(n, wmax):
        raise RankOutOfRange(f"rank {rank} out of range for weight <= {wmax}, n = {n}")
    for weight in range(wmax + 1):
        block = comb(n, weight)
        if rank < block:
            return lex_unrank_fixed_weight(rank, n, weight)
        rank -= block
    raise RankOutOfRange("unreachable")  # pragma: no cover


def min_balanced_weight(n: int) -> int:
    """Smallest integer weight w with w >= n/2 - sqrt(n), exactly.

    w >= n/2 - sqrt(n) iff n - 2w <= 0 or (n - 2w)**2 <= 4n, so the
    threshold is ceil((n - isqrt(4n)) / 2); no floating point involved.
    """
    return (n - isqrt(4 * n) + 1) // 2


def _weight_in_upper_range(word: Word, n: int) -> bool:
    # w >= n/2 - sqrt(n) without floats
    d = n - 2 * sum(word)
    return d <= 0 or d * d <= 4 * n


def _weight_in_lower_range(word: Word, n: int) -> bool:
    # w <= n/2 + sqrt(n) without floats
    d = 2 * sum(word) - n
    return d <= 0 or d * d <= 4 * n


def almost_balanced_shrink_pair(n: int) -> tuple[ShrinkStep, ShrinkStep]:
    """Shrink steps for the two halves of the almost-balanced constraint.

    The first handles too-light words (weight < n/2 - sqrt(n)) by encoding
    their enumerative rank in n-2 bits; the second handles too-heavy words by
    ranking the bitwise complement.  Both carry slack 1 so they can be
    intersected with a one-bit tag.  The n-2-bit capacity is checked by exact
    counting at build time, not assumed.
    """
    if n <= 4:
        raise ParameterViolation(f"almost-balanced constraint needs n > 4, got {n}")
    w_star = min_balanced_weight(n) - 1  # heaviest weight still violating the lower bound
    count = count_weight_at_most(n, w_star)
    capacity = 1 << (n - 2)
    if count > capacity:
        raise ParameterViolation(
            f"{count} words of weight <= {w_star} exceed 2**(n-2) = {capacity}"
        )
    target_len = n - 2

    def shrink_light(word: Word) -> Word:
        return encode_index(rank_weight_at_most(word, w_star), target_len, 2)

    def unshrink_light(word: Word) -> Word:
        rank = decode_index(word, 2)
        if rank >= count:
            raise NotACodeword(f"rank {rank} out of range ({count} light words)")
        return unrank_weight_at_most(rank, n, w_star)

    def shrink_heavy(word: Word) -> Word:
        return shrink_light(tuple(1 - s for s in word))

    def unshrink_heavy(word: Word) -> Word:
        return tuple(1 - s for s in unshrink_light(word))

    weight_floor = ShrinkStep(
        q=2, n=n, slack=1, target_len=target_len,
        shrink=shrink_light, unshrink=unshrink_light,
        satisfies=lambda word: _weight_in_upper_range(word, n),
    )
    weight_ceiling = ShrinkStep(
        q=2, n=n, slack=1, target_len=target_len,
        shrink=shrink_heavy, unshrink=unshrink_heavy,
        satisfies=lambda word: _weight_in_lower_range(word, n),
    )
    return weight_floor, weight_ceiling


def build_almost_balanced(n: int) -> CodecSpec:
    """Codec whose outputs have weight in [n/2 - sqrt(n), n/2 + sqrt(n)] (CLI: ab)."""
    return build_one_symbol(build_intersection(almost_balanced_shrink_pair(n)))
