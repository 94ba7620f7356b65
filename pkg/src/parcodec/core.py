"""Universal iterative encoder/decoder for length-parametric channel constraints.

The encoder embeds a k-symbol payload into an n-symbol start word and then
repeatedly applies an injective step function until the word satisfies the
constraint.  Because the step map is injective and its image avoids the set
of start words, no cycle is reachable from any start word, so the loop
always terminates; the decoder unravels the same steps in reverse until it
sees a start word again.

Two generic builders are provided:

* :func:`build_one_symbol` turns an injective "shrink" map on the
  constraint-violating words into a full codec with one redundancy symbol.
* :func:`build_intersection` combines m shrink maps (one per constraint)
  into a single shrink map for the intersection of the constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DimensionMismatch, IterationCapExceeded, NotACodeword, SlackMismatch
from .words import Word, check_word


def ceil_log(value: int, base: int) -> int:
    """Smallest L with base**L >= value, exact integer arithmetic."""
    if value < 1 or base < 2:
        raise ValueError(f"ceil_log needs value >= 1 and base >= 2, got {value}, {base}")
    width, reach = 0, 1
    while reach < value:
        reach *= base
        width += 1
    return width


def default_iter_cap(q: int, redundancy: int) -> int:
    # Termination is guaranteed for valid constructions; the cap only guards
    # user-supplied step functions and malformed decode inputs.
    return max(1 << 20, q ** (redundancy + 8))


@dataclass(frozen=True)
class TraceStats:
    """Per-encode diagnostics.

    ``visited`` (when recorded) holds every intermediate word including the
    start word and the final codeword, so its length is ``iterations + 1``.
    """

    iterations: int
    visited: tuple[Word, ...] | None = None


@dataclass(frozen=True)
class ShrinkStep:
    """An injective map from constraint-violating n-words into shorter words.

    ``shrink`` maps every word that violates the constraint to a word of
    exactly ``target_len = n - 1 - slack`` symbols; ``unshrink`` inverts it
    on the image and raises :class:`NotACodeword` on inconsistent input.
    ``slack`` reserves room for an intersection tag.
    """

    q: int
    n: int
    slack: int
    target_len: int
    shrink: Callable[[Word], Word]
    unshrink: Callable[[Word], Word]
    satisfies: Callable[[Word], bool]

    def __post_init__(self):
        if self.slack < 0:
            raise SlackMismatch(f"slack must be >= 0, got {self.slack}")
        if self.target_len != self.n - 1 - self.slack:
            raise SlackMismatch(
                f"target_len {self.target_len} != n - 1 - slack = {self.n - 1 - self.slack}"
            )


@dataclass(frozen=True)
class CodecSpec:
    """A fully built constraint codec.

    ``embed`` maps payloads into the start set, ``step`` moves a violating
    word to another non-start word, and the indicator callables classify
    words; all callables are pure, so instances are safely shareable.
    """

    q: int
    n: int
    k: int
    redundancy: int
    embed: Callable[[Word], Word]
    unembed: Callable[[Word], Word]
    is_start: Callable[[Word], bool]
    step: Callable[[Word], Word]
    step_back: Callable[[Word], Word]
    satisfies: Callable[[Word], bool]
    iter_cap: int

    def __post_init__(self):
        if self.k < 1 or self.redundancy < 1 or self.k + self.redundancy != self.n:
            raise DimensionMismatch(
                f"need k >= 1, redundancy >= 1, k + redundancy == n; got k={self.k}, "
                f"redundancy={self.redundancy}, n={self.n}"
            )
        if self.iter_cap < 1:
            raise ValueError("iter_cap must be positive")


def encode(codec: CodecSpec, payload: Word, *, record_visited: bool = False) -> tuple[Word, TraceStats]:
    """Encode a k-symbol payload into an n-symbol word satisfying the constraint."""
    check_word(payload, codec.q, codec.k, what="payload")
    word = codec.embed(payload)
    visited = [word] if record_visited else None
    iterations = 0
    while not codec.satisfies(word):
        if iterations >= codec.iter_cap:
            raise IterationCapExceeded(
                f"no valid word after {iterations} steps (cap {codec.iter_cap}); "
                "the step function is likely not injective"
            )
        word = codec.step(word)
        iterations += 1
        if visited is not None:
            visited.append(word)
    return word, TraceStats(iterations, tuple(visited) if visited is not None else None)


def decode(codec: CodecSpec, word: Word) -> Word:
    """Invert :func:`encode`; raises NotACodeword outside the encoder image."""
    check_word(word, codec.q, codec.n, what="codeword")
    iterations = 0
    while not codec.is_start(word):
        if iterations >= codec.iter_cap:
            raise NotACodeword(
                f"no start word after {iterations} reverse steps (cap {codec.iter_cap})"
            )
        word = codec.step_back(word)
        iterations += 1
    return codec.unembed(word)


START_MARKER = 1  # appended by embed; step appends STEP_MARKER instead
STEP_MARKER = 0


def build_one_symbol(shrink: ShrinkStep, iter_cap: int | None = None) -> CodecSpec:
    """Codec with one redundancy symbol from a slack-0 shrink map.

    Start words are exactly those ending in symbol 1 (the payload plus a
    marker), and each step shrinks a violating word to n-1 symbols and
    appends marker 0, so step images never collide with start words.
    """
    if shrink.slack != 0:
        raise SlackMismatch(f"build_one_symbol needs slack 0, got {shrink.slack}")
    q, n = shrink.q, shrink.n
    do_shrink, do_unshrink = shrink.shrink, shrink.unshrink

    def embed(payload: Word) -> Word:
        return payload + (START_MARKER,)

    def unembed(word: Word) -> Word:
        return word[:-1]

    def is_start(word: Word) -> bool:
        return word[-1] == START_MARKER

    def step(word: Word) -> Word:
        return do_shrink(word) + (STEP_MARKER,)

    def step_back(word: Word) -> Word:
        if word[-1] != STEP_MARKER:
            raise NotACodeword(f"trailing symbol {word[-1]} is not the step marker")
        return do_unshrink(word[:-1])

    return CodecSpec(
        q=q,
        n=n,
        k=n - 1,
        redundancy=1,
        embed=embed,
        unembed=unembed,
        is_start=is_start,
        step=step,
        step_back=step_back,
        satisfies=shrink.satisfies,
        iter_cap=iter_cap if iter_cap is not None else default_iter_cap(q, 1),
    )


def build_intersection(members: Sequence[ShrinkStep]) -> ShrinkStep:
    """Combine shrink maps for several constraints into one for their intersection.

    A word violating the intersection is shrunk by the first member it
    violates, and the member's index is appended as a fixed-width tag; every
    member must therefore carry slack ceil_log(m) to leave room for the tag.
    """
    members = list(members)
    if not members:
        raise ValueError("need at least one member")
    q, n = members[0].q, members[0].n
    for member in members:
        if (member.q, member.n) != (q, n):
            raise DimensionMismatch(
                f"members disagree on alphabet/length: ({member.q}, {member.n}) vs ({q}, {n})"
            )
    tag_width = ceil_log(len(members), q)
    for idx, member in enumerate(members):
        if member.slack != tag_width:
            raise SlackMismatch(
                f"member {idx} has slack {member.slack}, intersection of {len(members)} "
                f"needs {tag_width}"
            )
    target_len = n - 1
    checks = [member.satisfies for member in members]

    def satisfies(word: Word) -> bool:
        return all(check(word) for check in checks)

    def shrink(word: Word) -> Word:
        for idx, member in enumerate(members):
            if not member.satisfies(word):
                return member.shrink(word) + encode_index(idx, tag_width, q)
        raise ValueError("shrink called on a word satisfying every member constraint")

    def unshrink(word: Word) -> Word:
        body, tag = word[: target_len - tag_width], word[target_len - tag_width:]
        idx = decode_index(tag, q)
        if idx >= len(members):
            raise NotACodeword(f"member tag {idx} out of range (have {len(members)})")
        return members[idx].unshrink(body)

    return ShrinkStep(
        q=q, n=n, slack=0, target_len=target_len,
        shrink=shrink, unshrink=unshrink, satisfies=satisfies,
    )


def encode_index(value: int, width: int, q: int) -> Word:
    """Fixed-width big-endian base-q encoding of a 0-based index."""
    if not 0 <= value < q ** width:
        raise OverflowError(f"index {value} does not fit in {width} base-{q} symbols")
    digits = []
    for _ in range(width):
        value, digit = divmod(value, q)
        digits.append(digit)
    return tuple(reversed(digits))


def decode_index(word: Word, q: int) -> int:
    value = 0
    for symbol in word:
        value = value * q + symbol
    return value
