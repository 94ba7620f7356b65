"""Brute-force verification harness for codecs and shrink steps.

Everything here enumerates exhaustively below a configurable state bound and
refuses above it; a sampling mode exists but must be requested explicitly
with a seed and is reported as non-exhaustive.  All results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import CodecSpec, ShrinkStep, decode, encode
from .errors import BoundExceeded, NotACodeword
from .words import Word, all_words

DEFAULT_STATE_BOUND = 1 << 20

# Failure kinds recorded in VerifyReport entries.
ROUNDTRIP = "roundtrip"
MEMBERSHIP = "membership"
DUPLICATE_OUTPUT = "duplicate-output"
OUTPUT_CHECK = "output-check"
IN_DEGREE = "in-degree"
EDGE_INTO_START = "edge-into-start"
CYCLE = "cycle"
PATH_SUM = "path-sum"
IMAGE_LENGTH = "image-length"
IMAGE_SYMBOL = "image-symbol"
IMAGE_COLLISION = "image-collision"
INVERSE = "inverse"


@dataclass
class VerifyReport:
    """Aggregated outcome of one verification pass.

    ``failures`` holds (witness word, failure kind) pairs; the pass succeeded
    iff it is empty.  ``avg_iterations`` is an exact rational.
    """

    total_inputs: int
    failures: list[tuple[Word, str]] = field(default_factory=list)
    avg_iterations: Fraction | None = None
    max_iterations: int | None = None
    constraint_count: int | None = None
    exhaustive: bool = True
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def kv_lines(self) -> list[str]:
        """Machine-readable key=value lines."""
        lines = [f"inputs={self.total_inputs}", f"failures={len(self.failures)}"]
        if self.avg_iterations is not None:
            lines.append(
                f"avg_iterations={self.avg_iterations.numerator}/{self.avg_iterations.denominator}"
            )
        if self.max_iterations is not None:
            lines.append(f"max_iterations={self.max_iterations}")
        if self.constraint_count is not None:
            lines.append(f"constraint_count={self.constraint_count}")
        if not self.exhaustive:
            lines.append("mode=sampled")
            lines.append(f"seed={self.seed}")
        return lines

    def summary(self) -> str:
        head = "\n".join(self.kv_lines())
        if self.ok:
            return head
        shown = ", ".join(f"{kind} at {witness}" for witness, kind in self.failures[:5])
        return f"{head}\nfirst failures: {shown}"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BoundExceeded(message)


def exhaustive_roundtrip(
    codec: CodecSpec,
    *,
    bound: int = DEFAULT_STATE_BOUND,
    output_check: Callable[[Word], bool] | None = None,
) -> VerifyReport:
    """Round-trip every payload: decode(encode(x)) == x, output valid, outputs distinct.

    ``output_check`` lets the caller run an independent predicate over every
    codeword; a False verdict is recorded as an ``output-check`` failure.
    """
    space = codec.q ** codec.k
    _require(space <= bound, f"q**k = {space} exceeds bound {bound}")
    report = VerifyReport(total_inputs=space)
    outputs: dict[Word, Word] = {}
    total_iterations = 0
    max_iterations = 0
    for payload in all_words(codec.q, codec.k):
        word, stats = encode(codec, payload)
        total_iterations += stats.iterations
        max_iterations = max(max_iterations, stats.iterations)
        if not codec.satisfies(word):
            report.failures.append((payload, MEMBERSHIP))
        if word in outputs:
            report.failures.append((payload, DUPLICATE_OUTPUT))
        else:
            outputs[word] = payload
        if output_check is not None and not output_check(word):
            report.failures.append((payload, OUTPUT_CHECK))
        try:
            if decode(codec, word) != payload:
                report.failures.append((payload, ROUNDTRIP))
        except NotACodeword:
            report.failures.append((payload, ROUNDTRIP))
    report.avg_iterations = Fraction(total_iterations, space)
    report.max_iterations = max_iterations
    return report


class _XorShift64Star:
    """Fixed 64-bit xorshift* generator: reproducibility over statistical quality."""

    MASK = (1 << 64) - 1
    MULTIPLIER = 0x2545F4914F6CDD1D

    def __init__(self, seed: int):
        self._state = (seed & self.MASK) or 0x9E3779B97F4A7C15

    def next64(self) -> int:
        x = self._state
        x ^= (x >> 12)
        x = (x ^ (x << 25)) & self.MASK
        x ^= (x >> 27)
        self._state = x
        return (x * self.MULTIPLIER) & self.MASK

    def symbol(self, q: int) -> int:
        # exact for q in {2, 4} since q divides 2**64; tiny bias otherwise
        return self.next64() % q


def sample_roundtrip(
    codec: CodecSpec,
    samples: int,
    seed: int,
    *,
    output_check: Callable[[Word], bool] | None = None,
) -> VerifyReport:
    """Round-trip a seeded sample of payloads; reported as non-exhaustive."""
    rng = _XorShift64Star(seed)
    report = VerifyReport(total_inputs=samples, exhaustive=False, seed=seed)
    outputs: dict[Word, Word] = {}
    total_iterations = 0
    max_iterations = 0
    for _ in range(samples):
        payload = tuple(rng.symbol(codec.q) for _ in range(codec.k))
        word, stats = encode(codec, payload)
        total_iterations += stats.iterations
        max_iterations = max(max_iterations, stats.iterations)
        if not codec.satisfies(word):
            report.failures.append((payload, MEMBERSHIP))
        previous = outputs.get(word)
        if previous is not None and previous != payload:
            report.failures.append((payload, DUPLICATE_OUTPUT))
        outputs[word] = payload
        if output_check is not None and not output_check(word):
            report.failures.append((payload, OUTPUT_CHECK))
        try:
            if decode(codec, word) != payload:
                report.failures.append((payload, ROUNDTRIP))
        except NotACodeword:
            report.failures.append((payload, ROUNDTRIP))
    report.avg_iterations = Fraction(total_iterations, samples) if samples else Fraction(0)
    report.max_iterations = max_iterations
    return report


@dataclass
class StateGraph:
    """The step map as a graph over all q**n words.

    Edges run from every constraint-violating word to its step image; start
    and valid sets are materialized for coloring and degree checks.
    """

    q: int
    n: int
    nodes: tuple[Word, ...]
    edges: dict[Word, Word]
    start: frozenset[Word]
    valid: frozenset[Word]


def build_state_graph(codec: CodecSpec, *, bound: int = DEFAULT_STATE_BOUND) -> StateGraph:
    space = codec.q ** codec.n
    _require(space <= bound, f"q**n = {space} exceeds bound {bound}")
    nodes = tuple(all_words(codec.q, codec.n))
    edges: dict[Word, Word] = {}
    start = []
    valid = []
    for node in nodes:
        if codec.is_start(node):
            start.append(node)
        if codec.satisfies(node):
            valid.append(node)
        else:
            edges[node] = codec.step(node)
    return StateGraph(
        q=codec.q, n=codec.n, nodes=nodes, edges=edges,
        start=frozenset(start), valid=frozenset(valid),
    )


def check_graph(
    codec: CodecSpec, *, bound: int = DEFAULT_STATE_BOUND, graph: StateGraph | None = None
) -> VerifyReport:
    """Structural checks on the step graph.

    Asserts in-degree <= 1 everywhere, in-degree 0 on the start set, no cycle
    reachable from any embedded payload, and total path length at most q**n.
    Pass a prebuilt ``graph`` to avoid enumerating the state space twice.
    """
    if graph is None:
        graph = build_state_graph(codec, bound=bound)
    space = codec.q ** codec.n
    report = VerifyReport(total_inputs=codec.q ** codec.k)
    report.constraint_count = len(graph.valid)

    seen_targets: dict[Word, Word] = {}
    for source, target in graph.edges.items():
        if target in seen_targets:
            report.failures.append((target, IN_DEGREE))
        else:
            seen_targets[target] = source
        if target in graph.start:
            report.failures.append((target, EDGE_INTO_START))

    total_steps = 0
    max_steps = 0
    for payload in all_words(codec.q, codec.k):
        node = codec.embed(payload)
        steps = 0
        while node in graph.edges:
            node = graph.edges[node]
            steps += 1
            if steps > space:
                report.failures.append((codec.embed(payload), CYCLE))
                break
        total_steps += steps
        max_steps = max(max_steps, steps)
    if total_steps > space:
        report.failures.append(((), PATH_SUM))
    report.avg_iterations = Fraction(total_steps, codec.q ** codec.k)
    report.max_iterations = max_steps
    return report


def graph_to_dot(graph: StateGraph) -> str:
    """Deterministic DOT text: nodes in lexicographic order, colored by role.

    Fill marks constraint membership, a double border marks start words.
    """
    lines = ["digraph step_graph {", "  node [shape=circle];"]
    for node in graph.nodes:
        label = "".join(str(s) for s in node)
        fill = "palegreen" if node in graph.valid else "white"
        peripheries = 2 if node in graph.start else 1
        lines.append(
            f'  "{label}" [style=filled fillcolor="{fill}" peripheries={peripheries}];'
        )
    for node in graph.nodes:
        target = graph.edges.get(node)
        if target is not None:
            source_label = "".join(str(s) for s in node)
            target_label = "".join(str(s) for s in target)
            lines.append(f'  "{source_label}" -> "{target_label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def count_constraint(
    q: int, n: int, satisfies: Callable[[Word], bool], *, bound: int = DEFAULT_STATE_BOUND
) -> int:
    """Exact |C(n)| by enumeration."""
    space = q ** n
    _require(space <= bound, f"q**n = {space} exceeds bound {bound}")
    return sum(1 for word in all_words(q, n) if satisfies(word))


def check_shrink_injective(shrink: ShrinkStep, *, bound: int = DEFAULT_STATE_BOUND) -> VerifyReport:
    """Evaluate the shrink map on every violating word.

    Asserts exact output length, in-alphabet symbols, pairwise-distinct
    images, and that unshrink inverts shrink.
    """
    space = shrink.q ** shrink.n
    _require(space <= bound, f"q**n = {space} exceeds bound {bound}")
    report = VerifyReport(total_inputs=0)
    images: dict[Word, Word] = {}
    for word in all_words(shrink.q, shrink.n):
        if shrink.satisfies(word):
            continue
        report.total_inputs += 1
        image = shrink.shrink(word)
        if len(image) != shrink.target_len:
            report.failures.append((word, IMAGE_LENGTH))
            continue
        if any(not 0 <= s < shrink.q for s in image):
            report.failures.append((word, IMAGE_SYMBOL))
            continue
        if image in images:
            report.failures.append((word, IMAGE_COLLISION))
        else:
            images[image] = word
        try:
            if shrink.unshrink(image) != word:
                report.failures.append((word, INVERSE))
        except NotACodeword:
            report.failures.append((word, INVERSE))
    return report
