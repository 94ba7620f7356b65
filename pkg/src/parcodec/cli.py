"""Command-line front end.

Subcommands: encode, decode, check, stats, graph.  Words travel one per line
in a text format (``bits`` for q=2, ``dna`` for q=4); lines starting with
``#`` and blank lines are ignored.  The codec is fully determined by the
``--spec``/``--q`` flags, so streams carry no header.

Exit codes: 0 success, 1 data/validation failure (first offending line
reported), 2 usage or spec error.
"""

from __future__ import annotations

import argparse
import sys

from .core import decode, encode
from .errors import CodecError, NotACodeword, ParameterViolation, ParseError
from .oracle import (
    DEFAULT_STATE_BOUND,
    build_state_graph,
    check_graph,
    count_constraint,
    exhaustive_roundtrip,
    graph_to_dot,
    sample_roundtrip,
)
from .specs import build_codec, parse_spec
from .words import FORMAT_Q, text_to_word, word_to_text


class _LineError(Exception):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")


def _open_input(path: str):
    return sys.stdin if path == "-" else open(path, "r", encoding="ascii")


def _open_output(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="ascii")


def _data_lines(stream):
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _build(args):
    spec = parse_spec(args.spec)
    if FORMAT_Q[args.format] != args.q:
        raise ParseError(f"format {args.format!r} requires q={FORMAT_Q[args.format]}, got q={args.q}")
    return build_codec(spec, args.q)


def _transform_stream(args, expect_len, apply_word):
    codec = _build(args)
    out_lines = []
    with _open_input(args.input) as stream:
        for lineno, line in _data_lines(stream):
            try:
                word = text_to_word(line, args.format)
            except ParseError as exc:
                raise _LineError(lineno, str(exc)) from exc
            if len(word) != expect_len(codec):
                raise _LineError(
                    lineno,
                    f"expected {expect_len(codec)} symbols, got {len(word)}",
                )
            try:
                out_lines.append(apply_word(codec, word))
            except NotACodeword as exc:
                raise _LineError(lineno, f"not a codeword ({exc})") from exc
    out = _open_output(args.output)
    try:
        for line in out_lines:
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_encode(args) -> int:
    return _transform_stream(
        args,
        lambda codec: codec.k,
        lambda codec, word: word_to_text(encode(codec, word)[0], args.format),
    )


def _cmd_decode(args) -> int:
    return _transform_stream(
        args,
        lambda codec: codec.n,
        lambda codec, word: word_to_text(decode(codec, word), args.format),
    )


def _cmd_check(args) -> int:
    return _transform_stream(
        args,
        lambda codec: codec.n,
        lambda codec, word: "1" if codec.satisfies(word) else "0",
    )


def _cmd_stats(args) -> int:
    codec = _build(args)
    if args.exhaustive:
        report = exhaustive_roundtrip(codec, bound=args.bound)
        if codec.q ** codec.n <= args.bound:
            report.constraint_count = count_constraint(
                codec.q, codec.n, codec.satisfies, bound=args.bound
            )
    else:
        report = sample_roundtrip(codec, args.samples, args.seed)
    out = _open_output(args.output)
    try:
        for line in report.kv_lines():
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    capacity_ok = (
        report.constraint_count is None
        or report.constraint_count >= codec.q ** (codec.n - 1)
    )
    return 0 if report.ok and capacity_ok else 1


def _cmd_graph(args) -> int:
    codec = _build(args)
    graph = build_state_graph(codec, bound=args.bound)
    report = check_graph(codec, graph=graph)
    with open(args.dot, "w", encoding="ascii") as handle:
        handle.write(graph_to_dot(graph))
    for line in report.kv_lines():
        print(line)
    return 0 if report.ok else 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", required=True, help="constraint spec, e.g. mw:n=16,l=9,p=2")
    parser.add_argument("--q", type=int, choices=(2, 4), default=2, help="alphabet size")
    parser.add_argument("--format", choices=("bits", "dna"), default="bits", help="word text format")


def _add_io(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", default="-", help="input path or - for stdin")
    parser.add_argument("--output", default="-", help="output path or - for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parcodec",
        description="Constrained-coding toolkit: encode/decode words under parametric constraints.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_encode = sub.add_parser("encode", help="encode k-symbol payloads into n-symbol codewords")
    _add_common(p_encode)
    _add_io(p_encode)
    p_encode.set_defaults(func=_cmd_encode)

    p_decode = sub.add_parser("decode", help="decode n-symbol codewords back to payloads")
    _add_common(p_decode)
    _add_io(p_decode)
    p_decode.set_defaults(func=_cmd_decode)

    p_check = sub.add_parser("check", help="print 1/0 per input word for constraint membership")
    _add_common(p_check)
    _add_io(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_stats = sub.add_parser("stats", help="run the verification suite and print key=value lines")
    _add_common(p_stats)
    p_stats.add_argument("--output", default="-", help="output path or - for stdout")
    p_stats.add_argument("--bound", type=int, default=DEFAULT_STATE_BOUND, help="exhaustive state bound")
    mode = p_stats.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true", help="enumerate every payload")
    mode.add_argument("--samples", type=int, help="number of random payloads")
    p_stats.add_argument("--seed", type=int, default=1, help="sampling seed")
    p_stats.set_defaults(func=_cmd_stats)

    p_graph = sub.add_parser("graph", help="verify the step graph and export DOT")
    _add_common(p_graph)
    p_graph.add_argument("--dot", required=True, help="path for the DOT file")
    p_graph.add_argument("--bound", type=int, default=DEFAULT_STATE_BOUND, help="exhaustive state bound")
    p_graph.set_defaults(func=_cmd_graph)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _LineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, ParameterViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CodecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
