"""Textual constraint specs: parse, serialize, and build codecs from them.

Grammar (one line, no spaces):

    NAME:key=val[,key=val...]
    intersect:NAME:...+NAME:...

Values are non-negative integers.  Intersection members automatically
receive the slack needed for the member tag.  The alphabet size q is not
part of the text; it is supplied at build time (CLI flag ``--q``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import CodecSpec, ShrinkStep, build_intersection, build_one_symbol, ceil_log
from .errors import ParameterViolation, ParseError
from .global_codes import (
    DNA_COMPLEMENT,
    build_almost_balanced,
    build_secondary_structure,
    repeat_free_shrink,
    reverse_complement_shrink,
)
from .local import (
    build_palindrome_free,
    forbidden_window_shrink,
    min_period_coder,
    min_weight_coder,
    no_palindrome_coder,
    weight_window_coder,
)

# canonical parameter order per constraint name; optional keys may be absent
_PARAM_ORDER = {
    "mw": ("n", "l", "p"),
    "lab": ("n", "l", "wmin", "wmax"),
    "mp": ("n", "l", "p"),
    "enp": ("n", "l", "rc"),
    "mpl": ("n",),
    "rf": ("n", "l"),
    "srf": ("n", "l", "beta"),
    "rss": ("n", "l"),
    "ss": ("n",),
    "ab": ("n",),
}
_OPTIONAL = {"enp": frozenset({"rc"})}
# names usable as members of an intersection (those that yield a shrink step)
_MEMBER_NAMES = frozenset({"mw", "lab", "mp", "enp", "rf", "srf", "rss"})


@dataclass(frozen=True)
class ConstraintSpec:
    """Parsed form of the constraint grammar; round-trips through to_text()."""

    name: str
    params: tuple[tuple[str, int], ...] = ()
    members: tuple["ConstraintSpec", ...] = field(default=())

    def param(self, key: str, default: int | None = None) -> int:
        for k, v in self.params:
            if k == key:
                return v
        if default is None:
            raise ParseError(f"spec {self.name!r} is missing parameter {key!r}")
        return default

    @property
    def n(self) -> int:
        if self.name == "intersect":
            return self.members[0].n
        return self.param("n")

    def to_text(self) -> str:
        if self.name == "intersect":
            return "intersect:" + "+".join(m.to_text() for m in self.members)
        body = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}:{body}"


def parse_spec(text: str) -> ConstraintSpec:
    text = text.strip()
    name, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"expected NAME:key=val,... , got {text!r}")
    if name == "intersect":
        member_texts = rest.split("+")
        if len(member_texts) < 2:
            raise ParseError("intersect needs at least two members joined by '+'")
        members = tuple(parse_spec(t) for t in member_texts)
        for member in members:
            if member.name == "intersect":
                raise ParseError("intersect members cannot be nested intersections")
            if member.name not in _MEMBER_NAMES:
                raise ParseError(f"{member.name!r} cannot be an intersection member")
        if len({m.n for m in members}) != 1:
            raise ParseError("intersection members must share the same n")
        return ConstraintSpec("intersect", (), members)
    if name not in _PARAM_ORDER:
        raise ParseError(f"unknown constraint name {name!r}")
    seen: dict[str, int] = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq or not value:
                raise ParseError(f"malformed parameter {item!r}")
            if key not in _PARAM_ORDER[name]:
                raise ParseError(f"unknown parameter {key!r} for {name!r}")
            if key in seen:
                raise ParseError(f"duplicate parameter {key!r}")
            try:
                seen[key] = int(value)
            except ValueError:
                raise ParseError(f"parameter {key!r} must be an integer, got {value!r}") from None
            if seen[key] < 0:
                raise ParseError(f"parameter {key!r} must be non-negative")
    optional = _OPTIONAL.get(name, frozenset())
    for key in _PARAM_ORDER[name]:
        if key not in seen and key not in optional:
            raise ParseError(f"spec {name!r} is missing parameter {key!r}")
    ordered = tuple((k, seen[k]) for k in _PARAM_ORDER[name] if k in seen)
    return ConstraintSpec(name, ordered)


def _require_q(spec_name: str, q: int, allowed: tuple[int, ...]) -> None:
    if q not in allowed:
        raise ParameterViolation(
            f"constraint {spec_name!r} requires q in {allowed}, got {q}"
        )


def _symbol_table_from_digits(beta: int, q: int) -> tuple[int, ...]:
    digits = str(beta).zfill(q)
    if len(digits) != q:
        raise ParameterViolation(f"beta={beta} must have at most {q} digits")
    table = tuple(int(d) for d in digits)
    if any(s >= q for s in table):
        raise ParameterViolation(f"beta={beta} contains a digit outside [0, {q})")
    return table


def build_shrink(spec: ConstraintSpec, q: int, slack: int = 0) -> ShrinkStep:
    """Build the shrink step for a non-composite constraint spec."""
    n = spec.n
    if spec.name == "mw":
        _require_q("mw", q, (2,))
        coder = min_weight_coder(n, spec.param("l"), spec.param("p"), slack)
        return forbidden_window_shrink(coder, n, slack)
    if spec.name == "lab":
        _require_q("lab", q, (2,))
        coder = weight_window_coder(n, spec.param("l"), spec.param("wmin"), spec.param("wmax"), slack)
        return forbidden_window_shrink(coder, n, slack)
    if spec.name == "mp":
        coder = min_period_coder(n, spec.param("l"), spec.param("p"), slack, q)
        return forbidden_window_shrink(coder, n, slack)
    if spec.name == "enp":
        comp = None
        if spec.param("rc", 0):
            _require_q("enp with rc=1", q, (4,))
            comp = DNA_COMPLEMENT
        coder = no_palindrome_coder(n, spec.param("l"), comp, q, slack)
        return forbidden_window_shrink(coder, n, slack)
    if spec.name == "rf":
        return repeat_free_shrink(n, spec.param("l"), q, None, slack)
    if spec.name == "srf":
        table = _symbol_table_from_digits(spec.param("beta"), q)
        return repeat_free_shrink(n, spec.param("l"), q, table, slack)
    if spec.name == "rss":
        _require_q("rss", q, (4,))
        return reverse_complement_shrink(n, spec.param("l"), DNA_COMPLEMENT, slack)
    raise ParameterViolation(f"{spec.name!r} does not define a standalone shrink step")


def build_codec(spec: ConstraintSpec, q: int = 2) -> CodecSpec:
    """Build a full codec from a parsed spec; every parameter bound is checked here."""
    if spec.name == "intersect":
        tag = ceil_log(len(spec.members), q)
        shrinks = [build_shrink(member, q, tag) for member in spec.members]
        return build_one_symbol(build_intersection(shrinks))
    if spec.name == "mpl":
        return build_palindrome_free(spec.n, q)
    if spec.name == "ss":
        _require_q("ss", q, (4,))
        return build_secondary_structure(spec.n)
    if spec.name == "ab":
        _require_q("ab", q, (2,))
        return build_almost_balanced(spec.n)
    return build_one_symbol(build_shrink(spec, q, 0))
