"""parcodec: single-redundancy-symbol codes for length-parametric channel constraints.

Build a codec from one of the constraint builders (or from a textual spec via
:mod:`parcodec.specs`), then :func:`encode`/:func:`decode` fixed-length words.
The :mod:`parcodec.oracle` module verifies codecs exhaustively at small block
lengths.
"""

from .core import (
    CodecSpec,
    ShrinkStep,
    TraceStats,
    build_intersection,
    build_one_symbol,
    ceil_log,
    decode,
    decode_index,
    encode,
    encode_index,
)
from .errors import (
    BoundExceeded,
    CodecError,
    DimensionMismatch,
    IterationCapExceeded,
    NotACodeword,
    ParameterViolation,
    ParseError,
    PropertyViolation,
    RankOutOfRange,
    SlackMismatch,
)
from .global_codes import (
    DNA_COMPLEMENT,
    almost_balanced_shrink_pair,
    build_almost_balanced,
    build_secondary_structure,
    count_weight_at_most,
    min_balanced_weight,
    rank_weight_at_most,
    repeat_free_shrink,
    reverse_complement,
    reverse_complement_shrink,
    unrank_weight_at_most,
)
from .local import (
    WindowCoder,
    build_palindrome_free,
    first_forbidden_window,
    forbidden_window_shrink,
    listed_window_coder,
    min_period_coder,
    min_weight_coder,
    minimal_period,
    no_palindrome_coder,
    weight_window_coder,
)
from .oracle import (
    DEFAULT_STATE_BOUND,
    StateGraph,
    VerifyReport,
    build_state_graph,
    check_graph,
    check_shrink_injective,
    count_constraint,
    exhaustive_roundtrip,
    graph_to_dot,
    sample_roundtrip,
)
from .specs import ConstraintSpec, build_codec, build_shrink, parse_spec
from .words import Word, all_words

__version__ = "0.1.0"
