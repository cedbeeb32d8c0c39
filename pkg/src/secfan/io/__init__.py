# BSD 3-Clause License; see LICENSE

from __future__ import annotations

from .cf import from_cf_contiguous, from_cf_indexed, to_cf_contiguous, to_cf_indexed
from .distances import (
    DistanceMatrix,
    format_decimal,
    format_distance_matrix,
    parse_decimal,
    parse_distance_text,
    read_distance_file,
)
from .dot import dual_graph_for_dot, tight_span_for_dot, to_dot, write_dot
from .jsonio import (
    CheckpointState,
    decode_rational,
    decode_vector,
    encode_rational,
    encode_vector,
    read_checkpoint,
    read_json,
    write_atomic,
    write_checkpoint,
    write_json,
)

__all__ = [
    # cf
    "to_cf_contiguous",
    "from_cf_contiguous",
    "to_cf_indexed",
    "from_cf_indexed",
    # distances
    "DistanceMatrix",
    "format_decimal",
    "format_distance_matrix",
    "parse_decimal",
    "parse_distance_text",
    "read_distance_file",
    # dot
    "dual_graph_for_dot",
    "tight_span_for_dot",
    "to_dot",
    "write_dot",
    # jsonio
    "CheckpointState",
    "decode_rational",
    "decode_vector",
    "encode_rational",
    "encode_vector",
    "read_checkpoint",
    "read_json",
    "write_atomic",
    "write_checkpoint",
    "write_json",
]
