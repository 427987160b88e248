"""Schubert codes over finite fields: construction, orthogonal parity checks and majority-logic decoding."""

from .codecore import Code, CodeSpec, ParityCheck, build_code
from .fieldcore import FieldSpec, gaussian_binomial, gf
from .mldecoder import DecoderTable, DecodeResult, decode, decode_batch, estimate_error_at
from .orthoset import OrthogonalCheckSet, J_lower_bound, build_all, build_full
from .schubgeo import schubert_params

__version__ = "0.1.0"
