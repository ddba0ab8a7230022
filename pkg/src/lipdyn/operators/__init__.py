"""Composition, multiplication and backward-shift operators."""

from .base import UNBOUNDED, PathSums, ScaledOp, SeqOperator, ZeroOp
from .composition import (
    CompositionOp,
    comp_apply_lip,
    comp_apply_seq,
    comp_norm,
    comp_power_apply,
    comp_term,
    extremal_witness_comp,
    lipschitz_constant,
)
from .matrix import TruncatedMatrix, matrix_truncate
from .multiplication import (
    MultiplicationOp,
    extremal_witness_mult,
    mult_apply_lip,
    mult_apply_seq,
    mult_bounded,
    mult_norms,
    mult_plus_norm,
    mult_term,
)
from .shift import (
    ShiftOp,
    extremal_witness_shift,
    shift_apply_lip,
    shift_apply_seq,
    shift_bounded,
    shift_norm,
    shift_term,
)
from .symbols import AffineTail, SymbolPhi, SymbolPsi, affine_symbol, example_zline_symbol

__all__ = [
    "UNBOUNDED", "PathSums", "ScaledOp", "SeqOperator", "ZeroOp",
    "CompositionOp", "comp_apply_lip", "comp_apply_seq", "comp_norm", "comp_power_apply",
    "comp_term", "extremal_witness_comp", "lipschitz_constant",
    "TruncatedMatrix", "matrix_truncate",
    "MultiplicationOp", "extremal_witness_mult", "mult_apply_lip", "mult_apply_seq",
    "mult_bounded", "mult_norms", "mult_plus_norm", "mult_term",
    "ShiftOp", "extremal_witness_shift", "shift_apply_lip", "shift_apply_seq",
    "shift_bounded", "shift_norm", "shift_term",
    "AffineTail", "SymbolPhi", "SymbolPsi", "affine_symbol", "example_zline_symbol",
]
