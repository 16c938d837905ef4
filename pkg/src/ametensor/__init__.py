"""Perfect tensors and AME states from superregular matrices over finite fields."""

from .errors import ConditionFailed, ConditionZero, NotSuperregular, UnverifiedDecomposition
from .factor6 import factor, factor_backward, factor_forward, yb_build, yb_check
from .factor8 import factor8, verify8
from .gf import GF, FieldSpec, field_new
from .linalg import FFMatrix, all_minors_nonzero, cauchy, det

__all__ = [
    "GF",
    "FieldSpec",
    "field_new",
    "FFMatrix",
    "det",
    "all_minors_nonzero",
    "cauchy",
    "factor",
    "factor_forward",
    "factor_backward",
    "factor8",
    "verify8",
    "yb_build",
    "yb_check",
    "NotSuperregular",
    "ConditionZero",
    "ConditionFailed",
    "UnverifiedDecomposition",
]
