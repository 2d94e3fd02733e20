"""Exact Kloosterman sums over GF(2^r), orthogonal-group codes and their power moments."""

__version__ = "0.1.0"

from .charsums import (
    KloostermanTable,
    ValueProfile,
    carlitz_k2,
    kgl,
    kgl_closed,
    kloosterman,
    kloosterman_m,
    kloosterman_table,
    value_profile,
)
from .codes import (
    CodeSpec,
    WeightDistribution,
    build_code,
    dual_codeword_weight,
    weight_distribution,
)
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvariantViolation,
    KloomoError,
    NonIntegralResult,
    NotIrreducible,
    NotIsometry,
    RangeError,
    ReducibleError,
    ZeroParameter,
)
from .field import FieldCtx, make_field
from .moments import (
    MomentSeries,
    mk2_recursive,
    mk_direct,
    mk_even_recursive,
    mk_recursive,
    pless_rhs,
    salie_mk,
)
from .ortho import Group, GroupId, TraceProfile, gauss_sum, trace_profile
from .verify import verify_suite

__all__ = [name for name in dir() if not name.startswith("_")]
