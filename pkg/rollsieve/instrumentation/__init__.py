# rollsieve - Work counting and estimate checks
from rollsieve.instrumentation.estimates import chebyshev_check, mertens_check, pnt_check, spread
from rollsieve.instrumentation.work import (
    count_rolling_work,
    expected_crossings,
    expected_pushes,
    incremental_profile,
    push_pop_ratio,
    space_checkpoints,
    summarize_profile,
    window_constant,
)

__all__ = [
    "chebyshev_check",
    "count_rolling_work",
    "expected_crossings",
    "expected_pushes",
    "incremental_profile",
    "mertens_check",
    "pnt_check",
    "push_pop_ratio",
    "space_checkpoints",
    "spread",
    "summarize_profile",
    "window_constant",
]
