# Copyright 2026 The stablewalk Authors
# SPDX-License-Identifier: Apache-2.0
"""Hitting times of random walks with stable-attracted jumps."""

from ._stablewalk import (
    ConvergenceError,
    IoError,
    StatisticalRefusal,
    ValidationError,
    analyze,
    canonical_config,
    cdf_alpha1,
    cdf_e_over_abs_n,
    g_inverse,
    g_value,
    laplace_transform_w,
    limit_cdf,
    local_limit,
    model_info,
    rate,
    run_config,
    sample_jumps,
    sample_w,
    simulate,
    volterra_cdf,
)

__all__ = [
    "ConvergenceError",
    "IoError",
    "StatisticalRefusal",
    "ValidationError",
    "analyze",
    "canonical_config",
    "cdf_alpha1",
    "cdf_e_over_abs_n",
    "g_inverse",
    "g_value",
    "laplace_transform_w",
    "limit_cdf",
    "local_limit",
    "model_info",
    "rate",
    "run_config",
    "sample_jumps",
    "sample_w",
    "simulate",
    "volterra_cdf",
]
