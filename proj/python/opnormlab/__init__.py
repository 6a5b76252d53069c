"""Finite-dimensional laboratory for operator-space tensor norms."""

from ._core import (
    NumericalError,
    ShapeError,
    SizeError,
    __version__,
    cb_operator_norm,
    choi,
    cocycle_report,
    diamond_norm,
    gap_experiment,
    haagerup_optimize,
    haagerup_upper,
    identity_map,
    interpolation_check,
    kraus_from_choi,
    min_norm,
    opposite,
    partial_transpose,
    projective_upper,
    s2_norm,
    schatten_induced_lower,
    schatten_norm,
    singular_values,
    spectral_norm,
    spectral_norm_via_sdp,
    theorem1_certificate,
    transpose_map,
)

__all__ = [
    "NumericalError",
    "ShapeError",
    "SizeError",
    "__version__",
    "cb_operator_norm",
    "choi",
    "cocycle_report",
    "diamond_norm",
    "gap_experiment",
    "haagerup_optimize",
    "haagerup_upper",
    "identity_map",
    "interpolation_check",
    "kraus_from_choi",
    "min_norm",
    "opposite",
    "partial_transpose",
    "projective_upper",
    "s2_norm",
    "schatten_induced_lower",
    "schatten_norm",
    "singular_values",
    "spectral_norm",
    "spectral_norm_via_sdp",
    "theorem1_certificate",
    "transpose_map",
]
