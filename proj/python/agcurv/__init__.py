"""Curvature of Kenmotsu-type almost contact metric manifolds.

Structure tensors are dicts of complex numpy arrays keyed by name
(B3u, A22, ...); reports are plain dicts following the agcurv/1 schema.
"""

from ._agcurv import (
    SCHEMA,
    CompletionError,
    InputError,
    TensorError,
    audit,
    audit_batch,
    build,
    classify,
    consistent_hypersurface,
    default_tolerance,
    extract_sigma,
    ghs_value,
    load_manifest,
    random_admissible,
    validate,
    zero_structure,
)

__all__ = [
    "SCHEMA",
    "CompletionError",
    "InputError",
    "TensorError",
    "audit",
    "audit_batch",
    "build",
    "classify",
    "consistent_hypersurface",
    "default_tolerance",
    "extract_sigma",
    "ghs_value",
    "load_manifest",
    "random_admissible",
    "validate",
    "zero_structure",
]
