"""hp-FEM Laplace eigenvalues with auxiliary-subspace cluster estimates."""

import json
import math

from ._auxeig import (
    AuxeigError,
    CapabilityError,
    ConfigurationError,
    ContractViolation,
    DomainError,
    GeometryError,
    InvariantViolation,
    IoError,
    MatrixError,
    NumericalError,
    PoleError,
    SolverError,
    bessel_j,
    bessel_roots,
    constant_C,
    eigenvalues,
    hausdorff_distance,
    reference_labels,
    reference_table,
    run_json as _run_json,
    slit_disk_spectrum,
    subspace_gap,
)


def _nan_for_none(obj):
    if obj is None:
        return math.nan
    if isinstance(obj, list):
        return [_nan_for_none(v) for v in obj]
    if isinstance(obj, dict):
        return {k: (v if k in ("error", "error_kind", "reference") else _nan_for_none(v)) for k, v in obj.items()}
    return obj


def run(config_text, output_dir=None, write=False):
    """Run an experiment from INI text; returns the report as nested dicts (missing numbers are NaN)."""
    return _nan_for_none(json.loads(_run_json(config_text, output_dir, write)))


def run_file(path, output_dir=None, write=False):
    with open(path) as f:
        return run(f.read(), output_dir, write)


__all__ = [n for n in dir() if not n.startswith("_")]
