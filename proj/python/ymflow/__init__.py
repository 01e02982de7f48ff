"""Yang-Mills heat flow engine: spectral lattice core with ZDS gauge recovery.

The heavy lifting lives in the `_ymflow` extension; this package re-exports
the main operations.
"""

from ._ymflow import (  # noqa: F401
    Geometry,
    abelian_pipeline_error,
    bracket,
    commutator_bound,
    exp_su2,
    generate_initial_data,
    heat_semigroup,
    oracle_slacks,
    run_flow,
    sobolev_norm,
)

__all__ = [
    "Geometry",
    "abelian_pipeline_error",
    "bracket",
    "commutator_bound",
    "exp_su2",
    "generate_initial_data",
    "heat_semigroup",
    "oracle_slacks",
    "run_flow",
    "sobolev_norm",
]
