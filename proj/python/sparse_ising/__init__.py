"""Sparse Ising / weighted MaxCut workbench for Gset benchmark instances."""

from ._core import (
    Error,
    ProblemInstance,
    __version__,
    bundled_solution,
    certify,
    cut_value,
    decode_hex_solution,
    encode_hex_solution,
    instance_stats,
    ising_energy,
    load_instance,
    metrics,
    parse_gset,
    random_config,
    registry,
    run_trials,
    serialize_gset,
)

__all__ = [
    "Error",
    "ProblemInstance",
    "__version__",
    "bundled_solution",
    "certify",
    "cut_value",
    "decode_hex_solution",
    "encode_hex_solution",
    "instance_stats",
    "ising_energy",
    "load_instance",
    "metrics",
    "parse_gset",
    "random_config",
    "registry",
    "run_trials",
    "serialize_gset",
]
