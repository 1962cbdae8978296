from .config import ExperimentConfig, build_config, read_config_file, validate
from .experiments import (
    rankdrop_table,
    resolve_primes,
    run,
    run_construct,
    run_first_moment,
    run_moment_experiment,
    run_rank_count,
    run_split_prime,
    run_svp_experiment,
)
from .report import SCHEMA, ExperimentReport

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "SCHEMA",
    "build_config",
    "rankdrop_table",
    "read_config_file",
    "resolve_primes",
    "run",
    "run_construct",
    "run_first_moment",
    "run_moment_experiment",
    "run_rank_count",
    "run_split_prime",
    "run_svp_experiment",
    "validate",
]
