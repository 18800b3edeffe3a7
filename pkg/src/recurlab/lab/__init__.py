"""Configuration-driven experiments with CSV and JSONL output."""
from .config import ConfigError, ExperimentConfig, load_config, parse_config_text
from .experiments import REGISTRY, CriterionResult, Experiment
from .cli import main, run_experiment

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "load_config",
    "parse_config_text",
    "REGISTRY",
    "CriterionResult",
    "Experiment",
    "main",
    "run_experiment",
]
