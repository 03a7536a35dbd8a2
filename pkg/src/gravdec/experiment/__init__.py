from .scenario import (
    ExperimentConfig,
    PathBudget,
    ScenarioResult,
    effective_delta,
    evolved_labels,
    path_budget,
    run,
)
from .sweep import half_decoherence_height, half_decoherence_height_weak_field, sweep_heights

__all__ = [
    "ExperimentConfig",
    "PathBudget",
    "ScenarioResult",
    "effective_delta",
    "evolved_labels",
    "half_decoherence_height",
    "half_decoherence_height_weak_field",
    "path_budget",
    "run",
    "sweep_heights",
]
