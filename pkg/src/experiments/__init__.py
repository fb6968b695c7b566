"""Experiment drivers. Each maps an ExperimentConfig to ResultRows."""

from .convergence import run_convergence_experiment
from .dichotomy import run_dichotomy_experiment
from .counterexample import run_counterexample
from .outputs import ResultRow, emit_outputs

EXPERIMENTS = {
    "convergence": run_convergence_experiment,
    "dichotomy": run_dichotomy_experiment,
}
