"""Multi-task multiobjective benchmark suite: 40 instances, metrics, a baseline solver and a harness."""

from .suite import MultiTaskProblem, TaskSpec, evaluate_task, instantiate, optimum_solution, reference_front

__version__ = "0.1.0"

__all__ = [
    "MultiTaskProblem",
    "TaskSpec",
    "evaluate_task",
    "instantiate",
    "optimum_solution",
    "reference_front",
]
