from .search import SolverConfig, SolverOutcome, Status, solve
from .space import enumerate_dualities, iter_cases

__all__ = ["SolverConfig", "SolverOutcome", "Status", "solve", "enumerate_dualities", "iter_cases"]
