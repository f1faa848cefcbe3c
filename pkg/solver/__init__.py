from solver.brute import OracleSizeError, brute_force
from solver.config import SolverConfig, SolverConfigError
from solver.precompute import PrecomputeResult, precompute_table
from solver.report import DualSample, DualTrace, SolveReport, compute_gap
from solver.solver import search_workers, solve
