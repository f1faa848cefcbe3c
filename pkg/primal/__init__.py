from primal.anneal import AnnealSchedule, anneal, simulated_annealing
from primal.greedy import greedy_extend
