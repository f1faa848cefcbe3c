from instance.models import (Assignment, IsingInstance, MaxCutInstance, QuboInstance, binary_to_spins,
                             energy, spins_to_binary)
from instance.convert import maxcut_to_ising, qubo_to_ising
from instance.parser import format_instance, parse_instance, read_instance, to_ising, write_instance
from instance.generator import generate_random
