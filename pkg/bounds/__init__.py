from bounds.hdk import (BoundContext, BoundState, DepthError, extrapolate_global_bound, hdk_backtrack,
                        hdk_bound_direct, hdk_descend)
from bounds.kh import kh_bound_direct, kh_child, kh_offsets, kh_root
from bounds.table import MissingTableEntry, SubproblemTable
