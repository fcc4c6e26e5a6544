"""Exact EA-equivalence counting for small vectorial functions over F_q.

Covers the EA group action, fixed-function counts per group element,
class counts via Burnside's lemma, stabilizers, collision probabilities
and their bounds, with brute-force oracles for each fast path.
"""
from .burnside import (count_classes, count_classes_conjugacy, count_classes_exhaustive,
                       relative_error)
from .collision import (ccz_equivalent, collision_prob_exact, collision_upper_ccz,
                        collision_upper_ea, mc_collision, mc_trivial_stab, nontrivial_stab_bound,
                        nontrivial_stab_census, orbit_partition)
from .ea import (EAElement, apply, compose, ea_equivalent, fixed_points_affine, identity_element,
                 inverse, orbits_affine, stabilizer)
from .fixcount import fix_count_bruteforce, fix_count_exact, fix_count_upper
from .functions import FuncTable, graph_of, random_function, read_table, write_table
from .gf import FqMatrix, agl_order, gl_order, solve_linear
from .kernels import BACKEND
from .logq import LogQValue

__version__ = "0.1.0"
