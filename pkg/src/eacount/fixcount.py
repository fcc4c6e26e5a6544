"""Counting the functions fixed by one EA group element.

For g = (P, a, Q, b) the condition g.F = F reads Q F(P x + a) + b = F(x).
Along a cycle x_0 -> sigma(x_0) -> ... of sigma(x) = P x + a of length L,
the value y = F(x_0) must solve

    (I - Q^L) y = sum_{j<L} Q^j b

and every other value on the cycle is then forced.  The number of fixed
functions is the product of the per-cycle solution counts.  The count for a
cycle depends only on its length, so it is computed once per length.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import config, kernels
from .ea import EAElement, cycle_lengths
from .errors import BudgetExceeded
from .functions import function_space_size
from .gf import FqMatrix, mat_mul, mat_vec, solve_linear, vec_add
from .logq import LogQValue


@dataclass(frozen=True)
class FixCountDetail:
    per_orbit: tuple  # (L_i, solution count)
    total: int
    q: int

    @property
    def log_q_total(self):
        """Exact log_q of the total as an int, or None when total is 0."""
        if self.total == 0:
            return None
        k, t = 0, self.total
        while t % self.q == 0:
            t //= self.q
            k += 1
        if t != 1:  # pragma: no cover - products of powers of q
            raise AssertionError("fixed count is not a power of q")
        return k


def orbit_constraint_count(Q: FqMatrix, b, L: int) -> int:
    """Number of y in F_q^m with (I - Q^L) y = sum_{j<L} Q^j b."""
    q, m = Q.q, Q.nrows
    power = FqMatrix.identity(m, q)
    total = (0,) * m
    for _ in range(L):
        total = vec_add(total, mat_vec(power, b), q)
        power = mat_mul(power, Q)
    return solve_linear(FqMatrix.identity(m, q) - power, total).size


def per_length_counts(Q: FqMatrix, b, lengths) -> dict:
    return {L: orbit_constraint_count(Q, b, L) for L in set(lengths)}


def fix_count_exact(g: EAElement) -> FixCountDetail:
    cycles = cycle_lengths(g.input_map)
    counts = per_length_counts(g.Q, g.b, [L for _, L in cycles])
    per_orbit = tuple((L, counts[L]) for _, L in cycles)
    total = 1
    for _, c in per_orbit:
        total *= c
    return FixCountDetail(per_orbit, total, g.q)


def fix_count_from_lengths(length_multiset: dict, counts: dict) -> int:
    """prod_L counts[L] ** k_L for a cycle-length multiset {L: k_L}."""
    total = 1
    for L, k in length_multiset.items():
        total *= counts[L] ** k
        if not total:
            return 0
    return total


def fix_count_bruteforce(g: EAElement, budget=None) -> int:
    """Count fixed functions by testing every table (oracle)."""
    q, n, m = g.dims
    budget = config.budget("oracle_budget") if budget is None else budget
    size = function_space_size(q, n, m)
    if size > budget:
        raise BudgetExceeded(f"brute-force Fix at {(q, n, m)}", size, budget)
    return kernels.count_fixed_tables(g.input_map, g.output_map, q**n, q**m)


def fix_exponent_case1(q, n, m) -> Fraction:
    """((q+1)/2q) * m * q^n, the bound when the input map is not the identity."""
    return Fraction(q + 1, 2 * q) * m * q**n


def fix_exponent_case2(q, n, m) -> Fraction:
    """(m - 1) * q^n, the bound when only the output map moves."""
    return Fraction((m - 1) * q**n)


def bound_constant(q, m) -> Fraction:
    """c = max((q+1)/(2q), 1 - 1/m)."""
    return max(Fraction(q + 1, 2 * q), 1 - Fraction(1, m))


def fix_count_upper(g: EAElement) -> LogQValue:
    """Upper bound q**e on |Fix(g)| for nontrivial g, with the applicable case's e."""
    if g.is_identity():
        raise ValueError("the fixed-count bound only applies to nontrivial elements")
    q, n, m = g.dims
    e = fix_exponent_case2(q, n, m) if g.input_is_identity() else fix_exponent_case1(q, n, m)
    return LogQValue(q, e)
