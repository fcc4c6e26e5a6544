"""Orbit census of the whole function space, collision probabilities,
stabilizer statistics, their bounds, CCZ search and Monte-Carlo harnesses.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import stats

from . import config, kernels
from .ea import agl_code_maps, ea_equivalent, gamma_generators, gamma_order, stabilizer_size
from .errors import BudgetExceeded, ConfigurationError, DimensionMismatch
from .fixcount import fix_exponent_case1, fix_exponent_case2
from .functions import (FuncTable, all_tables, decode_vec, encode_vec, function_space_size,
                        graph_of, make_rng, random_table)
from .gf import FqMatrix, agl_order, enumerate_gl, mat_inv, mat_vec, vec_add, vec_neg
from .logq import LogQValue


# ---------------------------------------------------------------------------
# orbit census


@dataclass(frozen=True)
class OrbitCensus:
    q: int
    n: int
    m: int
    orbits: tuple  # (representative FuncTable, size, stabilizer size)
    labels: np.ndarray = field(repr=False, compare=False)

    @property
    def total(self) -> int:
        return function_space_size(self.q, self.n, self.m)

    @property
    def count(self) -> int:
        return len(self.orbits)

    def orbit_id(self, F: FuncTable) -> int:
        return int(self.labels[F.index()])

    def sum_of_squares(self) -> int:
        return sum(size * size for _, size, _ in self.orbits)

    def nontrivial_stab_functions(self) -> int:
        return sum(size for _, size, stab in self.orbits if stab > 1)

    CSV_HEADER = ("orbit_id", "size", "stabilizer_size", "representative_table")

    def csv_rows(self):
        for i, (rep, size, stab) in enumerate(self.orbits):
            yield i, size, stab, " ".join(map(str, rep.table))


def orbit_partition(q, n, m, budget=None) -> OrbitCensus:
    """Partition every function into Gamma-orbits by BFS closure under generators."""
    budget = config.budget("oracle_budget") if budget is None else budget
    total = function_space_size(q, n, m)
    if total > budget:
        raise BudgetExceeded(f"orbit census at {(q, n, m)}", total, budget)
    gens = gamma_generators(q, n, m)
    labels, count = kernels.orbit_labels([g.input_map for g in gens],
                                         [g.output_map for g in gens], q**n, q**m)
    labels = np.asarray(labels)
    sizes = np.bincount(labels, minlength=count)
    order = gamma_order(q, n, m)
    _, firsts = np.unique(labels, return_index=True)
    orbits = []
    for k in range(count):
        size = int(sizes[k])
        stab, rem = divmod(order, size)
        if rem:  # pragma: no cover
            raise AssertionError(f"orbit size {size} does not divide |Gamma| = {order}")
        orbits.append((FuncTable.from_index(int(firsts[k]), q, n, m), size, stab))
    return OrbitCensus(q, n, m, tuple(orbits), labels)


def collision_prob_exact(q, n, m, census: Optional[OrbitCensus] = None) -> Fraction:
    """Probability that two independent uniform functions are EA-equivalent."""
    census = census or orbit_partition(q, n, m)
    return Fraction(census.sum_of_squares(), census.total**2)


# ---------------------------------------------------------------------------
# bounds


def collision_upper_ea(q, n, m) -> LogQValue:
    """|AGL(n,q)| |AGL(m,q)| / |F|."""
    return LogQValue(q, -m * q**n, gamma_order(q, n, m))


def collision_upper_ccz(q, n, m) -> LogQValue:
    """|AGL(n+m,q)| / |F|."""
    return LogQValue(q, -m * q**n, agl_order(n + m, q))


@dataclass(frozen=True)
class StabBound:
    q: int
    n: int
    m: int
    case1_slack: Fraction
    case2_slack: Fraction

    @property
    def slack(self) -> Fraction:
        return min(self.case1_slack, self.case2_slack)

    @property
    def binding_case(self) -> int:
        return 1 if self.case1_slack <= self.case2_slack else 2

    @property
    def value(self) -> LogQValue:
        return LogQValue(self.q, -self.slack, gamma_order(self.q, self.n, self.m))

    @property
    def exponent(self) -> float:
        return self.value.exponent

    @property
    def vacuous(self) -> bool:
        return self.value.vacuous


def nontrivial_stab_bound(q, n, m) -> StabBound:
    """Union bound |Gamma| q^(-slack) on Pr(Stab(F) nontrivial).

    The slack is |F|'s exponent minus the fixed-count exponent, per case:
    ((q-1)/2q) m q^n when the input map moves, q^n when only the output
    map moves; the smaller one binds.
    """
    if n < 1 or m < 1:
        raise ConfigurationError("n and m must be >= 1")
    full = m * q**n
    return StabBound(q, n, m, full - fix_exponent_case1(q, n, m), full - fix_exponent_case2(q, n, m))


def nontrivial_stab_census(q, n, m, budget=None) -> Fraction:
    """Exact fraction of functions with a nontrivial stabilizer (runs stabilizer on every F)."""
    budget = config.budget("oracle_budget") if budget is None else budget
    total = function_space_size(q, n, m)
    if total > budget:
        raise BudgetExceeded(f"stabilizer census at {(q, n, m)}", total, budget)
    count = sum(1 for F in all_tables(q, n, m) if stabilizer_size(F) > 1)
    return Fraction(count, total)


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class Estimate:
    experiment: str
    q: int
    n: int
    m: int
    seed: int
    trials: int
    hits: int
    ci_low: float
    ci_high: float
    exact: Optional[Fraction] = None

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.hits, self.trials)

    def sigma(self, p=None) -> float:
        p = float(self.exact if p is None else p)
        return math.sqrt(p * (1 - p) / self.trials)

    def within_sigmas(self, k=3.0) -> bool:
        if self.exact is None:
            raise ValueError("no exact reference value")
        return abs(float(self.estimate) - float(self.exact)) <= k * self.sigma()

    CSV_HEADER = ("experiment", "q", "n", "m", "seed", "trials", "hits", "estimate",
                  "ci_low", "ci_high", "exact")

    def csv_row(self):
        return (self.experiment, self.q, self.n, self.m, self.seed, self.trials, self.hits,
                str(self.estimate), f"{self.ci_low:.12f}", f"{self.ci_high:.12f}",
                "" if self.exact is None else str(self.exact))


def clopper_pearson(hits, trials, level=0.95):
    alpha = 1 - level
    lo = 0.0 if hits == 0 else float(stats.beta.ppf(alpha / 2, hits, trials - hits + 1))
    hi = 1.0 if hits == trials else float(stats.beta.ppf(1 - alpha / 2, hits + 1, trials - hits))
    return lo, hi


def _run_trials(fn, trials, threads):
    if trials <= 0:
        raise ValueError("trials must be positive")
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, range(trials)))
    return [fn(t) for t in range(trials)]


def mc_trivial_stab(q, n, m, trials, seed, threads=1, exact=None) -> Estimate:
    """Fraction of sampled functions whose stabilizer is nontrivial."""
    budget = config.budget("enumeration_budget")
    if agl_order(n, q) > budget:
        raise BudgetExceeded(f"stabilizer per sample at {(q, n, m)}", agl_order(n, q), budget)
    agl_code_maps(n, q, budget)  # warm the shared cache before workers start

    def trial(t):
        F = random_table(make_rng(seed, t), q, n, m)
        return stabilizer_size(F, budget) > 1

    hits = sum(_run_trials(trial, trials, threads))
    return Estimate("stab-sample", q, n, m, seed, trials, hits, *clopper_pearson(hits, trials), exact)


def mc_collision(q, n, m, trials, seed, threads=1, exact=None) -> Estimate:
    """Fraction of sampled independent pairs (F, G) that are EA-equivalent."""
    budget = config.budget("enumeration_budget")
    if agl_order(n, q) > budget:
        raise BudgetExceeded(f"equivalence test per sample at {(q, n, m)}", agl_order(n, q), budget)
    agl_code_maps(n, q, budget)

    def trial(t):
        rng = make_rng(seed, t)
        F = random_table(rng, q, n, m)
        G = random_table(rng, q, n, m)
        return ea_equivalent(F, G, budget) is not None

    hits = sum(_run_trials(trial, trials, threads))
    return Estimate("collision", q, n, m, seed, trials, hits, *clopper_pearson(hits, trials), exact)


# ---------------------------------------------------------------------------
# CCZ


@dataclass(frozen=True)
class CCZWitness:
    """Affine map z -> M z + c of F_q^(n+m)."""

    M: FqMatrix
    c: tuple

    def __call__(self, z):
        return vec_add(mat_vec(self.M, z), self.c, self.M.q)

    def maps_graph(self, F: FuncTable, G: FuncTable) -> bool:
        q, N = F.q, F.n + F.m
        image = sorted(encode_vec(self(decode_vec(p, N, q)), q) for p in graph_of(F).points)
        return tuple(image) == graph_of(G).points


def ccz_equivalent(F: FuncTable, G: FuncTable, budget=None) -> Optional[CCZWitness]:
    """An affine permutation of F_q^(n+m) carrying the graph of F onto that of G.

    Brute force over GL(n+m, q); for each linear part the translation must
    send the first image point onto some graph point of G, which leaves q^n
    candidates, each rejected at the first image point that misses the graph.
    """
    if F.dims != G.dims:
        raise DimensionMismatch("functions must share (q, n, m)")
    q, n, m = F.dims
    N = n + m
    budget = config.budget("enumeration_budget") if budget is None else budget
    if agl_order(N, q) > budget:
        raise BudgetExceeded(f"CCZ search over AGL({N},{q})", agl_order(N, q), budget)
    src = [decode_vec(p, N, q) for p in graph_of(F).points]
    target_codes = graph_of(G).points
    target = set(target_codes)
    target_vecs = [decode_vec(p, N, q) for p in target_codes]
    for M in enumerate_gl(N, q, budget):
        imgs = [mat_vec(M, p) for p in src]
        shifts = sorted(encode_vec(vec_add(t, vec_neg(imgs[0], q), q), q) for t in target_vecs)
        for c_code in shifts:
            c = decode_vec(c_code, N, q)
            if all(encode_vec(vec_add(v, c, q), q) in target for v in imgs[1:]):
                return CCZWitness(M, c)
    return None


def ea_to_ccz(g) -> CCZWitness:
    """Graph map induced by an EA element: (x, y) -> (P^-1 (x - a), Q y + b)."""
    q, n, m = g.dims
    Pi = mat_inv(g.P)
    N = n + m
    rows = [[0] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = Pi.rows[i][j]
    for i in range(m):
        for j in range(m):
            rows[n + i][n + j] = g.Q.rows[i][j]
    c = vec_neg(mat_vec(Pi, g.a), q) + tuple(g.b)
    return CCZWitness(FqMatrix(q, tuple(map(tuple, rows))), c)
