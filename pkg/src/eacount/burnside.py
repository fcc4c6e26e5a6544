"""Counting EA classes with Burnside's lemma.

Two strategies are provided: a sum over every element of the group, and a
sum over pairs of conjugacy classes of AGL(n, q) and AGL(m, q) weighted by
class sizes (|Fix| is constant on conjugacy classes).
"""
from __future__ import annotations

import decimal
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .ea import EAElement, affine_codes, agl_code_maps, cycle_lengths, gamma_order
from .errors import BudgetExceeded, ConfigurationError, IntegralityViolation
from .fixcount import fix_count_exact, fix_count_from_lengths, per_length_counts
from .functions import function_space_size
from .gf import FqMatrix, agl_order, gl_generators, translation_generators


def decimal_string(x: Fraction, digits=20) -> str:
    """Fixed-point rendering of a rational with ``digits`` decimals (no exponent)."""
    with decimal.localcontext() as ctx:
        ctx.prec = max(digits + len(str(abs(x.numerator) // x.denominator)) + 5, 50)
        value = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
        return f"{value.quantize(decimal.Decimal(1).scaleb(-digits)):f}"


@dataclass(frozen=True)
class ClassCountReport:
    q: int
    n: int
    m: int
    method: str
    gamma_order: int
    burnside_sum: int
    class_count: int

    @property
    def naive_estimate(self) -> Fraction:
        return Fraction(function_space_size(self.q, self.n, self.m), self.gamma_order)

    @property
    def relative_ratio(self) -> Fraction:
        return self.class_count / self.naive_estimate

    @property
    def relative_error(self) -> Fraction:
        return abs(self.relative_ratio - 1)

    CSV_HEADER = ("q", "n", "m", "method", "gamma_order", "class_count",
                  "naive_num", "naive_den", "ratio_decimal")

    def csv_row(self):
        est = self.naive_estimate
        return (self.q, self.n, self.m, self.method, self.gamma_order, self.class_count,
                est.numerator, est.denominator, decimal_string(self.relative_ratio))

    def to_dict(self):
        return dict(zip(self.CSV_HEADER, self.csv_row())) | {
            "burnside_sum": self.burnside_sum,
            "relative_error": decimal_string(self.relative_error),
        }


def _finish(q, n, m, method, total):
    order = gamma_order(q, n, m)
    count, rem = divmod(total, order)
    if rem:
        raise IntegralityViolation(f"Burnside sum {total} not divisible by |Gamma| = {order}")
    return ClassCountReport(q, n, m, method, order, total, count)


def burnside_sum_exhaustive(q, n, m, budget=None) -> int:
    """sum over every g in Gamma of |Fix(g)|.

    The input map of g only enters through its cycle-length multiset and the
    output map through its per-length constraint counts; both are computed
    once per factor element, then every (input, output) pair is visited.
    """
    budget = config.budget("group_budget") if budget is None else budget
    order = gamma_order(q, n, m)
    if order > budget:
        raise BudgetExceeded(f"exhaustive Burnside sum at {(q, n, m)}", order, budget)
    enum_budget = max(agl_order(n, q), agl_order(m, q))
    shapes = [Counter(L for _, L in cycle_lengths(inp))
              for _, _, inp in agl_code_maps(n, q, enum_budget)]
    lengths = sorted({L for s in shapes for L in s})
    out_counts = [per_length_counts(Q, b, lengths) for Q, b, _ in agl_code_maps(m, q, enum_budget)]
    total = 0
    for shape in shapes:
        for counts in out_counts:
            total += fix_count_from_lengths(shape, counts)
    return total


def count_classes_exhaustive(q, n, m, budget=None) -> ClassCountReport:
    return _finish(q, n, m, "exhaustive", burnside_sum_exhaustive(q, n, m, budget))


@dataclass(frozen=True)
class ConjugacyClassTable:
    n: int
    q: int
    classes: tuple  # ((P, a), size)

    @property
    def order(self):
        return sum(size for _, size in self.classes)


def _compose_perm(f, g):
    """f after g, on code lists."""
    return tuple(f[x] for x in g)


def _invert_perm(f):
    inv = [0] * len(f)
    for x, y in enumerate(f):
        inv[y] = x
    return tuple(inv)


def conjugacy_classes_agl(n, q, budget=None) -> ConjugacyClassTable:
    """Partition AGL(n, q) into conjugacy classes.

    Each class is the closure of its first element (in enumeration order)
    under conjugation by a generating set; elements are compared as
    permutations of F_q^n, which is faithful for AGL.
    """
    budget = config.budget("conjugacy_budget") if budget is None else budget
    order = agl_order(n, q)
    if order > budget:
        raise BudgetExceeded(f"conjugacy classes of AGL({n},{q})", order, budget)
    elements = agl_code_maps(n, q, order)
    index = {tuple(inp): i for i, (_, _, inp) in enumerate(elements)}
    zero = (0,) * n
    ident = FqMatrix.identity(n, q)
    gens = [affine_codes(P, zero, q) for P in gl_generators(n, q)]
    gens += [affine_codes(ident, t, q) for t in translation_generators(n, q)]
    gens = [(tuple(h), _invert_perm(h)) for h in gens]
    label = [-1] * len(elements)
    classes = []
    for i, (P, a, inp) in enumerate(elements):
        if label[i] >= 0:
            continue
        label[i] = len(classes)
        size = 1
        frontier = [tuple(inp)]
        while frontier:
            nxt = []
            for s in frontier:
                for h, hinv in gens:
                    c = _compose_perm(h, _compose_perm(s, hinv))
                    j = index[c]
                    if label[j] < 0:
                        label[j] = len(classes)
                        size += 1
                        nxt.append(c)
            frontier = nxt
        classes.append(((P, a), size))
    return ConjugacyClassTable(n, q, tuple(classes))


def burnside_sum_conjugacy(q, n, m, budget=None) -> int:
    cu = conjugacy_classes_agl(n, q, budget)
    cw = cu if n == m else conjugacy_classes_agl(m, q, budget)
    total = 0
    for (P, a), su in cu.classes:
        for (Q, b), sw in cw.classes:
            total += su * sw * fix_count_exact(EAElement(P, a, Q, b)).total
    return total


def count_classes_conjugacy(q, n, m, budget=None) -> ClassCountReport:
    return _finish(q, n, m, "conjugacy", burnside_sum_conjugacy(q, n, m, budget))


METHODS = {"exhaustive": count_classes_exhaustive, "conjugacy": count_classes_conjugacy}


def count_classes(q, n, m, method="exhaustive") -> ClassCountReport:
    try:
        return METHODS[method](q, n, m)
    except KeyError:
        raise ConfigurationError(f"unknown method {method!r}; choose from {sorted(METHODS)}") from None


def relative_error(q, n, m, method="exhaustive"):
    """(class_count / (|F|/|Gamma|), |ratio - 1|) as exact rationals."""
    report = count_classes(q, n, m, method)
    return report.relative_ratio, report.relative_error
