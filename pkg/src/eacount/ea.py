"""The EA group AGL(n, q) x AGL(m, q) acting on vectorial functions.

An element g = (P, a, Q, b) sends F to the function x -> Q F(P x + a) + b.
With this left action the group law is forced to be

    compose(g, h) = (P_h P_g, P_h a_g + a_h, Q_g Q_h, Q_g b_h + b_g)

i.e. output maps compose as maps and input maps compose in reverse, so that
``apply(compose(g, h), F) == apply(g, apply(h, F))``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Optional

from . import config, kernels
from .errors import DimensionMismatch, SingularMatrix, SolutionSpaceTooLarge, BudgetExceeded
from .functions import FuncTable, decode_vec, encode_vec
from .gf import (AffineSubspace, FqMatrix, _solve_rows, agl_order, all_vectors, check_vector,
                 enumerate_agl, enumerate_gl, get_field, gl_generators, is_invertible, mat_inv, mat_mul,
                 mat_vec, solve_linear, translation_generators, vec_add, vec_neg)


def affine_codes(P: FqMatrix, a, q) -> list:
    """Code map of x -> P x + a on F_q^n."""
    return [encode_vec(vec_add(mat_vec(P, x), a, q), q) for x in all_vectors(P.ncols, q)]


@dataclass(frozen=True)
class EAElement:
    P: FqMatrix
    a: tuple
    Q: FqMatrix
    b: tuple

    def __post_init__(self):
        if self.P.q != self.Q.q:
            raise DimensionMismatch("P and Q must live over the same field")
        if self.P.nrows != self.P.ncols or self.Q.nrows != self.Q.ncols:
            raise DimensionMismatch("P and Q must be square")
        object.__setattr__(self, "a", check_vector(self.a, self.P.nrows, self.P.q))
        object.__setattr__(self, "b", check_vector(self.b, self.Q.nrows, self.Q.q))
        if not is_invertible(self.P) or not is_invertible(self.Q):
            raise SingularMatrix("EA element needs invertible P and Q")

    @property
    def q(self):
        return self.P.q

    @property
    def n(self):
        return self.P.nrows

    @property
    def m(self):
        return self.Q.nrows

    @property
    def dims(self):
        return self.q, self.n, self.m

    @cached_property
    def input_map(self):
        return affine_codes(self.P, self.a, self.q)

    @cached_property
    def output_map(self):
        return affine_codes(self.Q, self.b, self.q)

    def input_is_identity(self):
        return self.P.is_identity() and not any(self.a)

    def output_is_identity(self):
        return self.Q.is_identity() and not any(self.b)

    def is_identity(self):
        return self.input_is_identity() and self.output_is_identity()

    def to_dict(self):
        return {"q": self.q, "n": self.n, "m": self.m,
                "P": self.P.flat(), "a": list(self.a), "Q": self.Q.flat(), "b": list(self.b)}

    @classmethod
    def from_dict(cls, d):
        q, n, m = int(d["q"]), int(d["n"]), int(d["m"])
        return cls(FqMatrix.from_flat(_flat(d["P"]), n, n, q), tuple(d["a"]),
                   FqMatrix.from_flat(_flat(d["Q"]), m, m, q), tuple(d["b"]))

    def dumps(self):
        return json.dumps(self.to_dict()) + "\n"

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))


def _flat(x):
    return [v for row in x for v in row] if x and isinstance(x[0], list) else list(x)


def read_element(path) -> EAElement:
    with open(path, encoding="utf-8") as fh:
        return EAElement.loads(fh.read())


def identity_element(q, n, m) -> EAElement:
    return EAElement(FqMatrix.identity(n, q), (0,) * n, FqMatrix.identity(m, q), (0,) * m)


def _check_dims(g, F):
    if g.dims != F.dims:
        raise DimensionMismatch(f"element acts on (q,n,m)={g.dims}, function is {F.dims}")


def apply(g: EAElement, F: FuncTable) -> FuncTable:
    """The table of x -> Q F(P x + a) + b."""
    _check_dims(g, F)
    return FuncTable(F.q, F.n, F.m, tuple(kernels.apply_table(F.table, g.input_map, g.output_map)))


def compose(g: EAElement, h: EAElement) -> EAElement:
    """The element acting as ``g`` after ``h``."""
    if g.dims != h.dims:
        raise DimensionMismatch(f"cannot compose {g.dims} with {h.dims}")
    q = g.q
    return EAElement(mat_mul(h.P, g.P), vec_add(mat_vec(h.P, g.a), h.a, q),
                     mat_mul(g.Q, h.Q), vec_add(mat_vec(g.Q, h.b), g.b, q))


def inverse(g: EAElement) -> EAElement:
    Pi, Qi = mat_inv(g.P), mat_inv(g.Q)
    return EAElement(Pi, vec_neg(mat_vec(Pi, g.a), g.q), Qi, vec_neg(mat_vec(Qi, g.b), g.q))


def conjugate(h: EAElement, g: EAElement) -> EAElement:
    """h g h^-1."""
    return compose(compose(h, g), inverse(h))


def random_element(rng, q, n, m) -> EAElement:
    def rand_inv(k):
        while True:
            M = FqMatrix.from_flat(rng.integers(0, q, size=k * k).tolist(), k, k, q)
            if is_invertible(M):
                return M

    return EAElement(rand_inv(n), tuple(rng.integers(0, q, size=n).tolist()),
                     rand_inv(m), tuple(rng.integers(0, q, size=m).tolist()))


def gamma_order(q, n, m) -> int:
    return agl_order(n, q) * agl_order(m, q)


@lru_cache(maxsize=16)
def agl_code_maps(n, q, budget=None):
    """``[(P, a, code map of x -> P x + a)]`` over AGL(n, q) in enumeration order."""
    out = []
    xs = all_vectors(n, q)
    for P in _gl_cached(n, q, budget):
        lin = [mat_vec(P, x) for x in xs]
        for a in xs:
            out.append((P, a, [encode_vec(vec_add(y, a, q), q) for y in lin]))
    return tuple(out)


@lru_cache(maxsize=16)
def _gl_cached(n, q, budget):
    return tuple(enumerate_gl(n, q, budget))


def enumerate_gamma(q, n, m, budget=None) -> Iterator[EAElement]:
    """All of AGL(n, q) x AGL(m, q): input part outermost, lexicographic."""
    budget = config.budget("group_budget") if budget is None else budget
    if gamma_order(q, n, m) > budget:
        raise BudgetExceeded(f"enumerate Gamma({q},{n},{m})", gamma_order(q, n, m), budget)
    outs = list(enumerate_agl(m, q, budget))
    for P, a in enumerate_agl(n, q, budget):
        for Q, b in outs:
            yield EAElement(P, a, Q, b)


def gamma_generators(q, n, m) -> list:
    """Generators of Gamma: elementary matrices and basis translations on each side."""
    In, Im = FqMatrix.identity(n, q), FqMatrix.identity(m, q)
    zn, zm = (0,) * n, (0,) * m
    gens = [EAElement(P, zn, Im, zm) for P in gl_generators(n, q)]
    gens += [EAElement(In, t, Im, zm) for t in translation_generators(n, q)]
    gens += [EAElement(In, zn, Q, zm) for Q in gl_generators(m, q)]
    gens += [EAElement(In, zn, Im, t) for t in translation_generators(m, q)]
    return gens


def orbit_of(F: FuncTable) -> set:
    """The Gamma-orbit of F as a set of tables, by closure under generators."""
    gens = [(g.input_map, g.output_map) for g in gamma_generators(*F.dims)]
    seen = {F.table}
    frontier = [F.table]
    while frontier:
        nxt = []
        for t in frontier:
            for inp, out in gens:
                img = tuple(kernels.apply_table(t, inp, out))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# affine permutations of U


def fixed_points_affine(P: FqMatrix, a) -> AffineSubspace:
    """Solutions of P x + a = x, i.e. (P - I) x = -a."""
    q = P.q
    return solve_linear(P - FqMatrix.identity(P.nrows, q), vec_neg(a, q))


@dataclass(frozen=True)
class OrbitDecomposition:
    """Cycles of sigma(x) = P x + a on F_q^n.

    ``orbits`` lists (base_point, length); the base point is the smallest
    code in its cycle and cycles appear in increasing order of base code.
    """

    q: int
    n: int
    perm: tuple
    orbits: tuple

    @property
    def total_points(self):
        return self.q**self.n

    @property
    def count(self):
        return len(self.orbits)

    @property
    def fixed_count(self):
        return sum(1 for _, L in self.orbits if L == 1)

    def lengths(self):
        return [L for _, L in self.orbits]


def cycle_lengths(perm) -> list:
    """(base code, length) for each cycle of a permutation given as a code list."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        L, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            L += 1
        out.append((start, L))
    return out


def orbits_affine(P: FqMatrix, a) -> OrbitDecomposition:
    q, n = P.q, P.nrows
    perm = affine_codes(P, a, q)
    orbits = tuple((decode_vec(base, n, q), L) for base, L in cycle_lengths(perm))
    return OrbitDecomposition(q, n, tuple(perm), orbits)


# ---------------------------------------------------------------------------
# affine fitting and search


def default_fit_budget(q, m):
    return min(q ** (m * m + m), config.budget("fit_budget"))


def affine_fit(pairs, q, require_invertible=True, fit_budget=None) -> list:
    """All (Q, b) with Q u + b = v for every pair (u, v) of F_q^m vectors.

    The unknowns of row r of Q together with b[r] solve the same coefficient
    system (rows ``u + (1,)``) with right-hand side ``v[r]``, so one
    elimination handles all m rows.  Returns pairs in lexicographic order of
    the per-row solution coordinates.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("affine_fit needs at least one pair")
    m = len(pairs[0][0])
    if any(len(u) != m or len(v) != m for u, v in pairs):
        raise DimensionMismatch("all fitted vectors must have dimension m")
    fit_budget = default_fit_budget(q, m) if fit_budget is None else fit_budget
    F = get_field(q)
    rows = [list(u) + [1] + list(v) for u, v in pairs]
    particulars, basis = _solve_rows(rows, m + 1, F)
    if any(p is None for p in particulars):
        return []
    size = q ** (m * len(basis))
    if size > fit_budget:
        raise SolutionSpaceTooLarge(size, fit_budget)
    row_choices = [list(AffineSubspace(q, m + 1, p, basis).points()) for p in particulars]
    out = []
    for choice in itertools.product(*row_choices):
        Q = FqMatrix(q, tuple(r[:m] for r in choice))
        if require_invertible and not is_invertible(Q):
            continue
        out.append((Q, tuple(r[m] for r in choice)))
    return out


def _fit_for_input(F: FuncTable, G: FuncTable, inp, fit_budget):
    """All invertible (Q, b) with Q F(inp[x]) + b = G(x), or [] if none."""
    q, m = F.q, F.m
    qm = q**m
    M = kernels.induced_map([F.table[i] for i in inp], G.table, qm)
    if M is None:
        return []
    pairs = [(decode_vec(u, m, q), decode_vec(v, m, q)) for u, v in enumerate(M) if v >= 0]
    return affine_fit(pairs, q, require_invertible=True, fit_budget=fit_budget)


def ea_equivalent(F: FuncTable, G: FuncTable, budget=None, fit_budget=None) -> Optional[EAElement]:
    """A witness g with apply(g, F) == G, or None.

    Loops over A_in in AGL(n, q) and fits the output map; the first witness
    in enumeration order is returned after verification.
    """
    if F.dims != G.dims:
        raise DimensionMismatch("functions must share (q, n, m)")
    budget = config.budget("enumeration_budget") if budget is None else budget
    for P, a, inp in agl_code_maps(F.n, F.q, budget):
        fits = _fit_for_input(F, G, inp, fit_budget)
        if fits:
            Q, b = fits[0]
            g = EAElement(P, a, Q, b)
            if apply(g, F) != G:  # pragma: no cover
                raise AssertionError("affine fit produced an invalid witness")
            return g
    return None


@dataclass(frozen=True)
class StabilizerReport:
    elements: tuple

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return self.size == 1


def stabilizer(F: FuncTable, budget=None, fit_budget=None) -> StabilizerReport:
    budget = config.budget("enumeration_budget") if budget is None else budget
    found = []
    for P, a, inp in agl_code_maps(F.n, F.q, budget):
        for Q, b in _fit_for_input(F, F, inp, fit_budget):
            found.append(EAElement(P, a, Q, b))
    return StabilizerReport(tuple(found))


def stabilizer_size(F: FuncTable, budget=None, fit_budget=None) -> int:
    """Like ``stabilizer(F).size`` without building element objects."""
    budget = config.budget("enumeration_budget") if budget is None else budget
    return sum(len(_fit_for_input(F, F, inp, fit_budget))
               for _, _, inp in agl_code_maps(F.n, F.q, budget))
