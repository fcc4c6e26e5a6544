"""Exact linear algebra over small finite fields F_q.

Field elements are plain ints in ``range(q)``.  For prime q they are the
residues mod q.  For q = p**e (4, 8, 9) the int ``sum(d_k * p**k)`` stands
for the polynomial ``sum(d_k * x**k)`` reduced modulo the Conway polynomial
of the field:

    F_4: x^2 + x + 1      F_8: x^3 + x + 1      F_9: x^2 + 2x + 2

Vectors are tuples of ints; matrices are :class:`FqMatrix` values.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from . import config
from .errors import BudgetExceeded, ConfigurationError, DimensionMismatch, SingularMatrix

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# coefficient lists, lowest degree first, monic
CONWAY_POLYNOMIALS = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
}


class FieldSpec:
    """Addition/multiplication tables for F_q, checked to form a field."""

    def __init__(self, q: int):
        if q not in SUPPORTED_Q:
            raise ConfigurationError(f"unsupported field size q={q}; supported: {SUPPORTED_Q}")
        self.q = q
        self.p, self.e = _prime_power(q)
        p, e = self.p, self.e

        def digits(v):
            return [(v // p**k) % p for k in range(e)]

        def undigits(ds):
            return sum(d * p**k for k, d in enumerate(ds))

        self.add = [[undigits([(x + y) % p for x, y in zip(digits(u), digits(v))])
                     for v in range(q)] for u in range(q)]
        if e == 1:
            self.mul = [[(u * v) % q for v in range(q)] for u in range(q)]
        else:
            poly = CONWAY_POLYNOMIALS[q]
            self.mul = [[undigits(_polymulmod(digits(u), digits(v), poly, p))
                         for v in range(q)] for u in range(q)]
        self.neg = [next(v for v in range(q) if self.add[u][v] == 0) for u in range(q)]
        self.sub = [[self.add[u][self.neg[v]] for v in range(q)] for u in range(q)]
        self.inv = [0] + [next(v for v in range(1, q) if self.mul[u][v] == 1) for u in range(1, q)]
        self.primitive = self._find_primitive()
        self.exp = [1] * (q - 1)
        for k in range(1, q - 1):
            self.exp[k] = self.mul[self.exp[k - 1]][self.primitive]
        self.log = {v: k for k, v in enumerate(self.exp)}
        self._check_axioms()

    def _find_primitive(self):
        for g in range(2 if self.q > 2 else 1, self.q):
            seen, x = set(), 1
            for _ in range(self.q - 1):
                seen.add(x)
                x = self.mul[x][g]
            if len(seen) == self.q - 1:
                return g
        raise ConfigurationError(f"no primitive element for q={self.q}")  # pragma: no cover

    def _check_axioms(self):
        q, add, mul = self.q, self.add, self.mul
        for x, y, z in itertools.product(range(q), repeat=3):
            if add[add[x][y]][z] != add[x][add[y][z]] or mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                raise ConfigurationError(f"tables for q={q} are not associative")
            if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
                raise ConfigurationError(f"tables for q={q} are not distributive")
        if any(add[x][y] != add[y][x] or mul[x][y] != mul[y][x] for x in range(q) for y in range(q)):
            raise ConfigurationError(f"tables for q={q} are not commutative")

    def __repr__(self):
        return f"FieldSpec(q={self.q})"


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ConfigurationError(f"q={q} is not a prime power")
            return p, e
    raise ConfigurationError(f"q={q} is not a prime power")


def _polymulmod(a, b, poly, p):
    deg = len(poly) - 1
    prod = [0] * (2 * deg - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, deg - 1, -1):
        c = prod[k]
        if c:
            for j in range(deg + 1):
                prod[k - deg + j] = (prod[k - deg + j] - c * poly[j]) % p
    return prod[:deg]


@lru_cache(maxsize=None)
def get_field(q: int) -> FieldSpec:
    return FieldSpec(q)


# ---------------------------------------------------------------------------
# vectors


def check_vector(v: Sequence[int], dim: int, q: int) -> tuple:
    v = tuple(int(x) for x in v)
    if len(v) != dim:
        raise DimensionMismatch(f"vector has length {len(v)}, expected {dim}")
    if any(not 0 <= x < q for x in v):
        raise ConfigurationError(f"vector entries must lie in [0, {q})")
    return v


def vec_add(u, v, q):
    add = get_field(q).add
    return tuple(add[x][y] for x, y in zip(u, v))


def vec_neg(u, q):
    neg = get_field(q).neg
    return tuple(neg[x] for x in u)


def vec_scale(c, u, q):
    row = get_field(q).mul[c]
    return tuple(row[x] for x in u)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class FqMatrix:
    q: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix must have at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        if any(not 0 <= x < self.q for r in rows for x in r):
            raise ConfigurationError(f"matrix entries must lie in [0, {self.q})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n, q):
        return cls(q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r, c, q):
        return cls(q, ((0,) * c,) * r)

    @classmethod
    def from_flat(cls, entries, r, c, q):
        entries = list(entries)
        if len(entries) != r * c:
            raise DimensionMismatch(f"expected {r * c} entries, got {len(entries)}")
        return cls(q, tuple(tuple(entries[i * c:(i + 1) * c]) for i in range(r)))

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return self.nrows, self.ncols

    def flat(self):
        return [x for r in self.rows for x in r]

    def is_identity(self):
        return self.nrows == self.ncols and all(
            x == (i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def __matmul__(self, other):
        if isinstance(other, FqMatrix):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def __add__(self, other):
        _same_shape(self, other)
        add = get_field(self.q).add
        return FqMatrix(self.q, tuple(tuple(add[x][y] for x, y in zip(r, s))
                                      for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        _same_shape(self, other)
        sub = get_field(self.q).sub
        return FqMatrix(self.q, tuple(tuple(sub[x][y] for x, y in zip(r, s))
                                      for r, s in zip(self.rows, other.rows)))

    def transpose(self):
        return FqMatrix(self.q, tuple(zip(*self.rows)))


def _same_shape(A, B):
    if A.q != B.q or A.shape != B.shape:
        raise DimensionMismatch(f"shape/field mismatch: {A.shape}/q={A.q} vs {B.shape}/q={B.q}")


def mat_vec(A: FqMatrix, v) -> tuple:
    if len(v) != A.ncols:
        raise DimensionMismatch(f"matrix has {A.ncols} columns, vector length {len(v)}")
    F = get_field(A.q)
    add, mul = F.add, F.mul
    out = []
    for r in A.rows:
        s = 0
        for x, y in zip(r, v):
            if x and y:
                s = add[s][mul[x][y]]
        out.append(s)
    return tuple(out)


def mat_mul(A: FqMatrix, B: FqMatrix) -> FqMatrix:
    if A.q != B.q or A.ncols != B.nrows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    cols = B.transpose().rows
    F = get_field(A.q)
    add, mul = F.add, F.mul
    rows = []
    for r in A.rows:
        row = []
        for c in cols:
            s = 0
            for x, y in zip(r, c):
                if x and y:
                    s = add[s][mul[x][y]]
            row.append(s)
        rows.append(tuple(row))
    return FqMatrix(A.q, tuple(rows))


def mat_pow(A: FqMatrix, k: int) -> FqMatrix:
    if A.nrows != A.ncols:
        raise DimensionMismatch("mat_pow needs a square matrix")
    if k < 0:
        return mat_pow(mat_inv(A), -k)
    result = FqMatrix.identity(A.nrows, A.q)
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def _rref(rows, ncoef, F):
    """Reduce ``rows`` (lists, modified in place) to reduced row echelon form.

    Only the first ``ncoef`` columns are used for pivoting.  Pivot choice is
    the first row with a nonzero entry in the current column.
    Returns the list of pivot columns.
    """
    add, mul, inv, neg = F.add, F.mul, F.inv, F.neg
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncoef):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        s = inv[prow[col]]
        if s != 1:
            srow = mul[s]
            prow[:] = [srow[x] for x in prow]
        for i in range(nrows):
            if i != r:
                f = rows[i][col]
                if f:
                    nf = mul[neg[f]]
                    row = rows[i]
                    rows[i] = [add[x][nf[y]] for x, y in zip(row, prow)]
        pivots.append(col)
        r += 1
    return pivots


def rank(A: FqMatrix) -> int:
    rows = [list(r) for r in A.rows]
    return len(_rref(rows, A.ncols, get_field(A.q)))


def is_invertible(A: FqMatrix) -> bool:
    return A.nrows == A.ncols and rank(A) == A.nrows


def mat_inv(A: FqMatrix) -> FqMatrix:
    if A.nrows != A.ncols:
        raise SingularMatrix(f"non-square matrix {A.shape} has no inverse")
    n = A.nrows
    rows = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A.rows)]
    pivots = _rref(rows, n, get_field(A.q))
    if len(pivots) != n:
        raise SingularMatrix("matrix is singular")
    return FqMatrix(A.q, tuple(tuple(r[n:]) for r in rows))


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set ``point + span(basis)``, or the empty set."""

    q: int
    ambient_dim: int
    point: Optional[tuple]
    basis: tuple = ()

    @property
    def empty(self):
        return self.point is None

    @property
    def dim(self):
        return -1 if self.empty else len(self.basis)

    @property
    def size(self) -> int:
        return 0 if self.empty else self.q ** len(self.basis)

    def __contains__(self, x):
        return any(p == tuple(x) for p in self.points()) if not self.empty else False

    def points(self) -> Iterator[tuple]:
        if self.empty:
            return
        q = self.q
        for coeffs in itertools.product(range(q), repeat=len(self.basis)):
            v = self.point
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = vec_add(v, vec_scale(c, b, q), q)
            yield v


def _solve_rows(rows, ncoef, F):
    """Solve an augmented system whose last columns are right-hand sides.

    ``rows`` has ``ncoef + k`` entries per row.  Returns ``(particulars,
    basis)`` where ``particulars[j]`` is a particular solution for rhs ``j``
    (``None`` if that rhs is inconsistent) and ``basis`` spans the kernel.
    """
    pivots = _rref(rows, ncoef, F)
    k = len(rows[0]) - ncoef if rows else 0
    neg = F.neg
    particulars = []
    for j in range(k):
        col = ncoef + j
        if any(rows[i][col] for i in range(len(pivots), len(rows))):
            particulars.append(None)
            continue
        x = [0] * ncoef
        for i, pc in enumerate(pivots):
            x[pc] = rows[i][col]
        particulars.append(tuple(x))
    free = [c for c in range(ncoef) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncoef
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = neg[rows[i][f]]
        basis.append(tuple(v))
    return particulars, tuple(basis)


def solve_linear(A: FqMatrix, c) -> AffineSubspace:
    """All x with ``A x = c``."""
    if len(c) != A.nrows:
        raise DimensionMismatch(f"system has {A.nrows} rows but rhs has length {len(c)}")
    c = check_vector(c, A.nrows, A.q)
    rows = [list(r) + [ci] for r, ci in zip(A.rows, c)]
    (point,), basis = _solve_rows(rows, A.ncols, get_field(A.q))
    if point is None:
        return AffineSubspace(A.q, A.ncols, None, ())
    return AffineSubspace(A.q, A.ncols, point, basis)


# ---------------------------------------------------------------------------
# group orders and enumeration


def _check_q(q):
    if q not in SUPPORTED_Q:
        raise ConfigurationError(f"unsupported field size q={q}; supported: {SUPPORTED_Q}")


def gl_order(n: int, q: int) -> int:
    _check_q(q)
    if n < 1:
        raise ConfigurationError("dimension must be >= 1")
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def agl_order(n: int, q: int) -> int:
    return q**n * gl_order(n, q)


def all_vectors(dim, q):
    """Every vector of F_q^dim, ordered by radix-q code (first entry least significant)."""
    return [tuple(reversed(t)) for t in itertools.product(range(q), repeat=dim)]


def enumerate_gl(n: int, q: int, budget: Optional[int] = None) -> Iterator[FqMatrix]:
    """Yield GL(n, q) in lexicographic order of row-major entries.

    Rows are chosen one at a time outside the span of the rows already
    picked, which preserves lexicographic order while skipping singular
    prefixes.
    """
    budget = config.budget("enumeration_budget") if budget is None else budget
    if agl_order(n, q) > budget:
        raise BudgetExceeded(f"enumerate GL({n},{q})", agl_order(n, q), budget)
    F = get_field(q)
    lex_rows = list(itertools.product(range(q), repeat=n))

    def rec(chosen):
        if len(chosen) == n:
            yield FqMatrix(q, tuple(chosen))
            return
        for row in lex_rows:
            trial = [list(r) for r in chosen] + [list(row)]
            if len(_rref(trial, n, F)) == len(chosen) + 1:
                yield from rec(chosen + [row])

    return rec([])


def enumerate_agl(n: int, q: int, budget: Optional[int] = None) -> Iterator[tuple]:
    """Yield pairs (P, a) of AGL(n, q): P in lexicographic order, then a."""
    budget = config.budget("enumeration_budget") if budget is None else budget
    if agl_order(n, q) > budget:
        raise BudgetExceeded(f"enumerate AGL({n},{q})", agl_order(n, q), budget)
    translations = [tuple(t) for t in itertools.product(range(q), repeat=n)]
    for P in enumerate_gl(n, q, budget):
        for a in translations:
            yield P, a


def gl_generators(n: int, q: int):
    """Elementary matrices generating GL(n, q).

    Transvections I + c*E_ij (i != j, c != 0) plus diag(g, 1, ..., 1) with
    g a primitive element.
    """
    F = get_field(q)
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for c in range(1, q):
                rows = [[int(r == s) for s in range(n)] for r in range(n)]
                rows[i][j] = c
                gens.append(FqMatrix(q, tuple(map(tuple, rows))))
    if q > 2:
        rows = [[int(r == s) for s in range(n)] for r in range(n)]
        rows[0][0] = F.primitive
        gens.append(FqMatrix(q, tuple(map(tuple, rows))))
    return gens


def translation_generators(n: int, q: int):
    """Scalar multiples c * e_i of the basis vectors (they generate F_q^n additively)."""
    return [tuple(c if k == i else 0 for k in range(n)) for i in range(n) for c in range(1, q)]
