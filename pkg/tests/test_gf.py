import itertools

import pytest
from hypothesis import given, settings, strategies as st

from eacount.errors import BudgetExceeded, ConfigurationError, DimensionMismatch, SingularMatrix
from eacount.functions import make_rng
from eacount.gf import (SUPPORTED_Q, FqMatrix, agl_order, all_vectors, enumerate_agl, enumerate_gl,
                        get_field, gl_generators, gl_order, is_invertible, mat_inv, mat_mul, mat_pow,
                        mat_vec, rank, solve_linear)


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_field_tables(q):
    F = get_field(q)
    assert F.p ** F.e == q
    for x in range(1, q):
        assert F.mul[x][F.inv[x]] == 1
        assert F.add[x][F.neg[x]] == 0
    assert sorted(F.exp) == list(range(1, q))


def test_unsupported_q():
    with pytest.raises(ConfigurationError):
        get_field(6)
    with pytest.raises(ConfigurationError):
        gl_order(2, 16)


@pytest.mark.parametrize("n, q, gl, agl", [(1, 2, 1, 2), (2, 2, 6, 24), (3, 2, 168, 1344)])
def test_group_orders(n, q, gl, agl):
    assert gl_order(n, q) == gl
    assert agl_order(n, q) == agl


def test_solve_linear_examples():
    I2 = FqMatrix.identity(2, 2)
    S = solve_linear(I2, (1, 0))
    assert S.point == (1, 0) and S.basis == ()
    Z = FqMatrix.zeros(2, 2, 2)
    S = solve_linear(Z, (0, 0))
    assert S.point == (0, 0) and len(S.basis) == 2 and S.size == 4
    A = FqMatrix(2, ((1, 1), (1, 1)))
    brute = [x for x in all_vectors(2, 2) if mat_vec(A, x) == (1, 0)]
    assert brute == []
    assert solve_linear(A, (1, 0)).empty


def test_solve_linear_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_linear(FqMatrix.identity(2, 2), (1, 0, 0))


def _check_solve_against_brute(A, c):
    S = solve_linear(A, c)
    brute = {x for x in all_vectors(A.ncols, A.q) if mat_vec(A, x) == tuple(c)}
    assert set(S.points()) == brute
    assert S.size == len(brute)
    if not S.empty:
        assert mat_vec(A, S.point) == tuple(c)
        for v in S.basis:
            assert not any(mat_vec(A, v))
        assert S.size == A.q ** (A.ncols - rank(A))


@pytest.mark.parametrize("q, maxcols", [(2, 6), (3, 4)])
def test_solve_linear_brute_force(q, maxcols):
    rng = make_rng(11)
    for _ in range(60):
        rows = int(rng.integers(1, 5))
        cols = int(rng.integers(1, maxcols + 1))
        A = FqMatrix.from_flat(rng.integers(0, q, rows * cols).tolist(), rows, cols, q)
        c = tuple(rng.integers(0, q, rows).tolist())
        _check_solve_against_brute(A, c)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SUPPORTED_Q), st.integers(1, 3), st.integers(1, 3), st.data())
def test_solve_linear_property(q, rows, cols, data):
    entries = data.draw(st.lists(st.integers(0, q - 1), min_size=rows * cols, max_size=rows * cols))
    c = data.draw(st.lists(st.integers(0, q - 1), min_size=rows, max_size=rows))
    A = FqMatrix.from_flat(entries, rows, cols, q)
    _check_solve_against_brute(A, c)
    S = solve_linear(A, (0,) * rows)
    assert rank(A) + len(S.basis) == cols


def test_rank_and_pow_examples():
    assert rank(FqMatrix.identity(3, 2)) == 3
    assert rank(FqMatrix(2, ((1, 1), (1, 1)))) == 1
    swap = FqMatrix(2, ((0, 1), (1, 0)))
    assert mat_pow(swap, 2) == FqMatrix.identity(2, 2)


def test_mat_inv_singular():
    with pytest.raises(SingularMatrix):
        mat_inv(FqMatrix(2, ((1, 1), (1, 1))))


@pytest.mark.parametrize("n, q", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4), (2, 5), (2, 7), (2, 8), (2, 9)])
def test_mat_inv_random(n, q):
    rng = make_rng(n * 100 + q)
    I = FqMatrix.identity(n, q)
    done = 0
    while done < 1000:
        A = FqMatrix.from_flat(rng.integers(0, q, n * n).tolist(), n, n, q)
        if not is_invertible(A):
            continue
        assert mat_mul(mat_inv(A), A) == I
        done += 1


@pytest.mark.parametrize("n, q", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5)])
def test_enumerate_gl_counts_and_order(n, q):
    mats = list(enumerate_gl(n, q))
    assert len(mats) == gl_order(n, q)
    keys = [m.flat() for m in mats]
    assert keys == sorted(keys)
    assert len(set(map(tuple, keys))) == len(keys)
    brute = [e for e in itertools.product(range(q), repeat=n * n)
             if is_invertible(FqMatrix.from_flat(e, n, n, q))]
    assert [tuple(k) for k in keys] == brute


def test_enumerate_gl_small():
    assert list(enumerate_gl(1, 2)) == [FqMatrix(2, ((1,),))]


def test_enumerate_agl_2_2():
    pairs = list(enumerate_agl(2, 2))
    assert len(pairs) == 24
    assert all(is_invertible(P) for P, _ in pairs)
    assert len({(P, a) for P, a in pairs}) == 24


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_gl(3, 2, budget=100))
    assert exc.value.required == 1344


@pytest.mark.parametrize("n, q", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (2, 4)])
def test_generators_generate_gl(n, q):
    gens = gl_generators(n, q)
    I = FqMatrix.identity(n, q)
    seen, frontier = {I}, [I]
    while frontier:
        frontier = [h for g in frontier for h in (mat_mul(s, g) for s in gens) if h not in seen
                    and not seen.add(h)]
    assert len(seen) == gl_order(n, q)
