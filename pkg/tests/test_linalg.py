import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from _gen import F101, FIELDS, Q, rand_matrix, rand_nilpotent
from nilcommute.errors import DimensionMismatch, FieldMismatch, NotInvertible, NotSquare
from nilcommute.exactfield import FieldSpec
from nilcommute.jordan import Partition, jordan_matrix
from nilcommute.linalg import (
    Matrix,
    SpanBuilder,
    inverse,
    is_nilpotent,
    kernel_basis,
    mat_arith,
    nilpotency_index,
    rank,
    rank_naive,
    solve_linear,
    subspace_intersection,
)
from nilcommute.multipoly import MultiPoly, poly_eval_jacobian

F2 = FieldSpec.prime(2)


def J(n, f=Q):
    return jordan_matrix(Partition.of(n), f)


def e(n, i, f=Q):
    return Matrix.basis_vector(f, n, i)


# -- arithmetic --------------------------------------------------------------------

def test_mat_arith_examples():
    assert mat_arith(J(2), J(2), "mul").is_zero()
    a = rand_matrix(random.Random(0), Q, 3)
    assert mat_arith(Matrix.identity(Q, 3), a, "mul") == a
    with pytest.raises(DimensionMismatch):
        mat_arith(Matrix.zeros(Q, 2, 3), Matrix.zeros(Q, 3, 2), "add")
    with pytest.raises(FieldMismatch):
        mat_arith(Matrix.zeros(Q, 2), Matrix.zeros(F101, 2), "add")


def test_block_and_direct_sum():
    a = Matrix.from_rows(Q, [[1, 2], [3, 4]])
    b = Matrix.from_rows(Q, [[5]])
    s = Matrix.direct_sum(Q, a, b)
    assert s.rows == Matrix.from_rows(Q, [[1, 2, 0], [3, 4, 0], [0, 0, 5]]).rows
    blk = Matrix.block(Q, [[a, None], [None, b]], [2, 1], [2, 1])
    assert blk == s


# -- rank and kernels --------------------------------------------------------------

def test_rank_examples():
    assert rank(Matrix.zeros(Q, 4)) == 0
    for n in range(1, 8):
        assert rank(J(n)) == n - 1
    assert rank(Matrix.from_rows(F2, [[1, 1], [1, 1]])) == 1


def test_rank_matches_sympy():
    rng = random.Random(1)
    for _ in range(60):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        m = rand_matrix(rng, Q, r, c, bound=10)
        if rng.random() < 0.5 and r > 1:  # force dependencies
            rows = list(m.rows)
            rows[-1] = tuple(x + y for x, y in zip(rows[0], rows[1 % r]))
            m = Matrix._raw(Q, rows)
        assert rank(m) == sympy.Matrix(m.rows).rank()


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_rank_transpose_and_rank_nullity(f):
    rng = random.Random(2)
    for _ in range(500):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = rand_matrix(rng, f, r, c, bound=3)
        if rng.random() < 0.3:
            m = m @ rand_matrix(rng, f, c, 1) @ rand_matrix(rng, f, 1, c)
        rk = rank(m)
        assert rk == rank(m.T)
        assert len(kernel_basis(m)) + rk == c


def test_fraction_free_agrees_with_naive():
    rng = random.Random(3)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = rand_matrix(rng, Q, r, c, bound=10)
        if rng.random() < 0.5:
            m = m.scale(Fraction(1, rng.randint(1, 9)))
        assert rank(m) == rank_naive(m)


def test_kernel_examples():
    k = kernel_basis(J(3))
    assert k == [e(3, 0)]
    assert kernel_basis(Matrix.zeros(Q, 2)) == [e(2, 0), e(2, 1)]
    a = jordan_matrix(Partition.of(2, 1), Q)
    assert kernel_basis(a) == [e(3, 0), e(3, 2)]


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_kernel_vectors_are_annihilated(f):
    rng = random.Random(4)
    for _ in range(100):
        m = rand_matrix(rng, f, rng.randint(1, 5), rng.randint(1, 6), bound=2)
        for v in kernel_basis(m):
            assert (m @ v).is_zero()


def test_subspace_intersection_examples():
    got = subspace_intersection([e(3, 0), e(3, 1)], [e(3, 1), e(3, 2)])
    assert len(got) == 1 and rank(Matrix.block(Q, [[got[0], e(3, 1)]], [3], [1, 1])) == 1
    b1 = [e(3, 0), e(3, 1)]
    full = [e(3, i) for i in range(3)]
    inter = subspace_intersection(b1, full)
    stacked = Matrix.block(Q, [inter + b1], [3], [1] * 4)
    assert len(inter) == 2 and rank(stacked) == 2
    with pytest.raises(FieldMismatch):
        subspace_intersection([e(2, 0)], [e(2, 0, F101)])


# -- nilpotency --------------------------------------------------------------------

def test_nilpotency_examples():
    assert is_nilpotent(J(4)) and nilpotency_index(J(4)) == 4
    assert not is_nilpotent(Matrix.identity(Q, 3)) and nilpotency_index(Matrix.identity(Q, 3)) is None
    u = Matrix.unit(Q, 4, 0, 3)
    assert is_nilpotent(u) and nilpotency_index(u) == 2
    with pytest.raises(NotSquare):
        is_nilpotent(Matrix.zeros(Q, 2, 3))


def _charpoly_nilpotent(m):
    coeffs = sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in m.rows]).charpoly().all_coeffs()
    if m.field.is_rational:
        return all(c == 0 for c in coeffs[1:])
    return all(int(c) % m.field.p == 0 for c in coeffs[1:])


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_nilpotency_matches_characteristic_polynomial(f):
    rng = random.Random(5)
    for k in range(200):
        n = rng.randint(1, 5)
        m = rand_nilpotent(rng, f, n)
        if k % 2:
            m = m + Matrix.unit(f, n, rng.randrange(n), rng.randrange(n)).scale(f.random_nonzero(rng, 3))
        assert is_nilpotent(m) == _charpoly_nilpotent(m)


# -- solving -----------------------------------------------------------------------

def test_solve_linear_examples():
    b = Matrix.column(Q, [1, 2, 3])
    assert solve_linear(Matrix.identity(Q, 3), b) == b
    assert solve_linear(Matrix.zeros(Q, 3), b) is None
    with pytest.raises(DimensionMismatch):
        solve_linear(Matrix.identity(Q, 3), Matrix.column(Q, [1, 2]))


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_solve_linear_consistent_systems(f):
    rng = random.Random(6)
    for _ in range(100):
        a = rand_matrix(rng, f, rng.randint(1, 5), rng.randint(1, 5), bound=3)
        x0 = rand_matrix(rng, f, a.ncols, 1)
        x = solve_linear(a, a @ x0)
        assert x is not None and a @ x == a @ x0


def test_inverse():
    rng = random.Random(7)
    for f in FIELDS:
        for _ in range(30):
            m = rand_matrix(rng, f, 4, bound=4)
            if rank(m) < 4:
                with pytest.raises(NotInvertible):
                    inverse(m)
            else:
                assert inverse(m) @ m == Matrix.identity(f, 4)
    with pytest.raises(NotInvertible):
        inverse(Matrix.from_rows(Q, [[1, 1], [1, 1]]))


def test_span_builder_tracks_rank():
    rng = random.Random(8)
    sb = SpanBuilder(F101)
    vecs = []
    for _ in range(12):
        v = [F101.random_element(rng) for _ in range(6)]
        if rng.random() < 0.4 and vecs:
            v = [(a + b) % 101 for a, b in zip(vecs[0], vecs[-1])]
        before = len(sb)
        grew = sb.add(v)
        vecs.append(v)
        assert len(sb) == rank(Matrix._raw(F101, vecs))
        assert sb.contains(v)
        assert grew == (len(sb) > before)


# -- multivariate polynomials ------------------------------------------------------

def test_jacobian_product_example():
    x, y = MultiPoly.var(Q, 2, 0), MultiPoly.var(Q, 2, 1)
    vals, jac = poly_eval_jacobian([x * y], [2, 3])
    assert vals == [6]
    assert jac.rows == ((3, 2),)
    with pytest.raises(DimensionMismatch):
        poly_eval_jacobian([x * y], [1, 2, 3])


poly_terms = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5), max_size=6)


@given(poly_terms, poly_terms, st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_product_rule(t1, t2, point):
    f, g = MultiPoly(Q, 3, t1), MultiPoly(Q, 3, t2)
    for i in range(3):
        assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)
    assert (f * g)(point) == f(point) * g(point)
    assert (f + g)(point) == f(point) + g(point)


@given(poly_terms)
def test_no_zero_coefficients_stored(t):
    p = MultiPoly(F101, 3, t)
    assert all(c != 0 for c in p.terms.values())
    assert (p - p).is_zero()
