"""Unital algebras generated by commuting matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NotCommuting,
    NotInAlgebra,
    NotNilpotent,
    NotSelfCentralizing,
    NotSquare,
)
from .exactfield import FieldSpec
from .jordan import Partition, _commutator_system, centralizer_basis
from .linalg import (
    Matrix,
    SpanBuilder,
    intersection_vectors,
    is_nilpotent,
    kernel_vectors,
    rank,
    rank_of_rows,
    solve_linear,
)


def _check_commuting(mats: Sequence[Matrix]) -> tuple[FieldSpec, int]:
    if not mats:
        raise ValueError("need at least one matrix")
    f, n = mats[0].field, mats[0].nrows
    for m in mats:
        if m.field != f:
            raise FieldMismatch("matrices over different fields")
        if not m.is_square:
            raise NotSquare(f"{m.shape} matrix")
        if m.nrows != n:
            raise DimensionMismatch("matrices of different sizes")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not mats[i].commutes_with(mats[j]):
                raise NotCommuting(f"matrices {i} and {j} do not commute")
    return f, n


@dataclass(frozen=True)
class NilTuple:
    """A point of N(d, n): pairwise commuting nilpotent matrices, validated once here."""

    mats: tuple

    def __post_init__(self):
        mats = tuple(self.mats)
        object.__setattr__(self, "mats", mats)
        _check_commuting(mats)
        for i, m in enumerate(mats):
            if not is_nilpotent(m):
                raise NotNilpotent(f"matrix {i} is not nilpotent")

    @property
    def field(self) -> FieldSpec:
        return self.mats[0].field

    @property
    def n(self) -> int:
        return self.mats[0].nrows

    @property
    def d(self) -> int:
        return len(self.mats)

    def __iter__(self):
        return iter(self.mats)

    def __getitem__(self, i):
        return self.mats[i]

    def __len__(self):
        return len(self.mats)


def _mats(x) -> tuple:
    return tuple(x.mats) if isinstance(x, NilTuple) else tuple(x)


def monomial_vectors(mats: Sequence[Matrix]) -> list[tuple]:
    """Vectorized monomials A_1^k_1 ... A_d^k_d with 0 <= k_i <= n-1.

    Zero monomials are skipped together with every monomial they divide; duplicates are
    dropped.  Neither changes the rank of the monomial matrix.
    """
    f = mats[0].field
    n = mats[0].nrows
    ident = Matrix.identity(f, n)
    seen = set()
    out = []

    def walk(depth, prod):
        if depth == len(mats):
            v = prod.vec()
            if v not in seen:
                seen.add(v)
                out.append(v)
            return
        cur = prod
        for _ in range(n):
            if cur.is_zero():
                return
            walk(depth + 1, cur)
            cur = cur @ mats[depth]

    walk(0, ident)
    return out


def algebra_dim_monomial(mats) -> int:
    """dim F[A_1..A_d] as the rank of the n^2 x n^d matrix of vectorized monomials."""
    mats = _mats(mats)
    f, _ = _check_commuting(mats)
    return rank_of_rows(monomial_vectors(mats), f)


def algebra_basis_closure(mats) -> list[Matrix]:
    """Spanning closure: start from I and the generators, multiply until stable."""
    mats = _mats(mats)
    f, n = _check_commuting(mats)
    span = SpanBuilder(f)
    basis = []
    frontier = []
    for m in (Matrix.identity(f, n), *mats):
        if span.add(m.vec()):
            basis.append(m)
            frontier.append(m)
    while frontier:
        new = []
        for b in frontier:
            for g in mats:
                c = b @ g
                if span.add(c.vec()):
                    basis.append(c)
                    new.append(c)
        frontier = new
    return basis


def algebra_dim_closure(mats) -> int:
    return len(algebra_basis_closure(mats))


algebra_dim = algebra_dim_closure


def self_centralizing_dim(a: Matrix, b: Matrix) -> int:
    """dim (C(a) intersected with C(b))."""
    _check_commuting((a, b))
    ca = [m.vec() for m in centralizer_basis(a)]
    cb = [m.vec() for m in centralizer_basis(b)]
    return len(intersection_vectors(ca, cb, a.field))


def double_centralizer_basis(x: Matrix) -> list[Matrix]:
    """Basis of the matrices commuting with every element of C(x)."""
    if not x.is_square:
        raise NotSquare(f"double centralizer of a {x.shape} matrix")
    n = x.nrows
    system = []
    for c in centralizer_basis(x):
        system.extend(_commutator_system(c))
    vecs = kernel_vectors(system, n * n, x.field)
    return [Matrix.from_vec(x.field, v, n, n) for v in vecs]


def powers_span_dim(x: Matrix) -> int:
    """dim span{I, x, ..., x^(n-1)}."""
    n = x.nrows
    vecs, p = [], Matrix.identity(x.field, n)
    for _ in range(n):
        vecs.append(p.vec())
        p = p @ x
    return rank_of_rows(vecs, x.field)


def same_span(first: Sequence[Matrix], second: Sequence[Matrix]) -> bool:
    if not first or not second:
        return not first and not second
    f = first[0].field
    a = [m.vec() for m in first]
    b = [m.vec() for m in second]
    ra, rb, rab = rank_of_rows(a, f), rank_of_rows(b, f), rank_of_rows(a + b, f)
    return ra == rb == rab


def algebra_index_set(lam: Partition) -> list[tuple[int, int]]:
    """Pairs (i, j) with 0 <= j <= k-1 and 0 <= i <= n_{j+1} - 1."""
    return [(i, j) for j, nj in enumerate(lam.parts) for i in range(nj)]


def express_in_algebra(c: Matrix, a: Matrix, b: Matrix, lam: Partition) -> dict[tuple[int, int], object]:
    """Coefficients c_ij with c = sum c_ij a^i b^j over the index set of ``lam``."""
    f, n = _check_commuting((a, b))
    if lam.n != n:
        raise DimensionMismatch(f"partition of {lam.n} for {n}x{n} matrices")
    if algebra_dim_closure((a, b)) != n:
        raise NotSelfCentralizing("dim F[a, b] < n")
    idx = algebra_index_set(lam)
    basis = [(a ** i) @ (b ** j) for i, j in idx]
    if rank_of_rows([m.vec() for m in basis], f) != n:
        raise NotSelfCentralizing("the monomials a^i b^j over the index set are dependent")
    system = Matrix._raw(f, list(zip(*[m.vec() for m in basis])))
    rhs = Matrix.column(f, c.vec())
    sol = solve_linear(system, rhs)
    if sol is None:
        raise NotInAlgebra("c is not a polynomial in a and b")
    coeffs = {ij: sol[k, 0] for k, ij in enumerate(idx)}
    recon = Matrix.zeros(f, n)
    for ij, m in zip(idx, basis):
        recon = recon + m.scale(coeffs[ij])
    assert recon == c
    return coeffs
