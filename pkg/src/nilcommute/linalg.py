"""Dense exact matrices, elimination, kernels and linear solving."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotInvertible, NotSquare
from .exactfield import FieldSpec


@dataclass(frozen=True, eq=True)
class Matrix:
    """Immutable dense matrix; ``rows`` holds raw field elements."""

    field: FieldSpec
    rows: tuple

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable]) -> "Matrix":
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged rows")
        return cls(field, rows)

    @classmethod
    def _raw(cls, field, rows) -> "Matrix":
        return cls(field, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls(field, tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, field: FieldSpec, n: int, i: int, j: int, ncols: int | None = None) -> "Matrix":
        """Matrix unit e_i e_j^T (0-based)."""
        ncols = n if ncols is None else ncols
        rows = [[field.zero] * ncols for _ in range(n)]
        rows[i][j] = field.one
        return cls._raw(field, rows)

    @classmethod
    def column(cls, field: FieldSpec, values: Iterable) -> "Matrix":
        return cls(field, tuple((field(v),) for v in values))

    @classmethod
    def basis_vector(cls, field: FieldSpec, n: int, i: int) -> "Matrix":
        return cls.column(field, [1 if k == i else 0 for k in range(n)])

    @classmethod
    def from_vec(cls, field: FieldSpec, vec: Sequence, nrows: int, ncols: int) -> "Matrix":
        if len(vec) != nrows * ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} is not {nrows}x{ncols}")
        return cls(field, tuple(tuple(vec[i * ncols:(i + 1) * ncols]) for i in range(nrows)))

    @classmethod
    def block(cls, field: FieldSpec, grid: Sequence[Sequence["Matrix | None"]],
              row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "Matrix":
        """Assemble from a grid of blocks; ``None`` stands for a zero block."""
        out = []
        for bi, rs in enumerate(row_sizes):
            strip = [[] for _ in range(rs)]
            for bj, cs in enumerate(col_sizes):
                blk = grid[bi][bj]
                if blk is None:
                    for r in strip:
                        r.extend([field.zero] * cs)
                    continue
                if blk.shape != (rs, cs):
                    raise DimensionMismatch(f"block ({bi},{bj}) is {blk.shape}, expected {(rs, cs)}")
                for r, src in zip(strip, blk.rows):
                    r.extend(src)
            out.extend(strip)
        return cls._raw(field, out)

    @classmethod
    def direct_sum(cls, field: FieldSpec, *mats: "Matrix") -> "Matrix":
        sizes_r = [m.nrows for m in mats]
        sizes_c = [m.ncols for m in mats]
        grid = [[m if i == j else None for j, m in enumerate(mats)] for i in range(len(mats))]
        return cls.block(field, grid, sizes_r, sizes_c)

    # -- shape and access ----------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def vec(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for r in self.rows for x in r)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.field, tuple(r[c0:c1] for r in self.rows[r0:r1]))

    def with_entry(self, i: int, j: int, value) -> "Matrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = self.field(value)
        return Matrix._raw(self.field, rows)

    # -- arithmetic ------------------------------------------------------------

    def _same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        add = self.field.add
        return Matrix(self.field, tuple(tuple(add(x, y) for x, y in zip(r, s))
                                        for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        sub = self.field.sub
        return Matrix(self.field, tuple(tuple(sub(x, y) for x, y in zip(r, s))
                                        for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, tuple(tuple(neg(x) for x in r) for r in self.rows))

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        mul = self.field.mul
        return Matrix(self.field, tuple(tuple(mul(c, x) for x in r) for r in self.rows))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        if self.field.is_rational:
            out = tuple(tuple(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0))
                              for c in cols) for r in self.rows)
        else:
            p = self.field.p
            out = tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in cols)
                        for r in self.rows)
        if not cols:
            out = tuple(() for _ in self.rows)
        return Matrix(self.field, out)

    __mul__ = __matmul__

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise NotSquare(f"power of {self.shape} matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def trace(self):
        t = self.field.zero
        for i in range(min(self.shape)):
            t = self.field.add(t, self.rows[i][i])
        return t

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def commutes_with(self, other: "Matrix") -> bool:
        return (self @ other) == (other @ self)

    def __str__(self):
        fmt = self.field.format
        cells = [[fmt(x) for x in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def mat_arith(a: Matrix, b: Matrix | object, op: str) -> Matrix:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a @ b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def polynomial_in(m: Matrix, coeffs: Sequence) -> Matrix:
    """Evaluate sum_k coeffs[k] m^k (Horner)."""
    f = m.field
    out = Matrix.zeros(f, m.nrows)
    ident = Matrix.identity(f, m.nrows)
    for c in reversed(list(coeffs)):
        out = out @ m + ident.scale(c)
    return out


# -- elimination ------------------------------------------------------------------


def rref(rows: Sequence[Sequence], field: FieldSpec) -> tuple[list[list], list[int]]:
    """Reduced row echelon form with leftmost pivots; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    nr = len(M)
    nc = len(M[0]) if M else 0
    pivots = []
    r = 0
    rational = field.is_rational
    p = field.p
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][c])
        if rational:
            M[r] = [x * inv for x in M[r]]
        else:
            M[r] = [x * inv % p for x in M[r]]
        prow = M[r]
        for i in range(nr):
            if i != r:
                a = M[i][c]
                if a != 0:
                    if rational:
                        M[i] = [x - a * y for x, y in zip(M[i], prow)]
                    else:
                        M[i] = [(x - a * y) % p for x, y in zip(M[i], prow)]
        pivots.append(c)
        r += 1
    return M, pivots


def _bareiss_rank(rows: list[list[int]]) -> int:
    M = [r for r in rows if any(r)]
    nr = len(M)
    if nr == 0:
        return 0
    nc = len(M[0])
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        prow = M[r]
        pv = prow[c]
        for i in range(r + 1, nr):
            row = M[i]
            a = row[c]
            if a == 0:
                M[i] = [pv * x // prev for x in row]
            else:
                M[i] = [(pv * x - a * y) // prev for x, y in zip(row, prow)]
        prev = pv
        r += 1
        if r == nr:
            break
    return r


def _modp_rank(rows: list[list[int]], p: int) -> int:
    M = [list(r) for r in rows if any(r)]
    nr = len(M)
    if nr == 0:
        return 0
    nc = len(M[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        prow = [x * inv % p for x in M[r]]
        M[r] = prow
        for i in range(r + 1, nr):
            a = M[i][c]
            if a:
                M[i] = [(x - a * y) % p for x, y in zip(M[i], prow)]
        r += 1
        if r == nr:
            break
    return r


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def rank_of_rows(rows: Sequence[Sequence], field: FieldSpec) -> int:
    if not rows:
        return 0
    if field.is_rational:
        return _bareiss_rank(_integer_rows(rows))
    return _modp_rank([list(r) for r in rows], field.p)


def rank(m: Matrix) -> int:
    """Exact rank: fraction-free elimination over Q, Gaussian elimination over F_p."""
    rows = m.rows
    # Eliminate along the shorter dimension.
    if m.nrows < m.ncols:
        rows = m.T.rows
    return rank_of_rows(rows, m.field)


def rank_naive(m: Matrix) -> int:
    """Rank by plain Gauss-Jordan over Fractions (cross-check for :func:`rank`)."""
    return len(rref(m.rows, m.field)[1])


def _kernel_from_rref(R, pivots, ncols, field) -> list[tuple]:
    pivset = set(pivots)
    out = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(R[i][free])
        out.append(tuple(v))
    return out


def kernel_vectors(rows: Sequence[Sequence], ncols: int, field: FieldSpec) -> list[tuple]:
    """Null space of the matrix with the given rows, as raw tuples."""
    if not rows:
        return [tuple(field.one if i == j else field.zero for i in range(ncols))
                for j in range(ncols)]
    R, pivots = rref(rows, field)
    return _kernel_from_rref(R, pivots, ncols, field)


def kernel_basis(m: Matrix) -> list[Matrix]:
    """Basis of {v : m v = 0} as column matrices, one per free column, in column order."""
    return [Matrix.column(m.field, v) for v in kernel_vectors(m.rows, m.ncols, m.field)]


def _as_vec(v) -> tuple:
    if isinstance(v, Matrix):
        if v.ncols != 1:
            raise DimensionMismatch(f"expected a column vector, got {v.shape}")
        return v.col(0)
    return tuple(v)


def row_space_basis(vectors: Sequence[Sequence], field: FieldSpec) -> list[tuple]:
    if not vectors:
        return []
    R, pivots = rref(vectors, field)
    return [tuple(R[i]) for i in range(len(pivots))]


def intersection_vectors(b1: Sequence[Sequence], b2: Sequence[Sequence], field: FieldSpec) -> list[tuple]:
    if not b1 or not b2:
        return []
    length = len(b1[0])
    if any(len(v) != length for v in (*b1, *b2)):
        raise DimensionMismatch("vectors of different lengths")
    k1 = len(b1)
    # columns b1_i and -b2_j; kernel (x, y) gives B1 x = B2 y
    cols = list(b1) + [tuple(field.neg(x) for x in v) for v in b2]
    system = [[c[r] for c in cols] for r in range(length)]
    kern = kernel_vectors(system, len(cols), field)
    images = []
    for w in kern:
        acc = [field.zero] * length
        for coeff, v in zip(w[:k1], b1):
            if coeff != 0:
                acc = [field.add(a, field.mul(coeff, x)) for a, x in zip(acc, v)]
        images.append(tuple(acc))
    return row_space_basis(images, field)


def subspace_intersection(b1: Sequence[Matrix], b2: Sequence[Matrix]) -> list[Matrix]:
    """Basis of span(b1) intersected with span(b2) (column vectors)."""
    fields = {v.field for v in (*b1, *b2) if isinstance(v, Matrix)}
    if len(fields) > 1:
        raise FieldMismatch("vectors over different fields")
    if not fields:
        return []
    field = fields.pop()
    vecs = intersection_vectors([_as_vec(v) for v in b1], [_as_vec(v) for v in b2], field)
    return [Matrix.column(field, v) for v in vecs]


def nilpotency_index(m: Matrix) -> int | None:
    """Least k with m^k = 0, or None when m is not nilpotent."""
    if not m.is_square:
        raise NotSquare(f"nilpotency of a {m.shape} matrix")
    n = m.nrows
    if n == 0 or m.is_zero():
        return 1 if n else 0
    if not is_nilpotent(m):
        return None
    power = m
    k = 1
    while not power.is_zero():
        power = power @ m
        k += 1
    return k


def is_nilpotent(m: Matrix) -> bool:
    """m^n = 0, decided by repeated squaring up to exponent >= n."""
    if not m.is_square:
        raise NotSquare(f"nilpotency of a {m.shape} matrix")
    n = m.nrows
    power, e = m, 1
    while e < n:
        if power.is_zero():
            return True
        power = power @ power
        e *= 2
    return power.is_zero()


def solve_linear(a: Matrix, b: Matrix) -> Matrix | None:
    """One solution x of a x = b (free variables 0), or None when inconsistent."""
    a._same(b)
    if a.nrows != b.nrows:
        raise DimensionMismatch(f"{a.shape} x = {b.shape}")
    f = a.field
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    R, pivots = rref(aug, f)
    if any(pc >= a.ncols for pc in pivots):
        return None
    x = [[f.zero] * b.ncols for _ in range(a.ncols)]
    for i, pc in enumerate(pivots):
        x[pc] = R[i][a.ncols:]
    return Matrix._raw(f, x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise NotSquare(f"inverse of a {m.shape} matrix")
    f = m.field
    n = m.nrows
    aug = [list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(m.rows)]
    R, pivots = rref(aug, f)
    if len(pivots) < n or (n and pivots[n - 1] != n - 1):
        raise NotInvertible("singular matrix")
    return Matrix._raw(f, [r[n:] for r in R])


class SpanBuilder:
    """Incrementally maintained echelon basis of a span of vectors."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self._rows: list[tuple[int, list]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list:
        f = self.field
        v = list(v)
        for pc, row in self._rows:
            a = v[pc]
            if a != 0:
                v = [f.sub(x, f.mul(a, y)) for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        """Add ``v``; return True iff it enlarged the span."""
        f = self.field
        v = self.reduce(v)
        pc = next((i for i, x in enumerate(v) if x != 0), None)
        if pc is None:
            return False
        inv = f.inv(v[pc])
        self._rows.append((pc, [f.mul(inv, x) for x in v]))
        return True

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(v))
