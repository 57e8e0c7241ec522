"""Jordan types, centralizers and the structured descriptions of centralizer elements."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import (
    BadOrders,
    DimensionMismatch,
    NotInCentralizer,
    NotNilpotent,
    NotSquare,
)
from .exactfield import FieldSpec
from .linalg import Matrix, is_nilpotent, kernel_vectors, rank


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; the constructor sorts and validates."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"partition parts must be positive and nonempty: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n, in reverse lexicographic order."""

    def gen(rest, largest):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, largest), 0, -1):
            for tail in gen(rest - k, k):
                yield (k,) + tail

    for parts in gen(n, n):
        yield Partition(parts)


@dataclass(frozen=True)
class GroupedJordan:
    """Jordan blocks grouped by order: ``sizes`` strictly decreasing, with multiplicities."""

    sizes: tuple
    multiplicities: tuple

    def __post_init__(self):
        sizes, mults = tuple(self.sizes), tuple(self.multiplicities)
        if len(sizes) != len(mults) or not sizes:
            raise ValueError("sizes and multiplicities must be nonempty and of equal length")
        if any(a <= b for a, b in zip(sizes, sizes[1:])) or sizes[-1] < 1:
            raise ValueError(f"sizes must be strictly decreasing positive integers: {sizes}")
        if any(s < 1 for s in mults):
            raise ValueError(f"multiplicities must be positive: {mults}")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "multiplicities", mults)

    @classmethod
    def from_partition(cls, lam: Partition) -> "GroupedJordan":
        sizes = sorted(set(lam.parts), reverse=True)
        return cls(tuple(sizes), tuple(lam.parts.count(m) for m in sizes))

    @property
    def n(self) -> int:
        return sum(m * s for m, s in zip(self.sizes, self.multiplicities))

    @property
    def groups(self) -> int:
        return len(self.sizes)

    def offsets(self) -> list[int]:
        out, pos = [], 0
        for m, s in zip(self.sizes, self.multiplicities):
            out.append(pos)
            pos += m * s
        return out

    def param_count(self, i: int, j: int) -> int:
        return min(self.sizes[i], self.sizes[j])


def jordan_matrix(lam: Partition, f: FieldSpec) -> Matrix:
    """Block-diagonal nilpotent Jordan matrix with 1s on each block's superdiagonal."""
    n = lam.n
    rows = [[f.zero] * n for _ in range(n)]
    pos = 0
    for size in lam.parts:
        for k in range(size - 1):
            rows[pos + k][pos + k + 1] = f.one
        pos += size
    return Matrix._raw(f, rows)


def grouped_jordan_matrix(g: GroupedJordan, f: FieldSpec) -> Matrix:
    """Nilpotent matrix in grouped form: group i is an m_i x m_i block array with I_{s_i}
    on the block superdiagonal."""
    n = g.n
    rows = [[f.zero] * n for _ in range(n)]
    for off, m, s in zip(g.offsets(), g.sizes, g.multiplicities):
        for r in range(m - 1):
            for k in range(s):
                rows[off + r * s + k][off + (r + 1) * s + k] = f.one
    return Matrix._raw(f, rows)


def kernel_dim_of_type(lam: Partition) -> int:
    return len(lam.parts)


def is_r_regular(m: Matrix, r: int) -> bool:
    if not m.is_square:
        raise NotSquare(f"regularity of a {m.shape} matrix")
    if not is_nilpotent(m):
        raise NotNilpotent("r-regularity is only decided for nilpotent matrices")
    return m.ncols - rank(m) <= r


def _commutator_system(a: Matrix) -> list[list]:
    """Rows of the linear map vec(X) -> vec(aX - Xa), X row-major."""
    f = a.field
    n = a.nrows
    system = []
    for i in range(n):
        for j in range(n):
            row = [f.zero] * (n * n)
            # (aX)_ij = sum_k a_ik X_kj
            for k in range(n):
                if a.rows[i][k] != 0:
                    row[k * n + j] = f.add(row[k * n + j], a.rows[i][k])
            # (Xa)_ij = sum_k X_ik a_kj
            for k in range(n):
                if a.rows[k][j] != 0:
                    row[i * n + k] = f.sub(row[i * n + k], a.rows[k][j])
            if any(x != 0 for x in row):
                system.append(row)
    return system


def centralizer_basis(a: Matrix) -> list[Matrix]:
    """Basis of C(a) from the kernel of X -> aX - Xa; order follows free columns of vec(X)."""
    if not a.is_square:
        raise NotSquare(f"centralizer of a {a.shape} matrix")
    n = a.nrows
    vecs = kernel_vectors(_commutator_system(a), n * n, a.field)
    return [Matrix.from_vec(a.field, v, n, n) for v in vecs]


def centralizer_dim_formula(lam: Partition) -> int:
    return sum(min(x, y) for x in lam.parts for y in lam.parts)


def nilpotent_centralizer_dim(lam: Partition) -> int:
    return centralizer_dim_formula(lam) - len(lam.parts)


# -- grouped (block Toeplitz) description of C(A) ----------------------------------


def _zero_params(g: GroupedJordan, f: FieldSpec) -> dict:
    out = {}
    for i, si in enumerate(g.multiplicities):
        for j, sj in enumerate(g.multiplicities):
            out[i, j] = [Matrix.zeros(f, si, sj) for _ in range(g.param_count(i, j))]
    return out


def grouped_centralizer_element(g: GroupedJordan, blocks: Mapping[tuple, Sequence[Matrix]],
                                f: FieldSpec) -> Matrix:
    """Assemble a centralizer element from Toeplitz parameters.

    ``blocks[i, j]`` lists B_ij^(1), ..., B_ij^(min(m_i, m_j)), each s_i x s_j; missing
    keys mean zero.  Block (r, c) of B_ij is B_ij^(c - r - off + 1) with
    off = max(0, m_j - m_i), or zero when that index is below 1.
    """
    n = g.n
    rows = [[f.zero] * n for _ in range(n)]
    offs = g.offsets()
    for (i, j), params in blocks.items():
        mi, mj = g.sizes[i], g.sizes[j]
        si, sj = g.multiplicities[i], g.multiplicities[j]
        if len(params) > g.param_count(i, j):
            raise DimensionMismatch(f"block ({i},{j}) takes at most {g.param_count(i, j)} parameters")
        for k, P in enumerate(params):
            if P.shape != (si, sj):
                raise DimensionMismatch(f"parameter B_{i}{j}^({k + 1}) is {P.shape}, expected {(si, sj)}")
        shift = max(0, mj - mi)
        for r in range(mi):
            for c in range(mj):
                idx = c - r - shift
                if 0 <= idx < len(params):
                    P = params[idx]
                    for a in range(si):
                        row = rows[offs[i] + r * si + a]
                        for b in range(sj):
                            row[offs[j] + c * sj + b] = P.rows[a][b]
    out = Matrix._raw(f, rows)
    if not out.commutes_with(grouped_jordan_matrix(g, f)):
        raise AssertionError("assembled Toeplitz matrix does not commute with the grouped Jordan matrix")
    return out


def random_centralizer_element(g: GroupedJordan, f: FieldSpec, rng: random.Random,
                               nilpotent: bool | None = None, bound: int = 3) -> Matrix:
    """Random element of C(A) in grouped form.

    With ``nilpotent=True`` every diagonal parameter B_ii^(1) is strictly upper triangular;
    with ``False`` they are drawn freely (almost always non-nilpotent); ``None`` picks per block.
    """
    params = {}
    for i, si in enumerate(g.multiplicities):
        for j, sj in enumerate(g.multiplicities):
            lst = []
            for k in range(g.param_count(i, j)):
                rows = [[f.random_element(rng, bound) for _ in range(sj)] for _ in range(si)]
                if i == j and k == 0:
                    mode = nilpotent if nilpotent is not None else rng.random() < 0.5
                    if mode:
                        for a in range(si):
                            for b in range(a + 1):
                                rows[a][b] = f.zero
                lst.append(Matrix._raw(f, rows))
            params[i, j] = lst
    return grouped_centralizer_element(g, params, f)


def diagonal_parameter_blocks(g: GroupedJordan, m: Matrix) -> list[Matrix]:
    """B_11^(1), ..., B_ll^(1): the leading s_i x s_i block of each diagonal group."""
    out = []
    for off, s in zip(g.offsets(), g.multiplicities):
        out.append(m.submatrix(off, off + s, off, off + s))
    return out


def basili_nilpotency_check(g: GroupedJordan, m: Matrix) -> bool:
    """Nilpotency of a centralizer element read off its diagonal Toeplitz parameters."""
    a = grouped_jordan_matrix(g, m.field)
    if m.shape != a.shape or not m.commutes_with(a):
        raise NotInCentralizer("matrix does not commute with the grouped Jordan matrix")
    return all(is_nilpotent(b) for b in diagonal_parameter_blocks(g, m))


# -- two-block polynomial representation ----------------------------------------------


def _trunc_mul(a: Sequence, b: Sequence, length: int, f: FieldSpec) -> tuple:
    out = [f.zero] * length
    for i, x in enumerate(a):
        if x == 0 or i >= length:
            continue
        for j, y in enumerate(b):
            if i + j >= length:
                break
            out[i + j] = f.add(out[i + j], f.mul(x, y))
    return tuple(out)


def _padd(a: Sequence, b: Sequence, f: FieldSpec) -> tuple:
    return tuple(f.add(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class TwoBlockPolyRep:
    """Element [[p, t^(k-m) q], [r, s]] of C(J_k + J_m): p mod t^k, q, r, s mod t^m.

    Coefficient tuples are ascending in t.
    """

    field: FieldSpec
    k: int
    m: int
    p: tuple
    q: tuple
    r: tuple
    s: tuple

    def __post_init__(self):
        if not self.k > self.m >= 1:
            raise BadOrders(f"need k > m >= 1, got k={self.k}, m={self.m}")
        for name, length in (("p", self.k), ("q", self.m), ("r", self.m), ("s", self.m)):
            coeffs = tuple(self.field(x) for x in getattr(self, name))
            if len(coeffs) != length:
                raise DimensionMismatch(f"{name} needs {length} coefficients, got {len(coeffs)}")
            object.__setattr__(self, name, coeffs)

    def __mul__(self, other: "TwoBlockPolyRep") -> "TwoBlockPolyRep":
        if (other.k, other.m, other.field) != (self.k, self.m, self.field):
            raise DimensionMismatch("representations of different centralizers")
        f, k, m = self.field, self.k, self.m
        d = k - m
        # t^d q * r' lives mod t^k: shift q r' (mod t^m) up by d.
        qr = _trunc_mul(self.q, other.r, m, f)
        p = _padd(_trunc_mul(self.p, other.p, k, f), (f.zero,) * d + qr, f)
        q = _padd(_trunc_mul(self.p, other.q, m, f), _trunc_mul(self.q, other.s, m, f), f)
        r = _padd(_trunc_mul(self.r, other.p, m, f), _trunc_mul(self.s, other.r, m, f), f)
        rq = _trunc_mul(self.r, other.q, m, f)
        shifted = ((f.zero,) * d + rq)[:m]
        s = _padd(shifted, _trunc_mul(self.s, other.s, m, f), f)
        return TwoBlockPolyRep(f, k, m, p, q, r, s)


def polyrep_encode(k: int, m: int, x: Matrix) -> TwoBlockPolyRep:
    if not k > m >= 1:
        raise BadOrders(f"need k > m >= 1, got k={k}, m={m}")
    f = x.field
    a = jordan_matrix(Partition.of(k, m), f)
    if x.shape != a.shape or not x.commutes_with(a):
        raise NotInCentralizer("matrix does not commute with J_k + J_m")
    n = k + m
    # Generators: e_k (index k-1) for the first block, f_m (index n-1) for the second;
    # t^j e_k = e_{k-j}, t^j f_m = f_{m-j}.
    p = [x[k - 1 - j, k - 1] for j in range(k)]
    r = [x[n - 1 - j, k - 1] for j in range(m)]
    q = [x[m - 1 - j, n - 1] for j in range(m)]
    s = [x[n - 1 - j, n - 1] for j in range(m)]
    return TwoBlockPolyRep(f, k, m, tuple(p), tuple(q), tuple(r), tuple(s))


def polyrep_decode(rep: TwoBlockPolyRep) -> Matrix:
    f, k, m = rep.field, rep.k, rep.m
    n = k + m
    rows = [[f.zero] * n for _ in range(n)]
    for i in range(k):  # column of t^i e_k
        col = k - 1 - i
        for j, c in enumerate(rep.p):
            if i + j < k:
                rows[k - 1 - (i + j)][col] = c
        for j, c in enumerate(rep.r):
            if i + j < m:
                rows[n - 1 - (i + j)][col] = c
    for i in range(m):  # column of t^i f_m
        col = n - 1 - i
        for j, c in enumerate(rep.q):
            if i + j < m:
                rows[m - 1 - (i + j)][col] = c
        for j, c in enumerate(rep.s):
            if i + j < m:
                rows[n - 1 - (i + j)][col] = c
    return Matrix._raw(f, rows)
