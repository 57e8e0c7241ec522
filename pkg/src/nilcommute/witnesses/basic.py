"""Explicit witnesses: the four-generator algebra, Basili pairs and the square-zero
perturbation pair for one nonzero Jordan block."""

from __future__ import annotations

from ..algebra import NilTuple
from ..errors import BadShape, BadSize, ZeroParameter
from ..exactfield import FieldSpec, Scalar
from ..jordan import Partition, jordan_matrix
from ..linalg import Matrix


def gerstenhaber_quadruple(n: int, f: FieldSpec) -> NilTuple:
    """(J_{n-2} + J_2, e_1 e_n^T, e_{n-1} e_{n-2}^T, e_{n-1} e_n^T); its algebra has dimension n+1."""
    if n < 4:
        raise BadSize(f"the construction needs n >= 4, got {n}")
    rows = [[f.zero] * n for _ in range(n)]
    for i in range(n - 3):
        rows[i][i + 1] = f.one
    rows[n - 2][n - 1] = f.one
    a1 = Matrix._raw(f, rows)
    a2 = Matrix.unit(f, n, 0, n - 1)
    a3 = Matrix.unit(f, n, n - 2, n - 3)
    a4 = Matrix.unit(f, n, n - 2, n - 1)
    return NilTuple((a1, a2, a3, a4))


def basili_pair(lam: Partition, f: FieldSpec) -> tuple[Matrix, Matrix]:
    """a = J(lam); b has truncated identities K_i (n_i x n_{i+1}) on the block superdiagonal."""
    a = jordan_matrix(lam, f)
    n = lam.n
    rows = [[f.zero] * n for _ in range(n)]
    starts = [sum(lam.parts[:i]) for i in range(len(lam.parts))]
    for i in range(len(lam.parts) - 1):
        for k in range(lam.parts[i + 1]):
            rows[starts[i] + k][starts[i + 1] + k] = f.one
    return a, Matrix._raw(f, rows)


def _field_of(f, *xs) -> FieldSpec:
    for x in xs:
        if isinstance(x, Scalar):
            return x.field
    return f if f is not None else FieldSpec.rationals()


def _square_zero_blocks(s, t, f: FieldSpec) -> tuple[list, list]:
    """X and X' with beta = s^2, gamma = t^2 so sqrt(beta) = s and sqrt(gamma) = t."""
    mul, neg = f.mul, f.neg
    beta, gamma = mul(s, s), mul(t, t)
    x = [[mul(beta, t), mul(beta, s)],
         [neg(mul(gamma, s)), neg(mul(beta, t))]]
    xp = [[neg(mul(gamma, s)), neg(mul(beta, t))],
          [mul(gamma, t), mul(gamma, s)]]
    return x, xp


def _check_shape(k: int, n: int):
    if not (1 <= k <= n - 2):
        raise BadShape(f"need 1 <= k <= n-2, got k={k}, n={n}")


def prop1nonzero_pair(k: int, n: int, s, t, f: FieldSpec | None = None) -> tuple[Matrix, Matrix]:
    """The commuting square-zero pair (Y, Z) = (0_k + X, 0_k + X')."""
    f = _field_of(f, s, t)
    _check_shape(k, n)
    s, t = f(s), f(t)
    if s == 0 or t == 0:
        raise ZeroParameter("s and t must be nonzero")
    x, xp = _square_zero_blocks(s, t, f)
    y = [[f.zero] * n for _ in range(n)]
    z = [[f.zero] * n for _ in range(n)]
    for i in range(2):
        for j in range(2):
            y[k + i][k + j] = x[i][j]
            z[k + i][k + j] = xp[i][j]
    return Matrix._raw(f, y), Matrix._raw(f, z)


def prop1nonzero_inner(k: int, n: int, s, t, f: FieldSpec | None = None) -> tuple[Matrix, Matrix]:
    """The (n-k) x (n-k) blocks X, X' themselves."""
    y, z = prop1nonzero_pair(k, n, s, t, f)
    return y.submatrix(k, n, k, n), z.submatrix(k, n, k, n)


def prop1nonzero_base(k: int, n: int, s, t, f: FieldSpec | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """The normalized triple (A, B, C) being perturbed.

    A = J_k + 0, B = [[0, e_1 e_1^T], [beta e_1 e_k^T, 0]], C = [[0, e_1 e_2^T], [-gamma e_2 e_k^T, 0]].
    """
    f = _field_of(f, s, t)
    _check_shape(k, n)
    if k < 2:
        raise BadShape("the normalized triple needs k >= 2")
    s, t = f(s), f(t)
    beta, gamma = f.mul(s, s), f.mul(t, t)
    a = jordan_matrix(Partition((k,) + (1,) * (n - k)), f)
    b = Matrix.unit(f, n, 0, k).with_entry(k, k - 1, beta)
    c = Matrix.unit(f, n, 0, k + 1).with_entry(k + 1, k - 1, f.neg(gamma))
    return a, b, c
