"""Nonzero nilpotent commutants for square-zero pairs A = [[0,I,0],[0,0,0],[0,0,0]],
B = [[0,W,V],[0,0,0],[0,0,0]] (block sizes l, l, m).

The normalization conjugates B by invertible matrices [[Q,0,0],[0,Q,0],[0,T,I]] of C(A)
until [W V] reaches a shift-like normal form; the commutant found there is conjugated back.
"""

from __future__ import annotations

from ..errors import BadShape, DimensionMismatch, RankTooHigh
from ..exactfield import FieldSpec
from ..linalg import Matrix, inverse, is_nilpotent, kernel_vectors, rank


def squarezero_pair(W: Matrix, V: Matrix) -> tuple[Matrix, Matrix]:
    l, m = V.shape
    if W.shape != (l, l):
        raise DimensionMismatch(f"W must be {l}x{l}, got {W.shape}")
    f = W.field
    sizes = (l, l, m)
    a = Matrix.block(f, [[None, Matrix.identity(f, l), None], [None] * 3, [None] * 3], sizes, sizes)
    b = Matrix.block(f, [[None, W, V], [None] * 3, [None] * 3], sizes, sizes)
    return a, b


def _block_parts(b: Matrix, l: int, m: int) -> tuple[Matrix, Matrix]:
    return b.submatrix(0, l, l, 2 * l), b.submatrix(0, l, 2 * l, 2 * l + m)


def _complete_columns(cols: Matrix) -> Matrix:
    """[C | cols] invertible, C made of the first standard vectors outside the span."""
    f = cols.field
    h, m = cols.shape
    chosen = []
    current = [cols.col(j) for j in range(m)]
    for i in range(h):
        if len(chosen) + m == h:
            break
        e = tuple(f.one if k == i else f.zero for k in range(h))
        trial = current + [e]
        if rank(Matrix._raw(f, trial)) == len(trial):
            current = trial
            chosen.append(e)
    vecs = chosen + [cols.col(j) for j in range(m)]
    return Matrix._raw(f, list(zip(*vecs)))


def _nilpotent_killed_by(w2: Matrix) -> Matrix:
    """Nonzero nilpotent N' (m x m, m >= 2) with w2 N' = 0, for non-injective w2."""
    f = w2.field
    m = w2.ncols
    u = kernel_vectors(w2.rows, m, f)[0]
    zero_at = next((j for j, x in enumerate(u) if x == 0), None)
    if zero_at is not None:
        w = [f.one if j == zero_at else f.zero for j in range(m)]
    else:
        w = [f.zero] * m
        w[0], w[1] = u[1], f.neg(u[0])
    return Matrix._raw(f, [[f.mul(x, y) for y in w] for x in u])


def _repeat_diag(f: FieldSpec, lead: int, block: Matrix, copies: int) -> Matrix:
    mats = ([Matrix.zeros(f, lead)] if lead else []) + [block] * copies
    return Matrix.direct_sum(f, *mats) if mats else Matrix.zeros(f, 0)


def _normalize_step(W: Matrix, V: Matrix, t: int) -> Matrix:
    """Conjugator P advancing the normal form from stage t to t+1 (W2 injective)."""
    f = W.field
    l, m = V.shape
    h = l - t * m
    M = Matrix.block(f, [[W, V]], [l], [l, m])
    W1 = M.submatrix(0, h, 0, h)
    W2 = M.submatrix(0, h, h, h + m)
    S = _complete_columns(W2)
    Sinv = inverse(S)
    conj = Sinv @ W1 @ S
    R = -conj.submatrix(h - m, h, 0, h)
    hat1 = conj + Sinv @ W2 @ R
    hat2 = Sinv @ W2
    sizes = [h] + [m] * t
    powers = [Matrix.identity(f, h)]
    for _ in range(t):
        powers.append(powers[-1] @ hat1)
    grid = [[None] * (t + 1) for _ in range(t + 1)]
    grid[0][0] = S
    for r in range(1, t + 1):
        grid[r][0] = R @ powers[r - 1]
        for c in range(1, r):
            grid[r][c] = R @ powers[r - 1 - c] @ hat2
        grid[r][r] = Matrix.identity(f, m)
    Q = Matrix.block(f, grid, sizes, sizes)
    T = Matrix.block(f, [[R @ powers[t]] + [R @ powers[t - c] @ hat2 for c in range(1, t + 1)]],
                     [m], sizes)
    full = (l, l, m)
    return Matrix.block(f, [[Q, None, None], [None, Q, None], [None, T, Matrix.identity(f, m)]],
                        full, full)


def _in_normal_form(W: Matrix, V: Matrix, t: int) -> bool:
    """Block rows 1..t of [W V] (below the leading l - t m rows) form the shift [0 .. I .. ]."""
    f = W.field
    l, m = V.shape
    h = l - t * m
    M = Matrix.block(f, [[W, V]], [l], [l, m])
    for r in range(t):
        for i in range(m):
            row = M.rows[h + r * m + i]
            target = h + (r + 1) * m + i
            for j, x in enumerate(row):
                if x != (f.one if j == target else f.zero):
                    return False
    return True


def squarezero_commutant(W: Matrix, V: Matrix, f: FieldSpec | None = None) -> Matrix:
    """Nonzero nilpotent N = [[N1,0,0],[0,N1,0],[0,N2,N3]] commuting with A and B."""
    f = f or W.field
    l, m = V.shape
    if m < 2:
        raise BadShape(f"this construction needs m >= 2, got m={m}")
    a0, b0 = squarezero_pair(W, V)
    n = 2 * l + m
    if rank(V) < m:
        x = kernel_vectors(V.rows, m, f)[0]
        X = Matrix._raw(f, [[xi if j == 0 else f.zero for j in range(l)] for xi in x])
        N = Matrix.block(f, [[None] * 3, [None] * 3, [None, X, None]], (l, l, m), (l, l, m))
        return _verified(N, a0, b0)
    P_total = Matrix.identity(f, n)
    b = b0
    t = 0
    while True:
        Wc, Vc = _block_parts(b, l, m)
        h = l - t * m
        if h == 0:
            Np = Matrix.unit(f, m, 0, 1)
            break
        W2 = Matrix.block(f, [[Wc, Vc]], [l], [l, m]).submatrix(0, h, h, h + m)
        if rank(W2) < m:
            Np = _nilpotent_killed_by(W2)
            break
        P = _normalize_step(Wc, Vc, t)
        b = inverse(P) @ b @ P
        P_total = P_total @ P
        t += 1
        Wc, Vc = _block_parts(b, l, m)
        if not _in_normal_form(Wc, Vc, t):
            raise AssertionError(f"normalization failed at stage {t}")
    Npp = _repeat_diag(f, l - t * m, Np, t)
    N = Matrix.direct_sum(f, Npp, Npp, Np)
    return _verified(P_total @ N @ inverse(P_total), a0, b0)


def _verified(N: Matrix, a: Matrix, b: Matrix) -> Matrix:
    if N.is_zero() or not is_nilpotent(N) or not N.commutes_with(a) or not N.commutes_with(b):
        raise AssertionError("constructed commutant fails its postconditions")
    return N


def squarezero_commutant_m1(E: Matrix, F: Matrix, f: FieldSpec | None = None) -> Matrix:
    """m = 1 case: N = [[y x^T,0,0],[0,y x^T,0],[0,zeta x^T,0]] for rank [E F] <= l-1."""
    f = f or E.field
    l = E.nrows
    if E.shape != (l, l) or F.shape != (l, 1):
        raise DimensionMismatch("E must be l x l and F l x 1")
    EF = Matrix.block(f, [[E, F]], [l], [l, 1])
    if rank(EF) > l - 1:
        raise RankTooHigh(f"rank [E F] = {rank(EF)} > l - 1 = {l - 1}")
    x = kernel_vectors(EF.T.rows, l, f)[0]
    system = [list(r) for r in EF.rows] + [list(x) + [f.zero]]
    sol = kernel_vectors(system, l + 1, f)[0]
    y, zeta = sol[:l], sol[l]
    yx = Matrix._raw(f, [[f.mul(yi, xj) for xj in x] for yi in y])
    zx = Matrix._raw(f, [[f.mul(zeta, xj) for xj in x]])
    sizes = (l, l, 1)
    N = Matrix.block(f, [[yx, None, None], [None, yx, None], [None, zx, None]], sizes, sizes)
    a, b = squarezero_pair(E, F)
    return _verified(N, a, b)
