"""Closure dimensions, reduction transforms, samplers of the 1-regular locus, one-parameter
families and the certificates built on them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from ._parallel import pmap, trial_seed
from .algebra import NilTuple, _check_commuting, algebra_dim
from .certificate import FAIL, INCONCLUSIVE, PASS, Certificate
from .errors import BadQ, ConstantTerm, DimensionMismatch, NotInN2, NotInvertible
from .exactfield import FieldSpec
from .jordan import Partition, centralizer_dim_formula, is_r_regular, jordan_matrix
from .linalg import Matrix, inverse, is_nilpotent, polynomial_in, rank

__all__ = [
    "Certificate", "ParamFamily", "certify_reducible", "curve_verify", "d2_closure_dim",
    "flip_matrix", "inverse_transform", "is_in_D2", "pair_transform", "r1_closure_dim",
    "r1_parametrize", "regularization_family", "sample_R1", "tuple_transform",
]


def r1_closure_dim(d: int, n: int) -> int:
    """Dimension of the closure of the d-tuples with a 1-regular first matrix."""
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    return (n + d - 1) * (n - 1)


def d2_closure_dim(lam: Partition) -> int:
    return centralizer_dim_formula(lam) - len(lam.parts) + lam.n - 1


def flip_matrix(n: int, f: FieldSpec) -> Matrix:
    """Anti-diagonal permutation; its conjugation sends J_n^T to J_n."""
    return Matrix._raw(f, [[f.one if i + j == n - 1 else f.zero for j in range(n)] for i in range(n)])


# --- transforms of tuples -------------------------------------------------------------

TRANSFORMS = ("conjugate", "span_change", "poly_shift", "transpose", "twisted_transpose")


def _as_tuple(t) -> tuple:
    return tuple(t.mats) if isinstance(t, NilTuple) else tuple(t)


def tuple_transform(t, kind: str, *, P: Matrix | None = None, g: Matrix | None = None,
                    polys: Sequence[Sequence] | None = None, Q: Matrix | None = None) -> NilTuple:
    """Apply one of the reduction transforms; the result is validated as a NilTuple.

    conjugate: A_i -> P^-1 A_i P.  span_change: A_i -> sum_j g_ij A_j.
    poly_shift: A_1 fixed, A_i -> A_i - p_i(A_1) (p_i ascending coefficients, p_i(0) = 0).
    transpose: A_i -> A_i^T.  twisted_transpose: A_i -> Q^-1 A_i^T Q, needs Q^-1 A_1^T Q = A_1.
    """
    mats = _as_tuple(t)
    f = mats[0].field
    if kind == "conjugate":
        Pinv = inverse(P)
        out = [Pinv @ m @ P for m in mats]
    elif kind == "span_change":
        if g.shape != (len(mats), len(mats)):
            raise DimensionMismatch(f"g must be {len(mats)}x{len(mats)}")
        if rank(g) < g.nrows:
            raise NotInvertible("span change matrix is singular")
        out = []
        for i in range(len(mats)):
            acc = Matrix.zeros(f, mats[0].nrows)
            for j, m in enumerate(mats):
                acc = acc + m.scale(g[i, j])
            out.append(acc)
    elif kind == "poly_shift":
        polys = list(polys)
        if len(polys) != len(mats) - 1:
            raise DimensionMismatch(f"need {len(mats) - 1} polynomials")
        for p in polys:
            if p and f(p[0]) != 0:
                raise ConstantTerm("shift polynomials must have zero constant term")
        out = [mats[0]] + [m - polynomial_in(mats[0], [f(c) for c in p]) for m, p in zip(mats[1:], polys)]
    elif kind == "transpose":
        out = [m.T for m in mats]
    elif kind == "twisted_transpose":
        Qinv = inverse(Q)
        if Qinv @ mats[0].T @ Q != mats[0]:
            raise BadQ("Q^-1 A_1^T Q != A_1")
        out = [Qinv @ m.T @ Q for m in mats]
    else:
        raise ValueError(f"unknown transform {kind!r}")
    return NilTuple(tuple(out))


def inverse_transform(kind: str, **params) -> tuple[str, dict]:
    """(kind, params) undoing ``tuple_transform(., kind, **params)``."""
    if kind == "conjugate":
        return kind, {"P": inverse(params["P"])}
    if kind == "span_change":
        return kind, {"g": inverse(params["g"])}
    if kind == "poly_shift":
        return kind, {"polys": [[-c for c in p] for p in params["polys"]]}
    if kind == "transpose":
        return kind, {}
    if kind == "twisted_transpose":
        return kind, {"Q": params["Q"].T}
    raise ValueError(f"unknown transform {kind!r}")


def _in_n2(a: Matrix, b: Matrix, c: Matrix) -> bool:
    return (b.commutes_with(a) and c.commutes_with(a) and b.commutes_with(c)
            and is_nilpotent(b) and is_nilpotent(c))


def eval_bivariate(p: Mapping[tuple[int, int], object], a: Matrix, b: Matrix) -> Matrix:
    """sum of c_ij a^i b^j for p = {(i, j): c_ij}."""
    f = a.field
    acc = Matrix.zeros(f, a.nrows)
    for (i, j), c in sorted(p.items()):
        acc = acc + ((a ** i) @ (b ** j)).scale(f(c))
    return acc


def pair_transform(a: Matrix, pair: tuple[Matrix, Matrix], kind: str,
                   p: Mapping[tuple[int, int], object] | None = None) -> tuple[Matrix, Matrix]:
    """swap: (B, C) -> (C, B).  shift: (B, C) -> (B, p(A, B) + C) with p(0, 0) = 0."""
    b, c = pair
    if not _in_n2(a, b, c):
        raise NotInN2("pair is not a commuting nilpotent pair in C(a)")
    if kind == "swap":
        return c, b
    if kind == "shift":
        p = dict(p or {})
        if a.field(p.get((0, 0), 0)) != 0:
            raise ConstantTerm("p must have zero constant term")
        out = (b, eval_bivariate(p, a, b) + c)
        assert _in_n2(a, *out)
        return out
    raise ValueError(f"unknown pair transform {kind!r}")


# --- the 1-regular locus --------------------------------------------------------------

def r1_parametrize(P: Matrix, polys: Sequence[Sequence], f: FieldSpec | None = None) -> NilTuple:
    """(A, A p_1(A), ..., A p_{d-1}(A)) with A = P^-1 J_n P."""
    f = f or P.field
    n = P.nrows
    jn = jordan_matrix(Partition.of(n), f)
    a = inverse(P) @ jn @ P
    mats = [a] + [a @ polynomial_in(a, [f(c) for c in p]) for p in polys]
    return NilTuple(tuple(mats))


def sample_R1(d: int, n: int, seed: int, f: FieldSpec, max_retries: int = 64, bound: int = 5) -> NilTuple:
    if d < 1 or n < 2:
        raise ValueError("need d >= 1 and n >= 2")
    rng = random.Random(seed)
    for _ in range(max_retries):
        P = Matrix._raw(f, [[f.random_element(rng, bound) for _ in range(n)] for _ in range(n)])
        if rank(P) == n:
            break
    else:
        raise NotInvertible(f"no invertible draw in {max_retries} attempts")
    polys = [[f.random_element(rng, bound) for _ in range(n - 1)] for _ in range(d - 1)]
    return r1_parametrize(P, polys, f)


# --- one-parameter families -----------------------------------------------------------

@dataclass(frozen=True)
class ParamFamily:
    """d matrices polynomial in t: mats[k] = sum_e coeffs[k][e] t^e."""

    field: FieldSpec
    n: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(tuple(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        for cs in coeffs:
            if not cs:
                raise ValueError("each matrix needs at least one coefficient")
            for c in cs:
                if c.shape != (self.n, self.n):
                    raise DimensionMismatch(f"coefficient of shape {c.shape}, expected n={self.n}")

    @classmethod
    def constant(cls, mats) -> "ParamFamily":
        mats = _as_tuple(mats)
        return cls(mats[0].field, mats[0].nrows, tuple((m,) for m in mats))

    @property
    def d(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        return max(len(cs) for cs in self.coeffs) - 1

    def evaluate(self, t) -> tuple[Matrix, ...]:
        f = self.field
        t = f(t)
        out = []
        for cs in self.coeffs:
            acc = Matrix.zeros(f, self.n)
            for c in reversed(cs):  # Horner
                acc = acc.scale(t) + c
            out.append(acc)
        return tuple(out)

    def extend_zeros(self, k: int) -> "ParamFamily":
        zero = Matrix.zeros(self.field, self.n)
        return ParamFamily(self.field, self.n, self.coeffs + ((zero,),) * k)


def regularization_family(lam: Partition, f: FieldSpec) -> ParamFamily:
    """J(lam) + t E, E joining the last row of each block to the first column of the next."""
    n = lam.n
    e = Matrix.zeros(f, n)
    pos = 0
    for part in lam.parts[:-1]:
        pos += part
        e = e.with_entry(pos - 1, pos, f.one)
    return ParamFamily(f, n, ((jordan_matrix(lam, f), e),))


def _curve_trial(args):
    fam, seed, K = args
    f = fam.field
    rng = random.Random(seed)
    t = f.random_nonzero(rng, 1000)
    mats = fam.evaluate(t)
    commute = all(mats[i].commutes_with(mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats)))
    nilpotent = all(is_nilpotent(m) for m in mats)
    regular = is_nilpotent(mats[0]) and is_r_regular(mats[0], 1)
    k = 0
    while not regular and k < K and nilpotent and commute:
        comb = Matrix.zeros(f, fam.n)
        for m in mats:
            comb = comb + m.scale(f.random_element(rng, 1000))
        regular = is_r_regular(comb, 1)
        k += 1
    return t, commute, nilpotent, regular


def curve_verify(fam: ParamFamily, target, trials: int, seed: int, K: int = 16) -> Certificate:
    """Sampled evidence that ``target`` lies on a curve whose generic points have a 1-regular
    element in their span."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    target = _as_tuple(target)
    f = fam.field
    cert = Certificate("curve-verify", FAIL, f, seed, trials)
    base = fam.evaluate(f.zero)
    if len(target) != fam.d or base != target:
        cert.add("basepoint", "basepoint mismatch")
        return cert
    cert.add("basepoint", "exact")
    results = pmap(_curve_trial, [(fam, trial_seed(seed, k), K) for k in range(trials)])
    broken = [(t, c, nl) for t, c, nl, _ in results if not (c and nl)]
    irregular = [t for t, c, nl, r in results if c and nl and not r]
    cert.add("trials_commuting", sum(1 for _, c, _, _ in results if c))
    cert.add("trials_nilpotent", sum(1 for _, _, nl, _ in results if nl))
    cert.add("trials_one_regular", sum(1 for *_, r in results if r))
    if broken:
        cert.add("first_failure_t", f.format(broken[0][0]))
        cert.verdict = FAIL
    elif irregular:
        cert.add("no_regular_combination_at_t", f.format(irregular[0]))
        cert.verdict = INCONCLUSIVE
    else:
        cert.verdict = PASS
    return cert


# --- certificates and membership ------------------------------------------------------

def certify_reducible(t) -> Certificate:
    """Pass iff dim F[A_1..A_d] > n, which keeps the tuple out of the closure of R_1(d, n)."""
    mats = _as_tuple(t)
    f, n = _check_commuting(mats)
    dim = algebra_dim(mats)
    cert = Certificate("certify-reducible", PASS if dim > n else INCONCLUSIVE, f)
    cert.add("n", n)
    cert.add("d", len(mats))
    cert.add("algebra_dim", dim)
    cert.add("conclusion", "algebra dimension exceeds n: outside the closure of the 1-regular locus"
             if dim > n else "algebra dimension at most n: no obstruction")
    return cert


def is_in_D2(a: Matrix, b: Matrix, c: Matrix, lam: Partition) -> bool:
    if lam.n != a.nrows:
        raise DimensionMismatch(f"partition of {lam.n} for a {a.nrows}x{a.nrows} matrix")
    if not _in_n2(a, b, c):
        raise NotInN2("(b, c) is not a commuting nilpotent pair in C(a)")
    return algebra_dim((a, b)) == a.nrows
