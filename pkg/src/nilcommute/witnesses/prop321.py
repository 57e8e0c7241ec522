"""Solution families (Y_i, zeta_i) over the fixed fibre x_i = e_i, Z_1, Z_2, Z_3 for triples whose
first matrix has Jordan type (3,2,1), in block form [[0, x^T, 0], [0, Y, Z], [0, 0, zeta J]]."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import NilTuple
from ..errors import CharacteristicMismatch, OmegaNotRoot, PrimeTooLarge
from ..exactfield import FieldSpec, characteristic, find_omega
from ..jordan import is_r_regular
from ..linalg import Matrix, is_nilpotent, kernel_vectors

CASES = ("generic", "char2", "char3")


def prop321_fixed_data(f: FieldSpec):
    """(x1, x2, x3, Z1, Z2, Z3)."""
    xs = tuple(Matrix.basis_vector(f, 3, i) for i in range(3))
    z1 = Matrix.from_rows(f, [[0, 1], [0, 0], [1, 0]])
    z2 = Matrix.from_rows(f, [[0, 0], [1, 0], [0, 1]])
    z3 = Matrix.from_rows(f, [[1, 0], [0, 1], [0, 0]])
    return xs + (z1, z2, z3)


def _jblock(f: FieldSpec) -> Matrix:
    return Matrix.unit(f, 2, 0, 1)


def family_matrices(alpha, beta, gamma, delta, f: FieldSpec):
    """Y_1, Y_2, Y_3 and zeta of the four-parameter family solving the linear constraints."""
    a, b, g, d = (f(x) for x in (alpha, beta, gamma, delta))
    bd = b - d
    y1 = Matrix.from_rows(f, [[a, b, g], [g, -2 * a, b], [bd, g, a]])
    y2 = Matrix.from_rows(f, [[g, -2 * a, b], [bd, -2 * g, -2 * a], [-2 * a, bd, g]])
    y3 = Matrix.from_rows(f, [[bd, g, a], [-2 * a, bd, g], [4 * g, -2 * a, bd]])
    zeta = (d, -3 * a, 3 * g)
    return (y1, y2, y3), tuple(f(z) for z in zeta)


def assemble(x: Matrix, y: Matrix, z: Matrix, zeta, f: FieldSpec) -> Matrix:
    """[[0, x^T, 0], [0, Y, Z], [0, 0, zeta J]] with block sizes 1, 3, 2."""
    sizes = (1, 3, 2)
    grid = [[None, x.T, None], [None, y, z], [None, None, _jblock(f).scale(f(zeta))]]
    return Matrix.block(f, grid, sizes, sizes)


def constraint_report(ys, zeta, f: FieldSpec) -> dict[str, bool]:
    """Evaluate every constraint on (Y_i, zeta_i) over the fixed fibre."""
    x1, x2, x3, *zs = prop321_fixed_data(f)
    xs = (x1, x2, x3)
    J = _jblock(f)
    zeta = tuple(f(v) for v in zeta)
    pairs = list(itertools.combinations(range(3), 2))
    return {
        "xY": all(xs[i].T @ ys[j] == xs[j].T @ ys[i] for i, j in pairs),
        "YZ": all(ys[i] @ zs[j] + (zs[i] @ J).scale(zeta[j]) == ys[j] @ zs[i] + (zs[j] @ J).scale(zeta[i])
                  for i, j in pairs),
        "YY": all(ys[i].commutes_with(ys[j]) for i, j in pairs),
        "trace": all(y.trace() == 0 for y in ys),
        "nilpotent": all(is_nilpotent(y) for y in ys),
    }


@dataclass(frozen=True)
class Prop321Solution:
    case: str
    alpha: object
    beta: object
    gamma: object
    delta: object
    omega: object
    ys: tuple
    zeta: tuple
    xs: tuple
    checks: dict
    x1_one_regular: bool

    @property
    def field(self) -> FieldSpec:
        return self.xs[0].field

    @property
    def all_constraints_hold(self) -> bool:
        return all(self.checks.values())

    def niltuple(self) -> NilTuple:
        return NilTuple(self.xs)


def _expected_case(f: FieldSpec) -> str:
    c = characteristic(f)
    return {2: "char2", 3: "char3"}.get(c, "generic")


def prop321_solution(case: str, beta=1, omega=None, f: FieldSpec | None = None) -> Prop321Solution:
    """Assemble and verify the solution of the given characteristic case.

    For the generic case omega must satisfy omega(27 omega^3 - 8) = 0 and defaults to 2/3.
    """
    f = f or FieldSpec.rationals()
    case = case.lower()
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    if case != _expected_case(f):
        raise CharacteristicMismatch(f"case {case} over a field of characteristic {characteristic(f)}")
    b = f(beta)
    if case == "generic":
        w = f(Fraction(2, 3)) if omega is None else f(omega)
        if w not in [s.value for s in find_omega(f)]:
            raise OmegaNotRoot(f"{f.format(w)} is not a root of w(27w^3 - 8)")
        # the displayed tables equal the family at (beta w, beta, -3/2 beta w^2, beta)
        alpha = f.mul(b, w)
        gamma = f.mul(f(Fraction(-3, 2)), f.mul(b, f.mul(w, w)))
        delta = b
    else:
        w = None
        alpha = gamma = f.zero
        delta = b
    ys, zeta = family_matrices(alpha, b, gamma, delta, f)
    if case != "generic":
        # the family specializes to Y_1 = beta(e12 + e23), Y_2 = beta e13, Y_3 = 0, zeta = (beta, 0, 0)
        assert zeta == (b, f.zero, f.zero)
    checks = constraint_report(ys, zeta, f)
    x1, x2, x3, z1, z2, z3 = prop321_fixed_data(f)
    xs = tuple(assemble(x, y, z, zt, f) for x, y, z, zt in zip((x1, x2, x3), ys, (z1, z2, z3), zeta))
    return Prop321Solution(case, alpha, b, gamma, delta, w, ys, zeta, xs, checks,
                           is_r_regular(xs[0], 1))


def prop321_fiber_bruteforce(p: int) -> list[tuple[int, int, int, int]]:
    """All (alpha, beta, gamma, delta) in F_p^4 whose family point satisfies Y_iY_j = Y_jY_i,
    nilpotency and 3(beta - delta) = 0."""
    if p > 11:
        raise PrimeTooLarge(f"exhaustive enumeration is limited to p <= 11, got {p}")
    f = FieldSpec.prime(p)
    out = []
    for a, b, g, d in itertools.product(range(p), repeat=4):
        if (3 * (b - d)) % p:
            continue
        ys, _ = family_matrices(a, b, g, d, f)
        if all(ys[i].commutes_with(ys[j]) for i, j in ((0, 1), (0, 2), (1, 2))) \
                and all(is_nilpotent(y) for y in ys):
            out.append((a, b, g, d))
    return out


def prop321_linear_solution_space(f: FieldSpec) -> list[tuple]:
    """Kernel of the linear constraints (xY, YZ, trace) in the 30 unknowns (Y_1, Y_2, Y_3, zeta).

    Unknown k < 27 is entry (k // 9, (k % 9) // 3, k % 3) of (Y_i)_rs; 27 + i is zeta_i.
    """
    x1, x2, x3, *zs = prop321_fixed_data(f)
    J = _jblock(f)
    nvar = 30

    def y_index(i, r, s):
        return 9 * i + 3 * r + s

    rows = []

    def new_row():
        return [f.zero] * nvar

    for i, j in itertools.combinations(range(3), 2):
        # row i of Y_j equals row j of Y_i (x_k = e_k)
        for s in range(3):
            row = new_row()
            row[y_index(j, i, s)] = f.one
            row[y_index(i, j, s)] = f.add(row[y_index(i, j, s)], f.neg(f.one))
            rows.append(row)
        # (Y_i Z_j - Y_j Z_i + zeta_j Z_i J - zeta_i Z_j J)_{r c} = 0
        zij, zji = zs[i] @ J, zs[j] @ J
        for r in range(3):
            for c in range(2):
                row = new_row()
                for s in range(3):
                    row[y_index(i, r, s)] = f.add(row[y_index(i, r, s)], zs[j][s, c])
                    row[y_index(j, r, s)] = f.sub(row[y_index(j, r, s)], zs[i][s, c])
                row[27 + j] = f.add(row[27 + j], zij[r, c])
                row[27 + i] = f.sub(row[27 + i], zji[r, c])
                rows.append(row)
    for i in range(3):
        row = new_row()
        for r in range(3):
            row[y_index(i, r, r)] = f.one
        rows.append(row)
    return kernel_vectors(rows, nvar, f)


def family_vector(alpha, beta, gamma, delta, f: FieldSpec) -> tuple:
    """The family point as a 30-vector in the unknown ordering of the linear solution space."""
    ys, zeta = family_matrices(alpha, beta, gamma, delta, f)
    return tuple(v for y in ys for v in y.vec()) + zeta
