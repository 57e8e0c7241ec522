"""The 18-coordinate variety of shaped pairs in N_2(A) for A of Jordan type (3,2,1)."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .._parallel import pmap, trial_seed
from ..certificate import FAIL, PASS, Certificate
from ..closure import d2_closure_dim
from ..errors import ResolutionFailure
from ..exactfield import FieldSpec
from ..jordan import Partition, jordan_matrix
from ..linalg import Matrix, is_nilpotent, rank, solve_linear
from ..multipoly import MultiPoly, poly_eval_jacobian
from .basic import basili_pair

NAMES = tuple("abcdefghi")
A_TYPE = Partition.of(3, 2, 1)
# Positions (row, col) of each named coordinate in the shaped 6x6 matrix.
SHAPE = {
    "a": [(0, 1), (1, 2)],
    "b": [(0, 2)],
    "c": [(0, 3), (1, 4)],
    "d": [(0, 4)],
    "e": [(0, 5)],
    "f": [(3, 2)],
    "g": [(3, 4)],
    "h": [(5, 2)],
    "i": [(5, 4)],
}
ALLOWED = {pos for cells in SHAPE.values() for pos in cells}


@dataclass(frozen=True)
class N2redPoint:
    """Coordinates (a..i) of the first shaped matrix and (a'..i') of the second."""

    field: FieldSpec
    unprimed: tuple
    primed: tuple

    def __post_init__(self):
        for name in ("unprimed", "primed"):
            vals = tuple(self.field(x) for x in getattr(self, name))
            if len(vals) != 9:
                raise ValueError(f"{name} needs 9 coordinates")
            object.__setattr__(self, name, vals)

    @classmethod
    def from_coords(cls, field: FieldSpec, coords) -> "N2redPoint":
        coords = list(coords)
        return cls(field, tuple(coords[:9]), tuple(coords[9:]))

    @property
    def coords(self) -> tuple:
        return self.unprimed + self.primed

    def matrices(self) -> tuple[Matrix, Matrix]:
        return shaped_matrix(self.unprimed, self.field), shaped_matrix(self.primed, self.field)


def shaped_matrix(values, f: FieldSpec) -> Matrix:
    rows = [[f.zero] * 6 for _ in range(6)]
    for name, v in zip(NAMES, values):
        for i, j in SHAPE[name]:
            rows[i][j] = f(v)
    return Matrix._raw(f, rows)


def violates_shape(m: Matrix) -> bool:
    """True if ``m`` is not of the shaped form (nonzero outside, or tied entries differ)."""
    for i in range(6):
        for j in range(6):
            if (i, j) not in ALLOWED and m[i, j] != 0:
                return True
    return any(len({m[i, j] for i, j in cells}) > 1 for cells in SHAPE.values())


def n2red_equations(f: FieldSpec) -> tuple[MultiPoly, MultiPoly]:
    """cf' + eh' - c'f - e'h  and  ac' + cg' + ei' - a'c - c'g - e'i, variables a..i, a'..i'."""
    v = {name: MultiPoly.var(f, 18, k) for k, name in enumerate(NAMES)}
    w = {name: MultiPoly.var(f, 18, 9 + k) for k, name in enumerate(NAMES)}
    first = v["c"] * w["f"] + v["e"] * w["h"] - w["c"] * v["f"] - w["e"] * v["h"]
    second = (v["a"] * w["c"] + v["c"] * w["g"] + v["e"] * w["i"]
              - w["a"] * v["c"] - w["c"] * v["g"] - w["e"] * v["i"])
    return first, second


def n2red_membership(p: N2redPoint) -> bool:
    eqs = n2red_equations(p.field)
    member = all(q(p.coords) == 0 for q in eqs)
    b, c = p.matrices()
    if member != b.commutes_with(c):
        raise AssertionError("defining equations disagree with commutation of the shaped pair")
    return member


def _primed_system(unprimed, f: FieldSpec) -> Matrix:
    """Coefficients of the two equations as linear forms in (a'..i') at fixed a..i."""
    a, b, c, d, e, ff, g, h, i = unprimed
    neg = f.neg
    z = f.zero
    #            a'      b'  c'                 d'  e'                 f'  g'  h'  i'
    row1 = [z, z, neg(ff), z, neg(h), c, z, e, z]
    row2 = [neg(c), z, f.sub(a, g), z, neg(i), z, c, z, e]
    return Matrix._raw(f, [row1, row2])


def n2red_sample(seed: int, f: FieldSpec, max_retries: int = 16) -> N2redPoint:
    """Random unprimed coordinates, then primed ones solving the (linear) equations."""
    rng = random.Random(seed)
    for _ in range(max_retries):
        unprimed = [f.random_element(rng, 9) for _ in range(9)]
        system = _primed_system(unprimed, f)
        free = Matrix.column(f, [f.random_element(rng, 9) for _ in range(9)])
        correction = solve_linear(system, -(system @ free))
        if correction is None:
            continue
        primed = (free + correction).col(0)
        point = N2redPoint(f, tuple(unprimed), primed)
        if n2red_membership(point):
            return point
    raise ResolutionFailure(f"no consistent draw after {max_retries} retries")


def jacobian_rank(p: N2redPoint) -> int:
    _, jac = poly_eval_jacobian(n2red_equations(p.field), p.coords)
    return rank(jac)


def properness_witness(f: FieldSpec) -> tuple[Matrix, Matrix]:
    """A pair in N_2(A) outside the shaped variety: the Basili partner of A, paired with 0."""
    _, b = basili_pair(A_TYPE, f)
    return b, Matrix.zeros(f, 6)


def in_n2(a: Matrix, b: Matrix, c: Matrix) -> bool:
    return (b.commutes_with(a) and c.commutes_with(a) and b.commutes_with(c)
            and is_nilpotent(b) and is_nilpotent(c))


def _trial(args):
    f, seed = args
    a = jordan_matrix(A_TYPE, f)
    p = n2red_sample(seed, f)
    b, c = p.matrices()
    return n2red_membership(p), in_n2(a, b, c), jacobian_rank(p)


def n2red_certificate(f: FieldSpec, trials: int, seed: int, min_smooth_fraction=0.95) -> Certificate:
    """Dimension obstruction for N_2(A), A of type (3,2,1): the shaped variety has local
    dimension 16 at sampled smooth points, equal to dim of the closure of D_2(A), and a pair
    of N_2(A) lies outside it."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cert = Certificate("n2red", FAIL, f, seed, trials)
    d2 = d2_closure_dim(A_TYPE)
    results = pmap(_trial, [(f, trial_seed(seed, k)) for k in range(trials)])
    members = sum(1 for m, _, _ in results if m)
    in_centralizer = sum(1 for _, ok, _ in results if ok)
    smooth = sum(1 for _, _, r in results if r == 2)
    local_dim = 18 - 2
    b, c = properness_witness(f)
    a = jordan_matrix(A_TYPE, f)
    witness_ok = in_n2(a, b, c) and violates_shape(b)
    cert.add("d2_closure_dim", d2)
    cert.add("local_dim_at_smooth_samples", local_dim)
    cert.add("samples_satisfying_equations", members)
    cert.add("samples_in_N2(A)", in_centralizer)
    cert.add("samples_with_jacobian_rank_2", smooth)
    cert.add("properness_witness_B", b)
    cert.add("properness_witness_C", c)
    cert.add("witness_in_N2(A)", in_n2(a, b, c))
    cert.add("witness_violates_shape", violates_shape(b))
    ok = (d2 == 16 and members == trials and in_centralizer == trials
          and smooth >= min_smooth_fraction * trials and witness_ok)
    cert.add("conclusion", "dimension obstruction consistent with reducibility" if ok
             else "obstruction not established")
    cert.verdict = PASS if ok else FAIL
    return cert
