"""End-to-end acceptance checks; a per-criterion PASS/FAIL table is printed in the summary."""

import random
import time

import pytest

from _gen import F101, FIELDS, Q, rand_commuting_tuple, rand_matrix, rand_nilpotent
from nilcommute.algebra import (
    NilTuple,
    algebra_dim_closure,
    algebra_dim_monomial,
    double_centralizer_basis,
    same_span,
    self_centralizing_dim,
)
from nilcommute.closure import curve_verify, d2_closure_dim, r1_closure_dim, regularization_family
from nilcommute.exactfield import FieldSpec, find_omega
from nilcommute.jordan import (
    centralizer_basis,
    centralizer_dim_formula,
    is_r_regular,
    jordan_matrix,
    nilpotent_centralizer_dim,
    Partition,
    partitions,
)
from nilcommute.linalg import Matrix, is_nilpotent, rank
from nilcommute.witnesses import (
    basili_pair,
    gerstenhaber_quadruple,
    n2red_certificate,
    prop1nonzero_base,
    prop1nonzero_inner,
    prop1nonzero_pair,
    prop321_fiber_bruteforce,
    prop321_solution,
    squarezero_commutant,
    squarezero_commutant_m1,
    squarezero_pair,
)
from nilcommute.witnesses.prop321 import constraint_report, family_matrices

criterion = pytest.mark.criterion


@criterion(1, "Gerstenhaber quadruple has algebra dimension n+1, n=4..12, both fields, < 10 s")
def test_c01_gerstenhaber():
    start = time.perf_counter()
    for f in FIELDS:
        for n in range(4, 13):
            assert algebra_dim_closure(gerstenhaber_quadruple(n, f)) == n + 1
    assert time.perf_counter() - start < 10


@criterion(2, "closure dimension formulas (180, n^2-n, 16)")
def test_c02_dimension_formulas():
    assert r1_closure_dim(3, 13) == 180
    assert all(r1_closure_dim(1, n) == n * n - n for n in range(1, 21))
    assert d2_closure_dim(Partition.of(3, 2, 1)) == 16


@criterion(3, "Sylvester centralizer dimension matches sum min(li, lj), n <= 8, < 60 s")
def test_c03_centralizer_oracle():
    start = time.perf_counter()
    for n in range(1, 9):
        for lam in partitions(n):
            dim = len(centralizer_basis(jordan_matrix(lam, Q)))
            assert dim == sum(min(a, b) for a in lam for b in lam) == centralizer_dim_formula(lam)
            assert nilpotent_centralizer_dim(lam) == dim - len(lam)
    assert time.perf_counter() - start < 60


@criterion(4, "Basili pairs: joint kernel 1, algebra dim n, self-centralizing, n <= 8")
def test_c04_basili():
    for n in range(1, 9):
        for lam in partitions(n):
            a, b = basili_pair(lam, Q)
            stacked = Matrix.from_rows(Q, list(a.rows) + list(b.rows))
            assert n - rank(stacked) == 1
            assert algebra_dim_closure((a, b)) == n
            assert self_centralizing_dim(a, b) == n


@criterion(5, "N2red certificate over F_101, 100 seeded samples")
def test_c05_n2red():
    cert = n2red_certificate(F101, 100, 7)
    assert cert.get("samples_satisfying_equations") == 100
    assert cert.get("samples_in_N2(A)") == 100
    assert cert.get("samples_with_jacobian_rank_2") >= 95
    assert cert.get("witness_in_N2(A)") and cert.get("witness_violates_shape")
    assert cert.get("d2_closure_dim") == 16 == cert.get("local_dim_at_smooth_samples")
    assert cert.verdict == "pass"


def _check_solution(sol):
    assert sol.all_constraints_hold
    assert all(is_nilpotent(y) for y in sol.ys)
    sol.niltuple()


@criterion(6, "fibre solutions over Q, F_5, F_7, F_11, F_2, F_3 and brute-force fibres")
def test_c06_prop321():
    for w in (0, "2/3"):
        sol = prop321_solution("generic", 1, w, Q)
        _check_solution(sol)
        if sol.omega != 0:
            assert sol.x1_one_regular
    for p in (5, 7, 11):
        f = FieldSpec.prime(p)
        for w in find_omega(f):
            sol = prop321_solution("generic", 1, w.value, f)
            _check_solution(sol)
            if w.value != 0:
                assert sol.x1_one_regular
    _check_solution(prop321_solution("char2", 1, f=FieldSpec.prime(2)))
    _check_solution(prop321_solution("char3", 1, f=FieldSpec.prime(3)))
    for p in (2, 3):
        f = FieldSpec.prime(p)
        expected = []
        for a in range(p):
            for b in range(p):
                for g in range(p):
                    for d in range(p):
                        ys, zeta = family_matrices(a, b, g, d, f)
                        rep = constraint_report(ys, zeta, f)
                        if rep["YY"] and rep["nilpotent"] and (3 * (b - d)) % p == 0:
                            expected.append((a, b, g, d))
        found = prop321_fiber_bruteforce(p)
        assert found == expected
        if p == 3:
            assert all(a * d % 3 == 0 and g * d % 3 == 0 for a, _, g, d in found)


def _commutant_ok(nm, a, b):
    return not nm.is_zero() and is_nilpotent(nm) and nm.commutes_with(a) and nm.commutes_with(b)


@criterion(7, "square-zero commutants: 100 trials per (l, m), plus 100 rank-deficient m=1, < 60 s")
def test_c07_squarezero():
    start = time.perf_counter()
    rng = random.Random(7)
    for l in range(1, 7):
        for m in range(2, 5):
            for k in range(100):
                f = FIELDS[k % 2]
                w, v = rand_matrix(rng, f, l, bound=3), rand_matrix(rng, f, l, m, bound=3)
                a, b = squarezero_pair(w, v)
                assert _commutant_ok(squarezero_commutant(w, v), a, b), (l, m, k)
    for k in range(100):
        f = FIELDS[k % 2]
        l = rng.randint(1, 6)
        # rank [E F] <= l - 1: the last row is a combination of the others
        rows = [[f.random_element(rng, 3) for _ in range(l + 1)] for _ in range(l - 1)]
        coef = [f.random_element(rng, 3) for _ in range(l - 1)]
        last = [f.zero] * (l + 1)
        for c, r in zip(coef, rows):
            last = [f.add(x, f.mul(c, y)) for x, y in zip(last, r)]
        full = Matrix._raw(f, rows + [last])
        e, fcol = full.submatrix(0, l, 0, l), full.submatrix(0, l, l, l + 1)
        a, b = squarezero_pair(e, fcol)
        assert _commutant_ok(squarezero_commutant_m1(e, fcol), a, b)
    assert time.perf_counter() - start < 60


@criterion(8, "square-zero perturbation pair: 50 seeded (k, n, s, t), 10 lambdas each")
def test_c08_prop1nonzero():
    rng = random.Random(8)
    for trial in range(50):
        f = FIELDS[trial % 2]
        n = rng.randint(4, 10)
        k = rng.randint(2, n - 2)
        s, t = f.random_nonzero(rng, 9), f.random_nonzero(rng, 9)
        y, z = prop1nonzero_pair(k, n, s, t, f)
        assert (y @ y).is_zero() and (z @ z).is_zero() and y.commutes_with(z)
        x, xp = prop1nonzero_inner(k, n, s, t, f)
        beta, gamma = f.mul(s, s), f.mul(t, t)
        e1, e2 = Matrix.basis_vector(f, n - k, 0), Matrix.basis_vector(f, n - k, 1)
        assert e1.T @ xp == e2.T @ x
        assert (xp @ e1).scale(beta) == -(x @ e2).scale(gamma)
        a, b, c = prop1nonzero_base(k, n, s, t, f)
        for _ in range(10):
            lam = f.random_nonzero(rng, 50)
            NilTuple((a, b + y.scale(lam), c + z.scale(lam)))


@criterion(9, "regularization families pass curve_verify, all partitions n <= 7, 20 samples, F_101")
def test_c09_curve_verify():
    for n in range(1, 8):
        for lam in partitions(n):
            fam = regularization_family(lam, F101).extend_zeros(2)
            zero = Matrix.zeros(F101, n)
            cert = curve_verify(fam, (jordan_matrix(lam, F101), zero, zero), 20, n)
            assert cert.verdict == "pass", str(lam)
            assert cert.get("trials_one_regular") == 20


@criterion(10, "monomial and closure algebra dimensions agree on 200 tuples; pairs have dim <= n")
def test_c10_algebra_dim_oracles():
    rng = random.Random(10)
    for k in range(200):
        f = FIELDS[k % 2]
        n, d = rng.randint(1, 6), rng.randint(1, 4)
        mats = rand_commuting_tuple(rng, f, n, d)
        dim = algebra_dim_closure(mats)
        assert algebra_dim_monomial(mats) == dim
        if d == 2:
            assert dim <= n


@criterion(11, "double centralizer equals span of powers, 50 X per field, n <= 6")
def test_c11_double_centralizer():
    rng = random.Random(11)
    for f in FIELDS:
        for _ in range(50):
            n = rng.randint(1, 6)
            x = rand_nilpotent(rng, f, n) if rng.random() < 0.5 else rand_matrix(rng, f, n, bound=3)
            powers = [Matrix.identity(f, n)]
            for _ in range(n - 1):
                powers.append(powers[-1] @ x)
            assert same_span(double_centralizer_basis(x), powers)


@criterion(12, "every CLI subcommand is byte-identical across runs and matches its golden file")
def test_c12_determinism(capsys):
    from test_serialize_cli import COMMANDS, GOLDEN, _capture

    for name, argv in COMMANDS.items():
        _, first = _capture(argv, capsys)
        _, second = _capture(argv, capsys)
        assert first == second == (GOLDEN / f"{name}.json").read_text(), name
