"""Command-line front end.  Every subcommand prints one JSON document (stdout or --out).

Exit codes: 0 pass / inconclusive / plain output, 1 fail verdict, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .algebra import (
    NilTuple,
    algebra_dim_closure,
    algebra_dim_monomial,
    self_centralizing_dim,
)
from .certificate import FAIL, PASS, Certificate
from .closure import (
    certify_reducible,
    curve_verify,
    d2_closure_dim,
    r1_closure_dim,
    regularization_family,
    sample_R1,
    tuple_transform,
)
from .errors import NilcommuteError
from .exactfield import FieldSpec, find_omega
from .jordan import (
    Partition,
    centralizer_basis,
    centralizer_dim_formula,
    jordan_matrix,
    kernel_dim_of_type,
    nilpotent_centralizer_dim,
    partitions,
)
from .linalg import Matrix, is_nilpotent, rank
from . import serialize as io
from .witnesses import (
    basili_pair,
    gerstenhaber_quadruple,
    n2red_certificate,
    prop1nonzero_pair,
    prop321_fiber_bruteforce,
    prop321_solution,
    squarezero_commutant,
    squarezero_commutant_m1,
)


@dataclass(frozen=True)
class RunConfig:
    field: FieldSpec
    seed: int = 0
    trials: int = 20
    out: str | None = None


def _config(args) -> RunConfig:
    return RunConfig(FieldSpec.parse(args.field), args.seed, args.trials, args.out)


def _kernel_dim(m: Matrix) -> int:
    return m.ncols - rank(m)


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# -- subcommands -------------------------------------------------------------------

def cmd_gerstenhaber(args, cfg):
    t = gerstenhaber_quadruple(args.n, cfg.field)
    dim = algebra_dim_closure(t)
    cert = Certificate("gerstenhaber", _verdict(dim == args.n + 1), cfg.field)
    cert.add("n", args.n).add("algebra_dim", dim).add("expected", args.n + 1).add("tuple", t)
    return cert


def cmd_basili(args, cfg):
    lam = Partition.parse(args.partition)
    a, b = basili_pair(lam, cfg.field)
    stacked = Matrix._raw(cfg.field, a.rows + b.rows)
    kdim = _kernel_dim(stacked)
    adim = algebra_dim_closure((a, b))
    sdim = self_centralizing_dim(a, b)
    n = lam.n
    cert = Certificate("basili", _verdict(kdim == 1 and adim == n and sdim == n), cfg.field)
    cert.add("partition", str(lam)).add("kernel_intersection_dim", kdim)
    cert.add("algebra_dim", adim).add("self_centralizing_dim", sdim).add("b", b)
    return cert


def cmd_centralizer(args, cfg):
    lam = Partition.parse(args.partition)
    a = jordan_matrix(lam, cfg.field)
    computed = len(centralizer_basis(a))
    formula = centralizer_dim_formula(lam)
    cert = Certificate("centralizer", _verdict(computed == formula), cfg.field)
    cert.add("partition", str(lam)).add("computed_dim", computed).add("formula_dim", formula)
    cert.add("nilpotent_centralizer_dim", nilpotent_centralizer_dim(lam))
    return cert


def _load_tuple(path):
    return io.tuple_from_json(io.loads_file(path))


def cmd_algebra_dim(args, cfg):
    t = _load_tuple(args.inp)
    mono, clos = algebra_dim_monomial(t), algebra_dim_closure(t)
    cert = Certificate("algebra-dim", _verdict(mono == clos), t.field)
    cert.add("n", t.n).add("d", t.d).add("monomial_rank_dim", mono).add("closure_dim", clos)
    return cert


def cmd_n2red(args, cfg):
    return n2red_certificate(cfg.field, cfg.trials, cfg.seed)


def cmd_prop321(args, cfg):
    if args.fiber is not None:
        sols = prop321_fiber_bruteforce(args.fiber)
        cert = Certificate("prop321-fiber", PASS, FieldSpec.prime(args.fiber))
        cert.add("solutions", [list(s) for s in sols]).add("count", len(sols))
        return cert
    f = cfg.field
    omega = None if args.omega is None else Fraction(args.omega)
    sol = prop321_solution(args.case, Fraction(args.beta), omega, f)
    cert = Certificate("prop321", _verdict(sol.all_constraints_hold), f)
    cert.add("case", sol.case)
    cert.add("omega_roots", [str(s) for s in find_omega(f)] if sol.case == "generic" else [])
    cert.add("params", [f.format(x) if x is not None else None
                        for x in (sol.alpha, sol.beta, sol.gamma, sol.delta, sol.omega)])
    for k, v in sol.checks.items():
        cert.add(f"constraint_{k}", v)
    cert.add("x1_one_regular", sol.x1_one_regular)
    cert.add("Y", list(sol.ys)).add("zeta", [f.format(z) for z in sol.zeta]).add("X", list(sol.xs))
    return cert


def _random_matrix(rng, f, r, c):
    return Matrix._raw(f, [[f.random_element(rng, 3) for _ in range(c)] for _ in range(r)])


def cmd_squarezero(args, cfg):
    f = cfg.field
    rng = random.Random(cfg.seed)
    l, m = args.l, args.m
    if m == 1:
        if l < 1:
            raise NilcommuteError("need l >= 1")
        low = _random_matrix(rng, f, l, max(l - 1, 0)) @ _random_matrix(rng, f, max(l - 1, 0), l + 1) \
            if l > 1 else Matrix.zeros(f, l, l + 1)
        W, V = low.submatrix(0, l, 0, l), low.submatrix(0, l, l, l + 1)
        N = squarezero_commutant_m1(W, V, f)
    else:
        W, V = _random_matrix(rng, f, l, l), _random_matrix(rng, f, l, m)
        N = squarezero_commutant(W, V, f)
    cert = Certificate("squarezero", PASS, f, cfg.seed)
    cert.add("l", l).add("m", m).add("W", W).add("V", V).add("N", N)
    cert.add("N_nilpotent", is_nilpotent(N)).add("N_nonzero", not N.is_zero())
    return cert


def cmd_prop1nonzero(args, cfg):
    f = cfg.field
    s, t = f(Fraction(args.s)), f(Fraction(args.t))
    y, z = prop1nonzero_pair(args.k, args.n, s, t, f)
    k = args.k
    x, xp = y.submatrix(k, args.n, k, args.n), z.submatrix(k, args.n, k, args.n)
    beta, gamma = f.mul(s, s), f.mul(t, t)
    e1 = Matrix.basis_vector(f, x.nrows, 0)
    e2 = Matrix.basis_vector(f, x.nrows, 1)
    ok1 = e1.T @ xp == e2.T @ x
    ok2 = (xp @ e1).scale(beta) == -(x @ e2).scale(gamma)
    checks = {
        "Y_square_zero": (y @ y).is_zero(),
        "Z_square_zero": (z @ z).is_zero(),
        "YZ_commute": y.commutes_with(z),
        "boundary_row_identity": ok1,
        "boundary_column_identity": ok2,
    }
    cert = Certificate("prop1nonzero", _verdict(all(checks.values())), f)
    for label, v in checks.items():
        cert.add(label, v)
    cert.add("Y", y).add("Z", z)
    return cert


def cmd_curve_verify(args, cfg):
    if args.family:
        fam = io.family_from_json(io.loads_file(args.family))
        target = _load_tuple(args.target).mats if args.target else fam.evaluate(fam.field.zero)
    else:
        lam = Partition.parse(args.partition)
        fam = regularization_family(lam, cfg.field).extend_zeros(args.extra)
        target = fam.evaluate(cfg.field.zero)
    return curve_verify(fam, target, cfg.trials, cfg.seed)


def cmd_sample_r1(args, cfg):
    return io.tuple_to_json(sample_R1(args.d, args.n, cfg.seed, cfg.field))


def cmd_dims(args, cfg):
    rows = []
    for n in range(1, args.max_n + 1):
        for lam in partitions(n):
            rows.append({
                "partition": str(lam),
                "centralizer_dim": centralizer_dim_formula(lam),
                "nilpotent_centralizer_dim": nilpotent_centralizer_dim(lam),
                "kernel_dim": kernel_dim_of_type(lam),
                "d2_closure_dim": d2_closure_dim(lam),
            })
    r1 = [{"d": d, "n": n, "r1_closure_dim": r1_closure_dim(d, n)}
          for d in range(1, args.max_d + 1) for n in range(1, args.max_n + 1)]
    return {"partitions": rows, "r1": r1, "version": __version__}


def cmd_certify_reducible(args, cfg):
    if args.inp:
        t = _load_tuple(args.inp)
    else:
        t = gerstenhaber_quadruple(args.gerstenhaber, cfg.field)
    return certify_reducible(t)


def _parse_polys(text: str, f: FieldSpec):
    return [[f(Fraction(c)) for c in part.split(",")] for part in text.split(";")]


def cmd_transform(args, cfg):
    t = _load_tuple(args.inp)
    f = t.field
    params = {}
    if args.kind == "conjugate":
        params["P"] = io.matrix_from_json(io.loads_file(args.matrix), field=f)
    elif args.kind == "span_change":
        params["g"] = io.matrix_from_json(io.loads_file(args.matrix), field=f)
    elif args.kind == "twisted_transpose":
        params["Q"] = io.matrix_from_json(io.loads_file(args.matrix), field=f)
    elif args.kind == "poly_shift":
        params["polys"] = _parse_polys(args.polys or "", f)
    return io.tuple_to_json(tuple_transform(t, args.kind, **params))


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q or fp:<p>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="nilcommute", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    p = add("gerstenhaber", cmd_gerstenhaber, help="four-generator algebra of dimension n+1")
    p.add_argument("--n", type=int, required=True)
    p = add("basili", cmd_basili, help="Basili pair for a partition")
    p.add_argument("--partition", required=True, help="e.g. 3,2,1")
    p = add("centralizer", cmd_centralizer, help="centralizer dimension vs formula")
    p.add_argument("--partition", required=True)
    p = add("algebra-dim", cmd_algebra_dim, help="dimension of F[A_1..A_d] for a tuple file")
    p.add_argument("--in", dest="inp", required=True)
    add("n2red", cmd_n2red, help="N_2(A) dimension obstruction for type (3,2,1)")
    p = add("prop321", cmd_prop321, help="(3,2,1) solution tables or fibre enumeration")
    p.add_argument("--case", default="generic", choices=["generic", "char2", "char3"])
    p.add_argument("--beta", default="1")
    p.add_argument("--omega", default=None)
    p.add_argument("--fiber", type=int, default=None, metavar="P")
    p = add("squarezero", cmd_squarezero, help="nilpotent commutant of a seeded square-zero pair")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = add("prop1nonzero", cmd_prop1nonzero, help="square-zero perturbation pair")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", default="1")
    p.add_argument("--t", default="1")
    p = add("curve-verify", cmd_curve_verify, help="sampled curve evidence")
    p.add_argument("--partition", default=None, help="use the regularization family of this type")
    p.add_argument("--extra", type=int, default=0, help="append this many zero matrices")
    p.add_argument("--family", default=None, help="family JSON instead of --partition")
    p.add_argument("--target", default=None, help="tuple JSON; defaults to the family at t=0")
    p = add("sample-r1", cmd_sample_r1, help="random tuple with 1-regular first matrix")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = add("dims", cmd_dims, help="table of dimension formulas")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-d", type=int, default=4)
    p = add("certify-reducible", cmd_certify_reducible, help="algebra dimension obstruction")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--in", dest="inp")
    g.add_argument("--gerstenhaber", type=int, metavar="N")
    p = add("transform", cmd_transform, help="apply a reduction transform to a tuple file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--kind", required=True,
                   choices=["conjugate", "span_change", "poly_shift", "transpose", "twisted_transpose"])
    p.add_argument("--matrix", default=None, help="P, g or Q as matrix JSON")
    p.add_argument("--polys", default=None, help="ascending coefficients, e.g. '0,1;0,0,2'")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.trials < 1:
            raise NilcommuteError("--trials must be >= 1")
        result = args.fn(args, cfg)
        if isinstance(result, Certificate):
            if result.seed is None:
                result.seed = cfg.seed
            if result.trials is None:
                result.trials = cfg.trials
            payload, code = io.certificate_to_json(result), 1 if result.verdict == FAIL else 0
        else:
            payload, code = result, 0
        text = io.dumps(payload)
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code
    except (NilcommuteError, ValueError, OSError, AssertionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
