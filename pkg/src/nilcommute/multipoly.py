"""Sparse multivariate polynomials with exact evaluation and formal Jacobians."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .errors import DimensionMismatch, FieldMismatch
from .exactfield import FieldSpec
from .linalg import Matrix


@dataclass(frozen=True)
class MultiPoly:
    field: FieldSpec
    nvars: int
    terms: Mapping[tuple, object] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise DimensionMismatch(f"exponent vector {exps} for {self.nvars} variables")
            c = self.field(c)
            if c != 0:
                clean[exps] = self.field.add(clean.get(exps, self.field.zero), c)
                if clean[exps] == 0:
                    del clean[exps]
        object.__setattr__(self, "terms", clean)

    @classmethod
    def var(cls, field: FieldSpec, nvars: int, i: int) -> "MultiPoly":
        return cls(field, nvars, {tuple(int(k == i) for k in range(nvars)): 1})

    @classmethod
    def const(cls, field: FieldSpec, nvars: int, c) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    def _same(self, other):
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.nvars != self.nvars:
                raise FieldMismatch("polynomials over different rings")
            return other
        return MultiPoly.const(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = self.field.add(terms.get(e, self.field.zero), c)
        return MultiPoly(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.nvars, {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        f = self.field
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = f.add(terms.get(e, f.zero), f.mul(c1, c2))
        return MultiPoly(f, self.nvars, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, i: int) -> "MultiPoly":
        f = self.field
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = f.mul(f(k), c)
        return MultiPoly(f, self.nvars, terms)

    def __call__(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point of length {len(point)} for {self.nvars} variables")
        f = self.field
        point = [f(x) for x in point]
        total = f.zero
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = f.mul(term, x if k == 1 else pow(x, k) if f.is_rational else pow(x, k, f.p))
            total = f.add(total, term)
        return total


def poly_eval_jacobian(polys: Sequence[MultiPoly], point: Sequence) -> tuple[list, Matrix]:
    """Values of ``polys`` at ``point`` and the formal Jacobian there."""
    if not polys:
        raise ValueError("no polynomials")
    f = polys[0].field
    nvars = polys[0].nvars
    for q in polys:
        if q.field != f:
            raise FieldMismatch("polynomials over different fields")
        if q.nvars != nvars or len(point) != nvars:
            raise DimensionMismatch("variable count mismatch")
    values = [q(point) for q in polys]
    jac = [[q.derivative(i)(point) for i in range(nvars)] for q in polys]
    return values, Matrix._raw(f, jac)
