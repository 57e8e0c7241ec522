"""JSON forms of fields, matrices, tuples, families and certificates.

Entries are always strings ("a/b" over Q, a residue over F_p) so consumers never see floats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import __version__
from .algebra import NilTuple
from .certificate import Certificate
from .closure import ParamFamily
from .errors import SchemaError
from .exactfield import FieldSpec, Scalar
from .linalg import Matrix


def field_to_json(f: FieldSpec) -> dict:
    return {"kind": "q"} if f.is_rational else {"kind": "fp", "p": f.p}


def field_from_json(obj, path: str = "$.field") -> FieldSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("field must be an object with a 'kind'", path)
    kind = obj["kind"]
    if kind == "q":
        return FieldSpec.rationals()
    if kind == "fp":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise SchemaError("'p' must be an integer", path + ".p")
        try:
            return FieldSpec.prime(p)
        except ValueError as exc:
            raise SchemaError(str(exc), path + ".p") from None
    raise SchemaError(f"unknown field kind {kind!r}", path + ".kind")


def matrix_to_json(m: Matrix, with_field: bool = True) -> dict:
    out = {"rows": [[m.field.format(x) for x in r] for r in m.rows]}
    if with_field:
        out = {"field": field_to_json(m.field), **out}
    return out


def matrix_from_json(obj, path: str = "$", field: FieldSpec | None = None) -> Matrix:
    if not isinstance(obj, dict):
        raise SchemaError("matrix must be an object", path)
    if "field" in obj:
        f = field_from_json(obj["field"], path + ".field")
        if field is not None and f != field:
            raise SchemaError(f"matrix over {f}, expected {field}", path + ".field")
    elif field is not None:
        f = field
    else:
        raise SchemaError("missing 'field'", path)
    rows = obj.get("rows")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("'rows' must be a list of lists", path + ".rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise SchemaError("ragged rows", path + ".rows")
    parsed = [[f.parse_element(x, f"{path}.rows[{i}][{j}]") for j, x in enumerate(r)]
              for i, r in enumerate(rows)]
    return Matrix._raw(f, parsed)


def tuple_to_json(t) -> dict:
    mats = tuple(t)
    return {"field": field_to_json(mats[0].field), "n": mats[0].nrows,
            "mats": [matrix_to_json(m, with_field=False) for m in mats]}


def _tuple_mats(obj, path: str) -> tuple[FieldSpec, list[Matrix]]:
    if not isinstance(obj, dict):
        raise SchemaError("tuple must be an object", path)
    f = field_from_json(obj.get("field"), path + ".field")
    n = obj.get("n")
    mats = obj.get("mats")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("'n' must be a positive integer", path + ".n")
    if not isinstance(mats, list) or not mats:
        raise SchemaError("'mats' must be a nonempty list", path + ".mats")
    out = []
    for k, m in enumerate(mats):
        mp = f"{path}.mats[{k}]"
        mat = matrix_from_json(m, mp, f)
        if mat.shape != (n, n):
            raise SchemaError(f"expected {n}x{n}, got {mat.shape}", mp)
        out.append(mat)
    return f, out


def tuple_from_json(obj, path: str = "$") -> NilTuple:
    """Load and validate (commuting, nilpotent)."""
    _, mats = _tuple_mats(obj, path)
    return NilTuple(tuple(mats))


def family_to_json(fam: ParamFamily) -> dict:
    return {"field": field_to_json(fam.field), "n": fam.n,
            "coeffs": [[matrix_to_json(c, with_field=False) for c in cs] for cs in fam.coeffs]}


def family_from_json(obj, path: str = "$") -> ParamFamily:
    if not isinstance(obj, dict):
        raise SchemaError("family must be an object", path)
    f = field_from_json(obj.get("field"), path + ".field")
    n = obj.get("n")
    coeffs = obj.get("coeffs")
    if not isinstance(n, int) or n < 1:
        raise SchemaError("'n' must be a positive integer", path + ".n")
    if not isinstance(coeffs, list) or not coeffs:
        raise SchemaError("'coeffs' must be a nonempty list", path + ".coeffs")
    out = []
    for k, cs in enumerate(coeffs):
        if not isinstance(cs, list) or not cs:
            raise SchemaError("each entry lists coefficient matrices", f"{path}.coeffs[{k}]")
        row = []
        for e, c in enumerate(cs):
            cp = f"{path}.coeffs[{k}][{e}]"
            mat = matrix_from_json(c, cp, f)
            if mat.shape != (n, n):
                raise SchemaError(f"expected {n}x{n}, got {mat.shape}", cp)
            row.append(mat)
        out.append(tuple(row))
    return ParamFamily(f, n, tuple(out))


def value_to_json(v: Any, f: FieldSpec | None = None) -> Any:
    if isinstance(v, Matrix):
        return matrix_to_json(v, with_field=False)
    if isinstance(v, NilTuple):
        return [matrix_to_json(m, with_field=False) for m in v]
    if isinstance(v, Scalar):
        return str(v)
    if isinstance(v, Fraction):
        return FieldSpec.rationals().format(v)
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): value_to_json(x, f) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [value_to_json(x, f) for x in v]
    raise TypeError(f"cannot serialize {type(v).__name__}")


def certificate_to_json(c: Certificate) -> dict:
    return {
        "name": c.name,
        "verdict": c.verdict,
        "field": field_to_json(c.field),
        "seed": c.seed,
        "trials": c.trials,
        "evidence": [{"label": k, "value": value_to_json(v, c.field)} for k, v in c.evidence],
        "version": __version__,
    }


def dumps(obj) -> str:
    """Canonical text: fixed key order, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2) + "\n"


def loads_file(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno})", "$") from None
