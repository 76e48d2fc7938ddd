"""JSON curve documents and reports (schema tag ``rigid-zeta/1``).

Big integers may be given as decimal strings or JSON numbers; reports always
use decimal strings.
"""

from __future__ import annotations

import json
from typing import Any

from .curve import CurveInput, MatrixEntry
from .errors import ParseError

SCHEMA = "rigid-zeta/1"


def _int(v) -> int:
    if isinstance(v, bool):
        raise ParseError("booleans are not integers")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError as exc:
            raise ParseError(f"not an integer: {v!r}") from exc
    raise ParseError(f"not an integer: {v!r}")


def _elem(v, n: int) -> list:
    """A Z_q element: an integer or a list of at most n integers."""
    if isinstance(v, list):
        if len(v) > n:
            raise ParseError(f"Z_q element {v!r} has more than {n} coordinates")
        return [_int(c) for c in v] + [0] * (n - len(v))
    return [_int(v)] + [0] * (n - 1)


def _laurent(v, n: int) -> tuple[list, int]:
    """A Laurent polynomial: a coefficient list, or {"coeffs": [...], "shift": k}."""
    if isinstance(v, dict):
        coeffs, shift = v.get("coeffs", []), _int(v.get("shift", 0))
    elif isinstance(v, list):
        coeffs, shift = v, 0
    else:
        coeffs, shift = [v], 0
    if not isinstance(coeffs, list):
        raise ParseError("Laurent coefficients must be a list")
    return [_elem(c, n) for c in coeffs], shift


def _entry(v, n: int) -> MatrixEntry:
    if isinstance(v, dict) and "num" in v:
        coeffs, shift = _laurent(v["num"], n)
        rpow = _int(v.get("rpow", 0))
        if rpow < 0:
            raise ParseError("rpow must be non-negative")
        return MatrixEntry(coeffs, shift, rpow)
    coeffs, shift = _laurent(v, n)
    return MatrixEntry(coeffs, shift, 0)


def _matrix(v, n: int, name: str) -> list:
    if not isinstance(v, list) or not all(isinstance(row, list) for row in v):
        raise ParseError(f"{name} must be a list of rows")
    return [[_entry(e, n) for e in row] for row in v]


def parse_curve_document(doc: dict) -> CurveInput:
    if not isinstance(doc, dict):
        raise ParseError("curve document must be a JSON object")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ParseError(f"unsupported schema {schema!r}")
    try:
        p = _int(doc["p"])
        n = _int(doc.get("n", 1))
        Qraw = doc["Q"]
        W0raw, Winfraw = doc["W0"], doc["Winf"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from exc
    f_mod = [_int(c) for c in doc["f_mod"]] if doc.get("f_mod") is not None else None
    if n < 1:
        raise ParseError("n must be positive")
    if f_mod is None:
        from .ffield import find_irreducible

        f_mod = find_irreducible(p, n) if n > 1 else [0, 1]
    if not isinstance(Qraw, list) or not all(isinstance(row, list) for row in Qraw):
        raise ParseError("Q must be a 2-D array indexed [y-degree][x-degree]")
    Q = [[_elem(c, n) for c in row] for row in Qraw]
    e0 = _int(doc["e0"]) if doc.get("e0") is not None else None
    einf = _int(doc["einf"]) if doc.get("einf") is not None else None
    return CurveInput(p=p, n=n, f_mod=f_mod, Q=Q, W0=_matrix(W0raw, n, "W0"), Winf=_matrix(Winfraw, n, "Winf"),
                      e0=e0, einf=einf, name=str(doc.get("name", "")))


def load_curve_document(path: str) -> tuple[CurveInput, dict]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_curve_document(doc), doc


def _entry_json(e: MatrixEntry) -> Any:
    return {"num": {"coeffs": [[str(c) for c in x] for x in e.coeffs], "shift": e.shift}, "rpow": e.rpow}


def curve_document(inp: CurveInput) -> dict:
    """Serialize a model (for instance a built-in one) as a curve document."""
    return {
        "schema": SCHEMA,
        "name": inp.name,
        "p": inp.p,
        "n": inp.n,
        "f_mod": [str(c) for c in inp.f_mod],
        "Q": [[[str(c) for c in x] for x in row] for row in inp.Q],
        "W0": [[_entry_json(e) for e in row] for row in inp.W0],
        "Winf": [[_entry_json(e) for e in row] for row in inp.Winf],
        "e0": inp.e0,
        "einf": inp.einf,
    }


def _strs(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_strs(x) for x in v]
    if isinstance(v, dict):
        return {k: _strs(x) for k, x in v.items()}
    return v


def report_document(res, include_timings: bool = True) -> dict:
    cd = res.cd
    out = {
        "schema": SCHEMA,
        "curve": {"name": cd.inp.name, "p": str(cd.p), "n": str(cd.n), "q": str(cd.p**cd.n),
                  "d_x": str(cd.d_x), "d_y": str(cd.d_y), "deg_r": str(cd.deg_r)},
        "genus": str(cd.genus),
        "audit": {"passed": cd.audit.passed, "clauses": dict(cd.audit.clauses)},
    }
    if res.lpoly is not None:
        from .zeta import zeta_presentation

        out["chi"] = [str(c) for c in res.lpoly.coeffs]
        out["zeta"] = zeta_presentation(res.lpoly)
        out["counts"] = [str(c) for c in res.counts]
    if res.plan is not None:
        out["precision"] = _strs(res.plan.to_json())
    if res.checks:
        out["checks"] = _strs(res.checks)
    if res.oracle is not None:
        o = dict(res.oracle)
        o.pop("seconds", None)
        out["oracle"] = _strs(o)
    if include_timings:
        t = {k: round(v, 4) for k, v in res.timings.items()}
        if res.oracle is not None:
            t["oracle"] = round(res.oracle.get("seconds", 0.0), 4)
        out["timings"] = t
    return out
