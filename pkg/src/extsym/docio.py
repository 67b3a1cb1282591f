"""JSON documents describing triples, cocycles and quadratic-extension data.

A triple document looks like::

    {
      "name": "parabola",
      "dim": 3,
      "basis": ["e1", "e2", "e3"],
      "brackets": [{"i": 1, "j": 3, "k": 2, "c": "1"}],
      "gram": [["1","0","0"], ["0","0","0"], ["0","0","1"]],
      "theta": [...],
      "D": [...]
    }

Indices are 1-based and brackets list ``[e_i, e_j] = ... + c e_k`` with
``i < j``; omitted entries are zero.  Matrices are row-major with column
``j`` holding the image of ``e_j``.  Rationals are strings ``"p/q"`` (JSON
integers are accepted too; floats are rejected).

Optional blocks: ``"extension"`` with ``{"fiber_dim", "fiber_labels",
"cocycle": [{"i", "j", "fiber", "value"}]}`` and ``"quadext"`` with
``{"l", "theta_l", "a_form", "theta_a", "rho", "a_labels", "D"}`` where
``"l"`` is an algebra block (``dim``, ``basis``, ``brackets``) and ``"D"``
is ``{"xi": vector}`` or ``{"D_l": matrix, "D_a": matrix}``.
"""

from __future__ import annotations

import json
import re
import sys
from fractions import Fraction
from typing import Any

from .extensions import Cochain2
from .liealg import InnerProduct, LieAlgebra
from .linalg import Matrix, format_scalar
from .quadext import QuadExtData, attach_phi, build_dd
from .triples import ExtrinsicTriple

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class DocumentError(ValueError):
    """Malformed input; ``where`` locates it (JSON path, or line/column for syntax errors)."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


# -- scalars and containers ------------------------------------------------


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError("expected a rational, got a boolean", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        num, _, den = value.partition("/")
        d = int(den) if den else 1
        if d == 0:
            raise DocumentError(f"zero denominator in {value!r}", where)
        return Fraction(int(num), d)
    raise DocumentError(f"expected a rational 'p/q' with positive integer q, got {value!r}", where)


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", where)
    if key not in obj:
        raise DocumentError(f"missing key {key!r}", where)
    return obj[key]


def _int(value: Any, where: str, lo: int = 0, hi: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"expected an integer, got {value!r}", where)
    if value < lo or (hi is not None and value > hi):
        rng = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
        raise DocumentError(f"integer {value} out of range {rng}", where)
    return value


def parse_matrix(value: Any, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(value, list) or len(value) != rows:
        raise DocumentError(f"expected a list of {rows} rows", where)
    out = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"expected a row of {cols} entries", f"{where}[{i}]")
        out.append([parse_rational(a, f"{where}[{i}][{j}]") for j, a in enumerate(row)])
    return Matrix(out) if rows else Matrix.zeros(0, cols)


def parse_vector(value: Any, n: int, where: str) -> tuple:
    if not isinstance(value, list) or len(value) != n:
        raise DocumentError(f"expected a list of {n} rationals", where)
    return tuple(parse_rational(a, f"{where}[{i}]") for i, a in enumerate(value))


def format_matrix(m: Matrix) -> list:
    return [[format_scalar(a) for a in row] for row in m.rows]


# -- algebras and triples --------------------------------------------------


def parse_algebra(obj: Any, where: str = "") -> LieAlgebra:
    p = (where + ".") if where else ""
    n = _int(_require(obj, "dim", where), p + "dim")
    basis = obj.get("basis", [f"e{i + 1}" for i in range(n)])
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) and b for b in basis):
        raise DocumentError(f"expected {n} non-empty basis labels", p + "basis")
    if len(set(basis)) != n:
        raise DocumentError("basis labels are not distinct", p + "basis")
    entries = obj.get("brackets", [])
    if not isinstance(entries, list):
        raise DocumentError("expected a list", p + "brackets")
    brackets: dict = {}
    seen = set()
    for idx, e in enumerate(entries):
        w = f"{p}brackets[{idx}]"
        i = _int(_require(e, "i", w), w + ".i", 1, n)
        j = _int(_require(e, "j", w), w + ".j", 1, n)
        k = _int(_require(e, "k", w), w + ".k", 1, n)
        c = parse_rational(_require(e, "c", w), w + ".c")
        if not i < j:
            raise DocumentError(f"bracket entries need i < j, got i={i}, j={j}", w)
        if (i, j, k) in seen:
            raise DocumentError(f"duplicate bracket entry (i, j, k) = ({i}, {j}, {k})", w)
        seen.add((i, j, k))
        brackets.setdefault((i - 1, j - 1), {})[k - 1] = c
    return LieAlgebra.from_brackets(basis, brackets)


def algebra_to_json(L: LieAlgebra) -> dict:
    entries = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k, c in enumerate(L.c[i][j]):
                if c:
                    entries.append({"i": i + 1, "j": j + 1, "k": k + 1, "c": format_scalar(c)})
    return {"dim": L.dim, "basis": list(L.basis_labels), "brackets": entries}


def parse_triple(obj: Any) -> ExtrinsicTriple:
    L = parse_algebra(obj)
    n = L.dim
    G = parse_matrix(_require(obj, "gram", ""), n, n, "gram")
    for i in range(n):
        for j in range(i + 1, n):
            if G[i, j] != G[j, i]:
                lab = L.basis_labels
                raise DocumentError(
                    f"Gram matrix is not symmetric: <{lab[i]}, {lab[j]}> = {format_scalar(G[i, j])} "
                    f"but <{lab[j]}, {lab[i]}> = {format_scalar(G[j, i])}", f"gram[{i}][{j}]")
    theta = parse_matrix(_require(obj, "theta", ""), n, n, "theta")
    D = parse_matrix(_require(obj, "D", ""), n, n, "D")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("expected a string", "name")
    return ExtrinsicTriple(L, InnerProduct(G), theta, D, name)


def triple_to_json(t: ExtrinsicTriple) -> dict:
    doc: dict = {}
    if t.name:
        doc["name"] = t.name
    doc.update(algebra_to_json(t.algebra))
    doc["gram"] = format_matrix(t.form.gram)
    doc["theta"] = format_matrix(t.theta)
    doc["D"] = format_matrix(t.d)
    return doc


# -- cocycles --------------------------------------------------------------


def parse_cocycle(obj: Any, base_dim: int, where: str = "extension") -> tuple[Cochain2, list | None]:
    p = where + "."
    r = _int(_require(obj, "fiber_dim", where), p + "fiber_dim")
    labels = obj.get("fiber_labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != r
                               or not all(isinstance(a, str) and a for a in labels)):
        raise DocumentError(f"expected {r} fiber labels", p + "fiber_labels")
    entries = obj.get("cocycle", [])
    if not isinstance(entries, list):
        raise DocumentError("expected a list", p + "cocycle")
    values: dict = {}
    seen = set()
    for idx, e in enumerate(entries):
        w = f"{p}cocycle[{idx}]"
        i = _int(_require(e, "i", w), w + ".i", 1, base_dim)
        j = _int(_require(e, "j", w), w + ".j", 1, base_dim)
        f = _int(_require(e, "fiber", w), w + ".fiber", 1, max(r, 1))
        v = parse_rational(_require(e, "value", w), w + ".value")
        if not i < j:
            raise DocumentError(f"cocycle entries need i < j, got i={i}, j={j}", w)
        if (i, j, f) in seen:
            raise DocumentError(f"duplicate cocycle entry (i, j, fiber) = ({i}, {j}, {f})", w)
        seen.add((i, j, f))
        values.setdefault((i - 1, j - 1), [Fraction(0)] * r)[f - 1] = v
    return Cochain2.from_values(base_dim, r, values), labels


def cocycle_to_json(w: Cochain2, fiber_labels=None) -> dict:
    doc: dict = {"fiber_dim": w.fiber_dim}
    if fiber_labels:
        doc["fiber_labels"] = list(fiber_labels)
    entries = []
    for i, j, val in w.nonzero_values():
        for f, a in enumerate(val):
            if a:
                entries.append({"i": i + 1, "j": j + 1, "fiber": f + 1, "value": format_scalar(a)})
    doc["cocycle"] = entries
    return doc


# -- quadratic extension data ----------------------------------------------


def parse_quadext(obj: Any, where: str = "quadext") -> tuple[QuadExtData, dict]:
    p = where + "."
    l = parse_algebra(_require(obj, "l", where), p + "l")
    n = l.dim
    theta_l = parse_matrix(_require(obj, "theta_l", where), n, n, p + "theta_l")
    form_raw = _require(obj, "a_form", where)
    if not isinstance(form_raw, list):
        raise DocumentError("expected a matrix", p + "a_form")
    m = len(form_raw)
    form_a = parse_matrix(form_raw, m, m, p + "a_form")
    theta_a = parse_matrix(_require(obj, "theta_a", where), m, m, p + "theta_a")
    rho_raw = _require(obj, "rho", where)
    if not isinstance(rho_raw, list) or len(rho_raw) != n:
        raise DocumentError(f"expected {n} matrices, one per basis vector of l", p + "rho")
    rho = tuple(parse_matrix(r, m, m, f"{p}rho[{i}]") for i, r in enumerate(rho_raw))
    labels = obj.get("a_labels", [f"a{i + 1}" for i in range(m)])
    if not isinstance(labels, list) or len(labels) != m or not all(isinstance(a, str) and a for a in labels):
        raise DocumentError(f"expected {m} labels", p + "a_labels")
    q = QuadExtData(l, theta_l, form_a, theta_a, rho, tuple(labels))
    dspec = obj.get("D")
    d: dict = {}
    if dspec is not None:
        w = p + "D"
        if not isinstance(dspec, dict):
            raise DocumentError("expected an object", w)
        if "xi" in dspec:
            d["xi"] = parse_vector(dspec["xi"], 2 * n + m, w + ".xi")
        else:
            if "D_l" in dspec:
                d["d_l"] = parse_matrix(dspec["D_l"], n, n, w + ".D_l")
            if "D_a" in dspec:
                d["d_a"] = parse_matrix(dspec["D_a"], m, m, w + ".D_a")
            if not d:
                raise DocumentError("give 'xi' or 'D_l'/'D_a'", w)
    return q, d


def quadext_to_triple(q: QuadExtData, d: dict, name: str = "") -> ExtrinsicTriple:
    """Build ``dd`` and attach ``D``; without ``D`` data the zero derivation is used."""
    dd = build_dd(q)
    if not d:
        return ExtrinsicTriple(dd.algebra, dd.form, dd.theta, Matrix.zeros(dd.algebra.dim), name)
    return attach_phi(dd, name=name, **d)


def quadext_to_json(q: QuadExtData, d: dict | None = None) -> dict:
    doc = {
        "l": algebra_to_json(q.l),
        "theta_l": format_matrix(q.theta_l),
        "a_form": format_matrix(q.form_a),
        "theta_a": format_matrix(q.theta_a),
        "rho": [format_matrix(r) for r in q.rho],
        "a_labels": list(q.a_labels),
    }
    if d:
        if "xi" in d:
            doc["D"] = {"xi": [format_scalar(a) for a in d["xi"]]}
        else:
            doc["D"] = {k.replace("d_", "D_"): format_matrix(v) for k, v in d.items()}
    return doc


# -- files -----------------------------------------------------------------


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


def load(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DocumentError(exc.strerror or str(exc), path) from None
    return loads(text)


_SCALAR = r"(?:\"[^\"\[\]{}]*\"|[-\d.eE+]+|true|false|null)"
_FLAT_ARRAY = re.compile(r"\[\s*(" + _SCALAR + r"(?:\s*,\s*" + _SCALAR + r")*)\s*\]")
_MEMBER = r"\"[^\"]*\":\s*" + _SCALAR
_FLAT_OBJECT = re.compile(r"\{\s*(" + _MEMBER + r"(?:\s*,\s*" + _MEMBER + r")*)\s*\}")


def dumps(doc: Any) -> str:
    """Indented JSON with arrays of scalars (matrix rows, label lists) kept on one line."""
    text = json.dumps(doc, indent=2)
    text = _FLAT_ARRAY.sub(lambda m: "[" + re.sub(r"\s*,\s*", ", ", m.group(1)) + "]", text)
    text = _FLAT_OBJECT.sub(lambda m: "{" + re.sub(r"\s*,\s*", ", ", m.group(1)) + "}", text)
    return text + "\n"
