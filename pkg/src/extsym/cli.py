"""Command-line interface: ``extsym <command> ...``.

Exit codes: 0 success, 1 a validation or fixture check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import catalog, docio
from .docio import DocumentError
from .expm import nilpotency_index
from .extensions import ExtensionError, central_extension, cohomology2, restricted_classes
from .liealg import metric_radical
from .linalg import format_scalar
from .orbit import (
    DEFAULT_GRID,
    MAX_POINTS,
    OrbitSampler,
    default_words,
    format_coordinate,
    mean_curvature,
    minus_labels,
    plus_generators,
    shape_operator_matrix,
)
from .quadext import check_dd, build_dd
from .report import Report
from .triples import InvalidTripleError, find_inner_xi, is_full, validate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- helpers ---------------------------------------------------------------


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_triple(path: str):
    return docio.parse_triple(docio.load(path))


def _require_valid(t) -> Report:
    rep = validate(t)
    if not rep.ok:
        raise InvalidTripleError(rep)
    return rep


def _parse_grid(text: str) -> tuple:
    vals = []
    for k, part in enumerate(text.split(",")):
        part = part.strip()
        try:
            vals.append(docio.parse_rational(part, f"--grid entry {k + 1}"))
        except DocumentError:
            try:
                vals.append(float(part))
            except ValueError:
                raise DocumentError(f"not a number: {part!r}", f"--grid entry {k + 1}") from None
    if not vals:
        raise DocumentError("empty grid", "--grid")
    return tuple(vals)


def _matrix_text(m) -> str:
    if m.nrows == 0:
        return "  (empty)"
    return "\n".join("  [" + " ".join(f"{format_scalar(a):>6}" for a in r) + "]" for r in m.rows)


# -- commands --------------------------------------------------------------


def cmd_validate(args) -> int:
    t = _load_triple(args.path)
    rep = validate(t)
    lines = [rep.text()]
    payload = {"report": rep.to_json(), "flavor": None, "dims": None}
    if rep.ok:
        dims = t.decomposition.dims()
        lines.append(f"flavor: {t.flavor}")
        lines.append("dims: " + ", ".join(f"{k}={v}" for k, v in dims.items()))
        payload.update(flavor=t.flavor, dims=dims)
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if rep.ok else EXIT_FAIL


def invariants(t) -> tuple[str, dict]:
    """Human text and JSON payload of the geometric invariants of a valid triple."""
    full = is_full(t)
    inner = find_inner_xi(t)
    R = metric_radical(t.algebra, t.form)
    h = mean_curvature(t)
    A = shape_operator_matrix(t, h)
    idx = nilpotency_index(A) if A.nrows else 1
    mm = t.decomposition.g_mm
    lines = [
        f"triple: {t.name or '(unnamed)'} ({t.flavor}, dim {t.dim})",
        f"full: {'yes' if full.full else 'no'}",
        f"normal: {'yes (xi = ' + t.fmt(inner.xi) + ')' if inner.inner else 'no'}",
        f"metric radical: dim {R.dim}" + (f", basis {', '.join(t.fmt(b) for b in R.basis)}" if R.dim else ""),
        f"h = {t.fmt(h)}",
        f"A_h on g-- basis ({', '.join(t.fmt(b) for b in mm.basis)}):",
        _matrix_text(A),
        f"A_h nilpotency index {idx}" if idx is not None else "A_h is not nilpotent",
    ]
    payload = {
        "name": t.name,
        "flavor": t.flavor,
        "full": full.full,
        "normal": inner.inner,
        "xi": [format_scalar(a) for a in inner.xi] if inner.inner else None,
        "metric_radical_dim": R.dim,
        "mean_curvature": [format_scalar(a) for a in h],
        "mean_curvature_text": t.fmt(h),
        "tangent_basis": [t.fmt(b) for b in mm.basis],
        "shape_operator": docio.format_matrix(A),
        "shape_operator_nilpotency_index": idx,
    }
    return "\n".join(lines), payload


def cmd_invariants(args) -> int:
    t = _load_triple(args.path)
    _require_valid(t)
    text, payload = invariants(t)
    _emit(args, text, payload)
    return EXIT_OK


def orbit_csv(t, grid=DEFAULT_GRID, max_word_len=None, max_points=MAX_POINTS) -> tuple[str, list]:
    """CSV text of the sampled orbit and the list of points."""
    sampler = OrbitSampler(t)
    words = default_words(len(sampler.generators), grid, max_word_len, max_points)
    points = sampler.sample(words)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["word"] + minus_labels(t))
    for p in points:
        word = ";".join(f"{a + 1}:{format_coordinate(s)}" for a, s in p.word)
        w.writerow([word] + [format_coordinate(x) for x in p.coords])
    return buf.getvalue(), points


def cmd_orbit(args) -> int:
    t = _load_triple(args.path)
    _require_valid(t)
    grid = _parse_grid(args.grid) if args.grid else DEFAULT_GRID
    if args.max_points < 1:
        raise DocumentError("must be positive", "--max-points")
    if args.max_word_len is not None and args.max_word_len < 0:
        raise DocumentError("must be non-negative", "--max-word-len")
    check = None
    if args.verify:
        vname = args.verify if args.verify != "auto" else t.name
        check = catalog.VERIFIERS.get(vname)
        if check is None:
            raise DocumentError(f"no closed-form orbit known for {vname!r}; choose from "
                                f"{', '.join(sorted(catalog.VERIFIERS))}", "--verify")
    text, points = orbit_csv(t, grid, args.max_word_len, args.max_points)
    _write(args.out, text)
    status = EXIT_OK
    gens = plus_generators(t)
    info = ["generators of g+: " + ", ".join(f"{i + 1}: {t.fmt(g)}" for i, g in enumerate(gens)),
            f"{len(points)} points"]
    payload: dict = {"points": len(points), "generators": [t.fmt(g) for g in gens]}
    if check is not None:
        worst = max((float(check(p.coords)) for p in points), default=0.0)
        ok = worst <= catalog.ORBIT_TOLERANCE
        info.append(f"verify {vname}: max deviation {worst:.3e} ({'PASS' if ok else 'FAIL'})")
        payload["verify"] = {"name": vname, "max_deviation": worst, "ok": ok}
        status = EXIT_OK if ok else EXIT_FAIL
    if args.out not in (None, "-") or args.json:
        _emit(args, "\n".join(info), payload)
    else:
        sys.stderr.write("\n".join(info) + "\n")
    return status


def cmd_cohomology(args) -> int:
    t = _load_triple(args.path)
    if args.fiber < 0:
        raise DocumentError("must be non-negative", "--fiber")
    _require_valid(t)
    H = cohomology2(t.algebra, args.fiber, t.theta, t.d)
    restricted = restricted_classes(t, args.fiber, H)
    lines = [
        f"fiber dimension {args.fiber}",
        f"dim Z^2 = {H.cocycles.dim}",
        f"dim B^2 = {H.coboundaries.dim}",
        f"dim H^2 = {H.dim}",
        f"dim H^2 restricted (theta* = -1, D = 0) = {len(restricted)}",
    ]
    for k, w in enumerate(restricted):
        lines.append(f"  class {k + 1}: {w.format(t.labels)}")
    lines.append("isomorphism classes of extensions are orbits of the automorphism group of the "
                 "triple times GL(R) on the restricted space; those orbits are not computed")
    payload = {
        "fiber_dim": args.fiber,
        "dim_Z2": H.cocycles.dim,
        "dim_B2": H.coboundaries.dim,
        "dim_H2": H.dim,
        "dim_restricted": len(restricted),
        "restricted_classes": [docio.cocycle_to_json(w) for w in restricted],
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_extend(args) -> int:
    doc = docio.load(args.path)
    t0 = docio.parse_triple(doc)
    if args.cocycle:
        w, labels = docio.parse_cocycle(docio.load(args.cocycle), t0.dim, "cocycle")
    elif isinstance(doc, dict) and "extension" in doc:
        w, labels = docio.parse_cocycle(doc["extension"], t0.dim)
    else:
        raise DocumentError("no cocycle: pass --cocycle FILE or add an 'extension' block", args.path)
    try:
        t = central_extension(t0, w, labels, name=args.name or "")
    except ExtensionError as exc:
        sys.stderr.write(exc.report.text() + "\n")
        return EXIT_FAIL
    _write(args.out, docio.dumps(docio.triple_to_json(t)))
    return EXIT_OK


def cmd_quadext(args) -> int:
    doc = docio.load(args.path)
    if not isinstance(doc, dict):
        raise DocumentError("expected an object", args.path)
    block = doc.get("quadext", doc)
    nested = isinstance(doc, dict) and "quadext" in doc
    q, d = docio.parse_quadext(block, "quadext" if nested else "document")
    try:
        dd = build_dd(q)
    except ValueError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL
    rep = check_dd(dd)
    if not rep.ok:
        sys.stderr.write(rep.text() + "\n")
        return EXIT_FAIL
    name = args.name or doc.get("name", "")
    try:
        t = docio.quadext_to_triple(q, d, name)
    except InvalidTripleError as exc:
        sys.stderr.write(exc.report.text() + "\n")
        return EXIT_FAIL
    _write(args.out, docio.dumps(docio.triple_to_json(t)))
    return EXIT_OK


def cmd_catalog(args) -> int:
    names = catalog.NAMES if args.name == "all" else (args.name,)
    if args.name != "all" and args.name not in catalog.NAMES:
        raise DocumentError(f"unknown catalog entry {args.name!r}; choose from "
                            f"{', '.join(catalog.NAMES)} or all", "name")
    reports = [catalog.run_fixtures(n) for n in names]
    ok = all(r.ok for r in reports)
    text = "\n\n".join(r.text() for r in reports)
    _emit(args, text, {"ok": ok, "reports": [r.to_json() for r in reports]})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    if args.name not in catalog.NAMES:
        raise DocumentError(f"unknown catalog entry {args.name!r}; choose from {', '.join(catalog.NAMES)}", "name")
    _write(args.out, docio.dumps(docio.triple_to_json(catalog.build(args.name))))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extsym", description="Extrinsic symmetric triples: validation, "
                                "invariants, orbits, cohomology and extensions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, path=True):
        sp = sub.add_parser(name, help=help_)
        if path:
            sp.add_argument("path", help="triple document (JSON); '-' reads stdin")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check every axiom of a triple")
    add("invariants", cmd_invariants, "fullness, normality, radical, mean curvature, A_h")
    sp = add("orbit", cmd_orbit, "sample the orbit G+(0) and write CSV")
    sp.add_argument("--grid", help="comma-separated parameter values (rationals or decimals)")
    sp.add_argument("--max-word-len", type=int, default=None)
    sp.add_argument("--max-points", type=int, default=MAX_POINTS)
    sp.add_argument("--out", help="CSV file (default stdout)")
    sp.add_argument("--verify", nargs="?", const="auto",
                    help="compare with a known closed form (parabola, flat3, cahen_wallach_2; "
                         "default: the document's name)")
    sp = add("cohomology", cmd_cohomology, "H^2 with trivial coefficients and the restricted class space")
    sp.add_argument("--fiber", type=int, default=1, help="dimension of the coefficient space R")
    sp = add("extend", cmd_extend, "central extension by a cocycle; writes a triple document")
    sp.add_argument("--cocycle", help="cocycle document (default: the 'extension' block)")
    sp.add_argument("--out")
    sp.add_argument("--name")
    sp = add("quadext", cmd_quadext, "build l* + a + l from a 'quadext' block; writes a triple document")
    sp.add_argument("--out")
    sp.add_argument("--name")
    sp = add("catalog", cmd_catalog, "run the fixtures of a catalog entry", path=False)
    sp.add_argument("name", help=f"one of {', '.join(catalog.NAMES)}, or all")
    sp = add("export", cmd_export, "write a catalog triple as a document", path=False)
    sp.add_argument("name")
    sp.add_argument("--out")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DocumentError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except InvalidTripleError as exc:
        sys.stderr.write("invalid triple:\n" + exc.report.text() + "\n")
        return EXIT_FAIL
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
