"""Command-line driver: ``ratmap <command> FILE... [--cutoff Q] [--format table|json]``.

Every command builds one report ``{command, inputs, cutoff, result, checks}``.
JSON output is that object with sorted keys; the table format prints the
same numbers for people.  Exit status: 0 success, 1 a verification check
failed, 2 bad input (parse error, unmet precondition, missing flag),
3 monomial budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .cdga import (FiniteCDGA, MasseyError, PreconditionError, RankTable, SullivanAlgebra,
                   bigraded_model, cohomology, cohomology_algebra, formality_report,
                   homotopy_ranks, hurewicz_ranks, minimal_model, triple_massey, validate,
                   verify_quasi_iso)
from .cdga.cohomology import degree_data
from .gca import DEFAULT_BUDGET, AlgebraError, BudgetExceeded
from .io import ParseError, format_space, load, parse_element
from .mapmodel import (HypothesisError, ModelError, basis_split, finite_model_from_minimal,
                       haefliger_model, homotopy_comparison, hurewicz_vanishing_check,
                       theorem2_quotient, thom_splitting_check, top_cohomology_degree)

OK, VERIFICATION_FAILED, INPUT_ERROR, BUDGET_EXCEEDED = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- helpers ------------------------------------------------------------------

def _load(path: str, inputs: list):
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    inputs.append({"path": path, "sha256": hashlib.sha256(data).hexdigest()})
    try:
        alg = load(p, source=path).algebra
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8 text") from None
    return alg


def _require_valid(alg, path):
    rep = validate(alg)
    if not rep.valid:
        v = rep.first
        raise InputError(f"{path}: invalid algebra ({v.check}): {v.message}"
                         + (f"; witness {v.witness}" if v.witness else ""))


def _generator_bound(M: SullivanAlgebra) -> int:
    return sum(g.degree for g in M.generators)


def _top_degree(M: SullivanAlgebra, what: str, budget: int) -> int:
    """Top nonzero cohomology degree of an elliptic-looking model."""
    bound = _generator_bound(M)
    top = top_cohomology_degree(M, bound, budget)
    for q in range(bound + 1, bound + M.max_generator_degree() + 1):
        if degree_data(M, q, budget).rank:
            raise InputError(f"{what} seems to have infinite cohomology "
                             f"(H^{q} != 0 above {bound}); give its top degree explicitly")
    return top


def _as_finite(alg, what: str, budget: int, top: int | None = None) -> FiniteCDGA:
    if isinstance(alg, FiniteCDGA):
        return alg
    n = top if top is not None else _top_degree(alg, what, budget)
    return finite_model_from_minimal(alg, n, budget=budget)


def _as_sullivan(alg, cutoff: int, budget: int) -> SullivanAlgebra:
    if isinstance(alg, SullivanAlgebra):
        return alg
    model, _ = minimal_model(alg, cutoff, budget)
    return model


def _ranks(t: RankTable) -> list:
    return list(t)


def _check(name, ok, detail=""):
    if isinstance(ok, str):
        status = ok
    else:
        status = "pass" if ok else "fail"
    return {"name": name, "status": status, "detail": detail or ""}


def _generators(M: SullivanAlgebra) -> list:
    out = []
    for g in M.generators:
        entry = {"name": g.name, "degree": g.degree, "d": str(M.dgen(g.name))}
        if g.lower is not None:
            entry["lower"] = g.lower
        out.append(entry)
    return out


# -- table rendering -------------------------------------------------------------

def rank_rows(rows) -> list:
    """Aligned ``degree`` header plus one line per ``(label, ranks)`` row."""
    n = max(len(r) for _, r in rows)
    cells = [["degree"] + [str(q) for q in range(n)]]
    for label, r in rows:
        cells.append([label] + [str(v) for v in r] + [""] * (n - len(r)))
    widths = [max(len(row[k]) for row in cells) for k in range(n + 1)]
    lines = []
    for row in cells:
        head = row[0].ljust(widths[0])
        rest = "  ".join(c.rjust(widths[k + 1]) for k, c in enumerate(row[1:]))
        lines.append(f"{head}  {rest}".rstrip())
    return lines


def _generator_lines(gens) -> list:
    if not gens:
        return ["  (no generators)"]
    w = max(len(g["name"]) for g in gens)
    lines = []
    for g in gens:
        low = f", lower {g['lower']}" if "lower" in g else ""
        lines.append(f"  {g['name'].ljust(w)}  degree {g['degree']}{low}   d = {g['d']}")
    return lines


def _render_table(report) -> str:
    r = report["result"]
    lines = [f"{report['command']}: " + ", ".join(i["path"] for i in report["inputs"])]
    if report["cutoff"] is not None:
        lines[0] += f" (cutoff {report['cutoff']})"
    for w in r.get("warnings", []):
        lines.append(f"warning: {w}")
    if "generators" in r:
        lines.append("generators:")
        lines.extend(_generator_lines(r["generators"]))
    rows = [(k, r[k]) for k in ("ranks", "homotopy", "formula", "hurewicz", "expected",
                                "model_ranks", "expected_ranks", "target_ranks")
            if isinstance(r.get(k), list) and r[k] and isinstance(r[k][0], int)]
    if rows:
        lines.extend(rank_rows(rows))
    for key in sorted(r):
        val = r[key]
        if key in ("generators", "warnings") or any(key == k for k, _ in rows):
            continue
        if isinstance(val, dict):
            lines.append(f"{key}:")
            for k in sorted(val, key=lambda s: (len(s), s)):
                v = val[k]
                lines.append(f"  {k}: {', '.join(v) if isinstance(v, list) else v}")
        elif isinstance(val, list):
            lines.append(f"{key}: " + (", ".join(map(str, val)) if val else "(none)"))
        elif key == "text":
            lines.append("description:")
            lines.extend("  " + t for t in str(val).splitlines())
        else:
            lines.append(f"{key}: {val}")
    for c in report["checks"]:
        extra = f"  ({c['detail']})" if c["detail"] else ""
        lines.append(f"[{c['status'].upper()}] {c['name']}{extra}")
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------------

def cmd_validate(args, inputs):
    alg = _load(args.file, inputs)
    rep = validate(alg)
    kind = "sullivan" if isinstance(alg, SullivanAlgebra) else "finite-basis"
    result = {"kind": kind, "valid": rep.valid,
              "violations": [f"{v.check}: {v.message}" + (f" [witness {v.witness}]" if v.witness else "")
                             for v in rep.violations]}
    checks = []
    for name in rep.checks:
        bad = [v for v in rep.violations if v.check == name]
        detail = ""
        if bad:
            detail = bad[0].message + (f"; witness {bad[0].witness}" if bad[0].witness else "")
        checks.append(_check(name, not bad, detail))
    return result, checks


def cmd_cohomology(args, inputs):
    alg = _load(args.file, inputs)
    _require_valid(alg, args.file)
    res = cohomology(alg, args.cutoff, args.budget)
    reps = {str(q): [alg.format_element(x) for x in xs] for q, xs in res.representatives.items() if xs}
    return {"ranks": _ranks(res.ranks), "representatives": reps}, []


def cmd_minimal_model(args, inputs):
    alg = _load(args.file, inputs)
    _require_valid(alg, args.file)
    A = _as_finite(alg, args.file, args.budget, args.x_top)
    M, phi = minimal_model(A, args.cutoff, args.budget)
    qi = verify_quasi_iso(phi, args.cutoff, args.budget)
    result = {"generators": _generators(M), "text": format_space(M),
              "map": {g.name: A.format_element(phi.value(g.name)) for g in M.generators}}
    return result, [_check("minimal", M.is_minimal()),
                    _check("quasi-isomorphism", qi.passed, _qi_detail(qi))]


def _qi_detail(qi):
    if qi.passed:
        return f"through degree {qi.cutoff}" if qi.cutoff is not None else ""
    return f"{qi.stage} failure in degree {qi.degree}: {qi.witness}"


def cmd_bigraded_model(args, inputs):
    alg = _load(args.file, inputs)
    _require_valid(alg, args.file)
    A = _as_finite(alg, args.file, args.budget, args.x_top)
    H = A if A.has_zero_differential() else cohomology_algebra(A, A.top_degree(), args.budget)[0]
    M, phi = bigraded_model(H, args.cutoff, args.budget)
    qi = verify_quasi_iso(phi, args.cutoff, args.budget)
    law = validate(M)
    result = {"generators": _generators(M), "text": format_space(M)}
    return result, [_check("lower-grading law", law.valid, law.first.message if law.first else ""),
                    _check("quasi-isomorphism", qi.passed, _qi_detail(qi))]


def cmd_homotopy(args, inputs):
    alg = _load(args.file, inputs)
    _require_valid(alg, args.file)
    M = _as_sullivan(alg, args.cutoff, args.budget)
    return {"homotopy": _ranks(homotopy_ranks(M, args.cutoff))}, []


def cmd_hurewicz(args, inputs):
    alg = _load(args.file, inputs)
    _require_valid(alg, args.file)
    M = _as_sullivan(alg, args.cutoff, args.budget)
    return {"hurewicz": _ranks(hurewicz_ranks(M, args.cutoff, args.budget))}, []


def _mapping_inputs(args, inputs):
    X = _load(args.x, inputs)
    _require_valid(X, args.x)
    Y = _load(args.y, inputs)
    _require_valid(Y, args.y)
    A = _as_finite(X, args.x, args.budget, args.x_top)
    n = A.top_degree()
    if isinstance(Y, FiniteCDGA):
        Y, _ = minimal_model(Y, args.cutoff + n, args.budget)
    return A, Y


def _haefliger(args, inputs):
    A, Y = _mapping_inputs(args, inputs)
    return haefliger_model(A, Y, args.cutoff, args.budget,
                           constant_component=getattr(args, "component", False))


def cmd_map_model(args, inputs):
    H = _haefliger(args, inputs)
    result = {"generators": _generators(H.model), "warnings": list(H.warnings),
              "source_basis": [f"{n}:{d}" for n, d in zip(H.A.names, H.A.degrees)]}
    return result, [_check(name, ok, detail) for name, ok, detail in H.checks]


def cmd_map_homotopy(args, inputs):
    H = _haefliger(args, inputs)
    model, formula = homotopy_comparison(H, args.cutoff, args.budget)
    result = {"homotopy": _ranks(model), "formula": _ranks(formula), "warnings": list(H.warnings)}
    return result, [_check("homotopy formula", model == formula)]


def cmd_thom_check(args, inputs):
    X = _load(args.x, inputs)
    _require_valid(X, args.x)
    A = _as_finite(X, args.x, args.budget, args.x_top)
    rep = thom_splitting_check(A, args.r, args.cutoff, args.budget)
    result = {"r": args.r, "model_ranks": _ranks(rep.model_ranks),
              "expected_ranks": _ranks(rep.expected_ranks),
              "free_generator_degrees": list(rep.generator_degrees)}
    return result, [_check("thom splitting", rep.passed)]


def cmd_theorem2_check(args, inputs):
    A, Y = _mapping_inputs(args, inputs)
    H = haefliger_model(A, Y, args.cutoff, args.budget)
    if args.dim_y is not None:
        N = args.dim_y
    elif isinstance(Y, SullivanAlgebra) and Y.complete_through is None:
        N = _top_degree(Y, args.y, args.budget)
    else:
        raise InputError("cannot read dim Y from a truncated model; pass --dim-y")
    if args.cutoff <= N:
        raise InputError(f"cutoff {args.cutoff} must exceed N = {N}")
    Q = theorem2_quotient(H, basis_split(H.A))
    van = hurewicz_vanishing_check(H, N, args.cutoff, args.budget)
    result = {"N": N, "hurewicz": _ranks(van.ranks),
              "quotient_differential": {g: str(p) for g, p in Q.dbar.items()},
              "split_basis": [f"{n}:{d}" for n, d in zip(Q.haefliger.A.names, Q.haefliger.A.degrees)]}
    checks = [_check(name, ok, detail) for name, ok, detail in Q.checks]
    detail = (f"ranks vanish in degrees {N + 1}..{args.cutoff}" if van.passed else
              f"degree {van.failing_degree}: class {van.witness} survives")
    checks.append(_check("hurewicz vanishing above N", van.passed, detail))
    return result, checks


def cmd_formality(args, inputs):
    if args.y is None:
        alg = _load(args.x, inputs)
        _require_valid(alg, args.x)
        M = _as_sullivan(alg, args.cutoff, args.budget)
    else:
        M = _haefliger(args, inputs).model
    rep = formality_report(M, args.cutoff, args.budget)
    result = {"verdict": rep.verdict, "detector": rep.detector or "none",
              "details": {k: (v if isinstance(v, (list, str)) else str(v))
                          for k, v in rep.details.items()}}
    checks = []
    for name, status, note in rep.checks:
        checks.append(_check(name, status, str(note) if note else ""))
    return result, checks


def cmd_massey(args, inputs):
    alg = _load(args.file, inputs)
    _require_valid(alg, args.file)
    try:
        x, y, z = (parse_element(alg, t) for t in (args.a, args.b, args.c))
    except ParseError as exc:
        raise InputError(f"cannot read element: {exc}") from None
    try:
        res = triple_massey(alg, x, y, z, args.budget)
    except MasseyError as exc:
        raise InputError(str(exc)) from None
    result = {"representative": alg.format_element(res.representative), "degree": res.degree,
              "indeterminacy": [alg.format_element(p) for p in res.indeterminacy],
              "nonzero_mod_indeterminacy": res.nonzero_mod_indeterminacy,
              "primitives": [alg.format_element(p) for p in res.primitives]}
    return result, [_check("representative closed", True)]


COMMANDS = {
    "validate": (cmd_validate, "check the axioms of a CDGA description"),
    "cohomology": (cmd_cohomology, "cohomology ranks and representatives"),
    "minimal-model": (cmd_minimal_model, "Sullivan minimal model of a finite CDGA"),
    "bigraded-model": (cmd_bigraded_model, "bigraded model of a cohomology algebra"),
    "homotopy": (cmd_homotopy, "ranks of the rational homotopy groups"),
    "hurewicz": (cmd_hurewicz, "ranks of the dual Hurewicz map"),
    "map-model": (cmd_map_model, "Haefliger model of Map(X, Y)"),
    "map-homotopy": (cmd_map_homotopy, "homotopy ranks of Map(X, Y) against the formula"),
    "thom-check": (cmd_thom_check, "Map(X, K(Q, r)) against a product of K(Q, m)"),
    "theorem2-check": (cmd_theorem2_check, "quotient formulas and Hurewicz vanishing above dim Y"),
    "formality": (cmd_formality, "formality witness or obstruction"),
    "massey": (cmd_massey, "triple Massey product <x, y, z>"),
}

_NEEDS_CUTOFF = {"cohomology", "minimal-model", "bigraded-model", "homotopy", "hurewicz",
                 "map-model", "map-homotopy", "thom-check", "theorem2-check", "formality"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, help="top degree of the computation")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of monomials in one degree")
    common.add_argument("--x-top", type=int, default=None,
                        help="top cohomology degree of a Sullivan X (found by search if omitted)")

    parser = argparse.ArgumentParser(prog="ratmap",
                                     description="Rational models of spaces and mapping spaces.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if name in ("map-model", "map-homotopy", "theorem2-check"):
            p.add_argument("x", metavar="X")
            p.add_argument("y", metavar="Y")
        elif name == "thom-check":
            p.add_argument("x", metavar="X")
            p.add_argument("--r", type=int, required=True, help="degree of K(Q, r)")
        elif name == "formality":
            p.add_argument("x", metavar="FILE")
            p.add_argument("y", metavar="Y", nargs="?", default=None,
                           help="with a second file, test Map(FILE, Y)")
        elif name == "massey":
            p.add_argument("file", metavar="FILE")
            for dest, meta in (("a", "X"), ("b", "Y"), ("c", "Z")):
                p.add_argument(dest, metavar=meta, help="cocycle expression")
        else:
            p.add_argument("file", metavar="FILE")
        if name in ("map-model", "map-homotopy", "formality"):
            p.add_argument("--component", action="store_true",
                           help="allow a target that is not n-connected (constant-map component)")
        if name == "theorem2-check":
            p.add_argument("--dim-y", type=int, default=None,
                           help="N, the dimension of Y (default: top degree of H*(Y))")
    return parser


def run(argv) -> tuple[int, str]:
    """Run one command; return ``(exit status, text written to stdout)``.
    Diagnostics for input errors go into the text as well."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (INPUT_ERROR if exc.code else OK), ""
    fmt = getattr(args, "format", "table")
    inputs: list = []

    def fail(code, message):
        if fmt == "json":
            body = {"command": args.command, "inputs": inputs, "cutoff": args.cutoff,
                    "error": message, "result": None, "checks": []}
            return code, json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        return code, f"error: {message}\n"

    if args.command in _NEEDS_CUTOFF and args.cutoff is None:
        return fail(INPUT_ERROR, f"{args.command} needs --cutoff")
    if args.cutoff is not None and args.cutoff < 0:
        return fail(INPUT_ERROR, "cutoff must be nonnegative")
    try:
        result, checks = COMMANDS[args.command][0](args, inputs)
    except BudgetExceeded as exc:
        return fail(BUDGET_EXCEEDED, str(exc))
    except (InputError, ParseError, PreconditionError, HypothesisError, ModelError) as exc:
        return fail(INPUT_ERROR, str(exc))
    except AlgebraError as exc:
        return fail(INPUT_ERROR, str(exc))
    report = {"command": args.command, "inputs": inputs, "cutoff": args.cutoff,
              "result": result, "checks": checks}
    code = VERIFICATION_FAILED if any(c["status"] == "fail" for c in checks) else OK
    if fmt == "json":
        return code, json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return code, _render_table(report)


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (OK, VERIFICATION_FAILED) else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
