"""Command-line front end and the JSON file formats for algebras and metrics.

Algebra files (``.lie``) are JSON objects::

    {"name": "h3", "dim": 3, "basis": ["e1", "e2", "e0"],
     "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}]}

with 1-based indices, i < j, and c a rational written "p/q" or as an
integer. Metric files hold ``{"dim": n, "entries": [[...], ...]}`` with the
same rational strings.

Exit codes: 0 affirmative, 1 negative verdict, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import construct as cons
from . import ratlin as rl
from .contact import (SearchConfig, contact_scalar, decide_contact_exists,
                      decide_exact_symplectic_exists, reeb)
from .curvature import (DegenerateMetric, Metric, basis_sectionals, curvature_tensor,
                        einstein_residual, flat_decomposition, heintze_negative_possible,
                        is_locally_symmetric, is_standard_einstein, k_contact_report,
                        levi_civita, ricci, scalar)
from .liealg import (InvalidAlgebra, LieAlgebra, center, derived_ideal, is_nilpotent,
                     is_semisimple, is_solvable, is_unimodular, radical, validate)
from .orthogonal import find_biinvariant_metric

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


class InputError(ValueError):
    """Malformed input file or argument; maps to exit code 2."""


# -- file formats ------------------------------------------------------------


def parse_rational(text, where: str) -> Fraction:
    if isinstance(text, bool):
        raise InputError(f"{where}: expected a rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise InputError(f"{where}: expected a rational like \"3\" or \"-1/2\", got {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise InputError(f"{where}: zero denominator in {text!r}")


def _load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    return data


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise InputError(f"{where}: missing field {key!r}")
    val = data[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise InputError(f"{where}: field {key!r} has the wrong type")
    return val


def algebra_from_dict(data: dict, where: str = "<algebra>", check: bool = True) -> LieAlgebra:
    dim = _require(data, "dim", int, where)
    if dim < 0:
        raise InputError(f"{where}: dim must be nonnegative")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise InputError(f"{where}: field 'name' must be a string")
    basis = data.get("basis")
    if basis is not None:
        if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
            raise InputError(f"{where}: field 'basis' must be a list of strings")
        if len(basis) != dim:
            raise InputError(f"{where}: basis has {len(basis)} names for dim {dim}")
        if len(set(basis)) != dim:
            raise InputError(f"{where}: basis names must be distinct")
    entries = _require(data, "brackets", list, where)
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for pos, rec in enumerate(entries):
        at = f"{where}: brackets[{pos}]"
        if not isinstance(rec, dict):
            raise InputError(f"{at}: expected an object with fields i, j, k, c")
        extra = set(rec) - {"i", "j", "k", "c"}
        if extra:
            raise InputError(f"{at}: unknown field(s) {sorted(extra)}")
        i, j, k = (_require(rec, f, int, at) for f in "ijk")
        for f, v in zip("ijk", (i, j, k)):
            if not 1 <= v <= dim:
                raise InputError(f"{at}: index {f}={v} out of range 1..{dim}")
        if i >= j:
            raise InputError(f"{at}: need i < j, got i={i}, j={j}")
        if "c" not in rec:
            raise InputError(f"{at}: missing field 'c'")
        c = parse_rational(rec["c"], f"{at}.c")
        slot = br.setdefault((i - 1, j - 1), {})
        if k - 1 in slot:
            raise InputError(f"{at}: duplicate entry for (i={i}, j={j}, k={k})")
        slot[k - 1] = c
    try:
        return LieAlgebra(dim, br, basis, name=name, check=check)
    except InvalidAlgebra as exc:
        raise InputError(f"{where}: {exc}") from exc


def algebra_to_dict(L: LieAlgebra) -> dict:
    return {
        "name": L.name,
        "dim": L.dim,
        "basis": list(L.basis_names),
        "brackets": [{"i": i + 1, "j": j + 1, "k": k + 1, "c": str(c)}
                     for i, j, k, c in L.nonzero_brackets()],
    }


def parse_algebra(path, check: bool = True) -> LieAlgebra:
    return algebra_from_dict(_load_json(path), str(path), check)


def write_algebra(L: LieAlgebra, path) -> None:
    Path(path).write_text(dumps(algebra_to_dict(L)))


def parse_metric(path) -> Metric:
    where = str(path)
    data = _load_json(path)
    dim = _require(data, "dim", int, where)
    rows = _require(data, "entries", list, where)
    if len(rows) != dim or not all(isinstance(r, list) and len(r) == dim for r in rows):
        raise InputError(f"{where}: entries must be a {dim}x{dim} matrix")
    m = rl.mat([[parse_rational(v, f"{where}: entries[{a}][{b}]") for b, v in enumerate(row)]
                for a, row in enumerate(rows)])
    if not rl.is_symmetric(m):
        raise InputError(f"{where}: metric matrix is not symmetric")
    try:
        return Metric(m)
    except DegenerateMetric as exc:
        raise InputError(f"{where}: {exc}")


def metric_to_dict(g: Metric) -> dict:
    return {"dim": g.dim, "entries": [[str(x) for x in row] for row in g.matrix]}


def catalog_names() -> list[str]:
    root = resources.files(__package__) / "catalog"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".lie"))


def resolve_algebra(ref: str, check: bool = True) -> LieAlgebra:
    """A path to a .lie file, a bundled catalog file, or a builder name."""
    if Path(ref).is_file():
        return parse_algebra(ref, check)
    stem = ref[:-4] if ref.endswith(".lie") else ref
    bundled = resources.files(__package__) / "catalog" / f"{stem}.lie"
    if bundled.is_file():
        return algebra_from_dict(json.loads(bundled.read_text()), f"catalog/{stem}.lie", check)
    if stem in cons.CATALOG_BUILDERS:
        return cons.build(stem)
    raise InputError(f"{ref}: no such file or catalog algebra")


def resolve_metric(ref: str, n: int) -> Metric:
    if ref == "identity":
        return Metric.identity(n)
    if Path(ref).is_file():
        g = parse_metric(ref)
    else:
        bundled = resources.files(__package__) / "catalog" / "metrics" / f"{ref}.json"
        if not bundled.is_file():
            raise InputError(f"{ref}: no such metric file")
        with resources.as_file(bundled) as p:
            g = parse_metric(p)
    if g.dim != n:
        raise InputError(f"{ref}: metric has dim {g.dim}, algebra has dim {n}")
    return g


def parse_vector(text: str, n: int, what: str = "--form") -> rl.Vector:
    parts = [p for p in text.split(",")]
    if len(parts) != n:
        raise InputError(f"{what}: expected {n} comma-separated rationals, got {len(parts)}")
    return tuple(parse_rational(p.strip(), f"{what}[{a + 1}]") for a, p in enumerate(parts))


def parse_matrix(text: str, n: int, what: str) -> rl.Matrix:
    """Rows separated by ';', entries by ','."""
    rows = text.split(";")
    if len(rows) != n:
        raise InputError(f"{what}: expected {n} rows separated by ';'")
    return rl.mat(parse_vector(r, n, f"{what} row {a + 1}") for a, r in enumerate(rows))


# -- reports -----------------------------------------------------------------


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, rl.Polynomial):
        return {"coefficients": [str(c) for c in x.coeffs], "text": repr(x)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1 or x.denominator < 10 ** 6:
            return str(x)
        return f"{x} (approx {float(x):.12g})"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if x is None:
        return "-"
    return str(x)


def _human(report: dict, indent: str = "") -> list[str]:
    lines = []
    for key, val in report.items():
        if key == "command":
            continue
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines += _human(val, indent + "  ")
        elif isinstance(val, (list, tuple)) and val and isinstance(val[0], (list, tuple)):
            lines.append(f"{indent}{key}:")
            lines += [f"{indent}  {_fmt(row)}" for row in val]
        else:
            lines.append(f"{indent}{key}: {_fmt(val)}")
    return lines


def _names(L: LieAlgebra, v) -> str:
    terms = [f"{c}*{L.basis_names[i]}" if c != 1 else L.basis_names[i] for i, c in enumerate(v) if c]
    return " + ".join(terms) or "0"


# -- subcommands -------------------------------------------------------------


def _config(args) -> SearchConfig:
    attempts = args.attempts if getattr(args, "attempts", None) is not None else args.budget
    return SearchConfig(seed=args.seed, attempts=attempts if attempts is not None else 64,
                        workers=args.workers)


def cmd_validate(args):
    L = resolve_algebra(args.algebra, check=False)
    bad = validate(L)
    rep = {"algebra": L.name, "dim": L.dim, "valid": not bad,
           "violations": [v.describe() for v in bad]}
    return rep, 0 if not bad else 1


def cmd_info(args):
    L = resolve_algebra(args.algebra)
    rep = {
        "algebra": L.name,
        "dim": L.dim,
        "basis": list(L.basis_names),
        "solvable": is_solvable(L),
        "nilpotent": is_nilpotent(L),
        "semisimple": is_semisimple(L),
        "unimodular": is_unimodular(L),
        "center_dim": center(L).dim,
        "derived_codim": derived_ideal(L).codim,
        "radical_dim": radical(L).dim,
    }
    return rep, 0


def cmd_contact_check(args):
    L = resolve_algebra(args.algebra)
    if L.dim % 2 == 0:
        raise InputError("contact forms need an odd-dimensional algebra")
    eta = parse_vector(args.form, L.dim)
    s = contact_scalar(L, eta)
    rep = {"algebra": L.name, "form": eta, "contact_scalar": s, "contact": s != 0}
    if s:
        xi = reeb(L, eta)
        rep["reeb"] = xi
        rep["reeb_text"] = _names(L, xi)
    return rep, 0 if s else 1


def _decision_report(L, out):
    rep = {"algebra": L.name, "verdict": out.verdict}
    if out.exists:
        rep["witness"] = out.witness
        rep["witness_text"] = _names(L, [c for c in out.witness])
        rep["source"] = out.source
    if out.certificate:
        rep["certificate"] = out.certificate
    return rep, 0 if out.exists else 1


def cmd_contact_decide(args):
    L = resolve_algebra(args.algebra)
    return _decision_report(L, decide_contact_exists(L, _config(args)))


def cmd_symplectic_decide(args):
    L = resolve_algebra(args.algebra)
    if L.dim % 2:
        raise InputError("exact symplectic forms need an even-dimensional algebra")
    return _decision_report(L, decide_exact_symplectic_exists(L, _config(args)))


def cmd_biinvariant(args):
    L = resolve_algebra(args.algebra)
    r = find_biinvariant_metric(L, _config(args))
    rep = {"algebra": L.name, "invariant_space_dim": r.invariant_space_dim,
           "verdict": "EXISTS" if r.found else "NONE"}
    if r.found:
        rep["witness"] = r.nondegenerate_witness
        rep["signature"] = r.signature
        rep["source"] = r.source
    else:
        rep["certificate"] = r.certificate
    return rep, 0 if r.found else 1


def cmd_curvature(args):
    L = resolve_algebra(args.algebra)
    g = resolve_metric(args.metric, L.dim)
    conn = levi_civita(L, g)
    R = curvature_tensor(L, g, conn)
    ric = ricci(L, g, R)
    lam, res = einstein_residual(L, g, ric)
    flat = R.is_zero()
    rep = {
        "algebra": L.name,
        "metric": metric_to_dict(g)["entries"],
        "flat": flat,
        "torsion_residual": len(conn.torsion_residual(L)),
        "metric_residual": len(conn.metric_residual(g)),
        "symmetry_residuals": R.symmetry_residuals(),
        "ricci": ric,
        "ricci_signature": rl.symmetric_signature(ric),
        "scalar_curvature": scalar(L, g, R),
        "einstein": res == 0,
        "einstein_constant": lam if res == 0 else None,
        "standard_einstein": res == 0 and is_standard_einstein(L, g),
        "locally_symmetric": is_locally_symmetric(L, g),
    }
    if flat:
        dec = flat_decomposition(L, g)
        rep["flat_decomposition"] = {"abelian_ideal": dec.A1.basis, "abelian_subalgebra": dec.A2.basis}
    if g.riemannian:
        rep["sectional"] = {f"{L.basis_names[i]},{L.basis_names[j]}": K
                            for (i, j), K in basis_sectionals(L, g, R).items()}
    return rep, 0 if flat else 1


def cmd_heintze(args):
    L = resolve_algebra(args.algebra)
    budget = args.budget if args.budget is not None else 256
    r = heintze_negative_possible(L, budget, _config(args))
    rep = {"algebra": L.name, "passes": r.passes, "summary": r.summary,
           "solvable": r.solvable, "derived_codim": r.derived_codim}
    if r.passes:
        rep["witness"] = r.witness
        rep["witness_text"] = _names(L, r.witness)
        rep["charpoly"] = r.charpoly
    else:
        rep["tried"] = r.tried
    return rep, 0 if r.passes else 1


def cmd_kcontact(args):
    L = resolve_algebra(args.algebra)
    if L.dim % 2 == 0:
        raise InputError("contact forms need an odd-dimensional algebra")
    g = resolve_metric(args.metric, L.dim)
    eta = parse_vector(args.form, L.dim)
    if contact_scalar(L, eta) == 0:
        raise InputError("--form is not a contact form on this algebra")
    if not g.riemannian:
        raise InputError("contact metric structures need a positive definite metric")
    r = k_contact_report(L, g, eta)
    rep = {"algebra": L.name, "form": eta, "contact_metric": r.contact_metric,
           "reeb": r.reeb, "reeb_killing": r.reeb_killing, "k_contact": r.k_contact,
           "ricci_reeb": r.ricci_reeb}
    return rep, 0 if r.k_contact else 1


def _int_param(params, pos, what) -> int:
    try:
        return int(params[pos])
    except (IndexError, ValueError):
        raise InputError(f"construct: expected integer parameter {what}")


def build_named(name: str, params: Sequence[str], args=None):
    """Builder dispatch for ``construct``; returns (algebra, extra report fields)."""
    extra = {}
    if name == "heisenberg":
        L = cons.heisenberg(_int_param(params, 0, "n"))
    elif name == "hyperbolic":
        L = cons.hyperbolic(_int_param(params, 0, "n"))
    elif name == "abelian":
        L = cons.abelian(_int_param(params, 0, "n"))
    elif name == "complex-hyperbolic":
        L = cons.complex_hyperbolic(_int_param(params, 0, "m"))
    elif name == "gn":
        if len(params) != 4:
            raise InputError("construct gn: expected n p p_1,...,p_n q")
        n = _int_param(params, 0, "n")
        ps = [parse_rational(x, "p_i") for x in params[2].split(",")]
        L = cons.gn_family(n, parse_rational(params[1], "p"), ps, parse_rational(params[3], "q"))
    elif name == "sum":
        if len(params) != 2:
            raise InputError("construct sum: expected two algebras")
        L = cons.direct_sum(resolve_algebra(params[0]), resolve_algebra(params[1]))
    elif name == "semidirect":
        if len(params) != 2:
            raise InputError("construct semidirect: expected an algebra and a matrix 'a,b;c,d'")
        H = resolve_algebra(params[0])
        L = cons.semidirect_by_derivation(H, parse_matrix(params[1], H.dim, "derivation"))
    elif name == "central":
        if len(params) != 2:
            raise InputError("construct central: expected an algebra and a skew matrix 'a,b;c,d'")
        H = resolve_algebra(params[0])
        L = cons.central_extension(H, parse_matrix(params[1], H.dim, "cocycle"))
    elif name == "einstein-extension":
        if len(params) not in (3, 4):
            raise InputError("construct einstein-extension: expected H alpha D [metric]")
        H = resolve_algebra(params[0])
        alpha = parse_vector(params[1], H.dim, "alpha")
        D = parse_matrix(params[2], H.dim, "derivation")
        gH = resolve_metric(params[3] if len(params) == 4 else "identity", H.dim)
        tol = Fraction(args.tol) if args is not None and args.tol else 0
        L, g, rep = cons.einstein_contact_extension(H, alpha, gH, D, tol=tol)
        extra = {"einstein": rep.einstein, "scale": rep.scale, "einstein_constant": rep.einstein_constant,
                 "residual": rep.residual, "exact": rep.exact, "residual_gcd": rep.residual_gcd,
                 "contact_form": rep.contact_form, "metric": metric_to_dict(g)["entries"]}
        if rep.message:
            extra["message"] = rep.message
    elif name in cons.CATALOG_BUILDERS:
        if params:
            raise InputError(f"construct {name}: takes no parameters")
        L = cons.build(name)
    else:
        known = ["heisenberg", "hyperbolic", "abelian", "complex-hyperbolic", "gn", "sum", "semidirect", "central",
                 "einstein-extension"] + sorted(cons.CATALOG_BUILDERS)
        raise InputError(f"construct: unknown builder {name!r}; known: {', '.join(known)}")
    return L, extra


def cmd_construct(args):
    try:
        L, extra = build_named(args.name, args.params, args)
    except (InvalidAlgebra, cons.PreconditionError) as exc:
        raise InputError(f"construct {args.name}: {exc}")
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"construct {args.name}: {exc}")
    rep = {"algebra": algebra_to_dict(L), **extra}
    if args.output:
        write_algebra(L, args.output)
        rep["written"] = str(args.output)
    code = 0 if extra.get("einstein", True) else 1
    return rep, code


# -- argument parsing --------------------------------------------------------


_GLOBAL_DEFAULTS = {"json": False, "seed": 0, "budget": None, "workers": 1, "timing": False}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--json", action="store_true", default=S, help="machine-readable report")
    p.add_argument("--seed", type=int, default=S, help="seed for randomized witness searches")
    p.add_argument("--budget", type=int, default=S, help="random trials before exhaustive search")
    p.add_argument("--workers", type=int, default=S, help="processes for grid sweeps")
    p.add_argument("--timing", action="store_true", default=S, help="include wall-clock time")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="liecontact", parents=[common],
                                 description="Exact computations on contact and metric Lie algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def leaf(parent, name, func, help_, alg=True):
        p = parent.add_parser(name, parents=[common], help=help_)
        if alg:
            p.add_argument("algebra", help="path to a .lie file or a catalog name")
        p.set_defaults(func=func)
        return p

    leaf(sub, "validate", cmd_validate, "check antisymmetry and Jacobi")
    leaf(sub, "info", cmd_info, "structural invariants")
    contact = sub.add_parser("contact", help="contact forms").add_subparsers(dest="action", required=True)
    p = leaf(contact, "check", cmd_contact_check, "test one covector")
    p.add_argument("--form", required=True, help="comma-separated rationals")
    p = leaf(contact, "decide", cmd_contact_decide, "decide whether a contact form exists")
    p.add_argument("--attempts", type=int, default=None)
    symp = sub.add_parser("symplectic", help="exact symplectic forms").add_subparsers(dest="action", required=True)
    p = leaf(symp, "decide", cmd_symplectic_decide, "decide whether an exact symplectic form exists")
    p.add_argument("--attempts", type=int, default=None)
    leaf(sub, "biinvariant", cmd_biinvariant, "nondegenerate ad-invariant forms")
    p = leaf(sub, "curvature", cmd_curvature, "curvature of a left-invariant metric")
    p.add_argument("--metric", default="identity", help="metric file, bundled metric name, or 'identity'")
    leaf(sub, "heintze", cmd_heintze, "negative-curvature criterion for solvable algebras")
    p = leaf(sub, "kcontact", cmd_kcontact, "contact metric and K-contact checks")
    p.add_argument("--metric", required=True)
    p.add_argument("--form", required=True)
    p = leaf(sub, "construct", cmd_construct, "build an algebra", alg=False)
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--tol", default=None, help="tolerance for einstein-extension (e.g. 1e-12)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    # flags may appear before or after the subcommand; defaults are filled in
    # here because set_defaults would leak into the shared parent actions
    for key, val in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, val)
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except (InputError, rl.ShapeError, DegenerateMetric) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"command": argv_echo(argv), **report, "exit_code": code}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        print("\n".join(_human(report)))
    return code


def argv_echo(argv: Sequence[str]) -> list[str]:
    return [a for a in argv if a not in ("--json", "--timing")]


if __name__ == "__main__":
    sys.exit(main())
